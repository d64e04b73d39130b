//! Initial and terminal objects, equalizers, pullbacks, coequalizers and
//! pushout presentations among finite atomic monoids with atom-preserving
//! homomorphisms.

mod congruence;
mod pushout;

use std::sync::Arc;

pub use congruence::{is_compatible_partition, Congruence};
pub use pushout::{
    pushout_eq_bounded, pushout_presentation, PushoutAnswer, PushoutPresentation,
    PUSHOUT_BALL_CAP,
};

use crate::error::{Error, Result};
use crate::monoid::{generate, Elem, FiniteMonoid, MonoidHom};

/// The trivial monoid `{1}`, the initial object.
pub fn initial() -> FiniteMonoid {
    FiniteMonoid::from_table(&["1"], &[&[0]], 0).expect("trivial monoid")
}

/// `{1, a, 0}` with `a·a = 0`, the terminal object.
pub fn terminal() -> FiniteMonoid {
    FiniteMonoid::from_table(&["1", "a", "0"], &[&[0, 1, 2], &[1, 2, 2], &[2, 2, 2]], 0)
        .expect("terminal monoid")
}

/// An equalizer `e: E -> H` of a parallel pair.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub monoid: Arc<FiniteMonoid>,
    pub inclusion: MonoidHom,
}

/// A pullback square over a cospan `H -> L <- K`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub monoid: Arc<FiniteMonoid>,
    pub pairs: Vec<(Elem, Elem)>,
    pub p1: MonoidHom,
    pub p2: MonoidHom,
}

/// A coequalizer `q: K -> Q` of a parallel pair.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub monoid: Arc<FiniteMonoid>,
    pub projection: MonoidHom,
    pub congruence: Congruence,
}

fn check_parallel(f: &MonoidHom, g: &MonoidHom) -> Result<()> {
    if **f.source() != **g.source() {
        return Err(Error::SourceMismatch);
    }
    if **f.target() != **g.target() {
        return Err(Error::TargetMismatch);
    }
    for (i, h) in [f, g].into_iter().enumerate() {
        if !h.is_atom_preserving() {
            return Err(Error::NotAtomPreserving(i));
        }
    }
    Ok(())
}

/// The submonoid of `H` generated by the atoms and the units on which `f`
/// and `g` agree, with its inclusion.
pub fn equalizer(f: &MonoidHom, g: &MonoidHom) -> Result<Equalizer> {
    check_parallel(f, g)?;
    let h = f.source();
    if !h.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let generators: Vec<Elem> = h
        .elems()
        .filter(|&x| (h.is_atom(x) || h.is_unit(x)) && f.apply(x) == g.apply(x))
        .collect();
    let (sub, elems) = h.submonoid(&generators);
    let monoid = Arc::new(sub);
    let inclusion = MonoidHom::new(monoid.clone(), h.clone(), elems.iter().map(|e| e.0).collect())?;
    if !inclusion.is_atom_preserving() {
        return Err(Error::InvariantViolated(
            "equalizer inclusion is not atom-preserving".into(),
        ));
    }
    Ok(Equalizer { monoid, inclusion })
}

/// The submonoid of `H × K` generated by the atom pairs and unit pairs
/// `(x, y)` with `f(x) = g(y)`, with the two projections.
pub fn pullback(f: &MonoidHom, g: &MonoidHom) -> Result<Pullback> {
    if **f.target() != **g.target() {
        return Err(Error::TargetMismatch);
    }
    for (i, h) in [f, g].into_iter().enumerate() {
        if !h.is_atom_preserving() {
            return Err(Error::NotAtomPreserving(i));
        }
    }
    let (h, k) = (f.source(), g.source());
    let mut generators = Vec::new();
    for x in h.elems() {
        for y in k.elems() {
            let both_atoms = h.is_atom(x) && k.is_atom(y);
            let both_units = h.is_unit(x) && k.is_unit(y);
            if (both_atoms || both_units) && f.apply(x) == g.apply(y) {
                generators.push((x, y));
            }
        }
    }
    let (monoid, pairs) = generate(
        (h.identity(), k.identity()),
        &generators,
        |a, b| (h.mul(a.0, b.0), k.mul(a.1, b.1)),
        |p| format!("({},{})", h.name(p.0), k.name(p.1)),
        None,
    )?;
    let monoid = Arc::new(monoid);
    let p1 = MonoidHom::new(monoid.clone(), h.clone(), pairs.iter().map(|p| p.0 .0).collect())?;
    let p2 = MonoidHom::new(monoid.clone(), k.clone(), pairs.iter().map(|p| p.1 .0).collect())?;
    Ok(Pullback {
        monoid,
        pairs,
        p1,
        p2,
    })
}

/// The quotient of `K` by the smallest congruence containing every pair
/// `(f(h), g(h))`.
///
/// The quotient is checked to be atomic and the projection to be
/// atom-preserving; a failure is reported as an invariant violation.
pub fn coequalizer(f: &MonoidHom, g: &MonoidHom) -> Result<Coequalizer> {
    check_parallel(f, g)?;
    let k = f.target();
    if !k.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let seeds = f.source().elems().map(|x| (f.apply(x), g.apply(x)));
    let congruence = Congruence::closure(k, seeds);
    let (q, projection) = congruence.quotient(k)?;
    let monoid = Arc::new(q);
    let projection = MonoidHom::new(
        k.clone(),
        monoid.clone(),
        projection.iter().map(|e| e.0).collect(),
    )?;
    if !monoid.is_atomic() {
        return Err(Error::InvariantViolated("coequalizer is not atomic".into()));
    }
    if !projection.is_atom_preserving() {
        return Err(Error::InvariantViolated(
            "coequalizer projection is not atom-preserving".into(),
        ));
    }
    Ok(Coequalizer {
        monoid,
        projection,
        congruence,
    })
}
