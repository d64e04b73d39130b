use std::sync::Arc;

use super::{Elem, ElemClass, FiniteMonoid};
use crate::error::{Error, Result};
use crate::univ;

/// Largest source size for which [`enumerate_homs`] runs by default.
pub const EXHAUSTIVE_SOURCE_CAP: usize = 6;

/// A validated homomorphism between finite monoids.
///
/// Whether atoms go to atoms is computed at construction and cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: Arc<FiniteMonoid>,
    target: Arc<FiniteMonoid>,
    map: Vec<Elem>,
    atom_preserving: bool,
}

impl MonoidHom {
    pub fn new(
        source: impl Into<Arc<FiniteMonoid>>,
        target: impl Into<Arc<FiniteMonoid>>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        if map.len() != source.size() {
            return Err(Error::MapLength {
                expected: source.size(),
                found: map.len(),
            });
        }
        if let Some(&value) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::MapOutOfRange {
                value,
                size: target.size(),
            });
        }
        let map: Vec<Elem> = map.into_iter().map(Elem).collect();
        if map[source.identity().0] != target.identity() {
            return Err(Error::NotIdentityPreserving);
        }
        for x in source.elems() {
            for y in source.elems() {
                if map[source.mul(x, y).0] != target.mul(map[x.0], map[y.0]) {
                    return Err(Error::NotMultiplicative(x.0, y.0));
                }
            }
        }
        let atom_preserving = source.atoms().iter().all(|a| target.is_atom(map[a.0]));
        Ok(Self {
            source,
            target,
            map,
            atom_preserving,
        })
    }

    pub fn identity(monoid: impl Into<Arc<FiniteMonoid>>) -> Self {
        let monoid = monoid.into();
        let map = (0..monoid.size()).collect();
        Self::new(monoid.clone(), monoid, map).expect("identity map is a homomorphism")
    }

    pub fn source(&self) -> &Arc<FiniteMonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMonoid> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn map_indices(&self) -> Vec<usize> {
        self.map.iter().map(|e| e.0).collect()
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x.0]
    }

    pub fn is_atom_preserving(&self) -> bool {
        self.atom_preserving
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonoidHom) -> Result<MonoidHom> {
        if *inner.target != *self.source {
            return Err(Error::TargetMismatch);
        }
        let map = inner.map.iter().map(|&x| self.map[x.0].0).collect();
        MonoidHom::new(inner.source.clone(), self.target.clone(), map)
    }

    /// Monomorphism test in the atom-preserving category: injective on atoms
    /// and units together.
    pub fn is_atomon_mono(&self) -> Result<bool> {
        if !self.atom_preserving {
            return Err(Error::NotAtomPreserving(0));
        }
        let mut seen = std::collections::HashSet::new();
        let src = &self.source;
        Ok(src
            .elems()
            .filter(|&x| src.is_unit(x) || src.is_atom(x))
            .all(|x| seen.insert(self.map[x.0])))
    }
}

/// The unique atom-preserving homomorphism into the terminal monoid
/// `{1, a, 0}`: units go to `1`, atoms to `a`, everything else to `0`.
pub fn canonical_to_terminal(monoid: impl Into<Arc<FiniteMonoid>>) -> Result<MonoidHom> {
    let monoid = monoid.into();
    if !monoid.is_atomic() {
        return Err(Error::NotAtomic);
    }
    let terminal = univ::terminal();
    let one = terminal.identity().0;
    let a = terminal.elem_by_name("a").expect("terminal has a").0;
    let zero = terminal.elem_by_name("0").expect("terminal has 0").0;
    let map = monoid
        .elems()
        .map(|x| match monoid.classify(x) {
            ElemClass::Unit => one,
            ElemClass::Atom => a,
            ElemClass::Reducible => zero,
        })
        .collect();
    MonoidHom::new(monoid, terminal, map)
}

/// Every homomorphism `source -> target`, optionally only the
/// atom-preserving ones, by backtracking over element images.
///
/// Refuses sources larger than `cap` (use [`EXHAUSTIVE_SOURCE_CAP`] unless
/// there is a reason not to).
pub fn enumerate_homs(
    source: &Arc<FiniteMonoid>,
    target: &Arc<FiniteMonoid>,
    atom_preserving_only: bool,
    cap: usize,
) -> Result<Vec<MonoidHom>> {
    let n = source.size();
    if n > cap {
        return Err(Error::TooLargeForEnumeration(n, cap));
    }
    let mut assignment: Vec<Option<Elem>> = vec![None; n];
    assignment[source.identity().0] = Some(target.identity());
    let order: Vec<Elem> = source
        .elems()
        .filter(|&x| x != source.identity())
        .collect();
    let mut found = Vec::new();
    search(
        source,
        target,
        atom_preserving_only,
        &order,
        0,
        &mut assignment,
        &mut found,
    );
    Ok(found)
}

fn consistent(source: &FiniteMonoid, target: &FiniteMonoid, assignment: &[Option<Elem>]) -> bool {
    for x in source.elems() {
        let Some(fx) = assignment[x.0] else { continue };
        for y in source.elems() {
            let Some(fy) = assignment[y.0] else { continue };
            if let Some(fxy) = assignment[source.mul(x, y).0] {
                if fxy != target.mul(fx, fy) {
                    return false;
                }
            }
        }
    }
    true
}

fn search(
    source: &Arc<FiniteMonoid>,
    target: &Arc<FiniteMonoid>,
    atom_preserving_only: bool,
    order: &[Elem],
    depth: usize,
    assignment: &mut Vec<Option<Elem>>,
    found: &mut Vec<MonoidHom>,
) {
    if depth == order.len() {
        let map = assignment.iter().map(|e| e.expect("complete").0).collect();
        let hom = MonoidHom::new(source.clone(), target.clone(), map)
            .expect("consistent assignment is a homomorphism");
        if !atom_preserving_only || hom.is_atom_preserving() {
            found.push(hom);
        }
        return;
    }
    let x = order[depth];
    for y in target.elems() {
        if atom_preserving_only && source.is_atom(x) && !target.is_atom(y) {
            continue;
        }
        assignment[x.0] = Some(y);
        if consistent(source, target, assignment) {
            search(
                source,
                target,
                atom_preserving_only,
                order,
                depth + 1,
                assignment,
                found,
            );
        }
        assignment[x.0] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_on_terminal_is_atom_preserving() {
        let hom = MonoidHom::identity(fixtures::one());
        assert!(hom.is_atom_preserving());
        assert!(hom.is_atomon_mono().unwrap());
    }

    #[test]
    fn collapse_h2_onto_terminal() {
        let h2 = Arc::new(fixtures::h2());
        let one = Arc::new(fixtures::one());
        // H2 = {1, a, b, 0}, terminal = {1, a, 0}
        let hom = MonoidHom::new(h2.clone(), one.clone(), vec![0, 1, 1, 2]).unwrap();
        assert!(hom.is_atom_preserving());
        assert!(!hom.is_atomon_mono().unwrap());
        assert_eq!(canonical_to_terminal(h2).unwrap(), hom);
    }

    #[test]
    fn group_into_terminal_is_not_multiplicative() {
        let c2 = fixtures::c2();
        let one = fixtures::one();
        let err = MonoidHom::new(c2, one, vec![0, 1]).unwrap_err();
        assert_eq!(err, Error::NotMultiplicative(1, 1));
    }

    #[test]
    fn trivial_into_terminal_is_mono() {
        let hom = MonoidHom::new(fixtures::zero(), fixtures::one(), vec![0]).unwrap();
        assert!(hom.is_atomon_mono().unwrap());
    }

    #[test]
    fn not_atom_preserving_is_refused_by_mono_test() {
        // 1 -> 1, a -> 0, 0 -> 0 is multiplicative but sends the atom to 0
        let hom = MonoidHom::new(fixtures::one(), fixtures::one(), vec![0, 2, 2]).unwrap();
        assert!(!hom.is_atom_preserving());
        assert_eq!(hom.is_atomon_mono(), Err(Error::NotAtomPreserving(0)));
    }

    #[test]
    fn canonical_map_of_m31() {
        let m31 = fixtures::m31();
        let hom = canonical_to_terminal(m31.clone()).unwrap();
        let t = hom.target();
        let images: Vec<&str> = m31.elems().map(|x| t.name(hom.apply(x))).collect();
        assert_eq!(images, vec!["1", "a", "0", "0"]);
        assert_eq!(canonical_to_terminal(fixtures::sl2()), Err(Error::NotAtomic));
    }

    #[test]
    fn enumeration_finds_unique_terminal_map() {
        let one = Arc::new(fixtures::one());
        for fx in fixtures::named() {
            if !fx.monoid.is_atomic() {
                continue;
            }
            let src = Arc::new(fx.monoid.clone());
            let homs = enumerate_homs(&src, &one, true, EXHAUSTIVE_SOURCE_CAP).unwrap();
            assert_eq!(homs.len(), 1, "{}", fx.name);
            assert_eq!(homs[0], canonical_to_terminal(src).unwrap());
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let big = Arc::new(fixtures::cyclic_group(7));
        assert_eq!(
            enumerate_homs(&big, &big, false, EXHAUSTIVE_SOURCE_CAP).unwrap_err(),
            Error::TooLargeForEnumeration(7, 6)
        );
    }

    #[test]
    fn compose_checks_endpoints() {
        let h2 = Arc::new(fixtures::h2());
        let one = Arc::new(fixtures::one());
        let f = MonoidHom::new(h2.clone(), one.clone(), vec![0, 1, 1, 2]).unwrap();
        let id = MonoidHom::identity(one.clone());
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap_err(), Error::TargetMismatch);
    }
}
