//! The product of a finite family: the submonoid of the direct product
//! generated by the tuples whose components are all units and the tuples
//! whose components are all atoms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freeprod::Family;
use crate::lenset::{EpSet, LengthSystem};
use crate::monoid::{generate, Elem, FiniteMonoid, MonoidHom};

/// An element of the direct product, one component per member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleElem(pub Vec<Elem>);

impl TupleElem {
    pub fn components(&self) -> &[Elem] {
        &self.0
    }

    /// `(name_1,name_2,...)`.
    pub fn display(&self, family: &Family) -> String {
        let names: Vec<&str> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &x)| family.member(i).name(x))
            .collect();
        format!("({})", names.join(","))
    }

    /// Parses `(name_1,name_2,...)`.
    pub fn parse(family: &Family, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(text.to_string()))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != family.len() {
            return Err(Error::TupleArity {
                expected: family.len(),
                found: parts.len(),
            });
        }
        parts
            .iter()
            .enumerate()
            .map(|(i, name)| {
                family
                    .member(i)
                    .elem_by_name(name)
                    .ok_or_else(|| Error::Parse(format!("{name} in member {}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()
            .map(TupleElem)
    }
}

/// The two generating sets of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGenerators {
    pub unit_tuples: Vec<TupleElem>,
    pub atom_tuples: Vec<TupleElem>,
}

/// The product as an explicit finite monoid.
#[derive(Debug, Clone)]
pub struct Materialized {
    pub monoid: Arc<FiniteMonoid>,
    /// Tuple of each element, indexed like the monoid's elements.
    pub tuples: Vec<TupleElem>,
    /// Restrictions of the canonical projections.
    pub projections: Vec<MonoidHom>,
}

impl Materialized {
    pub fn elem_of(&self, t: &TupleElem) -> Option<Elem> {
        self.tuples.iter().position(|u| u == t).map(Elem)
    }
}

fn cartesian(sets: &[Vec<Elem>]) -> Vec<TupleElem> {
    let mut out = vec![Vec::new()];
    for set in sets {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Elem>| {
                set.iter().map(move |&x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(TupleElem).collect()
}

pub fn generators(family: &Family) -> ProductGenerators {
    let units: Vec<Vec<Elem>> = family.members().iter().map(|m| m.units().to_vec()).collect();
    let atoms: Vec<Vec<Elem>> = family.members().iter().map(|m| m.atoms().to_vec()).collect();
    ProductGenerators {
        unit_tuples: cartesian(&units),
        atom_tuples: cartesian(&atoms),
    }
}

fn check_tuple(family: &Family, t: &TupleElem) -> Result<()> {
    if t.0.len() != family.len() {
        return Err(Error::TupleArity {
            expected: family.len(),
            found: t.0.len(),
        });
    }
    for (i, &x) in t.0.iter().enumerate() {
        family.letter(i, x)?;
    }
    Ok(())
}

fn component_intersection(family: &Family, t: &TupleElem) -> EpSet {
    t.0.iter()
        .enumerate()
        .map(|(i, &x)| family.member_length_set(i, x).clone())
        .reduce(|a, b| a.intersect(&b))
        .expect("families are non-empty")
}

/// Whether `t` lies in the product: all components are units, or the
/// component length sets share a positive length.
pub fn contains(family: &Family, t: &TupleElem) -> Result<bool> {
    check_tuple(family, t)?;
    if t.0.iter().enumerate().all(|(i, &x)| family.member(i).is_unit(x)) {
        return Ok(true);
    }
    let common = component_intersection(family, t);
    Ok(!common.intersect(&EpSet::from_threshold(1)).is_empty())
}

fn require_member(family: &Family, t: &TupleElem) -> Result<()> {
    if contains(family, t)? {
        Ok(())
    } else {
        Err(Error::NotInProduct)
    }
}

pub fn is_unit(family: &Family, t: &TupleElem) -> Result<bool> {
    require_member(family, t)?;
    Ok(t.0.iter().enumerate().all(|(i, &x)| family.member(i).is_unit(x)))
}

pub fn is_atom(family: &Family, t: &TupleElem) -> Result<bool> {
    require_member(family, t)?;
    Ok(t.0.iter().enumerate().all(|(i, &x)| family.member(i).is_atom(x)))
}

/// Intersection of the component length sets.
pub fn length_set(family: &Family, t: &TupleElem) -> Result<EpSet> {
    require_member(family, t)?;
    Ok(component_intersection(family, t))
}

/// All non-empty intersections `L_1 ∩ ... ∩ L_n` with `L_i` a length set of
/// member `i`.
pub fn length_system(family: &Family, nonzero_only: bool) -> LengthSystem {
    let mut acc: BTreeSet<EpSet> = family.member_system(0).entries().clone();
    for i in 1..family.len() {
        let mut next = BTreeSet::new();
        for a in &acc {
            for b in family.member_system(i).entries() {
                let c = a.intersect(b);
                if !c.is_empty() {
                    next.insert(c);
                }
            }
        }
        acc = next;
    }
    let zero = EpSet::singleton(0);
    LengthSystem::new(acc.into_iter().filter(|l| !(nonzero_only && *l == zero)))
}

/// `𝒰_k` of the product: the intersection of the members' `𝒰_k`.
pub fn union_k(family: &Family, k: usize) -> EpSet {
    (0..family.len())
        .map(|i| crate::lenset::union_k_of(family.member_system(i), k))
        .reduce(|a, b| a.intersect(&b))
        .expect("families are non-empty")
}

/// Closes the generators under componentwise multiplication, failing once
/// more than `cap` elements appear.
pub fn materialize(family: &Family, cap: usize) -> Result<Materialized> {
    let gens = generators(family);
    let all: Vec<TupleElem> = gens
        .unit_tuples
        .iter()
        .chain(gens.atom_tuples.iter())
        .cloned()
        .collect();
    let identity = TupleElem(family.members().iter().map(|m| m.identity()).collect());
    let (monoid, tuples) = generate(
        identity,
        &all,
        |a, b| {
            TupleElem(
                a.0.iter()
                    .zip(&b.0)
                    .enumerate()
                    .map(|(i, (&x, &y))| family.member(i).mul(x, y))
                    .collect(),
            )
        },
        |t| t.display(family),
        Some(cap),
    )?;
    let monoid = Arc::new(monoid);
    let projections = (0..family.len())
        .map(|i| {
            MonoidHom::new(
                monoid.clone(),
                family.members()[i].clone(),
                tuples.iter().map(|t| t.0[i].0).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Materialized {
        monoid,
        tuples,
        projections,
    })
}

/// The induced map into the product: `w ↦ (φ_i(w))_i`.
pub fn universal(family: &Family, homs: &[MonoidHom], w: Elem) -> Result<TupleElem> {
    if homs.len() != family.len() {
        return Err(Error::FamilyArity {
            expected: family.len(),
            found: homs.len(),
        });
    }
    for (i, h) in homs.iter().enumerate() {
        if **h.source() != **homs[0].source() {
            return Err(Error::SourceMismatch);
        }
        if **h.target() != *family.members()[i] {
            return Err(Error::TargetMismatch);
        }
        if !h.is_atom_preserving() {
            return Err(Error::NotAtomPreserving(i));
        }
    }
    if !homs[0].source().contains(w) {
        return Err(Error::MapOutOfRange {
            value: w.0,
            size: homs[0].source().size(),
        });
    }
    Ok(TupleElem(homs.iter().map(|h| h.apply(w)).collect()))
}

impl fmt::Display for ProductGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} unit tuples, {} atom tuples",
            self.unit_tuples.len(),
            self.atom_tuples.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lenset;
    use crate::monoid::Property;

    fn fam(members: Vec<FiniteMonoid>) -> Family {
        Family::new(members).unwrap()
    }

    fn tuple(f: &Family, text: &str) -> TupleElem {
        TupleElem::parse(f, text).unwrap()
    }

    #[test]
    fn generator_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        let g = generators(&oo);
        assert_eq!(g.unit_tuples, vec![tuple(&oo, "(1,1)")]);
        assert_eq!(g.atom_tuples, vec![tuple(&oo, "(a,a)")]);
        let oc = fam(vec![fixtures::one(), fixtures::c2()]);
        let g = generators(&oc);
        assert_eq!(g.unit_tuples, vec![tuple(&oc, "(1,1)"), tuple(&oc, "(1,u)")]);
        assert!(g.atom_tuples.is_empty());
        let z = fam(vec![fixtures::zero()]);
        assert_eq!(generators(&z).unit_tuples.len(), 1);
        assert!(generators(&z).atom_tuples.is_empty());
    }

    #[test]
    fn membership_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        assert!(contains(&oo, &tuple(&oo, "(0,0)")).unwrap());
        assert!(!contains(&oo, &tuple(&oo, "(0,a)")).unwrap());
        assert!(contains(&oo, &tuple(&oo, "(1,1)")).unwrap());
        assert!(!contains(&oo, &tuple(&oo, "(1,a)")).unwrap());
        assert!(matches!(
            contains(&oo, &TupleElem(vec![Elem(0)])),
            Err(Error::TupleArity { .. })
        ));
    }

    #[test]
    fn materialize_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        let p = materialize(&oo, 100).unwrap();
        assert_eq!(p.monoid.names(), ["(1,1)", "(a,a)", "(0,0)"]);
        let cc = fam(vec![fixtures::c2(), fixtures::c2()]);
        let p = materialize(&cc, 100).unwrap();
        assert_eq!(p.monoid.size(), 4);
        assert_eq!(p.monoid.units().len(), 4);
        let ooo = fam(vec![fixtures::one(), fixtures::one(), fixtures::one()]);
        assert_eq!(materialize(&ooo, 2).unwrap_err(), Error::CapExceeded(2));
    }

    #[test]
    fn unit_and_atom_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        assert!(is_unit(&oo, &tuple(&oo, "(1,1)")).unwrap());
        assert!(is_atom(&oo, &tuple(&oo, "(a,a)")).unwrap());
        let zz = tuple(&oo, "(0,0)");
        assert!(!is_unit(&oo, &zz).unwrap() && !is_atom(&oo, &zz).unwrap());
        assert_eq!(is_atom(&oo, &tuple(&oo, "(0,a)")), Err(Error::NotInProduct));
    }

    #[test]
    fn length_set_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        assert_eq!(
            length_set(&oo, &tuple(&oo, "(0,0)")).unwrap(),
            EpSet::from_threshold(2)
        );
        assert_eq!(length_set(&oo, &tuple(&oo, "(1,1)")).unwrap(), EpSet::singleton(0));
        let mo = fam(vec![fixtures::m31(), fixtures::one()]);
        assert_eq!(
            length_set(&mo, &tuple(&mo, "(g3,0)")).unwrap(),
            EpSet::from_threshold(3)
        );
        let cc = fam(vec![fixtures::c2(), fixtures::c2()]);
        assert!(length_set(&cc, &tuple(&cc, "(u,1)")).unwrap().is_empty());
    }

    #[test]
    fn system_and_union_examples() {
        let oo = fam(vec![fixtures::one(), fixtures::one()]);
        assert_eq!(length_system(&oo, false), lenset::length_system(&fixtures::one(), false));
        let co = fam(vec![fixtures::c2(), fixtures::one()]);
        assert_eq!(length_system(&co, false), LengthSystem::new([EpSet::singleton(0)]));
        let z = fam(vec![fixtures::zero()]);
        assert_eq!(length_system(&z, false), LengthSystem::new([EpSet::singleton(0)]));

        assert_eq!(union_k(&oo, 1), EpSet::singleton(1));
        let om = fam(vec![fixtures::one(), fixtures::m31()]);
        assert_eq!(union_k(&om, 3), EpSet::from_threshold(3));
        assert_eq!(union_k(&om, 0), EpSet::singleton(0));
    }

    #[test]
    fn universal_examples() {
        let one: Arc<FiniteMonoid> = Arc::new(fixtures::one());
        let oo = Family::new([one.clone(), one.clone()]).unwrap();
        let id = MonoidHom::identity(one.clone());
        let homs = [id.clone(), id];
        let t = universal(&oo, &homs, one.elem_by_name("0").unwrap()).unwrap();
        assert_eq!(t.display(&oo), "(0,0)");
        assert!(contains(&oo, &t).unwrap());
        assert_eq!(universal(&oo, &homs, one.identity()).unwrap().display(&oo), "(1,1)");

        let h2: Arc<FiniteMonoid> = Arc::new(fixtures::h2());
        let fold = MonoidHom::new(h2.clone(), one.clone(), vec![0, 1, 1, 2]).unwrap();
        let homs = [fold.clone(), fold];
        let t = universal(&oo, &homs, h2.elem_by_name("b").unwrap()).unwrap();
        assert_eq!(t.display(&oo), "(a,a)");
    }

    #[test]
    fn unit_atom_unit_is_atom() {
        let f = fam(vec![fixtures::c2(), fixtures::cyclic_group(3)]);
        let g = generators(&f);
        let p = materialize(&f, 60).unwrap();
        assert!(g.atom_tuples.is_empty());
        assert!(p.monoid.check_property(Property::Cancellative));
        let f = fam(vec![fixtures::h2(), fixtures::m31()]);
        let g = generators(&f);
        for u in &g.unit_tuples {
            for a in &g.atom_tuples {
                for v in &g.unit_tuples {
                    let t = TupleElem(
                        (0..2)
                            .map(|i| {
                                let m = f.member(i);
                                m.mul(m.mul(u.0[i], a.0[i]), v.0[i])
                            })
                            .collect(),
                    );
                    assert!(g.atom_tuples.contains(&t));
                }
            }
        }
    }
}
