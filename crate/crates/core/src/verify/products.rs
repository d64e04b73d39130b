use super::{fx, multisets, Recorder, VerifyOptions};
use crate::atomprod::{self, TupleElem};
use crate::error::Error;
use crate::freeprod::Family;
use crate::lenset;
use crate::monoid::{Elem, Property};

const PRODUCT_CAP: usize = 60;

fn tuples_of_direct_product(family: &Family) -> Vec<TupleElem> {
    let mut out = vec![Vec::new()];
    for m in family.members() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Elem>| {
                m.elems().map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(TupleElem).collect()
}

/// Intersection formulas of the product against length computations on the
/// materialized monoid, for every two- and three-member family of small
/// fixtures that materializes within the cap.
pub(crate) fn product_unions(rec: &mut Recorder, _opts: &VerifyOptions) {
    const MAX_K: usize = 6;
    let pool = ["zero", "one", "c2", "h2", "m31"];
    for size in 2..=3 {
        for ix in multisets(pool.len(), size) {
            let names: Vec<&str> = ix.iter().map(|&i| pool[i]).collect();
            let family = Family::new(names.iter().map(|n| fx(n))).expect("atomic fixtures");
            let p = match atomprod::materialize(&family, PRODUCT_CAP) {
                Ok(p) => p,
                Err(Error::CapExceeded(_)) => {
                    rec.skip();
                    continue;
                }
                Err(e) => {
                    rec.fail(format!("{names:?}: materialization failed: {e}"));
                    continue;
                }
            };
            let m = &p.monoid;
            rec.check(m.is_atomic(), || format!("{names:?}: product is not atomic"));
            let sets = lenset::length_sets(m);
            for x in m.elems() {
                let t = &p.tuples[x.0];
                let shown = || format!("{names:?} tuple {}", t.display(&family));
                match atomprod::length_set(&family, t) {
                    Ok(l) => rec.check(l == sets[x.0], || {
                        format!("{}: formula {l}, materialized {}", shown(), sets[x.0])
                    }),
                    Err(e) => rec.fail(format!("{}: {e}", shown())),
                }
                let unit = atomprod::is_unit(&family, t);
                rec.check(unit == Ok(m.is_unit(x)), || format!("{}: unit test", shown()));
                let atom = atomprod::is_atom(&family, t);
                rec.check(atom == Ok(m.is_atom(x)), || format!("{}: atom test", shown()));
            }
            for t in tuples_of_direct_product(&family) {
                let inside = p.elem_of(&t).is_some();
                rec.check(atomprod::contains(&family, &t) == Ok(inside), || {
                    format!("{names:?} tuple {}: membership", t.display(&family))
                });
            }
            for nonzero in [false, true] {
                let formula = atomprod::length_system(&family, nonzero);
                let direct = lenset::length_system(m, nonzero);
                rec.check(formula == direct, || {
                    format!("{names:?}: system {formula} vs materialized {direct}")
                });
            }
            for k in 0..=MAX_K {
                let formula = atomprod::union_k(&family, k);
                let direct = lenset::union_k(m, k);
                rec.check(formula == direct, || {
                    format!("{names:?} k={k}: union {formula} vs materialized {direct}")
                });
            }
            for (i, proj) in p.projections.iter().enumerate() {
                rec.check(proj.is_atom_preserving(), || {
                    format!("{names:?}: projection {i} is not atom-preserving")
                });
            }
            let gens = atomprod::generators(&family);
            for u in &gens.unit_tuples {
                for a in &gens.atom_tuples {
                    for v in &gens.unit_tuples {
                        let uav = TupleElem(
                            (0..family.len())
                                .map(|i| {
                                    let h = family.member(i);
                                    h.mul(h.mul(u.0[i], a.0[i]), v.0[i])
                                })
                                .collect(),
                        );
                        rec.check(gens.atom_tuples.contains(&uav), || {
                            format!("{names:?}: unit*atom*unit left the atom tuples")
                        });
                    }
                }
            }
        }
    }
}

const CANCELLATION: [Property; 3] = [
    Property::Acyclic,
    Property::UnitCancellative,
    Property::Cancellative,
];

/// Cancellation properties of the members carry over to the coproduct
/// (checked on words of at most three letters) and to the materialized
/// product.
pub(crate) fn preservation(rec: &mut Recorder, _opts: &VerifyOptions) {
    const MAX_WORD: usize = 3;
    let pool = ["zero", "one", "c2", "c3", "h2", "m31"];
    let mut families: Vec<Vec<&str>> = multisets(pool.len(), 2)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| pool[i]).collect())
        .collect();
    families.push(vec!["zero", "c2", "c3"]);
    families.push(vec!["c2", "c2", "c3"]);
    families.push(vec!["one", "c2", "c3"]);
    for names in families {
        let family = Family::new(names.iter().map(|n| fx(n))).expect("atomic fixtures");
        for prop in CANCELLATION {
            match family.check_property_bounded(prop, MAX_WORD) {
                Ok(check) => rec.check(check.holds(), || {
                    let w: Vec<String> = check
                        .witness
                        .iter()
                        .flatten()
                        .map(|w| family.format_word(w))
                        .collect();
                    format!("{names:?}: coproduct violates {prop} at {w:?}")
                }),
                Err(Error::PreconditionUnmet(_)) => {
                    rec.skip();
                    continue;
                }
                Err(e) => {
                    rec.fail(format!("{names:?} {prop}: {e}"));
                    continue;
                }
            }
            match atomprod::materialize(&family, PRODUCT_CAP) {
                Ok(p) => rec.check(p.monoid.check_property(prop), || {
                    format!("{names:?}: product violates {prop}")
                }),
                Err(Error::CapExceeded(_)) => rec.skip(),
                Err(e) => rec.fail(format!("{names:?}: materialization failed: {e}")),
            }
        }
    }
}
