use std::sync::Arc;

use super::{Recorder, VerifyOptions};
use crate::fixtures;
use crate::lenset;
use crate::monoid::{enumerate_homs, MonoidHom, Property, EXHAUSTIVE_SOURCE_CAP};

/// Consistency of the single-monoid layer on the fixture set: predicate
/// implications, unit invariance of length sets, the layer cycle
/// certificate and identity homomorphisms.
pub(crate) fn monoid_invariants(rec: &mut Recorder, opts: &VerifyOptions) {
    for fx in fixtures::fixture_set(opts.seed, 20) {
        let m = &fx.monoid;
        let name = &fx.name;
        let has = |p: Property| m.check_property(p);
        rec.check(has(Property::DedekindFinite), || format!("{name}: not Dedekind-finite"));
        rec.check(!has(Property::Cancellative) || has(Property::UnitCancellative), || {
            format!("{name}: cancellative but not unit-cancellative")
        });
        rec.check(!has(Property::Acyclic) || has(Property::UnitCancellative), || {
            format!("{name}: acyclic but not unit-cancellative")
        });
        // a finite unit-cancellative monoid is a group
        let group = m.units().len() == m.size();
        rec.check(!has(Property::UnitCancellative) || group, || {
            format!("{name}: unit-cancellative but not a group")
        });
        rec.check(fx.atomic == has(Property::Atomic), || format!("{name}: atomic flag"));
        rec.check(m.is_reduced() == (m.units().len() == 1), || format!("{name}: reduced"));
        for x in m.elems() {
            let unit_left = m.elems().any(|y| m.mul(x, y) == m.identity());
            rec.check(unit_left == m.is_unit(x), || {
                format!("{name}: unit status of {}", m.name(x))
            });
        }

        let layers = lenset::power_layers(m);
        let last = layers.layer(layers.preperiod() + layers.period() - 1);
        let mut again = crate::monoid::ElemSet::empty(m.size());
        for x in last.iter() {
            for a in m.atoms().iter() {
                again.insert(m.mul(x, a));
            }
        }
        rec.check(&again == layers.layer(layers.preperiod()), || {
            format!("{name}: layer cycle certificate")
        });

        if fx.atomic {
            let sets = lenset::length_sets(m);
            for x in m.elems().filter(|&x| !m.is_unit(x)) {
                for u in m.units().iter() {
                    for v in m.units().iter() {
                        let y = m.mul(m.mul(u, x), v);
                        rec.check(sets[y.0] == sets[x.0], || {
                            format!("{name}: length set of {} not unit-invariant", m.name(x))
                        });
                    }
                }
            }
        }

        let arc = Arc::new(m.clone());
        let homs = enumerate_homs(&arc, &arc, false, EXHAUSTIVE_SOURCE_CAP).expect("small fixtures");
        let id = MonoidHom::identity(arc.clone());
        rec.check(homs.contains(&id), || format!("{name}: identity not enumerated"));
        for h in &homs {
            rec.check(h.compose(&id).as_ref() == Ok(h), || format!("{name}: identity law"));
        }
    }
}
