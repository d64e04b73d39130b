//! Length sets of finite monoids, as exact eventually periodic sets.

mod epset;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use epset::{gcd, lcm, EpSet, EpSetJson};

use crate::monoid::{Elem, ElemSet, FiniteMonoid};

/// The setwise powers `S_k = A^k` of the atom set `A`, `k >= 1`, stored up
/// to the first repetition.
///
/// For `k >= preperiod`, `S_{k + period} = S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSequence {
    layers: Vec<ElemSet>,
    preperiod: usize,
    period: usize,
}

impl LayerSequence {
    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The stored layers `S_1, ..., S_{preperiod + period - 1}`.
    pub fn stored(&self) -> &[ElemSet] {
        &self.layers
    }

    /// `S_k` for any `k >= 1`.
    pub fn layer(&self, k: usize) -> &ElemSet {
        assert!(k >= 1, "layers start at k = 1");
        let idx = if k < self.preperiod {
            k
        } else {
            self.preperiod + (k - self.preperiod) % self.period
        };
        &self.layers[idx - 1]
    }
}

fn setwise_times_atoms(monoid: &FiniteMonoid, layer: &ElemSet) -> ElemSet {
    let mut next = ElemSet::empty(monoid.size());
    for x in layer.iter() {
        for a in monoid.atoms().iter() {
            next.insert(monoid.mul(x, a));
        }
    }
    next
}

/// Computes `A, A^2, A^3, ...` until a layer repeats.
pub fn power_layers(monoid: &FiniteMonoid) -> LayerSequence {
    let mut layers = vec![monoid.atoms().clone()];
    let mut seen: HashMap<ElemSet, usize> = HashMap::new();
    seen.insert(layers[0].clone(), 1);
    loop {
        let next = setwise_times_atoms(monoid, layers.last().expect("non-empty"));
        let k = layers.len() + 1;
        if let Some(&first) = seen.get(&next) {
            return LayerSequence {
                layers,
                preperiod: first,
                period: k - first,
            };
        }
        seen.insert(next.clone(), k);
        layers.push(next);
    }
}

fn length_set_from_layers(monoid: &FiniteMonoid, layers: &LayerSequence, x: Elem) -> EpSet {
    let is_one = x == monoid.identity();
    EpSet::from_fn(layers.preperiod(), layers.period(), |k| {
        if k == 0 {
            is_one
        } else {
            layers.layer(k).contains(x)
        }
    })
}

/// The set of lengths of atomic factorizations of `x`.
///
/// `{0}` for the identity, empty for the other units.
pub fn length_set(monoid: &FiniteMonoid, x: Elem) -> EpSet {
    length_set_from_layers(monoid, &power_layers(monoid), x)
}

/// Length sets of every element, indexed by element.
pub fn length_sets(monoid: &FiniteMonoid) -> Vec<EpSet> {
    let layers = power_layers(monoid);
    monoid
        .elems()
        .map(|x| length_set_from_layers(monoid, &layers, x))
        .collect()
}

/// A deduplicated family of non-empty length sets.
///
/// `truncated_at` is set when the family came from a bounded enumeration
/// and is only known to be a subset of the true system.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LengthSystem {
    entries: BTreeSet<EpSet>,
    truncated_at: Option<usize>,
}

impl LengthSystem {
    pub fn new(entries: impl IntoIterator<Item = EpSet>) -> Self {
        Self {
            entries: entries.into_iter().filter(|s| !s.is_empty()).collect(),
            truncated_at: None,
        }
    }

    pub fn truncated(mut self, bound: usize) -> Self {
        self.truncated_at = Some(bound);
        self
    }

    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn entries(&self) -> &BTreeSet<EpSet> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, set: &EpSet) -> bool {
        self.entries.contains(set)
    }

    /// Union of all entries containing `k`.
    pub fn union_containing(&self, k: usize) -> EpSet {
        self.entries
            .iter()
            .filter(|l| l.contains(k))
            .fold(EpSet::empty(), |acc, l| acc.union(l))
    }
}

impl fmt::Display for LengthSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if let Some(b) = self.truncated_at {
            write!(f, " (truncated at {b})")?;
        }
        Ok(())
    }
}

/// The system of length sets; with `nonzero_only` the set `{0}` is dropped.
pub fn length_system(monoid: &FiniteMonoid, nonzero_only: bool) -> LengthSystem {
    let zero = EpSet::singleton(0);
    LengthSystem::new(
        length_sets(monoid)
            .into_iter()
            .filter(|l| !(nonzero_only && *l == zero)),
    )
}

/// Union of all length sets containing `k`.
pub fn union_k(monoid: &FiniteMonoid, k: usize) -> EpSet {
    union_k_of(&length_system(monoid, false), k)
}

/// Union of the entries of a full (not non-zero-only) system containing `k`.
///
/// Only `L(1) = {0}` can contain `0`, which is checked rather than assumed.
pub fn union_k_of(system: &LengthSystem, k: usize) -> EpSet {
    let u = system.union_containing(k);
    if k == 0 {
        assert_eq!(
            u,
            EpSet::singleton(0),
            "a length set containing 0 must be {{0}}"
        );
    }
    u
}

/// Lengths `k <= bound` of atom words evaluating to `x`, by a reachable-set
/// recursion over `(length, element)`: `R_0 = {1}`, `R_{k+1} = R_k · A`.
pub fn brute_force_lengths(monoid: &FiniteMonoid, x: Elem, bound: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut reach = vec![false; monoid.size()];
    reach[monoid.identity().0] = true;
    for k in 0..=bound {
        if reach[x.0] {
            out.insert(k);
        }
        let mut next = vec![false; monoid.size()];
        for y in monoid.elems().filter(|y| reach[y.0]) {
            for a in monoid.atoms().iter() {
                next[monoid.mul(y, a).0] = true;
            }
        }
        reach = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn by(m: &FiniteMonoid, name: &str) -> Elem {
        m.elem_by_name(name).unwrap()
    }

    #[test]
    fn layers_of_terminal() {
        let one = fixtures::one();
        let seq = power_layers(&one);
        assert_eq!((seq.preperiod(), seq.period()), (2, 1));
        assert_eq!(seq.layer(1).to_vec(), vec![by(&one, "a")]);
        assert_eq!(seq.layer(2).to_vec(), vec![by(&one, "0")]);
        assert_eq!(seq.layer(7).to_vec(), vec![by(&one, "0")]);
    }

    #[test]
    fn layers_of_group_and_m31() {
        let seq = power_layers(&fixtures::c2());
        assert_eq!((seq.preperiod(), seq.period()), (1, 1));
        assert!(seq.layer(1).is_empty() && seq.layer(5).is_empty());

        let m31 = fixtures::m31();
        let seq = power_layers(&m31);
        assert_eq!((seq.preperiod(), seq.period()), (3, 1));
        let names: Vec<&str> = (1..=4)
            .map(|k| m31.name(seq.layer(k).to_vec()[0]))
            .collect();
        assert_eq!(names, vec!["g", "g2", "g3", "g3"]);
    }

    #[test]
    fn cycle_certificate_recomputes() {
        for fx in fixtures::fixture_set(7, 20) {
            let m = &fx.monoid;
            let seq = power_layers(m);
            let last = seq.layer(seq.preperiod() + seq.period() - 1);
            let again = setwise_times_atoms(m, last);
            assert_eq!(&again, seq.layer(seq.preperiod()), "{}", fx.name);
        }
    }

    #[test]
    fn terminal_length_sets() {
        let one = fixtures::one();
        assert_eq!(length_set(&one, by(&one, "1")), EpSet::singleton(0));
        assert_eq!(length_set(&one, by(&one, "a")), EpSet::singleton(1));
        assert_eq!(length_set(&one, by(&one, "0")), EpSet::from_threshold(2));
    }

    #[test]
    fn non_identity_units_have_empty_length_set() {
        let c2 = fixtures::c2();
        assert!(length_set(&c2, by(&c2, "u")).is_empty());
    }

    #[test]
    fn systems() {
        let one = fixtures::one();
        let sys = length_system(&one, false);
        let want = LengthSystem::new([
            EpSet::singleton(0),
            EpSet::singleton(1),
            EpSet::from_threshold(2),
        ]);
        assert_eq!(sys, want);
        assert!(length_system(&fixtures::c2(), true).is_empty());
        assert_eq!(
            length_system(&fixtures::zero(), false),
            LengthSystem::new([EpSet::singleton(0)])
        );
    }

    #[test]
    fn unions() {
        let one = fixtures::one();
        assert_eq!(union_k(&one, 1), EpSet::singleton(1));
        assert_eq!(union_k(&one, 3), EpSet::from_threshold(2));
        for fx in fixtures::named() {
            assert_eq!(union_k(&fx.monoid, 0), EpSet::singleton(0), "{}", fx.name);
        }
    }

    #[test]
    fn brute_force_examples() {
        let one = fixtures::one();
        assert_eq!(
            brute_force_lengths(&one, by(&one, "0"), 5),
            BTreeSet::from([2, 3, 4, 5])
        );
        assert_eq!(
            brute_force_lengths(&one, by(&one, "a"), 5),
            BTreeSet::from([1])
        );
        let c2 = fixtures::c2();
        assert!(brute_force_lengths(&c2, by(&c2, "u"), 5).is_empty());
    }

    #[test]
    fn length_sets_are_unit_invariant() {
        for fx in fixtures::fixture_set(11, 20).into_iter().filter(|f| f.atomic) {
            let m = &fx.monoid;
            let ls = length_sets(m);
            for x in m.elems().filter(|&x| !m.is_unit(x)) {
                for u in m.units().iter() {
                    for v in m.units().iter() {
                        let y = m.mul(m.mul(u, x), v);
                        assert_eq!(ls[y.0], ls[x.0], "{}", fx.name);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_agreement_on_fixtures() {
        for fx in fixtures::fixture_set(0, 20) {
            let m = &fx.monoid;
            let ls = length_sets(m);
            for x in m.elems() {
                let oracle = brute_force_lengths(m, x, 12);
                let formula: BTreeSet<usize> = ls[x.0].elems_up_to(12).into_iter().collect();
                assert_eq!(formula, oracle, "{} at {}", fx.name, m.name(x));
            }
        }
    }
}
