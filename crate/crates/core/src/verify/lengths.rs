use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fx, Recorder, VerifyOptions};
use crate::fixtures;
use crate::freeprod::{FactorizationOracle, Family, ReducedWord};
use crate::lenset::{self, EpSet};

/// Length sets of every element of every fixture against the reachable-set
/// enumeration, up to 12.
pub(crate) fn length_oracle(rec: &mut Recorder, opts: &VerifyOptions) {
    const BOUND: usize = 12;
    for fx in fixtures::fixture_set(opts.seed, 20) {
        let m = &fx.monoid;
        let sets = lenset::length_sets(m);
        for x in m.elems() {
            let formula: BTreeSet<usize> = sets[x.0].elems_up_to(BOUND).into_iter().collect();
            let oracle = lenset::brute_force_lengths(m, x, BOUND);
            rec.check(formula == oracle, || {
                format!(
                    "{} element {}: formula {:?}, oracle {:?}",
                    fx.name,
                    m.name(x),
                    formula,
                    oracle
                )
            });
        }
    }
}

fn family_of(names: &[&str]) -> Family {
    Family::new(names.iter().map(|n| fx(n))).expect("fixture families are atomic")
}

/// Families of two or three fixtures used by the coproduct suites.
fn coproduct_families(pool: &[&'static str], triples: &[[&'static str; 3]]) -> Vec<Vec<&'static str>> {
    let mut out: Vec<Vec<&str>> = super::multisets(pool.len(), 2)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| pool[i]).collect())
        .collect();
    out.extend(triples.iter().map(|t| t.to_vec()));
    out
}

fn lengths_families() -> Vec<Vec<&'static str>> {
    coproduct_families(
        &["one", "c2", "h2", "m31"],
        &[
            ["one", "c2", "h2"],
            ["c2", "c2", "one"],
            ["m31", "h2", "one"],
            ["zero", "one", "c2"],
            ["h2", "h2", "m31"],
        ],
    )
}

/// The sum formula for coproduct length sets against a bounded
/// factorization search, on all reduced words of at most three letters.
pub(crate) fn coproduct_lengths(rec: &mut Recorder, opts: &VerifyOptions) {
    const BOUND: usize = 10;
    const MAX_WORD: usize = 3;
    const UNIT_DEPTH: usize = 2;
    for names in lengths_families() {
        let family = family_of(&names);
        let oracle =
            match FactorizationOracle::new(&family, BOUND, MAX_WORD + UNIT_DEPTH, UNIT_DEPTH, opts.budget) {
                Ok(o) => o,
                Err(e) => {
                    rec.fail(format!("{names:?}: oracle failed: {e}"));
                    continue;
                }
            };
        for w in family.reduced_words(MAX_WORD) {
            let formula: BTreeSet<usize> =
                family.length_set(&w).elems_up_to(BOUND).into_iter().collect();
            let found = oracle.lengths(&w, BOUND);
            rec.check(formula == found, || {
                format!(
                    "{names:?} word {}: formula {formula:?}, oracle {found:?}",
                    family.format_word(&w)
                )
            });
        }
    }
}

/// The composition formula for `𝒰_k` of a coproduct against the union of
/// the length sets of all reduced words of at most `k` letters.
pub(crate) fn coproduct_unions(rec: &mut Recorder, _opts: &VerifyOptions) {
    const MAX_K: usize = 4;
    let families = coproduct_families(
        &["one", "m31", "h2", "c2"],
        &[["one", "m31", "h2"], ["c2", "c2", "one"], ["c2", "h2", "m31"]],
    );
    for names in families {
        let family = family_of(&names);
        let words = family.reduced_words(MAX_K);
        let sets: Vec<EpSet> = words.iter().map(|w| family.length_set(w)).collect();
        for k in 1..=MAX_K {
            let expected = words
                .iter()
                .zip(&sets)
                .filter(|(w, l)| w.len() <= k && l.contains(k))
                .fold(EpSet::empty(), |acc, (_, l)| acc.union(l));
            let formula = family.union_k(k);
            rec.check(formula == expected, || {
                format!("{names:?} k={k}: formula {formula}, enumeration {expected}")
            });
        }
    }
}

/// Unit and atom recognition on reduced forms against definitional
/// searches: an inverse among short words, and the absence of a splitting
/// into two short non-units.
pub(crate) fn coproduct_units_atoms(rec: &mut Recorder, _opts: &VerifyOptions) {
    const MAX_WORD: usize = 3;
    for names in lengths_families() {
        let family = family_of(&names);
        let words = family.reduced_words(MAX_WORD);
        let reducible = family.reducible_products(MAX_WORD);
        let empty = ReducedWord::empty();
        let has_inverse: HashSet<&ReducedWord> = words
            .iter()
            .filter(|w| {
                words
                    .iter()
                    .any(|v| family.mul(w, v) == empty && family.mul(v, w) == empty)
            })
            .collect();
        for w in &words {
            let unit = has_inverse.contains(w);
            rec.check(family.is_unit(w) == unit, || {
                format!("{names:?} word {}: unit predicate disagrees", family.format_word(w))
            });
            let atom = !unit && !reducible.contains(w);
            rec.check(family.is_atom(w) == atom, || {
                format!("{names:?} word {}: atom predicate disagrees", family.format_word(w))
            });
        }
    }
}

/// A random canonical set with threshold and period at most 8.
pub(crate) fn random_epset(rng: &mut ChaCha8Rng) -> EpSet {
    let threshold = rng.gen_range(0..=8);
    let period = rng.gen_range(1..=8);
    let head: Vec<bool> = (0..threshold).map(|_| rng.gen_bool(0.5)).collect();
    let tail: Vec<bool> = (0..period).map(|_| rng.gen_bool(0.5)).collect();
    EpSet::from_fn(threshold, period, |n| {
        if n < threshold {
            head[n]
        } else {
            tail[n % period]
        }
    })
}

/// Sum, union and intersection against pointwise computation on `[0, 60]`.
pub(crate) fn epset_arith(rec: &mut Recorder, opts: &VerifyOptions) {
    const WINDOW: usize = 60;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..500 {
        let a = random_epset(&mut rng);
        let b = random_epset(&mut rng);
        let in_a: Vec<bool> = (0..=WINDOW).map(|n| a.contains(n)).collect();
        let in_b: Vec<bool> = (0..=WINDOW).map(|n| b.contains(n)).collect();
        let sum: Vec<usize> = (0..=WINDOW)
            .filter(|&n| (0..=n).any(|i| in_a[i] && in_b[n - i]))
            .collect();
        let union: Vec<usize> = (0..=WINDOW).filter(|&n| in_a[n] || in_b[n]).collect();
        let meet: Vec<usize> = (0..=WINDOW).filter(|&n| in_a[n] && in_b[n]).collect();
        let got_sum = a.minkowski_sum(&b).elems_up_to(WINDOW);
        rec.check(got_sum == sum, || format!("sum of {a} and {b}: {got_sum:?} vs {sum:?}"));
        let got_union = a.union(&b).elems_up_to(WINDOW);
        rec.check(got_union == union, || format!("union of {a} and {b}"));
        let got_meet = a.intersect(&b).elems_up_to(WINDOW);
        rec.check(got_meet == meet, || format!("intersection of {a} and {b}"));
    }
}
