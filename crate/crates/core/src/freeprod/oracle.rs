use std::collections::{BTreeSet, HashSet};

use super::{Family, Letter, ReducedWord};
use crate::error::{Error, Result};

/// Bounded enumeration of atomic factorizations in a coproduct.
///
/// Candidate atoms are `U*(a,i)*V` with `a` an atom of member `i` and `U`,
/// `V` reduced unit words of length at most `unit_depth`. Level `j` holds
/// every reduced word that is a product of `j` candidates and whose partial
/// products all have length at most `max_len`. A word of length at most
/// `max_len - unit_depth` has length `k` in its length set iff it lies in
/// level `k`, up to the decoration and length bounds of the search.
#[derive(Debug, Clone)]
pub struct FactorizationOracle {
    levels: Vec<HashSet<ReducedWord>>,
    candidates: usize,
}

impl FactorizationOracle {
    /// Builds levels `0..=max_factors`, failing once more than `budget`
    /// words have been stored in total.
    pub fn new(
        family: &Family,
        max_factors: usize,
        max_len: usize,
        unit_depth: usize,
        budget: usize,
    ) -> Result<Self> {
        let units = unit_words(family, unit_depth);
        let mut candidates = BTreeSet::new();
        for i in 0..family.len() {
            for a in family.member(i).atoms().iter() {
                let atom = family.reduce_unchecked(&[Letter::new(i, a)]);
                for u in &units {
                    let ua = family.mul(u, &atom);
                    for v in &units {
                        candidates.insert(family.mul(&ua, v));
                    }
                }
            }
        }
        let candidates: Vec<ReducedWord> = candidates.into_iter().collect();
        let mut levels = vec![HashSet::from([ReducedWord::empty()])];
        let mut stored = 1;
        for _ in 0..max_factors {
            let mut next = HashSet::new();
            for w in levels.last().expect("level 0 exists") {
                for c in &candidates {
                    let p = family.mul(w, c);
                    if p.len() <= max_len && next.insert(p) {
                        stored += 1;
                        if stored > budget {
                            return Err(Error::SearchBudgetExceeded(budget));
                        }
                    }
                }
            }
            levels.push(next);
        }
        Ok(Self {
            levels,
            candidates: candidates.len(),
        })
    }

    /// Number of candidate atoms used by the search.
    pub fn candidate_count(&self) -> usize {
        self.candidates
    }

    /// Largest factorization length searched.
    pub fn max_factors(&self) -> usize {
        self.levels.len() - 1
    }

    /// `{k <= bound : w is a product of k atoms}`, with `bound` capped at
    /// the number of levels built.
    pub fn lengths(&self, w: &ReducedWord, bound: usize) -> BTreeSet<usize> {
        (0..=bound.min(self.max_factors()))
            .filter(|&k| self.levels[k].contains(w))
            .collect()
    }
}

/// Reduced words of length at most `depth` all of whose letters are units.
fn unit_words(family: &Family, depth: usize) -> Vec<ReducedWord> {
    let letters: Vec<Letter> = (0..family.len())
        .flat_map(|i| {
            let m = family.member(i);
            m.units()
                .iter()
                .filter(move |&u| u != m.identity())
                .map(move |u| Letter::new(i, u))
        })
        .collect();
    let mut out = vec![ReducedWord::empty()];
    let mut layer = vec![ReducedWord::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters.last().is_some_and(|t| t.index == l.index) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(ReducedWord { letters });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `{k <= bound : w is a product of k atoms}` for a single word, with unit
/// decorations of length at most two and partial products at most two
/// letters longer than `w`.
pub fn brute_force_lengths(
    family: &Family,
    w: &ReducedWord,
    bound: usize,
    budget: usize,
) -> Result<BTreeSet<usize>> {
    let oracle = FactorizationOracle::new(family, bound, w.len() + 2, 2, budget)?;
    Ok(oracle.lengths(w, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn oracle_examples() {
        let oo = Family::new(vec![fixtures::one(), fixtures::one()]).unwrap();
        let zero = oo.reduce(&oo.parse_word("(0@1)").unwrap()).unwrap();
        assert_eq!(
            brute_force_lengths(&oo, &zero, 5, 1_000_000).unwrap(),
            BTreeSet::from([2, 3, 4, 5])
        );
        let a = oo.reduce(&oo.parse_word("(a@1)").unwrap()).unwrap();
        assert_eq!(
            brute_force_lengths(&oo, &a, 5, 1_000_000).unwrap(),
            BTreeSet::from([1])
        );
        assert_eq!(
            brute_force_lengths(&oo, &ReducedWord::empty(), 5, 1_000_000).unwrap(),
            BTreeSet::from([0])
        );
    }

    #[test]
    fn decorated_candidates() {
        let oc = Family::new(vec![fixtures::one(), fixtures::c2()]).unwrap();
        let oracle = FactorizationOracle::new(&oc, 3, 5, 2, 1_000_000).unwrap();
        // a, u*a, a*u, u*a*u
        assert_eq!(oracle.candidate_count(), 4);
        let w = oc
            .reduce(&oc.parse_word("(a@1)*(u@2)*(a@1)").unwrap())
            .unwrap();
        assert_eq!(oracle.lengths(&w, 3), BTreeSet::from([2]));
    }

    #[test]
    fn budget_is_enforced() {
        let f = Family::new(vec![fixtures::h2(), fixtures::m31()]).unwrap();
        assert_eq!(
            FactorizationOracle::new(&f, 6, 5, 2, 10).unwrap_err(),
            Error::SearchBudgetExceeded(10)
        );
    }
}
