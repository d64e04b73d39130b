use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An eventually periodic subset of the natural numbers.
///
/// `n` belongs to the set iff `n < threshold && head[n]`, or
/// `n >= threshold && tail[n % period]`. Values are always canonical: the
/// period is the least eventual period and the threshold the least one
/// compatible with it, so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpSet {
    head: Vec<bool>,
    period: usize,
    tail: Vec<bool>,
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl EpSet {
    pub fn empty() -> Self {
        Self {
            head: Vec::new(),
            period: 1,
            tail: vec![false],
        }
    }

    pub fn singleton(n: usize) -> Self {
        Self::finite([n])
    }

    pub fn finite(elems: impl IntoIterator<Item = usize>) -> Self {
        let elems: Vec<usize> = elems.into_iter().collect();
        let t = elems.iter().map(|&n| n + 1).max().unwrap_or(0);
        Self::from_fn(t, 1, |n| elems.contains(&n))
    }

    /// `{n : n >= start}`.
    pub fn from_threshold(start: usize) -> Self {
        Self::from_fn(start, 1, |n| n >= start)
    }

    /// `{start, start + step, start + 2·step, ...}`.
    pub fn progression(start: usize, step: usize) -> Self {
        assert!(step > 0);
        Self::from_fn(start, step, |n| n >= start && (n - start).is_multiple_of(step))
    }

    /// Canonical set whose membership is `member(n)` for all `n`, given that
    /// `member` is `period`-periodic from `threshold` on.
    pub fn from_fn(threshold: usize, period: usize, member: impl Fn(usize) -> bool) -> Self {
        assert!(period > 0, "period must be positive");
        // least period: the eventual sequence's minimal period divides `period`
        let mut best = period;
        for d in (1..=period).filter(|&d| period.is_multiple_of(d)) {
            if (threshold..threshold + period).all(|n| member(n) == member(n + d)) {
                best = d;
                break;
            }
        }
        let mut tail = vec![false; best];
        for n in threshold..threshold + best {
            tail[n % best] = member(n);
        }
        let mut t = threshold;
        while t > 0 && member(t - 1) == tail[(t - 1) % best] {
            t -= 1;
        }
        Self {
            head: (0..t).map(&member).collect(),
            period: best,
            tail,
        }
    }

    /// Reads a set from its membership on `[0, bits.len())`, checking the
    /// claimed period from the claimed threshold on.
    pub fn from_window(bits: &[bool], period: usize, threshold: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        let needed = threshold + 2 * period;
        if bits.len() < needed {
            return Err(Error::WindowTooShort {
                window: bits.len(),
                needed,
            });
        }
        for n in threshold..bits.len() - period {
            if bits[n] != bits[n + period] {
                return Err(Error::PeriodViolated(n + period));
            }
        }
        Ok(Self::from_fn(threshold, period, |n| {
            if n < bits.len() {
                bits[n]
            } else {
                bits[threshold + (n - threshold) % period]
            }
        }))
    }

    pub fn threshold(&self) -> usize {
        self.head.len()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn contains(&self, n: usize) -> bool {
        match self.head.get(n) {
            Some(&b) => b,
            None => self.tail[n % self.period],
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.head.iter().any(|b| *b) && !self.tail.iter().any(|b| *b)
    }

    pub fn is_finite(&self) -> bool {
        !self.tail.iter().any(|b| *b)
    }

    pub fn min(&self) -> Option<usize> {
        (0..self.threshold() + self.period).find(|&n| self.contains(n))
    }

    /// Elements below the threshold.
    pub fn head_elems(&self) -> Vec<usize> {
        (0..self.threshold()).filter(|&n| self.head[n]).collect()
    }

    /// Residues `n mod period` that belong to the set from the threshold on.
    pub fn tail_residues(&self) -> Vec<usize> {
        (0..self.period).filter(|&r| self.tail[r]).collect()
    }

    /// First element at or past the threshold, if the set is infinite.
    pub fn tail_start(&self) -> Option<usize> {
        let t = self.threshold();
        (t..t + self.period).find(|&n| self.contains(n))
    }

    /// Offsets `r` with `start + r + k·period` in the set for all `k`, where
    /// `start` is [`EpSet::tail_start`].
    pub fn tail_offsets(&self) -> Vec<usize> {
        let Some(start) = self.tail_start() else {
            return Vec::new();
        };
        (0..self.period)
            .filter(|&r| self.contains(start + r))
            .collect()
    }

    pub fn elems_up_to(&self, bound: usize) -> Vec<usize> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let t = self.threshold().max(other.threshold());
        let p = lcm(self.period, other.period);
        Self::from_fn(t, p, |n| op(self.contains(n), other.contains(n)))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    /// Window length used by [`EpSet::minkowski_sum`]; it covers the
    /// threshold of the sum plus two full periods.
    fn sum_window(&self, other: &Self) -> usize {
        let (pa, pb) = (self.period, other.period);
        self.threshold() + other.threshold() + 4 * lcm(pa, pb) + pa * pb
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    ///
    /// Membership is convolved on a window, the tail is read off with
    /// period `lcm(p_A, p_B)`, and the result is checked against a direct
    /// convolution on a second window of the same length.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let w = self.sum_window(other);
        let p = lcm(self.period, other.period);
        let t = self.threshold() + other.threshold() + 2 * p;
        let bits = convolve(self, other, 0, w);
        let sum = Self::from_window(&bits, p, t).expect("sum is periodic past its threshold bound");
        let check = convolve(self, other, w, 2 * w);
        for (k, &b) in check.iter().enumerate() {
            assert_eq!(
                sum.contains(w + k),
                b,
                "Minkowski sum failed second-window verification at {}",
                w + k
            );
        }
        sum
    }

    /// Sum of a sequence of sets; the empty sum is `{0}`.
    pub fn sum_all<'a>(sets: impl IntoIterator<Item = &'a EpSet>) -> Self {
        sets.into_iter()
            .fold(Self::singleton(0), |acc, s| acc.minkowski_sum(s))
    }

    pub fn to_json(&self) -> EpSetJson {
        EpSetJson {
            head: self.head_elems(),
            threshold: self.threshold(),
            period: self.period,
            tail: self.tail_residues(),
        }
    }
}

/// Membership of `a + b` for `n` in `[from, to)`.
fn convolve(a: &EpSet, b: &EpSet, from: usize, to: usize) -> Vec<bool> {
    let a_bits: Vec<bool> = (0..to).map(|n| a.contains(n)).collect();
    let b_bits: Vec<bool> = (0..to).map(|n| b.contains(n)).collect();
    (from..to)
        .map(|n| (0..=n).any(|x| a_bits[x] && b_bits[n - x]))
        .collect()
}

impl Ord for EpSet {
    /// Lexicographic on membership sequences, with membership sorting first:
    /// `{0} < {1} < {n ≥ 2} < {2}`.
    fn cmp(&self, other: &Self) -> Ordering {
        let bound = self.threshold().max(other.threshold()) + lcm(self.period, other.period);
        for n in 0..bound {
            match (self.contains(n), other.contains(n)) {
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EpSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text form: `{h1,...,hm} ∪ (T + {r1,...} mod p)`, where `T` is the first
/// element of the periodic part and the `r` are offsets from it. Finite sets
/// print as `{...}` alone and sets with empty head as `(T + {...} mod p)`.
impl fmt::Display for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let head = self.head_elems();
        let tail = format!(
            "({} + {{{}}} mod {})",
            self.tail_start().unwrap_or(self.threshold()),
            list(&self.tail_offsets()),
            self.period
        );
        match (head.is_empty(), self.is_finite()) {
            (_, true) => write!(f, "{{{}}}", list(&head)),
            (true, false) => f.write_str(&tail),
            (false, false) => write!(f, "{{{}}} ∪ {}", list(&head), tail),
        }
    }
}

impl fmt::Debug for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpSet({self})")
    }
}

/// JSON form: `{"head": [...], "threshold": T, "period": p, "tail": [...]}`
/// with `tail` listing the residues modulo `p` present from `T` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpSetJson {
    pub head: Vec<usize>,
    pub threshold: usize,
    pub period: usize,
    pub tail: Vec<usize>,
}

impl TryFrom<EpSetJson> for EpSet {
    type Error = Error;

    fn try_from(j: EpSetJson) -> Result<Self> {
        if j.period == 0 {
            return Err(Error::ZeroPeriod);
        }
        let t = j.threshold;
        Ok(EpSet::from_fn(t, j.period, |n| {
            if n < t {
                j.head.contains(&n)
            } else {
                j.tail.contains(&(n % j.period))
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn evens_from_2() -> EpSet {
        EpSet::progression(2, 2)
    }

    #[test]
    fn window_examples() {
        let bits: Vec<bool> = (0..6).map(|n| n >= 2).collect();
        assert_eq!(EpSet::from_window(&bits, 1, 2).unwrap(), EpSet::from_threshold(2));

        let bits: Vec<bool> = (0..6).map(|n| n == 1).collect();
        assert_eq!(EpSet::from_window(&bits, 1, 2).unwrap(), EpSet::singleton(1));

        let bits: Vec<bool> = (0..8).map(|n| n >= 2 && n % 2 == 0).collect();
        let s = EpSet::from_window(&bits, 2, 2).unwrap();
        assert_eq!(s, evens_from_2());
        assert_eq!((s.threshold(), s.period()), (1, 2));

        assert_eq!(
            EpSet::from_window(&bits[..5], 2, 2),
            Err(Error::WindowTooShort { window: 5, needed: 6 })
        );
        let mut broken = bits.clone();
        broken[7] = true;
        assert_eq!(EpSet::from_window(&broken, 2, 2), Err(Error::PeriodViolated(7)));
    }

    #[test]
    fn canonical_form() {
        let e = EpSet::empty();
        assert!(e.is_empty() && e.is_finite());
        assert_eq!(e, EpSet::from_fn(7, 6, |_| false));
        assert_eq!(EpSet::from_threshold(2), EpSet::from_fn(5, 4, |n| n >= 2));
        let s = EpSet::from_fn(9, 6, |n| n >= 2 && n % 2 == 0);
        assert_eq!((s.threshold(), s.period()), (1, 2));
    }

    #[test]
    fn union_and_intersection_examples() {
        let ge2 = EpSet::from_threshold(2);
        assert!(ge2.intersect(&EpSet::singleton(1)).is_empty());
        assert_eq!(ge2.union(&EpSet::singleton(2)), ge2);
        assert_eq!(
            evens_from_2().intersect(&EpSet::from_threshold(3)),
            EpSet::progression(4, 2)
        );
    }

    #[test]
    fn minkowski_examples() {
        let ge2 = EpSet::from_threshold(2);
        assert_eq!(
            EpSet::singleton(1).minkowski_sum(&EpSet::singleton(1)),
            EpSet::singleton(2)
        );
        assert_eq!(EpSet::singleton(0).minkowski_sum(&evens_from_2()), evens_from_2());
        assert_eq!(ge2.minkowski_sum(&ge2), EpSet::from_threshold(4));
        assert!(ge2.minkowski_sum(&EpSet::empty()).is_empty());
        // {0} ∪ 2N+2 plus {0} ∪ 3N+3 is everything except 1
        let a = EpSet::singleton(0).union(&evens_from_2());
        let b = EpSet::singleton(0).union(&EpSet::progression(3, 3));
        assert_eq!(
            a.minkowski_sum(&b),
            EpSet::singleton(0).union(&EpSet::from_threshold(2))
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(EpSet::from_threshold(2).to_string(), "(2 + {0} mod 1)");
        assert_eq!(EpSet::singleton(0).to_string(), "{0}");
        assert_eq!(EpSet::empty().to_string(), "{}");
        assert_eq!(EpSet::progression(3, 2).to_string(), "(3 + {0} mod 2)");
        let mixed = EpSet::singleton(0).union(&EpSet::progression(3, 2));
        assert_eq!(mixed.to_string(), "{0} ∪ (3 + {0} mod 2)");
    }

    #[test]
    fn json_round_trip() {
        let s = EpSet::singleton(0).union(&EpSet::progression(3, 2));
        let j = s.to_json();
        assert_eq!(
            j,
            EpSetJson {
                head: vec![0],
                threshold: 2,
                period: 2,
                tail: vec![1]
            }
        );
        assert_eq!(EpSet::try_from(j).unwrap(), s);
    }

    #[test]
    fn ordering() {
        let mut v = vec![
            EpSet::from_threshold(2),
            EpSet::singleton(1),
            EpSet::singleton(0),
            EpSet::singleton(2),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                EpSet::singleton(0),
                EpSet::singleton(1),
                EpSet::from_threshold(2),
                EpSet::singleton(2)
            ]
        );
    }

    pub(crate) fn arb_epset() -> impl Strategy<Value = EpSet> {
        (0usize..=8, 1usize..=8, proptest::collection::vec(any::<bool>(), 16)).prop_map(
            |(t, p, bits)| EpSet::from_fn(t, p, |n| if n < t { bits[n] } else { bits[8 + n % p] }),
        )
    }

    proptest! {
        #[test]
        fn sum_matches_window_convolution(a in arb_epset(), b in arb_epset()) {
            let s = a.minkowski_sum(&b);
            for n in 0..=60 {
                let direct = (0..=n).any(|x| a.contains(x) && b.contains(n - x));
                prop_assert_eq!(s.contains(n), direct, "n = {}", n);
            }
        }

        #[test]
        fn operations_are_commutative(a in arb_epset(), b in arb_epset()) {
            prop_assert_eq!(a.minkowski_sum(&b), b.minkowski_sum(&a));
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        }

        #[test]
        fn sum_is_associative(a in arb_epset(), b in arb_epset(), c in arb_epset()) {
            prop_assert_eq!(
                a.minkowski_sum(&b).minkowski_sum(&c),
                a.minkowski_sum(&b.minkowski_sum(&c))
            );
        }

        #[test]
        fn identities(a in arb_epset()) {
            prop_assert!(a.minkowski_sum(&EpSet::empty()).is_empty());
            prop_assert_eq!(a.union(&EpSet::empty()), a.clone());
            prop_assert_eq!(a.minkowski_sum(&EpSet::singleton(0)), a.clone());
        }

        #[test]
        fn structural_equality_is_extensional(a in arb_epset(), b in arb_epset()) {
            let bound = a.threshold().max(b.threshold()) + lcm(a.period(), b.period());
            let same = (0..bound).all(|n| a.contains(n) == b.contains(n));
            prop_assert_eq!(same, a == b);
        }
    }
}
