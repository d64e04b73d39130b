//! Small named monoids used throughout the tests, the CLI and the
//! verification suites, plus a seeded generator of random small monoids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monoid::{generate, Elem, FiniteMonoid};
use crate::univ;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub monoid: FiniteMonoid,
    pub atomic: bool,
}

impl Fixture {
    fn new(name: impl Into<String>, monoid: FiniteMonoid) -> Self {
        let atomic = monoid.is_atomic();
        Self {
            name: name.into(),
            monoid,
            atomic,
        }
    }
}

/// The trivial monoid `{1}`.
pub fn zero() -> FiniteMonoid {
    univ::initial()
}

/// `{1, a, 0}` with `a·a = 0` and `0` absorbing.
pub fn one() -> FiniteMonoid {
    univ::terminal()
}

/// The two-element group `{1, u}`.
pub fn c2() -> FiniteMonoid {
    cyclic_group(2)
}

/// `{1, a, b, 0}` where every product of two non-units is `0`.
pub fn h2() -> FiniteMonoid {
    FiniteMonoid::from_table(
        &["1", "a", "b", "0"],
        &[&[0, 1, 2, 3], &[1, 3, 3, 3], &[2, 3, 3, 3], &[3, 3, 3, 3]],
        0,
    )
    .expect("H2 table is a monoid")
}

/// The monogenic monoid `<g | g^4 = g^3>`.
pub fn m31() -> FiniteMonoid {
    let names = ["1", "g", "g2", "g3"];
    let table: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| (i + j).min(3)).collect())
        .collect();
    FiniteMonoid::new(names.iter().map(|s| s.to_string()).collect(), table, 0)
        .expect("M31 table is a monoid")
}

/// The two-element semilattice `{1, e}` with `e·e = e`; not atomic.
pub fn sl2() -> FiniteMonoid {
    FiniteMonoid::from_table(&["1", "e"], &[&[0, 1], &[1, 1]], 0).expect("SL2 is a monoid")
}

/// The cyclic group of order `n` with elements `1, u, u2, ...`.
pub fn cyclic_group(n: usize) -> FiniteMonoid {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "u".to_string(),
            _ => format!("u{i}"),
        })
        .collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteMonoid::new(names, table, 0).expect("cyclic group table is a monoid")
}

/// The six named fixtures, in a fixed order.
pub fn named() -> Vec<Fixture> {
    vec![
        Fixture::new("zero", zero()),
        Fixture::new("one", one()),
        Fixture::new("c2", c2()),
        Fixture::new("h2", h2()),
        Fixture::new("m31", m31()),
        Fixture::new("sl2", sl2()),
    ]
}

/// Looks up a named fixture (also accepts `c<n>` for cyclic groups).
pub fn by_name(name: &str) -> Option<FiniteMonoid> {
    if let Some(fx) = named().into_iter().find(|f| f.name == name) {
        return Some(fx.monoid);
    }
    let order: usize = name.strip_prefix('c')?.parse().ok()?;
    (order >= 1).then(|| cyclic_group(order))
}

/// A random monoid with at most `max_size` elements, determined by `seed`.
///
/// Three kinds of candidates are drawn, each associative by construction:
/// transformation monoids generated by one or two random self-maps of two
/// or three points, monogenic monoids `<g | g^(i+p) = g^i>`, and quotients
/// of a small nilpotent free monoid by the congruence generated by random
/// pairs. Candidates with more than `max_size` elements are discarded.
pub fn random_monoid(seed: u64, max_size: usize) -> FiniteMonoid {
    assert!(max_size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = match rng.gen_range(0..3) {
            0 => random_transformation_monoid(&mut rng, max_size),
            1 => random_monogenic(&mut rng, max_size),
            _ => Some(random_nilpotent_quotient(&mut rng, max_size)),
        };
        let Some(m) = candidate else { continue };
        let names = (0..m.size())
            .map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") })
            .collect();
        return FiniteMonoid::new(names, m.table_rows(), m.identity().0)
            .expect("relabelling keeps the axioms");
    }
}

fn random_transformation_monoid(rng: &mut ChaCha8Rng, max_size: usize) -> Option<FiniteMonoid> {
    let degree = rng.gen_range(2..=3usize);
    let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
        .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
        .collect();
    let identity: Vec<usize> = (0..degree).collect();
    // right action: first f, then g
    let compose = |f: &Vec<usize>, g: &Vec<usize>| -> Vec<usize> { f.iter().map(|&i| g[i]).collect() };
    generate(identity, &gens, compose, |t| format!("{t:?}"), Some(max_size))
        .ok()
        .map(|(m, _)| m)
}

fn random_monogenic(rng: &mut ChaCha8Rng, max_size: usize) -> Option<FiniteMonoid> {
    let index = rng.gen_range(0..max_size);
    let period = rng.gen_range(1..=max_size - index);
    let n = index + period;
    // element k stands for g^k; exponents at least `index` wrap with `period`
    let reduce = |e: usize| if e < n { e } else { index + (e - index) % period };
    let table = (0..n).map(|i| (0..n).map(|j| reduce(i + j)).collect()).collect();
    let names = (0..n).map(|k| format!("g{k}")).collect();
    FiniteMonoid::new(names, table, 0).ok()
}

fn random_nilpotent_quotient(rng: &mut ChaCha8Rng, max_size: usize) -> FiniteMonoid {
    // words of length < depth over the generators, plus an absorbing zero
    let letters = rng.gen_range(1..=2usize);
    let depth = rng.gen_range(2..=3usize);
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..depth {
        let prev: Vec<Vec<usize>> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for l in 0..letters {
                let mut v = w.clone();
                v.push(l);
                words.push(v);
            }
        }
    }
    let zero = words.len();
    let index_of = |w: &[usize]| words.iter().position(|v| v == w);
    let table: Vec<Vec<usize>> = (0..=zero)
        .map(|i| {
            (0..=zero)
                .map(|j| {
                    if i == zero || j == zero {
                        return zero;
                    }
                    let mut w = words[i].clone();
                    w.extend_from_slice(&words[j]);
                    index_of(&w).unwrap_or(zero)
                })
                .collect()
        })
        .collect();
    let names = (0..=zero).map(|i| format!("w{i}")).collect();
    let mut m = FiniteMonoid::new(names, table, 0).expect("nilpotent truncation is a monoid");
    let mut merges = rng.gen_range(0..=2usize);
    while m.size() > max_size || merges > 0 {
        merges = merges.saturating_sub(1);
        if m.size() == 1 {
            break;
        }
        let x = rng.gen_range(1..m.size());
        let y = rng.gen_range(1..m.size());
        let c = univ::Congruence::closure(&m, [(Elem(x), Elem(y))]);
        m = c.quotient(&m).expect("closure is a congruence").0;
    }
    m
}

/// Named fixtures plus `count` random monoids of size at most five.
pub fn fixture_set(seed: u64, count: usize) -> Vec<Fixture> {
    let mut all = named();
    for k in 0..count as u64 {
        let s = seed.wrapping_add(k);
        all.push(Fixture::new(format!("random-{s}"), random_monoid(s, 5)));
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Property;

    #[test]
    fn named_fixtures_validate() {
        let fx = named();
        let atomic: Vec<(&str, bool)> = fx.iter().map(|f| (f.name.as_str(), f.atomic)).collect();
        assert_eq!(
            atomic,
            vec![
                ("zero", true),
                ("one", true),
                ("c2", true),
                ("h2", true),
                ("m31", true),
                ("sl2", false)
            ]
        );
    }

    #[test]
    fn random_monoids_are_small_and_deterministic() {
        for seed in 0..40 {
            let m = random_monoid(seed, 5);
            assert!(m.size() <= 5);
            assert_eq!(m, random_monoid(seed, 5));
            assert!(m.check_property(Property::DedekindFinite));
        }
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("h2"), Some(h2()));
        assert_eq!(by_name("c3").map(|m| m.size()), Some(3));
        assert_eq!(by_name("nope"), None);
    }
}
