use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::freeprod::{Family, Letter, RawWord, ReducedWord};
use crate::monoid::{Elem, MonoidHom};

/// Largest number of words explored from one side of a pushout query.
pub const PUSHOUT_BALL_CAP: usize = 100_000;

/// The pushout of `f: L -> H` and `g: L -> K` as the coproduct of `H` and
/// `K` modulo the relations `e_H(f(l)) = e_K(g(l))`, one per `l`.
#[derive(Debug, Clone)]
pub struct PushoutPresentation {
    family: Family,
    relations: Vec<(ReducedWord, ReducedWord)>,
}

/// Answer of the bounded word-equality search. Distinct classes are never
/// certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushoutAnswer {
    Equal,
    Unknown,
}

pub fn pushout_presentation(f: &MonoidHom, g: &MonoidHom) -> Result<PushoutPresentation> {
    if **f.source() != **g.source() {
        return Err(Error::SourceMismatch);
    }
    for (i, h) in [f, g].into_iter().enumerate() {
        if !h.is_atom_preserving() {
            return Err(Error::NotAtomPreserving(i));
        }
    }
    let family = Family::new([f.target().clone(), g.target().clone()])?;
    let relations = f
        .source()
        .elems()
        .map(|l| {
            let left = family.coprojection(0, f.apply(l))?;
            let right = family.coprojection(1, g.apply(l))?;
            Ok((left, right))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PushoutPresentation { family, relations })
}

impl PushoutPresentation {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn relations(&self) -> &[(ReducedWord, ReducedWord)] {
        &self.relations
    }

    fn splice(&self, w: &ReducedWord, from: usize, to: usize, mid: &[Letter]) -> ReducedWord {
        let mut letters = w.letters()[..from].to_vec();
        letters.extend_from_slice(mid);
        letters.extend_from_slice(&w.letters()[to..]);
        self.family
            .reduce(&RawWord::new(letters))
            .expect("letters come from the family")
    }

    /// Words reachable by one application of a relation, in either
    /// direction. An occurrence of a one-letter side `(x,i)` is either a
    /// factorization `l·x·r` of a letter `(y,i)` of the word, or a factor
    /// `l·x·r = 1` inserted at a gap.
    fn neighbours(&self, w: &ReducedWord) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        for (lhs, rhs) in &self.relations {
            for (s, t) in [(lhs, rhs), (rhs, lhs)] {
                if s == t {
                    continue;
                }
                match s.letters() {
                    [] => {
                        for gap in 0..=w.len() {
                            out.push(self.splice(w, gap, gap, t.letters()));
                        }
                    }
                    [x] => {
                        let m = self.family.member(x.index);
                        let wrap = |l: Elem, r: Elem| {
                            let mut mid = vec![Letter::new(x.index, l)];
                            mid.extend_from_slice(t.letters());
                            mid.push(Letter::new(x.index, r));
                            mid
                        };
                        for l in m.elems() {
                            let lx = m.mul(l, x.elem);
                            for r in m.elems() {
                                let lxr = m.mul(lx, r);
                                for (p, y) in w.letters().iter().enumerate() {
                                    if y.index == x.index && y.elem == lxr {
                                        out.push(self.splice(w, p, p + 1, &wrap(l, r)));
                                    }
                                }
                                if lxr == m.identity() {
                                    for gap in 0..=w.len() {
                                        out.push(self.splice(w, gap, gap, &wrap(l, r)));
                                    }
                                }
                            }
                        }
                    }
                    _ => unreachable!("relation sides are single letters"),
                }
            }
        }
        out
    }

    /// Words reachable from `w` by at most `depth` rewrites; the search
    /// stops early once [`PUSHOUT_BALL_CAP`] words are known.
    pub fn ball(&self, w: &ReducedWord, depth: usize) -> HashSet<ReducedWord> {
        let mut seen = HashSet::from([w.clone()]);
        let mut frontier = vec![w.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for v in &frontier {
                for n in self.neighbours(v) {
                    if seen.len() >= PUSHOUT_BALL_CAP {
                        return seen;
                    }
                    if seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }
}

/// `Equal` if either word reaches the other within `depth` rewrites.
pub fn pushout_eq_bounded(
    p: &PushoutPresentation,
    w1: &ReducedWord,
    w2: &ReducedWord,
    depth: usize,
) -> PushoutAnswer {
    if w1 == w2 || p.ball(w1, depth).contains(w2) || p.ball(w2, depth).contains(w1) {
        PushoutAnswer::Equal
    } else {
        PushoutAnswer::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::FiniteMonoid;
    use std::sync::Arc;

    fn id(m: FiniteMonoid) -> MonoidHom {
        MonoidHom::identity(m)
    }

    fn word(p: &PushoutPresentation, text: &str) -> ReducedWord {
        let f = p.family();
        f.reduce(&f.parse_word(text).unwrap()).unwrap()
    }

    #[test]
    fn presentation_of_terminal_span() {
        let p = pushout_presentation(&id(fixtures::one()), &id(fixtures::one())).unwrap();
        let shown: Vec<(String, String)> = p
            .relations()
            .iter()
            .map(|(l, r)| (p.family().format_word(l), p.family().format_word(r)))
            .collect();
        assert_eq!(
            shown,
            vec![
                ("eps".to_string(), "eps".to_string()),
                ("(a@1)".to_string(), "(a@2)".to_string()),
                ("(0@1)".to_string(), "(0@2)".to_string()),
            ]
        );
        let a1 = word(&p, "(a@1)");
        let a2 = word(&p, "(a@2)");
        assert_eq!(pushout_eq_bounded(&p, &a1, &a2, 1), PushoutAnswer::Equal);
        assert_eq!(pushout_eq_bounded(&p, &a1, &a1, 0), PushoutAnswer::Equal);
        let a1a2 = word(&p, "(a@1)*(a@2)");
        let zero = word(&p, "(0@1)");
        assert_eq!(pushout_eq_bounded(&p, &a1a2, &zero, 1), PushoutAnswer::Equal);
    }

    #[test]
    fn initial_span_is_the_free_product() {
        let zero: Arc<FiniteMonoid> = Arc::new(fixtures::zero());
        let one: Arc<FiniteMonoid> = Arc::new(fixtures::one());
        let f = MonoidHom::new(zero.clone(), one.clone(), vec![0]).unwrap();
        let p = pushout_presentation(&f, &f).unwrap();
        assert_eq!(p.relations().len(), 1);
        let a1 = word(&p, "(a@1)");
        let a2 = word(&p, "(a@2)");
        assert_eq!(pushout_eq_bounded(&p, &a1, &a2, 5), PushoutAnswer::Unknown);
    }

    #[test]
    fn relations_into_h2() {
        let one: Arc<FiniteMonoid> = Arc::new(fixtures::one());
        let h2: Arc<FiniteMonoid> = Arc::new(fixtures::h2());
        let g = MonoidHom::new(one.clone(), h2, vec![0, 1, 3]).unwrap();
        let p = pushout_presentation(&MonoidHom::identity(one), &g).unwrap();
        let pair = (word(&p, "(a@1)"), word(&p, "(a@2)"));
        assert!(p.relations().contains(&pair));
    }

    #[test]
    fn unit_relations_insert_at_gaps() {
        // C2 -> C2 twice: u@1 = u@2, so u@1*u@2 = u@2*u@2 = 1
        let p = pushout_presentation(&id(fixtures::c2()), &id(fixtures::c2())).unwrap();
        let uu = word(&p, "(u@1)*(u@2)");
        assert_eq!(
            pushout_eq_bounded(&p, &uu, &ReducedWord::empty(), 1),
            PushoutAnswer::Equal
        );
    }

    #[test]
    fn guards() {
        let f = id(fixtures::one());
        let g = id(fixtures::h2());
        assert_eq!(pushout_presentation(&f, &g).unwrap_err(), Error::SourceMismatch);
    }
}
