use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{fx, multisets, small_atomic, Recorder, VerifyOptions};
use crate::atomprod;
use crate::fixtures;
use crate::freeprod::{Family, ReducedWord};
use crate::monoid::{
    canonical_to_terminal, enumerate_homs, Elem, FiniteMonoid, MonoidHom, EXHAUSTIVE_SOURCE_CAP,
};
use crate::univ::{self, is_compatible_partition, PushoutAnswer};

type Obj = Arc<FiniteMonoid>;

/// Atom-preserving homomorphisms between small fixtures, memoized by
/// fixture names.
struct HomCache {
    objects: Vec<(&'static str, Obj)>,
    homs: HashMap<(usize, usize), Vec<MonoidHom>>,
}

impl HomCache {
    fn new(objects: Vec<(&'static str, Obj)>) -> Self {
        Self {
            objects,
            homs: HashMap::new(),
        }
    }

    fn get(&mut self, s: usize, t: usize) -> &[MonoidHom] {
        let objects = &self.objects;
        self.homs.entry((s, t)).or_insert_with(|| {
            enumerate_homs(&objects[s].1, &objects[t].1, true, EXHAUSTIVE_SOURCE_CAP)
                .expect("small sources")
        })
    }
}

fn same_map(a: &MonoidHom, b: &MonoidHom) -> bool {
    a.map() == b.map()
}

fn compose(outer: &MonoidHom, inner: &MonoidHom) -> MonoidHom {
    outer.compose(inner).expect("composable")
}

/// Existence and uniqueness of factorizations through equalizers,
/// pullbacks, coproducts and products, for every cone or cocone with apex
/// among the small fixtures.
pub(crate) fn universal(rec: &mut Recorder, _opts: &VerifyOptions) {
    let mut cache = HomCache::new(small_atomic());
    equalizers(rec, &mut cache);
    pullbacks(rec, &mut cache);
    coproducts(rec, &mut cache);
    products(rec, &mut cache);
}

fn equalizers(rec: &mut Recorder, cache: &mut HomCache) {
    let n = cache.objects.len();
    for h in 0..n {
        for k in 0..n {
            let parallel = cache.get(h, k).to_vec();
            for (fi, f) in parallel.iter().enumerate() {
                for g in &parallel[fi..] {
                    let eq = match univ::equalizer(f, g) {
                        Ok(e) => e,
                        Err(e) => {
                            rec.fail(format!("equalizer {h}->{k}: {e}"));
                            continue;
                        }
                    };
                    let e = &eq.inclusion;
                    rec.check(compose(f, e) == compose(g, e), || {
                        format!("equalizer of {:?}, {:?} does not equalize", f.map(), g.map())
                    });
                    for w in 0..n {
                        let apex = cache.objects[w].1.clone();
                        let factorizations =
                            enumerate_homs(&apex, &eq.monoid, true, EXHAUSTIVE_SOURCE_CAP)
                                .expect("small apex");
                        for alpha in cache.get(w, h).to_vec() {
                            if compose(f, &alpha) != compose(g, &alpha) {
                                continue;
                            }
                            let count = factorizations
                                .iter()
                                .filter(|b| same_map(&compose(e, b), &alpha))
                                .count();
                            rec.check(count == 1, || {
                                format!(
                                    "equalizer of {:?}, {:?}: cone {:?} from {} factors {count} ways",
                                    f.map(),
                                    g.map(),
                                    alpha.map(),
                                    cache.objects[w].0
                                )
                            });
                        }
                    }
                }
            }
        }
    }
}

fn pullbacks(rec: &mut Recorder, cache: &mut HomCache) {
    let n = cache.objects.len();
    for l in 0..n {
        for h in 0..n {
            for k in h..n {
                let fs = cache.get(h, l).to_vec();
                let gs = cache.get(k, l).to_vec();
                for f in &fs {
                    for g in &gs {
                        let pb = match univ::pullback(f, g) {
                            Ok(p) => p,
                            Err(e) => {
                                rec.fail(format!("pullback over {l}: {e}"));
                                continue;
                            }
                        };
                        rec.check(compose(f, &pb.p1) == compose(g, &pb.p2), || {
                            format!("pullback square of {:?}, {:?} does not commute", f.map(), g.map())
                        });
                        for w in 0..n {
                            let apex = cache.objects[w].1.clone();
                            let gammas =
                                enumerate_homs(&apex, &pb.monoid, true, EXHAUSTIVE_SOURCE_CAP)
                                    .expect("small apex");
                            let alphas = cache.get(w, h).to_vec();
                            let betas = cache.get(w, k).to_vec();
                            for alpha in &alphas {
                                for beta in &betas {
                                    if !same_map(&compose(f, alpha), &compose(g, beta)) {
                                        continue;
                                    }
                                    let count = gammas
                                        .iter()
                                        .filter(|c| {
                                            same_map(&compose(&pb.p1, c), alpha)
                                                && same_map(&compose(&pb.p2, c), beta)
                                        })
                                        .count();
                                    rec.check(count == 1, || {
                                        format!(
                                            "pullback of {:?}, {:?}: cone ({:?}, {:?}) factors {count} ways",
                                            f.map(),
                                            g.map(),
                                            alpha.map(),
                                            beta.map()
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// All combinations picking one element from each list.
fn choices<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<T>| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn coproducts(rec: &mut Recorder, cache: &mut HomCache) {
    let n = cache.objects.len();
    for ix in multisets(n, 2) {
        let family = Family::new(ix.iter().map(|&i| cache.objects[i].1.clone()))
            .expect("atomic fixtures");
        let words = family.reduced_words(2);
        let atoms = family.atoms_up_to(3);
        for t in 0..n {
            let lists: Vec<Vec<MonoidHom>> = ix.iter().map(|&i| cache.get(i, t).to_vec()).collect();
            for cocone in choices(&lists) {
                let target = cache.objects[t].1.clone();
                let sigma = |w: &ReducedWord| family.couniversal(&cocone, w).expect("valid cocone");
                let tag = || {
                    let maps: Vec<Vec<usize>> = cocone.iter().map(|h| h.map_indices()).collect();
                    format!("coproduct {ix:?} -> {}, cocone {maps:?}", cache.objects[t].0)
                };
                for (i, phi) in cocone.iter().enumerate() {
                    for x in family.member(i).elems() {
                        let e = family.coprojection(i, x).expect("valid letter");
                        rec.check(sigma(&e) == phi.apply(x), || {
                            format!("{}: triangle fails at member {i}", tag())
                        });
                    }
                }
                for x in &words {
                    for y in &words {
                        let ok = sigma(&family.mul(x, y)) == target.mul(sigma(x), sigma(y));
                        rec.check(ok, || format!("{}: not multiplicative", tag()));
                    }
                    // uniqueness: a word is the product of its coprojected letters
                    let forced = x.letters().iter().fold(target.identity(), |acc, l| {
                        target.mul(acc, cocone[l.index].apply(l.elem))
                    });
                    rec.check(sigma(x) == forced, || format!("{}: not forced by letters", tag()));
                }
                for a in &atoms {
                    rec.check(target.is_atom(sigma(a)), || {
                        format!("{}: atom {} not sent to an atom", tag(), family.format_word(a))
                    });
                }
            }
        }
    }
}

fn products(rec: &mut Recorder, cache: &mut HomCache) {
    let n = cache.objects.len();
    for ix in multisets(n, 2) {
        let family = Family::new(ix.iter().map(|&i| cache.objects[i].1.clone()))
            .expect("atomic fixtures");
        let p = match atomprod::materialize(&family, 60) {
            Ok(p) => p,
            Err(_) => {
                rec.skip();
                continue;
            }
        };
        for w in 0..n {
            let apex = cache.objects[w].1.clone();
            let gammas =
                enumerate_homs(&apex, &p.monoid, true, EXHAUSTIVE_SOURCE_CAP).expect("small apex");
            let lists: Vec<Vec<MonoidHom>> = ix.iter().map(|&i| cache.get(w, i).to_vec()).collect();
            for cone in choices(&lists) {
                let tag = || {
                    let maps: Vec<Vec<usize>> = cone.iter().map(|h| h.map_indices()).collect();
                    format!("product {ix:?} from {}, cone {maps:?}", cache.objects[w].0)
                };
                let mut sigma = Vec::new();
                for x in apex.elems() {
                    match atomprod::universal(&family, &cone, x) {
                        Ok(t) => match p.elem_of(&t) {
                            Some(e) => sigma.push(e),
                            None => {
                                rec.fail(format!("{}: image {} outside the product", tag(), t.display(&family)));
                                break;
                            }
                        },
                        Err(e) => {
                            rec.fail(format!("{}: {e}", tag()));
                            break;
                        }
                    }
                }
                if sigma.len() != apex.size() {
                    continue;
                }
                let factoring: Vec<&MonoidHom> = gammas
                    .iter()
                    .filter(|c| {
                        p.projections
                            .iter()
                            .zip(&cone)
                            .all(|(pi, phi)| same_map(&compose(pi, c), phi))
                    })
                    .collect();
                rec.check(factoring.len() == 1, || {
                    format!("{}: factors {} ways", tag(), factoring.len())
                });
                if let Some(c) = factoring.first() {
                    rec.check(c.map() == sigma.as_slice(), || {
                        format!("{}: factorization differs from the induced map", tag())
                    });
                }
            }
        }
    }
}

/// All partitions of `0..n` as canonical class ids (smallest member).
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        let mut reps: Vec<usize> = current.clone();
        reps.sort_unstable();
        reps.dedup();
        for r in reps {
            current.push(r);
            go(i + 1, n, current, out);
            current.pop();
        }
        current.push(i);
        go(i + 1, n, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Coequalizers of random parallel pairs: atomic quotient, class-preserving
/// projection, and the computed congruence equal to the least congruence
/// containing the seeds among all partitions.
pub(crate) fn coequalizer(rec: &mut Recorder, opts: &VerifyOptions) {
    let mut objects: Vec<(String, Obj)> = small_atomic()
        .into_iter()
        .map(|(n, m)| (n.to_string(), m))
        .collect();
    for f in fixtures::fixture_set(opts.seed, 20) {
        if f.atomic && f.name.starts_with("random") {
            objects.push((f.name, Arc::new(f.monoid)));
        }
    }
    let mut spans: Vec<(usize, usize, Vec<MonoidHom>)> = Vec::new();
    for (s, (_, src)) in objects.iter().enumerate() {
        for (t, (_, tgt)) in objects.iter().enumerate() {
            if tgt.size() > 5 {
                continue;
            }
            let homs = enumerate_homs(src, tgt, true, EXHAUSTIVE_SOURCE_CAP).expect("small sources");
            if homs.len() >= 2 {
                spans.push((s, t, homs));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut partition_cache: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for _ in 0..50 {
        let (s, t, homs) = spans.choose(&mut rng).expect("some span has two homs");
        let f = homs.choose(&mut rng).expect("non-empty");
        let g = homs.choose(&mut rng).expect("non-empty");
        let tag = format!(
            "{} -> {} with f={:?}, g={:?}",
            objects[*s].0,
            objects[*t].0,
            f.map_indices(),
            g.map_indices()
        );
        let q = match univ::coequalizer(f, g) {
            Ok(q) => q,
            Err(e) => {
                rec.fail(format!("{tag}: {e}"));
                continue;
            }
        };
        let k = f.target();
        rec.check(q.monoid.is_atomic(), || format!("{tag}: quotient not atomic"));
        rec.check(compose(&q.projection, f) == compose(&q.projection, g), || {
            format!("{tag}: projection does not coequalize")
        });
        for x in k.elems() {
            let y = q.projection.apply(x);
            rec.check(k.classify(x) == q.monoid.classify(y), || {
                format!("{tag}: class of {} not preserved", k.name(x))
            });
        }
        let seeds: Vec<(Elem, Elem)> = f.source().elems().map(|x| (f.apply(x), g.apply(x))).collect();
        let all = partition_cache
            .entry(k.size())
            .or_insert_with(|| partitions(k.size()));
        let congruences: Vec<&Vec<usize>> = all
            .iter()
            .filter(|p| seeds.iter().all(|(a, b)| p[a.0] == p[b.0]))
            .filter(|p| is_compatible_partition(k, p))
            .collect();
        // the least congruence relates x and y iff every candidate does
        let least: Vec<usize> = (0..k.size())
            .map(|x| {
                (0..=x)
                    .find(|&y| congruences.iter().all(|p| p[x] == p[y]))
                    .expect("x relates to itself")
            })
            .collect();
        let computed = q.congruence.class_of();
        rec.check(computed == least, || {
            format!("{tag}: congruence {computed:?}, least compatible {least:?}")
        });
        rec.check(congruences.contains(&&computed), || {
            format!("{tag}: computed partition is not a congruence containing the seeds")
        });
    }
}

/// Exactly one atom-preserving map from each atomic fixture into the
/// terminal monoid, equal to the canonical one.
pub(crate) fn terminal(rec: &mut Recorder, opts: &VerifyOptions) {
    let terminal: Obj = Arc::new(univ::terminal());
    for f in fixtures::fixture_set(opts.seed, 20) {
        let m: Obj = Arc::new(f.monoid);
        if !f.atomic {
            rec.check(canonical_to_terminal(m.clone()).is_err(), || {
                format!("{}: non-atomic fixture has a canonical map", f.name)
            });
            continue;
        }
        let homs = enumerate_homs(&m, &terminal, true, EXHAUSTIVE_SOURCE_CAP).expect("small fixtures");
        rec.check(homs.len() == 1, || format!("{}: {} maps into the terminal monoid", f.name, homs.len()));
        match canonical_to_terminal(m.clone()) {
            Ok(c) => rec.check(homs.first() == Some(&c), || {
                format!("{}: canonical map differs from the enumerated one", f.name)
            }),
            Err(e) => rec.fail(format!("{}: {e}", f.name)),
        }
    }
}

/// Bounded pushout equality: the fixed examples, symmetry, monotonicity in
/// the depth, and soundness against every compatible cocone into a small
/// fixture (words declared equal must have equal images).
pub(crate) fn pushout(rec: &mut Recorder, _opts: &VerifyOptions) {
    const DEPTH: usize = 2;
    let mut cache = HomCache::new(small_atomic());
    let n = cache.objects.len();
    let names: Vec<&str> = cache.objects.iter().map(|o| o.0).collect();
    let index = |name: &str| names.iter().position(|&x| x == name).expect("known");
    let spans = [
        ("zero", "one", "one"),
        ("one", "one", "one"),
        ("one", "one", "h2"),
        ("c2", "c2", "c2"),
        ("zero", "c2", "h2"),
        ("one", "h2", "m31"),
    ];
    for (l, h, k) in spans {
        let (l, h, k) = (index(l), index(h), index(k));
        let fs = cache.get(l, h).to_vec();
        let gs = cache.get(l, k).to_vec();
        for f in &fs {
            for g in &gs {
                let p = match univ::pushout_presentation(f, g) {
                    Ok(p) => p,
                    Err(e) => {
                        rec.fail(format!("span {l}->{h},{k}: {e}"));
                        continue;
                    }
                };
                let family = p.family();
                let words = family.reduced_words(2);
                let cocones: Vec<(MonoidHom, MonoidHom)> = (0..n)
                    .flat_map(|t| {
                        let a = cache.get(h, t).to_vec();
                        let b = cache.get(k, t).to_vec();
                        a.into_iter()
                            .flat_map(move |x| b.clone().into_iter().map(move |y| (x.clone(), y)))
                            .collect::<Vec<_>>()
                    })
                    .filter(|(x, y)| compose(x, f) == compose(y, g))
                    .collect();
                let balls: Vec<Vec<std::collections::HashSet<ReducedWord>>> = words
                    .iter()
                    .map(|w| (0..=DEPTH).map(|d| p.ball(w, d)).collect())
                    .collect();
                for (i, w1) in words.iter().enumerate() {
                    for (j, w2) in words.iter().enumerate().skip(i) {
                        let mut previous = false;
                        for (d, (ball1, ball2)) in balls[i].iter().zip(&balls[j]).enumerate() {
                            let fwd = univ::pushout_eq_bounded(&p, w1, w2, d);
                            let bwd = univ::pushout_eq_bounded(&p, w2, w1, d);
                            let tag = || {
                                format!(
                                    "span {}->{},{}: {} vs {} at depth {d}",
                                    names[l],
                                    names[h],
                                    names[k],
                                    family.format_word(w1),
                                    family.format_word(w2)
                                )
                            };
                            rec.check(fwd == bwd, || format!("{}: not symmetric", tag()));
                            let equal = fwd == PushoutAnswer::Equal;
                            let expected = ball1.contains(w2) || ball2.contains(w1);
                            rec.check(equal == expected, || format!("{}: ball disagreement", tag()));
                            rec.check(!previous || equal, || format!("{}: not monotone", tag()));
                            previous = equal;
                        }
                        if previous {
                            for (x, y) in &cocones {
                                let homs = [x.clone(), y.clone()];
                                let a = family.couniversal(&homs, w1).expect("valid cocone");
                                let b = family.couniversal(&homs, w2).expect("valid cocone");
                                rec.check(a == b, || {
                                    format!(
                                        "{} and {} declared equal but separated by a cocone",
                                        family.format_word(w1),
                                        family.format_word(w2)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    pushout_examples(rec);
}

fn pushout_examples(rec: &mut Recorder) {
    let one = fx("one");
    let id = MonoidHom::identity(one.clone());
    let p = univ::pushout_presentation(&id, &id).expect("valid span");
    let word = |p: &univ::PushoutPresentation, text: &str| {
        let f = p.family();
        f.reduce(&f.parse_word(text).expect("valid word")).expect("valid letters")
    };
    let (a1, a2) = (word(&p, "(a@1)"), word(&p, "(a@2)"));
    rec.check(univ::pushout_eq_bounded(&p, &a1, &a2, 1) == PushoutAnswer::Equal, || {
        "identity span: (a@1) and (a@2) not identified at depth 1".into()
    });
    rec.check(p.relations().len() == 3, || "identity span: wrong relation count".into());

    let zero = fx("zero");
    let z = MonoidHom::new(zero, one.clone(), vec![0]).expect("trivial map");
    let p = univ::pushout_presentation(&z, &z).expect("valid span");
    let (a1, a2) = (word(&p, "(a@1)"), word(&p, "(a@2)"));
    rec.check(univ::pushout_eq_bounded(&p, &a1, &a2, 5) == PushoutAnswer::Unknown, || {
        "free product: (a@1) and (a@2) identified".into()
    });
}
