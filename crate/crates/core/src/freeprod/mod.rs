//! The coproduct of a finite family of finite atomic monoids.
//!
//! Elements are congruence classes of words over the disjoint union of the
//! members, represented by their reduced forms: no identity letters and no
//! two adjacent letters from the same member. Family indices are 0-based in
//! the API and 1-based in the textual word syntax `(name@i)*(name@j)`.

mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

pub use oracle::{brute_force_lengths, FactorizationOracle};

use crate::error::{Error, Result};
use crate::lenset::{self, EpSet, LengthSystem};
use crate::monoid::{Elem, FiniteMonoid, MonoidHom, Property};

/// A letter `(elem, index)` of the alphabet, the disjoint union of the
/// members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub elem: Elem,
}

impl Letter {
    pub fn new(index: usize, elem: Elem) -> Self {
        Self { index, elem }
    }
}

/// An arbitrary word over the alphabet; identity letters and equal adjacent
/// indices are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RawWord {
    pub letters: Vec<Letter>,
}

impl RawWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }
}

/// The normal form of a coproduct element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    /// The empty word, the identity of the coproduct.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_raw(&self) -> RawWord {
        RawWord::new(self.letters.clone())
    }
}

/// A maximal run of letters of one member whose product is not the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBlock {
    pub index: usize,
    pub letters: Vec<Elem>,
    pub product: Elem,
}

/// Decomposition of a word into blocks with pairwise distinct adjacent
/// indices, none congruent to the empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBlockDecomposition {
    pub blocks: Vec<IndexBlock>,
}

/// Which index words are admissible in the system-of-length-sets formula,
/// decided by how many members have a non-trivial unit group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaCase {
    /// At least two members have non-trivial units: every index word.
    AllWords,
    /// Only the member with this index has non-trivial units: no two
    /// consecutive occurrences of it.
    NoRepeat(usize),
    /// All members are reduced: non-empty words with distinct neighbours.
    Alternating,
}

/// Outcome of a bounded property check over the coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: Property,
    pub words_checked: usize,
    /// A violating tuple of words, if one was found.
    pub witness: Option<Vec<ReducedWord>>,
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// A non-empty finite family of finite atomic monoids, with the length data
/// of every member precomputed.
#[derive(Debug, Clone)]
pub struct Family {
    members: Vec<Arc<FiniteMonoid>>,
    length_sets: Vec<Vec<EpSet>>,
    systems: Vec<LengthSystem>,
}

impl Family {
    pub fn new<M: Into<Arc<FiniteMonoid>>>(members: impl IntoIterator<Item = M>) -> Result<Self> {
        let members: Vec<Arc<FiniteMonoid>> = members.into_iter().map(Into::into).collect();
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(i) = members.iter().position(|m| !m.is_atomic()) {
            return Err(Error::MemberNotAtomic(i));
        }
        let length_sets = members.iter().map(|m| lenset::length_sets(m)).collect();
        let systems = members
            .iter()
            .map(|m| lenset::length_system(m, false))
            .collect();
        Ok(Self {
            members,
            length_sets,
            systems,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Arc<FiniteMonoid>] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &FiniteMonoid {
        &self.members[index]
    }

    /// Length set of `x` in member `index`.
    pub fn member_length_set(&self, index: usize, x: Elem) -> &EpSet {
        &self.length_sets[index][x.0]
    }

    /// The system of length sets of member `index`, including `{0}`.
    pub fn member_system(&self, index: usize) -> &LengthSystem {
        &self.systems[index]
    }

    pub fn letter(&self, index: usize, elem: Elem) -> Result<Letter> {
        let m = self.members.get(index).ok_or(Error::BadIndex(index + 1))?;
        if !m.contains(elem) {
            return Err(Error::BadLetter {
                index,
                elem: elem.0,
            });
        }
        Ok(Letter::new(index, elem))
    }

    fn check_letters(&self, letters: &[Letter]) -> Result<()> {
        for l in letters {
            self.letter(l.index, l.elem)?;
        }
        Ok(())
    }

    fn is_identity_letter(&self, l: Letter) -> bool {
        l.elem == self.members[l.index].identity()
    }

    fn is_unit_letter(&self, l: Letter) -> bool {
        self.members[l.index].is_unit(l.elem)
    }

    fn push_letter(&self, stack: &mut Vec<Letter>, l: Letter) {
        if self.is_identity_letter(l) {
            return;
        }
        match stack.last() {
            Some(top) if top.index == l.index => {
                let merged = self.members[l.index].mul(top.elem, l.elem);
                stack.pop();
                if merged != self.members[l.index].identity() {
                    stack.push(Letter::new(l.index, merged));
                }
            }
            _ => stack.push(l),
        }
    }

    /// Reduced form of a word: one stack pass merging equal adjacent
    /// indices and dropping identities.
    pub fn reduce(&self, word: &RawWord) -> Result<ReducedWord> {
        self.check_letters(&word.letters)?;
        Ok(self.reduce_unchecked(&word.letters))
    }

    fn reduce_unchecked(&self, letters: &[Letter]) -> ReducedWord {
        let mut stack = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push_letter(&mut stack, l);
        }
        ReducedWord { letters: stack }
    }

    /// Product in the coproduct.
    pub fn mul(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        let mut stack = x.letters.clone();
        for &l in &y.letters {
            self.push_letter(&mut stack, l);
        }
        ReducedWord { letters: stack }
    }

    /// Builds a reduced word from letters that already satisfy the reduced
    /// form conditions.
    pub fn reduced(&self, letters: Vec<Letter>) -> Result<ReducedWord> {
        self.check_letters(&letters)?;
        let w = self.reduce_unchecked(&letters);
        if w.letters != letters {
            return Err(Error::Parse(format!("{} is not reduced", self.format_raw(&letters))));
        }
        Ok(w)
    }

    pub fn index_block_decomposition(&self, word: &RawWord) -> Result<IndexBlockDecomposition> {
        self.check_letters(&word.letters)?;
        let mut blocks: Vec<IndexBlock> = Vec::new();
        for &l in &word.letters {
            let m = &self.members[l.index];
            match blocks.last_mut() {
                Some(top) if top.index == l.index => {
                    top.letters.push(l.elem);
                    top.product = m.mul(top.product, l.elem);
                }
                _ => blocks.push(IndexBlock {
                    index: l.index,
                    letters: vec![l.elem],
                    product: l.elem,
                }),
            }
            let top = blocks.last().expect("just pushed");
            if top.product == m.identity() {
                blocks.pop();
            }
        }
        if blocks.is_empty() {
            return Err(Error::EmptyClass);
        }
        Ok(IndexBlockDecomposition { blocks })
    }

    /// A word is a unit iff each of its letters is.
    pub fn is_unit(&self, w: &ReducedWord) -> bool {
        w.letters.iter().all(|&l| self.is_unit_letter(l))
    }

    /// A word is an atom iff exactly one letter is a non-unit and that
    /// letter is an atom of its member.
    pub fn is_atom(&self, w: &ReducedWord) -> bool {
        let mut non_units = w.letters.iter().filter(|&&l| !self.is_unit_letter(l));
        match (non_units.next(), non_units.next()) {
            (Some(l), None) => self.members[l.index].is_atom(l.elem),
            _ => false,
        }
    }

    /// Length set: the Minkowski sum of the member length sets of the
    /// non-unit letters; `{0}` for the empty word and `∅` for other units.
    pub fn length_set(&self, w: &ReducedWord) -> EpSet {
        if w.is_empty() {
            return EpSet::singleton(0);
        }
        if self.is_unit(w) {
            return EpSet::empty();
        }
        EpSet::sum_all(
            w.letters
                .iter()
                .filter(|&&l| !self.is_unit_letter(l))
                .map(|l| self.member_length_set(l.index, l.elem)),
        )
    }

    pub fn gamma_case(&self) -> GammaCase {
        let with_units: Vec<usize> = (0..self.len())
            .filter(|&i| self.members[i].units().len() > 1)
            .collect();
        match with_units.as_slice() {
            [] => GammaCase::Alternating,
            [i] => GammaCase::NoRepeat(*i),
            _ => GammaCase::AllWords,
        }
    }

    fn admissible_step(case: GammaCase, prev: usize, next: usize) -> bool {
        match case {
            GammaCase::AllWords => true,
            GammaCase::NoRepeat(i) => !(prev == i && next == i),
            GammaCase::Alternating => prev != next,
        }
    }

    /// Membership of an index word in the admissible set.
    pub fn gamma_admissible(&self, index_word: &[usize]) -> bool {
        let case = self.gamma_case();
        if index_word.is_empty() {
            return case != GammaCase::Alternating;
        }
        index_word.iter().all(|&i| i < self.len())
            && index_word
                .windows(2)
                .all(|p| Self::admissible_step(case, p[0], p[1]))
    }

    /// Sums `L_1 + ... + L_n` with `L_j` a non-zero length set of member
    /// `i_j`, over admissible non-empty index words of length at most
    /// `max_blocks`. The result is flagged as truncated at that bound.
    pub fn length_system_bounded(&self, max_blocks: usize) -> LengthSystem {
        let case = self.gamma_case();
        let zero = EpSet::singleton(0);
        let nonzero: Vec<Vec<&EpSet>> = self
            .systems
            .iter()
            .map(|s| s.entries().iter().filter(|&l| *l != zero).collect())
            .collect();
        let mut all = BTreeSet::new();
        // frontier[i]: sums over admissible words of the current length ending in i
        let mut frontier: Vec<BTreeSet<EpSet>> = nonzero
            .iter()
            .map(|ls| ls.iter().map(|&l| l.clone()).collect())
            .collect();
        for len in 1..=max_blocks {
            for sums in &frontier {
                all.extend(sums.iter().cloned());
            }
            if len == max_blocks {
                break;
            }
            let mut next: Vec<BTreeSet<EpSet>> = vec![BTreeSet::new(); self.len()];
            for (prev, sums) in frontier.iter().enumerate() {
                for (i, ls) in nonzero.iter().enumerate() {
                    if !Self::admissible_step(case, prev, i) {
                        continue;
                    }
                    for s in sums {
                        for &l in ls {
                            next[i].insert(s.minkowski_sum(l));
                        }
                    }
                }
            }
            frontier = next;
        }
        LengthSystem::new(all).truncated(max_blocks)
    }

    /// `𝒰_k` of the coproduct for `k >= 1`: the union of
    /// `𝒰_{k_1}(H_{i_1}) + ... + 𝒰_{k_n}(H_{i_n})` over compositions
    /// `k_1 + ... + k_n = k` into positive parts and admissible index words.
    pub fn union_k(&self, k: usize) -> EpSet {
        assert!(k >= 1, "unions of the coproduct are taken for k >= 1");
        let case = self.gamma_case();
        let n = self.len();
        // member_unions[i][j] = 𝒰_j(H_i)
        let member_unions: Vec<Vec<EpSet>> = self
            .systems
            .iter()
            .map(|s| (0..=k).map(|j| s.union_containing(j)).collect())
            .collect();
        // acc[j][i]: union over compositions of j ending with index i
        let mut acc: Vec<Vec<EpSet>> = vec![vec![EpSet::empty(); n]; k + 1];
        for j in 1..=k {
            for i in 0..n {
                let mut u = EpSet::empty();
                for part in 1..=j {
                    let term = &member_unions[i][part];
                    if term.is_empty() {
                        continue;
                    }
                    if part == j {
                        u = u.union(term);
                        continue;
                    }
                    for prev in (0..n).filter(|&p| Self::admissible_step(case, p, i)) {
                        let before = &acc[j - part][prev];
                        if !before.is_empty() {
                            u = u.union(&before.minkowski_sum(term));
                        }
                    }
                }
                acc[j][i] = u;
            }
        }
        acc[k].iter().fold(EpSet::empty(), |a, b| a.union(b))
    }

    /// The coprojection `e_i(x)`.
    pub fn coprojection(&self, index: usize, x: Elem) -> Result<ReducedWord> {
        let l = self.letter(index, x)?;
        Ok(self.reduce_unchecked(&[l]))
    }

    fn check_cocone(&self, homs: &[MonoidHom]) -> Result<()> {
        if homs.len() != self.len() {
            return Err(Error::FamilyArity {
                expected: self.len(),
                found: homs.len(),
            });
        }
        for (i, h) in homs.iter().enumerate() {
            if **h.source() != *self.members[i] {
                return Err(Error::SourceMismatch);
            }
            if **h.target() != **homs[0].target() {
                return Err(Error::TargetMismatch);
            }
            if !h.is_atom_preserving() {
                return Err(Error::NotAtomPreserving(i));
            }
        }
        Ok(())
    }

    /// The induced map out of the coproduct: `(a_1,i_1)*...*(a_n,i_n)` goes
    /// to `φ_{i_1}(a_1)···φ_{i_n}(a_n)`.
    pub fn couniversal(&self, homs: &[MonoidHom], w: &ReducedWord) -> Result<Elem> {
        self.check_cocone(homs)?;
        let target = homs[0].target();
        Ok(w.letters.iter().fold(target.identity(), |acc, l| {
            target.mul(acc, homs[l.index].apply(l.elem))
        }))
    }

    /// All reduced words of length at most `max_len`, shortest first.
    pub fn reduced_words(&self, max_len: usize) -> Vec<ReducedWord> {
        let letters: Vec<Letter> = (0..self.len())
            .flat_map(|i| {
                let m = &self.members[i];
                m.elems()
                    .filter(move |&x| x != m.identity())
                    .map(move |x| Letter::new(i, x))
            })
            .collect();
        let mut out = vec![ReducedWord::empty()];
        let mut layer = vec![ReducedWord::empty()];
        for _ in 0..max_len {
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

    /// Checks a cancellation property exhaustively over reduced words of
    /// length at most `max_len`, after confirming every member has it.
    pub fn check_property_bounded(&self, prop: Property, max_len: usize) -> Result<PropertyCheck> {
        if !matches!(
            prop,
            Property::Acyclic | Property::UnitCancellative | Property::Cancellative
        ) {
            return Err(Error::UnsupportedProperty(prop.name().to_string()));
        }
        if let Some(i) = self.members.iter().position(|m| !m.check_property(prop)) {
            return Err(Error::PreconditionUnmet(i));
        }
        let words = self.reduced_words(max_len);
        let nonunit: Vec<bool> = words.iter().map(|w| !self.is_unit(w)).collect();
        let mut witness = None;
        'outer: for (xi, x) in words.iter().enumerate() {
            for (yi, y) in words.iter().enumerate() {
                match prop {
                    Property::UnitCancellative => {
                        if nonunit[yi] && (self.mul(x, y) == *x || self.mul(y, x) == *x) {
                            witness = Some(vec![x.clone(), y.clone()]);
                            break 'outer;
                        }
                    }
                    Property::Acyclic => {
                        let yx = self.mul(y, x);
                        for (zi, z) in words.iter().enumerate() {
                            if (nonunit[yi] || nonunit[zi]) && self.mul(&yx, z) == *x {
                                witness = Some(vec![x.clone(), y.clone(), z.clone()]);
                                break 'outer;
                            }
                        }
                    }
                    Property::Cancellative => {
                        if xi == yi {
                            continue;
                        }
                        for z in &words {
                            if self.mul(x, z) == self.mul(y, z) || self.mul(z, x) == self.mul(z, y) {
                                witness = Some(vec![x.clone(), y.clone(), z.clone()]);
                                break 'outer;
                            }
                        }
                    }
                    _ => unreachable!("filtered above"),
                }
            }
        }
        Ok(PropertyCheck {
            property: prop,
            words_checked: words.len(),
            witness,
        })
    }

    /// Parses `eps` or `(name@i)*(name@j)*...` with 1-based indices.
    pub fn parse_word(&self, text: &str) -> Result<RawWord> {
        let text = text.trim();
        if text == "eps" || text == "ε" || text.is_empty() {
            return Ok(RawWord::default());
        }
        let bad = || Error::Parse(text.to_string());
        let mut letters = Vec::new();
        for part in text.split('*') {
            let inner = part
                .trim()
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (name, index) = inner.rsplit_once('@').ok_or_else(bad)?;
            let index: usize = index.trim().parse().map_err(|_| bad())?;
            if index == 0 || index > self.len() {
                return Err(Error::BadIndex(index));
            }
            let m = &self.members[index - 1];
            let elem = m
                .elem_by_name(name.trim())
                .ok_or_else(|| Error::Parse(format!("{} in member {index}", name.trim())))?;
            letters.push(Letter::new(index - 1, elem));
        }
        Ok(RawWord::new(letters))
    }

    fn format_raw(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "eps".to_string();
        }
        letters
            .iter()
            .map(|l| format!("({}@{})", self.members[l.index].name(l.elem), l.index + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Formats a word in the syntax accepted by [`Family::parse_word`].
    pub fn format_word(&self, w: &ReducedWord) -> String {
        self.format_raw(&w.letters)
    }

    pub fn display<'a>(&'a self, w: &'a ReducedWord) -> impl fmt::Display + 'a {
        DisplayWord { family: self, word: w }
    }

    /// Atoms among the reduced words of length at most `max_len`.
    pub fn atoms_up_to(&self, max_len: usize) -> Vec<ReducedWord> {
        self.reduced_words(max_len)
            .into_iter()
            .filter(|w| self.is_atom(w))
            .collect()
    }

    /// Products `x·y` of two non-units with `|x|, |y| <= max_len`.
    pub fn reducible_products(&self, max_len: usize) -> HashSet<ReducedWord> {
        let nonunits: Vec<ReducedWord> = self
            .reduced_words(max_len)
            .into_iter()
            .filter(|w| !self.is_unit(w))
            .collect();
        let mut out = HashSet::new();
        for x in &nonunits {
            for y in &nonunits {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Member images of a cocone, keyed by letter, for evaluating words.
    pub fn letter_images(&self, homs: &[MonoidHom]) -> Result<BTreeMap<Letter, Elem>> {
        self.check_cocone(homs)?;
        let mut out = BTreeMap::new();
        for (i, h) in homs.iter().enumerate() {
            for x in self.members[i].elems() {
                out.insert(Letter::new(i, x), h.apply(x));
            }
        }
        Ok(out)
    }
}

struct DisplayWord<'a> {
    family: &'a Family,
    word: &'a ReducedWord,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family.format_word(self.word))
    }
}
