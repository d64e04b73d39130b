use std::collections::BTreeMap;
use std::fmt::Debug;

use super::{Elem, FiniteMonoid};
use crate::error::{Error, Result};

/// A word in the free monoid over an alphabet `T`; the empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord<T> {
    letters: Vec<T>,
}

impl<T> Default for FreeWord<T> {
    fn default() -> Self {
        Self {
            letters: Vec::new(),
        }
    }
}

impl<T: Clone> FreeWord<T> {
    pub fn new(letters: Vec<T>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[T] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Self { letters }
    }
}

impl<T> FromIterator<T> for FreeWord<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self {
            letters: iter.into_iter().collect(),
        }
    }
}

/// Evaluates a word of elements left to right; the empty word gives the
/// identity.
pub fn eval_word(monoid: &FiniteMonoid, word: &FreeWord<Elem>) -> Elem {
    word.letters
        .iter()
        .fold(monoid.identity(), |acc, &x| monoid.mul(acc, x))
}

/// Extends a map from an alphabet into the atoms of `monoid` to the free
/// monoid, and evaluates `word` under the extension.
pub fn extend_atom_map<T>(
    monoid: &FiniteMonoid,
    images: &BTreeMap<T, Elem>,
    word: &FreeWord<T>,
) -> Result<Elem>
where
    T: Ord + Clone + Debug,
{
    for (letter, &img) in images {
        if !monoid.is_atom(img) {
            return Err(Error::ImageNotAtom(format!("{letter:?}")));
        }
    }
    let mut acc = monoid.identity();
    for letter in word.letters() {
        let img = images
            .get(letter)
            .ok_or_else(|| Error::UnmappedLetter(format!("{letter:?}")))?;
        acc = monoid.mul(acc, *img);
    }
    Ok(acc)
}
