//! Finite monoids given by multiplication tables.
//!
//! Elements are dense indices into the table; names are carried along only
//! for display and parsing. Units and atoms are computed once at
//! construction time, since nearly every other computation asks for them.

mod hom;
mod io;
mod word;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hom::{canonical_to_terminal, enumerate_homs, MonoidHom, EXHAUSTIVE_SOURCE_CAP};
pub use io::{HomFile, MonoidFile};
pub use word::{eval_word, extend_atom_map, FreeWord};

/// An element of a finite monoid, identified by its row in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of the elements of a monoid of known size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: Vec<bool>,
}

impl ElemSet {
    pub fn empty(size: usize) -> Self {
        Self {
            bits: vec![false; size],
        }
    }

    pub fn from_elems(size: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = Self::empty(size);
        for e in elems {
            set.insert(e);
        }
        set
    }

    pub fn insert(&mut self, e: Elem) -> bool {
        let fresh = !self.bits[e.0];
        self.bits[e.0] = true;
        fresh
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.bits.get(e.0).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| Elem(i))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}

/// Unit / atom / reducible trichotomy of an element.
///
/// `Reducible` means a non-unit that is a product of two non-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemClass {
    Unit,
    Atom,
    Reducible,
}

impl fmt::Display for ElemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElemClass::Unit => "unit",
            ElemClass::Atom => "atom",
            ElemClass::Reducible => "reducible",
        };
        f.write_str(s)
    }
}

/// Monoid-level predicates decided by exhaustive search over the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Atomic,
    Reduced,
    DedekindFinite,
    Acyclic,
    UnitCancellative,
    Cancellative,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Atomic,
        Property::Reduced,
        Property::DedekindFinite,
        Property::Acyclic,
        Property::UnitCancellative,
        Property::Cancellative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Atomic => "atomic",
            Property::Reduced => "reduced",
            Property::DedekindFinite => "dedekind_finite",
            Property::Acyclic => "acyclic",
            Property::UnitCancellative => "unit_cancellative",
            Property::Cancellative => "cancellative",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated finite monoid.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    units: ElemSet,
    atoms: ElemSet,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.identity == other.identity && self.table == other.table && self.names == other.names
    }
}

impl Eq for FiniteMonoid {}

impl FiniteMonoid {
    /// Validates `table` (row `i`, column `j` holds the index of `names[i]·names[j]`)
    /// and builds the monoid.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyMonoid);
        }
        if table.len() != n {
            return Err(Error::NotSquare {
                expected: n,
                row: table.len().min(n),
                found: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    expected: n,
                    row,
                    found: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange {
                        row,
                        col,
                        value,
                        size: n,
                    });
                }
                flat.push(value);
            }
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(Error::EmptyName);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if identity >= n {
            return Err(Error::BadIdentity(identity));
        }
        let at = |i: usize, j: usize| flat[i * n + j];
        for x in 0..n {
            if at(identity, x) != x || at(x, identity) != x {
                return Err(Error::BadIdentity(identity));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = at(i, j);
                for k in 0..n {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(Self::from_valid_parts(names, flat, identity))
    }

    /// Builds a monoid from a table already known to satisfy the axioms.
    fn from_valid_parts(names: Vec<String>, table: Vec<usize>, identity: usize) -> Self {
        let n = names.len();
        let mut units = ElemSet::empty(n);
        for u in 0..n {
            if (0..n).any(|v| table[u * n + v] == identity && table[v * n + u] == identity) {
                units.insert(Elem(u));
            }
        }
        let mut atoms = ElemSet::empty(n);
        for a in 0..n {
            if units.contains(Elem(a)) {
                continue;
            }
            let splits = (0..n).any(|x| {
                !units.contains(Elem(x))
                    && (0..n).any(|y| !units.contains(Elem(y)) && table[x * n + y] == a)
            });
            if !splits {
                atoms.insert(Elem(a));
            }
        }
        Self {
            names,
            table,
            identity,
            units,
            atoms,
        }
    }

    /// Convenience constructor taking string slices.
    pub fn from_table(names: &[&str], table: &[&[usize]], identity: usize) -> Result<Self> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            table.iter().map(|row| row.to_vec()).collect(),
            identity,
        )
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> Elem {
        Elem(self.identity)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x.0]
    }

    pub fn elem_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.size()).map(Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.size()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.table[x.0 * self.size() + y.0])
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size())
            .map(|row| row.to_vec())
            .collect()
    }

    pub fn units(&self) -> &ElemSet {
        &self.units
    }

    pub fn atoms(&self) -> &ElemSet {
        &self.atoms
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.units.contains(x)
    }

    pub fn is_atom(&self, x: Elem) -> bool {
        self.atoms.contains(x)
    }

    pub fn inverse(&self, u: Elem) -> Option<Elem> {
        let one = self.identity();
        self.elems()
            .find(|&v| self.mul(u, v) == one && self.mul(v, u) == one)
    }

    /// Whether the only unit is the identity.
    pub fn is_reduced(&self) -> bool {
        self.units.len() == 1
    }

    pub fn classify(&self, x: Elem) -> ElemClass {
        if self.is_unit(x) {
            ElemClass::Unit
        } else if self.is_atom(x) {
            ElemClass::Atom
        } else {
            ElemClass::Reducible
        }
    }

    /// Closure of the atoms under right multiplication by atoms.
    pub fn atom_closure(&self) -> ElemSet {
        let mut reached = self.atoms.clone();
        let mut frontier = self.atoms.to_vec();
        while let Some(x) = frontier.pop() {
            for a in self.atoms.iter() {
                let p = self.mul(x, a);
                if reached.insert(p) {
                    frontier.push(p);
                }
            }
        }
        reached
    }

    pub fn is_atomic(&self) -> bool {
        let closure = self.atom_closure();
        self.elems()
            .all(|x| self.is_unit(x) || closure.contains(x))
    }

    pub fn check_property(&self, prop: Property) -> bool {
        let n = self.size();
        let one = self.identity();
        let nonunit = |x: Elem| !self.is_unit(x);
        match prop {
            Property::Atomic => self.is_atomic(),
            Property::Reduced => self.is_reduced(),
            Property::DedekindFinite => self.elems().all(|x| {
                self.elems()
                    .all(|y| self.mul(x, y) != one || self.mul(y, x) == one)
            }),
            Property::Acyclic => self.elems().all(|x| {
                self.elems().all(|y| {
                    self.elems().all(|z| {
                        !(nonunit(y) || nonunit(z)) || self.mul(self.mul(y, x), z) != x
                    })
                })
            }),
            Property::UnitCancellative => self.elems().all(|x| {
                self.elems()
                    .filter(|&y| nonunit(y))
                    .all(|y| self.mul(x, y) != x && self.mul(y, x) != x)
            }),
            Property::Cancellative => (0..n).all(|x| {
                (0..n).filter(|&y| y != x).all(|y| {
                    self.elems().all(|z| {
                        self.mul(Elem(x), z) != self.mul(Elem(y), z)
                            && self.mul(z, Elem(x)) != self.mul(z, Elem(y))
                    })
                })
            }),
        }
    }

    /// The submonoid generated by `generators`, together with the inclusion
    /// map (position `i` of the result holds the parent element).
    pub fn submonoid(&self, generators: &[Elem]) -> (FiniteMonoid, Vec<Elem>) {
        let (sub, elems) = generate(
            self.identity(),
            generators,
            |x, y| self.mul(*x, *y),
            |x| self.name(*x).to_string(),
            None,
        )
        .expect("uncapped generation of a submonoid cannot fail");
        (sub, elems)
    }

    /// The quotient by a partition given as a class id per element.
    ///
    /// The caller guarantees the partition is a congruence. Classes are
    /// ordered by their smallest member; the returned vector sends each
    /// element to its class in the quotient.
    pub fn quotient(&self, class_of: &[usize]) -> Result<(FiniteMonoid, Vec<Elem>)> {
        let n = self.size();
        let mut order: Vec<usize> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for &c in &class_of[..n] {
            if let std::collections::hash_map::Entry::Vacant(e) = slot.entry(c) {
                e.insert(order.len());
                order.push(c);
            }
        }
        let projection: Vec<Elem> = (0..n).map(|x| Elem(slot[&class_of[x]])).collect();
        let m = order.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); m];
        for x in 0..n {
            members[projection[x].0].push(x);
        }
        let names: Vec<String> = members
            .iter()
            .map(|ms| {
                ms.iter()
                    .map(|&x| self.names[x].as_str())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        let mut table = vec![vec![0; m]; m];
        for (ci, mi) in members.iter().enumerate() {
            for (cj, mj) in members.iter().enumerate() {
                let p = projection[self.mul(Elem(mi[0]), Elem(mj[0])).0];
                for &x in mi {
                    for &y in mj {
                        if projection[self.mul(Elem(x), Elem(y)).0] != p {
                            return Err(Error::InvariantViolated(format!(
                                "partition is not compatible at ({x},{y})"
                            )));
                        }
                    }
                }
                table[ci][cj] = p.0;
            }
        }
        let identity = projection[self.identity].0;
        Ok((FiniteMonoid::new(names, table, identity)?, projection))
    }
}

/// Generates the monoid spanned by `generators` inside an ambient monoid
/// given only through its multiplication `mul`.
///
/// Elements are listed in breadth-first order starting from `identity`,
/// so the output is deterministic in the order of `generators`. Returns
/// [`Error::CapExceeded`] once more than `cap` elements are found.
pub fn generate<T, M, N>(
    identity: T,
    generators: &[T],
    mul: M,
    name: N,
    cap: Option<usize>,
) -> Result<(FiniteMonoid, Vec<T>)>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
    N: Fn(&T) -> String,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut next = 0;
    while next < elems.len() {
        let current = elems[next].clone();
        next += 1;
        for g in generators {
            let p = mul(&current, g);
            if !index.contains_key(&p) {
                if let Some(cap) = cap {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
    }
    let n = elems.len();
    let mut table = vec![vec![0; n]; n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            table[i][j] = *index.get(&mul(x, y)).ok_or_else(|| {
                Error::InvariantViolated("generated set is not closed under products".into())
            })?;
        }
    }
    let names = elems.iter().map(&name).collect();
    Ok((FiniteMonoid::new(names, table, 0)?, elems))
}
