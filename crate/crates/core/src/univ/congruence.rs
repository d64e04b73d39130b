use crate::error::Result;
use crate::monoid::{Elem, FiniteMonoid};

/// A monoid congruence on a finite monoid, as a union-find over its
/// elements.
#[derive(Debug, Clone)]
pub struct Congruence {
    parent: Vec<usize>,
}

impl Congruence {
    /// The equality relation on `size` elements.
    pub fn discrete(size: usize) -> Self {
        Self {
            parent: (0..size).collect(),
        }
    }

    /// The smallest congruence on `carrier` containing `seeds`.
    ///
    /// Every merge of `x` and `y` queues the pairs `(a·x, a·y)` and
    /// `(x·a, y·a)` for all `a`, so the relation is compatible once the
    /// queue drains.
    pub fn closure(carrier: &FiniteMonoid, seeds: impl IntoIterator<Item = (Elem, Elem)>) -> Self {
        let mut c = Self::discrete(carrier.size());
        let mut queue: Vec<(Elem, Elem)> = seeds.into_iter().collect();
        while let Some((x, y)) = queue.pop() {
            if c.union(x.0, y.0) {
                for a in carrier.elems() {
                    queue.push((carrier.mul(a, x), carrier.mul(a, y)));
                    queue.push((carrier.mul(x, a), carrier.mul(y, a)));
                }
            }
        }
        c
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; returns whether they were distinct.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // the smaller index becomes the root so class ids are canonical
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, x: Elem, y: Elem) -> bool {
        self.find(x.0) == self.find(y.0)
    }

    /// Class id of every element: the smallest element of its class.
    pub fn class_of(&self) -> Vec<usize> {
        let mut c = self.clone();
        (0..self.parent.len()).map(|x| c.find(x)).collect()
    }

    pub fn class_count(&self) -> usize {
        let ids = self.class_of();
        (0..ids.len()).filter(|&x| ids[x] == x).count()
    }

    /// Whether the relation is compatible with multiplication.
    pub fn is_compatible(&self, carrier: &FiniteMonoid) -> bool {
        is_compatible_partition(carrier, &self.class_of())
    }

    /// The quotient monoid and the projection onto it.
    pub fn quotient(&self, carrier: &FiniteMonoid) -> Result<(FiniteMonoid, Vec<Elem>)> {
        carrier.quotient(&self.class_of())
    }
}

/// Whether a partition given by class ids is a congruence.
pub fn is_compatible_partition(carrier: &FiniteMonoid, class_of: &[usize]) -> bool {
    carrier.elems().all(|x| {
        carrier.elems().all(|y| {
            class_of[x.0] != class_of[y.0]
                || carrier.elems().all(|a| {
                    class_of[carrier.mul(a, x).0] == class_of[carrier.mul(a, y).0]
                        && class_of[carrier.mul(x, a).0] == class_of[carrier.mul(y, a).0]
                })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closure_of_h2_atoms() {
        let h2 = fixtures::h2();
        let a = h2.elem_by_name("a").unwrap();
        let b = h2.elem_by_name("b").unwrap();
        let mut c = Congruence::closure(&h2, [(a, b)]);
        assert!(c.same(a, b));
        assert_eq!(c.class_count(), 3);
        assert!(c.is_compatible(&h2));
    }

    #[test]
    fn closure_propagates_through_products() {
        let m31 = fixtures::m31();
        let g = m31.elem_by_name("g").unwrap();
        let g2 = m31.elem_by_name("g2").unwrap();
        let g3 = m31.elem_by_name("g3").unwrap();
        // g ~ g2 forces g2 ~ g3
        let mut c = Congruence::closure(&m31, [(g, g2)]);
        assert!(c.same(g2, g3));
        assert_eq!(c.class_of(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn discrete_is_compatible() {
        for fx in fixtures::named() {
            let c = Congruence::discrete(fx.monoid.size());
            assert!(c.is_compatible(&fx.monoid));
            assert_eq!(c.class_count(), fx.monoid.size());
        }
    }
}
