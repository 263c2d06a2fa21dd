use std::collections::BTreeMap;

use crate::poly::Polynomial;

use super::{Sign, Wedge};

/// Values that can sit on a wedge basis element: polynomials for forms and
/// multivectors, module elements for chains and multiderivations.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn negated(&self) -> Self;
    fn scaled(&self, f: &Polynomial) -> Self;
}

impl Coefficient for Polynomial {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, f: &Polynomial) -> Self {
        self * f
    }
}

/// Homogeneous element of degree `degree` on the basis of increasing
/// index tuples. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Graded<T> {
    ring_dim: usize,
    degree: usize,
    terms: BTreeMap<Wedge, T>,
}

impl<T: Coefficient> Graded<T> {
    pub fn zero(ring_dim: usize, degree: usize) -> Self {
        Graded {
            ring_dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn ring_dim(&self) -> usize {
        self.ring_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &Wedge) -> Option<&T> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Wedge, &T)> {
        self.terms.iter()
    }

    /// Adds `sign * value` on the basis element `w`.
    pub fn add_term(&mut self, w: Wedge, sign: Sign, value: T) {
        debug_assert_eq!(w.len(), self.degree, "basis tuple has the wrong length");
        if value.is_zero() {
            return;
        }
        let value = if sign < 0 { value.negated() } else { value };
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(value);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&value);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `value` on the unsorted tuple `indices`, normalizing the order.
    pub fn add_unsorted(&mut self, indices: Vec<usize>, value: T) {
        if let Some((w, s)) = Wedge::from_unsorted(indices) {
            self.add_term(w, s, value);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (w, v) in &other.terms {
            self.add_term(w.clone(), 1, v.clone());
        }
    }

    pub fn negated(&self) -> Self {
        Graded {
            ring_dim: self.ring_dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v.negated())).collect(),
        }
    }

    pub fn scaled(&self, f: &Polynomial) -> Self {
        let mut out = Graded::zero(self.ring_dim, self.degree);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), 1, v.scaled(f));
        }
        out
    }

    pub fn map_values<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Graded<U> {
        let mut out = Graded::zero(self.ring_dim, self.degree);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), 1, f(v));
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<Wedge, T> {
        self.terms
    }
}
