//! Kähler forms, multivector fields, multiderivations with values in a
//! module, and the operations between them: wedge, de Rham differential,
//! both contraction maps and the Lie derivative.
//!
//! Everything lives on the basis of strictly increasing index tuples. A
//! multivector `d/dx_A` evaluates on `x_B` (both increasing) to `1` when
//! `A = B` and `0` otherwise.
//!
//! `contract_multivector(Q, F)` puts `Q` into the final argument slots of
//! `F`. With that slot convention, `Q -> contract_multivector(Q, eta*)` is
//! the exact inverse of `F -> contract_form(F, eta)`, with no extra sign.

mod graded;
mod wedge;

use std::ops::Deref;

pub use graded::{Coefficient, Graded};
pub use wedge::{Shuffle, Shuffles, Sign, Wedge};

use crate::module::ModuleElement;
use crate::poly::{determinant, Polynomial, Ring};

/// A Kähler differential form of fixed degree.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffForm(Graded<Polynomial>);

/// A multivector field of fixed degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector(Graded<Polynomial>);

impl Deref for DiffForm {
    type Target = Graded<Polynomial>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl Deref for Multivector {
    type Target = Graded<Polynomial>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DiffForm {
    pub fn zero(ring_dim: usize, degree: usize) -> Self {
        DiffForm(Graded::zero(ring_dim, degree))
    }

    pub fn from_graded(g: Graded<Polynomial>) -> Self {
        DiffForm(g)
    }

    pub fn function(f: Polynomial) -> Self {
        Self::term(f.ring_dim(), Wedge::empty(), f)
    }

    pub fn term(ring_dim: usize, w: Wedge, f: Polynomial) -> Self {
        let mut g = Graded::zero(ring_dim, w.len());
        g.add_term(w, 1, f);
        DiffForm(g)
    }

    /// `f dx_{i1} ^ .. ^ dx_{ip}` for an arbitrary index order.
    pub fn unsorted(ring_dim: usize, indices: Vec<usize>, f: Polynomial) -> Self {
        let mut g = Graded::zero(ring_dim, indices.len());
        g.add_unsorted(indices, f);
        DiffForm(g)
    }

    pub fn dx(ring_dim: usize, i: usize) -> Self {
        Self::term(ring_dim, Wedge::single(i), Polynomial::one(ring_dim))
    }

    /// The volume form `dx1 ^ .. ^ dxn`.
    pub fn volume(ring_dim: usize) -> Self {
        Self::term(ring_dim, Wedge::full(ring_dim), Polynomial::one(ring_dim))
    }

    /// `df` of a function.
    pub fn exact(f: &Polynomial) -> Self {
        DiffForm::function(f.clone()).de_rham()
    }

    pub fn coefficient(&self, w: &Wedge) -> Polynomial {
        self.get(w).cloned().unwrap_or_else(|| Polynomial::zero(self.ring_dim()))
    }

    /// Coefficient of `dx1 ^ .. ^ dxn` of a top form.
    pub fn volume_coefficient(&self) -> Polynomial {
        assert_eq!(self.degree(), self.ring_dim(), "not a top-degree form");
        self.coefficient(&Wedge::full(self.ring_dim()))
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        let mut g = self.0.clone();
        g.add_assign(&other.0);
        DiffForm(g)
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm(self.0.negated())
    }

    pub fn scale(&self, f: &Polynomial) -> DiffForm {
        DiffForm(self.0.scaled(f))
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.ring_dim(), other.ring_dim(), "ring dimension mismatch");
        let mut g = Graded::zero(self.ring_dim(), self.degree() + other.degree());
        if self.degree() + other.degree() > self.ring_dim() {
            return DiffForm(g);
        }
        for (a, fa) in self.iter() {
            for (b, fb) in other.iter() {
                if let Some((w, s)) = a.concat(b) {
                    g.add_term(w, s, fa * fb);
                }
            }
        }
        DiffForm(g)
    }

    /// `d(f dx_I) = sum_l df/dx_l dx_l ^ dx_I`.
    pub fn de_rham(&self) -> DiffForm {
        let n = self.ring_dim();
        let mut g = Graded::zero(n, self.degree() + 1);
        for (w, f) in self.iter() {
            for l in 0..n {
                if w.contains(l) {
                    continue;
                }
                let df = f.partial(l);
                if df.is_zero() {
                    continue;
                }
                let (wl, s) = Wedge::single(l).concat(w).expect("l not in w");
                g.add_term(wl, s, df);
            }
        }
        DiffForm(g)
    }

    pub fn show(&self, ring: &Ring) -> String {
        show_graded(&self.0, ring, "d")
    }
}

impl Multivector {
    pub fn zero(ring_dim: usize, degree: usize) -> Self {
        Multivector(Graded::zero(ring_dim, degree))
    }

    pub fn from_graded(g: Graded<Polynomial>) -> Self {
        Multivector(g)
    }

    pub fn scalar(f: Polynomial) -> Self {
        Self::term(f.ring_dim(), Wedge::empty(), f)
    }

    pub fn term(ring_dim: usize, w: Wedge, f: Polynomial) -> Self {
        let mut g = Graded::zero(ring_dim, w.len());
        g.add_term(w, 1, f);
        Multivector(g)
    }

    /// `eta* = d/dx1 ^ .. ^ d/dxn`.
    pub fn volume(ring_dim: usize) -> Self {
        Self::term(ring_dim, Wedge::full(ring_dim), Polynomial::one(ring_dim))
    }

    /// Degree-one field with `X(x_i) = values[i]`.
    pub fn vector_field(values: &[Polynomial]) -> Self {
        let n = values.len();
        let mut g = Graded::zero(n, 1);
        for (i, v) in values.iter().enumerate() {
            g.add_term(Wedge::single(i), 1, v.clone());
        }
        Multivector(g)
    }

    /// Bivector with coefficient `h[i][j]` on `d/dx_i ^ d/dx_j`, `i < j`.
    pub fn bivector(h: &[Vec<Polynomial>]) -> Self {
        let n = h.len();
        let mut g = Graded::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                g.add_term(Wedge::new(vec![i, j]), 1, h[i][j].clone());
            }
        }
        Multivector(g)
    }

    pub fn coefficient(&self, w: &Wedge) -> Polynomial {
        self.get(w).cloned().unwrap_or_else(|| Polynomial::zero(self.ring_dim()))
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        let mut g = self.0.clone();
        g.add_assign(&other.0);
        Multivector(g)
    }

    pub fn show(&self, ring: &Ring) -> String {
        show_graded(&self.0, ring, "d/d")
    }
}

fn show_graded(g: &Graded<Polynomial>, ring: &Ring, symbol: &str) -> String {
    if g.is_zero() {
        return "0".into();
    }
    g.iter()
        .map(|(w, f)| format!("({}) {}", ring.show(f), w.display(ring.names(), symbol)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `iota_P(omega)`: the shuffle-sum contraction of a `k`-form by a
/// `p`-multivector. Zero when `k < p`; a degree-0 `P` acts by multiplication.
pub fn contract_form(p: &Multivector, omega: &DiffForm) -> DiffForm {
    assert_eq!(p.ring_dim(), omega.ring_dim(), "ring dimension mismatch");
    let n = omega.ring_dim();
    let (pd, k) = (p.degree(), omega.degree());
    if k < pd {
        return DiffForm::zero(n, 0);
    }
    let mut g = Graded::zero(n, k - pd);
    for (i, f) in omega.iter() {
        for sh in Shuffles::new(k, pd) {
            let head = Wedge::new(sh.head.iter().map(|&s| i.indices()[s]).collect());
            let Some(coef) = p.get(&head) else { continue };
            let tail = Wedge::new(sh.tail.iter().map(|&s| i.indices()[s]).collect());
            g.add_term(tail, sh.sign, coef * f);
        }
    }
    DiffForm(g)
}

/// `iota_Q(F)` for a `p`-form `Q` and `k`-multivector `F`:
/// `(iota_Q F)(da_1 .. da_{k-p}) = F(da_1 ^ .. ^ da_{k-p} ^ Q)`.
pub fn contract_multivector(q: &DiffForm, f: &Multivector) -> Multivector {
    assert_eq!(q.ring_dim(), f.ring_dim(), "ring dimension mismatch");
    let n = f.ring_dim();
    let (qd, k) = (q.degree(), f.degree());
    if k < qd {
        return Multivector::zero(n, 0);
    }
    let mut g = Graded::zero(n, k - qd);
    for (a, qa) in q.iter() {
        for (c, fc) in f.iter() {
            if !a.is_subset_of(c) {
                continue;
            }
            let b = c.minus(a);
            let (_, s) = b.concat(a).expect("disjoint by construction");
            g.add_term(b, s, qa * fc);
        }
    }
    Multivector(g)
}

/// `L_X omega = d(iota_X omega) + iota_X(d omega)` for a vector field `X`.
pub fn lie_derivative(x: &Multivector, omega: &DiffForm) -> DiffForm {
    assert_eq!(x.degree(), 1, "Lie derivative needs a vector field");
    let a = contract_form(x, omega).de_rham();
    let b = contract_form(x, &omega.de_rham());
    if a.degree() != b.degree() {
        // only one side can be nonzero when omega has degree 0
        return if a.is_zero() { b } else { a };
    }
    a.add(&b)
}

/// An element of `X^p(M)`: a skew `p`-fold multiderivation of `R` into a
/// free module, stored by its values on increasing variable tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct Multiderivation {
    rank: usize,
    inner: Graded<ModuleElement>,
}

impl Deref for Multiderivation {
    type Target = Graded<ModuleElement>;
    fn deref(&self) -> &Self::Target {
        &self.inner
    }
}

impl Multiderivation {
    pub fn zero(ring_dim: usize, rank: usize, degree: usize) -> Self {
        Multiderivation {
            rank,
            inner: Graded::zero(ring_dim, degree),
        }
    }

    pub fn from_graded(rank: usize, inner: Graded<ModuleElement>) -> Self {
        Multiderivation { rank, inner }
    }

    /// Degree zero: a module element.
    pub fn element(m: ModuleElement) -> Self {
        let mut d = Multiderivation::zero(m.ring_dim(), m.rank(), 0);
        d.set(Wedge::empty(), m);
        d
    }

    pub fn term(ring_dim: usize, w: Wedge, m: ModuleElement) -> Self {
        let mut d = Multiderivation::zero(ring_dim, m.rank(), w.len());
        d.set(w, m);
        d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds `m` to the stored value on `w`.
    pub fn set(&mut self, w: Wedge, m: ModuleElement) {
        self.inner.add_term(w, 1, m);
    }

    pub fn add_unsorted(&mut self, indices: Vec<usize>, m: ModuleElement) {
        self.inner.add_unsorted(indices, m);
    }

    pub fn value(&self, w: &Wedge) -> ModuleElement {
        self.get(w)
            .cloned()
            .unwrap_or_else(|| ModuleElement::zero(self.ring_dim(), self.rank))
    }

    /// `F(x_{i1}, .., x_{ip})` for any index order.
    pub fn value_unsorted(&self, indices: Vec<usize>) -> ModuleElement {
        match Wedge::from_unsorted(indices) {
            None => ModuleElement::zero(self.ring_dim(), self.rank),
            Some((w, s)) => {
                let v = self.value(&w);
                if s < 0 {
                    v.negated()
                } else {
                    v
                }
            }
        }
    }

    /// `F(a_1, .., a_p)` for arbitrary polynomial arguments.
    ///
    /// Expanding every argument by the derivation rule gives
    /// `sum_A det(da_i/dx_{A_j}) F(x_A)` over the stored tuples `A`.
    pub fn eval(&self, args: &[Polynomial]) -> ModuleElement {
        assert_eq!(args.len(), self.degree(), "wrong number of arguments");
        let n = self.ring_dim();
        let mut out = ModuleElement::zero(n, self.rank);
        for (a, fa) in self.iter() {
            let jac: Vec<Vec<Polynomial>> = args
                .iter()
                .map(|arg| a.indices().iter().map(|&j| arg.partial(j)).collect())
                .collect();
            let det = determinant(&jac, n);
            if !det.is_zero() {
                out.add_assign(&fa.scaled(&det));
            }
        }
        out
    }

    pub fn add(&self, other: &Multiderivation) -> Multiderivation {
        let mut inner = self.inner.clone();
        inner.add_assign(&other.inner);
        Multiderivation { rank: self.rank, inner }
    }

    pub fn negated(&self) -> Multiderivation {
        Multiderivation {
            rank: self.rank,
            inner: self.inner.negated(),
        }
    }

    pub fn scaled(&self, f: &Polynomial) -> Multiderivation {
        Multiderivation {
            rank: self.rank,
            inner: self.inner.scaled(f),
        }
    }
}
