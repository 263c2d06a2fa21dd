//! The Poisson chain complex `M (x) Omega^p(R)` and cochain complex
//! `X^p(M)`, computed on the generator basis.
//!
//! Chains are stored in canonical form: every polynomial factor of a form
//! is moved across the tensor sign into the module coordinate, leaving the
//! basis `m (x) dx_I` with `I` strictly increasing.

use std::ops::Deref;

use rayon::prelude::*;

use crate::exterior::{Coefficient, DiffForm, Graded, Multiderivation, Wedge};
use crate::module::{ModuleElement, PoissonModule};
use crate::poly::{Monomial, Polynomial, Rational};
use num_traits::One;

/// An element of `M (x)_R Omega^p(R)` in canonical form.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainElement {
    rank: usize,
    inner: Graded<ModuleElement>,
}

impl Deref for ChainElement {
    type Target = Graded<ModuleElement>;
    fn deref(&self) -> &Self::Target {
        &self.inner
    }
}

impl ChainElement {
    pub fn zero(ring_dim: usize, rank: usize, degree: usize) -> Self {
        ChainElement {
            rank,
            inner: Graded::zero(ring_dim, degree),
        }
    }

    /// `m (x) dx_w`.
    pub fn term(ring_dim: usize, w: Wedge, m: ModuleElement) -> Self {
        let mut e = ChainElement::zero(ring_dim, m.rank(), w.len());
        e.add_term(w, 1, m);
        e
    }

    /// `m (x) omega`, normalized: `m (x) f dx_I = (f m) (x) dx_I`.
    pub fn tensor(m: &ModuleElement, omega: &DiffForm) -> Self {
        let mut e = ChainElement::zero(omega.ring_dim(), m.rank(), omega.degree());
        for (w, f) in omega.iter() {
            e.add_term(w.clone(), 1, m.scaled(f));
        }
        e
    }

    /// Sum of raw terms `m (x) f dx_{i1} ^ .. ^ dx_{ip}` with indices in any
    /// order; repeated indices vanish.
    pub fn normalize(
        ring_dim: usize,
        rank: usize,
        degree: usize,
        raw: impl IntoIterator<Item = (ModuleElement, Polynomial, Vec<usize>)>,
    ) -> Self {
        let mut e = ChainElement::zero(ring_dim, rank, degree);
        for (m, f, idx) in raw {
            assert_eq!(idx.len(), degree, "raw term has the wrong degree");
            e.inner.add_unsorted(idx, m.scaled(&f));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, w: Wedge, sign: i8, m: ModuleElement) {
        assert_eq!(m.rank(), self.rank, "module rank mismatch");
        self.inner.add_term(w, sign, m);
    }

    pub fn value(&self, w: &Wedge) -> ModuleElement {
        self.get(w)
            .cloned()
            .unwrap_or_else(|| ModuleElement::zero(self.ring_dim(), self.rank))
    }

    pub fn add(&self, other: &ChainElement) -> ChainElement {
        let mut inner = self.inner.clone();
        inner.add_assign(&other.inner);
        ChainElement { rank: self.rank, inner }
    }

    pub fn negated(&self) -> ChainElement {
        ChainElement {
            rank: self.rank,
            inner: self.inner.negated(),
        }
    }

    pub fn scaled(&self, f: &Polynomial) -> ChainElement {
        ChainElement {
            rank: self.rank,
            inner: self.inner.scaled(f),
        }
    }

    pub fn inner(&self) -> &Graded<ModuleElement> {
        &self.inner
    }
}

fn sign_of(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The Poisson boundary, extended linearly:
///
/// ```text
/// d(m (x) dx_I) = sum_a (-1)^a {m, x_{i_a}}_M (x) dx_{I - i_a}
///   + sum_{a<b} (-1)^{a+b} m (x) d{x_{i_a}, x_{i_b}} ^ dx_{I - i_a - i_b}
/// ```
///
/// with positions counted from 0.
pub fn chain_boundary(module: &PoissonModule, e: &ChainElement) -> ChainElement {
    let n = module.ring_dim();
    let p = e.degree();
    if p == 0 {
        return ChainElement::zero(n, module.rank(), 0);
    }
    let h = module.structure().matrix();
    let mut out = ChainElement::zero(n, module.rank(), p - 1);
    for (w, m) in e.iter() {
        let idx = w.indices();
        for a in 0..p {
            let bm = module.bracket_with_generator(m, idx[a]);
            out.add_term(w.remove_at(a), sign_of(a), bm);
        }
        for a in 0..p {
            for b in a + 1..p {
                let hab = &h[idx[a]][idx[b]];
                if hab.is_zero() {
                    continue;
                }
                let rest = w.remove_at(b).remove_at(a);
                for l in 0..n {
                    if rest.contains(l) {
                        continue;
                    }
                    let dh = hab.partial(l);
                    if dh.is_zero() {
                        continue;
                    }
                    let (target, s) = Wedge::single(l).concat(&rest).expect("l not in rest");
                    out.add_term(target, s * sign_of(a + b), m.scaled(&dh));
                }
            }
        }
    }
    out
}

/// The Poisson coboundary on the stored values of `F`:
///
/// ```text
/// dF(x_J) = sum_a (-1)^(a+1) {F(x_{J - j_a}), x_{j_a}}_M
///   + sum_{a<b} (-1)^{a+b} F({x_{j_a}, x_{j_b}}, x_{J - j_a - j_b})
/// ```
///
/// with positions counted from 0.
pub fn cochain_differential(module: &PoissonModule, f: &Multiderivation) -> Multiderivation {
    let n = module.ring_dim();
    let p = f.degree();
    let h = module.structure().matrix();
    let mut out = Multiderivation::zero(n, module.rank(), p + 1);
    if p + 1 > n || f.is_zero() {
        return out;
    }
    for j in Wedge::subsets(n, p + 1) {
        let idx = j.indices();
        let mut acc = module.zero_element();
        for a in 0..=p {
            let v = f.value(&j.remove_at(a));
            if v.is_zero() {
                continue;
            }
            let b = module.bracket_with_generator(&v, idx[a]);
            let b = if sign_of(a + 1) < 0 { b.negated() } else { b };
            acc.add_assign(&b);
        }
        for a in 0..=p {
            for b in a + 1..=p {
                let hab = &h[idx[a]][idx[b]];
                if hab.is_zero() {
                    continue;
                }
                let rest = j.remove_at(b).remove_at(a);
                for l in 0..n {
                    let dh = hab.partial(l);
                    if dh.is_zero() {
                        continue;
                    }
                    let mut args = vec![l];
                    args.extend_from_slice(rest.indices());
                    let v = f.value_unsorted(args);
                    if v.is_zero() {
                        continue;
                    }
                    let v = v.scaled(&dh);
                    acc.add_assign(&if sign_of(a + b) < 0 { v.negated() } else { v });
                }
            }
        }
        out.set(j, acc);
    }
    out
}

/// Basis chains `(mono e_k) (x) dx_I` with `|I| = p`, for the given
/// coefficient monomials. Ordered by `I`, then monomial, then `k`.
pub fn chain_basis(module: &PoissonModule, p: usize, monomials: &[Monomial]) -> Vec<ChainElement> {
    let n = module.ring_dim();
    let r = module.rank();
    let mut out = Vec::new();
    for w in Wedge::subsets(n, p) {
        for mono in monomials {
            for k in 0..r {
                let f = Polynomial::monomial(n, mono.clone(), Rational::one());
                out.push(ChainElement::term(n, w.clone(), ModuleElement::basis(n, r, k, f)));
            }
        }
    }
    out
}

/// Basis multiderivations with the single value `mono e_k` on `x_I`.
pub fn cochain_basis(module: &PoissonModule, p: usize, monomials: &[Monomial]) -> Vec<Multiderivation> {
    let n = module.ring_dim();
    let r = module.rank();
    let mut out = Vec::new();
    for w in Wedge::subsets(n, p) {
        for mono in monomials {
            for k in 0..r {
                let f = Polynomial::monomial(n, mono.clone(), Rational::one());
                out.push(Multiderivation::term(n, w.clone(), ModuleElement::basis(n, r, k, f)));
            }
        }
    }
    out
}

/// A basis element on which `d o d` does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub enum SquareFailure {
    Chain { input: ChainElement, result: ChainElement },
    Cochain { input: Multiderivation, result: Multiderivation },
}

/// Checks `d o d = 0` on chains and cochains of every degree, over all
/// basis elements whose coefficient monomial has weighted degree at most
/// `max_degree`.
pub fn complex_squared_check(module: &PoissonModule, max_degree: i64) -> Result<(), SquareFailure> {
    let n = module.ring_dim();
    for p in 0..=n {
        boundary_squared_check(module, p, max_degree)?;
        coboundary_squared_check(module, p, max_degree)?;
    }
    Ok(())
}

pub fn boundary_squared_check(module: &PoissonModule, p: usize, max_degree: i64) -> Result<(), SquareFailure> {
    let monos = Monomial::up_to_weighted_degree(module.structure().ring().weights(), max_degree);
    chain_basis(module, p, &monos)
        .into_par_iter()
        .map(|e| {
            let dd = chain_boundary(module, &chain_boundary(module, &e));
            if dd.is_zero() {
                Ok(())
            } else {
                Err(SquareFailure::Chain { input: e, result: dd })
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|_| ())
}

pub fn coboundary_squared_check(module: &PoissonModule, p: usize, max_degree: i64) -> Result<(), SquareFailure> {
    let monos = Monomial::up_to_weighted_degree(module.structure().ring().weights(), max_degree);
    cochain_basis(module, p, &monos)
        .into_par_iter()
        .map(|f| {
            let dd = cochain_differential(module, &cochain_differential(module, &f));
            if dd.is_zero() {
                Ok(())
            } else {
                Err(SquareFailure::Cochain { input: f, result: dd })
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|_| ())
}
