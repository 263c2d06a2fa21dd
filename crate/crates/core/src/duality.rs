//! The isomorphisms `X^p(M) -> M (x) Omega^{n-p}(R)` and the commuting
//! square between the cochain differential of `M` and the chain boundary of
//! the modular twist `M_t`.

use rayon::prelude::*;

use crate::complexes::{chain_boundary, cochain_basis, cochain_differential, ChainElement};
use crate::exterior::{contract_multivector, Coefficient, DiffForm, Multiderivation, Multivector, Wedge};
use crate::module::{ModuleElement, PoissonModule};
use crate::poly::{Monomial, Polynomial};

/// `(-1)^{p(p+1)/2}`: `+, -, -, +, +, -, ..` for `p = 0, 1, 2, ..`.
pub fn dag_sign(p: usize) -> i8 {
    if (p * (p + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Shuffle sum `sum_A sgn(A, A^c) F(x_A) (x) dx_{A^c}`.
pub fn ddag(f: &Multiderivation) -> ChainElement {
    let n = f.ring_dim();
    let p = f.degree();
    assert!(p <= n, "multiderivation degree exceeds the ring dimension");
    let mut out = ChainElement::zero(n, f.rank(), n - p);
    for (a, m) in f.iter() {
        let c = a.complement(n);
        let (_, s) = a.concat(&c).expect("disjoint");
        out.add_term(c, s, m.clone());
    }
    out
}

pub fn dag(f: &Multiderivation) -> ChainElement {
    let e = ddag(f);
    if dag_sign(f.degree()) < 0 {
        e.negated()
    } else {
        e
    }
}

/// Inverse of [`dag`]: each module coordinate `Q_k` of `E` is sent to
/// `iota_{Q_k} eta*`, then the sign of `dag` is undone.
pub fn dag_inverse(e: &ChainElement) -> Multiderivation {
    let n = e.ring_dim();
    let r = e.rank();
    let p = n - e.degree();
    let vol = Multivector::volume(n);
    let mut out = Multiderivation::zero(n, r, p);
    for k in 0..r {
        let mut q = DiffForm::zero(n, e.degree());
        for (w, m) in e.iter() {
            q = q.add(&DiffForm::term(n, w.clone(), m.coord(k).clone()));
        }
        let g = contract_multivector(&q, &vol);
        for (a, f) in g.iter() {
            let v = ModuleElement::basis(n, r, k, f.clone());
            let v = if dag_sign(p) < 0 { v.negated() } else { v };
            out.add_unsorted(a.indices().to_vec(), v);
        }
    }
    out
}

/// A basis cochain on which the square fails to commute.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityFailure {
    pub input: Multiderivation,
    /// `dag(delta F)`, computed in `M`.
    pub left: ChainElement,
    /// `boundary(dag F)`, computed in `M_t`.
    pub right: ChainElement,
}

/// Checks `dag o delta^p = boundary_{n-p} o dag` (boundary in `M_t`) on every
/// basis cochain of degree `p` whose value is a monomial of weighted degree at
/// most `max_degree`. For `p >= n` both sides vanish and nothing is checked.
pub fn verify_duality_square(module: &PoissonModule, p: usize, max_degree: i64) -> Result<usize, DualityFailure> {
    if p >= module.ring_dim() {
        return Ok(0);
    }
    let twisted = module.modular_twist();
    let monos = Monomial::up_to_weighted_degree(module.structure().ring().weights(), max_degree);
    let basis = cochain_basis(module, p, &monos);
    let count = basis.len();
    basis
        .into_par_iter()
        .map(|f| {
            let left = dag(&cochain_differential(module, &f));
            let right = chain_boundary(&twisted, &dag(&f));
            if left == right {
                Ok(())
            } else {
                Err(DualityFailure { input: f, left, right })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(count)
}

/// Runs [`verify_duality_square`] for every `p` in `0..n`, returning the
/// number of basis elements checked.
pub fn verify_duality_all(module: &PoissonModule, max_degree: i64) -> Result<usize, DualityFailure> {
    (0..module.ring_dim())
        .map(|p| verify_duality_square(module, p, max_degree))
        .sum()
}

/// Convenience for a scalar-valued cochain on the regular module.
pub fn scalar_cochain(n: usize, w: Wedge, f: Polynomial) -> Multiderivation {
    Multiderivation::term(n, w, ModuleElement::from_coords(vec![f]))
}
