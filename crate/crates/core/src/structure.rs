//! Poisson brackets on `k[x1..xn]` given by the matrix `h[i][j] = {x_i, x_j}`.
//!
//! Both the Jacobi identity and the Poisson-derivation condition are checked
//! on generators only. This is exact, not a sample: for a skew biderivation
//! the Jacobiator `J(f, g, h)` is a derivation in each argument, so it
//! vanishes identically iff it vanishes on all generator triples. Likewise
//! `D({f,g}) - {Df, g} - {f, Dg}` is a biderivation in `(f, g)` when `D` is a
//! derivation.

use std::fmt;

use thiserror::Error;

use crate::exterior::{contract_form, lie_derivative, DiffForm, Multivector};
use crate::poly::{determinant, Polynomial, Ring};

/// A derivation of `R`, stored by its values on the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    values: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(values: Vec<Polynomial>) -> Self {
        let n = values.len();
        assert!(values.iter().all(|v| v.ring_dim() == n), "ring dimension mismatch");
        Derivation { values }
    }

    pub fn zero(n: usize) -> Self {
        Derivation {
            values: vec![Polynomial::zero(n); n],
        }
    }

    pub fn ring_dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Polynomial {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    /// `D(f) = sum_l df/dx_l D(x_l)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.ring_dim());
        for (l, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                out += &(&f.partial(l) * v);
            }
        }
        out
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Polynomial) -> Derivation {
        Derivation::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn neg(&self) -> Derivation {
        Derivation::new(self.values.iter().map(|v| -v).collect())
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::vector_field(&self.values)
    }
}

/// Where the Jacobi identity fails: the generator triple `i < j < k` and the
/// nonzero cyclic sum `{{x_i,x_j},x_k} + {{x_j,x_k},x_i} + {{x_k,x_i},x_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Polynomial,
}

/// Where `D({x_i,x_j}) = {D x_i, x_j} + {x_i, D x_j}` fails.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationFailure {
    pub pair: (usize, usize),
    pub residual: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("bracket matrix must be {n}x{n}")]
    Shape { n: usize },
    #[error("bracket matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on generators {:?}", .0.triple)]
    Jacobi(JacobiFailure),
    #[error("Jacobian structure needs n >= 2 and n - 2 potentials")]
    PotentialCount,
    #[error("potential recovery needs exactly 3 variables, got {0}")]
    NotThreeDimensional(usize),
    #[error("structure is not unimodular")]
    NotUnimodular,
}

/// Validated Poisson structure on a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    ring: Ring,
    h: Vec<Vec<Polynomial>>,
    bracket_degree: Option<i64>,
}

/// Cyclic Jacobi sum on the generator triple `(i, j, k)` for an
/// antisymmetric matrix `h`.
pub fn jacobi_residual(h: &[Vec<Polynomial>], i: usize, j: usize, k: usize) -> Polynomial {
    let with_gen = |f: &Polynomial, g: usize| -> Polynomial {
        // {f, x_g} = sum_a df/dx_a h[a][g]
        let mut out = Polynomial::zero(h.len());
        for (a, row) in h.iter().enumerate() {
            if !row[g].is_zero() {
                out += &(&f.partial(a) * &row[g]);
            }
        }
        out
    };
    let mut r = with_gen(&h[i][j], k);
    r += &with_gen(&h[j][k], i);
    r += &with_gen(&h[k][i], j);
    r
}

/// Checks the Jacobi identity on every generator triple `i < j < k`.
pub fn jacobi_check(h: &[Vec<Polynomial>]) -> Result<(), JacobiFailure> {
    let n = h.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let residual = jacobi_residual(h, i, j, k);
                if !residual.is_zero() {
                    return Err(JacobiFailure {
                        triple: (i, j, k),
                        residual,
                    });
                }
            }
        }
    }
    Ok(())
}

impl PoissonStructure {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(ring: Ring, h: Vec<Vec<Polynomial>>) -> Result<Self, StructureError> {
        let n = ring.dim();
        if h.len() != n || h.iter().any(|r| r.len() != n || r.iter().any(|p| p.ring_dim() != n)) {
            return Err(StructureError::Shape { n });
        }
        for i in 0..n {
            for j in i..n {
                if h[i][j] != -&h[j][i] {
                    return Err(StructureError::NotAntisymmetric(i, j));
                }
            }
        }
        jacobi_check(&h).map_err(StructureError::Jacobi)?;
        let bracket_degree = shift_of(
            ring.weights(),
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| {
                (&h[i][j], ring.weights()[i] as i64 + ring.weights()[j] as i64)
            }),
        );
        Ok(PoissonStructure {
            ring,
            h,
            bracket_degree,
        })
    }

    /// Builds the matrix from the entries `{x_i, x_j}` with `i < j`;
    /// missing pairs are zero.
    pub fn from_upper(
        ring: Ring,
        entries: impl IntoIterator<Item = ((usize, usize), Polynomial)>,
    ) -> Result<Self, StructureError> {
        let n = ring.dim();
        let mut h = vec![vec![Polynomial::zero(n); n]; n];
        for ((i, j), p) in entries {
            if i >= n || j >= n || i == j {
                return Err(StructureError::Shape { n });
            }
            h[j][i] = -&p;
            h[i][j] = p;
        }
        PoissonStructure::new(ring, h)
    }

    pub fn zero(ring: Ring) -> Self {
        PoissonStructure::from_upper(ring, []).expect("zero structure is Poisson")
    }

    /// Generalized Jacobian structure `{f, g} = u J(f, g, f_3, .., f_n)`.
    pub fn gjps(ring: Ring, potentials: &[Polynomial], u: &Polynomial) -> Result<Self, StructureError> {
        let n = ring.dim();
        if n < 2 || potentials.len() + 2 != n {
            return Err(StructureError::PotentialCount);
        }
        let grads: Vec<Vec<Polynomial>> = potentials
            .iter()
            .map(|f| (0..n).map(|l| f.partial(l)).collect())
            .collect();
        let unit_row = |i: usize| -> Vec<Polynomial> {
            (0..n)
                .map(|l| if l == i { Polynomial::one(n) } else { Polynomial::zero(n) })
                .collect()
        };
        let mut h = vec![vec![Polynomial::zero(n); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let mut rows = vec![unit_row(i), unit_row(j)];
                rows.extend(grads.iter().cloned());
                let v = u * &determinant(&rows, n);
                h[j][i] = -&v;
                h[i][j] = v;
            }
        }
        PoissonStructure::new(ring, h)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.h
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.h[i][j]
    }

    /// The shift `s` with `deg {f, g} = deg f + deg g + s` for homogeneous
    /// `f, g`, if the structure is weight-homogeneous. The zero structure
    /// reports `Some(0)`.
    pub fn bracket_degree(&self) -> Option<i64> {
        self.bracket_degree
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().flatten().all(Polynomial::is_zero)
    }

    /// `{f, g} = sum_{i,j} df/dx_i dg/dx_j h[i][j]`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = self.dim();
        assert!(f.ring_dim() == n && g.ring_dim() == n, "ring dimension mismatch");
        let df: Vec<Polynomial> = (0..n).map(|i| f.partial(i)).collect();
        let dg: Vec<Polynomial> = (0..n).map(|j| g.partial(j)).collect();
        let mut out = Polynomial::zero(n);
        for i in 0..n {
            if df[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if dg[j].is_zero() || self.h[i][j].is_zero() {
                    continue;
                }
                out += &(&(&df[i] * &dg[j]) * &self.h[i][j]);
            }
        }
        out
    }

    /// `{f, x_j} = sum_i df/dx_i h[i][j]`.
    pub fn bracket_with_generator(&self, f: &Polynomial, j: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.dim());
        for i in 0..self.dim() {
            if !self.h[i][j].is_zero() {
                out += &(&f.partial(i) * &self.h[i][j]);
            }
        }
        out
    }

    pub fn jacobi_check(&self) -> Result<(), JacobiFailure> {
        jacobi_check(&self.h)
    }

    /// `H_f = {f, -}`.
    pub fn hamiltonian(&self, f: &Polynomial) -> Derivation {
        Derivation::new((0..self.dim()).map(|j| self.bracket_with_generator(f, j)).collect())
    }

    /// Modular derivation with respect to `dx1 ^ .. ^ dxn`:
    /// `phi(x_i) = sum_j d h[i][j] / dx_j`.
    pub fn modular_derivation(&self) -> Derivation {
        let n = self.dim();
        Derivation::new(
            (0..n)
                .map(|i| {
                    let mut acc = Polynomial::zero(n);
                    for j in 0..n {
                        acc += &self.h[i][j].partial(j);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `phi(f)` computed as `L_{H_f} eta / eta` in the exterior algebra,
    /// independently of [`PoissonStructure::modular_derivation`].
    pub fn modular_via_lie_derivative(&self, f: &Polynomial) -> Polynomial {
        let eta = DiffForm::volume(self.dim());
        let l = lie_derivative(&self.hamiltonian(f).to_multivector(), &eta);
        if l.is_zero() {
            return Polynomial::zero(self.dim());
        }
        l.volume_coefficient()
    }

    /// Unimodular in the polynomial case means the modular derivation is
    /// zero: the only units are constants, so log-Hamiltonian derivations
    /// `u^-1 H_u` all vanish.
    pub fn is_unimodular(&self) -> bool {
        self.modular_derivation().is_zero()
    }

    /// The Poisson bivector `pi`, coefficient `h[i][j]` on `d/dx_i ^ d/dx_j`.
    pub fn bivector(&self) -> Multivector {
        Multivector::bivector(&self.h)
    }

    /// `iota_pi(eta)`, used by the modular-form identities.
    pub fn bivector_contracted_volume(&self) -> DiffForm {
        contract_form(&self.bivector(), &DiffForm::volume(self.dim()))
    }

    /// Checks `D({x_i, x_j}) = {D x_i, x_j} + {x_i, D x_j}` on all pairs.
    pub fn poisson_derivation_check(&self, d: &Derivation) -> Result<(), DerivationFailure> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(&self.h[i][j]);
                let rhs = &self.bracket_with_generator(d.value(i), j)
                    - &self.bracket_with_generator(d.value(j), i);
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return Err(DerivationFailure {
                        pair: (i, j),
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_poisson_derivation(&self, d: &Derivation) -> bool {
        self.poisson_derivation_check(d).is_ok()
    }

    /// Recovers `w` with `h12 = dw/dx3`, `h13 = -dw/dx2`, `h23 = dw/dx1`
    /// for a unimodular structure in three variables.
    ///
    /// Integrates `h12` in `x3`, then corrects by a function of `(x1, x2)`
    /// so that `h13` matches, then by a function of `x1` so that `h23`
    /// matches. All integration constants are zero, so the result has no
    /// constant term.
    pub fn jps_potential_3d(&self) -> Result<Polynomial, StructureError> {
        if self.dim() != 3 {
            return Err(StructureError::NotThreeDimensional(self.dim()));
        }
        if !self.is_unimodular() {
            return Err(StructureError::NotUnimodular);
        }
        let (h12, h13, h23) = (&self.h[0][1], &self.h[0][2], &self.h[1][2]);
        let u = h12.integrate(2);
        // h13 + du/dx2 depends on (x1, x2) only
        let f = h13 + &u.partial(1);
        debug_assert!(f.is_free_of(2));
        let v = &u - &f.integrate(1);
        // h23 - dv/dx1 depends on x1 only
        let g = h23 - &v.partial(0);
        debug_assert!(g.is_free_of(1) && g.is_free_of(2));
        let w = &v + &g.integrate(0);
        debug_assert!(w.partial(2) == *h12 && w.partial(1) == -h13 && w.partial(0) == *h23);
        Ok(w)
    }

    /// `label(x)=.., label(y)=..` in the ring's variable names.
    pub fn show_derivation(&self, label: &str, d: &Derivation) -> String {
        d.values()
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{label}({})={}", self.ring.names()[i], self.ring.show(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Common shift `s` such that every nonzero entry is homogeneous of degree
/// `base + s`; `Some(0)` when there are no nonzero entries.
pub(crate) fn shift_of<'a>(
    weights: &[u32],
    entries: impl IntoIterator<Item = (&'a Polynomial, i64)>,
) -> Option<i64> {
    let mut shift = None;
    for (p, base) in entries {
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous(weights) {
            return None;
        }
        let s = p.weighted_degree(weights).unwrap() - base;
        match shift {
            None => shift = Some(s),
            Some(t) if t != s => return None,
            _ => {}
        }
    }
    Some(shift.unwrap_or(0))
}

/// Largest `deg(entry) - base` over nonzero entries: every differential
/// raises the weight filtration by at most this much.
pub(crate) fn max_shift<'a>(
    weights: &[u32],
    entries: impl IntoIterator<Item = (&'a Polynomial, i64)>,
) -> i64 {
    entries
        .into_iter()
        .filter_map(|(p, base)| p.weighted_degree(weights).map(|d| d - base))
        .max()
        .unwrap_or(0)
}

impl fmt::Display for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let mut first = true;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{{{},{}}} = {}", names[i], names[j], self.ring.show(&self.h[i][j]))?;
            }
        }
        Ok(())
    }
}
