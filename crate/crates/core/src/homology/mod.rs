//! Dimensions of Poisson homology and cohomology, slice by slice.
//!
//! Chains `f e_k (x) dx_I` have weight `deg f + wt(I)`; cochains with value
//! `f e_k` on `x_I` have internal degree `deg f - wt(I)`. For a homogeneous
//! structure and module with shift `s`, the boundary maps weight `d` to
//! `d + s` and the coboundary maps internal degree `d` to `d + s`.

pub mod linalg;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use linalg::{kernel_basis, rank_exact, rref, Matrix};

use crate::complexes::{chain_boundary, cochain_differential, ChainElement};
use crate::exterior::{Multiderivation, Wedge};
use crate::module::{ModuleElement, PoissonModule};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "exact-graded")]
    ExactGraded,
    #[serde(rename = "filtered-approximate")]
    FilteredApproximate,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ExactGraded => "exact-graded",
            Mode::FilteredApproximate => "filtered-approximate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Homology,
    Cohomology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub p: usize,
    pub d: i64,
    pub dim: usize,
}

/// Dimensions per `(p, d)`. In filtered mode `d` bounds the weight from
/// above and the numbers are approximations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub schema_version: u32,
    pub kind: Kind,
    pub mode: Mode,
    pub entries: Vec<BettiEntry>,
    pub truncation: i64,
}

impl BettiTable {
    pub fn get(&self, p: usize, d: i64) -> Option<usize> {
        self.entries.iter().find(|e| e.p == p && e.d == d).map(|e| e.dim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(
        "exact graded mode needs a weight-homogeneous bracket and module action; \
         use filtered mode, or top-kernel / casimirs for exact kernels"
    )]
    NotHomogeneous,
    #[error("degree {p} is out of range for {n} variables")]
    DegreeOutOfRange { p: usize, n: usize },
}

/// Basis element `x^monomial e_coord` placed on the wedge `x_I` or `dx_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub wedge: Wedge,
    pub monomial: Monomial,
    pub coord: usize,
}

impl BasisLabel {
    fn value(&self, module: &PoissonModule) -> ModuleElement {
        let n = module.ring_dim();
        let f = Polynomial::monomial(n, self.monomial.clone(), Rational::one());
        ModuleElement::basis(n, module.rank(), self.coord, f)
    }

    pub fn chain(&self, module: &PoissonModule) -> ChainElement {
        ChainElement::term(module.ring_dim(), self.wedge.clone(), self.value(module))
    }

    pub fn cochain(&self, module: &PoissonModule) -> Multiderivation {
        Multiderivation::term(module.ring_dim(), self.wedge.clone(), self.value(module))
    }

    /// `x*y^2 e1 dx^dz` style, with `e` omitted for rank one.
    pub fn show(&self, ring: &Ring, rank: usize, symbol: &str) -> String {
        let mono = Polynomial::monomial(ring.dim(), self.monomial.clone(), Rational::one());
        let mut s = ring.show(&mono);
        if rank > 1 {
            s = format!("{s} e{}", self.coord + 1);
        }
        if !self.wedge.is_empty() {
            s = format!("{s} {}", self.wedge.display(ring.names(), symbol));
        }
        s
    }
}

fn labels_with(module: &PoissonModule, p: usize, degree_of: impl Fn(&Wedge) -> Vec<Monomial>) -> Vec<BasisLabel> {
    let mut out = Vec::new();
    for w in Wedge::subsets(module.ring_dim(), p) {
        for m in degree_of(&w) {
            for k in 0..module.rank() {
                out.push(BasisLabel {
                    wedge: w.clone(),
                    monomial: m.clone(),
                    coord: k,
                });
            }
        }
    }
    out
}

/// Chain basis of degree `p` and weight `d`.
pub fn chain_slice_basis(module: &PoissonModule, p: usize, d: i64) -> Vec<BasisLabel> {
    let w = module.structure().ring().weights().to_vec();
    if p > module.ring_dim() {
        return Vec::new();
    }
    labels_with(module, p, |i| Monomial::with_weighted_degree(&w, d - i.weight(&w)))
}

/// Cochain basis of degree `p` and internal degree `d`.
pub fn cochain_slice_basis(module: &PoissonModule, p: usize, d: i64) -> Vec<BasisLabel> {
    let w = module.structure().ring().weights().to_vec();
    if p > module.ring_dim() {
        return Vec::new();
    }
    labels_with(module, p, |i| Monomial::with_weighted_degree(&w, d + i.weight(&w)))
}

/// Chains of degree `p` and weight at most `d`.
pub fn chain_filtered_basis(module: &PoissonModule, p: usize, d: i64) -> Vec<BasisLabel> {
    let w = module.structure().ring().weights().to_vec();
    if p > module.ring_dim() {
        return Vec::new();
    }
    labels_with(module, p, |i| Monomial::up_to_weighted_degree(&w, d - i.weight(&w)))
}

/// Cochains of degree `p` and internal degree at most `d`.
pub fn cochain_filtered_basis(module: &PoissonModule, p: usize, d: i64) -> Vec<BasisLabel> {
    let w = module.structure().ring().weights().to_vec();
    if p > module.ring_dim() {
        return Vec::new();
    }
    labels_with(module, p, |i| Monomial::up_to_weighted_degree(&w, d + i.weight(&w)))
}

fn coords_of<'a>(terms: impl Iterator<Item = (&'a Wedge, &'a ModuleElement)>) -> Vec<(BasisLabel, Rational)> {
    let mut out = Vec::new();
    for (w, m) in terms {
        for (k, f) in m.coords().iter().enumerate() {
            for (mono, c) in f.terms() {
                out.push((
                    BasisLabel {
                        wedge: w.clone(),
                        monomial: mono.clone(),
                        coord: k,
                    },
                    c.clone(),
                ));
            }
        }
    }
    out
}

pub fn chain_coords(e: &ChainElement) -> Vec<(BasisLabel, Rational)> {
    coords_of(e.iter())
}

pub fn cochain_coords(f: &Multiderivation) -> Vec<(BasisLabel, Rational)> {
    coords_of(f.iter())
}

/// The matrix of a differential between two bases, columns indexed by the
/// domain.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSlice {
    pub kind: Kind,
    pub p: usize,
    pub d: i64,
    pub domain: Vec<BasisLabel>,
    pub codomain: Vec<BasisLabel>,
    pub matrix: Matrix,
}

impl GradedSlice {
    pub fn rank(&self) -> usize {
        rank_exact(&self.matrix)
    }

    pub fn dump(&self, module: &PoissonModule) -> SliceDump {
        let ring = module.structure().ring();
        let symbol = match self.kind {
            Kind::Homology => "d",
            Kind::Cohomology => "D",
        };
        let show = |ls: &[BasisLabel]| ls.iter().map(|l| l.show(ring, module.rank(), symbol)).collect();
        SliceDump {
            kind: self.kind,
            p: self.p,
            d: self.d,
            domain: show(&self.domain),
            codomain: show(&self.codomain),
            rows: self
                .matrix
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

/// Printable form of a [`GradedSlice`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDump {
    pub kind: Kind,
    pub p: usize,
    pub d: i64,
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Builds the matrix of `image` on `domain`. With a fixed codomain every
/// image coordinate must be found there; otherwise the codomain grows as
/// labels are met, in first-seen order.
fn assemble(
    domain: &[BasisLabel],
    codomain: Option<Vec<BasisLabel>>,
    image: impl Fn(&BasisLabel) -> Vec<(BasisLabel, Rational)> + Sync,
) -> (Matrix, Vec<BasisLabel>) {
    let images: Vec<Vec<(BasisLabel, Rational)>> = domain.par_iter().map(&image).collect();
    let fixed = codomain.is_some();
    let mut codomain = codomain.unwrap_or_default();
    let mut index: HashMap<BasisLabel, usize> =
        codomain.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut columns = Vec::with_capacity(images.len());
    for img in images {
        let mut col = std::collections::BTreeMap::new();
        for (label, c) in img {
            let i = match index.get(&label) {
                Some(&i) => i,
                None => {
                    assert!(!fixed, "differential left its graded slice at {label:?}");
                    codomain.push(label.clone());
                    index.insert(label, codomain.len() - 1);
                    codomain.len() - 1
                }
            };
            let e: &mut Rational = col.entry(i).or_insert_with(Rational::zero);
            *e += c;
        }
        columns.push(col);
    }
    (Matrix::from_columns(codomain.len(), columns), codomain)
}

fn exact_shift(module: &PoissonModule) -> Result<i64, HomologyError> {
    module.grading_shift().ok_or(HomologyError::NotHomogeneous)
}

/// Matrix of the boundary from chains `(p, d)` to `(p - 1, d + s)`.
pub fn boundary_slice(module: &PoissonModule, p: usize, d: i64) -> Result<GradedSlice, HomologyError> {
    let s = exact_shift(module)?;
    let domain = chain_slice_basis(module, p, d);
    let codomain = if p == 0 {
        Vec::new()
    } else {
        chain_slice_basis(module, p - 1, d + s)
    };
    let (matrix, codomain) = assemble(&domain, Some(codomain), |l| {
        chain_coords(&chain_boundary(module, &l.chain(module)))
    });
    Ok(GradedSlice {
        kind: Kind::Homology,
        p,
        d,
        domain,
        codomain,
        matrix,
    })
}

/// Matrix of the coboundary from cochains `(p, d)` to `(p + 1, d + s)`.
pub fn coboundary_slice(module: &PoissonModule, p: usize, d: i64) -> Result<GradedSlice, HomologyError> {
    let s = exact_shift(module)?;
    let domain = cochain_slice_basis(module, p, d);
    let codomain = cochain_slice_basis(module, p + 1, d + s);
    let (matrix, codomain) = assemble(&domain, Some(codomain), |l| {
        cochain_coords(&cochain_differential(module, &l.cochain(module)))
    });
    Ok(GradedSlice {
        kind: Kind::Cohomology,
        p,
        d,
        domain,
        codomain,
        matrix,
    })
}

fn filtered_boundary_rank(module: &PoissonModule, p: usize, d: i64) -> usize {
    if p == 0 {
        return 0;
    }
    let domain = chain_filtered_basis(module, p, d);
    let (m, _) = assemble(&domain, None, |l| chain_coords(&chain_boundary(module, &l.chain(module))));
    rank_exact(&m)
}

fn filtered_coboundary_rank(module: &PoissonModule, p: usize, d: i64) -> usize {
    let domain = cochain_filtered_basis(module, p, d);
    let (m, _) = assemble(&domain, None, |l| {
        cochain_coords(&cochain_differential(module, &l.cochain(module)))
    });
    rank_exact(&m)
}

/// Ranks of a family of slices, computed once each and in parallel.
fn ranks(keys: HashSet<(usize, i64)>, f: impl Fn(usize, i64) -> usize + Sync) -> HashMap<(usize, i64), usize> {
    let keys: Vec<_> = keys.into_iter().collect();
    keys.into_par_iter().map(|(p, d)| ((p, d), f(p, d))).collect()
}

fn check_degrees(module: &PoissonModule, ps: &[usize]) -> Result<(), HomologyError> {
    let n = module.ring_dim();
    match ps.iter().find(|&&p| p > n) {
        Some(&p) => Err(HomologyError::DegreeOutOfRange { p, n }),
        None => Ok(()),
    }
}

/// `dim PH_p(R, M)` for each `p` in `ps` and `d` in `degrees`.
///
/// Exact mode reports the weight-`d` slice. Filtered mode reports
/// `dim(ker d_p on weight <= d) - rank(d_{p+1} on weight <= d - t)` where
/// `t` bounds how far the boundary can raise weight.
pub fn ph_homology(
    module: &PoissonModule,
    ps: &[usize],
    degrees: RangeInclusive<i64>,
    mode: Mode,
) -> Result<BettiTable, HomologyError> {
    check_degrees(module, ps)?;
    let slots: Vec<(usize, i64)> = ps.iter().flat_map(|&p| degrees.clone().map(move |d| (p, d))).collect();
    let entries = match mode {
        Mode::ExactGraded => {
            let s = exact_shift(module)?;
            let mut keys = HashSet::new();
            for &(p, d) in &slots {
                keys.insert((p, d));
                keys.insert((p + 1, d - s));
            }
            let r = ranks(keys, |p, d| boundary_slice(module, p, d).map(|sl| sl.rank()).unwrap());
            slots
                .iter()
                .map(|&(p, d)| BettiEntry {
                    p,
                    d,
                    dim: chain_slice_basis(module, p, d).len() - r[&(p, d)] - r[&(p + 1, d - s)],
                })
                .collect()
        }
        Mode::FilteredApproximate => {
            let t = module.filtration_shift();
            let mut keys = HashSet::new();
            for &(p, d) in &slots {
                keys.insert((p, d));
                keys.insert((p + 1, d - t));
            }
            let r = ranks(keys, |p, d| filtered_boundary_rank(module, p, d));
            slots
                .iter()
                .map(|&(p, d)| BettiEntry {
                    p,
                    d,
                    dim: chain_filtered_basis(module, p, d).len() - r[&(p, d)] - r[&(p + 1, d - t)],
                })
                .collect()
        }
    };
    Ok(BettiTable {
        schema_version: SCHEMA_VERSION,
        kind: Kind::Homology,
        mode,
        entries,
        truncation: *degrees.end(),
    })
}

/// `dim PH^p(R, M)` for each `p` in `ps` and internal degree `d` in
/// `degrees`; filtered mode as in [`ph_homology`].
pub fn ph_cohomology(
    module: &PoissonModule,
    ps: &[usize],
    degrees: RangeInclusive<i64>,
    mode: Mode,
) -> Result<BettiTable, HomologyError> {
    check_degrees(module, ps)?;
    let slots: Vec<(usize, i64)> = ps.iter().flat_map(|&p| degrees.clone().map(move |d| (p, d))).collect();
    let entries = match mode {
        Mode::ExactGraded => {
            let s = exact_shift(module)?;
            let mut keys = HashSet::new();
            for &(p, d) in &slots {
                keys.insert((p, d));
                if p > 0 {
                    keys.insert((p - 1, d - s));
                }
            }
            let r = ranks(keys, |p, d| coboundary_slice(module, p, d).map(|sl| sl.rank()).unwrap());
            slots
                .iter()
                .map(|&(p, d)| {
                    let incoming = if p > 0 { r[&(p - 1, d - s)] } else { 0 };
                    BettiEntry {
                        p,
                        d,
                        dim: cochain_slice_basis(module, p, d).len() - r[&(p, d)] - incoming,
                    }
                })
                .collect()
        }
        Mode::FilteredApproximate => {
            let t = module.filtration_shift();
            let mut keys = HashSet::new();
            for &(p, d) in &slots {
                keys.insert((p, d));
                if p > 0 {
                    keys.insert((p - 1, d - t));
                }
            }
            let r = ranks(keys, |p, d| filtered_coboundary_rank(module, p, d));
            slots
                .iter()
                .map(|&(p, d)| {
                    let incoming = if p > 0 { r[&(p - 1, d - t)] } else { 0 };
                    BettiEntry {
                        p,
                        d,
                        dim: cochain_filtered_basis(module, p, d).len() - r[&(p, d)] - incoming,
                    }
                })
                .collect()
        }
    };
    Ok(BettiTable {
        schema_version: SCHEMA_VERSION,
        kind: Kind::Cohomology,
        mode,
        entries,
        truncation: *degrees.end(),
    })
}

fn kernel_elements(
    module: &PoissonModule,
    domain: &[BasisLabel],
    image: impl Fn(&BasisLabel) -> Vec<(BasisLabel, Rational)> + Sync,
) -> Vec<ModuleElement> {
    let (m, _) = assemble(domain, None, image);
    let n = module.ring_dim();
    kernel_basis(&m)
        .into_iter()
        .map(|v| {
            let mut coords = vec![Polynomial::zero(n); module.rank()];
            for (label, c) in domain.iter().zip(v) {
                if !c.is_zero() {
                    coords[label.coord].add_term(label.monomial.clone(), c);
                }
            }
            ModuleElement::from_coords(coords)
        })
        .collect()
}

/// Domain basis for kernel searches: monomials of weight at most `bound`,
/// highest first, so that the echelon basis is led by top terms.
fn bounded_labels(module: &PoissonModule, wedge: Wedge, bound: i64) -> Vec<BasisLabel> {
    let w = module.structure().ring().weights();
    let mut monos = Monomial::up_to_weighted_degree(w, bound);
    monos.sort_by(|a, b| b.weighted_degree(w).cmp(&a.weighted_degree(w)).then(b.cmp(a)));
    let mut out = Vec::new();
    for m in monos {
        for k in 0..module.rank() {
            out.push(BasisLabel {
                wedge: wedge.clone(),
                monomial: m.clone(),
                coord: k,
            });
        }
    }
    out
}

/// Basis of `{m : boundary(m (x) eta) = 0}` among `m` of weight at most
/// `bound`. Exact for any structure; it only certifies that no further
/// kernel elements exist up to the bound.
pub fn top_kernel(module: &PoissonModule, bound: i64) -> Vec<ModuleElement> {
    let domain = bounded_labels(module, Wedge::full(module.ring_dim()), bound);
    kernel_elements(module, &domain, |l| {
        chain_coords(&chain_boundary(module, &l.chain(module)))
    })
}

/// Basis of the Casimir elements `{m : {m, x_i}_M = 0 for all i}` of weight
/// at most `bound`.
pub fn casimirs(module: &PoissonModule, bound: i64) -> Vec<ModuleElement> {
    let domain = bounded_labels(module, Wedge::empty(), bound);
    kernel_elements(module, &domain, |l| {
        cochain_coords(&cochain_differential(module, &l.cochain(module)))
    })
}

/// One slice of the comparison `PH^p(R, M)_d` against `PH_{n-p}(R, M_t)_{d+W}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityEntry {
    pub p: usize,
    pub d: i64,
    pub cohomology: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityMismatch {
    pub entry: DualityEntry,
    pub slices: Vec<SliceDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub schema_version: u32,
    pub n: usize,
    /// `W`, the weight of the volume form.
    pub total_weight: i64,
    pub shift: i64,
    pub entries: Vec<DualityEntry>,
    pub mismatches: Vec<DualityMismatch>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `dim PH^p(R, M)` at internal degree `d` with
/// `dim PH_{n-p}(R, M_t)` at weight `d + W` for all `p` and all `d` in
/// `degrees`.
pub fn duality_table_check(module: &PoissonModule, degrees: RangeInclusive<i64>) -> Result<DualityReport, HomologyError> {
    let n = module.ring_dim();
    let s = exact_shift(module)?;
    let twisted = module.modular_twist();
    let w = module.structure().ring().total_weight();
    let ps: Vec<usize> = (0..=n).collect();
    let lo = *degrees.start();
    let hi = *degrees.end();
    let coh = ph_cohomology(module, &ps, degrees, Mode::ExactGraded)?;
    let hom = ph_homology(&twisted, &ps, lo + w..=hi + w, Mode::ExactGraded)?;
    let mut entries = Vec::new();
    let mut mismatches = Vec::new();
    for p in 0..=n {
        for d in lo..=hi {
            let entry = DualityEntry {
                p,
                d,
                cohomology: coh.get(p, d).unwrap(),
                homology: hom.get(n - p, d + w).unwrap(),
            };
            if entry.cohomology != entry.homology {
                let mut slices = vec![coboundary_slice(module, p, d)?.dump(module)];
                if p > 0 {
                    slices.push(coboundary_slice(module, p - 1, d - s)?.dump(module));
                }
                slices.push(boundary_slice(&twisted, n - p, d + w)?.dump(&twisted));
                slices.push(boundary_slice(&twisted, n - p + 1, d + w - s)?.dump(&twisted));
                mismatches.push(DualityMismatch {
                    entry: entry.clone(),
                    slices,
                });
            }
            entries.push(entry);
        }
    }
    Ok(DualityReport {
        schema_version: SCHEMA_VERSION,
        n,
        total_weight: w,
        shift: s,
        entries,
        mismatches,
    })
}

/// Euler characteristics of the chain complex and of its homology along the
/// diagonal `{(p, e - p s)}`, which the boundary preserves.
pub fn euler_check(module: &PoissonModule, e: i64) -> Result<(i64, i64), HomologyError> {
    let s = exact_shift(module)?;
    let n = module.ring_dim();
    let ps: Vec<usize> = (0..=n).collect();
    let mut chain = 0i64;
    let mut homology = 0i64;
    for &p in &ps {
        let d = e - p as i64 * s;
        let sign = if p % 2 == 0 { 1 } else { -1 };
        chain += sign * chain_slice_basis(module, p, d).len() as i64;
        homology += sign * ph_homology(module, &[p], d..=d, Mode::ExactGraded)?.entries[0].dim as i64;
    }
    Ok((chain, homology))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::PoissonStructure;
    use std::sync::Arc;

    fn xyz() -> Ring {
        Ring::with_names(&["x", "y", "z"])
    }

    fn structure(pairs: &[((usize, usize), &str)]) -> Arc<PoissonStructure> {
        let r = xyz();
        let entries: Vec<_> = pairs.iter().map(|&(ij, s)| (ij, r.parse(s).unwrap())).collect();
        Arc::new(PoissonStructure::from_upper(r, entries).unwrap())
    }

    fn example() -> PoissonModule {
        PoissonModule::regular(structure(&[((1, 2), "y"), ((0, 2), "1")]))
    }

    fn so3() -> PoissonModule {
        PoissonModule::regular(structure(&[((0, 1), "z"), ((1, 2), "x"), ((0, 2), "-y")]))
    }

    fn binom(n: i64, k: i64) -> usize {
        if k < 0 || n < k {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1)) as usize
    }

    #[test]
    fn zero_structure_homology_is_chains() {
        let m = PoissonModule::regular(structure(&[]));
        let t = ph_homology(&m, &[0, 1, 2, 3], 0..=4, Mode::ExactGraded).unwrap();
        for e in &t.entries {
            let want = binom(3, e.p as i64) * binom(e.d - e.p as i64 + 2, 2);
            assert_eq!(e.dim, want, "p={} d={}", e.p, e.d);
        }
    }

    #[test]
    fn inhomogeneous_needs_filtered_mode() {
        let m = example();
        assert_eq!(
            ph_homology(&m, &[1], 0..=2, Mode::ExactGraded),
            Err(HomologyError::NotHomogeneous)
        );
        let t = ph_homology(&m, &[3], 0..=2, Mode::FilteredApproximate).unwrap();
        assert_eq!(t.mode, Mode::FilteredApproximate);
        assert!(t.entries.iter().all(|e| e.dim == 0));
    }

    #[test]
    fn example_kernels() {
        let m = example();
        assert!(top_kernel(&m, 6).is_empty());
        let k = top_kernel(&m.modular_twist(), 6);
        assert_eq!(k, vec![ModuleElement::from_coords(vec![Polynomial::one(3)])]);
        let c = casimirs(&m, 4);
        assert_eq!(c, vec![ModuleElement::from_coords(vec![Polynomial::one(3)])]);
    }

    #[test]
    fn so3_casimir() {
        let m = so3();
        let c = casimirs(&m, 2);
        let r = xyz();
        assert_eq!(c.len(), 2);
        assert!(c.contains(&ModuleElement::from_coords(vec![r.parse("x^2 + y^2 + z^2").unwrap()])));
        let t = ph_cohomology(&m, &[0], 0..=4, Mode::ExactGraded).unwrap();
        let dims: Vec<usize> = t.entries.iter().map(|e| e.dim).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn euler_and_duality_so3() {
        let m = so3();
        for e in -2..=5 {
            let (a, b) = euler_check(&m, e).unwrap();
            assert_eq!(a, b, "diagonal {e}");
        }
        let rep = duality_table_check(&m, -3..=3).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
    }

    #[test]
    fn json_round_trip() {
        let t = ph_homology(&so3(), &[0, 3], 0..=2, Mode::ExactGraded).unwrap();
        let s = t.to_json();
        assert!(s.contains("\"exact-graded\""));
        assert_eq!(BettiTable::from_json(&s).unwrap(), t);
    }
}
