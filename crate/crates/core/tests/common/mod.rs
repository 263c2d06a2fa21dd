//! Reference implementations written straight from the definitions, plus
//! fixtures and random generators shared by the integration tests.
//!
//! Nothing here calls the optimized differentials, wedge products or
//! contractions of the library. Forms are plain maps from increasing index
//! tuples to coefficients.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use poisson_core::exterior::{DiffForm, Multivector};
use poisson_core::input::{load_path, Loaded};
use poisson_core::{
    ChainElement, Derivation, ModuleElement, Monomial, Multiderivation, PoissonModule, PoissonStructure, Polynomial,
    Rational, Ring, Wedge,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Form = BTreeMap<Vec<usize>, Polynomial>;

pub const FIXTURES: &[&str] = &[
    "zero",
    "nonunimodular",
    "quadratic",
    "quadratic4",
    "so3",
    "solvable",
    "jps_xyz",
    "jps_cubic",
    "jps_mixed",
];

pub fn fixture(name: &str) -> Loaded {
    let path = format!("{}/fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    load_path(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `terms` monomials of total degree at most `max_deg`, coefficients
/// in -3..=3.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut exps = vec![0u32; n];
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        p.add_term(Monomial::from_exponents(exps), q(c));
    }
    p
}

pub fn random_element(rng: &mut ChaCha8Rng, n: usize, rank: usize, max_deg: u32) -> ModuleElement {
    ModuleElement::from_coords((0..rank).map(|_| random_poly(rng, n, max_deg, 3)).collect())
}

pub fn random_multiderivation(rng: &mut ChaCha8Rng, n: usize, rank: usize, p: usize, max_deg: u32) -> Multiderivation {
    let mut f = Multiderivation::zero(n, rank, p);
    for w in Wedge::subsets(n, p) {
        if rng.gen_bool(0.6) {
            f.set(w, random_element(rng, n, rank, max_deg));
        }
    }
    f
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize, max_deg: u32) -> Form {
    let mut out = Form::new();
    for w in Wedge::subsets(n, k) {
        let f = random_poly(rng, n, max_deg, 3);
        if !f.is_zero() {
            out.insert(w.indices().to_vec(), f);
        }
    }
    out
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-5i64..=5);
            a[i][j] = v;
            a[j][i] = -v;
        }
    }
    a
}

/// `{x_i, x_j} = a_ij x_i x_j`.
pub fn quadratic_structure(a: &[Vec<i64>]) -> PoissonStructure {
    let n = a.len();
    let h = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&Polynomial::var(n, i) * &Polynomial::var(n, j)).scale(&q(a[i][j])))
                .collect()
        })
        .collect();
    PoissonStructure::new(Ring::standard(n), h).expect("quadratic structures satisfy Jacobi")
}

/// A random combination of Hamiltonian derivations and the modular
/// derivation. Any derivation at all for the zero structure.
pub fn random_poisson_derivation(rng: &mut ChaCha8Rng, s: &PoissonStructure) -> Derivation {
    let n = s.dim();
    if s.is_zero() {
        return Derivation::new((0..n).map(|_| random_poly(rng, n, 2, 3)).collect());
    }
    let mut d = s.modular_derivation().scale(&Polynomial::from_int(n, rng.gen_range(-2..=2)));
    for _ in 0..2 {
        let g = random_poly(rng, n, 2, 3);
        d = d.add(&s.hamiltonian(&g));
    }
    d
}

/// Sorts `v` in place by adjacent swaps and returns the permutation sign,
/// or `None` on a repeated index.
pub fn sort_sign(v: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

pub fn gradient(a: &Polynomial) -> Vec<Polynomial> {
    (0..a.ring_dim()).map(|i| a.partial(i)).collect()
}

/// Every tuple in `0..n` of length `len`.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn add_to(form: &mut Form, key: Vec<usize>, c: Polynomial) {
    if c.is_zero() {
        return;
    }
    let e = form.entry(key.clone()).or_insert_with(|| Polynomial::zero(c.ring_dim()));
    *e += &c;
    if e.is_zero() {
        form.remove(&key);
    }
}

/// `da_1 ^ .. ^ da_p` by expanding over all index tuples.
pub fn wedge_of_exact(n: usize, grads: &[Vec<Polynomial>]) -> Form {
    let mut out = Form::new();
    for t in tuples(n, grads.len()) {
        let mut c = Polynomial::one(n);
        for (k, &i) in t.iter().enumerate() {
            c = &c * &grads[k][i];
            if c.is_zero() {
                break;
            }
        }
        if c.is_zero() {
            continue;
        }
        let mut key = t.clone();
        let Some(s) = sort_sign(&mut key) else { continue };
        add_to(&mut out, key, if s < 0 { -c } else { c });
    }
    out
}

pub fn oracle_wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::new();
    for (ka, fa) in a {
        for (kb, fb) in b {
            let mut key: Vec<usize> = ka.iter().chain(kb).copied().collect();
            let Some(s) = sort_sign(&mut key) else { continue };
            let c = fa * fb;
            add_to(&mut out, key, if s < 0 { -c } else { c });
        }
    }
    out
}

pub fn exact_form(a: &Polynomial) -> Form {
    let mut out = Form::new();
    for (i, g) in gradient(a).into_iter().enumerate() {
        add_to(&mut out, vec![i], g);
    }
    out
}

pub fn function_form(f: &Polynomial) -> Form {
    let mut out = Form::new();
    add_to(&mut out, vec![], f.clone());
    out
}

pub fn form_map(f: &DiffForm) -> Form {
    f.iter().map(|(w, c)| (w.indices().to_vec(), c.clone())).collect()
}

pub fn to_diff_form(n: usize, k: usize, f: &Form) -> DiffForm {
    let mut out = DiffForm::zero(n, k);
    for (key, c) in f {
        out = out.add(&DiffForm::term(n, Wedge::new(key.clone()), c.clone()));
    }
    out
}

pub fn form_scale(f: &Form, c: &Polynomial) -> Form {
    let mut out = Form::new();
    for (k, v) in f {
        add_to(&mut out, k.clone(), v * c);
    }
    out
}

pub fn form_add(a: &Form, b: &Form) -> Form {
    let mut out = a.clone();
    for (k, v) in b {
        add_to(&mut out, k.clone(), v.clone());
    }
    out
}

/// All permutations of `0..k`.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out
}

fn parity(perm: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `iota_P(omega)` as the sum over all permutations of the factors of
/// `omega` that are increasing on the first `p` and the last `k - p` slots.
pub fn oracle_contract(pv: &Multivector, omega: &Form) -> Form {
    let p = pv.degree();
    let mut out = Form::new();
    for (key, f) in omega {
        let k = key.len();
        if k < p {
            continue;
        }
        for perm in permutations(k) {
            if perm[..p].windows(2).any(|w| w[0] > w[1]) || perm[p..].windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let head: Vec<usize> = perm[..p].iter().map(|&s| key[s]).collect();
            let tail: Vec<usize> = perm[p..].iter().map(|&s| key[s]).collect();
            let coef = pv.coefficient(&Wedge::new(head));
            if coef.is_zero() {
                continue;
            }
            let c = &coef * f;
            add_to(&mut out, tail, if parity(&perm) < 0 { -c } else { c });
        }
    }
    out
}

/// `{f, g} = sum_ij df/dx_i dg/dx_j h_ij`.
pub fn oracle_bracket(s: &PoissonStructure, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = s.dim();
    let (gf, gg) = (gradient(f), gradient(g));
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        for j in 0..n {
            let t = &(&gf[i] * &gg[j]) * s.entry(i, j);
            out += &t;
        }
    }
    out
}

/// `{m, x_i}_M` read off the action matrices.
pub fn oracle_generator_action(module: &PoissonModule, m: &ModuleElement, i: usize) -> ModuleElement {
    let s = module.structure();
    let n = s.dim();
    let xi = Polynomial::var(n, i);
    let c = &module.action()[i];
    let coords = (0..module.rank())
        .map(|l| {
            let mut acc = oracle_bracket(s, m.coord(l), &xi);
            for k in 0..module.rank() {
                acc += &(m.coord(k) * &c[k][l]);
            }
            acc
        })
        .collect();
    ModuleElement::from_coords(coords)
}

/// `{m, a}_M` by writing each monomial of `a` as a product of variables
/// and applying `{m, uv} = {m, u} v + {m, v} u` factor by factor.
pub fn oracle_module_bracket(module: &PoissonModule, m: &ModuleElement, a: &Polynomial) -> ModuleElement {
    let n = module.ring_dim();
    let mut out = module.zero_element();
    for (mono, c) in a.terms() {
        let factors: Vec<usize> = (0..n)
            .flat_map(|i| std::iter::repeat_n(i, mono.exponent(i) as usize))
            .collect();
        for t in 0..factors.len() {
            let mut rest = Polynomial::constant(n, c.clone());
            for (u, &i) in factors.iter().enumerate() {
                if u != t {
                    rest = &rest * &Polynomial::var(n, i);
                }
            }
            out = out.add(&scale_element(&oracle_generator_action(module, m, factors[t]), &rest));
        }
    }
    out
}

pub fn scale_element(m: &ModuleElement, f: &Polynomial) -> ModuleElement {
    ModuleElement::from_coords(m.coords().iter().map(|c| c * f).collect())
}

pub fn neg_element(m: &ModuleElement) -> ModuleElement {
    ModuleElement::from_coords(m.coords().iter().map(|c| -c).collect())
}

fn chain_from(n: usize, rank: usize, degree: usize, m: &ModuleElement, form: &Form) -> ChainElement {
    let mut out = ChainElement::zero(n, rank, degree);
    for (k, f) in form {
        out.add_term(Wedge::new(k.clone()), 1, scale_element(m, f));
    }
    out
}

/// `m (x) da_1 ^ .. ^ da_p` on the basis.
pub fn oracle_tensor(module: &PoissonModule, m: &ModuleElement, args: &[Polynomial]) -> ChainElement {
    let n = module.ring_dim();
    let grads: Vec<Vec<Polynomial>> = args.iter().map(gradient).collect();
    chain_from(n, module.rank(), args.len(), m, &wedge_of_exact(n, &grads))
}

/// ```text
/// sum_i (-1)^(i-1) {m, a_i}_M (x) da_1 ^ .. ^ da_i^ .. ^ da_p
///   + sum_{i<j} (-1)^(i+j) m (x) d{a_i, a_j} ^ da_1 ^ .. ^ da_i^ .. ^ da_j^ .. ^ da_p
/// ```
pub fn oracle_chain_boundary(module: &PoissonModule, m: &ModuleElement, args: &[Polynomial]) -> ChainElement {
    let n = module.ring_dim();
    let r = module.rank();
    let p = args.len();
    assert!(p > 0);
    let s = module.structure();
    let grads: Vec<Vec<Polynomial>> = args.iter().map(gradient).collect();
    let mut out = ChainElement::zero(n, r, p - 1);
    for i in 0..p {
        let rest: Vec<Vec<Polynomial>> = (0..p).filter(|&k| k != i).map(|k| grads[k].clone()).collect();
        let mut b = oracle_module_bracket(module, m, &args[i]);
        if i % 2 == 1 {
            b = neg_element(&b);
        }
        out = out.add(&chain_from(n, r, p - 1, &b, &wedge_of_exact(n, &rest)));
    }
    for i in 0..p {
        for j in i + 1..p {
            let mut list = vec![gradient(&oracle_bracket(s, &args[i], &args[j]))];
            list.extend((0..p).filter(|&k| k != i && k != j).map(|k| grads[k].clone()));
            let mm = if (i + j) % 2 == 1 { neg_element(m) } else { m.clone() };
            out = out.add(&chain_from(n, r, p - 1, &mm, &wedge_of_exact(n, &list)));
        }
    }
    out
}

/// `F(a_1, .., a_p)` expanding each argument over the generators.
pub fn oracle_eval(f: &Multiderivation, args: &[Polynomial]) -> ModuleElement {
    let n = f.ring_dim();
    let p = f.degree();
    assert_eq!(args.len(), p);
    let grads: Vec<Vec<Polynomial>> = args.iter().map(gradient).collect();
    let mut out = ModuleElement::zero(n, f.rank());
    for t in tuples(n, p) {
        let mut c = Polynomial::one(n);
        for (k, &i) in t.iter().enumerate() {
            c = &c * &grads[k][i];
            if c.is_zero() {
                break;
            }
        }
        if c.is_zero() {
            continue;
        }
        let mut key = t.clone();
        let Some(sg) = sort_sign(&mut key) else { continue };
        let v = scale_element(&f.value(&Wedge::new(key)), &c);
        out = out.add(&if sg < 0 { neg_element(&v) } else { v });
    }
    out
}

/// ```text
/// sum_i (-1)^i {F(.., a_i^, ..), a_i}_M
///   + sum_{i<j} (-1)^(i+j) F({a_i, a_j}, .., a_i^, .., a_j^, ..)
/// ```
///
/// with 1-based positions.
pub fn oracle_cochain_differential(module: &PoissonModule, f: &Multiderivation, args: &[Polynomial]) -> ModuleElement {
    let p1 = args.len();
    assert_eq!(p1, f.degree() + 1);
    let s = module.structure();
    let mut out = module.zero_element();
    for i in 0..p1 {
        let rest: Vec<Polynomial> = (0..p1).filter(|&k| k != i).map(|k| args[k].clone()).collect();
        let b = oracle_module_bracket(module, &oracle_eval(f, &rest), &args[i]);
        out = out.add(&if i % 2 == 0 { neg_element(&b) } else { b });
    }
    for i in 0..p1 {
        for j in i + 1..p1 {
            let mut list = vec![oracle_bracket(s, &args[i], &args[j])];
            list.extend((0..p1).filter(|&k| k != i && k != j).map(|k| args[k].clone()));
            let v = oracle_eval(f, &list);
            out = out.add(&if (i + j) % 2 == 1 { neg_element(&v) } else { v });
        }
    }
    out
}

/// Dense Gaussian elimination.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[rank][c];
            for j in c..ncols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_matrix(rng: &mut ChaCha8Rng, nrows: usize, ncols: usize) -> Vec<Vec<Rational>> {
    (0..nrows)
        .map(|_| {
            (0..ncols)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        Rational::zero()
                    } else {
                        Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn identity_rows(k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn arc(s: PoissonStructure) -> Arc<PoissonStructure> {
    Arc::new(s)
}

pub fn random_multivector(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Multivector {
    let mut out = Multivector::zero(n, p);
    for w in Wedge::subsets(n, p) {
        out = out.add(&Multivector::term(n, w, random_poly(rng, n, 2, 3)));
    }
    out
}
