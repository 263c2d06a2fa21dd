//! Exact rank and kernel computations over the rationals.
//!
//! Columns are cleared of denominators and reduced against an incremental
//! echelon basis with fraction-free updates `v <- p v - a pivot`, followed
//! by division by the content of the vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// A sparse rational matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    nrows: usize,
    columns: Vec<BTreeMap<usize, Rational>>,
}

impl Matrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            columns: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Matrix::zero(k, k);
        for i in 0..k {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from a dense row-major array.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Matrix::from_rows(&rows)
    }

    pub fn from_columns(nrows: usize, columns: Vec<BTreeMap<usize, Rational>>) -> Self {
        assert!(
            columns.iter().all(|c| c.keys().all(|&i| i < nrows)),
            "row index out of range"
        );
        let columns = columns
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { nrows, columns }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.nrows, "row index out of range");
        if v.is_zero() {
            self.columns[j].remove(&i);
        } else {
            self.columns[j].insert(i, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j].get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, Rational> {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.ncols()]; self.nrows];
        for (j, c) in self.columns.iter().enumerate() {
            for (&i, v) in c {
                rows[i][j] = v.clone();
            }
        }
        rows
    }

    /// `self * x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![Rational::zero(); self.nrows];
        for (j, c) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (&i, v) in c {
                out[i] += v * &x[j];
            }
        }
        out
    }
}

/// Sparse integer vector, sorted by index, no zeros.
type IntVec = Vec<(usize, BigInt)>;

/// The column times the lcm of its denominators, and that lcm.
fn clear_denominators(col: &BTreeMap<usize, Rational>) -> (IntVec, BigInt) {
    let l = col.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let v = col
        .iter()
        .map(|(&i, v)| (i, v.numer() * (&l / v.denom())))
        .collect();
    (v, l)
}

/// `a * u - b * v`, merged.
fn combine(a: &BigInt, u: &IntVec, b: &BigInt, v: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(u.len() + v.len());
    let (mut x, mut y) = (0, 0);
    while x < u.len() || y < v.len() {
        let take_u = y == v.len() || (x < u.len() && u[x].0 < v[y].0);
        let take_v = x == u.len() || (y < v.len() && v[y].0 < u[x].0);
        let (idx, val) = if take_u {
            x += 1;
            (u[x - 1].0, a * &u[x - 1].1)
        } else if take_v {
            y += 1;
            (v[y - 1].0, -(b * &v[y - 1].1))
        } else {
            x += 1;
            y += 1;
            (u[x - 1].0, a * &u[x - 1].1 - b * &v[y - 1].1)
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

fn content(vs: &[&IntVec]) -> BigInt {
    let mut g = BigInt::zero();
    for v in vs {
        for (_, x) in v.iter() {
            g = g.gcd(x);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn divide(v: &mut IntVec, g: &BigInt) {
    for (_, x) in v.iter_mut() {
        *x = &*x / g;
    }
}

struct Pivot {
    vec: IntVec,
    tag: IntVec,
}

/// Incremental echelon form. Every inserted vector carries a tag recording
/// it as a combination of the original inputs, so reductions to zero give
/// kernel vectors.
struct Echelon {
    pivots: BTreeMap<usize, Pivot>,
    track: bool,
}

impl Echelon {
    fn new(track: bool) -> Self {
        Echelon {
            pivots: BTreeMap::new(),
            track,
        }
    }

    /// Returns the reduced tag when `vec` lies in the span so far.
    fn insert(&mut self, mut vec: IntVec, mut tag: IntVec) -> Option<IntVec> {
        loop {
            let Some(&(lead, ref a)) = vec.first() else {
                return Some(tag);
            };
            let Some(piv) = self.pivots.get(&lead) else {
                let mut g = content(&[&vec, &tag]);
                if vec[0].1.is_negative() {
                    g = -g;
                }
                divide(&mut vec, &g);
                divide(&mut tag, &g);
                self.pivots.insert(lead, Pivot { vec, tag });
                return None;
            };
            let p = &piv.vec[0].1;
            let g = p.gcd(a);
            let (pm, am) = (p / &g, a / &g);
            let new_vec = combine(&pm, &vec, &am, &piv.vec);
            if self.track {
                tag = combine(&pm, &tag, &am, &piv.tag);
            }
            vec = new_vec;
            let g = if self.track {
                content(&[&vec, &tag])
            } else {
                content(&[&vec])
            };
            if !g.is_zero() && !g.is_one() {
                divide(&mut vec, &g);
                divide(&mut tag, &g);
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Exact rank.
pub fn rank_exact(m: &Matrix) -> usize {
    let mut e = Echelon::new(false);
    for c in &m.columns {
        if !c.is_empty() {
            e.insert(clear_denominators(c).0, Vec::new());
        }
    }
    e.rank()
}

/// Basis of `{x : m x = 0}` in reduced row echelon form: each vector is
/// monic at its first nonzero index and zero at the leading indices of the
/// others.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let ncols = m.ncols();
    let mut e = Echelon::new(true);
    let mut raw: Vec<IntVec> = Vec::new();
    for (j, c) in m.columns.iter().enumerate() {
        let (v, l) = clear_denominators(c);
        if let Some(k) = e.insert(v, vec![(j, l)]) {
            raw.push(k);
        }
    }
    let dense: Vec<Vec<Rational>> = raw
        .into_iter()
        .map(|v| {
            let mut d = vec![Rational::zero(); ncols];
            for (i, x) in v {
                d[i] = Rational::from_integer(x);
            }
            d
        })
        .collect();
    rref(dense)
}

/// Reduced row echelon form of a list of dense rational vectors, dropping
/// zero rows.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}
