use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `[e1, .., en]` standing for `x1^e1 * .. * xn^en`.
///
/// Monomials are ordered graded-lexicographically with `x1 > x2 > .. > xn`:
/// first by total degree, then lexicographically on the exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Lowers the exponent of `x_i` by one; `None` when it is already zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// All monomials in `n` variables with weighted degree exactly `degree`,
    /// in descending graded-lex order.
    pub fn with_weighted_degree(weights: &[u32], degree: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let mut exps = vec![0u32; weights.len()];
        enumerate(weights, 0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials with weighted degree at most `bound`, ascending by
    /// weighted degree and descending graded-lex within one degree.
    pub fn up_to_weighted_degree(weights: &[u32], bound: i64) -> Vec<Monomial> {
        (0..=bound.max(-1))
            .flat_map(|d| Monomial::with_weighted_degree(weights, d))
            .collect()
    }
}

fn enumerate(weights: &[u32], i: usize, remaining: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == weights.len() {
        if remaining == 0 {
            out.push(Monomial(exps.clone()));
        }
        return;
    }
    let w = weights[i] as i64;
    let mut e = 0;
    while e * w <= remaining {
        exps[i] = e as u32;
        enumerate(weights, i + 1, remaining - e * w, exps, out);
        e += 1;
    }
    exps[i] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn grlex_order() {
        let x2 = Monomial::from_exponents(vec![2, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let x = Monomial::from_exponents(vec![1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn unit_weight_counts_match_binomials() {
        for n in 1..=4usize {
            for d in 0..=6i64 {
                let count = Monomial::with_weighted_degree(&vec![1; n], d).len() as u64;
                assert_eq!(count, binomial(d as u64 + n as u64 - 1, n as u64 - 1));
            }
        }
    }

    #[test]
    fn weighted_enumeration() {
        // weights (2,1), degree 2: x, y^2
        let ms = Monomial::with_weighted_degree(&[2, 1], 2);
        assert_eq!(ms.len(), 2);
        assert!(Monomial::with_weighted_degree(&[1, 1], -1).is_empty());
    }
}
