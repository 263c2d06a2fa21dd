use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Rational};

/// Sparse polynomial with exact rational coefficients in `ring_dim` variables.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    ring_dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring_dim: usize) -> Self {
        Polynomial {
            ring_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring_dim: usize) -> Self {
        Self::constant(ring_dim, Rational::one())
    }

    pub fn constant(ring_dim: usize, c: Rational) -> Self {
        Self::monomial(ring_dim, Monomial::one(ring_dim), c)
    }

    pub fn from_int(ring_dim: usize, c: i64) -> Self {
        Self::constant(ring_dim, Rational::from_integer(c.into()))
    }

    pub fn var(ring_dim: usize, i: usize) -> Self {
        Self::monomial(ring_dim, Monomial::var(ring_dim, i), Rational::one())
    }

    pub fn monomial(ring_dim: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.dim(), ring_dim, "monomial dimension mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring_dim, terms }
    }

    /// Builds a polynomial from (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring_dim: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring_dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), ring_dim, "monomial dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring_dim(&self) -> usize {
        self.ring_dim
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

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring_dim != other.ring_dim {
            return Err(PolyError::DimensionMismatch {
                left: self.ring_dim,
                right: other.ring_dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.ring_dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring_dim);
        }
        Polynomial {
            ring_dim: self.ring_dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring_dim);
        }
        Polynomial {
            ring_dim: self.ring_dim,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring_dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i` (zero-based index).
    pub fn checked_partial(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.ring_dim {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                ring_dim: self.ring_dim,
            });
        }
        let mut out = Polynomial::zero(self.ring_dim);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if let Some(lower) = m.lower(i) {
                out.add_term(lower, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Panicking form of [`Polynomial::checked_partial`].
    pub fn partial(&self, i: usize) -> Polynomial {
        self.checked_partial(i).expect("variable index out of range")
    }

    /// Antiderivative in `x_i` with zero constant of integration.
    pub fn integrate(&self, i: usize) -> Polynomial {
        assert!(i < self.ring_dim, "variable index out of range");
        let mut out = Polynomial::zero(self.ring_dim);
        for (m, c) in &self.terms {
            let e = m.exponent(i) + 1;
            out.add_term(m.raise(i), c / Rational::from_integer(e.into()));
        }
        out
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Does not depend on `x_i`.
    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.exponent(i) == 0)
    }

    /// Renders the polynomial in the input grammar using `names`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                if a.is_integer() {
                    factors.push(a.numer().to_string());
                } else {
                    factors.push(format!("({}/{})", a.numer(), a.denom()));
                }
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = super::default_names(self.ring_dim);
        write!(f, "{}", self.display(&names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.ring_dim, rhs.ring_dim, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.ring_dim, rhs.ring_dim, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring_dim: self.ring_dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn names(vs: &[&str]) -> Vec<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &names(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&(p("x") + p("y")) * &(p("x") - p("y")), p("x^2 - y^2"));
    }

    #[test]
    fn times_zero() {
        assert!((p("x*y + 3") * Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(p("(1/2)*x") * p("(2/3)*x"), p("(1/3)*x^2"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            a.checked_mul(&b),
            Err(PolyError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn partials() {
        assert_eq!(p("x^2*y").partial(0), p("2*x*y"));
        assert!(p("7/3").partial(2).is_zero());
        assert_eq!(p("x^3 + y^3 + z^3").partial(2), p("3*z^2"));
        assert!(matches!(
            p("x").checked_partial(3),
            Err(PolyError::IndexOutOfRange { index: 3, ring_dim: 3 })
        ));
    }

    #[test]
    fn antiderivatives() {
        assert_eq!(p("3*z^2").integrate(2), p("z^3"));
        assert!(Polynomial::zero(3).integrate(1).is_zero());
        assert_eq!(p("x*y").integrate(2), p("x*y*z"));
    }

    #[test]
    fn weighted_degrees() {
        let w = [1, 1, 1];
        assert_eq!(p("x^2*y").weighted_degree(&w), Some(3));
        assert_eq!(Polynomial::zero(3).weighted_degree(&w), None);
        let xy = parse_poly("x + y^2", &names(&["x", "y"])).unwrap();
        assert_eq!(xy.weighted_degree(&[2, 1]), Some(2));
        assert!(xy.is_homogeneous(&[2, 1]));
        assert!(!xy.is_homogeneous(&[1, 1]));
    }

    #[test]
    fn printer() {
        let ns = names(&["x", "y", "z"]);
        assert_eq!(p("x*y - 1").display(&ns).to_string(), "x*y - 1");
        assert_eq!(p("(1/2)*x^2").display(&ns).to_string(), "(1/2)*x^2");
        assert_eq!(p("-z + y^2 - (3/4)").display(&ns).to_string(), "y^2 - z - (3/4)");
        assert_eq!(Polynomial::zero(3).display(&ns).to_string(), "0");
    }
}
