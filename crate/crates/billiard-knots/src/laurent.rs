//! Integer Laurent polynomials in one variable `t` and a fraction-free
//! determinant over them.
//!
//! Knot invariants only need values up to multiplication by units
//! `(+/- t^k)`; [`LaurentPolynomial::normalized`] fixes the representative
//! with lowest exponent 0 and positive leading coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    // exponent -> coefficient, zero coefficients never stored
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c * t^e`
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, BigInt::from(c));
        }
        Self { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or 0 for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Multiply by the unit `sign * t^shift`.
    pub fn mul_unit(&self, shift: i64, sign: i8) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e + shift, if sign < 0 { -c } else { c.clone() }))
            .collect();
        Self { coeffs }
    }

    /// Canonical representative up to units: lowest exponent 0, positive
    /// leading coefficient. Idempotent; the zero polynomial is fixed.
    pub fn normalized(&self) -> Self {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let sign = if self.coeff(hi).is_negative() { -1 } else { 1 };
                self.mul_unit(-lo, sign)
            }
            _ => Self::zero(),
        }
    }

    /// Equality after normalization, i.e. up to `+/- t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Substitution `t -> 1/t`.
    pub fn reciprocal(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect();
        Self { coeffs }
    }

    /// True when the polynomial equals its own `t -> 1/t` image up to units.
    pub fn is_palindromic(&self) -> bool {
        self.eq_up_to_units(&self.reciprocal())
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        let lo = self.min_exp().unwrap_or(0);
        assert!(lo >= 0 || x.magnitude().is_one(), "negative exponent at non-unit");
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                x.pow((*e) as u32)
            } else {
                // x is +/-1 here
                x.pow(e.unsigned_abs() as u32)
            };
            acc += c * p;
        }
        acc
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let dhi = divisor.max_exp().unwrap();
        let dlead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rhi = rem.max_exp().unwrap();
            let (q, r) = num_integer::div_rem(rem.coeff(rhi), dlead.clone());
            assert!(r.is_zero(), "inexact polynomial division");
            let qe = rhi - dhi;
            let mut t = Self::zero();
            t.add_term(qe, q.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(qe, q);
            assert!(rem.is_zero() || rem.max_exp().unwrap() < rhi, "division stalled");
        }
        quot
    }

    /// Dense coefficient list from `min_exp` upward.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let v = (lo..=hi).map(|e| self.coeff(e)).collect();
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPolynomial { coeffs }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix of Laurent polynomials, up to a unit.
///
/// Fraction-free Bareiss elimination: every division is exact over the
/// integer Laurent ring. Pivots are chosen by smallest exponent span to
/// limit growth; row and column swaps only flip the sign, which the unit
/// normalization absorbs anyway.
pub fn det_bareiss(mut m: Vec<Vec<LaurentPolynomial>>) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    for row in &m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut sign = 1i8;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n {
        // pivot: nonzero entry of minimal span in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => m[i][j].span() < m[pi][pj].span(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            return LaurentPolynomial::zero();
        };
        if pi != k {
            m.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        for i in k + 1..n {
            m[i][k] = LaurentPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        (&d).neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn normalization() {
        let q = p(&[(-2, -1), (0, -3)]); // -t^-2 - 3
        let n = q.normalized();
        assert_eq!(n, p(&[(0, 1), (2, 3)]));
        assert_eq!(n.normalized(), n);
        assert!(q.eq_up_to_units(&n));
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[(0, 1), (1, -1), (2, 1)]); // 1 - t + t^2
        let b = p(&[(0, 1), (1, 1)]); // 1 + t
        assert_eq!(&a * &b, p(&[(0, 1), (3, 1)])); // 1 + t^3
        assert_eq!(a.eval_int(-1), BigInt::from(3));
        assert_eq!((&a * &b).div_exact(&b), a);
    }

    #[test]
    fn palindromic_check() {
        assert!(p(&[(0, 1), (1, -1), (2, 1)]).is_palindromic());
        assert!(!p(&[(0, 1), (1, 2)]).is_palindromic());
    }

    #[test]
    fn bareiss_matches_integer_determinant() {
        // constant matrix, compare against a 3x3 rule-of-Sarrus value
        let c = |v: i64| LaurentPolynomial::constant(v);
        let m = vec![
            vec![c(2), c(0), c(1)],
            vec![c(1), c(3), c(2)],
            vec![c(0), c(1), c(4)],
        ];
        let d = det_bareiss(m);
        assert_eq!(d, LaurentPolynomial::constant(2 * (12 - 2) - 0 + (1 - 0)));
    }

    #[test]
    fn bareiss_polynomial_entries() {
        // det [[t, 1], [1, t^-1]] = 0 and det [[t, 1], [0, t^-1]] = 1
        let t = LaurentPolynomial::monomial(1, 1);
        let ti = LaurentPolynomial::monomial(-1, 1);
        let one = LaurentPolynomial::one();
        let zero = LaurentPolynomial::zero();
        assert!(det_bareiss(vec![
            vec![t.clone(), one.clone()],
            vec![one.clone(), ti.clone()]
        ])
        .is_zero());
        assert_eq!(det_bareiss(vec![vec![t, one], vec![zero, ti]]), LaurentPolynomial::one());
    }

    #[test]
    fn bareiss_singular() {
        let c = |v: i64| LaurentPolynomial::constant(v);
        let m = vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
            vec![c(7), c(8), c(9)],
        ];
        assert!(det_bareiss(m).is_zero());
    }
}
