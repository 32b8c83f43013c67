//! Dense univariate polynomials over Q, just enough for gcd and Sturm chains.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::exact::Rational;

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of `self` divided by the nonzero `divisor`.
    pub fn rem(&self, divisor: &RationalPoly) -> RationalPoly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RationalPoly::new(r)
    }

    pub fn gcd(&self, other: &RationalPoly) -> RationalPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// True when `gcd(f, f')` is a nonzero constant.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `f, f', -rem(f, f'), ...` until the remainder vanishes.
    pub fn sturm_chain(&self) -> Vec<RationalPoly> {
        let mut chain = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().rem(&next);
            chain.push(next);
            next = RationalPoly::new(r.coeffs.into_iter().map(|c| -c).collect());
        }
        chain
    }

    fn sign_at_infinity(&self, positive: bool) -> Sign {
        let Some(lc) = self.leading() else {
            return Sign::NoSign;
        };
        let mut s = if lc.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        if !positive && self.degree().unwrap() % 2 == 1 {
            s = -s;
        }
        s
    }

    /// Number of distinct real roots, via sign changes of the Sturm chain at ±∞.
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let changes = |positive: bool| {
            let signs: Vec<Sign> = chain
                .iter()
                .map(|p| p.sign_at_infinity(positive))
                .filter(|s| *s != Sign::NoSign)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(false) - changes(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_integers(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn sturm_counts() {
        // (t-1)(t-2)(t-3)
        assert_eq!(p(&[-6, 11, -6, 1]).count_real_roots(), 3);
        // t^2 + 1
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        // t^2 - 2
        assert_eq!(p(&[-2, 0, 1]).count_real_roots(), 2);
        // (t-1)^2 (t+1) has two distinct real roots
        assert_eq!(p(&[1, -1, -1, 1]).count_real_roots(), 2);
    }

    #[test]
    fn squarefree() {
        assert!(p(&[-6, 11, -6, 1]).is_squarefree());
        assert!(!p(&[1, -1, -1, 1]).is_squarefree());
        assert!(p(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn remainder_and_eval() {
        let r = p(&[-6, 11, -6, 1]).rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        let f = p(&[1, 0, 1]);
        assert_eq!(
            f.eval(&Rational::from_integer(3.into())),
            Rational::from_integer(10.into())
        );
        assert_eq!(f.derivative(), p(&[0, 2]));
    }
}
