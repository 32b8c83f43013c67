//! Exact integer vector arithmetic.
//!
//! Everything here works over arbitrary-precision integers. Angles are never
//! computed as floating-point values; instead they are compared through inner
//! products, squared norms and the rational tangent class of a vector relative
//! to a fixed reference direction.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// An integer vector with at least two coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntVector(Vec<BigInt>);

/// Build an [`IntVector`] from integer literals. Panics on fewer than two entries.
#[macro_export]
macro_rules! ivec {
    ($($x:expr),+ $(,)?) => {
        $crate::IntVector::from_i64s(&[$($x as i64),+]).expect("ivec! needs at least two coordinates")
    };
}

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        Ok(IntVector(coords))
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn norm_sq(&self) -> BigInt {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// `alpha * u + beta * v`; the caller guarantees equal dimensions.
    pub(crate) fn lin_comb(
        alpha: &BigInt,
        u: &IntVector,
        beta: &BigInt,
        v: &IntVector,
    ) -> IntVector {
        debug_assert_eq!(u.dim(), v.dim());
        IntVector(
            u.0.iter()
                .zip(&v.0)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        )
    }

    pub(crate) fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroVector)
        } else {
            Ok(())
        }
    }

    /// Whether `self` is a positive multiple of `other` (both nonzero).
    pub fn is_positive_multiple_of(&self, other: &IntVector) -> bool {
        self.dim() == other.dim()
            && !self.is_zero()
            && !other.is_zero()
            && primitive_reduce(self).map(|(w, _)| w) == primitive_reduce(other).map(|(w, _)| w)
    }

    /// Whether `self` is a negative multiple of `other` (both nonzero).
    pub fn is_negative_multiple_of(&self, other: &IntVector) -> bool {
        self.is_positive_multiple_of(&-other)
    }
}

impl std::ops::Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

impl std::ops::Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        -&self
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_dims(u: &IntVector, v: &IntVector) -> Result<()> {
    if u.dim() != v.dim() {
        Err(Error::DimensionMismatch(u.dim(), v.dim()))
    } else {
        Ok(())
    }
}

pub fn inner(u: &IntVector, v: &IntVector) -> Result<BigInt> {
    check_dims(u, v)?;
    Ok(u.0.iter().zip(&v.0).map(|(x, y)| x * y).sum())
}

/// Gram data of an ordered pair `(a, b)`: `p = <a,b>`, `na = |a|^2`,
/// `nb = |b|^2` and `s2 = na*nb - p^2`, the squared parallelogram area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramInvariants {
    pub p: BigInt,
    pub na: BigInt,
    pub nb: BigInt,
    pub s2: BigInt,
}

impl GramInvariants {
    pub fn is_independent(&self) -> bool {
        self.s2.is_positive()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.p.is_zero()
    }
}

pub fn gram_invariants(a: &IntVector, b: &IntVector) -> Result<GramInvariants> {
    check_dims(a, b)?;
    a.ensure_nonzero()?;
    b.ensure_nonzero()?;
    let p = inner(a, b)?;
    let na = a.norm_sq();
    let nb = b.norm_sq();
    let s2 = &na * &nb - &p * &p;
    debug_assert!(!s2.is_negative());
    Ok(GramInvariants { p, na, nb, s2 })
}

/// Split `v` into `g * w` with `w` primitive and `g > 0`. Signs are kept.
pub fn primitive_reduce(v: &IntVector) -> Result<(IntVector, BigInt)> {
    v.ensure_nonzero()?;
    let g = v.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let w = IntVector(v.0.iter().map(|x| x / &g).collect());
    Ok((w, g))
}

/// Coordinates of `c = lambda * a + mu * b` in the plane spanned by `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCoords {
    pub lambda: Rational,
    pub mu: Rational,
}

/// Integer numerators of the plane coordinates over the common denominator `s2`.
struct PlaneNumerators {
    lambda: BigInt,
    mu: BigInt,
}

fn plane_numerators(
    a: &IntVector,
    b: &IntVector,
    c: &IntVector,
    g: &GramInvariants,
) -> Result<Option<PlaneNumerators>> {
    check_dims(a, c)?;
    let ca = inner(c, a)?;
    let cb = inner(c, b)?;
    let lambda = &ca * &g.nb - &cb * &g.p;
    let mu = &cb * &g.na - &ca * &g.p;
    // s2 * c must equal lambda * a + mu * b exactly.
    let recombined = IntVector::lin_comb(&lambda, a, &mu, b);
    if recombined != c.scale(&g.s2) {
        return Ok(None);
    }
    Ok(Some(PlaneNumerators { lambda, mu }))
}

fn independent_gram(a: &IntVector, b: &IntVector) -> Result<GramInvariants> {
    let g = gram_invariants(a, b)?;
    if !g.is_independent() {
        return Err(Error::Dependent);
    }
    Ok(g)
}

/// Returns `Ok(None)` when `c` is not in the span of `a` and `b`.
pub fn plane_coords(a: &IntVector, b: &IntVector, c: &IntVector) -> Result<Option<PlaneCoords>> {
    let g = independent_gram(a, b)?;
    Ok(plane_numerators(a, b, c, &g)?.map(|n| PlaneCoords {
        lambda: Rational::new(n.lambda, g.s2.clone()),
        mu: Rational::new(n.mu, g.s2.clone()),
    }))
}

/// Directed angle of `c` measured from `a` inside the plane of `(a, b)`,
/// encoded as `tan(angle) / s` together with the quadrant.
///
/// `tan_over_s` is `None` when the angle is a right angle (tangent undefined).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentClass {
    pub tan_over_s: Option<Rational>,
    pub cos_sign: Sign,
    pub sin_sign: Sign,
}

pub fn tangent_class(a: &IntVector, b: &IntVector, c: &IntVector) -> Result<TangentClass> {
    c.ensure_nonzero()?;
    let g = independent_gram(a, b)?;
    let n = plane_numerators(a, b, c, &g)?.ok_or(Error::NotCoplanar)?;
    // Both numerators share the positive denominator s2, which cancels.
    let cos_part = &n.lambda * &g.na + &n.mu * &g.p;
    let tan_over_s = if cos_part.is_zero() {
        None
    } else {
        Some(Rational::new(n.mu.clone(), cos_part.clone()))
    };
    Ok(TangentClass {
        tan_over_s,
        cos_sign: cos_part.sign(),
        sin_sign: n.mu.sign(),
    })
}

/// Exact equality of the unsigned angles `angle(u1, v1)` and `angle(u2, v2)`.
pub fn angles_equal(
    u1: &IntVector,
    v1: &IntVector,
    u2: &IntVector,
    v2: &IntVector,
) -> Result<bool> {
    for v in [u1, v1, u2, v2] {
        v.ensure_nonzero()?;
    }
    let d1 = inner(u1, v1)?;
    let d2 = inner(u2, v2)?;
    if d1.sign() != d2.sign() {
        return Ok(false);
    }
    let lhs = &d1 * &d1 * u2.norm_sq() * v2.norm_sq();
    let rhs = &d2 * &d2 * u1.norm_sq() * v1.norm_sq();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner(&ivec![1, 1], &ivec![-2, 11]).unwrap(), 9.into());
        assert_eq!(inner(&ivec![1, 0], &ivec![0, 1]).unwrap(), 0.into());
        assert_eq!(inner(&ivec![7, 1], &ivec![2, 1]).unwrap(), 15.into());
        assert_eq!(
            inner(&ivec![1, 0], &ivec![0, 1, 0]),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn vector_needs_two_coords() {
        assert_eq!(IntVector::from_i64s(&[1]), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn gram_examples() {
        let g = gram_invariants(&ivec![1, 1], &ivec![-2, 11]).unwrap();
        assert_eq!(
            (g.p, g.na, g.nb, g.s2),
            (9.into(), 2.into(), 125.into(), 169.into())
        );
        let g = gram_invariants(&ivec![1, 1, 1], &ivec![-11, 6, 23]).unwrap();
        assert_eq!(
            (g.p, g.na, g.nb, g.s2),
            (18.into(), 3.into(), 686.into(), 1734.into())
        );
        let g = gram_invariants(&ivec![1, 0], &ivec![0, 1]).unwrap();
        assert_eq!(
            (g.p, g.na, g.nb, g.s2),
            (0.into(), 1.into(), 1.into(), 1.into())
        );
        assert_eq!(
            gram_invariants(&ivec![0, 0], &ivec![0, 1]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            primitive_reduce(&ivec![26, 52]).unwrap(),
            (ivec![1, 2], 26.into())
        );
        assert_eq!(
            primitive_reduce(&ivec![-4, 22]).unwrap(),
            (ivec![-2, 11], 2.into())
        );
        assert_eq!(
            primitive_reduce(&ivec![51, 102, 153]).unwrap(),
            (ivec![1, 2, 3], 51.into())
        );
        assert_eq!(primitive_reduce(&ivec![0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn plane_coords_examples() {
        let pc = plane_coords(&ivec![1, 1], &ivec![-2, 11], &ivec![1, 2])
            .unwrap()
            .unwrap();
        assert_eq!(pc.lambda, q(15, 13));
        assert_eq!(pc.mu, q(1, 13));
        assert_eq!(
            plane_coords(&ivec![1, 0, 0], &ivec![0, 1, 0], &ivec![0, 0, 1]).unwrap(),
            None
        );
        assert!(
            plane_coords(&ivec![1, 1, 1], &ivec![-59, 1, 61], &ivec![1, 2, 3])
                .unwrap()
                .is_some()
        );
        assert_eq!(
            plane_coords(&ivec![1, 2], &ivec![2, 4], &ivec![1, 0]),
            Err(Error::Dependent)
        );
    }

    #[test]
    fn tangent_class_examples() {
        let (a, b) = (ivec![1, 1], ivec![-2, 11]);
        let tc = tangent_class(&a, &b, &ivec![1, 2]).unwrap();
        assert_eq!(tc.tan_over_s, Some(q(1, 39)));
        assert_eq!((tc.cos_sign, tc.sin_sign), (Sign::Plus, Sign::Plus));

        let tc = tangent_class(&a, &b, &a).unwrap();
        assert_eq!(tc.tan_over_s, Some(q(0, 1)));
        assert_eq!((tc.cos_sign, tc.sin_sign), (Sign::Plus, Sign::NoSign));

        let tc = tangent_class(&a, &b, &b).unwrap();
        assert_eq!(tc.tan_over_s, Some(q(1, 9)));

        // perpendicular to a within the plane
        let tc = tangent_class(&a, &b, &ivec![-1, 1]).unwrap();
        assert_eq!(tc.tan_over_s, None);
        assert_eq!((tc.cos_sign, tc.sin_sign), (Sign::NoSign, Sign::Plus));

        assert_eq!(
            tangent_class(&ivec![1, 0, 0], &ivec![0, 1, 0], &ivec![0, 0, 1]),
            Err(Error::NotCoplanar)
        );
    }

    #[test]
    fn angles_equal_examples() {
        assert!(angles_equal(&ivec![7, 1], &ivec![2, 1], &ivec![2, 1], &ivec![1, 1]).unwrap());
        assert!(!angles_equal(&ivec![1, 0], &ivec![0, 1], &ivec![1, 0], &ivec![1, 1]).unwrap());
        assert!(angles_equal(
            &ivec![1, 1, 1],
            &ivec![1, 2, 3],
            &ivec![1, 2, 3],
            &ivec![-1, 5, 11]
        )
        .unwrap());
        // supplementary angles share the squared cosine but not its sign
        assert!(!angles_equal(&ivec![1, 0], &ivec![1, 1], &ivec![1, 0], &ivec![-1, 1]).unwrap());
    }

    #[test]
    fn multiples() {
        assert!(ivec![2, 4].is_positive_multiple_of(&ivec![1, 2]));
        assert!(!ivec![-2, -4].is_positive_multiple_of(&ivec![1, 2]));
        assert!(ivec![-2, -4].is_negative_multiple_of(&ivec![1, 2]));
        assert!(!ivec![1, 3].is_positive_multiple_of(&ivec![1, 2]));
    }
}
