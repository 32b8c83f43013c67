//! Deciding and constructing angle multisections over the integers.
//!
//! A chain `c0, c1, ..., cm` of integer vectors divides the angle between
//! `c0` and `cm` into `m` equal parts when every `c(j+1)` is the mirror image
//! of `c(j-1)` across the line of `cj`. The mirror image is computed without
//! square roots as `2<prev,cur> cur - |cur|^2 prev`, which is `|cur|^2` times
//! the unit-length reflection.
//!
//! Whether such a chain exists from `a` to `b` is decided by the integer roots
//! of a monic degree-`m` polynomial in `t` built from `p = <a,b>` and
//! `s^2 = |a|^2 |b|^2 - p^2`. A root `t` corresponds to a first sector vector
//! `(t - p) a + |a|^2 b`, whose tangent class relative to `a` is `1/t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    angles_equal, gram_invariants, inner, plane_coords, primitive_reduce, GramInvariants,
    IntVector, Rational,
};
use crate::number_theory::{
    divisors, factorize, integer_sqrt_exact, rational_sqrt, squarefree_part, Budget, Factorization,
    SearchConfig,
};

/// Monic integer polynomial whose integer roots witness `m`-sectability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectPolynomial {
    m: u32,
    /// `coeffs[i]` is the coefficient of `t^i`.
    coeffs: Vec<BigInt>,
}

impl SectPolynomial {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for SectPolynomial {
    /// Human-readable form, e.g. `t^3 - 27t^2 - 507t + 1521`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Build the sectability polynomial of degree `m` for a pair with the given
/// Gram data. The pair must be independent and nonorthogonal.
///
/// The even part is `sum_i (-s^2)^i C(m, 2i) t^(m-2i)` and the odd part
/// `-p sum_i (-s^2)^i C(m, 2i+1) t^(m-2i-1)`.
pub fn sect_polynomial(m: u32, g: &GramInvariants) -> Result<SectPolynomial> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m must be at least 2, got {m}"
        )));
    }
    if !g.is_independent() {
        return Err(Error::Unsupported("the pair is linearly dependent".into()));
    }
    if g.is_orthogonal() {
        return Err(Error::Unsupported("the pair is orthogonal".into()));
    }
    let m_us = m as usize;
    let mut coeffs = vec![BigInt::zero(); m_us + 1];
    let neg_s2 = -&g.s2;
    let mut power = BigInt::one();
    for i in 0..=m / 2 {
        let deg = (m - 2 * i) as usize;
        coeffs[deg] += &power * binomial(m, 2 * i);
        if 2 * i < m {
            coeffs[deg - 1] -= &g.p * &power * binomial(m, 2 * i + 1);
        }
        power *= &neg_s2;
    }
    debug_assert!(coeffs[m_us].is_one());
    Ok(SectPolynomial { m, coeffs })
}

/// Factorization of `|constant term|`, assembled from the much smaller
/// factorizations of `s^2` and `p`.
fn constant_term_factorization(
    m: u32,
    g: &GramInvariants,
    budget: &Budget,
    seed: u64,
) -> Result<Factorization> {
    let s2 = factorize(&g.s2, budget, seed)?;
    let f = if m.is_multiple_of(2) {
        s2.pow(m / 2)
    } else {
        let p = factorize(&g.p.abs(), budget, seed)?;
        p.mul(&s2.pow((m - 1) / 2))
    };
    if !f.complete {
        return Err(Error::BudgetExhausted);
    }
    Ok(f)
}

/// All integer roots of `f`, in increasing order.
///
/// Since `f` is monic, its rational roots are integers dividing the constant
/// term (`s^m` for even `m`, `p s^(m-1)` for odd `m`), so testing `±d` for
/// every divisor `d` is a complete search. Errors with `BudgetExhausted`,
/// `TooManyDivisors` or `IncompleteFactorization` when the sweep could not
/// be finished.
pub fn rational_roots(
    f: &SectPolynomial,
    g: &GramInvariants,
    budget: &Budget,
    config: &SearchConfig,
) -> Result<Vec<BigInt>> {
    let fact = constant_term_factorization(f.m, g, budget, config.seed)?;
    debug_assert_eq!(fact.value().abs(), f.constant_term().abs());
    let divs = divisors(&fact, config.divisor_cap)?;
    let mut roots = Vec::new();
    for d in divs {
        budget.spend(2)?;
        let neg = -&d;
        if f.eval(&neg).is_zero() {
            roots.push(neg);
        }
        if f.eval(&d).is_zero() {
            roots.push(d);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Primitive vector in the direction of `(t - p) a + |a|^2 b`.
pub fn first_sector_vector(a: &IntVector, b: &IntVector, t: &BigInt) -> Result<IntVector> {
    let g = gram_invariants(a, b)?;
    let v = IntVector::lin_comb(&(t - &g.p), a, &g.na, b);
    if v.is_zero() {
        return Err(Error::Dependent);
    }
    Ok(primitive_reduce(&v)?.0)
}

/// The unreduced reflection `2<prev,cur> cur - |cur|^2 prev`.
pub fn reflect_raw(prev: &IntVector, cur: &IntVector) -> Result<IntVector> {
    prev.ensure_nonzero()?;
    cur.ensure_nonzero()?;
    let two_dot = inner(prev, cur)? * 2;
    Ok(IntVector::lin_comb(&two_dot, cur, &-cur.norm_sq(), prev))
}

/// Next vector of an equal-angle chain: `prev` mirrored across `cur`, reduced
/// to a primitive vector.
pub fn reflect_step(prev: &IntVector, cur: &IntVector) -> Result<IntVector> {
    let w = reflect_raw(prev, cur)?;
    if w.is_zero() {
        return Err(Error::DegenerateReflection);
    }
    Ok(primitive_reduce(&w)?.0)
}

/// A chain of primitive vectors with equal consecutive angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquisectorSequence {
    pub vectors: Vec<IntVector>,
    /// Set once the chain has passed [`verify_sequence`] against its target.
    pub verified: bool,
}

impl EquisectorSequence {
    pub fn m(&self) -> usize {
        self.vectors.len().saturating_sub(1)
    }

    pub fn first(&self) -> &IntVector {
        &self.vectors[0]
    }

    pub fn last(&self) -> &IntVector {
        self.vectors.last().expect("sequences are never empty")
    }
}

/// Chain `primitive(a), primitive(c1), ...` of `m + 1` vectors.
pub fn generate_sequence(a: &IntVector, c1: &IntVector, m: usize) -> Result<EquisectorSequence> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if a.dim() != c1.dim() {
        return Err(Error::DimensionMismatch(a.dim(), c1.dim()));
    }
    let seq = EquisectorSequence {
        vectors: vec![primitive_reduce(a)?.0, primitive_reduce(c1)?.0],
        verified: false,
    };
    extend_sequence(&seq, m - 1)
}

/// Append `extra` vectors by repeated reflection.
pub fn extend_sequence(seq: &EquisectorSequence, extra: usize) -> Result<EquisectorSequence> {
    if seq.vectors.len() < 2 {
        return Err(Error::InvalidArgument(
            "a sequence needs at least two vectors to be extended".into(),
        ));
    }
    let mut vectors = seq.vectors.clone();
    vectors.reserve(extra);
    for _ in 0..extra {
        let n = vectors.len();
        let next = reflect_step(&vectors[n - 2], &vectors[n - 1])?;
        vectors.push(next);
    }
    Ok(EquisectorSequence {
        verified: seq.verified && extra == 0,
        vectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    TooShort,
    ZeroVector,
    DimensionMismatch,
    NotCoplanar,
    /// The vector is not a positive multiple of the reflection of its two predecessors.
    Recurrence,
    UnequalAngle,
    /// The last vector is not a positive multiple of the expected endpoint.
    Endpoint,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureKind::TooShort => "fewer than three vectors",
            FailureKind::ZeroVector => "zero vector",
            FailureKind::DimensionMismatch => "dimension mismatch",
            FailureKind::NotCoplanar => "not coplanar with the reference pair",
            FailureKind::Recurrence => "reflection recurrence fails",
            FailureKind::UnequalAngle => "consecutive angles differ",
            FailureKind::Endpoint => "endpoint is not a positive multiple of the target",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationFailure {
    pub index: usize,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub failure: Option<VerificationFailure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(index: usize, kind: FailureKind) -> Self {
        VerificationReport {
            failure: Some(VerificationFailure { index, kind }),
        }
    }
}

/// Check that `seq` is an equal-angle chain, optionally ending at a positive
/// multiple of `expected_end`. Reports the first failing index.
pub fn verify_sequence(seq: &[IntVector], expected_end: Option<&IntVector>) -> VerificationReport {
    if seq.len() < 3 {
        return VerificationReport::fail(seq.len(), FailureKind::TooShort);
    }
    let dim = seq[0].dim();
    for (i, v) in seq.iter().enumerate() {
        if v.dim() != dim {
            return VerificationReport::fail(i, FailureKind::DimensionMismatch);
        }
        if v.is_zero() {
            return VerificationReport::fail(i, FailureKind::ZeroVector);
        }
    }
    // First vector independent of seq[0] fixes the plane; if there is none the
    // whole chain lies on one line.
    let reference = seq[1..].iter().find(|v| {
        gram_invariants(&seq[0], v)
            .map(|g| g.is_independent())
            .unwrap_or(false)
    });
    for i in 0..seq.len() {
        if let Some(r) = reference {
            if !matches!(plane_coords(&seq[0], r, &seq[i]), Ok(Some(_))) {
                return VerificationReport::fail(i, FailureKind::NotCoplanar);
            }
        }
        if i >= 2 {
            let (prev, cur, next) = (&seq[i - 2], &seq[i - 1], &seq[i]);
            let expected = reflect_raw(prev, cur).expect("nonzero vectors of equal dimension");
            if !next.is_positive_multiple_of(&expected) {
                return VerificationReport::fail(i, FailureKind::Recurrence);
            }
            if !angles_equal(prev, cur, cur, next).expect("nonzero vectors") {
                return VerificationReport::fail(i, FailureKind::UnequalAngle);
            }
        }
    }
    if let Some(b) = expected_end {
        if !seq.last().unwrap().is_positive_multiple_of(b) {
            return VerificationReport::fail(seq.len() - 1, FailureKind::Endpoint);
        }
    }
    VerificationReport { failure: None }
}

/// Interior bisector of the angle between independent `a` and `b`, if one
/// exists over the integers.
///
/// Writes `|a|^2 = d q1^2` and `|b|^2 = d' q2^2` with squarefree `d, d'`; a
/// bisector exists iff `d = d'`, and is then `q2 a + q1 b` up to scaling.
/// Returns `Ok(None)` when no integer bisector exists and
/// `Err(BudgetExhausted)` when the norms could not be factored.
pub fn bisector_vector(
    a: &IntVector,
    b: &IntVector,
    budget: &Budget,
    seed: u64,
) -> Result<Option<IntVector>> {
    let g = gram_invariants(a, b)?;
    if !g.is_independent() {
        return Err(Error::Dependent);
    }
    let (da, qa) = squarefree_part(&g.na, budget, seed)?;
    let (db, qb) = squarefree_part(&g.nb, budget, seed)?;
    if da != db {
        return Ok(None);
    }
    let c = IntVector::lin_comb(&qb, a, &qa, b);
    Ok(Some(primitive_reduce(&c)?.0))
}

/// `cos θ, cos θ/2, ..., cos θ/2^(e-1)` for as long as each stays rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosineChain {
    pub e: u32,
    pub cosines: Vec<Rational>,
    pub holds: bool,
}

/// Decide `2^e`-sectability through the half-angle cosine chain.
///
/// `cos θ = p / sqrt(|a|^2 |b|^2)` must be rational, and each
/// `cos^2(θ/2^i) = (1 + cos(θ/2^(i-1))) / 2` must be a rational square.
/// Only perfect-square tests are involved, so this never needs a budget.
pub fn pow2_sectable(a: &IntVector, b: &IntVector, e: u32) -> Result<CosineChain> {
    if e < 1 {
        return Err(Error::InvalidArgument("e must be at least 1".into()));
    }
    let g = gram_invariants(a, b)?;
    let mut chain = CosineChain {
        e,
        cosines: Vec::new(),
        holds: false,
    };
    let Some(norm_product) = integer_sqrt_exact(&(&g.na * &g.nb)) else {
        return Ok(chain);
    };
    let mut cos = Rational::new(g.p.clone(), norm_product);
    chain.cosines.push(cos.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 1..e {
        let Some(next) = rational_sqrt(&((Rational::one() + &cos) * &half)) else {
            return Ok(chain);
        };
        cos = next;
        chain.cosines.push(cos.clone());
    }
    chain.holds = true;
    Ok(chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorStatus {
    Sectable,
    NotSectable,
    Indeterminate,
}

impl fmt::Display for SectorStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectorStatus::Sectable => "Sectable",
            SectorStatus::NotSectable => "NotSectable",
            SectorStatus::Indeterminate => "Indeterminate",
        })
    }
}

/// How [`msect`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Integer roots of the sectability polynomial.
    Polynomial,
    /// Half-angle cosine chain and repeated bisection (orthogonal pairs, `m = 2^e`).
    CosineChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MsectOptions {
    pub search: SearchConfig,
    /// Count chains that end at a negative multiple of `b` as witnesses.
    pub allow_antiparallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorDecision {
    pub status: SectorStatus,
    pub m: u32,
    pub gram: GramInvariants,
    pub route: Route,
    pub polynomial: Option<SectPolynomial>,
    pub roots: Vec<BigInt>,
    pub sequences: Vec<EquisectorSequence>,
    /// Roots whose chain ends at a negative multiple of `b`.
    pub rejected_antiparallel: Vec<(BigInt, EquisectorSequence)>,
    pub budget_exhausted: bool,
}

/// Decide whether the angle between `a` and `b` can be divided into `m`
/// equal parts by integer vectors, and construct every witnessing chain.
///
/// The pair must be independent. Orthogonal pairs are only supported when
/// `m` is a power of two.
pub fn msect(a: &IntVector, b: &IntVector, m: u32, opts: &MsectOptions) -> Result<SectorDecision> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m must be at least 2, got {m}"
        )));
    }
    let gram = gram_invariants(a, b)?;
    if !gram.is_independent() {
        return Err(Error::Unsupported("the pair is linearly dependent".into()));
    }
    if gram.is_orthogonal() {
        if m.is_power_of_two() {
            return msect_by_bisection(a, b, m, gram, opts);
        }
        return Err(Error::Unsupported(format!(
            "orthogonal pairs are only decided for powers of two, got m = {m}"
        )));
    }

    let budget = Budget::new(opts.search.budget);
    let polynomial = sect_polynomial(m, &gram)?;
    let mut decision = SectorDecision {
        status: SectorStatus::Indeterminate,
        m,
        gram,
        route: Route::Polynomial,
        polynomial: None,
        roots: Vec::new(),
        sequences: Vec::new(),
        rejected_antiparallel: Vec::new(),
        budget_exhausted: false,
    };
    let roots = match rational_roots(&polynomial, &decision.gram, &budget, &opts.search) {
        Ok(r) => r,
        Err(e) if is_search_limit(&e) => {
            decision.polynomial = Some(polynomial);
            decision.budget_exhausted =
                matches!(e, Error::BudgetExhausted | Error::IncompleteFactorization);
            return Ok(decision);
        }
        Err(e) => return Err(e),
    };
    decision.polynomial = Some(polynomial);

    let target = primitive_reduce(b)?.0;
    for t in &roots {
        let c1 = first_sector_vector(a, b, t)?;
        let seq = generate_sequence(a, &c1, m as usize)?;
        if seq.last() == &target {
            decision.sequences.push(accept(seq, &target));
        } else if m % 2 == 1 {
            // For odd m, negating c1 flips every odd-indexed vector, including c_m.
            let flipped = generate_sequence(a, &-&c1, m as usize)?;
            debug_assert_eq!(flipped.last(), &target);
            decision.sequences.push(accept(flipped, &target));
        } else {
            debug_assert_eq!(seq.last(), &-&target);
            decision.rejected_antiparallel.push((t.clone(), seq));
        }
    }
    decision.roots = roots;
    let witnessed = !decision.sequences.is_empty()
        || (opts.allow_antiparallel && !decision.rejected_antiparallel.is_empty());
    decision.status = if witnessed {
        SectorStatus::Sectable
    } else {
        SectorStatus::NotSectable
    };
    Ok(decision)
}

fn is_search_limit(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExhausted | Error::TooManyDivisors { .. } | Error::IncompleteFactorization
    )
}

fn accept(mut seq: EquisectorSequence, target: &IntVector) -> EquisectorSequence {
    seq.verified = verify_sequence(&seq.vectors, Some(target)).is_valid();
    debug_assert!(seq.verified);
    seq
}

/// `m = 2^e` for an orthogonal pair: bisect `e` times towards `a`, then
/// reflect the resulting first sector vector back out to `b`.
fn msect_by_bisection(
    a: &IntVector,
    b: &IntVector,
    m: u32,
    gram: GramInvariants,
    opts: &MsectOptions,
) -> Result<SectorDecision> {
    let e = m.trailing_zeros();
    let chain = pow2_sectable(a, b, e)?;
    let mut decision = SectorDecision {
        status: SectorStatus::NotSectable,
        m,
        gram,
        route: Route::CosineChain,
        polynomial: None,
        roots: Vec::new(),
        sequences: Vec::new(),
        rejected_antiparallel: Vec::new(),
        budget_exhausted: false,
    };
    if !chain.holds {
        return Ok(decision);
    }
    let budget = Budget::new(opts.search.budget);
    let mut c = b.clone();
    for _ in 0..e {
        match bisector_vector(a, &c, &budget, opts.search.seed) {
            Ok(Some(next)) => c = next,
            Ok(None) => unreachable!("a rational cosine chain guarantees each bisector"),
            Err(Error::BudgetExhausted) => {
                decision.status = SectorStatus::Indeterminate;
                decision.budget_exhausted = true;
                return Ok(decision);
            }
            Err(err) => return Err(err),
        }
    }
    let target = primitive_reduce(b)?.0;
    let seq = generate_sequence(a, &c, m as usize)?;
    decision.sequences.push(accept(seq, &target));
    decision.status = SectorStatus::Sectable;
    Ok(decision)
}
