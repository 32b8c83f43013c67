//! Factoring, divisor enumeration and square-class helpers.
//!
//! Factoring is trial division by small primes followed by Brent's variant of
//! Pollard rho. All work is charged against a shared [`Budget`]; when it runs
//! out, the factorization is reported as incomplete instead of guessing.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Default number of work units for one decision.
pub const DEFAULT_BUDGET: u64 = 20_000_000;
/// Default cap on the number of enumerated divisors.
pub const DEFAULT_DIVISOR_CAP: usize = 1 << 20;
pub const DEFAULT_SEED: u64 = 0x5eed_2025;

const TRIAL_LIMIT: u32 = 10_000;
const RHO_BATCH: usize = 128;

/// Miller-Rabin with the first 13 prime bases is exact below this bound.
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA_ROUNDS: usize = 24;

/// Work meter shared by every step of a decision procedure.
///
/// One unit is roughly one trial division, one rho iteration, one
/// Miller-Rabin round or one polynomial evaluation.
#[derive(Debug)]
pub struct Budget {
    remaining: AtomicU64,
}

impl Budget {
    pub fn new(units: u64) -> Self {
        Budget {
            remaining: AtomicU64::new(units),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }

    pub fn spend(&self, units: u64) -> Result<()> {
        self.remaining
            .fetch_update(Ordering::AcqRel, Ordering::Acquire, |r| {
                r.checked_sub(units)
            })
            .map(|_| ())
            .map_err(|_| {
                self.remaining.store(0, Ordering::Release);
                Error::BudgetExhausted
            })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// Knobs shared by every budgeted operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: u64,
    pub divisor_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            divisor_cap: DEFAULT_DIVISOR_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `-1` or `+1`.
    pub sign: i8,
    /// Strictly increasing primes with positive exponents.
    pub prime_powers: Vec<(BigInt, u32)>,
    pub complete: bool,
    /// Unfactored cofactor left over when the budget ran out.
    pub residual: Option<BigInt>,
}

impl Factorization {
    /// Multiply out the factorization (including any residual).
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.prime_powers {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        if let Some(r) = &self.residual {
            v *= r;
        }
        v
    }

    pub fn divisor_count(&self) -> u128 {
        self.prime_powers
            .iter()
            .fold(1u128, |acc, (_, e)| acc.saturating_mul(*e as u128 + 1))
    }

    /// Factorization of `self^k`. Only meaningful for complete factorizations.
    pub fn pow(&self, k: u32) -> Factorization {
        Factorization {
            sign: if k.is_multiple_of(2) { 1 } else { self.sign },
            prime_powers: self
                .prime_powers
                .iter()
                .map(|(p, e)| (p.clone(), e * k))
                .collect(),
            complete: self.complete,
            residual: self
                .residual
                .as_ref()
                .map(|r| num_traits::pow(r.clone(), k as usize)),
        }
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut merged: Vec<(BigInt, u32)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.prime_powers, &other.prime_powers);
        while i < xs.len() || j < ys.len() {
            match (xs.get(i), ys.get(j)) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    merged.push((x.0.clone(), x.1 + y.1));
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    merged.push(x.clone());
                    i += 1;
                }
                (Some(x), None) => {
                    merged.push(x.clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    merged.push(y.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let residual = match (&self.residual, &other.residual) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (Some(r), Some(s)) => Some(r * s),
        };
        Factorization {
            sign: self.sign * other.sign,
            prime_powers: merged,
            complete: self.complete && other.complete,
            residual,
        }
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

/// Strong probable-prime test to base `a` for odd `n > 3`.
fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigInt::from(2u32), n);
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Miller-Rabin primality test.
///
/// Exact for `n < 3.3e24`; above that, 24 extra seeded random bases are used.
pub fn is_prime(n: &BigInt, budget: &Budget, seed: u64) -> Result<bool> {
    if n < &BigInt::from(2u32) {
        return Ok(false);
    }
    for &p in &MR_BASES {
        if *n == BigInt::from(p) {
            return Ok(true);
        }
        if (n % p).is_zero() {
            return Ok(false);
        }
    }
    for &base in &MR_BASES {
        budget.spend(1)?;
        if !strong_probable_prime(n, &BigInt::from(base)) {
            return Ok(false);
        }
    }
    let bound: BigInt = MR_DETERMINISTIC_BOUND.parse().expect("constant");
    if *n < bound {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let upper = n - 2u32;
    for _ in 0..MR_EXTRA_ROUNDS {
        budget.spend(1)?;
        let a = rng.gen_bigint_range(&BigInt::from(2u32), &upper);
        if !strong_probable_prime(n, &a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brent rho on machine words, for `n < 2^64`.
fn rho_split_u64(n: u64, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<u64> {
    use rand::Rng;
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
    let step = |x: u64, c: u64| ((mulmod(x, x) as u128 + c as u128) % n as u128) as u64;
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let (mut g, mut q, mut r) = (1u64, 1u64, 1usize);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            budget.spend(r as u64)?;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let batch = RHO_BATCH.min(r - k);
                budget.spend(batch as u64)?;
                for _ in 0..batch {
                    y = step(y, c);
                    q = mulmod(q, x.abs_diff(y));
                }
                g = q.gcd(&n);
                k += RHO_BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                budget.spend(1)?;
                ys = step(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
    }
}

/// Brent's cycle-finding rho. Returns a nontrivial factor of the odd
/// composite `n`, or `BudgetExhausted`.
fn rho_split(n: &BigInt, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<BigInt> {
    if let Some(small) = n.to_u64() {
        return rho_split_u64(small, budget, rng).map(BigInt::from);
    }
    let step = |x: &BigInt, c: &BigInt| (x * x + c) % n;
    loop {
        let c = rng.gen_bigint_range(&BigInt::one(), n);
        let mut y = rng.gen_bigint_range(&BigInt::zero(), n);
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r = 1usize;
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            budget.spend(r as u64)?;
            for _ in 0..r {
                y = step(&y, &c);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = RHO_BATCH.min(r - k);
                budget.spend(batch as u64)?;
                for _ in 0..batch {
                    y = step(&y, &c);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += RHO_BATCH;
            }
            r *= 2;
        }
        if &g == n {
            // The batch overshot; replay it one step at a time.
            loop {
                budget.spend(1)?;
                ys = step(&ys, &c);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Ok(g);
        }
    }
}

enum Trial {
    /// Fully factored.
    Done,
    /// The remaining cofactor is prime.
    Prime,
    /// The remaining cofactor has no prime factor below the trial limit.
    Cofactor,
    OutOfBudget,
}

/// Strip small prime factors from `n` in place.
fn trial_divide(n: &mut BigInt, budget: &Budget, primes: &mut Vec<(BigInt, u32)>) -> Trial {
    for &p in small_primes() {
        if n.is_one() {
            return Trial::Done;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > *n {
            return Trial::Prime;
        }
        if budget.spend(1).is_err() {
            return Trial::OutOfBudget;
        }
        let mut e = 0;
        while (&*n % p).is_zero() {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
    }
    if n.is_one() {
        Trial::Done
    } else {
        Trial::Cofactor
    }
}

/// Factor `x` into signed prime powers within the given budget.
///
/// Budget exhaustion is not an error: the result is returned with
/// `complete = false` and the unfactored part in `residual`.
pub fn factorize(x: &BigInt, budget: &Budget, seed: u64) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::FactorZero);
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let mut n = x.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut residual: Vec<BigInt> = Vec::new();

    let mut pending = Vec::new();
    match trial_divide(&mut n, budget, &mut primes) {
        Trial::Done => {}
        Trial::Prime => primes.push((n, 1)),
        Trial::Cofactor => pending.push(n),
        Trial::OutOfBudget => residual.push(n),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while let Some(m) = pending.pop() {
        match is_prime(&m, budget, seed) {
            Ok(true) => primes.push((m, 1)),
            Ok(false) => match rho_split(&m, budget, &mut rng) {
                Ok(f) => {
                    let other = &m / &f;
                    pending.push(f);
                    pending.push(other);
                }
                Err(_) => residual.push(m),
            },
            Err(_) => residual.push(m),
        }
    }

    primes.sort();
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    let residual = residual.into_iter().reduce(|a, b| a * b);
    Ok(Factorization {
        sign,
        prime_powers: merged,
        complete: residual.is_none(),
        residual,
    })
}

/// All positive divisors in increasing order.
pub fn divisors(f: &Factorization, cap: usize) -> Result<Vec<BigInt>> {
    if !f.complete {
        return Err(Error::IncompleteFactorization);
    }
    let count = f.divisor_count();
    if count > cap as u128 {
        return Err(Error::TooManyDivisors { count, cap });
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in &f.prime_powers {
        let base_len = divs.len();
        let mut power = BigInt::one();
        for _ in 0..*e {
            power *= p;
            for i in 0..base_len {
                divs.push(&divs[i] * &power);
            }
        }
    }
    divs.sort();
    Ok(divs)
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root, or `None` when `q` is not a square in Q.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = integer_sqrt_exact(q.numer())?;
    let den = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(num, den))
}

/// Write `x = d * q^2` with `d` squarefree. Fails with `BudgetExhausted` when
/// `x` cannot be fully factored within the budget.
pub fn squarefree_part(x: &BigInt, budget: &Budget, seed: u64) -> Result<(BigInt, BigInt)> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "squarefree part needs a positive integer, got {x}"
        )));
    }
    let f = factorize(x, budget, seed)?;
    if !f.complete {
        return Err(Error::BudgetExhausted);
    }
    let mut d = BigInt::one();
    let mut q = BigInt::one();
    for (p, e) in &f.prime_powers {
        if e % 2 == 1 {
            d *= p;
        }
        q *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((d, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn factor(x: i64) -> Factorization {
        factorize(&big(x), &Budget::unlimited(), DEFAULT_SEED).unwrap()
    }

    fn pp(f: &Factorization) -> Vec<(i64, u32)> {
        f.prime_powers
            .iter()
            .map(|(p, e)| (p.to_i64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(pp(&factor(1521)), vec![(3, 2), (13, 2)]);
        let f = factor(-1);
        assert_eq!(f.sign, -1);
        assert!(f.prime_powers.is_empty() && f.complete);
        assert_eq!(pp(&factor(5308416)), vec![(2, 16), (3, 4)]);
        assert_eq!(
            factorize(&big(0), &Budget::unlimited(), 1),
            Err(Error::FactorZero)
        );
    }

    #[test]
    fn factor_needs_rho() {
        // two primes just above the trial-division bound
        let n = big(10_007) * big(1_000_003) * big(1_000_003);
        let f = factorize(&n, &Budget::unlimited(), 7).unwrap();
        assert!(f.complete);
        assert_eq!(f.prime_powers, vec![(big(10_007), 1), (big(1_000_003), 2)]);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factor_beyond_machine_words() {
        // 10000019 * 10000000000037 > 2^64
        let p = big(10_000_019);
        let q: BigInt = "10000000000037".parse().unwrap();
        let n = &p * &q;
        assert!(n.to_u64().is_none());
        let f = factorize(&n, &Budget::unlimited(), 3).unwrap();
        assert_eq!(f.prime_powers, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn factor_word_sized_semiprime() {
        let n = big(999_999_937) * big(1_000_000_007);
        let f = factorize(&n, &Budget::unlimited(), 11).unwrap();
        assert_eq!(
            f.prime_powers,
            vec![(big(999_999_937), 1), (big(1_000_000_007), 1)]
        );
    }

    #[test]
    fn tiny_budget_leaves_residual() {
        let n = big(1_000_003) * big(1_000_033);
        let f = factorize(&n, &Budget::new(5), 1).unwrap();
        assert!(!f.complete);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn divisor_examples() {
        let d = |x: i64| -> Vec<i64> {
            divisors(&factor(x), DEFAULT_DIVISOR_CAP)
                .unwrap()
                .iter()
                .map(|d| d.to_i64().unwrap())
                .collect()
        };
        assert_eq!(d(169), vec![1, 13, 169]);
        assert_eq!(d(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(d(1521), vec![1, 3, 9, 13, 39, 117, 169, 507, 1521]);
        assert_eq!(d(1), vec![1]);
    }

    #[test]
    fn divisor_errors() {
        assert_eq!(
            divisors(&factor(720720), 10),
            Err(Error::TooManyDivisors {
                count: 240,
                cap: 10
            })
        );
        let partial = factorize(&(big(1_000_003) * big(1_000_033)), &Budget::new(3), 1).unwrap();
        assert_eq!(divisors(&partial, 100), Err(Error::IncompleteFactorization));
    }

    #[test]
    fn sqrt_examples() {
        let q = |n: i64, d: i64| Rational::new(big(n), big(d));
        assert_eq!(rational_sqrt(&q(16, 25)), Some(q(4, 5)));
        assert_eq!(rational_sqrt(&q(25, 49)), Some(q(5, 7)));
        assert_eq!(rational_sqrt(&q(250, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
        assert_eq!(rational_sqrt(&q(-4, 1)), None);
    }

    #[test]
    fn squarefree_examples() {
        let b = Budget::unlimited();
        assert_eq!(squarefree_part(&big(50), &b, 0).unwrap(), (big(2), big(5)));
        assert_eq!(squarefree_part(&big(1), &b, 0).unwrap(), (big(1), big(1)));
        assert_eq!(
            squarefree_part(&big(2500), &b, 0).unwrap(),
            (big(1), big(50))
        );
        assert!(squarefree_part(&big(0), &b, 0).is_err());
        let hard = big(1_000_003) * big(1_000_033);
        assert_eq!(
            squarefree_part(&hard, &Budget::new(2), 0),
            Err(Error::BudgetExhausted)
        );
    }

    #[test]
    fn budget_accounting() {
        let b = Budget::new(3);
        assert!(b.spend(2).is_ok());
        assert_eq!(b.remaining(), 1);
        assert_eq!(b.spend(2), Err(Error::BudgetExhausted));
        assert_eq!(b.remaining(), 0);
    }

    #[test]
    fn factorization_arithmetic() {
        let f = factor(12).pow(3).mul(&factor(-45));
        assert_eq!(f.value(), big(12 * 12 * 12 * -45));
        assert_eq!(pp(&f), vec![(2, 6), (3, 5), (5, 1)]);
    }
}
