//! Largest prime factors, 7-smooth decomposition and the search for smooth
//! terms among the Pell sequences.

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pell::{fibonacci, PellStream, PellTerm};

/// Miller-Rabin with the first thirteen prime bases is a proof below this.
const DETERMINISTIC_MR_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_MR_ROUNDS: usize = 64;
const PRIME_TABLE_LIMIT: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothKind {
    Smooth { a: u32, b: u32, c: u32, d: u32 },
    /// `residual` is what is left of `m` after removing every 2, 3, 5 and 7.
    NonSmooth { residual: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothCertificate {
    pub m: BigInt,
    pub kind: SmoothKind,
}

impl SmoothCertificate {
    pub fn is_smooth(&self) -> bool {
        matches!(self.kind, SmoothKind::Smooth { .. })
    }

    /// `[a, b, c, d]` in the smooth case.
    pub fn exponents(&self) -> Option<[u32; 4]> {
        match self.kind {
            SmoothKind::Smooth { a, b, c, d } => Some([a, b, c, d]),
            SmoothKind::NonSmooth { .. } => None,
        }
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> bool {
        match &self.kind {
            SmoothKind::Smooth { a, b, c, d } => {
                let v = BigInt::from(2u32).pow(*a)
                    * BigInt::from(3u32).pow(*b)
                    * BigInt::from(5u32).pow(*c)
                    * BigInt::from(7u32).pow(*d);
                v == self.m
            }
            SmoothKind::NonSmooth { residual } => {
                residual > &BigInt::one()
                    && (&self.m % residual).is_zero()
                    && residual.gcd(&BigInt::from(210u32)).is_one()
            }
        }
    }
}

fn strip(r: &mut BigUint, p: u32) -> u32 {
    let mut e = 0;
    while (&*r % p).is_zero() {
        *r /= p;
        e += 1;
    }
    e
}

/// Splits `m >= 1` into `2^a 3^b 5^c 7^d` times a residual.
pub fn seven_smooth_decompose(m: &BigInt) -> Result<SmoothCertificate> {
    if m.sign() != Sign::Plus {
        return Err(Error::Domain(format!("smooth decomposition needs m >= 1, got {m}")));
    }
    let mut r = m.magnitude().clone();
    let a = r.trailing_zeros().unwrap_or(0) as u32;
    r >>= a;
    let b = strip(&mut r, 3);
    let c = strip(&mut r, 5);
    let d = strip(&mut r, 7);
    let kind = if r.is_one() {
        SmoothKind::Smooth { a, b, c, d }
    } else {
        SmoothKind::NonSmooth {
            residual: BigInt::from(r),
        }
    };
    Ok(SmoothCertificate { m: m.clone(), kind })
}

/// How hard [`factorize`] may work on one number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over the primes up to this bound (capped at 2^20).
    pub trial_bound: u32,
    /// Pollard-rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 10_000,
            rho_iterations: 10_000_000,
        }
    }
}

impl FactorBudget {
    pub fn trial_only(trial_bound: u32) -> Self {
        FactorBudget {
            trial_bound,
            rho_iterations: 0,
        }
    }

    fn effective_trial_bound(&self) -> u32 {
        self.trial_bound.clamp(2, PRIME_TABLE_LIMIT)
    }
}

/// Prime factorization of `|m|`. Cofactors that could not be split within
/// the budget, or whose primality is only probable, land in `unresolved`;
/// each of them is coprime to every prime up to `trial_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub m: BigInt,
    pub factors: Vec<(BigUint, u32)>,
    pub unresolved: Vec<BigUint>,
    pub trial_bound: u32,
    pub complete: bool,
}

impl Factorization {
    /// Sum of the exponents of the proven prime factors.
    pub fn total_exponent(&self) -> u64 {
        self.factors.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn largest_proven(&self) -> Option<&BigUint> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Multiplies everything back together (proven and unresolved parts).
    pub fn product(&self) -> BigUint {
        let mut v = BigUint::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        for u in &self.unresolved {
            v *= u;
        }
        v
    }
}

fn prime_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = PRIME_TABLE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mr_round(n: &BigUint, n1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n1 {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven by trial division or by the deterministic base set.
    Prime,
    /// Survived the deterministic bases and 64 seeded random rounds.
    ProbablePrime,
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for p in MR_BASES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    for a in MR_BASES {
        if !mr_round(n, &n1, &d, s, &BigUint::from(a)) {
            return Primality::Composite;
        }
    }
    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_MR_LIMIT) {
        return Primality::Prime;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11_5eed);
    let span = n - 3u32;
    for _ in 0..EXTRA_MR_ROUNDS {
        let a = BigUint::from(rng.gen::<u64>()) % &span + 2u32;
        if !mr_round(n, &n1, &d, s, &a) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

/// Brent's variant of Pollard rho on `x -> x^2 + c`. Returns a proper
/// divisor, or `None` when the iteration budget runs out or the cycle closes
/// without splitting.
fn brent_rho_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        x = y;
        if *budget < r {
            return None;
        }
        *budget -= r;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += steps;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_rho_big(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        if *budget < r {
            return None;
        }
        *budget -= r;
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += steps;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    for c in 1u64.. {
        if *budget == 0 {
            return None;
        }
        let d = match n.to_u64() {
            Some(small) => brent_rho_u64(small, c, budget).map(BigUint::from),
            None => brent_rho_big(n, c, budget),
        };
        if d.is_some() {
            return d;
        }
    }
    unreachable!()
}

/// Factors `|m|` by trial division up to the budget's bound, then
/// Miller-Rabin and Pollard-Brent rho on what remains.
pub fn factorize(m: &BigInt, budget: &FactorBudget) -> Factorization {
    let bound = budget.effective_trial_bound();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut unresolved = Vec::new();
    let mut r = m.magnitude().clone();

    if r > BigUint::one() {
        for &p in prime_table().iter().take_while(|&&p| p <= bound) {
            if r.is_one() {
                break;
            }
            if r < BigUint::from(u64::from(p) * u64::from(p)) {
                // the residual has no factor below p, so it is prime
                primes.push(std::mem::take(&mut r));
                r = BigUint::one();
                break;
            }
            while (&r % p).is_zero() {
                r /= p;
                primes.push(BigUint::from(p));
            }
        }
    }

    let b1 = u64::from(bound) + 1;
    let mut pending = Vec::new();
    if !r.is_one() {
        if r < BigUint::from(b1 * b1) {
            primes.push(r);
        } else {
            pending.push(r);
        }
    }
    while let Some(c) = pending.pop() {
        match primality(&c) {
            Primality::Prime => primes.push(c),
            Primality::ProbablePrime => unresolved.push(c),
            Primality::Composite => {
                let mut left = budget.rho_iterations;
                match split(&c, &mut left) {
                    Some(d) => {
                        pending.push(&c / &d);
                        pending.push(d);
                    }
                    None => unresolved.push(c),
                }
            }
        }
    }

    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    unresolved.sort();
    Factorization {
        m: m.clone(),
        complete: unresolved.is_empty(),
        factors,
        unresolved,
        trial_bound: bound,
    }
}

/// `P(m)`, the largest prime factor, with `P(0) = P(1) = P(-1) = 1`.
/// When `exact` is false the value is a proven lower bound: either the
/// largest proven prime factor or `trial_bound + 1`, whichever is larger.
pub fn largest_prime_factor(m: &BigInt, budget: &FactorBudget) -> (BigInt, bool) {
    if m.magnitude() <= &BigUint::one() {
        return (BigInt::one(), true);
    }
    let f = factorize(m, budget);
    let proven = f.largest_proven().cloned().unwrap_or_else(BigUint::one);
    if f.complete {
        (BigInt::from(proven), true)
    } else {
        let floor = BigUint::from(f.trial_bound) + 1u32;
        (BigInt::from(proven.max(floor)), false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothHit {
    pub term: PellTerm,
    pub certificate: SmoothCertificate,
}

impl SmoothHit {
    pub fn k(&self) -> u32 {
        self.term.k
    }

    pub fn n(&self) -> i64 {
        self.term.n
    }
}

fn check_search_ranges(k_range: &RangeInclusive<u32>, n_range: &RangeInclusive<i64>) -> Result<()> {
    if !k_range.is_empty() && *k_range.start() < 2 {
        return Err(Error::Parameter("k range must start at 2 or above".into()));
    }
    if !n_range.is_empty() && *n_range.start() < 4 {
        return Err(Error::Parameter("n range must start at 4 or above".into()));
    }
    Ok(())
}

/// Smooth terms `P_n^(k)` with `n` in `n_range`, for one order `k`.
pub fn smooth_hits_for_order(k: u32, n_range: RangeInclusive<i64>) -> Result<Vec<SmoothHit>> {
    check_search_ranges(&(k..=k), &n_range)?;
    if n_range.is_empty() {
        return Ok(Vec::new());
    }
    let mut hits = Vec::new();
    for term in PellStream::new(k)?.take(*n_range.end() as usize) {
        if !n_range.contains(&term.n) {
            continue;
        }
        let certificate = seven_smooth_decompose(&term.value)?;
        if certificate.is_smooth() {
            hits.push(SmoothHit { term, certificate });
        }
    }
    Ok(hits)
}

/// Every 7-smooth `P_n^(k)` on the grid, ordered by `k` then `n`.
pub fn search_smooth_terms(
    k_range: RangeInclusive<u32>,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<SmoothHit>> {
    check_search_ranges(&k_range, &n_range)?;
    let mut hits = Vec::new();
    for k in k_range {
        hits.extend(smooth_hits_for_order(k, n_range.clone())?);
    }
    Ok(hits)
}

/// Odd indices `m` in `[7, 2k+1]` with `F_m` 7-smooth.
pub fn fibonacci_smooth_case(k: u32) -> Result<Vec<u64>> {
    if k < 3 {
        return Err(Error::Parameter(format!("fibonacci case needs k >= 3, got {k}")));
    }
    let mut hits = Vec::new();
    for m in (7..=2 * u64::from(k) + 1).step_by(2) {
        if seven_smooth_decompose(&BigInt::from(fibonacci(m)))?.is_smooth() {
            hits.push(m);
        }
    }
    Ok(hits)
}
