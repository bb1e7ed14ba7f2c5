//! k-generalized Pell numbers, the dominant root of their characteristic
//! polynomial, and the Binet-type estimate `P_n ~ f_k(alpha) * alpha^n`.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bigfix::{golden_ratio, pow10, FixedReal};
use crate::error::{Error, Result};

/// `log10(phi^2)`, used to size working precision for `alpha^n`.
pub const LOG10_PHI_SQUARED: f64 = 0.417_988_671_222_618_6;
const LOG10_PHI: f64 = LOG10_PHI_SQUARED / 2.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellTerm {
    pub k: u32,
    pub n: i64,
    pub value: BigInt,
}

fn check_order(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!("order k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Terms `P_1, P_2, ...` of the order-`k` sequence, keeping only a window of
/// the last `k` values and their running sum.
#[derive(Clone, Debug)]
pub struct PellStream {
    k: u32,
    n: i64,
    window: VecDeque<BigInt>,
    sum: BigInt,
}

impl PellStream {
    pub fn new(k: u32) -> Result<Self> {
        check_order(k)?;
        Ok(PellStream {
            k,
            n: 0,
            window: VecDeque::with_capacity(k as usize + 1),
            sum: BigInt::zero(),
        })
    }

    pub fn order(&self) -> u32 {
        self.k
    }
}

impl Iterator for PellStream {
    type Item = PellTerm;

    fn next(&mut self) -> Option<PellTerm> {
        let value = if self.n == 0 {
            // P_1 = 1 on top of k - 1 zeros
            self.window.extend((0..self.k).map(|_| BigInt::zero()));
            BigInt::one()
        } else {
            // P_{n+1} = 2 P_n + P_{n-1} + ... + P_{n-k+1} = P_n + (window sum)
            self.window.front().expect("window holds k terms") + &self.sum
        };
        self.sum += &value;
        self.window.push_front(value.clone());
        if let Some(old) = self.window.pop_back() {
            self.sum -= old;
        }
        self.n += 1;
        Some(PellTerm {
            k: self.k,
            n: self.n,
            value,
        })
    }
}

/// `P_1 .. P_{n_max}` of order `k`.
pub fn pell_stream(k: u32, n_max: i64) -> Result<impl Iterator<Item = PellTerm>> {
    Ok(PellStream::new(k)?.take(n_max.max(0) as usize))
}

/// The exact term `P_n^(k)` for `n >= 2 - k`.
pub fn pell_number(k: u32, n: i64) -> Result<BigInt> {
    check_order(k)?;
    if n < 2 - i64::from(k) {
        return Err(Error::Parameter(format!(
            "index {n} lies below the start 2 - k = {} of the order-{k} sequence",
            2 - i64::from(k)
        )));
    }
    if n <= 0 {
        return Ok(BigInt::zero());
    }
    Ok(PellStream::new(k)?
        .nth((n - 1) as usize)
        .expect("stream is infinite")
        .value)
}

/// Classical Fibonacci number with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(m: u64) -> BigUint {
    // fast doubling: F(2j) = F(j)(2F(j+1) - F(j)), F(2j+1) = F(j)^2 + F(j+1)^2
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for bit in (0..64 - m.leading_zeros()).rev() {
        let c = &a * (&b * 2u32 - &a);
        let d = &a * &a + &b * &b;
        if (m >> bit) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = &c + &d;
            a = d;
        }
    }
    a
}

/// Dominant root `alpha(k)` with `f_k(alpha)`, both as certified enclosures.
#[derive(Clone, Debug)]
pub struct DominantRoot {
    pub k: u32,
    pub alpha: FixedReal,
    pub fk_alpha: FixedReal,
}

impl DominantRoot {
    pub fn scale(&self) -> u32 {
        self.alpha.scale()
    }
}

/// `f_k(x) = (x - 1) / (k (x^2 - 3x + 1) + x^2 - 1)`.
pub fn fk_at(k: u32, x: &FixedReal, scale: u32) -> Result<FixedReal> {
    let w = scale + 4;
    let x2 = x.mul(x, w);
    let quad = x2
        .sub(&x.mul_int(&BigInt::from(3)), w)
        .add(&FixedReal::one(), w);
    let den = quad
        .mul_int(&BigInt::from(k))
        .add(&x2, w)
        .sub(&FixedReal::one(), w);
    let num = x.sub(&FixedReal::one(), w);
    Ok(num.div(&den, w)?.rescale(scale))
}

/// Sign of `(x - 1) Psi_k(x) = x^(k-1) (x^2 - 3x + 1) + 1` at the exact
/// point `m * 10^-w`, or `None` if the enclosure cannot decide it.
fn cleared_sign(k: u32, m: &BigInt, w: u32) -> Option<std::cmp::Ordering> {
    let x = FixedReal::exact(m.clone(), w);
    let ten_w = BigInt::from(pow10(w));
    let quad = m * m - m * &ten_w * 3u32 + &ten_w * &ten_w;
    let quad = FixedReal::exact(quad, 2 * w);
    let power = x.powi(u64::from(k - 1), w + 4);
    let v = power.mul(&quad, 2 * w).add(&FixedReal::one(), 2 * w);
    v.cmp_certain(&FixedReal::zero())
}

/// Unique real root of `Psi_k(x) = x^k - 2x^(k-1) - ... - x - 1` above 1,
/// bracketed by `phi^2 (1 - phi^-k) < alpha < phi^2` and refined by bisection
/// to width `10^-scale`.
pub fn dominant_root(k: u32, scale: u32) -> Result<DominantRoot> {
    check_order(k)?;
    let out = scale + 6;
    // the bracket has width phi^(2-k); it must be resolvable at the working scale
    let w = (out + 10).max(((f64::from(k) - 2.0) * LOG10_PHI).ceil() as u32 + 12);
    let phi = golden_ratio(w + 4);
    let phi2 = phi.add(&FixedReal::one(), w + 4);
    let gap = FixedReal::one().div(&phi.powi(u64::from(k - 2), w + 4), w + 4)?;
    let lo_end = phi2.sub(&gap, w + 4).rescale(w);
    let hi_end = phi2.rescale(w);
    let mut lo = lo_end.lower();
    let mut hi = hi_end.upper();
    if lo >= hi {
        return Err(Error::precision("root bracket collapsed at working scale"));
    }
    use std::cmp::Ordering::*;
    if cleared_sign(k, &lo, w) != Some(Less) || cleared_sign(k, &hi, w) != Some(Greater) {
        return Err(Error::precision(format!(
            "cannot certify the root bracket for k = {k} at scale {w}"
        )));
    }
    let target = BigInt::from(pow10(w - out));
    while &hi - &lo > target {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        match cleared_sign(k, &mid, w) {
            Some(Less) => lo = mid,
            Some(Greater) => hi = mid,
            Some(Equal) => {
                lo = mid.clone();
                hi = mid;
            }
            None => {
                return Err(Error::InsufficientPrecision {
                    what: format!("sign of the characteristic polynomial undecided (k = {k})"),
                    needed_scale: Some(scale * 2),
                })
            }
        }
    }
    let mid: BigInt = (&lo + &hi) >> 1u32;
    let half = (&hi - &mid).max(&mid - &lo);
    let alpha = FixedReal::new(
        mid,
        w,
        half.to_biguint().expect("bracket ordered"),
    );
    let fk_alpha = fk_at(k, &alpha, out)?;
    Ok(DominantRoot {
        k,
        alpha: alpha.rescale(scale),
        fk_alpha: fk_alpha.rescale(scale),
    })
}

/// Checks `phi^2 (1 - phi^-k) < alpha < phi^2` and `0.276 < f_k(alpha) < 0.5`.
/// The scale is chosen from `k`: `phi^2 - alpha` is roughly `phi^(2-2k)`.
pub fn root_interval_holds(k: u32) -> Result<bool> {
    check_order(k)?;
    let scale = (f64::from(k) * LOG10_PHI_SQUARED).ceil() as u32 + 20;
    let root = dominant_root(k, scale)?;
    let w = scale + 4;
    let phi = golden_ratio(w);
    let phi2 = phi.add(&FixedReal::one(), w);
    let lower = phi2.sub(&phi2.div(&phi.powi(u64::from(k), w), w)?, w);
    let f_lo: FixedReal = "0.276".parse()?;
    let f_hi: FixedReal = "0.5".parse()?;
    Ok(lower.certainly_lt(&root.alpha)
        && root.alpha.certainly_lt(&phi2)
        && f_lo.certainly_lt(&root.fk_alpha)
        && root.fk_alpha.certainly_lt(&f_hi))
}

/// Decimal digits needed after the point for `alpha^n` to carry an absolute
/// error well below `1/8`.
pub fn binet_scale(n: i64) -> u32 {
    (n.max(0) as f64 * LOG10_PHI_SQUARED).ceil() as u32 + 12
}

/// Certified enclosure of `f_k(alpha) alpha^n`, accurate to better than `1/8`.
pub fn binet_estimate(root: &DominantRoot, n: i64) -> Result<FixedReal> {
    if n < 2 - i64::from(root.k) {
        return Err(Error::Parameter(format!(
            "index {n} lies below 2 - k for k = {}",
            root.k
        )));
    }
    let s = root.scale();
    let power = root.alpha.powi_signed(n, s)?;
    let est = root.fk_alpha.mul(&power, s);
    // err * 10^-s < 1/8
    if est.err_ulp() * 8u32 >= pow10(s) {
        return Err(Error::InsufficientPrecision {
            what: format!("alpha^{n} needs more digits than scale {s}"),
            needed_scale: Some(binet_scale(n)),
        });
    }
    Ok(est)
}

/// `|P_n - f_k(alpha) alpha^n| < 1/2`, decided on certified enclosures.
pub fn binet_error_below_half(root: &DominantRoot, n: i64, value: &BigInt) -> Result<bool> {
    let est = binet_estimate(root, n)?;
    let diff = FixedReal::from_int(value.clone()).sub(&est, root.scale()).abs();
    let half = FixedReal::exact(5, 1);
    match diff.cmp_certain(&half) {
        Some(std::cmp::Ordering::Less) => Ok(true),
        Some(_) => Ok(false),
        None => Err(Error::precision("Binet error too close to 1/2")),
    }
}

/// `alpha^(n-2) <= P_n <= alpha^(n-1)`, decided on certified enclosures.
pub fn growth_bounds_hold(root: &DominantRoot, n: i64, value: &BigInt) -> Result<bool> {
    if n < 1 {
        return Err(Error::Parameter("growth bounds are stated for n >= 1".into()));
    }
    let s = root.scale();
    let v = FixedReal::from_int(value.clone());
    let lower = root.alpha.powi_signed(n - 2, s)?;
    let upper = root.alpha.powi_signed(n - 1, s)?;
    let lo_ok = lower.certainly_le(&v);
    let hi_ok = v.certainly_le(&upper);
    if lo_ok && hi_ok {
        return Ok(true);
    }
    if v.certainly_lt(&lower) || upper.certainly_lt(&v) {
        return Ok(false);
    }
    Err(Error::precision(format!("growth bound for n = {n} undecided")))
}

/// The two approximations used when `n < phi^(k/2)`:
/// `|alpha^n - phi^(2n)| < phi^(2n) / phi^(k/2 - 2)` and
/// `|f_k(alpha) - f_k(phi^2)| < k / phi^(k-2)` with `f_k(phi^2) = (5 - sqrt 5)/10`.
pub fn verify_phi_approx(k: u32, n: u64, scale: u32) -> Result<bool> {
    check_order(k)?;
    let w = scale
        + (f64::from(k) * 0.11).ceil() as u32
        + (n.max(1) as f64).log10().ceil() as u32
        + 12;
    let phi = golden_ratio(w + 4);
    let sqrt_phi = phi.sqrt(w + 4)?;
    let phi_half_k = sqrt_phi.powi(u64::from(k), w);
    let n_real = FixedReal::from_int(n);
    match n_real.cmp_certain(&phi_half_k) {
        Some(std::cmp::Ordering::Less) => {}
        Some(_) => {
            return Err(Error::Parameter(format!(
                "n = {n} is not below phi^(k/2) for k = {k}"
            )))
        }
        None => return Err(Error::precision("cannot compare n with phi^(k/2)")),
    }

    let root = dominant_root(k, w)?;
    let phi2 = phi.mul(&phi, w);
    let phi2n = phi2.powi(n, w);
    let alpha_n = root.alpha.powi(n, w);
    let lhs1 = alpha_n.sub(&phi2n, w).abs();
    // phi^(2n) / phi^(k/2 - 2) = phi^(2n) * phi^2 / phi^(k/2)
    let rhs1 = phi2n.mul(&phi2, w).div(&phi_half_k, w)?;

    let sqrt5 = FixedReal::from_int(5).sqrt(w)?;
    let fk_phi2 = FixedReal::from_int(5)
        .sub(&sqrt5, w)
        .div(&FixedReal::from_int(10), w)?;
    let lhs2 = root.fk_alpha.sub(&fk_phi2, w).abs();
    let rhs2 = FixedReal::from_int(k).mul(&phi2, w).div(&phi.powi(u64::from(k), w), w)?;

    let decide = |lhs: &FixedReal, rhs: &FixedReal| -> Result<bool> {
        match lhs.cmp_certain(rhs) {
            Some(std::cmp::Ordering::Less) => Ok(true),
            Some(_) => Ok(false),
            None => Err(Error::precision("phi-approximation comparison undecided")),
        }
    };
    Ok(decide(&lhs1, &rhs1)? && decide(&lhs2, &rhs2)?)
}
