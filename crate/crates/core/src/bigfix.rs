//! Certified decimal fixed-point reals on top of arbitrary-precision integers.
//!
//! A [`FixedReal`] stands for every real `v` with
//! `|v - mantissa * 10^-scale| <= err * 10^-scale`. Every operation widens
//! the error radius enough to keep the true result inside, so comparisons
//! that succeed on enclosures are proofs about the underlying reals.
//!
//! The scale is decimal because lattice entries are `floor(C * eta)` for
//! `C = m * 10^e`; truncating decimal digits is then exact integer work.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

pub use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `10^n` as a natural number.
pub fn pow10(n: u32) -> BigUint {
    BigUint::from(10u32).pow(n)
}

fn pow10i(n: u32) -> BigInt {
    BigInt::from(pow10(n))
}

/// Round `n / d` to the nearest integer (ties away from zero). Returns the
/// quotient and the signed remainder `n - q*d`, which satisfies `|r| <= d/2`.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!d.is_zero());
    let (d_abs, n_adj) = if d.is_negative() {
        (-d, -n)
    } else {
        (d.clone(), n.clone())
    };
    let (mut q, mut r) = n_adj.div_mod_floor(&d_abs);
    // r in [0, d)
    let twice = &r * 2u32;
    if twice >= d_abs {
        q += 1u32;
        r -= &d_abs;
    }
    (q, r)
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    (n + d - 1u32) / d
}

fn ceil_div_i(n: &BigInt, d: &BigInt) -> BigUint {
    // both non-negative by construction
    ceil_div(
        &n.to_biguint().expect("non-negative"),
        &d.to_biguint().expect("positive"),
    )
}

fn abs_u(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

/// Arbitrary-precision decimal fixed-point real with a certified error radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedReal {
    mantissa: BigInt,
    scale: u32,
    err: BigUint,
}

impl FixedReal {
    pub fn new(mantissa: BigInt, scale: u32, err_ulp: BigUint) -> Self {
        FixedReal {
            mantissa,
            scale,
            err: err_ulp,
        }
    }

    /// An exactly known value `mantissa * 10^-scale`.
    pub fn exact(mantissa: impl Into<BigInt>, scale: u32) -> Self {
        FixedReal::new(mantissa.into(), scale, BigUint::zero())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        FixedReal::exact(n, 0)
    }

    pub fn zero() -> Self {
        FixedReal::from_int(0)
    }

    pub fn one() -> Self {
        FixedReal::from_int(1)
    }

    /// `p / q` rounded to `scale` digits; exact when the quotient terminates.
    pub fn from_ratio(p: &BigInt, q: &BigInt, scale: u32) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let (m, r) = div_round(&(p * pow10i(scale)), q);
        let err = if r.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
        Ok(FixedReal::new(m, scale, err))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn err_ulp(&self) -> &BigUint {
        &self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Lower end of the enclosure, in units of `10^-scale`.
    pub fn lower(&self) -> BigInt {
        &self.mantissa - BigInt::from(self.err.clone())
    }

    /// Upper end of the enclosure, in units of `10^-scale`.
    pub fn upper(&self) -> BigInt {
        &self.mantissa + BigInt::from(self.err.clone())
    }

    /// Mantissa and error expressed at a scale no smaller than the current one.
    fn aligned(&self, scale: u32) -> (BigInt, BigUint) {
        debug_assert!(scale >= self.scale);
        let f = pow10(scale - self.scale);
        (&self.mantissa * BigInt::from(f.clone()), &self.err * f)
    }

    /// Re-express at another scale. Going up is exact; going down rounds to
    /// nearest and folds the rounding residue into the error radius.
    pub fn rescale(&self, scale: u32) -> FixedReal {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let (m, e) = self.aligned(scale);
                FixedReal::new(m, scale, e)
            }
            Ordering::Less => {
                let d = pow10(self.scale - scale);
                let (q, r) = div_round(&self.mantissa, &BigInt::from(d.clone()));
                let e = ceil_div(&(&self.err + abs_u(&r)), &d);
                FixedReal::new(q, scale, e)
            }
        }
    }

    pub fn neg(&self) -> FixedReal {
        FixedReal::new(-&self.mantissa, self.scale, self.err.clone())
    }

    pub fn abs(&self) -> FixedReal {
        FixedReal::new(self.mantissa.abs(), self.scale, self.err.clone())
    }

    pub fn add(&self, other: &FixedReal, scale: u32) -> FixedReal {
        let u = self.scale.max(other.scale);
        let (a, ea) = self.aligned(u);
        let (b, eb) = other.aligned(u);
        FixedReal::new(a + b, u, ea + eb).rescale(scale)
    }

    pub fn sub(&self, other: &FixedReal, scale: u32) -> FixedReal {
        self.add(&other.neg(), scale)
    }

    pub fn mul(&self, other: &FixedReal, scale: u32) -> FixedReal {
        let m = &self.mantissa * &other.mantissa;
        let e = abs_u(&self.mantissa) * &other.err
            + abs_u(&other.mantissa) * &self.err
            + &self.err * &other.err;
        FixedReal::new(m, self.scale + other.scale, e).rescale(scale)
    }

    /// Exact multiplication by an integer; the scale is unchanged.
    pub fn mul_int(&self, n: &BigInt) -> FixedReal {
        FixedReal::new(&self.mantissa * n, self.scale, &self.err * abs_u(n))
    }

    pub fn div(&self, other: &FixedReal, scale: u32) -> Result<FixedReal> {
        let ym = abs_u(&other.mantissa);
        if ym <= other.err {
            return Err(Error::IndeterminateDivisor);
        }
        let num = &self.mantissa * pow10i(other.scale + scale);
        let den = &other.mantissa * pow10i(self.scale);
        let (q, r) = div_round(&num, &den);
        let round = if r.is_zero() { 0u32 } else { 1u32 };

        let prop_num = (&self.err * &ym + abs_u(&self.mantissa) * &other.err)
            * pow10(other.scale + scale);
        let prop_den = &ym * (&ym - &other.err) * pow10(self.scale);
        let e = ceil_div(&prop_num, &prop_den) + round;
        Ok(FixedReal::new(q, scale, e))
    }

    /// `self^n` by binary exponentiation, every product rounded at `scale`.
    pub fn powi(&self, n: u64, scale: u32) -> FixedReal {
        let mut result = FixedReal::one().rescale(scale);
        if n == 0 {
            return result;
        }
        let mut base = self.rescale(scale.max(self.scale));
        let mut e = n;
        let mut first = true;
        loop {
            if e & 1 == 1 {
                result = if first {
                    base.rescale(scale)
                } else {
                    result.mul(&base, scale)
                };
                first = false;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base, scale);
        }
        result
    }

    /// `self^n` for any integer exponent; negative powers divide.
    pub fn powi_signed(&self, n: i64, scale: u32) -> Result<FixedReal> {
        if n >= 0 {
            Ok(self.powi(n as u64, scale))
        } else {
            let p = self.powi(n.unsigned_abs(), scale + 5);
            FixedReal::one().div(&p, scale)
        }
    }

    pub fn sqrt(&self, scale: u32) -> Result<FixedReal> {
        if self.mantissa.is_zero() && self.err.is_zero() {
            return Ok(FixedReal::zero().rescale(scale));
        }
        if self.certainly_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        if !self.certainly_positive() {
            return Err(Error::Domain(
                "square root argument is not certainly positive".into(),
            ));
        }
        let w = (scale + 2).max(self.scale.div_ceil(2));
        let shift = pow10(2 * w - self.scale);
        let n = abs_u(&self.mantissa) * &shift;
        let r = n.sqrt();
        let round = if &r * &r == n { 0u32 } else { 1u32 };
        let mut e = BigUint::from(round);
        if !self.err.is_zero() {
            let lo = (abs_u(&self.mantissa) - &self.err) * &shift;
            let lo_root = lo.sqrt();
            if lo_root.is_zero() {
                return Err(Error::precision("square root argument too close to zero"));
            }
            e += ceil_div(&(&self.err * &shift), &lo_root);
        }
        Ok(FixedReal::new(BigInt::from(r), w, e).rescale(scale))
    }

    /// Natural logarithm.
    pub fn ln(&self, scale: u32) -> Result<FixedReal> {
        if !self.certainly_positive() {
            return Err(Error::Domain("logarithm of a non-positive number".into()));
        }
        if self.err.is_zero() && self.mantissa == pow10i(self.scale) {
            return Ok(FixedReal::zero().rescale(scale));
        }
        let w = scale + guard_digits(scale);
        let m = abs_u(&self.mantissa);
        let (v, mut e) = ln_ratio(&m, &pow10(self.scale), w);
        if !self.err.is_zero() {
            // |ln x - ln x~| <= err / (x~ - err)
            let num = BigInt::from(&self.err * pow10(w));
            let den = BigInt::from(&m - &self.err);
            e += ceil_div_i(&num, &den);
        }
        Ok(FixedReal::new(v, w, e).rescale(scale))
    }

    /// `floor(self * 10^e)`, provided the enclosure pins it down.
    pub fn floor_scaled(&self, e: u32) -> Result<BigInt> {
        let (lo, hi) = (self.lower(), self.upper());
        let (flo, fhi) = if e >= self.scale {
            let f = pow10i(e - self.scale);
            (lo * &f, hi * &f)
        } else {
            let d = pow10i(self.scale - e);
            (lo.div_floor(&d), hi.div_floor(&d))
        };
        if flo == fhi {
            Ok(flo)
        } else {
            Err(Error::InsufficientPrecision {
                what: format!("floor of value scaled by 10^{e} is not certain"),
                needed_scale: Some(self.scale + 10),
            })
        }
    }

    pub fn certainly_positive(&self) -> bool {
        self.mantissa > BigInt::from(self.err.clone())
    }

    pub fn certainly_negative(&self) -> bool {
        -&self.mantissa > BigInt::from(self.err.clone())
    }

    pub fn contains_zero(&self) -> bool {
        !self.certainly_positive() && !self.certainly_negative()
    }

    /// Certified comparison; `None` when the enclosures overlap.
    pub fn cmp_certain(&self, other: &FixedReal) -> Option<Ordering> {
        let u = self.scale.max(other.scale);
        let d = self.add(&other.neg(), u);
        if d.certainly_positive() {
            Some(Ordering::Greater)
        } else if d.certainly_negative() {
            Some(Ordering::Less)
        } else if d.is_exact() && d.mantissa.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &FixedReal) -> bool {
        self.cmp_certain(other) == Some(Ordering::Less)
    }

    /// Every point of `self` is at most every point of `other`.
    pub fn certainly_le(&self, other: &FixedReal) -> bool {
        matches!(
            self.cmp_certain(other),
            Some(Ordering::Less) | Some(Ordering::Equal)
        )
    }

    /// The two enclosures share at least one point.
    pub fn overlaps(&self, other: &FixedReal) -> bool {
        let u = self.scale.max(other.scale);
        let (a, ea) = self.aligned(u);
        let (b, eb) = other.aligned(u);
        (a - b).magnitude() <= &(ea + eb)
    }

    /// `other` lies inside `self`'s enclosure.
    pub fn contains(&self, other: &FixedReal) -> bool {
        let u = self.scale.max(other.scale);
        let (a, ea) = self.aligned(u);
        let (b, eb) = other.aligned(u);
        let ea = BigInt::from(ea);
        let eb = BigInt::from(eb);
        &a - &ea <= &b - &eb && &b + &eb <= a + ea
    }

    /// The enclosure expressed as a rational lower/upper pair.
    pub fn bounds(&self) -> (num_rational::BigRational, num_rational::BigRational) {
        let d = pow10i(self.scale);
        (
            num_rational::BigRational::new(self.lower(), d.clone()),
            num_rational::BigRational::new(self.upper(), d),
        )
    }

    /// Midpoint in scientific notation with `sig` significant digits, e.g. `5.8e51`.
    pub fn to_sci(&self, sig: usize) -> String {
        let digits = self.mantissa.magnitude().to_string();
        if self.mantissa.is_zero() {
            return "0".into();
        }
        let exp = digits.len() as i64 - 1 - self.scale as i64;
        let sig = sig.max(1).min(digits.len());
        // round the leading `sig` digits
        let lead = BigUint::from_str(&digits[..sig]).expect("digits");
        let rest = &digits[sig..];
        let mut lead = if rest.as_bytes().first().is_some_and(|&c| c >= b'5') {
            lead + 1u32
        } else {
            lead
        };
        let mut exp = exp;
        let mut ls = lead.to_string();
        if ls.len() > sig {
            exp += 1;
            lead /= 10u32;
            ls = lead.to_string();
        }
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        if ls.len() == 1 {
            format!("{sign}{ls}e{exp}")
        } else {
            format!("{sign}{}.{}e{exp}", &ls[..1], &ls[1..])
        }
    }

    /// Approximate value; saturates to +-inf outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        self.to_sci(20).parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_string();
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let s = self.scale as usize;
        if s == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = if digits.len() <= s {
            format!("{}{}", "0".repeat(s + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - s);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for FixedReal {
    type Err = Error;

    /// Optional sign, digits, optional point and digits. The result is exact.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let all_digits = |x: &str| x.bytes().all(|c| c.is_ascii_digit());
        if int.len() + frac.len() == 0 || !all_digits(int) || !all_digits(frac) {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        let joined = format!("{int}{frac}");
        let mag = BigInt::from_str(&joined).map_err(|e| Error::Parse(e.to_string()))?;
        let scale = u32::try_from(frac.len()).map_err(|_| Error::Parse("too many digits".into()))?;
        Ok(FixedReal::exact(if neg { -mag } else { mag }, scale))
    }
}

/// Extra working digits for a series evaluated to `scale` digits: enough to
/// absorb one ulp of rounding per term.
fn guard_digits(scale: u32) -> u32 {
    8 + (scale.max(10) as f64).log10().ceil() as u32
}

/// `atanh(a/b) * 10^w` for `|a/b| <= 1/2`, with its error in ulps.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigUint) {
    debug_assert!(a.magnitude() * 2u32 <= *b.magnitude());
    let a2 = a * a;
    let b2 = b * b;
    let (mut pow, r) = div_round(&(a * pow10i(w)), b);
    let mut pow_err: u64 = if r.is_zero() { 0 } else { 1 };
    let mut sum = BigInt::zero();
    let mut sum_err = BigUint::zero();
    let mut i: u64 = 0;
    loop {
        let (term, tr) = div_round(&pow, &BigInt::from(2 * i + 1));
        sum += term;
        sum_err += pow_err + u64::from(!tr.is_zero());
        let (next, nr) = div_round(&(&pow * &a2), &b2);
        // ratio <= 1/4, so the carried error stays bounded by 2
        pow_err = pow_err.div_ceil(4) + u64::from(!nr.is_zero());
        pow = next;
        i += 1;
        if pow.magnitude() + BigUint::from(pow_err) <= BigUint::from(3u32) {
            // remaining terms: geometric with ratio <= 1/4
            let rest = pow.magnitude() + BigUint::from(pow_err);
            sum_err += ceil_div(&(rest * 4u32), &BigUint::from(3u32));
            break;
        }
    }
    (sum, sum_err)
}

static LN2_CACHE: OnceLock<Mutex<Option<FixedReal>>> = OnceLock::new();

/// `ln 2 = 4 atanh(1/7) + 2 atanh(1/17)`, cached at the widest scale seen.
fn ln2_fixed(w: u32) -> (BigInt, BigUint) {
    let cache = LN2_CACHE.get_or_init(|| Mutex::new(None));
    if let Some(c) = cache.lock().expect("ln2 cache").as_ref() {
        if c.scale >= w + 2 {
            let r = c.rescale(w);
            return (r.mantissa, r.err);
        }
    }
    let ww = w + 4;
    let (a, ea) = atanh_fixed(&BigInt::from(1), &BigInt::from(7), ww);
    let (b, eb) = atanh_fixed(&BigInt::from(1), &BigInt::from(17), ww);
    let full = FixedReal::new(a * 4u32 + b * 2u32, ww, ea * 4u32 + eb * 2u32);
    let r = full.rescale(w);
    *cache.lock().expect("ln2 cache") = Some(full);
    (r.mantissa, r.err)
}

/// `ln(p/q) * 10^w` for positive naturals, with its error in ulps.
fn ln_ratio(p: &BigUint, q: &BigUint, w: u32) -> (BigInt, BigUint) {
    // p/q * 2^-j into [2/3, 4/3)
    let mut j: i64 = p.bits() as i64 - q.bits() as i64;
    let (pp, qq) = loop {
        let (pp, qq) = if j >= 0 {
            (p.clone(), q << (j as u64))
        } else {
            (p << ((-j) as u64), q.clone())
        };
        if &pp * 3u32 < &qq * 2u32 {
            j -= 1;
        } else if &pp * 3u32 >= &qq * 4u32 {
            j += 1;
        } else {
            break (pp, qq);
        }
    };
    let a = BigInt::from(pp.clone()) - BigInt::from(qq.clone());
    let b = BigInt::from(pp + qq);
    let (t, et) = atanh_fixed(&a, &b, w);
    let mut v = t * 2u32;
    let mut e = et * 2u32;
    if j != 0 {
        let (l2, el2) = ln2_fixed(w);
        v += l2 * BigInt::from(j);
        e += el2 * BigUint::from(j.unsigned_abs());
    }
    (v, e)
}

/// `fr_add`
pub fn fr_add(x: &FixedReal, y: &FixedReal, scale: u32) -> FixedReal {
    x.add(y, scale)
}

/// `fr_sub`
pub fn fr_sub(x: &FixedReal, y: &FixedReal, scale: u32) -> FixedReal {
    x.sub(y, scale)
}

/// `fr_mul`
pub fn fr_mul(x: &FixedReal, y: &FixedReal, scale: u32) -> FixedReal {
    x.mul(y, scale)
}

/// `fr_div`; fails when the divisor's enclosure contains zero.
pub fn fr_div(x: &FixedReal, y: &FixedReal, scale: u32) -> Result<FixedReal> {
    x.div(y, scale)
}

pub fn fr_sqrt(x: &FixedReal, scale: u32) -> Result<FixedReal> {
    x.sqrt(scale)
}

pub fn fr_ln(x: &FixedReal, scale: u32) -> Result<FixedReal> {
    x.ln(scale)
}

pub fn floor_scaled(x: &FixedReal, e: u32) -> Result<BigInt> {
    x.floor_scaled(e)
}

/// `(1 + sqrt 5) / 2`.
pub fn golden_ratio(scale: u32) -> FixedReal {
    let w = scale + 4;
    let s5 = FixedReal::from_int(5).sqrt(w).expect("5 > 0");
    let num = s5.add(&FixedReal::one(), w);
    num.div(&FixedReal::from_int(2), w)
        .expect("2 != 0")
        .rescale(scale)
}

/// `ln(p)` for a small natural number, the common case in lattice rows.
pub fn ln_int(p: u64, scale: u32) -> Result<FixedReal> {
    FixedReal::from_int(p).ln(scale)
}

/// Integer `log10` of a positive integer, rounded down (`0` for `1..=9`).
pub fn ilog10(n: &BigUint) -> u32 {
    n.to_string().len() as u32 - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(s: &str) -> FixedReal {
        s.parse().unwrap()
    }

    #[test]
    fn add_identity_is_exact() {
        let r = fr_add(&fr("1.0"), &fr("0.0"), 1);
        assert_eq!(r.to_string(), "1.0");
        assert!(r.is_exact());
    }

    #[test]
    fn mul_by_one_keeps_error() {
        let x = FixedReal::new(BigInt::from(31415), 4, BigUint::from(3u32));
        let r = fr_mul(&x, &fr("1.0"), 4);
        assert_eq!(r, x);
    }

    #[test]
    fn one_third() {
        let r = fr_div(&fr("1.0"), &fr("3.0"), 10).unwrap();
        assert_eq!(r.to_string(), "0.3333333333");
        assert!(r.err_ulp() >= &BigUint::one());
        // long-division oracle: 10^10 / 3 = 3333333333 r 1
        let third = FixedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 30).unwrap();
        assert!(r.contains(&third.rescale(30)) || r.overlaps(&third));
    }

    #[test]
    fn div_by_interval_containing_zero() {
        let y = FixedReal::new(BigInt::from(1), 3, BigUint::from(2u32));
        assert!(matches!(
            fr_div(&FixedReal::one(), &y, 5),
            Err(Error::IndeterminateDivisor)
        ));
    }

    #[test]
    fn sqrt_of_four_is_exact() {
        let r = fr_sqrt(&FixedReal::from_int(4), 12).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.to_string(), "2.000000000000");
    }

    #[test]
    fn sqrt_five_matches_integer_root() {
        let r = fr_sqrt(&FixedReal::from_int(5), 30).unwrap();
        // isqrt(5 * 10^60), computed independently
        let oracle = (BigUint::from(5u32) * pow10(60)).sqrt();
        assert_eq!(oracle.to_string(), "2236067977499789696409173668731");
        let diff = (r.mantissa() - BigInt::from(oracle)).abs();
        assert!(diff <= BigInt::from(1));
        assert!(r.err_ulp() <= &BigUint::from(1u32));
    }

    #[test]
    fn sqrt_two_squared_reencloses_two() {
        let r = fr_sqrt(&FixedReal::from_int(2), 50).unwrap();
        let sq = r.mul(&r, 50);
        assert!(sq.contains(&FixedReal::from_int(2)));
    }

    #[test]
    fn sqrt_domain() {
        assert!(matches!(fr_sqrt(&fr("-2"), 5), Err(Error::Domain(_))));
        assert!(fr_sqrt(&FixedReal::zero(), 5).unwrap().is_exact());
    }

    #[test]
    fn ln_one_is_zero() {
        let r = fr_ln(&FixedReal::one(), 20).unwrap();
        assert!(r.is_exact());
        assert!(r.mantissa().is_zero());
    }

    #[test]
    fn ln_two_fifty_digits() {
        let r = fr_ln(&FixedReal::from_int(2), 50).unwrap();
        let expected = fr("0.69314718055994530941723212145817656807550013436026");
        assert!(r.err_ulp() <= &BigUint::from(2u32));
        assert!(r.overlaps(&expected));
        assert_eq!(r.to_string(), expected.to_string());
    }

    #[test]
    fn ln_of_e_approximant() {
        // 2.71828182845904523536028747135266249775724709369995 (e to 50 places)
        let e = fr("2.71828182845904523536028747135266249775724709369995");
        let e = FixedReal::new(e.mantissa().clone(), 50, BigUint::one());
        let r = fr_ln(&e, 45).unwrap();
        assert!(r.overlaps(&FixedReal::one()));
    }

    #[test]
    fn ln_domain() {
        assert!(matches!(fr_ln(&FixedReal::zero(), 5), Err(Error::Domain(_))));
        assert!(matches!(fr_ln(&fr("-3"), 5), Err(Error::Domain(_))));
    }

    #[test]
    fn ln_of_small_and_large() {
        let x = fr("0.001");
        let r = fr_ln(&x, 30).unwrap();
        let ten = fr_ln(&FixedReal::from_int(10), 30).unwrap();
        let minus3 = ten.mul_int(&BigInt::from(-3));
        assert!(r.overlaps(&minus3));
        let big = FixedReal::from_int(BigInt::from(pow10(300)));
        let r = fr_ln(&big, 30).unwrap();
        assert!(r.overlaps(&ten.mul_int(&BigInt::from(300))));
    }

    #[test]
    fn golden_ratio_values() {
        assert_eq!(golden_ratio(10).to_string(), "1.6180339887");
        assert_eq!(golden_ratio(1).to_string(), "1.6");
        let phi = golden_ratio(40);
        let p2 = phi.mul(&phi, 40);
        let v = p2.sub(&phi, 40).sub(&FixedReal::one(), 40);
        assert!(v.contains_zero());
    }

    #[test]
    fn floor_scaled_cases() {
        let l2 = fr_ln(&FixedReal::from_int(2), 20).unwrap();
        assert_eq!(floor_scaled(&l2, 3).unwrap(), BigInt::from(693));
        assert_eq!(
            floor_scaled(&FixedReal::from_int(2), 5).unwrap(),
            BigInt::from(200000)
        );
        let straddle = FixedReal::new(BigInt::from(10000), 4, BigUint::from(2u32));
        assert!(floor_scaled(&straddle, 2).unwrap_err().is_precision());
    }

    #[test]
    fn negative_floor() {
        let x = fr("-1.25");
        assert_eq!(floor_scaled(&x, 1).unwrap(), BigInt::from(-13));
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "-0.5", "12.340", "0.00", "-123456789012345678901234567890.1"] {
            assert_eq!(fr(s).to_string(), s);
        }
        assert_eq!(fr("+7").to_string(), "7");
        assert_eq!(fr(".5").to_string(), "0.5");
        assert!("1.2.3".parse::<FixedReal>().is_err());
        assert!("".parse::<FixedReal>().is_err());
        assert!("-".parse::<FixedReal>().is_err());
        assert!("1e5".parse::<FixedReal>().is_err());
    }

    #[test]
    fn sci_format() {
        assert_eq!(fr("5814.3").to_sci(2), "5.8e3");
        assert_eq!(fr("0.000996").to_sci(2), "1.0e-3");
        assert_eq!(fr("-42").to_sci(1), "-4e1");
        assert!((fr("123.456").to_f64() - 123.456).abs() < 1e-12);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = fr("1.0001");
        let p = x.powi(10, 40);
        let mut q = FixedReal::one();
        for _ in 0..10 {
            q = q.mul(&x, 40);
        }
        assert!(p.overlaps(&q));
        assert!(x.powi(0, 5).is_exact());
    }

    #[test]
    fn comparisons() {
        let a = fr("1.5");
        let b = FixedReal::new(BigInt::from(16), 1, BigUint::one());
        assert_eq!(a.cmp_certain(&b), None);
        assert!(a.certainly_lt(&fr("1.7")));
        assert!(a.certainly_le(&fr("1.50")));
        assert!(!a.certainly_lt(&fr("1.50")));
    }
}
