//! Heights, Matveev's lower bound for linear forms in logarithms, and the
//! closed-form upper bounds used to start the reduction.
//!
//! Every evaluator works with certified [`FixedReal`] values at
//! [`BOUND_SCALE`] digits after the point. Logarithms are natural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bigfix::{golden_ratio, pow10, FixedReal};
use crate::error::{Error, Result};

pub const BOUND_SCALE: u32 = 40;
const S: u32 = BOUND_SCALE;

/// `m * 10^e` as an exact value.
pub fn sci(m: i64, e: i32) -> FixedReal {
    if e >= 0 {
        FixedReal::from_int(BigInt::from(m) * BigInt::from(pow10(e as u32)))
    } else {
        FixedReal::exact(m, e.unsigned_abs())
    }
}

fn int(v: u64) -> FixedReal {
    FixedReal::from_int(v)
}

fn ln(x: &FixedReal) -> Result<FixedReal> {
    x.ln(S)
}

fn ln_u(v: u64) -> Result<FixedReal> {
    int(v).ln(S)
}

fn mul(a: &FixedReal, b: &FixedReal) -> FixedReal {
    a.mul(b, S)
}

fn product<'a>(xs: impl IntoIterator<Item = &'a FixedReal>) -> FixedReal {
    xs.into_iter().fold(FixedReal::one(), |acc, x| mul(&acc, x))
}

/// `x^(m + 1/2)`.
fn pow_half(x: &FixedReal, m: u64) -> Result<FixedReal> {
    Ok(mul(&x.powi(m, S), &x.sqrt(S)?))
}

/// `h(p/q) = log max(|p|, q)` after reducing the fraction.
pub fn log_height_rational(p: &BigInt, q: &BigInt) -> Result<FixedReal> {
    if q.is_zero() {
        return Err(Error::Domain("height of p/0".into()));
    }
    let g = p.gcd(q);
    let (mut p, mut q) = if g.is_zero() {
        (p.clone(), q.clone())
    } else {
        (p / &g, q / &g)
    };
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    let top = p.abs().max(q);
    ln(&FixedReal::from_int(top))
}

/// Upper bound `4k log(phi) + k log(k+1)` for the height of `f_k(alpha)`.
pub fn height_bound_fk(k: u32) -> Result<FixedReal> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let k = u64::from(k);
    let lphi = ln(&golden_ratio(S + 5))?;
    Ok(lphi
        .mul_int(&BigInt::from(4 * k))
        .add(&ln_u(k + 1)?.mul_int(&BigInt::from(k)), S))
}

/// Inputs of Matveev's theorem for `Gamma = g_1^b_1 ... g_t^b_t - 1`.
#[derive(Clone, Debug)]
pub struct MatveevParams {
    pub t: u32,
    pub d: u32,
    pub b: FixedReal,
    pub a: Vec<FixedReal>,
}

impl MatveevParams {
    pub fn new(d: u32, b: FixedReal, a: Vec<FixedReal>) -> Result<Self> {
        let floor = sci(16, -2);
        if d == 0 || a.is_empty() {
            return Err(Error::Parameter("Matveev needs t >= 1 and D >= 1".into()));
        }
        if !FixedReal::one().certainly_le(&b) {
            return Err(Error::Parameter(format!("B must be at least 1, got {b}")));
        }
        if let Some(bad) = a.iter().find(|ai| !floor.certainly_le(ai)) {
            return Err(Error::Parameter(format!("every A_i must be at least 0.16, got {bad}")));
        }
        Ok(MatveevParams {
            t: a.len() as u32,
            d,
            b,
            a,
        })
    }
}

/// `1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D)` times `prod A_i`, without the
/// `(1 + log B)` factor.
fn matveev_core(t: u32, d: u32, a: &[FixedReal]) -> Result<FixedReal> {
    let c = sci(14, -1)
        .mul_int(&BigInt::from(30u32).pow(t + 3))
        .mul_int(&BigInt::from(u64::from(d) * u64::from(d)));
    let c = mul(&c, &pow_half(&int(u64::from(t)), 4)?);
    let c = mul(&c, &FixedReal::one().add(&ln_u(u64::from(d))?, S));
    Ok(mul(&c, &product(a)))
}

/// Matveev's lower bound for `log |Gamma|` (a negative number).
pub fn matveev_lower_bound(p: &MatveevParams) -> Result<FixedReal> {
    let core = matveev_core(p.t, p.d, &p.a)?;
    let log_b = FixedReal::one().add(&ln(&p.b)?, S);
    Ok(mul(&core, &log_b).neg())
}

/// Lemma of Guzman and Luca: if `T > (4m^2)^m` and `x / (log x)^m < T` then
/// `x < 2^m T (log T)^m`.
pub fn guzman_luca_bound(m: u32, t: &FixedReal) -> Result<FixedReal> {
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    let m64 = u64::from(m);
    let threshold = int(4 * m64 * m64).powi(m64, 0);
    if !threshold.certainly_lt(t) {
        return Err(Error::Parameter(format!(
            "T = {t} does not exceed (4m^2)^m = {threshold}"
        )));
    }
    let lt = ln(t)?.powi(m64, S);
    Ok(mul(t, &lt).mul_int(&(BigInt::from(1) << m)))
}

/// `27 s log s + 5 s log k + log(10 s + 2 k)`, an upper bound for `log n`.
pub fn lemma31_bound(s: u32, k: u32) -> Result<FixedReal> {
    if s < 2 || k < 2 {
        return Err(Error::Parameter(format!("need s >= 2 and k >= 2, got s = {s}, k = {k}")));
    }
    let (s, k) = (u64::from(s), u64::from(k));
    let a = ln_u(s)?.mul_int(&BigInt::from(27 * s));
    let b = ln_u(k)?.mul_int(&BigInt::from(5 * s));
    Ok(a.add(&b, S).add(&ln_u(10 * s + 2 * k)?, S))
}

/// `37 s log k`, the relaxation of [`lemma31_bound`] for `s < k`.
pub fn lemma31_relaxed(s: u32, k: u32) -> Result<FixedReal> {
    Ok(ln_u(u64::from(k))?.mul_int(&BigInt::from(37 * u64::from(s))))
}

fn lemma41a_value(k: &FixedReal) -> Result<FixedReal> {
    let lk = ln(k)?;
    Ok(mul(&mul(&sci(23, 22), &k.powi(7, S)), &lk.powi(3, S)))
}

/// `2.3e23 k^7 (log k)^3`, the bound on `n` for a smooth `P_n^(k)`.
pub fn lemma41a_bound(k: u32) -> Result<FixedReal> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    lemma41a_value(&int(u64::from(k)))
}

/// The same bound at a real (possibly astronomically large) `k`.
pub fn lemma41a_bound_real(k: &FixedReal) -> Result<FixedReal> {
    if !int(2).certainly_le(k) {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    lemma41a_value(k)
}

/// The bound `1.3e15 s^6.5 (120 log s)^s log s` on `k` in the regime
/// `k > 2500`, for `s` distinct primes.
pub fn large_k_bound(s: u32) -> Result<FixedReal> {
    if s < 2 {
        return Err(Error::Parameter(format!("s must be at least 2, got {s}")));
    }
    let ls = ln_u(u64::from(s))?;
    let c = mul(&sci(13, 14), &pow_half(&int(u64::from(s)), 6)?);
    let c = mul(&c, &ls.mul_int(&BigInt::from(120)).powi(u64::from(s), S));
    Ok(mul(&c, &ls))
}

/// Intermediate values of a closed-form bound chain.
#[derive(Clone, Debug)]
pub struct BoundChainReport {
    pub inputs: Vec<(String, String)>,
    pub intermediates: Vec<(String, FixedReal)>,
    pub bound: FixedReal,
}

/// The large-`k` chain for `s = 4`: a bound on `k`, then on `n` through
/// [`lemma41a_bound_real`].
pub fn lemma41b_chain() -> Result<BoundChainReport> {
    let k_bound = large_k_bound(4)?;
    let n_bound = lemma41a_bound_real(&k_bound)?;
    Ok(BoundChainReport {
        inputs: vec![("s".into(), "4".into())],
        intermediates: vec![("k_bound".into(), k_bound)],
        bound: n_bound,
    })
}

/// Coefficient `K(k)` with `n < K(k) log n`, obtained by feeding Matveev's
/// theorem the parameters for `|2^a 3^b 5^c 7^d alpha^-n f_k(alpha)^-1 - 1|
/// < 1.82 / alpha^n`: `t = 6`, `D = k`, `A_1..A_4 = k log 7`, `A_5 = 1`,
/// `A_6 = 4.5 k^2 log k`, `B = 1.4 n`, and `n >= 4`.
pub fn matveev_smooth_coefficient(k: u32, log_alpha: &FixedReal) -> Result<BoundChainReport> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let kk = u64::from(k);
    let lk = ln_u(kk)?;
    let a_prime = ln_u(7)?.mul_int(&BigInt::from(kk));
    let a_fk = mul(&sci(45, -1), &lk).mul_int(&BigInt::from(kk * kk));
    let mut a = vec![a_prime; 4];
    a.push(FixedReal::one());
    a.push(a_fk);
    let core = matveev_core(6, k, &a)?;
    // (1 + log(1.4 n)) / log n is largest at n = 4
    let ln4 = ln_u(4)?;
    let per_log_n = FixedReal::one()
        .add(&ln(&sci(56, -1))?, S)
        .div(&ln4, S)?;
    let slack = ln(&sci(182, -2))?.div(&ln4, S)?;
    let coeff = mul(&core, &per_log_n).add(&slack, S).div(log_alpha, S)?;
    Ok(BoundChainReport {
        inputs: vec![("k".into(), k.to_string()), ("s".into(), "4".into())],
        intermediates: vec![
            ("matveev_core".into(), core),
            ("log_alpha".into(), log_alpha.clone()),
        ],
        bound: coeff,
    })
}

/// `1.5e21 k^7 (log k)^2`, the printed simplification of the coefficient.
pub fn smooth_coefficient_reference(k: u32) -> Result<FixedReal> {
    let lk = ln_u(u64::from(k))?;
    Ok(mul(&mul(&sci(15, 20), &int(u64::from(k)).powi(7, S)), &lk.powi(2, S)))
}

/// The constant `C(s)` in `log |Gamma_2| > -C(s) 60^s s^4.5 (log p_s)^s log n`
/// for the large-`k` form over `Q(sqrt 5)` (`t = s + 2`, `D = 2`, `B = 2n`,
/// `A_i = 2 log p_s`, `A_{s+1} = log phi`, `A_{s+2} = 8 log 10`, `n >= 4`).
pub fn gamma2_constant(s: u32) -> Result<FixedReal> {
    if s < 2 {
        return Err(Error::Parameter(format!("s must be at least 2, got {s}")));
    }
    let (s64, t64) = (u64::from(s), u64::from(s) + 2);
    let lphi = ln(&golden_ratio(S + 5))?;
    let c = sci(14, -1).mul_int(&BigInt::from(30u32.pow(5)));
    let ratio = int(t64).div(&int(s64), S)?;
    let c = mul(&c, &pow_half(&ratio, 4)?).mul_int(&BigInt::from(4));
    let c = mul(&c, &FixedReal::one().add(&ln_u(2)?, S));
    let per_log_n = FixedReal::one().add(&ln_u(8)?, S).div(&ln_u(4)?, S)?;
    let c = mul(&mul(&c, &per_log_n), &lphi);
    Ok(mul(&c, &ln_u(10)?.mul_int(&BigInt::from(8))))
}

/// `(1/104) log log n`, the threshold for the largest prime factor of a term.
pub fn thm11_threshold(n: u64) -> Result<FixedReal> {
    if n < 4 {
        return Err(Error::Parameter(format!("n must be at least 4, got {n}")));
    }
    ln(&ln_u(n)?)?.div(&int(104), S)
}

/// True iff `pmax > (1/104) log log n` is certified.
pub fn thm11_check(_k: u32, n: u64, pmax: &BigInt) -> Result<bool> {
    let threshold = thm11_threshold(n)?;
    Ok(threshold.certainly_lt(&FixedReal::from_int(pmax.clone())))
}
