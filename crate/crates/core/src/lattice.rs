//! Integer lattices, exact LLL reduction, and de Weger's reduction of
//! upper bounds for small linear forms in logarithms.
//!
//! Bases are stored as column vectors. The reduction works on integers
//! only: instead of the rational Gram-Schmidt data it carries
//! `d_i = prod_{j<=i} |b*_j|^2` and `lambda_{i,j} = d_j mu_{i,j}`, which are
//! integers and determine `b*` and `mu` exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfix::{div_round, pow10, FixedReal};
use crate::error::{Error, Result};

const REPORT_SCALE: u32 = 30;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// A full-rank lattice in `Z^dim` given by `dim` basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    cols: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Builds a lattice from its basis columns; the basis must be square.
    pub fn from_columns(cols: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != n) {
            return Err(Error::Parameter("basis must be a non-empty square matrix".into()));
        }
        Ok(IntLattice { cols })
    }

    /// Builds a lattice whose basis columns are the columns of `rows`.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter("basis must be a non-empty square matrix".into()));
        }
        let cols = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Ok(IntLattice { cols })
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IntLattice { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    pub fn norm_sq(&self, j: usize) -> BigInt {
        dot(&self.cols[j], &self.cols[j])
    }

    /// Determinant of the basis matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.cols[j][i].clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// One basis vector per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cols {
            let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`IntLattice::to_text`]; blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cols = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let col = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("bad lattice entry {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cols.push(col);
        }
        IntLattice::from_columns(cols)
    }

    /// `sum_j coeffs[j] * b_j`.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for (c, col) in coeffs.iter().zip(&self.cols) {
            for (vi, bi) in v.iter_mut().zip(col) {
                *vi += c * bi;
            }
        }
        v
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for IntLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntLattice::from_text(s)
    }
}

/// Exact Gram-Schmidt data: `b_i = b*_i + sum_{j<i} mu[i][j] b*_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSchmidtData {
    pub bstar: Vec<Vec<BigRational>>,
    pub mu: Vec<Vec<BigRational>>,
    /// `|b*_i|^2`.
    pub norms_sq: Vec<BigRational>,
}

pub fn gram_schmidt(l: &IntLattice) -> Result<GramSchmidtData> {
    let n = l.dim();
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms_sq: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<BigRational> = l.cols[i].iter().map(rat).collect();
        let mut v = bi.clone();
        for j in 0..i {
            let m = bi.iter().zip(&bstar[j]).map(|(x, y)| x * y).sum::<BigRational>() / &norms_sq[j];
            for (vk, sk) in v.iter_mut().zip(&bstar[j]) {
                *vk -= &m * sk;
            }
            mu[i][j] = m;
        }
        mu[i][i] = BigRational::one();
        let nsq: BigRational = v.iter().map(|x| x * x).sum();
        if nsq.is_zero() {
            return Err(Error::Rank);
        }
        bstar.push(v);
        norms_sq.push(nsq);
    }
    Ok(GramSchmidtData {
        bstar,
        mu,
        norms_sq,
    })
}

fn check_delta(delta: &BigRational) -> Result<()> {
    let quarter = BigRational::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &BigRational::one() {
        return Err(Error::Parameter(format!("LLL parameter {delta} outside (1/4, 1)")));
    }
    Ok(())
}

/// The classical LLL parameter `3/4`.
pub fn default_delta() -> BigRational {
    BigRational::new(3.into(), 4.into())
}

/// LLL-reduces `l` and returns the reduced lattice with the unimodular
/// transform: row `i` of the transform holds the coefficients of the new
/// `b_i` in the input basis.
pub fn lll_reduce_with_transform(
    l: &IntLattice,
    delta: &BigRational,
) -> Result<(IntLattice, Vec<Vec<BigInt>>)> {
    check_delta(delta)?;
    let n = l.dim();
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    // 1-based throughout, matching d_0 = 1
    let mut b: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(l.cols.iter().cloned()).collect();
    let mut h: Vec<Vec<BigInt>> = std::iter::once(Vec::new())
        .chain(IntLattice::identity(n).cols)
        .collect();
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = dot(&b[1], &b[1]);
    if d[1].is_zero() {
        return Err(Error::Rank);
    }

    let red = |k: usize,
               l: usize,
               b: &mut Vec<Vec<BigInt>>,
               h: &mut Vec<Vec<BigInt>>,
               lam: &mut Vec<Vec<BigInt>>,
               d: &[BigInt]| {
        if BigInt::from(2) * lam[k][l].abs() <= d[l] {
            return;
        }
        let (r, _) = div_round(&lam[k][l], &d[l]);
        let (bl, hl) = (b[l].clone(), h[l].clone());
        for (x, y) in b[k].iter_mut().zip(&bl) {
            *x -= &r * y;
        }
        for (x, y) in h[k].iter_mut().zip(&hl) {
            *x -= &r * y;
        }
        lam[k][l] -= &r * &d[l];
        for i in 1..l {
            let t = &r * &lam[l][i];
            lam[k][i] -= t;
        }
    };

    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Rank);
                    }
                    d[k] = u;
                }
            }
        }
        red(k, k - 1, &mut b, &mut h, &mut lam, &d);
        let lhs = &q * &d[k] * &d[k - 2];
        let rhs = &p * &d[k - 1] * &d[k - 1] - &q * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            b.swap(k, k - 1);
            h.swap(k, k - 1);
            for j in 1..k - 1 {
                let t = std::mem::take(&mut lam[k][j]);
                lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
            }
            let lm = lam[k][k - 1].clone();
            let bb = (&d[k - 2] * &d[k] + &lm * &lm) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &lm * &t) / &d[k - 1];
                lam[i][k - 1] = (&bb * &t + &lm * &lam[i][k]) / &d[k];
            }
            d[k - 1] = bb;
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(k, l, &mut b, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    b.remove(0);
    h.remove(0);
    Ok((IntLattice { cols: b }, h))
}

pub fn lll_reduce(l: &IntLattice, delta: &BigRational) -> Result<IntLattice> {
    lll_reduce_with_transform(l, delta).map(|(r, _)| r)
}

/// Size reduction `|mu_{i,j}| <= 1/2` and the Lovasz condition
/// `|b*_i + mu_{i,i-1} b*_{i-1}|^2 >= delta |b*_{i-1}|^2`.
pub fn is_reduced(l: &IntLattice, delta: &BigRational) -> Result<bool> {
    let gs = gram_schmidt(l)?;
    let half = BigRational::new(1.into(), 2.into());
    for i in 1..l.dim() {
        if (0..i).any(|j| gs.mu[i][j].abs() > half) {
            return Ok(false);
        }
        let m = &gs.mu[i][i - 1];
        let lhs = &gs.norms_sq[i] + m * m * &gs.norms_sq[i - 1];
        if lhs < delta * &gs.norms_sq[i - 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A constant `mult * 10^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scaling {
    pub mult: u32,
    pub exp: u32,
}

impl Scaling {
    pub fn pow10(exp: u32) -> Self {
        Scaling { mult: 1, exp }
    }

    pub fn value(&self) -> BigInt {
        BigInt::from(self.mult) * BigInt::from(pow10(self.exp))
    }

    /// `floor(mult * 10^exp * x)`, refusing when the floor is not certain.
    pub fn floor_of(&self, x: &FixedReal) -> Result<BigInt> {
        x.mul_int(&BigInt::from(self.mult)).floor_scaled(self.exp)
    }

    /// `ln(mult * 10^exp)` as a certified value.
    pub fn ln(&self, scale: u32) -> Result<FixedReal> {
        let ln10 = FixedReal::from_int(10).ln(scale + 5)?;
        let v = FixedReal::from_int(self.mult)
            .ln(scale + 5)?
            .add(&ln10.mul_int(&BigInt::from(self.exp)), scale + 5);
        Ok(v.rescale(scale))
    }

    /// Decimal digits needed after the point for `floor_of` to succeed
    /// on a value of ordinary size, with `guard` spare digits.
    pub fn digits(&self, guard: u32) -> u32 {
        self.exp + guard + 4
    }
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = self.mult;
        let mut e = self.exp;
        while m >= 10 && m % 10 == 0 {
            m /= 10;
            e += 1;
        }
        let digits = m.to_string();
        let e = e as usize + digits.len() - 1;
        if digits.len() == 1 {
            write!(f, "{digits}e{e}")
        } else {
            write!(f, "{}.{}e{e}", &digits[..1], &digits[1..])
        }
    }
}

impl FromStr for Scaling {
    type Err = Error;

    /// Accepts `1e299`, `1.3e327`, `13e326` or a plain integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad scaling constant {s:?}"));
        let s = s.trim();
        let (mant, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<u32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac) = mant.split_once('.').unwrap_or((mant, ""));
        let digits = format!("{int_part}{frac}");
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut exp = exp.checked_sub(frac.len() as u32).ok_or_else(bad)?;
        let mut mult: u32 = digits.trim_start_matches('0').parse().map_err(|_| bad())?;
        if mult == 0 {
            return Err(bad());
        }
        while mult % 10 == 0 {
            mult /= 10;
            exp += 1;
        }
        Ok(Scaling { mult, exp })
    }
}

/// `|eta_0 + x_1 eta_1 + ... + x_k eta_k| <= c3 exp(-c4 H) + slack` with
/// `|x_i| <= X_i`. The slack is zero unless set with
/// [`LinearFormSpec::with_slack`].
#[derive(Clone, Debug)]
pub struct LinearFormSpec {
    pub etas: Vec<FixedReal>,
    pub eta0: FixedReal,
    pub x_bounds: Vec<BigInt>,
    pub c3: FixedReal,
    pub c4: FixedReal,
    pub c: Scaling,
    pub slack: FixedReal,
}

impl LinearFormSpec {
    pub fn new(
        etas: Vec<FixedReal>,
        eta0: FixedReal,
        x_bounds: Vec<BigInt>,
        c3: FixedReal,
        c4: FixedReal,
        c: Scaling,
    ) -> Result<Self> {
        if etas.len() < 2 || etas.len() != x_bounds.len() {
            return Err(Error::Parameter(
                "need at least two logarithms and one bound per logarithm".into(),
            ));
        }
        if !c3.certainly_positive() || !c4.certainly_positive() {
            return Err(Error::Parameter("c3 and c4 must be positive".into()));
        }
        if x_bounds.iter().any(|x| x.is_negative() || x > &c.value()) {
            return Err(Error::Parameter("each X_i must lie in [0, C]".into()));
        }
        Ok(LinearFormSpec {
            etas,
            eta0,
            x_bounds,
            c3,
            c4,
            c,
            slack: FixedReal::zero(),
        })
    }

    /// Adds a constant term to the right-hand side, for forms obtained by
    /// dropping a logarithm that is an almost exact combination of the others.
    pub fn with_slack(mut self, slack: FixedReal) -> Result<Self> {
        if slack.certainly_negative() {
            return Err(Error::Parameter("slack must be non-negative".into()));
        }
        self.slack = slack;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.etas.len()
    }

    /// `S = X_1^2 + ... + X_{k-1}^2`.
    pub fn s(&self) -> BigInt {
        let k = self.dim();
        self.x_bounds[..k - 1].iter().map(|x| x * x).sum()
    }

    /// `T = (1 + X_1 + ... + X_k) / 2`.
    pub fn t(&self) -> BigRational {
        let sum: BigInt = self.x_bounds.iter().sum();
        BigRational::new(sum + 1, 2.into())
    }

    pub fn x0(&self) -> BigInt {
        self.x_bounds.iter().max().cloned().unwrap_or_default()
    }
}

/// The approximation lattice: identity in the first `k-1` rows and
/// `floor(C eta_i)` in the last, together with `y = (0, ..., 0, -floor(C eta_0))`.
pub fn build_dweger_lattice(spec: &LinearFormSpec) -> Result<(IntLattice, Vec<BigInt>)> {
    let k = spec.dim();
    let mut rows: Vec<Vec<BigInt>> = (0..k - 1)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let bottom = spec
        .etas
        .iter()
        .map(|e| spec.c.floor_of(e))
        .collect::<Result<Vec<_>>>()?;
    rows.push(bottom);
    let mut y = vec![BigInt::zero(); k];
    y[k - 1] = -spec.c.floor_of(&spec.eta0)?;
    Ok((IntLattice::from_rows(&rows)?, y))
}

/// Solves `B z = y` over the rationals.
fn solve(l: &IntLattice, y: &[BigInt]) -> Result<Vec<BigRational>> {
    let n = l.dim();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| rat(&l.cols[j][i])).collect();
            row.push(rat(&y[i]));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::Rank)?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

fn sqrt_of_ratio(r: &BigRational, scale: u32) -> Result<FixedReal> {
    let w = scale + 6;
    FixedReal::from_ratio(r.numer(), r.denom(), w)?.sqrt(scale)
}

/// Lower bound `c2` for the distance `l(L, y)` from a reduced basis.
#[derive(Clone, Debug)]
pub struct DistanceBound {
    /// `c1^2 = max_j |b_1|^2 / |b*_j|^2`, exact.
    pub c1_sq: BigRational,
    pub c1: FixedReal,
    pub sigma: BigRational,
    /// `c2^2 = sigma^2 min_j |b*_j|^2`, exact.
    pub c2_sq: BigRational,
    pub c2: FixedReal,
    pub y_in_lattice: bool,
}

/// `c1 = max_j |b_1| / |b*_j|` and `c2 = sigma |b_1| / c1`, where `sigma = 1`
/// for `y` in the lattice and otherwise the distance to the nearest integer
/// of the last non-integral coordinate of `z = B^-1 y`.
pub fn distance_lower_bound(
    reduced: &IntLattice,
    gs: &GramSchmidtData,
    y: &[BigInt],
) -> Result<DistanceBound> {
    if y.len() != reduced.dim() {
        return Err(Error::Parameter("target vector has the wrong length".into()));
    }
    let z = solve(reduced, y)?;
    let last_frac = z.iter().rev().find(|zi| !zi.is_integer());
    let (sigma, y_in_lattice) = match last_frac {
        None => (BigRational::one(), true),
        Some(zi) => {
            let f = zi - zi.floor();
            let g = BigRational::one() - &f;
            (f.min(g), false)
        }
    };
    let b1 = rat(&reduced.norm_sq(0));
    let min_bstar = gs
        .norms_sq
        .iter()
        .min()
        .cloned()
        .ok_or_else(|| Error::Degenerate("empty basis".into()))?;
    let c1_sq = &b1 / &min_bstar;
    let c2_sq = &sigma * &sigma * &min_bstar;
    Ok(DistanceBound {
        c1: sqrt_of_ratio(&c1_sq, REPORT_SCALE)?,
        c2: sqrt_of_ratio(&c2_sq, REPORT_SCALE)?,
        c1_sq,
        sigma,
        c2_sq,
        y_in_lattice,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReductionStatus {
    /// `H <= h`, where `value` encloses the real bound `h` was taken from.
    Bound { h: BigInt, value: FixedReal },
    /// `c2^2 < T^2 + S`: a larger `C` is needed.
    ConditionFailed,
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub c: Scaling,
    pub c1: FixedReal,
    pub c2: FixedReal,
    pub s: BigInt,
    pub t: BigRational,
    pub status: ReductionStatus,
    /// In the alternative branch `x_1 = ... = x_{k-1} = 0` the last
    /// coefficient must equal this value.
    pub degenerate_xk: Option<BigRational>,
}

impl ReductionOutcome {
    pub fn bound(&self) -> Option<&BigInt> {
        match &self.status {
            ReductionStatus::Bound { h, .. } => Some(h),
            ReductionStatus::ConditionFailed => None,
        }
    }

    pub fn condition_holds(&self) -> bool {
        matches!(self.status, ReductionStatus::Bound { .. })
    }
}

/// If `c2^2 >= T^2 + S` then either `x_1 = ... = x_{k-1} = 0` or
/// `H <= (log(C c3) - log(sqrt(c2^2 - S) - T - C slack)) / c4`. The integer bound is
/// the floor of the upper end of the certified enclosure.
pub fn reduce_bound(
    spec: &LinearFormSpec,
    dist: &DistanceBound,
    lattice: &IntLattice,
) -> Result<ReductionOutcome> {
    let s = spec.s();
    let t = spec.t();
    let k = spec.dim();
    let last = &lattice.columns()[k - 1][k - 1];
    let eta0_floor = spec.c.floor_of(&spec.eta0)?;
    let degenerate_xk = (!last.is_zero()).then(|| BigRational::new(-eta0_floor, last.clone()));
    let mut outcome = ReductionOutcome {
        c: spec.c,
        c1: dist.c1.clone(),
        c2: dist.c2.clone(),
        s: s.clone(),
        t: t.clone(),
        status: ReductionStatus::ConditionFailed,
        degenerate_xk,
    };
    let s_rat = rat(&s);
    if dist.c2_sq < &t * &t + &s_rat {
        return Ok(outcome);
    }
    let w = REPORT_SCALE;
    let root = sqrt_of_ratio(&(&dist.c2_sq - &s_rat), w + 10)?;
    let t_fr = FixedReal::from_ratio(t.numer(), t.denom(), w + 10)?;
    let mut gap = root.sub(&t_fr, w + 10);
    if !(spec.slack.is_exact() && spec.slack.mantissa().is_zero()) {
        let c_slack = spec.slack.abs().mul_int(&spec.c.value());
        gap = gap.sub(&c_slack, w + 10);
    }
    if !gap.certainly_positive() {
        return Ok(outcome);
    }
    let num = spec
        .c
        .ln(w + 10)?
        .add(&spec.c3.ln(w + 10)?, w + 10)
        .sub(&gap.ln(w + 10)?, w + 10);
    let value = num.div(&spec.c4, w)?;
    let upper = value.upper();
    let h = num_integer::Integer::div_floor(&upper, &BigInt::from(pow10(value.scale())));
    outcome.status = ReductionStatus::Bound { h, value };
    Ok(outcome)
}

/// Builds the approximation lattice, reduces it, and applies the bound.
pub fn reduce_linear_form(spec: &LinearFormSpec, delta: &BigRational) -> Result<ReductionOutcome> {
    let (lattice, y) = build_dweger_lattice(spec)?;
    let reduced = lll_reduce(&lattice, delta)?;
    let gs = gram_schmidt(&reduced)?;
    let dist = distance_lower_bound(&reduced, &gs, &y)?;
    reduce_bound(spec, &dist, &lattice)
}
