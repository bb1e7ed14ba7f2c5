//! The two reductions: the small-`k` form
//! `a log 2 + b log 3 + c log 5 + d log 7 - n log alpha - log f_k(alpha)`
//! and the large-`k` form
//! `a log 2 + b log 3 + c log 5 + d log 7 + log(10 / (5 - sqrt 5)) - 2n log phi`.

use num_bigint::BigInt;
use num_traits::One;

use crate::bigfix::{golden_ratio, ln_int, FixedReal};
use crate::error::{Error, Result};
use crate::lattice::{reduce_linear_form, LinearFormSpec, ReductionOutcome, Scaling};
use crate::linforms::{lemma41a_bound, lemma41a_bound_real, lemma41b_chain};
use crate::pell::dominant_root;

use super::config::{PipelineConfig, Tau1Decay};

/// Upper bound on the prime exponents of a smooth term, `ceil(1.4 N)`.
fn exponent_bound(n_bound: &BigInt) -> BigInt {
    (n_bound * 14 + 9) / 10
}

fn ceil_of(x: &FixedReal) -> BigInt {
    let (_, hi) = x.bounds();
    hi.ceil().to_integer()
}

fn prime_logs(scale: u32) -> Result<Vec<FixedReal>> {
    [2u64, 3, 5, 7].iter().map(|&p| ln_int(p, scale)).collect()
}

/// Which set of logarithms a small-`k` reduction used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormShape {
    /// All logarithms of the form, each with its own coefficient.
    Full,
    /// `log f_k(alpha)` replaced by a rational combination of the others.
    Folded,
}

impl std::fmt::Display for FormShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormShape::Full => "full",
            FormShape::Folded => "folded",
        })
    }
}

/// The small-`k` linear form at `C = c`, with every logarithm carried to
/// enough digits for `floor(C eta)`.
///
/// The full shape has six logarithms, `c3 = 4` and coefficient bounds
/// `ceil(1.4 N)` for the primes, `N` for `n` and 1 for `log f_k(alpha)`.
///
/// The folded shape doubles the form and substitutes
/// `log f_k(alpha) = -(log 5 + log alpha) / 2 + delta`, leaving five
/// logarithms, `c3 = 8` and the slack `2 |delta|`. For `k = 2` the
/// substitution is `log f_2(alpha) = -(3/2) log 2`, which is exact; for
/// large `k` the remainder `delta` is about `k alpha^(1-k)`, far below
/// `1/C`, and the full shape is degenerate.
pub fn tau1_form(
    k: u32,
    c: Scaling,
    shape: FormShape,
    cfg: &PipelineConfig,
) -> Result<LinearFormSpec> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    if k == 2 && shape == FormShape::Full {
        return Err(Error::Degenerate(
            "for k = 2 the six logarithms are linearly dependent".into(),
        ));
    }
    let scale = c.digits(cfg.precision_guard);
    let root = dominant_root(k, scale + 5)?;
    let log_alpha = root.alpha.ln(scale)?;
    let log_fk = root.fk_alpha.ln(scale)?;
    let n_bound = ceil_of(&lemma41a_bound(k)?);
    let xp = exponent_bound(&n_bound);
    let c4 = match cfg.tau1_decay {
        Tau1Decay::Uniform => FixedReal::from_int(8).ln(scale)?.sub(&ln_int(5, scale)?, scale),
        Tau1Decay::LogAlpha => log_alpha.clone(),
    };
    let mut etas = prime_logs(scale)?;
    let two = BigInt::from(2);
    if shape == FormShape::Full {
        etas.push(log_alpha);
        etas.push(log_fk);
        let mut x = vec![xp; 4];
        x.push(n_bound);
        x.push(BigInt::one());
        return LinearFormSpec::new(etas, FixedReal::zero(), x, FixedReal::from_int(4), c4, c);
    }
    let mut x = vec![&xp * &two; 4];
    let slack = if k == 2 {
        let check = etas[0].mul_int(&BigInt::from(3)).add(&log_fk.mul_int(&two), scale);
        if !check.contains(&FixedReal::zero()) {
            return Err(Error::Degenerate("log f_2(alpha) is not -3/2 log 2".into()));
        }
        x[0] += 3;
        FixedReal::zero()
    } else {
        let delta = log_fk
            .mul_int(&two)
            .add(&log_alpha, scale)
            .add(&etas[2], scale)
            .div(&FixedReal::from_int(2), scale)?;
        x[2] += 1;
        delta.abs().mul_int(&two)
    };
    etas.push(log_alpha);
    x.push(&n_bound * &two);
    LinearFormSpec::new(etas, FixedReal::zero(), x, FixedReal::from_int(8), c4, c)?.with_slack(slack)
}

/// The large-`k` linear form at `C = c` when `n <= n_bound`.
///
/// Since `10 / (5 - sqrt 5) = phi sqrt 5`, the six logarithms of the full
/// shape satisfy an exact relation, and the full lattice always contains a
/// very short vector. The folded shape doubles the form and substitutes
/// `log(10 / (5 - sqrt 5)) = log phi + (log 5) / 2`, leaving
/// `2a log 2 + 2b log 3 + (2c + 1) log 5 + 2d log 7 - (4n - 2) log phi`
/// with `c3 = 132`.
pub fn tau2_form(
    n_bound: &BigInt,
    c: Scaling,
    shape: FormShape,
    cfg: &PipelineConfig,
) -> Result<LinearFormSpec> {
    let scale = c.digits(cfg.precision_guard);
    let w = scale + 5;
    let log_phi = golden_ratio(w).ln(scale)?;
    let mut etas = prime_logs(scale)?;
    let xp = exponent_bound(n_bound);
    if shape == FormShape::Full {
        let sqrt5 = FixedReal::from_int(5).sqrt(w)?;
        let denom = FixedReal::from_int(5).sub(&sqrt5, w);
        etas.push(FixedReal::from_int(10).div(&denom, w)?.ln(scale)?);
        etas.push(log_phi.clone());
        let mut x = vec![xp; 4];
        x.push(BigInt::one());
        x.push(n_bound * 2);
        return LinearFormSpec::new(etas, FixedReal::zero(), x, FixedReal::from_int(66), log_phi, c);
    }
    etas.push(log_phi.clone());
    let mut x = vec![&xp * 2; 4];
    x[2] += 1;
    x.push(n_bound * 4);
    LinearFormSpec::new(etas, FixedReal::zero(), x, FixedReal::from_int(132), log_phi, c)
}

/// One reduction together with the attempts that preceded it.
#[derive(Clone, Debug)]
pub struct ReductionRun {
    pub outcome: ReductionOutcome,
    pub shape: FormShape,
    /// Digits after the point used for the logarithms of the final attempt.
    pub scale: u32,
    pub x_bounds: Vec<BigInt>,
    /// Constants `C` that were tried and failed, in order.
    pub failed: Vec<Scaling>,
}

impl ReductionRun {
    pub fn bound(&self) -> Option<&BigInt> {
        self.outcome.bound()
    }
}

/// The next constant after a failed reduction: the exponent grows by the
/// configured factor, and by at least one.
pub fn escalate(c: Scaling, factor: f64) -> Scaling {
    let grown = (f64::from(c.exp) * factor).ceil() as u32;
    Scaling {
        mult: c.mult,
        exp: grown.max(c.exp + 1),
    }
}

/// Tries the shapes in order at each `C`, raising `C` while every shape
/// fails the reduction condition and doubling the guard digits on
/// precision failures.
fn reduce_with_escalation(
    cfg: &PipelineConfig,
    start: Scaling,
    shapes: &[FormShape],
    build: impl Fn(Scaling, FormShape, &PipelineConfig) -> Result<LinearFormSpec>,
) -> Result<ReductionRun> {
    let mut local = cfg.clone();
    let mut c = start;
    let mut failed = Vec::new();
    let mut precision_retries = 0;
    'escalate: loop {
        let mut last = None;
        for &shape in shapes {
            let attempt = build(c, shape, &local).and_then(|spec| {
                let outcome = reduce_linear_form(&spec, &local.lll_delta)?;
                Ok((spec, outcome))
            });
            match attempt {
                Ok((spec, outcome)) => {
                    let run = ReductionRun {
                        scale: c.digits(local.precision_guard),
                        shape,
                        x_bounds: spec.x_bounds.clone(),
                        outcome,
                        failed: failed.clone(),
                    };
                    if run.outcome.condition_holds() {
                        return Ok(run);
                    }
                    last = Some(run);
                }
                Err(e) if e.is_precision() && precision_retries < 3 => {
                    precision_retries += 1;
                    local.precision_guard *= 2;
                    continue 'escalate;
                }
                Err(e) => return Err(e),
            }
        }
        let last = last.ok_or_else(|| Error::Parameter("no form shape to try".into()))?;
        if failed.len() as u32 >= local.escalation_tries {
            return Ok(last);
        }
        failed.push(c);
        c = escalate(c, local.escalation_factor);
    }
}

/// Reduces the small-`k` form for one `k`, starting from `C = 10^c_exponent`.
/// The full shape is tried first and the folded one when it fails; `k = 2`
/// only has the folded shape.
pub fn run_tau1_reduction(k: u32, cfg: &PipelineConfig) -> Result<ReductionRun> {
    if k < 2 || k > cfg.case_split {
        return Err(Error::Parameter(format!(
            "k = {k} outside [2, {}]",
            cfg.case_split
        )));
    }
    let shapes: &[FormShape] = if k == 2 {
        &[FormShape::Folded]
    } else {
        &[FormShape::Full, FormShape::Folded]
    };
    reduce_with_escalation(cfg, Scaling::pow10(cfg.c_exponent), shapes, |c, shape, cfg| {
        tau1_form(k, c, shape, cfg)
    })
}

/// One round of the large-`k` chain.
#[derive(Clone, Debug)]
pub struct Tau2Round {
    pub round: usize,
    /// Bound on `k` the round started from (absent in the first round).
    pub k_in: Option<BigInt>,
    /// Bound on `n` fed into the coefficient bounds.
    pub n_bound: BigInt,
    pub run: ReductionRun,
    /// `2 H`, the resulting bound on `k`, when the reduction succeeded.
    pub k_out: Option<BigInt>,
}

/// Runs the configured rounds of the large-`k` reduction on the folded
/// shape. Round one starts
/// from the closed-form `n` bound; each later round feeds `k <= 2H` back
/// through the bound on `n`. The chain stops early if a round fails.
pub fn run_tau2_chain(cfg: &PipelineConfig) -> Result<Vec<Tau2Round>> {
    let mut rounds = Vec::new();
    let mut k_in: Option<BigInt> = None;
    let mut n_bound = ceil_of(&lemma41b_chain()?.bound);
    for (i, &c) in cfg.tau2_rounds.iter().enumerate() {
        let run = reduce_with_escalation(cfg, c, &[FormShape::Folded], |c, shape, cfg| {
            tau2_form(&n_bound, c, shape, cfg)
        })?;
        let k_out = run.bound().map(|h| h * 2);
        rounds.push(Tau2Round {
            round: i + 1,
            k_in: k_in.clone(),
            n_bound: n_bound.clone(),
            run,
            k_out: k_out.clone(),
        });
        let Some(k_next) = k_out else { break };
        n_bound = ceil_of(&lemma41a_bound_real(&FixedReal::from_int(k_next.clone()))?);
        k_in = Some(k_next);
    }
    Ok(rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escalation_grows_exponent() {
        assert_eq!(escalate(Scaling::pow10(299), 1.01), Scaling::pow10(302));
        assert_eq!(escalate(Scaling::pow10(10), 1.01), Scaling::pow10(11));
        assert_eq!(
            escalate(Scaling { mult: 13, exp: 326 }, 1.1),
            Scaling { mult: 13, exp: 359 }
        );
    }

    #[test]
    fn k2_form_is_five_dimensional() {
        let cfg = PipelineConfig::default();
        let c = Scaling::pow10(60);
        assert!(tau1_form(2, c, FormShape::Full, &cfg).is_err());
        let spec = tau1_form(2, c, FormShape::Folded, &cfg).unwrap();
        assert_eq!(spec.dim(), 5);
        assert!(spec.slack.contains(&FixedReal::zero()));
        let spec = tau1_form(3, c, FormShape::Full, &cfg).unwrap();
        assert_eq!(spec.dim(), 6);
        assert_eq!(spec.x_bounds[5], BigInt::one());
        assert_eq!(spec.x_bounds[0], exponent_bound(&spec.x_bounds[4]));
    }

    #[test]
    fn folded_slack_shrinks_with_k() {
        let cfg = PipelineConfig::default();
        let c = Scaling::pow10(120);
        let slack = |k| tau1_form(k, c, FormShape::Folded, &cfg).unwrap().slack.to_f64();
        // 2 |delta| is close to 2 k alpha^(1-k) / (alpha^2 - 1)
        let alpha = 2.618033988749895f64;
        let approx = |k: f64| 2.0 * k * alpha.powf(1.0 - k) / (alpha * alpha - 1.0);
        for k in [20u32, 40] {
            let r = slack(k) / approx(f64::from(k));
            assert!((0.9..1.1).contains(&r), "k = {k}: ratio {r}");
        }
        assert!(slack(200) < 1e-40);
    }

    #[test]
    fn tau2_full_shape_has_an_exact_relation() {
        let cfg = PipelineConfig::default();
        let c = Scaling::pow10(40);
        let spec = tau2_form(&BigInt::from(100), c, FormShape::Full, &cfg).unwrap();
        // 10 / (5 - sqrt 5) = phi sqrt 5
        let rel = spec.etas[4]
            .mul_int(&BigInt::from(2))
            .sub(&spec.etas[2], 50)
            .sub(&spec.etas[5].mul_int(&BigInt::from(2)), 50);
        assert!(rel.contains(&FixedReal::zero()));
        let spec = tau2_form(&BigInt::from(100), c, FormShape::Folded, &cfg).unwrap();
        assert_eq!(spec.dim(), 5);
        assert_eq!(spec.x_bounds[2], BigInt::from(281));
        assert_eq!(spec.x_bounds[4], BigInt::from(400));
    }

    #[test]
    fn tau1_small_c_escalates_until_condition_holds() {
        let cfg = PipelineConfig {
            c_exponent: 150,
            escalation_factor: 1.3,
            ..Default::default()
        };
        let run = run_tau1_reduction(5, &cfg).unwrap();
        assert!(run.outcome.condition_holds());
        assert!(!run.failed.is_empty());
        assert!(run.outcome.c.exp > 150);
    }

    #[test]
    fn out_of_range_k_is_rejected() {
        let cfg = PipelineConfig::default();
        assert!(run_tau1_reduction(1, &cfg).is_err());
        assert!(run_tau1_reduction(2501, &cfg).is_err());
    }
}
