use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigfix::FixedReal;
use crate::error::Result;
use crate::lattice::{is_reduced, lll_reduce, IntLattice};
use crate::pell::{pell_number, root_interval_holds};
use crate::record;
use crate::smooth::{largest_prime_factor, FactorBudget};

use super::config::PipelineConfig;
use super::reduce::run_tau1_reduction;
use super::report::{RunReport, Verdict};
use super::sweep::run_theorem12_search;

const LN2_PREFIX: &str = "0.69314718055994530941723212145817656807550013436025";

fn lll_spot_check() -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let delta = crate::lattice::default_delta();
    for dim in 2..=5 {
        let cols: Vec<Vec<BigInt>> = (0..dim)
            .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect())
            .collect();
        let l = IntLattice::from_columns(cols)?;
        let det = l.determinant();
        if det == BigInt::from(0) {
            continue;
        }
        let r = lll_reduce(&l, &delta)?;
        if !is_reduced(&r, &delta)? || r.determinant().magnitude() != det.magnitude() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A few seconds of checks across every module.
pub fn run_selftest(cfg: &PipelineConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new("selftest", &[]);
    let ln2 = FixedReal::from_int(2).ln(60)?.to_string();
    let search = run_theorem12_search(&PipelineConfig {
        k_min: 2,
        k_max: 5,
        n_max: 9,
        checkpoint_path: None,
        ..cfg.clone()
    })?;
    let tau1 = run_tau1_reduction(3, &PipelineConfig {
        c_exponent: 299,
        ..cfg.clone()
    })?;
    let tau1_ok = tau1.bound().is_some_and(|h| h <= &BigInt::from(1500));
    let (p, exact) = largest_prime_factor(&BigInt::from(2378), &FactorBudget::default());
    let checks: Vec<(&str, bool)> = vec![
        ("pell P_13^(4) = 69156", pell_number(4, 13)? == BigInt::from(69156)),
        ("pell P_13^(10) = 75020", pell_number(10, 13)? == BigInt::from(75020)),
        ("ln 2 digits", ln2.starts_with(LN2_PREFIX)),
        (
            "dominant root bracket k = 2..30",
            (2..=30).map(root_interval_holds).collect::<Result<Vec<_>>>()?.iter().all(|&b| b),
        ),
        ("largest prime factor of 2378", exact && p == BigInt::from(41)),
        ("smooth search k <= 5, n <= 9", search.verdict == Verdict::Pass && search.records.len() == 3),
        ("lll random bases", lll_spot_check()?),
        ("tau1 reduction k = 3", tau1_ok),
    ];
    for (name, ok) in checks {
        report.records.push(record! {"check" => name, "ok" => ok});
        if !ok {
            report.verdict = Verdict::Violation;
        }
    }
    if cfg.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
