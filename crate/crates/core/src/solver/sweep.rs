//! Per-`k` sweeps over a worker pool, with optional checkpointing, and the
//! report builders for every pipeline stage.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linforms::thm11_check;
use crate::pell::PellStream;
use crate::record;
use crate::smooth::{largest_prime_factor, smooth_hits_for_order, FactorBudget};

use super::config::PipelineConfig;
use super::reduce::{run_tau1_reduction, run_tau2_chain, ReductionRun};
use super::report::{dec, Record, RunReport, Verdict};

/// The 7-smooth terms `(k, n, P_n^(k))` with `n >= 4`.
pub const SMOOTH_SOLUTIONS: [(u32, i64, u64); 4] = [(2, 4, 12), (2, 6, 70), (3, 6, 84), (5, 10, 4116)];

/// Largest `k` and `n` for which the solution list is claimed complete.
pub const FULL_GRID: (u32, i64) = (2500, 1214);

fn results_path(checkpoint: &Path) -> PathBuf {
    let mut s = checkpoint.as_os_str().to_owned();
    s.push(".jsonl");
    PathBuf::from(s)
}

/// Completed orders recorded in a checkpoint, with their records.
fn load_checkpoint(path: &Path) -> Result<BTreeMap<u32, Vec<Record>>> {
    let done: BTreeSet<u32> = match std::fs::read_to_string(path) {
        Ok(text) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{}: bad checkpoint line {l:?}", path.display())))
            })
            .collect::<Result<_>>()?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(Error::io(path, e)),
    };
    let rpath = results_path(path);
    let text = match std::fs::read_to_string(&rpath) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
        Err(e) => return Err(Error::io(&rpath, e)),
    };
    let mut out = BTreeMap::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line).map_err(|e| Error::Serialize {
            path: rpath.clone(),
            source: Box::new(e),
        })?;
        let k = v["k"].as_u64().and_then(|k| u32::try_from(k).ok());
        let records: Option<Vec<Record>> = serde_json::from_value(v["records"].clone()).ok();
        if let (Some(k), Some(records)) = (k, records) {
            if done.contains(&k) {
                out.insert(k, records);
            }
        }
    }
    Ok(out)
}

struct Checkpoint {
    path: PathBuf,
    lock: Mutex<()>,
}

impl Checkpoint {
    fn append(&self, k: u32, records: &[Record]) -> Result<()> {
        let _guard = self.lock.lock().unwrap_or_else(|p| p.into_inner());
        let rpath = results_path(&self.path);
        let line = json!({ "k": k, "records": records }).to_string();
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&rpath)
            .map_err(|e| Error::io(&rpath, e))?;
        writeln!(f, "{line}").map_err(|e| Error::io(&rpath, e))?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::io(&self.path, e))?;
        writeln!(f, "{k}").map_err(|e| Error::io(&self.path, e))
    }
}

/// Runs `job` for every `k` in `ks` on `cfg.worker_count` threads and
/// returns the records concatenated in the order of `ks`. With a checkpoint
/// configured, orders already recorded there are not recomputed and each
/// finished order is appended as soon as it completes.
pub fn sweep_orders<F>(cfg: &PipelineConfig, ks: &[u32], job: F) -> Result<Vec<Record>>
where
    F: Fn(u32) -> Result<Vec<Record>> + Sync,
{
    let mut done = match &cfg.checkpoint_path {
        Some(p) => load_checkpoint(p)?,
        None => BTreeMap::new(),
    };
    let checkpoint = cfg.checkpoint_path.as_ref().map(|p| Checkpoint {
        path: p.clone(),
        lock: Mutex::new(()),
    });
    let todo: Vec<u32> = ks.iter().copied().filter(|k| !done.contains_key(k)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let fresh: Vec<(u32, Result<Vec<Record>>)> = pool.install(|| {
        todo.par_iter()
            .map(|&k| {
                let r = job(k).and_then(|records| {
                    if let Some(c) = &checkpoint {
                        c.append(k, &records)?;
                    }
                    Ok(records)
                });
                (k, r)
            })
            .collect()
    });
    for (k, r) in fresh {
        done.insert(k, r?);
    }
    Ok(ks.iter().flat_map(|k| done.remove(k).unwrap_or_default()).collect())
}

fn finish(mut report: RunReport, cfg: &PipelineConfig, start: Instant) -> RunReport {
    if cfg.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// The terms `P_1^(k) ..= P_{n_max}^(k)` for every configured order.
pub fn run_pell_table(cfg: &PipelineConfig) -> Result<RunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = RunReport::new("pell", &cfg.describe());
    let ks: Vec<u32> = cfg.k_range().collect();
    report.records = sweep_orders(cfg, &ks, |k| {
        Ok(PellStream::new(k)?
            .take(cfg.n_max.max(0) as usize)
            .map(|t| record! {"k" => k, "n" => t.n, "value" => dec(&t.value)})
            .collect())
    })?;
    report.summarize("terms", report.records.len());
    Ok(finish(report, cfg, start))
}

/// Searches the configured grid `k_min..=k_max`, `4..=n_max` for 7-smooth
/// terms and compares the hits with [`SMOOTH_SOLUTIONS`] restricted to the
/// grid.
pub fn run_theorem12_search(cfg: &PipelineConfig) -> Result<RunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = RunReport::new("search", &cfg.describe());
    let ks: Vec<u32> = cfg.k_range().collect();
    let n_max = cfg.n_max;
    report.records = sweep_orders(cfg, &ks, |k| {
        let hits = smooth_hits_for_order(k, 4..=n_max)?;
        Ok(hits
            .into_iter()
            .map(|h| {
                let [a, b, c, d] = h.certificate.exponents().unwrap_or_default();
                record! {
                    "k" => h.k(), "n" => h.n(), "value" => dec(&h.term.value),
                    "a" => a, "b" => b, "c" => c, "d" => d,
                }
            })
            .collect())
    })?;
    let found: BTreeSet<(u64, i64)> = report
        .records
        .iter()
        .map(|r| (r["k"].as_u64().unwrap_or(0), r["n"].as_i64().unwrap_or(0)))
        .collect();
    let expected: BTreeSet<(u64, i64)> = SMOOTH_SOLUTIONS
        .iter()
        .filter(|(k, n, _)| cfg.k_range().contains(k) && *n <= n_max)
        .map(|&(k, n, _)| (u64::from(k), n))
        .collect();
    let unexpected = found.difference(&expected).count();
    let missing = expected.difference(&found).count();
    report.summarize("hits", found.len());
    report.summarize("expected", expected.len());
    report.summarize("unexpected", unexpected);
    report.summarize("missing", missing);
    report.summarize(
        "covers_full_grid",
        cfg.k_min <= 2 && cfg.k_max >= FULL_GRID.0 && n_max >= FULL_GRID.1,
    );
    if unexpected + missing > 0 {
        report.verdict = Verdict::Violation;
    }
    Ok(finish(report, cfg, start))
}

/// Checks `P(P_n^(k)) > (1/104) log log n` on the grid. The largest prime
/// factor is first bounded from below by trial division alone; the full
/// factorisation budget is spent only when that bound does not decide.
pub fn run_thm11_verification(cfg: &PipelineConfig) -> Result<RunReport> {
    cfg.validate()?;
    if cfg.n_max < 4 {
        return Err(Error::Parameter(format!("n_max must be at least 4, got {}", cfg.n_max)));
    }
    let start = Instant::now();
    let mut report = RunReport::new("verify-thm11", &cfg.describe());
    let ks: Vec<u32> = cfg.k_range().collect();
    let n_max = cfg.n_max;
    let quick = FactorBudget::trial_only(cfg.budget.trial_bound);
    report.records = sweep_orders(cfg, &ks, |k| {
        let mut checked = 0u64;
        let mut violations = Vec::new();
        let mut full_runs = 0u64;
        let mut weakest: Option<(i64, BigInt)> = None;
        for term in PellStream::new(k)?.take(n_max as usize) {
            if term.n < 4 {
                continue;
            }
            let n = term.n as u64;
            let (mut p, _) = largest_prime_factor(&term.value, &quick);
            if !thm11_check(k, n, &p)? {
                full_runs += 1;
                p = largest_prime_factor(&term.value, &cfg.budget).0;
                if !thm11_check(k, n, &p)? {
                    violations.push(term.n);
                }
            }
            checked += 1;
            if weakest.as_ref().is_none_or(|(_, w)| &p < w) {
                weakest = Some((term.n, p));
            }
        }
        let (weak_n, weak_p) = weakest.unwrap_or((0, BigInt::from(0)));
        let list: Vec<String> = violations.iter().map(i64::to_string).collect();
        Ok(vec![record! {
            "k" => k, "checked" => checked, "violations" => violations.len(),
            "violating_n" => list.join(" "), "full_factorisations" => full_runs,
            "weakest_n" => weak_n, "weakest_prime_bound" => dec(weak_p),
        }])
    })?;
    let checked: u64 = report.records.iter().filter_map(|r| r["checked"].as_u64()).sum();
    let violations: u64 = report.records.iter().filter_map(|r| r["violations"].as_u64()).sum();
    report.summarize("checked", checked);
    report.summarize("violations", violations);
    if violations > 0 {
        report.verdict = Verdict::Violation;
    }
    Ok(finish(report, cfg, start))
}

/// The fields shared by every reduction record.
pub fn reduction_record(run: &ReductionRun) -> Record {
    let o = &run.outcome;
    let failed: Vec<String> = run.failed.iter().map(ToString::to_string).collect();
    let xs: Vec<String> = run.x_bounds.iter().map(ToString::to_string).collect();
    let mut r = record! {
        "shape" => run.shape.to_string(),
        "dim" => run.x_bounds.len(),
        "C" => o.c.to_string(),
        "scale" => run.scale,
        "failed_C" => failed.join(" "),
        "X" => xs.join(" "),
        "S" => dec(&o.s),
        "T" => dec(&o.t),
        "c1" => o.c1.to_sci(6),
        "c2" => o.c2.to_sci(6),
        "condition" => o.condition_holds(),
    };
    r.insert("H".into(), o.bound().map(dec).unwrap_or(Value::Null));
    r
}

/// The small-`k` reduction for `tau1_sample`, or for every `k` in the
/// configured range when the sample is empty. The verdict is a precision
/// failure when any reduction ended without a bound.
pub fn run_tau1_sweep(cfg: &PipelineConfig) -> Result<RunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = RunReport::new("reduce-tau1", &cfg.describe());
    let ks: Vec<u32> = if cfg.tau1_sample.is_empty() {
        cfg.k_range().collect()
    } else {
        cfg.tau1_sample.clone()
    };
    report.records = sweep_orders(cfg, &ks, |k| {
        let run = run_tau1_reduction(k, cfg)?;
        let mut r = record! {"k" => k};
        r.extend(reduction_record(&run));
        Ok(vec![r])
    })?;
    let bounds: Vec<BigInt> = report
        .records
        .iter()
        .filter_map(|r| r["H"].as_str().and_then(|h| h.parse().ok()))
        .collect();
    let failed = report.records.len() - bounds.len();
    report.summarize("reductions", report.records.len());
    report.summarize("failed", failed);
    let max = bounds.iter().max().map(dec).unwrap_or(Value::Null);
    report.summary.insert("max_H".into(), max);
    if failed > 0 {
        report.verdict = Verdict::PrecisionFailure;
    }
    Ok(finish(report, cfg, start))
}

/// The large-`k` chain. Passes when the last round bounds `k` strictly
/// below the case split; a round without a bound is a precision failure.
pub fn run_tau2_report(cfg: &PipelineConfig) -> Result<RunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = RunReport::new("reduce-tau2", &cfg.describe());
    let rounds = run_tau2_chain(cfg)?;
    for round in &rounds {
        let mut r = record! {"round" => round.round};
        r.insert("k_in".into(), round.k_in.as_ref().map(dec).unwrap_or(Value::Null));
        r.insert("n_bound".into(), dec(&round.n_bound));
        r.extend(reduction_record(&round.run));
        r.insert("k_out".into(), round.k_out.as_ref().map(dec).unwrap_or(Value::Null));
        report.records.push(r);
    }
    let final_k = rounds.last().and_then(|r| r.k_out.clone());
    let complete = rounds.len() == cfg.tau2_rounds.len() && final_k.is_some();
    report.summarize("rounds", rounds.len());
    report.summary.insert("final_k_bound".into(), final_k.as_ref().map(dec).unwrap_or(Value::Null));
    let below = final_k.as_ref().is_some_and(|k| k < &BigInt::from(cfg.case_split));
    report.summarize("below_case_split", below);
    report.verdict = if !complete {
        Verdict::PrecisionFailure
    } else if below {
        Verdict::Pass
    } else {
        Verdict::Violation
    };
    Ok(finish(report, cfg, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(k_max: u32, n_max: i64) -> PipelineConfig {
        PipelineConfig {
            k_max,
            n_max,
            ..Default::default()
        }
    }

    #[test]
    fn pell_table_starts_at_one() {
        let r = run_pell_table(&cfg(3, 6)).unwrap();
        let v: Vec<&str> = r.records.iter().map(|x| x["value"].as_str().unwrap()).collect();
        assert_eq!(v, ["1", "2", "5", "12", "29", "70", "1", "2", "5", "13", "33", "84"]);
    }

    #[test]
    fn small_grid_finds_three_solutions() {
        let r = run_theorem12_search(&cfg(5, 9)).unwrap();
        let got: Vec<(u64, u64)> = r
            .records
            .iter()
            .map(|x| (x["k"].as_u64().unwrap(), x["n"].as_u64().unwrap()))
            .collect();
        assert_eq!(got, [(2, 4), (2, 6), (3, 6)]);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.records[2]["value"], Value::String("84".into()));
        assert_eq!(r.records[2]["a"], json!(2));
    }

    #[test]
    fn empty_grid_gives_empty_report() {
        let c = PipelineConfig {
            k_min: 6,
            k_max: 5,
            ..Default::default()
        };
        let r = run_theorem12_search(&c).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn parallel_and_serial_reports_agree() {
        let serial = run_theorem12_search(&cfg(12, 60)).unwrap();
        let parallel = run_theorem12_search(&PipelineConfig {
            worker_count: 4,
            ..cfg(12, 60)
        })
        .unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn checkpoint_resume_covers_grid_once() {
        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("done.txt");
        let base = PipelineConfig {
            checkpoint_path: Some(ck.clone()),
            ..cfg(6, 40)
        };
        // an interrupted run that finished k = 2..=3
        let partial = PipelineConfig { k_max: 3, ..base.clone() };
        run_theorem12_search(&partial).unwrap();
        let resumed = run_theorem12_search(&base).unwrap();
        let fresh = run_theorem12_search(&cfg(6, 40)).unwrap();
        assert_eq!(resumed.records, fresh.records);
        let mut lines: Vec<u32> = std::fs::read_to_string(&ck)
            .unwrap()
            .lines()
            .map(|l| l.parse().unwrap())
            .collect();
        lines.sort();
        assert_eq!(lines, [2, 3, 4, 5, 6]);
    }

    #[test]
    fn thm11_small_grid_has_no_violations() {
        let r = run_thm11_verification(&cfg(4, 60)).unwrap();
        assert_eq!(r.summary["violations"], json!(0));
        assert_eq!(r.summary["checked"], json!(3 * 57));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(run_thm11_verification(&cfg(4, 3)).is_err());
    }

    #[test]
    fn tau1_records_carry_c_and_scale() {
        let c = PipelineConfig {
            tau1_sample: vec![3],
            ..Default::default()
        };
        let r = run_tau1_sweep(&c).unwrap();
        let rec = &r.records[0];
        assert_eq!(rec["C"], json!("1e299"));
        assert!(rec["scale"].as_u64().unwrap() > 299);
        assert_eq!(rec["condition"], json!(true));
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
