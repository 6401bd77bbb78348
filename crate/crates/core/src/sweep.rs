//! Closed form versus graph oracle over a range of small instances.

use std::fmt;

use rayon::prelude::*;

use crate::mincut::{oracle_alpha_star, MincutError, OracleOptions};
use crate::params::SystemParams;
use crate::rational::ExtendedRational;
use crate::tradeoff::{self, TradeoffError};

/// Ranges and limits of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// `None` means every `1 ≤ k < n`.
    pub k_values: Option<Vec<usize>>,
    /// `None` means every `1 ≤ r ≤ min(k, n−1)`.
    pub r_values: Option<Vec<usize>>,
    pub rhos: Vec<ExtendedRational>,
    pub file_size: ExtendedRational,
    /// γ values per instance, evenly spaced on `[γ_MBR, 2·f(0)]`.
    pub grid_points: usize,
    pub oracle: OracleOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 6,
            k_values: None,
            r_values: None,
            rhos: vec![
                ExtendedRational::ratio(0, 1),
                ExtendedRational::ratio(1, 4),
                ExtendedRational::ratio(1, 2),
                ExtendedRational::ratio(3, 4),
            ],
            file_size: ExtendedRational::one(),
            grid_points: 8,
            oracle: OracleOptions {
                max_rounds: None,
                budget: 200_000,
            },
        }
    }
}

impl SweepConfig {
    /// Every valid instance in range, sorted by `(n, k, r, ρ)`.
    pub fn instances(&self) -> Vec<SystemParams> {
        let mut out = Vec::new();
        for n in self.n_min.max(2)..=self.n_max {
            for k in 1..n {
                if self.k_values.as_ref().is_some_and(|ks| !ks.contains(&k)) {
                    continue;
                }
                for r in 1..=k.min(n - 1) {
                    if self.r_values.as_ref().is_some_and(|rs| !rs.contains(&r)) {
                        continue;
                    }
                    for rho in &self.rhos {
                        if let Ok(p) =
                            SystemParams::new(n, k, r, rho.clone(), self.file_size.clone())
                        {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Mismatch at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub gamma: ExtendedRational,
    pub closed_form: ExtendedRational,
    pub oracle: ExtendedRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<Mismatch>),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceResult {
    pub params: SystemParams,
    pub grid: Vec<ExtendedRational>,
    pub verdict: Verdict,
    pub outside_proof_regime: bool,
    /// Some binding oracle graph fails a node twice.
    pub beyond_proof: bool,
}

impl InstanceResult {
    pub fn label(&self) -> &'static str {
        match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail(_) => "FAIL",
            Verdict::Skipped(_) => "SKIPPED",
        }
    }
}

impl fmt::Display for InstanceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "{:<7} n={} k={} r={} rho={}",
            self.label(),
            p.n(),
            p.k(),
            p.r(),
            p.rho()
        )?;
        if self.outside_proof_regime {
            f.write_str(" [outside proof regime]")?;
        }
        if self.beyond_proof {
            f.write_str(" [repeated failure binds]")?;
        }
        match &self.verdict {
            Verdict::Pass => Ok(()),
            Verdict::Skipped(why) => write!(f, " ({why})"),
            Verdict::Fail(ms) => {
                write!(f, " {}/{} points differ", ms.len(), self.grid.len())?;
                if let Some(m) = ms.first() {
                    write!(
                        f,
                        "; first at gamma={}: closed={} oracle={}",
                        m.gamma, m.closed_form, m.oracle
                    )?;
                }
                Ok(())
            }
        }
    }
}

/// `len` points evenly spaced on `[lo, hi]`.
pub fn linear_grid(
    lo: &ExtendedRational,
    hi: &ExtendedRational,
    len: usize,
) -> Vec<ExtendedRational> {
    match len {
        0 => Vec::new(),
        1 => vec![lo.clone()],
        _ => (0..len)
            .map(|j| lo + (hi - lo) * ExtendedRational::ratio(j as i64, (len - 1) as i64))
            .collect(),
    }
}

/// The verification grid `[γ_MBR, 2·f(0)]` of an instance.
pub fn instance_grid(
    params: &SystemParams,
    points: usize,
) -> Result<Vec<ExtendedRational>, TradeoffError> {
    let lo = tradeoff::gamma_mbr(params)?;
    let hi = ExtendedRational::from_int(2) * tradeoff::f_zero(params)?;
    if lo.is_infinite() || hi.is_infinite() {
        return Ok(Vec::new());
    }
    Ok(linear_grid(&lo, &hi, points))
}

pub fn verify_instance(params: &SystemParams, config: &SweepConfig) -> InstanceResult {
    let mut result = InstanceResult {
        params: params.clone(),
        grid: Vec::new(),
        verdict: Verdict::Pass,
        outside_proof_regime: params.outside_proof_regime(),
        beyond_proof: false,
    };
    let grid = match instance_grid(params, config.grid_points) {
        Ok(g) => g,
        Err(e) => {
            result.verdict = Verdict::Skipped(e.to_string());
            return result;
        }
    };
    result.grid = grid.clone();
    let mut mismatches = Vec::new();
    for gamma in &grid {
        let closed = match tradeoff::alpha_star(params, gamma) {
            Ok(a) => a,
            Err(e) => {
                result.verdict = Verdict::Skipped(e.to_string());
                return result;
            }
        };
        let oracle = match oracle_alpha_star(params, gamma, &config.oracle) {
            Ok(r) => r,
            Err(e @ MincutError::BudgetExceeded { .. }) => {
                result.verdict = Verdict::Skipped(e.to_string());
                return result;
            }
            Err(e) => {
                result.verdict = Verdict::Skipped(format!("oracle error: {e}"));
                return result;
            }
        };
        result.beyond_proof |= oracle.beyond_proof;
        if oracle.alpha_star != closed {
            mismatches.push(Mismatch {
                gamma: gamma.clone(),
                closed_form: closed,
                oracle: oracle.alpha_star,
            });
        }
    }
    if !mismatches.is_empty() {
        result.verdict = Verdict::Fail(mismatches);
    }
    result
}

/// Runs every instance; results keep the instance order.
pub fn run_sweep(config: &SweepConfig) -> Vec<InstanceResult> {
    config
        .instances()
        .par_iter()
        .map(|p| verify_instance(p, config))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(results: &[InstanceResult]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for r in results {
        match r.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail(_) => s.fail += 1,
            Verdict::Skipped(_) => s.skipped += 1,
        }
    }
    s
}
