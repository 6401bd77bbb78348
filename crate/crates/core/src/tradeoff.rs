//! Closed-form storage/bandwidth trade-off.
//!
//! The threshold `α*(γ)` is a chain of branches evaluated in order; branch
//! `i` applies when `γ ≥ threshold_i` and gives `α = (M − G_i·γ)/D_i`. When
//! `r | k` the chain has `k/r` branches; otherwise it follows the four-part
//! form built from `p = ⌊k/r⌋`, `k0 = p·r`, `k′ = kρ + (1−ρ)k0` and the branch
//! selector `z`. A `γ` that matches no branch is infeasible (`α* = ∞`).

use std::fmt;

use thiserror::Error;

use crate::params::SystemParams;
use crate::rational::ExtendedRational;

type Q = ExtendedRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TradeoffError {
    #[error("r={r} does not divide k={k}")]
    NotDivisible { k: usize, r: usize },
    #[error("r={r} divides k={k}; use the divisible form")]
    Divisible { k: usize, r: usize },
    #[error("parameter outside the assumption of the non-divisible form: no branch selector z fits (n-k0-r)/(k-k0) = {x}")]
    OutsideAssumption { x: String },
    #[error("branch selectors z={z1} and z={z2} both fit but give {a1} and {a2} at gamma={gamma}")]
    TieDisagreement {
        z1: usize,
        z2: usize,
        gamma: String,
        a1: String,
        a2: String,
    },
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("gamma must be non-negative")]
    NegativeGamma,
}

fn int(v: usize) -> Q {
    Q::from(v)
}

fn half() -> Q {
    Q::ratio(1, 2)
}

/// Σ_{s=1}^{k/r} min{ rα₁ + (n − s·r)β, rα }.
pub fn bound_sum(params: &SystemParams, alpha: &Q, beta: &Q) -> Result<Q, TradeoffError> {
    if !params.r_divides_k() {
        return Err(TradeoffError::NotDivisible {
            k: params.k(),
            r: params.r(),
        });
    }
    let (n, r) = (params.n(), params.r());
    let alpha1 = params.alpha1(alpha);
    let mut total = Q::zero();
    for s in 1..=params.k() / r {
        let behind = int(r) * &alpha1 + int(n - s * r) * beta;
        let after = int(r) * alpha;
        total = total + Q::min_of(behind, after);
    }
    Ok(total)
}

/// `b_s = ((n−k)/r + s)/(1−ρ) · β` for `s = 0 … k/r`; all infinite when
/// `ρ = 1`.
pub fn breakpoints(params: &SystemParams, gamma: &Q) -> Result<Vec<Q>, TradeoffError> {
    if !params.r_divides_k() {
        return Err(TradeoffError::NotDivisible {
            k: params.k(),
            r: params.r(),
        });
    }
    let (n, k, r) = (params.n(), params.k(), params.r());
    let beta = params.beta_for(gamma);
    Ok((0..=k / r)
        .map(|s| {
            if params.rho_is_one() {
                Q::Infinite
            } else {
                (Q::ratio((n - k) as i64, r as i64) + int(s)) / params.one_minus_rho() * &beta
            }
        })
        .collect())
}

/// The piecewise-linear min-cut `C(α)` at bandwidth γ.
///
/// On `(b_{i−1}, b_i]` the value is `(k − i·r(1−ρ))α + (1−ρ)·Σ_{j<i} r·b_j`;
/// past `b_{k/r−1}` the last piece (`i = k/r`) continues indefinitely.
pub fn capacity_piecewise(params: &SystemParams, alpha: &Q, gamma: &Q) -> Result<Q, TradeoffError> {
    let b = breakpoints(params, gamma)?;
    let (k, r) = (params.k(), params.r());
    let last = k / r;
    let omr = params.one_minus_rho();
    let mut i = 0;
    while i < last && *alpha > b[i] {
        i += 1;
    }
    if i == 0 {
        return Ok(int(k) * alpha);
    }
    let mut offset = Q::zero();
    for bj in &b[..i] {
        offset = offset + int(r) * bj;
    }
    Ok((int(k) - int(i * r) * &omr) * alpha + omr * offset)
}

/// One branch of the threshold chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Applies for `γ ≥ threshold`.
    pub threshold: Q,
    /// `G` in `α = (M − Gγ)/D`.
    pub g: Q,
    /// `D` in `α = (M − Gγ)/D`.
    pub d: Q,
}

impl Branch {
    pub fn alpha(&self, m: &Q, gamma: &Q) -> Q {
        (m - &self.g * gamma) / &self.d
    }
}

/// `f(i)` of the divisible form.
pub fn f_div(params: &SystemParams, i: usize) -> Q {
    let (n, k, r) = (params.n(), params.k(), params.r());
    let m = params.file_size();
    let omr = params.one_minus_rho();
    let num = int(2) * m * &omr * int(n - r);
    let den = (int(2 * k) - int(r * (i + 1)) * &omr) * int(i)
        + Q::ratio((2 * k) as i64, r as i64) * int(n - k);
    num / den
}

/// `g(i) = ½(2n − 2·base − r + i·r)·i/(n−r)`.
///
/// This is the γ-coefficient that the last `i` rounds add to the cut once
/// they are cut behind the helpers: `β·Σ_{j<i}(n − base + j·r)`. It is the
/// form that keeps `α*` continuous at every `f(i)`.
fn g_with_base(params: &SystemParams, base: usize, i: usize) -> Q {
    let (n, r) = (params.n() as i64, params.r() as i64);
    let i = i as i64;
    half() * Q::from_int(2 * n - 2 * base as i64 - r + i * r) * Q::ratio(i, n - r)
}

pub fn g_div(params: &SystemParams, i: usize) -> Q {
    g_with_base(params, params.k(), i)
}

fn div_branches(params: &SystemParams) -> Vec<Branch> {
    let (k, r) = (params.k(), params.r());
    let omr = params.one_minus_rho();
    (0..k / r)
        .map(|i| Branch {
            threshold: f_div(params, i),
            g: g_div(params, i),
            d: int(k) - int(i * r) * &omr,
        })
        .collect()
}

/// Quantities of the non-divisible form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondivParams {
    pub p: usize,
    pub k0: usize,
    /// Smallest admissible branch selector.
    pub z: usize,
    /// Every admissible selector (more than one only on a boundary).
    pub z_candidates: Vec<usize>,
    pub k_prime: Q,
}

pub fn nondiv_params(params: &SystemParams) -> Result<NondivParams, TradeoffError> {
    let (n, k, r) = (params.n(), params.k(), params.r());
    if params.r_divides_k() {
        return Err(TradeoffError::Divisible { k, r });
    }
    let p = k / r;
    let k0 = p * r;
    let k_prime = int(k) * params.rho() + params.one_minus_rho() * int(k0);
    let x = Q::ratio(n as i64 - k0 as i64 - r as i64, (k - k0) as i64);
    let mut z_candidates = Vec::new();
    if x >= Q::zero() && x <= Q::ratio((n - k0) as i64, r as i64) {
        z_candidates.push(0);
    }
    for z in 1..p.saturating_sub(1) {
        let lo = Q::ratio((n - k0 + (z - 1) * r) as i64, r as i64);
        let hi = Q::ratio((n - k0 + z * r) as i64, r as i64);
        if lo <= x && x <= hi {
            z_candidates.push(z);
        }
    }
    let z = *z_candidates
        .first()
        .ok_or_else(|| TradeoffError::OutsideAssumption { x: x.to_string() })?;
    Ok(NondivParams {
        p,
        k0,
        z,
        z_candidates,
        k_prime,
    })
}

fn nondiv_branches(params: &SystemParams, t: &NondivParams, z: usize) -> Vec<Branch> {
    let (n, k, r) = (params.n(), params.k(), params.r());
    let (k0, p) = (t.k0, t.p);
    let m = params.file_size();
    let omr = params.one_minus_rho();
    let kp = &t.k_prime;
    let f = |i: usize| -> Q {
        if i < z {
            return f_div(params, i);
        }
        let num = int(2) * m * &omr * int(n - r);
        let den = (int(2) * kp - int(r * (i + 1)) * &omr) * int(i)
            + int(2) * kp * Q::ratio((n - k0) as i64, r as i64)
            + int(n - k0 - r);
        num / den
    };
    let g = |i: usize| g_with_base(params, k0, i);
    let h = Q::ratio((n - k0 - r) as i64, (n - r) as i64);
    let f_prime = if z > 0 {
        let kk0 = (k - k0) as i64;
        let lead = Q::ratio(
            2 * (n - k0) as i64 * (k as i64 - k0 as i64 - r as i64) + 2 * (r * r) as i64,
            kk0,
        ) + int((z - 1) * r);
        let tail = Q::from_int(2 * k as i64 * (n - k0 - r) as i64) / (Q::from_int(kk0) * &omr);
        int(2) * m * int(n - r) / (lead * int(z) + tail)
    } else {
        m * int(k - k0) * int(n - r) * &omr / (kp * int(n - k0 - r))
    };

    let mut out = Vec::new();
    for i in 0..z {
        out.push(Branch {
            threshold: f(i),
            g: g(i),
            d: int(k) - int(i * r) * &omr,
        });
    }
    out.push(Branch {
        threshold: f_prime,
        g: g(z),
        d: int(k) - int(z * r) * &omr,
    });
    out.push(Branch {
        threshold: f(z),
        g: g(z) + &h,
        d: kp - int(z * r) * &omr,
    });
    for i in z + 1..p {
        out.push(Branch {
            threshold: f(i),
            g: g(i) + &h,
            d: kp - int(i * r) * &omr,
        });
    }
    out
}

/// The branch chain for `params` (smallest admissible `z` when `r ∤ k`).
pub fn branches(params: &SystemParams) -> Result<Vec<Branch>, TradeoffError> {
    if params.r_divides_k() {
        Ok(div_branches(params))
    } else {
        let t = nondiv_params(params)?;
        Ok(nondiv_branches(params, &t, t.z))
    }
}

fn evaluate(chain: &[Branch], m: &Q, gamma: &Q) -> (Q, Option<usize>) {
    for (i, b) in chain.iter().enumerate() {
        if *gamma >= b.threshold {
            return (b.alpha(m, gamma), Some(i));
        }
    }
    (Q::Infinite, None)
}

pub fn alpha_star_div(params: &SystemParams, gamma: &Q) -> Result<Q, TradeoffError> {
    if !params.r_divides_k() {
        return Err(TradeoffError::NotDivisible {
            k: params.k(),
            r: params.r(),
        });
    }
    if gamma.is_negative() {
        return Err(TradeoffError::NegativeGamma);
    }
    Ok(evaluate(&div_branches(params), params.file_size(), gamma).0)
}

pub fn alpha_star_nondiv(params: &SystemParams, gamma: &Q) -> Result<Q, TradeoffError> {
    if gamma.is_negative() {
        return Err(TradeoffError::NegativeGamma);
    }
    let t = nondiv_params(params)?;
    let m = params.file_size();
    let first = evaluate(&nondiv_branches(params, &t, t.z), m, gamma).0;
    for &z in &t.z_candidates[1..] {
        let other = evaluate(&nondiv_branches(params, &t, z), m, gamma).0;
        if other != first {
            return Err(TradeoffError::TieDisagreement {
                z1: t.z,
                z2: z,
                gamma: gamma.to_string(),
                a1: first.to_string(),
                a2: other.to_string(),
            });
        }
    }
    Ok(first)
}

/// `α*(n, k, γ, r, ρ)` through whichever closed form applies.
pub fn alpha_star(params: &SystemParams, gamma: &Q) -> Result<Q, TradeoffError> {
    if params.r_divides_k() {
        alpha_star_div(params, gamma)
    } else {
        alpha_star_nondiv(params, gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Msr,
    Mbr,
    /// Index into the branch chain.
    Branch(usize),
    Infeasible,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Msr => f.write_str("msr"),
            Regime::Mbr => f.write_str("mbr"),
            Regime::Branch(i) => write!(f, "branch-{i}"),
            Regime::Infeasible => f.write_str("infeasible"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeoffPoint {
    pub alpha: Q,
    pub gamma: Q,
    pub regime: Regime,
}

impl TradeoffPoint {
    pub fn beta(&self, params: &SystemParams) -> Q {
        params.beta_for(&self.gamma)
    }
}

/// Minimum-storage corner.
pub fn msr_point(params: &SystemParams) -> Result<TradeoffPoint, TradeoffError> {
    let m = params.file_size();
    if params.r_divides_k() {
        let (n, k, r) = (params.n(), params.k(), params.r());
        let gamma = m * int(r * (n - r)) * params.one_minus_rho() / int(k * (n - k));
        let regime = if gamma.is_infinite() {
            Regime::Infeasible
        } else {
            Regime::Msr
        };
        return Ok(TradeoffPoint {
            alpha: m / int(k),
            gamma,
            regime,
        });
    }
    // first branch that some finite bandwidth reaches
    let chain = branches(params)?;
    match chain.iter().find(|b| b.threshold.is_finite()) {
        Some(b) => Ok(TradeoffPoint {
            alpha: alpha_star(params, &b.threshold)?,
            gamma: b.threshold.clone(),
            regime: Regime::Msr,
        }),
        None => Ok(TradeoffPoint {
            alpha: m / int(params.k()),
            gamma: Q::Infinite,
            regime: Regime::Infeasible,
        }),
    }
}

/// `γ_MBR = 2Mr(n−r)(1−ρ) / (k(2n − k(1−ρ) − r(1+ρ)))`.
pub fn gamma_mbr_div(params: &SystemParams) -> Q {
    let (n, k, r) = (params.n(), params.k(), params.r());
    let m = params.file_size();
    let omr = params.one_minus_rho();
    let opr = Q::one() + params.rho();
    int(2) * m * int(r * (n - r)) * &omr / (int(k) * (int(2 * n) - int(k) * &omr - int(r) * opr))
}

/// `α_MBR = (M − g′γ_MBR)/(kρ + r(1−ρ))` with `g′ = g(k/r − 1)`, i.e.
/// `½(k−r)(2n−k−2r)/(r(n−r))`.
pub fn alpha_mbr_div(params: &SystemParams) -> Q {
    let (n, k, r) = (params.n() as i64, params.k() as i64, params.r() as i64);
    let m = params.file_size();
    let g_prime = half() * Q::from_int((k - r) * (2 * n - k - 2 * r)) / Q::from_int(r * (n - r));
    let den = Q::from_int(k) * params.rho() + Q::from_int(r) * params.one_minus_rho();
    (m - g_prime * gamma_mbr_div(params)) / den
}

/// Minimum-bandwidth corner: the least γ with finite `α*`.
pub fn mbr_point(params: &SystemParams) -> Result<TradeoffPoint, TradeoffError> {
    if params.r_divides_k() {
        return Ok(TradeoffPoint {
            alpha: alpha_mbr_div(params),
            gamma: gamma_mbr_div(params),
            regime: Regime::Mbr,
        });
    }
    let gamma = gamma_mbr(params)?;
    Ok(TradeoffPoint {
        alpha: alpha_star(params, &gamma)?,
        gamma,
        regime: Regime::Mbr,
    })
}

/// Least γ at which some branch applies.
pub fn gamma_mbr(params: &SystemParams) -> Result<Q, TradeoffError> {
    let chain = branches(params)?;
    let m = params.file_size();
    let mut best = Q::Infinite;
    for b in &chain {
        if b.threshold < best && evaluate(&chain, m, &b.threshold).1.is_some() {
            best = b.threshold.clone();
        }
    }
    Ok(best)
}

/// `f(0)`: the bandwidth above which the first storage branch applies.
pub fn f_zero(params: &SystemParams) -> Result<Q, TradeoffError> {
    if params.r_divides_k() {
        return Ok(f_div(params, 0));
    }
    let t = nondiv_params(params)?;
    let chain = nondiv_branches(params, &t, t.z);
    // with z = 0 the chain is [f′, f(0), …]; otherwise f(0) leads it
    Ok(if t.z == 0 {
        chain[1].threshold.clone()
    } else {
        chain[0].threshold.clone()
    })
}

/// Finite branch thresholds, ascending and deduplicated.
pub fn thresholds(params: &SystemParams) -> Result<Vec<Q>, TradeoffError> {
    let mut out: Vec<Q> = branches(params)?
        .into_iter()
        .map(|b| b.threshold)
        .filter(Q::is_finite)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Point on the curve at bandwidth γ, with its regime label.
pub fn point_at(params: &SystemParams, gamma: &Q) -> Result<TradeoffPoint, TradeoffError> {
    let alpha = alpha_star(params, gamma)?;
    let regime = if alpha.is_infinite() {
        Regime::Infeasible
    } else if *gamma == gamma_mbr(params)? {
        Regime::Mbr
    } else if alpha == msr_point(params)?.alpha {
        Regime::Msr
    } else {
        let (_, idx) = evaluate(&branches(params)?, params.file_size(), gamma);
        Regime::Branch(idx.expect("finite alpha has a branch"))
    };
    Ok(TradeoffPoint {
        alpha,
        gamma: gamma.clone(),
        regime,
    })
}

/// Least γ with `α*(γ) ≤ α`, or `∞` if no bandwidth suffices.
///
/// The answer is either a branch threshold or the root of a branch line, so
/// every such candidate is checked against [`alpha_star`] and the smallest
/// one that passes wins.
pub fn gamma_star(params: &SystemParams, alpha: &Q) -> Result<Q, TradeoffError> {
    if alpha.is_negative() || alpha.is_zero() {
        return Err(TradeoffError::NonPositiveAlpha);
    }
    let chain = branches(params)?;
    let m = params.file_size();
    let mut candidates = vec![Q::zero()];
    for b in &chain {
        if b.threshold.is_finite() {
            candidates.push(b.threshold.clone());
        }
        // (M − Gγ)/D = α  ⇔  γ = (M − Dα)/G
        if b.g.is_finite() && !b.g.is_zero() && b.d.is_finite() {
            let root = (m - &b.d * alpha) / &b.g;
            if !root.is_negative() {
                candidates.push(root);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        if alpha_star(params, &c)? <= *alpha {
            return Ok(c);
        }
    }
    Ok(Q::Infinite)
}

/// One row of an emitted curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub point: TradeoffPoint,
    /// `γ / r`, the bandwidth charged to each failed node.
    pub gamma_per_failed_node: Q,
}

pub fn sample_curve(
    params: &SystemParams,
    gamma_grid: &[Q],
) -> Result<Vec<CurvePoint>, TradeoffError> {
    gamma_grid
        .iter()
        .map(|g| {
            Ok(CurvePoint {
                point: point_at(params, g)?,
                gamma_per_failed_node: g / int(params.r()),
            })
        })
        .collect()
}

/// `points` evenly spaced values on `[γ_MBR, γ_MSR]` merged with every
/// finite branch threshold in that range.
pub fn default_gamma_grid(params: &SystemParams, points: usize) -> Result<Vec<Q>, TradeoffError> {
    let lo = gamma_mbr(params)?;
    let hi = msr_point(params)?.gamma;
    if lo.is_infinite() {
        return Ok(Vec::new());
    }
    let hi = if hi.is_finite() && hi >= lo {
        hi
    } else {
        lo.clone()
    };
    let mut grid: Vec<Q> = Vec::new();
    if points == 1 || hi == lo {
        grid.push(lo.clone());
    } else {
        for j in 0..points {
            grid.push(&lo + (&hi - &lo) * Q::ratio(j as i64, (points - 1) as i64));
        }
    }
    grid.extend(
        thresholds(params)?
            .into_iter()
            .filter(|t| *t >= lo && *t <= hi),
    );
    grid.sort();
    grid.dedup();
    Ok(grid)
}

/// `p/q=decimal` with 12 significant digits.
pub fn format_cell(v: &Q) -> String {
    match v {
        Q::Infinite => "inf=inf".to_string(),
        _ => format!("{}={}", v, v.to_decimal(12)),
    }
}

pub const CSV_HEADER: &str = "gamma,gamma_per_failed_node,alpha,regime";

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_cell(&p.point.gamma),
            format_cell(&p.gamma_per_failed_node),
            format_cell(&p.point.alpha),
            p.point.regime
        ));
    }
    out
}
