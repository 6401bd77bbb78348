//! Coded cache simulator: MDS placement, partial failures, broadcast repair
//! through the explicit two-equation construction for `(4, 2, 1, ½)` and
//! through random linear network coding, and any-k rank checks.
//!
//! Sizes are counted in packets. A file of `M` bits is `k_sym` packets of
//! `L` field symbols, so α, α₁ and β become whole packet counts once `k_sym`
//! is chosen by [`UnitLayout::for_point`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::galois::{FieldMatrix, FieldSpec, GaloisError};
use crate::mds::{make_mds, MdsCode, MdsError, Placement};
use crate::params::SystemParams;
use crate::rational::ExtendedRational;
use crate::tradeoff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("loss of {0} packets per node is not a whole number")]
    FractionalLoss(String),
    #[error("storage and bandwidth must be positive finite multiples of the file size")]
    BadPoint,
    #[error("expected {expected} failed nodes, got {got}")]
    FailureCount { expected: usize, got: usize },
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("packet {packet} of node {node} does not exist or is already lost")]
    BadPacket { node: usize, packet: usize },
    #[error("the explicit construction needs n=4, k=2, r=1, rho=1/2, 4 packets per node and 8 file packets")]
    UnsupportedPlan,
    #[error("node {0} must have exactly two lost packets for the explicit construction")]
    PlanLossShape(usize),
    #[error("no valid plan found in {0} attempts")]
    PlanSearchExhausted(usize),
    #[error("a helper needed by the plan has lost packets")]
    HelperIncomplete,
    #[error("file has {got} packets, the code expects {expected}")]
    FileShape { expected: usize, got: usize },
    #[error(transparent)]
    Mds(#[from] MdsError),
    #[error(transparent)]
    Field(#[from] GaloisError),
}

/// Packet counts for one `(α, β)` operating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitLayout {
    /// Packets per file (`M`).
    pub file: usize,
    /// Packets per node (`α`).
    pub alpha: usize,
    /// Surviving packets after a partial failure (`α₁`).
    pub alpha1: usize,
    /// Packets each complete node broadcasts (`β`).
    pub beta: usize,
}

impl UnitLayout {
    /// Smallest packet size that makes `α`, `ρα` and `β` whole packet
    /// counts.
    pub fn for_point(
        params: &SystemParams,
        alpha: &ExtendedRational,
        beta: &ExtendedRational,
    ) -> Result<Self, SimError> {
        let m = params.file_size();
        let parts = [alpha / m, params.alpha1(alpha) / m, beta / m];
        let mut scale = BigInt::one();
        for p in &parts {
            let v = p.as_finite().ok_or(SimError::BadPoint)?;
            if v < &num_rational::BigRational::from_integer(BigInt::from(0)) {
                return Err(SimError::BadPoint);
            }
            scale = scale.lcm(v.denom());
        }
        let count = |v: &ExtendedRational| -> Result<usize, SimError> {
            let x = v.as_finite().expect("checked")
                * num_rational::BigRational::from_integer(scale.clone());
            x.to_integer().to_usize().ok_or(SimError::BadPoint)
        };
        let layout = Self {
            file: scale.to_usize().ok_or(SimError::BadPoint)?,
            alpha: count(&parts[0])?,
            alpha1: count(&parts[1])?,
            beta: count(&parts[2])?,
        };
        if layout.alpha == 0 {
            return Err(SimError::BadPoint);
        }
        Ok(layout)
    }

    pub fn lost_per_node(&self) -> usize {
        self.alpha - self.alpha1
    }
}

/// `t·(1−ρ)` when it is a whole number.
pub fn loss_count(params: &SystemParams, packets_per_node: usize) -> Result<usize, SimError> {
    let lost = ExtendedRational::from(packets_per_node) * params.one_minus_rho();
    if !lost.is_integer() {
        return Err(SimError::FractionalLoss(lost.to_string()));
    }
    Ok(lost.to_f64() as usize)
}

/// One stored packet: its coefficient vector over the file packets and its
/// payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredPacket {
    pub coeffs: Vec<u32>,
    pub payload: Vec<u32>,
    pub lost: bool,
}

/// Bandwidth spent by one repair round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTally {
    pub senders: usize,
    pub packets: usize,
    /// `packets / k_sym`, as a fraction of the file size.
    pub fraction_of_file: ExtendedRational,
}

#[derive(Clone, Debug)]
pub struct CodedSystemState {
    params: SystemParams,
    code: MdsCode,
    placement: Placement,
    /// Plain file (`L × k_sym`), kept out of band for checks.
    file: FieldMatrix,
    nodes: Vec<Vec<StoredPacket>>,
    tallies: Vec<RoundTally>,
}

/// Encodes `file` (`L × k_sym`) with `code` and stores `n_sym / n`
/// consecutive packets on each node.
pub fn init_system(
    params: &SystemParams,
    code: MdsCode,
    file: FieldMatrix,
) -> Result<CodedSystemState, SimError> {
    let n = params.n();
    if !code.n_sym().is_multiple_of(n) {
        return Err(MdsError::SizeMismatch {
            expected: n * code.n_sym().div_ceil(n),
            got: code.n_sym(),
        }
        .into());
    }
    if file.cols() != code.k_sym() {
        return Err(SimError::FileShape {
            expected: code.k_sym(),
            got: file.cols(),
        });
    }
    let placement = Placement::new(n, code.n_sym() / n);
    let packets = code.encode(&file)?;
    let nodes = (0..n)
        .map(|i| {
            placement
                .columns(i)
                .map(|c| StoredPacket {
                    coeffs: code.coefficients(c),
                    payload: packets.column(c),
                    lost: false,
                })
                .collect()
        })
        .collect();
    Ok(CodedSystemState {
        params: params.clone(),
        code,
        placement,
        file,
        nodes,
        tallies: Vec::new(),
    })
}

/// Builds the `(n·α, M)` MDS code for `layout` and stores a random file with
/// `symbols` field symbols per packet.
pub fn init_random(
    params: &SystemParams,
    layout: &UnitLayout,
    field: FieldSpec,
    symbols: usize,
    rng: &mut impl Rng,
) -> Result<CodedSystemState, SimError> {
    let code = make_mds(layout.file, params.n() * layout.alpha, field)?;
    let file = FieldMatrix::random(field, symbols, layout.file, rng);
    init_system(params, code, file)
}

impl CodedSystemState {
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn code(&self) -> &MdsCode {
        &self.code
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn field(&self) -> FieldSpec {
        self.code.field()
    }

    pub fn file(&self) -> &FieldMatrix {
        &self.file
    }

    pub fn node(&self, i: usize) -> &[StoredPacket] {
        &self.nodes[i]
    }

    pub fn tallies(&self) -> &[RoundTally] {
        &self.tallies
    }

    pub fn loss_mask(&self) -> Vec<Vec<bool>> {
        self.nodes
            .iter()
            .map(|n| n.iter().map(|p| p.lost).collect())
            .collect()
    }

    pub fn faulty_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].iter().any(|p| p.lost))
            .collect()
    }

    /// Erases the given packets of `node`.
    pub fn inject_losses(&mut self, node: usize, packets: &[usize]) -> Result<(), SimError> {
        if node >= self.nodes.len() {
            return Err(SimError::UnknownNode(node));
        }
        for &j in packets {
            match self.nodes[node].get_mut(j) {
                Some(p) if !p.lost => {
                    p.lost = true;
                    p.payload.iter_mut().for_each(|v| *v = 0);
                }
                _ => return Err(SimError::BadPacket { node, packet: j }),
            }
        }
        Ok(())
    }

    /// Each of the `r` listed nodes loses `lost_per_node` packets chosen by
    /// `rng`.
    pub fn inject_partial_failure(
        &mut self,
        nodes: &[usize],
        lost_per_node: usize,
        rng: &mut impl Rng,
    ) -> Result<(), SimError> {
        if nodes.len() != self.params.r() {
            return Err(SimError::FailureCount {
                expected: self.params.r(),
                got: nodes.len(),
            });
        }
        let t = self.placement.packets_per_node();
        let expected = loss_count(&self.params, t)?;
        if lost_per_node != expected {
            return Err(SimError::FractionalLoss(format!(
                "{lost_per_node} (expected {expected})"
            )));
        }
        for &i in nodes {
            let mut idx: Vec<usize> = (0..t).collect();
            idx.shuffle(rng);
            idx.truncate(lost_per_node);
            idx.sort_unstable();
            self.inject_losses(i, &idx)?;
        }
        Ok(())
    }

    /// Payload of `Σ c_j · packet_j` over the listed stored packets of
    /// `node`, with its coefficient vector.
    fn combine(&self, node: usize, weights: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field();
        let k = self.code.k_sym();
        let l = self.file.rows();
        let mut coeffs = vec![0; k];
        let mut payload = vec![0; l];
        for (p, &w) in self.nodes[node].iter().zip(weights) {
            if w == 0 {
                continue;
            }
            assert!(!p.lost, "combining a lost packet");
            for (c, &v) in coeffs.iter_mut().zip(&p.coeffs) {
                *c = f.add(*c, f.mul(w, v));
            }
            for (c, &v) in payload.iter_mut().zip(&p.payload) {
                *c = f.add(*c, f.mul(w, v));
            }
        }
        (coeffs, payload)
    }

    /// Every stored packet's payload equals its coefficients applied to the
    /// file.
    pub fn payloads_consistent(&self) -> bool {
        let f = self.field();
        self.nodes.iter().flatten().filter(|p| !p.lost).all(|p| {
            (0..self.file.rows()).all(|row| {
                let v = self
                    .file
                    .row(row)
                    .iter()
                    .zip(&p.coeffs)
                    .fold(0, |acc, (&w, &c)| f.add(acc, f.mul(w, c)));
                v == p.payload[row]
            })
        })
    }

    fn coefficient_rank(&self, nodes: &[usize]) -> usize {
        let rows: Vec<Vec<u32>> = nodes
            .iter()
            .flat_map(|&i| {
                self.nodes[i]
                    .iter()
                    .filter(|p| !p.lost)
                    .map(|p| p.coeffs.clone())
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        FieldMatrix::from_rows(self.field(), &rows)
            .expect("coefficients are canonical")
            .rank()
    }
}

/// Outcome of [`verify_any_k`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnyKVerdict {
    pub ok: bool,
    pub subsets_checked: usize,
    /// First k-subset (0-based) whose packets do not span the file.
    pub witness: Option<Vec<usize>>,
    pub witness_rank: Option<usize>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// True iff every k nodes' surviving packets have full rank.
pub fn verify_any_k(state: &CodedSystemState) -> AnyKVerdict {
    let subsets = k_subsets(state.params.n(), state.params.k());
    let need = state.code.k_sym();
    for s in &subsets {
        let rank = state.coefficient_rank(s);
        if rank < need {
            return AnyKVerdict {
                ok: false,
                subsets_checked: subsets.len(),
                witness: Some(s.clone()),
                witness_rank: Some(rank),
            };
        }
    }
    AnyKVerdict {
        ok: true,
        subsets_checked: subsets.len(),
        witness: None,
        witness_rank: None,
    }
}

/// Coefficients of the explicit repair of one failed node of the
/// `(4, 2, 1, ½)` system.
///
/// Roles: `failed` is the repaired node, `a < b < c` the others. With
/// `P′₁` the generator columns of (failed, a) and `P′₂` those of (b, c):
/// `y2 = P′₂⁻¹P′₁y1`, `y3 = P′₁⁻¹(γ₃x₃ + γ₄x₄)`, and the broadcasts are
/// `x₂ = y3[4..8]·a`, `x₃ = y2[0..4]·b`, `x₄ = y2[4..8]·c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairPlan {
    pub failed: usize,
    pub helpers: [usize; 3],
    pub y1: Vec<u32>,
    pub y2: Vec<u32>,
    pub y3: Vec<u32>,
    pub gammas: (u32, u32),
    pub attempts: usize,
}

impl RepairPlan {
    /// Weights each helper applies to its own packets: `(x₂, x₃, x₄)`.
    pub fn transmissions(&self) -> [(usize, Vec<u32>); 3] {
        [
            (self.helpers[0], self.y3[4..8].to_vec()),
            (self.helpers[1], self.y2[0..4].to_vec()),
            (self.helpers[2], self.y2[4..8].to_vec()),
        ]
    }

    pub fn packets_sent(&self) -> usize {
        3
    }
}

const PLAN_ATTEMPTS: usize = 1000;

/// Samples a plan for the single faulty node of an Example-2 shaped state.
pub fn build_example2_plan(
    state: &CodedSystemState,
    rng: &mut impl Rng,
) -> Result<RepairPlan, SimError> {
    let p = &state.params;
    let shape_ok = p.n() == 4
        && p.k() == 2
        && p.r() == 1
        && *p.rho() == ExtendedRational::ratio(1, 2)
        && state.placement.packets_per_node() == 4
        && state.code.k_sym() == 8;
    if !shape_ok {
        return Err(SimError::UnsupportedPlan);
    }
    let faulty = state.faulty_nodes();
    let failed = match faulty.as_slice() {
        [f] => *f,
        [] => 0,
        _ => return Err(SimError::UnsupportedPlan),
    };
    let others: Vec<usize> = (0..4).filter(|&i| i != failed).collect();
    let helpers = [others[0], others[1], others[2]];
    let f = state.field();
    let q = f.order();
    let g = state.code.generator();
    let cols = |a: usize, b: usize| -> FieldMatrix {
        let idx = state.placement.columns_of(&[a, b]);
        g.select_columns(&idx)
    };
    let p1 = cols(failed, helpers[0]);
    let p2 = cols(helpers[1], helpers[2]);

    for attempt in 1..=PLAN_ATTEMPTS {
        let mut y1 = vec![0u32; 8];
        for v in y1.iter_mut().take(4) {
            *v = rng.gen_range(0..q) as u32;
        }
        let g3 = rng.gen_range(0..q) as u32;
        let g4 = rng.gen_range(0..q) as u32;
        if g3 == g4 {
            continue;
        }
        let b1 = p1.mul(&FieldMatrix::column_vector(f, &y1)?)?;
        let Ok(y2m) = p2.solve(&b1) else { continue };
        let y2 = y2m.column(0);
        // coefficient vectors of x3 and x4
        let x3 = cols(helpers[1], helpers[1])
            .select_columns(&[0, 1, 2, 3])
            .mul(&FieldMatrix::column_vector(f, &y2[0..4])?)?;
        let x4 = cols(helpers[2], helpers[2])
            .select_columns(&[0, 1, 2, 3])
            .mul(&FieldMatrix::column_vector(f, &y2[4..8])?)?;
        let b2 = x3.scale(g3).add(&x4.scale(g4))?;
        let Ok(y3m) = p1.solve(&b2) else { continue };
        let y3 = y3m.column(0);
        let minors_ok = (0..4)
            .all(|i| (i + 1..4).all(|j| f.sub(f.mul(y1[i], y3[j]), f.mul(y1[j], y3[i])) != 0));
        if !minors_ok {
            continue;
        }
        return Ok(RepairPlan {
            failed,
            helpers,
            y1,
            y2,
            y3,
            gammas: (g3, g4),
            attempts: attempt,
        });
    }
    Err(SimError::PlanSearchExhausted(PLAN_ATTEMPTS))
}

/// Runs the explicit repair: helpers broadcast `x₂, x₃, x₄`, the failed node
/// rebuilds its two lost packets from
/// `Σ y1ᵢpᵢ = x₃ + x₄` and `Σ_{i<4} y3ᵢpᵢ = γ₃x₃ + γ₄x₄ − x₂`.
pub fn execute_broadcast_repair(
    state: &mut CodedSystemState,
    plan: &RepairPlan,
) -> Result<RoundTally, SimError> {
    let f = state.field();
    let node = plan.failed;
    let lost: Vec<usize> = (0..4).filter(|&j| state.nodes[node][j].lost).collect();
    if lost.is_empty() {
        return Ok(RoundTally {
            senders: 0,
            packets: 0,
            fraction_of_file: ExtendedRational::zero(),
        });
    }
    if lost.len() != 2 {
        return Err(SimError::PlanLossShape(node));
    }
    if plan
        .helpers
        .iter()
        .any(|&h| state.nodes[h].iter().any(|p| p.lost))
    {
        return Err(SimError::HelperIncomplete);
    }
    let [(h2, w2), (h3, w3), (h4, w4)] = plan.transmissions();
    let (_, x2) = state.combine(h2, &w2);
    let (_, x3) = state.combine(h3, &w3);
    let (_, x4) = state.combine(h4, &w4);
    let (g3, g4) = plan.gammas;
    let l = state.file.rows();

    // right-hand sides minus the surviving packets' share
    let mut rhs1: Vec<u32> = (0..l).map(|s| f.add(x3[s], x4[s])).collect();
    let mut rhs2: Vec<u32> = (0..l)
        .map(|s| f.sub(f.add(f.mul(g3, x3[s]), f.mul(g4, x4[s])), x2[s]))
        .collect();
    for j in (0..4).filter(|j| !lost.contains(j)) {
        let p = &state.nodes[node][j].payload;
        for s in 0..l {
            rhs1[s] = f.sub(rhs1[s], f.mul(plan.y1[j], p[s]));
            rhs2[s] = f.sub(rhs2[s], f.mul(plan.y3[j], p[s]));
        }
    }
    let (u, v) = (lost[0], lost[1]);
    let a = FieldMatrix::from_rows(
        f,
        &[vec![plan.y1[u], plan.y1[v]], vec![plan.y3[u], plan.y3[v]]],
    )?;
    let b = FieldMatrix::from_rows(f, &[rhs1, rhs2])?;
    let sol = a.solve(&b)?;
    let original: Vec<Vec<u32>> = state
        .placement
        .columns(node)
        .map(|c| state.code.coefficients(c))
        .collect();
    for (row, &j) in [u, v].iter().enumerate() {
        let p = &mut state.nodes[node][j];
        p.payload = sol.row(row).to_vec();
        p.coeffs = original[j].clone();
        p.lost = false;
    }
    let tally = RoundTally {
        senders: 3,
        packets: plan.packets_sent(),
        fraction_of_file: ExtendedRational::ratio(
            plan.packets_sent() as i64,
            state.code.k_sym() as i64,
        ),
    };
    state.tallies.push(tally.clone());
    Ok(tally)
}

/// What one randomized repair round did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlncReport {
    pub seed: u64,
    pub repaired: Vec<usize>,
    pub tally: RoundTally,
    pub verdict: AnyKVerdict,
    /// The operating point lies strictly below the closed-form curve.
    pub below_curve: bool,
}

/// One broadcast round with random coefficients: every complete node sends
/// `beta` random combinations of its packets; every faulty node keeps its
/// survivors and refills each lost slot with a random combination of what
/// it received and what survived.
pub fn rlnc_repair_round(state: &mut CodedSystemState, beta: usize, seed: u64) -> RlncReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = state.field();
    let q = f.order();
    let faulty = state.faulty_nodes();
    let complete: Vec<usize> = (0..state.nodes.len())
        .filter(|i| !faulty.contains(i))
        .collect();

    let mut broadcast: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for &i in &complete {
        let t = state.nodes[i].len();
        for _ in 0..beta {
            let w: Vec<u32> = (0..t).map(|_| rng.gen_range(0..q) as u32).collect();
            broadcast.push(state.combine(i, &w));
        }
    }
    for &i in &faulty {
        let mut pool = broadcast.clone();
        pool.extend(
            state.nodes[i]
                .iter()
                .filter(|p| !p.lost)
                .map(|p| (p.coeffs.clone(), p.payload.clone())),
        );
        let lost: Vec<usize> = (0..state.nodes[i].len())
            .filter(|&j| state.nodes[i][j].lost)
            .collect();
        for j in lost {
            let k = state.code.k_sym();
            let l = state.file.rows();
            let mut coeffs = vec![0; k];
            let mut payload = vec![0; l];
            for (c, p) in &pool {
                let w = rng.gen_range(0..q) as u32;
                for (dst, &v) in coeffs.iter_mut().zip(c) {
                    *dst = f.add(*dst, f.mul(w, v));
                }
                for (dst, &v) in payload.iter_mut().zip(p) {
                    *dst = f.add(*dst, f.mul(w, v));
                }
            }
            state.nodes[i][j] = StoredPacket {
                coeffs,
                payload,
                lost: false,
            };
        }
    }
    let packets = complete.len() * beta;
    let tally = RoundTally {
        senders: complete.len(),
        packets,
        fraction_of_file: ExtendedRational::ratio(packets as i64, state.code.k_sym() as i64),
    };
    state.tallies.push(tally.clone());
    let below_curve = below_curve(state);
    RlncReport {
        seed,
        repaired: faulty,
        tally,
        verdict: verify_any_k(state),
        below_curve,
    }
}

fn below_curve(state: &CodedSystemState) -> bool {
    let p = &state.params;
    let Some(last) = state.tallies.last() else {
        return false;
    };
    if last.senders == 0 {
        return false;
    }
    let m = p.file_size();
    let unit = m / ExtendedRational::from(state.code.k_sym());
    let alpha = ExtendedRational::from(state.placement.packets_per_node()) * &unit;
    let beta = ExtendedRational::from(last.packets / last.senders) * &unit;
    let gamma = p.gamma_for(&beta);
    match tradeoff::alpha_star(p, &gamma) {
        Ok(a) => alpha < a,
        Err(_) => false,
    }
}

/// Aggregate of independent randomized repair trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub layout: UnitLayout,
    pub trials: u64,
    pub successes: u64,
    pub failing_seeds: Vec<u64>,
    pub below_curve: bool,
    pub packets_per_round: usize,
}

/// Runs `trials` independent trials with seeds `base_seed..base_seed+trials`.
/// A trial stores a random file, fails `r` random nodes partially, runs one
/// [`rlnc_repair_round`] and checks any-k.
pub fn rlnc_trials(
    params: &SystemParams,
    alpha: &ExtendedRational,
    beta: &ExtendedRational,
    field: FieldSpec,
    trials: u64,
    base_seed: u64,
) -> Result<TrialSummary, SimError> {
    let layout = UnitLayout::for_point(params, alpha, beta)?;
    let gamma = params.gamma_for(beta);
    let below_curve = tradeoff::alpha_star(params, &gamma).is_ok_and(|a| alpha < &a);
    let outcomes: Vec<(u64, bool)> = (base_seed..base_seed + trials)
        .into_par_iter()
        .map(|seed| -> Result<(u64, bool), SimError> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut state = init_random(params, &layout, field, 2, &mut rng)?;
            let mut nodes: Vec<usize> = (0..params.n()).collect();
            nodes.shuffle(&mut rng);
            nodes.truncate(params.r());
            state.inject_partial_failure(&nodes, layout.lost_per_node(), &mut rng)?;
            let report = rlnc_repair_round(&mut state, layout.beta, seed);
            Ok((seed, report.verdict.ok))
        })
        .collect::<Result<_, _>>()?;
    let failing_seeds: Vec<u64> = outcomes
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(s, _)| *s)
        .collect();
    Ok(TrialSummary {
        layout,
        trials,
        successes: trials - failing_seeds.len() as u64,
        failing_seeds,
        below_curve,
        packets_per_round: (params.n() - params.r()) * layout.beta,
    })
}

/// Plain-text simulation report.
#[derive(Clone, Debug, Default)]
pub struct SimReport {
    pub lines: Vec<String>,
}

impl SimReport {
    pub fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

impl fmt::Display for SimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
