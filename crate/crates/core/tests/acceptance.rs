//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use brtrade::galois::{FieldMatrix, FieldSpec};
use brtrade::mds::{make_mds, Placement};
use brtrade::mincut::{oracle_alpha_star, OracleOptions};
use brtrade::rational::q;
use brtrade::repair_sim::{
    build_example2_plan, execute_broadcast_repair, init_system, rlnc_trials, verify_any_k,
};
use brtrade::sweep::{run_sweep, summarize, SweepConfig, Verdict};
use brtrade::tradeoff;
use brtrade::{ExtendedRational as Q, SystemParams};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn within(outcome: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if outcome.ok && elapsed > limit {
        return fail(format!(
            "{} but took {:.1?} (limit {:?})",
            outcome.detail, elapsed, limit
        ));
    }
    outcome
}

fn p(n: usize, k: usize, r: usize, rho: Q) -> SystemParams {
    SystemParams::unit(n, k, r, rho).unwrap()
}

fn criterion_1() -> Outcome {
    let params = p(4, 3, 2, q(1, 2));
    let a = tradeoff::alpha_star(&params, &q(2, 5)).unwrap();
    if a != q(2, 5) {
        return fail(format!("alpha*(2/5) = {a}, expected 2/5"));
    }
    let chain = tradeoff::branches(&params).unwrap();
    let m_over_k = chain
        .iter()
        .find(|b| b.alpha(params.file_size(), &Q::zero()) == q(1, 3) && b.g.is_zero());
    match m_over_k {
        Some(b) if b.threshold.is_infinite() => {}
        _ => return fail("no M/3 branch with an infinite threshold"),
    }
    let far = tradeoff::alpha_star_nondiv(&params, &Q::from_int(1_000_000)).unwrap();
    if far != q(2, 5) {
        return fail(format!(
            "alpha* at huge bandwidth is {far}, M/3 must stay out of reach"
        ));
    }
    pass("alpha*=2/5; M/3 needs infinite bandwidth")
}

fn criterion_2() -> Outcome {
    let params = p(4, 2, 1, q(1, 2));
    let msr = tradeoff::msr_point(&params).unwrap();
    if (msr.alpha.clone(), msr.gamma.clone()) != (q(1, 2), q(3, 8)) {
        return fail(format!("msr = ({}, {})", msr.alpha, msr.gamma));
    }
    let field = FieldSpec::default_prime();
    let mut recovered = 0;
    for file_seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(file_seed);
        let file = FieldMatrix::random(field, 5, 8, &mut rng);
        let base = init_system(&params, make_mds(8, 16, field).unwrap(), file).unwrap();
        let mut probe = base.clone();
        probe.inject_losses(0, &[0, 1]).unwrap();
        let plan = build_example2_plan(&probe, &mut rng).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                let mut s = base.clone();
                s.inject_losses(0, &[i, j]).unwrap();
                let tally = execute_broadcast_repair(&mut s, &plan).unwrap();
                if tally.packets != 3 || tally.fraction_of_file != q(3, 8) {
                    return fail(format!(
                        "file {file_seed} pair {i},{j}: sent {} packets",
                        tally.packets
                    ));
                }
                if s.node(0) != base.node(0) || !verify_any_k(&s).ok {
                    return fail(format!("file {file_seed} pair {i},{j}: not recovered"));
                }
                recovered += 1;
            }
        }
    }
    pass(format!(
        "msr=(1/2, 3/8); {recovered}/120 lost pairs recovered with 3 packets of M/8"
    ))
}

fn criterion_3() -> Outcome {
    let a = tradeoff::alpha_star(&p(4, 2, 2, q(1, 2)), &q(1, 2)).unwrap();
    if a == q(1, 2) {
        pass("alpha*=1/2")
    } else {
        fail(format!("alpha*={a}"))
    }
}

fn criterion_4() -> Outcome {
    let config = SweepConfig::default();
    let results = run_sweep(&config);
    let summary = summarize(&results);
    for r in &results {
        if !matches!(r.verdict, Verdict::Pass) {
            println!("    {r}");
        }
    }
    let detail = format!(
        "{} instances: pass={} fail={} skipped={}",
        results.len(),
        summary.pass,
        summary.fail,
        summary.skipped
    );
    if summary.fail == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

/// `f(i)` typed out from its definition.
fn f_of(n: usize, k: usize, r: usize, rho: &Q, i: usize) -> Q {
    let omr = Q::one() - rho;
    let num = Q::from(2 * (n - r)) * &omr;
    let den = (Q::from(2 * k) - Q::from(r * (i + 1)) * &omr) * Q::from(i)
        + Q::ratio((2 * k * (n - k)) as i64, r as i64);
    num / den
}

fn criterion_5() -> Outcome {
    let (k, helpers) = (8usize, 10usize);
    let curves = [(1usize, q(0, 1)), (2, q(0, 1)), (2, q(1, 2)), (1, q(1, 2))];
    for (r, rho) in &curves {
        let params = p(helpers + r, k, *r, rho.clone());
        // (a) breakpoints at f(i), linear in between, slope changes at each
        let t = tradeoff::thresholds(&params).unwrap();
        let expected: Vec<Q> = {
            let mut v: Vec<Q> = (0..k / r)
                .map(|i| f_of(helpers + r, k, *r, rho, i))
                .collect();
            v.sort();
            v
        };
        if t != expected {
            return fail(format!("r={r} rho={rho}: thresholds differ from f(i)"));
        }
        let a = |g: &Q| tradeoff::alpha_star(&params, g).unwrap();
        let mut slopes = Vec::new();
        for w in t.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let pts: Vec<Q> = (0..=4).map(|j| lo + (hi - lo) * Q::ratio(j, 4)).collect();
            let vals: Vec<Q> = pts.iter().map(a).collect();
            let slope = (&vals[1] - &vals[0]) / (&pts[1] - &pts[0]);
            for j in 1..4 {
                if (&vals[j + 1] - &vals[j]) / (&pts[j + 1] - &pts[j]) != slope {
                    return fail(format!("r={r} rho={rho}: not linear on [{lo}, {hi}]"));
                }
            }
            if !slope.is_negative() {
                return fail(format!("r={r} rho={rho}: not decreasing on [{lo}, {hi}]"));
            }
            slopes.push(slope);
        }
        if slopes.windows(2).any(|w| w[0] == w[1]) {
            return fail(format!(
                "r={r} rho={rho}: a breakpoint without a slope change"
            ));
        }
        let last = t.last().unwrap();
        if a(last) != a(&(last * Q::from_int(3))) {
            return fail(format!(
                "r={r} rho={rho}: not flat past the last breakpoint"
            ));
        }
        // (d) saturation at the bandwidth corner
        let mbr = tradeoff::mbr_point(&params).unwrap();
        for factor in [q(1, 1), q(3, 2), q(2, 1), q(50, 1)] {
            let g = tradeoff::gamma_star(&params, &(&mbr.alpha * &factor)).unwrap();
            if g != mbr.gamma {
                return fail(format!("r={r} rho={rho}: gamma*({factor}·alpha_MBR) = {g}"));
            }
        }
    }
    // (b) per failed node at the storage corner
    let msr1 = tradeoff::msr_point(&p(11, 8, 1, q(0, 1))).unwrap();
    let msr2 = tradeoff::msr_point(&p(12, 8, 2, q(0, 1))).unwrap();
    if &msr2.gamma / Q::from_int(2) > msr1.gamma {
        return fail("r=2 costs more per failed node than r=1 at the storage corner");
    }
    // (c) partial loss never needs more storage
    let full = p(12, 8, 2, q(0, 1));
    let half = p(12, 8, 2, q(1, 2));
    let lo = Q::min_of(
        tradeoff::gamma_mbr(&full).unwrap(),
        tradeoff::gamma_mbr(&half).unwrap(),
    );
    let hi = Q::from_int(2)
        * Q::max_of(
            tradeoff::f_zero(&full).unwrap(),
            tradeoff::f_zero(&half).unwrap(),
        );
    for j in 0..50 {
        let g = &lo + (&hi - &lo) * Q::ratio(j, 49);
        let a0 = tradeoff::alpha_star(&full, &g).unwrap();
        let a1 = tradeoff::alpha_star(&half, &g).unwrap();
        if a1 > a0 {
            return fail(format!("rho=1/2 above rho=0 at gamma={g}"));
        }
    }
    pass(format!(
        "4 curves piecewise linear; per-node msr bandwidth {} <= {}; rho=1/2 below rho=0 on 50 points; saturation holds",
        &msr2.gamma / Q::from_int(2),
        msr1.gamma
    ))
}

fn criterion_6() -> Outcome {
    let opts = OracleOptions {
        max_rounds: None,
        budget: 5_000_000,
    };
    let mut checked = 0;
    let mut bad = Vec::new();
    for params in [
        p(5, 3, 1, q(0, 1)),
        p(11, 8, 1, q(0, 1)),
        p(6, 3, 2, q(0, 1)),
    ] {
        let t = tradeoff::thresholds(&params).unwrap();
        let mut grid = t.clone();
        for w in t.windows(2) {
            grid.push((&w[0] + &w[1]) / Q::from_int(2));
        }
        for g in grid {
            let closed = tradeoff::alpha_star(&params, &g).unwrap();
            let oracle = oracle_alpha_star(&params, &g, &opts).unwrap().alpha_star;
            checked += 1;
            if closed != oracle {
                bad.push(format!(
                    "({},{},{}) gamma={g}: closed={closed} oracle={oracle}",
                    params.n(),
                    params.k(),
                    params.r()
                ));
            }
        }
    }
    if bad.is_empty() {
        pass(format!("{checked} points agree"))
    } else {
        fail(format!(
            "{}/{checked} points differ; first {}",
            bad.len(),
            bad[0]
        ))
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(3..=30usize);
        let r = rng.gen_range(1..n);
        let k_max = (n - 1) / r;
        if k_max == 0 {
            continue;
        }
        let k = r * rng.gen_range(1..=k_max);
        let den = rng.gen_range(1..=8i64);
        let rho = Q::ratio(rng.gen_range(0..=den), den);
        let m = Q::ratio(rng.gen_range(1..=20), rng.gen_range(1..=5));
        let params = SystemParams::new(n, k, r, rho.clone(), m.clone()).unwrap();
        let omr = Q::one() - &rho;
        // corner bandwidth written out directly
        let gamma_mbr = Q::from_int(2) * &m * Q::from(r * (n - r)) * &omr
            / (Q::from(k) * (Q::from(2 * n) - Q::from(k) * &omr - Q::from(r) * (Q::one() + &rho)));
        let last = tradeoff::f_div(&params, k / r - 1);
        if last != gamma_mbr {
            return fail(format!(
                "({n},{k},{r},{rho}): f(k/r-1)={last} but gamma_MBR={gamma_mbr}"
            ));
        }
        let at_f0 = tradeoff::alpha_star(&params, &tradeoff::f_div(&params, 0)).unwrap();
        if at_f0 != &m / Q::from(k) {
            return fail(format!("({n},{k},{r},{rho}): alpha*(f(0))={at_f0}"));
        }
        done += 1;
    }
    pass("50 random instances satisfy both identities")
}

/// Rank over GF(2) of vectors packed into bits.
fn rank_gf2(vectors: &[u8]) -> u32 {
    let mut basis = [0u8; 8];
    let mut rank = 0;
    for &v in vectors {
        let mut x = v;
        for bit in (0..8).rev() {
            if x >> bit & 1 == 0 {
                continue;
            }
            if basis[bit] == 0 {
                basis[bit] = x;
                rank += 1;
                break;
            }
            x ^= basis[bit];
        }
    }
    rank
}

/// Counts single-round repairs of node 0 in a `(3, 2, 1, ρ=0)` system over
/// GF(2) that leave every pair of nodes able to decode. File of `m` packets,
/// `alpha = 2` packets per node, each helper sends one packet.
fn gf2_valid_repairs(m: u32) -> u64 {
    let size = 1u8 << m;
    let combos = |a: u8, b: u8| [0, a, b, a ^ b];
    let mut valid = 0;
    for h1a in 0..size {
        for h1b in 0..size {
            for h2a in 0..size {
                for h2b in 0..size {
                    if rank_gf2(&[h1a, h1b, h2a, h2b]) < m {
                        continue;
                    }
                    for x1 in combos(h1a, h1b) {
                        for x2 in combos(h2a, h2b) {
                            let received = combos(x1, x2);
                            for &n1 in &received {
                                for &n2 in &received {
                                    if rank_gf2(&[n1, n2, h1a, h1b]) == m
                                        && rank_gf2(&[n1, n2, h2a, h2b]) == m
                                    {
                                        valid += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    valid
}

fn criterion_8() -> Outcome {
    let field = FieldSpec::default_prime();
    let mut lines = Vec::new();
    let mut ok = true;
    let points = [
        (p(4, 2, 2, q(1, 2)), "msr/mbr"),
        (p(6, 4, 2, q(0, 1)), "msr"),
        (p(6, 4, 2, q(0, 1)), "mbr"),
    ];
    for (params, corner) in &points {
        let point = if *corner == "mbr" {
            tradeoff::mbr_point(params).unwrap()
        } else {
            tradeoff::msr_point(params).unwrap()
        };
        let beta = params.beta_for(&point.gamma);
        let s = rlnc_trials(params, &point.alpha, &beta, field, 100, 0).unwrap();
        ok &= s.successes >= 99;
        lines.push(format!(
            "({},{},{},{}) {corner} {}/100",
            params.n(),
            params.k(),
            params.r(),
            params.rho(),
            s.successes
        ));
    }
    // below the curve: M = 4 packets, alpha = M/2, gamma = M/2 < gamma_MBR
    let tiny = SystemParams::unit(3, 2, 1, q(0, 1)).unwrap();
    let below = tradeoff::alpha_star(&tiny, &q(1, 2)).unwrap() > q(1, 2);
    let below_count = gf2_valid_repairs(4);
    // on the curve: M = 3 packets, alpha = gamma = 2M/3
    let on = tradeoff::alpha_star(&tiny, &q(2, 3)).unwrap() == q(2, 3);
    let on_count = gf2_valid_repairs(3);
    let exhaustive_ok = below && below_count == 0 && on && on_count > 0;
    ok &= exhaustive_ok;
    lines.push(format!(
        "GF(2) below curve: {below_count} valid, on curve: {on_count} valid"
    ));
    Outcome {
        ok,
        detail: lines.join("; "),
    }
}

/// Determinant mod a prime by elimination, independent of the library.
fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = pow(a[c][c], p - 2);
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = row[c] * inv % p;
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + p - f * y % p) % p;
            }
        }
    }
    det
}

fn criterion_9() -> Outcome {
    let field = FieldSpec::default_prime();
    let code = make_mds(8, 16, field).unwrap();
    let g = code.generator();
    let sub = |cols: &[usize]| -> Vec<Vec<u64>> {
        (0..8)
            .map(|i| cols.iter().map(|&c| g.get(i, c) as u64).collect())
            .collect()
    };
    let placement = Placement::new(4, 4);
    for a in 0..4 {
        for b in a + 1..4 {
            if det_mod(sub(&placement.columns_of(&[a, b])), 257) == 0 {
                return fail(format!("nodes {a},{b} singular"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..1000 {
        let mut cols = sample(&mut rng, 16, 8).into_vec();
        cols.sort_unstable();
        if det_mod(sub(&cols), 257) == 0 {
            return fail(format!("random subset {trial} {cols:?} singular"));
        }
    }
    pass("6 node pairs and 1000 random 8-column subsets nonsingular")
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        ("threshold (4,3,2,1/2)", criterion_1, 1),
        ("corner and explicit repair (4,2,1,1/2)", criterion_2, 5),
        ("threshold (4,2,2,1/2)", criterion_3, 1),
        ("oracle sweep n<=6", criterion_4, 600),
        ("trade-off curve shape", criterion_5, 5),
        ("single-failure reduction", criterion_6, 600),
        ("corner identities", criterion_7, 60),
        ("randomized repair", criterion_8, 600),
        ("codec", criterion_9, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = within(outcome, elapsed, Duration::from_secs(*limit));
        let label = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failed += 1;
        }
        println!(
            "{label} criterion {}: {name} ({:.2}s) {}",
            i + 1,
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
