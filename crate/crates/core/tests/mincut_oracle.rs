use brtrade::flowgraph::{FlowGraph, GraphMode};
use brtrade::mincut::{max_flow, worst_case_mincut, Dinic, OracleOptions};
use brtrade::rational::q;
use brtrade::{ExtendedRational as Q, SystemParams};
use proptest::prelude::*;

/// Minimum over every source/sink partition, capacities as exact values.
fn brute_force_cut(g: &FlowGraph) -> Q {
    let s = g.source();
    let t = g.collector().unwrap();
    let v = g.vertex_count();
    let free: Vec<usize> = (0..v).filter(|&i| i != s && i != t).collect();
    let mut best = Q::Infinite;
    for mask in 0u64..(1u64 << free.len()) {
        let mut in_u = vec![false; v];
        in_u[s] = true;
        for (bit, &i) in free.iter().enumerate() {
            in_u[i] = mask >> bit & 1 == 1;
        }
        let mut total = Q::zero();
        for e in g.edges() {
            if in_u[e.from] && !in_u[e.to] {
                total = total + g.capacity(e);
                if total.is_infinite() {
                    break;
                }
            }
        }
        if total < best {
            best = total;
        }
    }
    best
}

fn brute_force_int(n: usize, edges: &[(usize, usize, i64)]) -> i64 {
    let mut best = i64::MAX;
    for mask in 0u64..(1u64 << (n - 2)) {
        // vertex 0 is the source, n−1 the sink
        let side = |i: usize| i == 0 || (i != n - 1 && mask >> (i - 1) & 1 == 1);
        let cut: i64 = edges
            .iter()
            .filter(|(a, b, _)| side(*a) && !side(*b))
            .map(|e| e.2)
            .sum();
        best = best.min(cut);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dinic_matches_exhaustive_cuts(
        n in 2usize..8,
        raw in proptest::collection::vec((0usize..8, 0usize..8, 0i64..20), 0..24),
    ) {
        let edges: Vec<(usize, usize, i64)> = raw
            .into_iter()
            .map(|(a, b, c)| (a % n, b % n, c))
            .filter(|(a, b, _)| a != b)
            .collect();
        let mut net = Dinic::new(n);
        for &(a, b, c) in &edges {
            net.add_edge(a, b, c as i128);
        }
        let flow = net.max_flow(0, n - 1, i128::MAX);
        prop_assert_eq!(flow as i64, brute_force_int(n, &edges));
    }

    #[test]
    fn graph_cut_matches_exhaustive_cuts(
        k in 1usize..4,
        r in 1usize..3,
        rho_half in 0i64..3,
        alpha in 1i64..6,
        beta in 0i64..4,
        rounds in 0usize..3,
        picks in proptest::collection::vec(0usize..4, 8),
    ) {
        let n = 4;
        prop_assume!(r <= k);
        let params = SystemParams::unit(n, k, r, q(rho_half, 2)).unwrap();
        let mut g = FlowGraph::build_initial_with_mode(&params, Q::from_int(alpha), GraphMode::Compact).unwrap();
        for s in 0..rounds {
            let mut failed: Vec<usize> = Vec::new();
            for &p in &picks[s * 2..] {
                if failed.len() == r {
                    break;
                }
                if !failed.contains(&p) {
                    failed.push(p);
                }
            }
            let mut next = 0;
            while failed.len() < r {
                if !failed.contains(&next) {
                    failed.push(next);
                }
                next += 1;
            }
            g.apply_repair_round(&failed, Q::from_int(beta)).unwrap();
        }
        let mut dc: Vec<usize> = Vec::new();
        for &p in picks.iter().rev() {
            if dc.len() < k && !dc.contains(&p) {
                dc.push(p);
            }
        }
        let mut next = 0;
        while dc.len() < k {
            if !dc.contains(&next) {
                dc.push(next);
            }
            next += 1;
        }
        g.attach_collector(&dc).unwrap();
        let report = max_flow(&g).unwrap();
        prop_assert_eq!(&report.value, &brute_force_cut(&g));
        let witness = report
            .cut_edges
            .iter()
            .fold(Q::zero(), |acc, &i| acc + g.capacity(&g.edges()[i]));
        prop_assert_eq!(witness, report.value);
    }
}

#[test]
fn two_round_cut_by_exhaustion() {
    // two rounds of two failures on four nodes, collector on three repaired nodes
    let params = SystemParams::unit(4, 3, 2, q(1, 2)).unwrap();
    let (alpha, beta) = (q(2, 5), q(1, 5));
    let g =
        FlowGraph::canonical_worst_case(&params, alpha.clone(), beta.clone(), GraphMode::Compact)
            .unwrap();
    let a1 = q(1, 5);
    let expected = Q::min_of(q(3, 1) * &a1 + q(2, 1) * &beta, q(2, 1) * &alpha + &a1);
    assert_eq!(brute_force_cut(&g), expected);
    assert_eq!(max_flow(&g).unwrap().value, expected);
}

#[test]
fn worst_case_never_exceeds_reading_untouched_nodes() {
    // with no failures a collector sees exactly kα
    for (n, k, r) in [(4, 2, 1), (5, 3, 2), (6, 3, 2)] {
        let params = SystemParams::unit(n, k, r, q(0, 1)).unwrap();
        let alpha = q(3, 10);
        let report =
            worst_case_mincut(&params, &alpha, &q(1, 5), &OracleOptions::default()).unwrap();
        assert!(report.value <= Q::from(k) * &alpha, "({n},{k},{r})");
    }
}

/// `(instance, α, β)` where the canonical graph is not the worst case.
fn canonical_gaps(in_regime_only: bool) -> Vec<String> {
    let mut gaps = Vec::new();
    for n in 2..=6usize {
        for k in 1..n {
            for r in (1..=k.min(n - 1)).filter(|r| k % r == 0) {
                for rho in [q(0, 1), q(1, 4), q(1, 2), q(3, 4)] {
                    let params = SystemParams::unit(n, k, r, rho.clone()).unwrap();
                    if in_regime_only && params.outside_proof_regime() {
                        continue;
                    }
                    for a in 1..=4 {
                        for b in 0..=4 {
                            let (alpha, beta) = (q(a, 4), q(b, 8));
                            let rep = worst_case_mincut(
                                &params,
                                &alpha,
                                &beta,
                                &OracleOptions::default(),
                            )
                            .unwrap();
                            if rep.value != rep.canonical {
                                gaps.push(format!(
                                    "({n},{k},{r},{rho}) alpha={alpha} beta={beta}: worst={} canonical={}",
                                    rep.value, rep.canonical
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    gaps
}

#[test]
fn canonical_graph_is_worst_when_enough_helpers_remain() {
    let gaps = canonical_gaps(true);
    assert!(gaps.is_empty(), "{}", gaps.join("\n"));
}

#[test]
fn canonical_graph_is_worst_for_every_divisible_instance() {
    let gaps = canonical_gaps(false);
    assert!(gaps.is_empty(), "{} gaps, first: {}", gaps.len(), gaps[0]);
}
