use brtrade::galois::FieldSpec;
use brtrade::mds::make_mds;
use brtrade::rational::q;
use brtrade::tradeoff;
use brtrade::{ExtendedRational as Q, SystemParams};
use proptest::prelude::*;

/// Instances with `r | k`, arbitrary ρ and file size.
fn divisible() -> impl Strategy<Value = SystemParams> {
    (
        3usize..20,
        1usize..6,
        1usize..6,
        0i64..=6,
        1i64..=6,
        1i64..=4,
    )
        .prop_filter_map("r | k and k < n", |(n, r, mult, rho_num, rho_den, m)| {
            let k = r * mult;
            if k >= n || r >= n || rho_num > rho_den {
                return None;
            }
            SystemParams::new(n, k, r, q(rho_num, rho_den), Q::from_int(m)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn threshold_is_non_increasing_and_at_least_m_over_k(params in divisible(), a in 0i64..400, b in 0i64..400) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let scale = Q::from_int(2) * tradeoff::f_zero(&params).unwrap();
        let g_lo = &scale * q(lo, 200);
        let g_hi = &scale * q(hi, 200);
        let a_lo = tradeoff::alpha_star(&params, &g_lo).unwrap();
        let a_hi = tradeoff::alpha_star(&params, &g_hi).unwrap();
        prop_assert!(a_hi <= a_lo);
        prop_assert!(a_hi >= params.file_size() / Q::from(params.k()));
    }

    #[test]
    fn finite_threshold_meets_the_cut_bound_exactly(params in divisible(), t in 0i64..=100) {
        let lo = tradeoff::gamma_mbr(&params).unwrap();
        prop_assume!(lo.is_finite());
        let hi = Q::from_int(2) * tradeoff::f_zero(&params).unwrap();
        let gamma = &lo + (&hi - &lo) * q(t, 100);
        let alpha = tradeoff::alpha_star(&params, &gamma).unwrap();
        let beta = params.beta_for(&gamma);
        let cut = tradeoff::bound_sum(&params, &alpha, &beta).unwrap();
        if alpha == params.file_size() / Q::from(params.k()) {
            prop_assert!(cut >= *params.file_size());
        } else {
            prop_assert_eq!(&cut, params.file_size());
        }
        // slightly less storage breaks the bound
        let less = &alpha * q(999, 1000);
        prop_assert!(tradeoff::bound_sum(&params, &less, &beta).unwrap() < *params.file_size());
    }

    #[test]
    fn gamma_star_inverts_alpha_star(params in divisible(), t in 0i64..=100) {
        let lo = tradeoff::gamma_mbr(&params).unwrap();
        prop_assume!(lo.is_finite());
        let msr = tradeoff::msr_point(&params).unwrap();
        prop_assume!(msr.gamma.is_finite() && msr.gamma > lo);
        let gamma = &lo + (&msr.gamma - &lo) * q(t, 100);
        let alpha = tradeoff::alpha_star(&params, &gamma).unwrap();
        prop_assert_eq!(tradeoff::gamma_star(&params, &alpha).unwrap(), gamma);
    }

    #[test]
    fn partial_loss_needs_no_more_storage(params in divisible(), t in 0i64..=100) {
        let full = SystemParams::new(params.n(), params.k(), params.r(), Q::zero(), params.file_size().clone()).unwrap();
        let gamma = Q::from_int(2) * tradeoff::f_zero(&full).unwrap() * q(t, 100);
        prop_assert!(tradeoff::alpha_star(&params, &gamma).unwrap() <= tradeoff::alpha_star(&full, &gamma).unwrap());
    }

    #[test]
    fn any_k_columns_decode(data in proptest::collection::vec(0u32..257, 0..60), seed in any::<u64>()) {
        let code = make_mds(5, 12, FieldSpec::default_prime()).unwrap();
        let encoded = code.encode_symbols(&data).unwrap();
        let mut cols: Vec<usize> = (0..12).collect();
        // a cheap deterministic shuffle driven by the seed
        let mut s = seed;
        for i in (1..cols.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cols.swap(i, (s >> 33) as usize % (i + 1));
        }
        cols.truncate(5);
        prop_assert_eq!(code.decode_symbols(&cols, &encoded).unwrap(), data);
    }
}

#[test]
fn eleven_node_curve_emits_stable_csv() {
    let params = SystemParams::unit(11, 8, 1, q(0, 1)).unwrap();
    let grid = tradeoff::default_gamma_grid(&params, 50).unwrap();
    let csv = tradeoff::curve_csv(&tradeoff::sample_curve(&params, &grid).unwrap());
    let again = tradeoff::curve_csv(&tradeoff::sample_curve(&params, &grid).unwrap());
    assert_eq!(csv, again);
    assert!(csv.starts_with(tradeoff::CSV_HEADER));
    assert!(csv.lines().nth(1).unwrap().ends_with(",mbr"));
    assert!(csv.lines().last().unwrap().ends_with(",msr"));
}
