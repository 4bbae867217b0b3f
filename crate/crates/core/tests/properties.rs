use num_rational::Ratio;
use proptest::prelude::*;
use trustgame::fixtures::{g3_in, gf_in};
use trustgame::values::value_from_decomposition;
use trustgame::*;

/// Graphs on 2..=7 players. Weights come from a coarse set so equal
/// in-weights (ties) are common.
fn graphs() -> impl Strategy<Value = Digraph> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec((any::<bool>(), 0u8..=4, 0.0..=1.0f64), n * (n - 1)).prop_map(
            move |cells| {
                let mut edges = Vec::new();
                let mut k = 0;
                for from in 0..n {
                    for to in 0..n {
                        if from == to {
                            continue;
                        }
                        let (present, bucket, w) = cells[k];
                        k += 1;
                        if present {
                            let weight = match bucket {
                                0 => 0.0,
                                1 => 0.5,
                                2 => 0.25,
                                _ => w,
                            };
                            edges.push((from, to, weight));
                        }
                    }
                }
                Digraph::from_edges(n, edges).unwrap()
            },
        )
    })
}

fn assert_close(a: &[f64], b: &[f64]) {
    for (x, y) in a.iter().zip(b) {
        assert!(x.approx_eq(*y, 1e-9), "{a:?} vs {b:?}");
    }
}

/// Same graph with ids reversed, which reverses every tie-break.
fn reversed(g: &Digraph) -> Digraph {
    let n = g.n();
    Digraph::from_edges(
        n,
        g.edges()
            .iter()
            .map(|e| (n - 1 - e.from, n - 1 - e.to, e.weight)),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_match_bruteforce(g in graphs()) {
        assert_close(&shapley_closed_form(&g).payoffs, &shapley_bruteforce(&g, 12).unwrap().payoffs);
        assert_close(&banzhaf_closed_form(&g).payoffs, &banzhaf_bruteforce(&g, 12).unwrap().payoffs);
    }

    #[test]
    fn closed_forms_match_decomposition_credit(g in graphs()) {
        let d = full_decomposition(&g);
        assert_close(&shapley_closed_form(&g).payoffs, &value_from_decomposition(&d, g.n(), ValueKind::Shapley));
        assert_close(&banzhaf_closed_form(&g).payoffs, &value_from_decomposition(&d, g.n(), ValueKind::Banzhaf));
    }

    #[test]
    fn shapley_is_efficient(g in graphs()) {
        let phi = shapley_closed_form(&g);
        prop_assert!(phi.efficient);
        prop_assert!(phi.total().approx_eq(value(&g, &Coalition::grand(g.n())).unwrap(), 1e-9));
    }

    #[test]
    fn dividends_match_inversion(g in graphs()) {
        let d = full_decomposition(&g);
        let oracle = mobius_oracle(&g, 16).unwrap();
        for (s, div) in oracle.iter() {
            prop_assert!(div.approx_eq(d.dividend(&s), 1e-9), "{s}");
            prop_assert!(evaluate_decomposition(&d, &s).approx_eq(value(&g, &s).unwrap(), 1e-9));
        }
    }

    #[test]
    fn chains_are_nested_with_one_negative_term(g in graphs()) {
        for i in 0..g.n() {
            let terms = external_chain_terms(&g, i).unwrap();
            let m = g.in_degree(i);
            prop_assert_eq!(terms.len(), if m == 0 { 0 } else { m + 1 });
            for pair in terms.windows(2) {
                prop_assert!(pair[0].support.is_subset(&pair[1].support));
                prop_assert_eq!(pair[0].support.len() + 1, pair[1].support.len());
            }
            if let Some((last, middle)) = terms.split_last() {
                prop_assert!(middle.iter().all(|t| t.coefficient >= 0.0));
                prop_assert_eq!(last.coefficient, -in_neighbor_profile(&g, i).unwrap().top());
            }
            let supports = chain_supports(&in_neighbor_profile(&g, i).unwrap());
            prop_assert_eq!(supports.len(), m + 1);
            prop_assert!(supports.iter().all(|s| s.contains(i)));
        }
    }

    #[test]
    fn tie_break_does_not_change_values(g in graphs()) {
        let r = reversed(&g);
        let n = g.n();
        let back = |payoffs: Vec<f64>| -> Vec<f64> { (0..n).map(|p| payoffs[n - 1 - p]).collect() };
        assert_close(&shapley_closed_form(&g).payoffs, &back(shapley_closed_form(&r).payoffs));
        assert_close(&banzhaf_closed_form(&g).payoffs, &back(banzhaf_closed_form(&r).payoffs));
    }

    #[test]
    fn values_are_nonnegative(g in graphs()) {
        prop_assert!(shapley_closed_form(&g).payoffs.iter().all(|&x| x >= -1e-12));
        prop_assert!(banzhaf_closed_form(&g).payoffs.iter().all(|&x| x >= -1e-12));
        for mask in 0..1u64 << g.n() {
            prop_assert!(value(&g, &Coalition::from_mask(mask)).unwrap() >= 0.0);
        }
    }

    #[test]
    fn scaling_weights_scales_everything(g in graphs(), c in 0.01..=1.0f64) {
        let s = g.scaled(c).unwrap();
        for mask in 0..1u64 << g.n() {
            let coalition = Coalition::from_mask(mask);
            prop_assert!((value(&s, &coalition).unwrap()).approx_eq(c * value(&g, &coalition).unwrap(), 1e-9));
        }
        let phi = shapley_closed_form(&g);
        let phi_s = shapley_closed_form(&s);
        assert_close(&phi_s.payoffs, &phi.payoffs.iter().map(|x| c * x).collect::<Vec<_>>());
        let beta = banzhaf_closed_form(&g);
        let beta_s = banzhaf_closed_form(&s);
        assert_close(&beta_s.payoffs, &beta.payoffs.iter().map(|x| c * x).collect::<Vec<_>>());
        prop_assert_eq!(phi.argmax(1e-9), phi_s.argmax(1e-9));
    }

    #[test]
    fn zero_shapley_predicate_is_exact(g in graphs()) {
        let phi = shapley_bruteforce(&g, 12).unwrap();
        for i in 0..g.n() {
            prop_assert_eq!(is_zero_shapley_player(&g, i).unwrap(), phi.payoffs[i].abs() <= 1e-9, "player {}", i);
        }
    }

    #[test]
    fn profiles_ignore_edge_input_order(g in graphs(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut edges: Vec<_> = g.edges().iter().map(|e| (e.from, e.to, e.weight)).collect();
        edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = Digraph::from_edges(g.n(), edges).unwrap();
        for i in 0..g.n() {
            prop_assert_eq!(in_neighbor_profile(&g, i).unwrap(), in_neighbor_profile(&shuffled, i).unwrap());
        }
    }

    #[test]
    fn tail_sums_vanish_at_the_end_and_decrease(g in graphs()) {
        for i in 0..g.n() {
            let s = tail_suffix_sums(&in_neighbor_profile(&g, i).unwrap(), ValueKind::Shapley);
            prop_assert_eq!(*s.last().unwrap(), 0.0);
            prop_assert!(s.windows(2).all(|w| w[0] >= w[1] - 1e-15));
        }
    }

    #[test]
    fn core_point_is_in_core_and_unique(g in graphs(), raw in prop::collection::vec(-1.0..1.0f64, 7)) {
        let x = core_allocation(&g);
        let report = is_in_core(&g, &x, 1e-9, 16).unwrap();
        prop_assert!(report.is_member() && report.is_unique_checked);
        let (l, r) = verify_core_identity(&g).unwrap();
        prop_assert!(l.approx_eq(r, 1e-9));
        prop_assert_eq!(subgame_allocation(&g, &Coalition::grand(g.n())).unwrap().payoffs, x.payoffs.clone());
        for (c, p) in core_upper_bounds(&g).iter().zip(&x.payoffs) {
            prop_assert!(c.approx_eq(*p, 1e-9));
        }

        // efficient perturbation with largest component at least 1e-3
        let n = g.n();
        let mean = raw[..n].iter().sum::<f64>() / n as f64;
        let mut delta: Vec<f64> = raw[..n].iter().map(|d| d - mean).collect();
        let peak = delta.iter().fold(0.0f64, |a, d| a.max(d.abs()));
        prop_assume!(peak > 1e-6);
        delta.iter_mut().for_each(|d| *d *= 1e-2 / peak);
        let moved = Allocation::over_graph(
            &g,
            x.payoffs.iter().zip(&delta).map(|(a, d)| a + d).collect(),
            AllocationKind::Core,
        );
        let report = is_in_core(&g, &moved, 1e-9, 16).unwrap();
        prop_assert!(report.efficient);
        prop_assert!(!report.violations.is_empty());
    }

    #[test]
    fn game_is_superadditive_monotone_and_totally_balanced(g in graphs()) {
        prop_assert!(check_superadditive(&g, 12).unwrap().passed());
        prop_assert!(check_monotone(&g, 12).unwrap().passed());
        prop_assert!(verify_total_balancedness(&g, 10).unwrap().passed());
    }

    #[test]
    fn marginal_effects_match_finite_differences(g in graphs()) {
        for e in g.edges() {
            for method in [ValueKind::Shapley, ValueKind::Banzhaf] {
                for target in 0..g.n() {
                    let r = marginal_effect(&g, (e.from, e.to), target, method).unwrap();
                    let (lo, hi) = r.valid_epsilon_window;
                    let eps = if hi > 1e-6 { hi / 2.0 } else if lo < -1e-6 { lo / 2.0 } else { continue };
                    let moved = g.reweighted(e.from, e.to, e.weight + eps).unwrap();
                    let value_of = |g: &Digraph| match method {
                        ValueKind::Shapley => shapley_closed_form(g).payoffs[target],
                        ValueKind::Banzhaf => banzhaf_closed_form(g).payoffs[target],
                    };
                    let slope = (value_of(&moved) - value_of(&g)) / eps;
                    prop_assert!((slope - r.total_coeff).abs() <= 1e-9 * (1.0 / eps.abs()).max(1.0), "{:?} slope {}", r, slope);
                }
            }
        }
    }
}

type Q = Ratio<i64>;

fn q(num: i64, den: i64) -> Q {
    Ratio::new(num, den)
}

#[test]
fn exact_rationals_agree_exactly() {
    let g3: WeightedDigraph<Q> = g3_in();
    let phi = shapley_closed_form(&g3);
    assert_eq!(phi.payoffs, vec![q(8, 15), q(1, 12), q(1, 12)]);
    assert_eq!(phi.payoffs, shapley_bruteforce(&g3, 12).unwrap().payoffs);
    let beta = banzhaf_closed_form(&g3);
    assert_eq!(beta.payoffs, vec![q(23, 40), q(1, 8), q(1, 8)]);
    assert_eq!(beta.payoffs, banzhaf_bruteforce(&g3, 12).unwrap().payoffs);

    for a in [
        q(0, 1),
        q(1, 10),
        q(1, 5),
        q(7, 20),
        q(1, 2),
        q(4, 5),
        q(1, 1),
    ] {
        let g: WeightedDigraph<Q> = gf_in(a);
        assert_eq!(
            shapley_closed_form(&g).payoffs,
            shapley_bruteforce(&g, 12).unwrap().payoffs
        );
        assert_eq!(
            banzhaf_closed_form(&g).payoffs,
            banzhaf_bruteforce(&g, 12).unwrap().payoffs
        );
        let d = full_decomposition(&g);
        let oracle = mobius_oracle(&g, 16).unwrap();
        for (s, div) in oracle.iter() {
            assert_eq!(div, d.dividend(&s));
        }
        let (l, r) = verify_core_identity(&g).unwrap();
        assert_eq!(l, r);
    }
}

#[test]
fn f32_is_supported() {
    let g: WeightedDigraph<f32> = g3_in();
    let phi = shapley_closed_form(&g);
    assert!((phi.payoffs[0] - 8.0 / 15.0).abs() < 1e-6);
}
