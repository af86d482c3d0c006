use proptest::prelude::*;
use wheel_green::*;

fn wheel() -> impl Strategy<Value = WheelParams> {
    (2usize..10, 1usize..7, 0.1f64..10.0, 0.1f64..10.0)
        .prop_map(|(m, d, a, c)| WheelParams::new(m, d, a, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_agrees_with_oracle(p in wheel()) {
        let x = assemble_group_inverse(&p).unwrap();
        let o = dense_group_inverse(&build_laplacian(&p)).unwrap();
        prop_assert!(compare(&x, &o, 1e-9).unwrap().passed);
    }

    #[test]
    fn theorem_entries_agree_with_pipeline(p in wheel()) {
        let x = assemble_group_inverse(&p).unwrap();
        let t = theorem_group_inverse(&p).unwrap();
        prop_assert!(t.max_abs_diff(&x).unwrap() <= 1e-9 * x.max_abs().max(1.0));
    }

    #[test]
    fn block_toeplitz_structure(p in wheel()) {
        let x = assemble_group_inverse(&p).unwrap();
        let (n, d) = (p.n(), p.d());
        prop_assert!(x.asymmetry() <= 1e-12);
        for i in 0..n {
            for j in 0..n {
                let shifted = x[((i + d) % n, (j + d) % n)];
                prop_assert!((shifted - x[(i, j)]).abs() <= 1e-10);
            }
            prop_assert!((x[((i + d) % n, n)] - x[(i, n)]).abs() <= 1e-10);
        }
    }

    #[test]
    fn resistance_is_a_metric(p in wheel()) {
        let r = resistance_table(&assemble_group_inverse(&p).unwrap()).unwrap();
        let order = p.order();
        for i in 0..order {
            for j in 0..order {
                prop_assert!(i == j || r[(i, j)] > 0.0);
                for k in 0..order {
                    prop_assert!(r[(i, k)] <= r[(i, j)] + r[(j, k)] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn closed_resistances_match(p in wheel(), u in 0usize..1000, v in 0usize..1000) {
        let (i, j) = (VertexId(u % p.order()), VertexId(v % p.order()));
        let x = assemble_group_inverse(&p).unwrap();
        let want = effective_resistance(&x, i, j).unwrap();
        let got = resistance_closed(&p, i, j).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.max(1.0));
    }

    #[test]
    fn hub_resistance_bounded_by_shortest_route(p in wheel(), v in 0usize..1000) {
        // Series path to the nearest spoke, then along that spoke.
        let v = v % p.n();
        let h = v % p.d();
        let steps = h.min(p.d() - h) as f64;
        let bound = 1.0 / p.a() + steps / p.c();
        let r = resistance_closed(&p, VertexId(v), p.hub()).unwrap();
        prop_assert!(r <= bound + 1e-12);
    }

    #[test]
    fn stronger_spokes_never_raise_resistance(p in wheel(), u in 0usize..1000, v in 0usize..1000) {
        let q = WheelParams::new(p.m(), p.d(), 2.0 * p.a(), p.c()).unwrap();
        let (i, j) = (VertexId(u % p.order()), VertexId(v % p.order()));
        let before = resistance_closed(&p, i, j).unwrap();
        let after = resistance_closed(&q, i, j).unwrap();
        prop_assert!(after <= before + 1e-12);
    }

    #[test]
    fn kirchhoff_is_half_the_resistance_sum(p in wheel()) {
        let x = assemble_group_inverse(&p).unwrap();
        let k = kirchhoff_green(&x);
        let half = wheel_green::metrics::kirchhoff_from_resistances(&resistance_table(&x).unwrap());
        prop_assert!((k - half).abs() <= 1e-9 * k);
        prop_assert!((kirchhoff_closed(&p).unwrap() - k).abs() <= 1e-9 * k);
    }

    #[test]
    fn complete_wheel_formula_agrees(m in 2usize..30, a in 0.1f64..10.0, c in 0.1f64..10.0) {
        let p = WheelParams::new(m, 1, a, c).unwrap();
        let k = kirchhoff_wheel(&p).unwrap();
        prop_assert!((k - kirchhoff_closed(&p).unwrap()).abs() <= 1e-9 * k);
    }

    #[test]
    fn cycle_green_is_the_cycle_group_inverse(n in 2usize..25, c in 0.1f64..10.0) {
        let g = wheel_green::wheel::cycle_green(n, c).unwrap();
        let o = dense_group_inverse(&wheel_green::wheel::cycle_laplacian(n, c).unwrap()).unwrap();
        prop_assert!(g.max_abs_diff(&o).unwrap() <= 1e-10 * g.max_abs().max(1.0));
    }
}

#[test]
fn rotational_invariance_of_resistances() {
    for p in Sweep::standard().points() {
        let n = p.n();
        for i in 0..n {
            for j in 0..=n {
                let rot = |v: usize| VertexId(if v == n { n } else { (v + p.d()) % n });
                let a = resistance_closed(p, VertexId(i), VertexId(j)).unwrap();
                let b = resistance_closed(p, rot(i), rot(j)).unwrap();
                assert!((a - b).abs() <= 1e-9);
            }
        }
    }
}
