use flowdex::named;
use flowdex::opt::{optimize, parametrize, ratio, OptimizerConfig};
use flowdex::vector::{
    certify, instantiate_omega, pnorm, simplex_vectors, thm15_vectors, transfer_bound, transform_2d,
    verify_certificate, Direction, FlowCertificate, OmegaSet, PNorm, VectorFlow,
};
use proptest::prelude::*;

fn p_strategy() -> impl Strategy<Value = PNorm> {
    prop_oneof![
        (1.0f64..8.0).prop_map(PNorm::Finite),
        Just(PNorm::Finite(1.0)),
        Just(PNorm::Infinity),
    ]
}

fn graph_strategy() -> impl Strategy<Value = flowdex::MultiGraph> {
    prop_oneof![
        Just(named::complete(4)),
        Just(named::petersen()),
        Just(named::complete_bipartite(3, 3)),
        Just(named::cube()),
        Just(named::dipole(4)),
    ]
}

fn close(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transform_2d_exchanges_one_and_infinity_norms(x in -1e3f64..1e3, y in -1e3f64..1e3) {
        let g = named::dipole(2);
        let flow = VectorFlow::new(
            &g,
            flowdex::Orientation::reference(&g),
            vec![vec![x, y], vec![-x, -y]],
        ).unwrap();
        let t = transform_2d(&flow, Direction::OneToInf).unwrap();
        let one = pnorm(&[x, y], PNorm::Finite(1.0));
        prop_assert!((pnorm(&t.values[0], PNorm::Infinity) - one).abs() <= 1e-12 * one.max(1.0));
        prop_assert!(t.max_residual(&g) <= 1e-9);
        let back = transform_2d(&t, Direction::InfToOne).unwrap();
        prop_assert!(close(&back.values, &flow.values, 1e-9));
        let inf = pnorm(&[x, y], PNorm::Infinity);
        let u = transform_2d(&flow, Direction::InfToOne).unwrap();
        prop_assert!((pnorm(&u.values[0], PNorm::Finite(1.0)) - inf).abs() <= 1e-12 * inf.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parametrized_flows_conserve_and_add(
        g in graph_strategy(),
        d in 1usize..4,
        seed in proptest::collection::vec(-5.0f64..5.0, 64),
        shift in proptest::collection::vec(-5.0f64..5.0, 64),
    ) {
        let param = parametrize(&g, d).unwrap();
        let n = param.dimension();
        let x = &seed[..n];
        let y = &shift[..n];
        let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let fx = param.flow(x);
        let fy = param.flow(y);
        let fs = param.flow(&sum);
        prop_assert!(fx.max_residual(&g) <= 1e-9);
        prop_assert!(fs.max_residual(&g) <= 1e-9);
        let added: Vec<Vec<f64>> = fx
            .values
            .iter()
            .zip(&fy.values)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + v).collect())
            .collect();
        prop_assert!(close(&param.edge_values(&sum), &added, 1e-9));
        let again = param.assignment_of(&fx);
        prop_assert!(again.iter().zip(x).all(|(a, b)| (a - b).abs() <= 1e-12));
    }

    #[test]
    fn ratio_is_scale_invariant(
        g in graph_strategy(),
        d in 1usize..4,
        p in p_strategy(),
        seed in proptest::collection::vec(-5.0f64..5.0, 64),
        c in prop_oneof![0.01f64..100.0, -100.0f64..-0.01],
    ) {
        let param = parametrize(&g, d).unwrap();
        let x = &seed[..param.dimension()];
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        let r1 = ratio(&param, x, p, 1e-6);
        let r2 = ratio(&param, &scaled, p, 1e-6);
        prop_assume!(r1.is_finite() && r1 < 1e6);
        prop_assert!((r1 - r2).abs() <= 1e-9 * r1, "{} vs {}", r1, r2);
    }

    #[test]
    fn certificates_round_trip_byte_for_byte(
        g in graph_strategy(),
        d in 1usize..4,
        p in p_strategy(),
        seed in proptest::collection::vec(-5.0f64..5.0, 64),
    ) {
        let param = parametrize(&g, d).unwrap();
        let flow = param.flow(&seed[..param.dimension()]);
        prop_assume!(flow.norms(p).iter().all(|&v| v > 1e-6));
        let cert = certify(&g, &flow, p, "random\nmulti-line provenance").unwrap();
        prop_assert!(verify_certificate(&cert, 1e-9).is_ok());
        let text = cert.to_text();
        let back = FlowCertificate::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back.claimed_r.to_bits(), cert.claimed_r.to_bits());
    }

    #[test]
    fn simplex_cover_rows_have_unit_norm(k in 2usize..8, l_seed in 0usize..4, p in p_strategy()) {
        let l = 1 + l_seed % (k / 2);
        let v = simplex_vectors(k, l, p).unwrap();
        for row in &v {
            prop_assert!(row.iter().sum::<f64>().abs() <= 1e-12);
        }
        let rows = instantiate_omega(&OmegaSet::occ(k, l), &v).unwrap();
        for row in rows {
            prop_assert!((pnorm(&row, p) - 1.0).abs() <= 1e-12);
        }
    }
}

fn k4_index(p: PNorm) -> f64 {
    let [a, b] = thm15_vectors(p);
    let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let diff: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let norms = [pnorm(&a, p), pnorm(&b, p), pnorm(&sum, p), pnorm(&diff, p)];
    let lo = norms.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = norms.iter().cloned().fold(0.0, f64::max);
    1.0 + hi / lo
}

#[test]
fn k4_family_respects_transfer_intervals() {
    let ps = [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, f64::INFINITY].map(|p| {
        if p.is_infinite() {
            PNorm::Infinity
        } else {
            PNorm::Finite(p)
        }
    });
    for (i, &p1) in ps.iter().enumerate() {
        for &p2 in &ps[i + 1..] {
            let (r1, r2) = (k4_index(p1), k4_index(p2));
            let fwd = transfer_bound(2, p1, p2, r2).unwrap();
            assert!(fwd.contains(r1, 1e-12), "{p1} {p2}: {r1} not in {fwd:?}");
            let rev = flowdex::vector::transfer_bound_reverse(2, p1, p2, r1).unwrap();
            assert!(rev.contains(r2, 1e-12), "{p1} {p2}: {r2} not in {rev:?}");
        }
    }
}

#[test]
fn lifted_warm_start_never_loses() {
    let g = named::petersen();
    let cfg = OptimizerConfig {
        restarts: 2,
        max_evaluations: 200_000,
        ..Default::default()
    };
    let planar = optimize(&g, 2, PNorm::Finite(2.0), &cfg).unwrap();
    let lifted = OptimizerConfig {
        restarts: 1,
        construction_warm_start: false,
        warm_start: Some(planar.cotree_vectors()),
        ..cfg.clone()
    };
    let spatial = optimize(&g, 3, PNorm::Finite(2.0), &lifted).unwrap();
    assert!(
        spatial.best_r <= planar.best_r + 1e-9,
        "{} > {}",
        spatial.best_r,
        planar.best_r
    );
    assert!(verify_certificate(&spatial.certificate, 1e-9).is_ok());
}
