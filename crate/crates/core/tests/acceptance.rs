//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flowdex::analysis::{crossover_p0, h_of_m, phi_interval, verify_g2_bound, PHI_BREAKPOINTS};
use flowdex::cycles::{find_occ, verify_occ};
use flowdex::graph::contract_check_k4;
use flowdex::intflow::{find_int_nzf, six_flow_decomposition, verify_int_flow, verify_product_flow, SearchOptions};
use flowdex::named;
use flowdex::opt::{optimize, OptimizerConfig};
use flowdex::vector::{
    certify_omega, find_occ_flow, halfunit_vectors, pnorm, simplex_vectors, six_flow_omega, table1_vectors,
    thm15_vectors, transfer_bound, transform_2d, verify_certificate, Direction, FlowCertificate, PNorm, Table1Column,
    VectorFlow,
};
use flowdex::MultiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

const CERT_TOL: f64 = 1e-9;

fn fin(p: f64) -> PNorm {
    if p.is_infinite() {
        PNorm::Infinity
    } else {
        PNorm::Finite(p)
    }
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn checked(cert: &FlowCertificate) -> Check {
    let report = verify_certificate(cert, CERT_TOL);
    ensure!(report.is_ok(), "certificate rejected: {report}");
    let res = cert.flow.max_residual(&cert.graph);
    ensure!(res <= 1e-9, "conservation residual {res:e}");
    Ok(())
}

fn table_replication() -> Check {
    const TOL: f64 = 1e-12;
    for p in [1.0, 1.5, 2.0, 3.0, 10.0] {
        let pn = PNorm::Finite(p);
        let d2 = table1_vectors(Table1Column::D2AnyP, pn).map_err(|e| e.to_string())?;
        let (lo, hi) = d2.window(pn);
        ensure!(lo >= 1.0 - TOL && hi <= 2.0 + TOL, "d2-anyp at p={p}: [{lo}, {hi}]");
        let d3 = table1_vectors(Table1Column::D3AnyP, pn).map_err(|e| e.to_string())?;
        let (lo, hi) = d3.window(pn);
        let cap = 2f64.powf(1.0 / p);
        ensure!(
            lo >= 1.0 - TOL && hi <= cap + TOL,
            "d3-anyp at p={p}: [{lo}, {hi}] vs {cap}"
        );
    }
    let inf = table1_vectors(Table1Column::D3Inf, PNorm::Infinity).map_err(|e| e.to_string())?;
    ensure!(inf.omega.len() == 10, "d3-inf has {} vectors", inf.omega.len());
    for v in &inf.omega {
        ensure!(near(pnorm(v, PNorm::Infinity), 1.0, TOL), "d3-inf vector {v:?}");
    }
    let one = table1_vectors(Table1Column::D3One, PNorm::Finite(1.0)).map_err(|e| e.to_string())?;
    let norms: Vec<f64> = one.omega.iter().map(|v| pnorm(v, PNorm::Finite(1.0))).collect();
    let ones = norms.iter().filter(|&&n| near(n, 1.0, TOL)).count();
    let fives = norms.iter().filter(|&&n| near(n, 1.25, TOL)).count();
    ensure!(ones == 4 && fives == 6, "d3-one norms {norms:?}");
    Ok(())
}

fn g2_numerics() -> Check {
    const PRINTED: [f64; 5] = [1.391508229, 1.408323784, 1.403094249, 1.384104551, 1.393230647];
    for (&(a, b), &want) in PHI_BREAKPOINTS.iter().zip(&PRINTED) {
        let got = phi_interval(a, b).map_err(|e| e.to_string())?;
        ensure!(near(got, want, 1e-6), "Phi({a}, {b}) = {got}, expected {want}");
    }
    let report = verify_g2_bound();
    ensure!(report.step == 1e-3, "grid step {}", report.step);
    ensure!(report.is_ok(), "grid failures: {:?}", report.failures);
    ensure!(
        report.g2_max_on_grid <= 2f64.sqrt(),
        "max g2 = {}",
        report.g2_max_on_grid
    );
    ensure!(near(h_of_m(-1.0), 0.0, 1e-12), "h(-1) = {}", h_of_m(-1.0));
    ensure!(h_of_m(-1.25) <= -0.001, "h(-5/4) = {}", h_of_m(-1.25));
    Ok(())
}

fn crossover() -> Check {
    let p0 = crossover_p0().map_err(|e| e.to_string())?;
    ensure!((1.0903..=1.0923).contains(&p0), "p0 = {p0}");
    Ok(())
}

fn optimizer(restarts: usize) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed: 0,
        ..Default::default()
    }
}

fn petersen_suite() -> Check {
    let g = named::petersen();
    ensure!(
        find_int_nzf(&g, 4).map_err(|e| e.to_string())?.is_none(),
        "Petersen has a 4-flow"
    );
    let five = find_int_nzf(&g, 5).map_err(|e| e.to_string())?.ok_or("no 5-flow")?;
    ensure!(verify_int_flow(&g, &five, 5).is_ok(), "5-flow rejected");

    let dec = six_flow_decomposition(&g).map_err(|e| e.to_string())?;
    ensure!(verify_product_flow(&g, &dec.product).is_ok(), "Z2 x Z3 flow rejected");
    let sym = six_flow_omega(&g, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let col = table1_vectors(Table1Column::D3One, PNorm::Finite(1.0)).map_err(|e| e.to_string())?;
    let cert = certify_omega(&g, &sym, &col.assignment, PNorm::Finite(1.0), "acceptance").map_err(|e| e.to_string())?;
    checked(&cert)?;
    ensure!(near(cert.claimed_r, 2.25, 1e-9), "column d3-one r = {}", cert.claimed_r);

    let res3 = optimize(&g, 3, PNorm::Finite(2.0), &optimizer(64)).map_err(|e| e.to_string())?;
    checked(&res3.certificate)?;
    ensure!(res3.best_r <= 2.001, "d=3 best_r = {}", res3.best_r);
    let res2 = optimize(&g, 2, PNorm::Finite(2.0), &optimizer(64)).map_err(|e| e.to_string())?;
    checked(&res2.certificate)?;
    ensure!(res2.best_r <= 2.538, "d=2 best_r = {}", res2.best_r);
    Ok(())
}

fn k4_suite() -> Check {
    let g = named::complete(4);
    ensure!(
        find_int_nzf(&g, 3).map_err(|e| e.to_string())?.is_none(),
        "K4 has a 3-flow"
    );
    let four = find_int_nzf(&g, 4).map_err(|e| e.to_string())?.ok_or("no 4-flow")?;
    ensure!(verify_int_flow(&g, &four, 4).is_ok(), "4-flow rejected");

    let sym = flowdex::vector::omega_flow_from_4nzf(&g, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let low = [1.0, 1.5, 2.0].map(|p| (fin(p), 1.0 + 2f64.powf(1.0 - 1.0 / p)));
    let high = [2.0, 3.0, f64::INFINITY].map(|p| (fin(p), 1.0 + 2f64.powf(1.0 / p)));
    for (p, want) in low.into_iter().chain(high) {
        let v = thm15_vectors(p).to_vec();
        let cert = certify_omega(&g, &sym, &v, p, "acceptance").map_err(|e| e.to_string())?;
        checked(&cert)?;
        ensure!(
            near(cert.claimed_r, want, 1e-9),
            "p={p}: r = {}, expected {want}",
            cert.claimed_r
        );
    }

    let target = 1.0 + 2f64.sqrt();
    let res = optimize(&g, 2, PNorm::Finite(2.0), &optimizer(256)).map_err(|e| e.to_string())?;
    checked(&res.certificate)?;
    ensure!(near(res.best_r, target, 1e-3), "best_r = {}", res.best_r);
    ensure!(res.best_r >= target - 1e-3, "certified below 1+sqrt 2: {}", res.best_r);
    ensure!(contract_check_k4(&g).map_err(|e| e.to_string())?, "K4 contract check");
    Ok(())
}

fn occ_suite() -> Check {
    let k33 = named::complete_bipartite(3, 3);
    let occ = find_occ(&k33, 3, 1)
        .map_err(|e| e.to_string())?
        .ok_or("no (3,2) cover of K3,3")?;
    ensure!(verify_occ(&k33, &occ).is_ok(), "K3,3 cover rejected");
    let sym = find_occ_flow(&k33, 3, 1, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let v = halfunit_vectors(3).map_err(|e| e.to_string())?;
    let cert = certify_omega(&k33, &sym, &v, PNorm::Finite(1.0), "acceptance").map_err(|e| e.to_string())?;
    checked(&cert)?;
    for n in cert.flow.norms(PNorm::Finite(1.0)) {
        ensure!(n == 1.0, "half-unit norm {n}");
    }
    ensure!(cert.claimed_r == 2.0, "half-unit r = {}", cert.claimed_r);

    let k4 = named::complete(4);
    let occ = find_occ(&k4, 4, 1)
        .map_err(|e| e.to_string())?
        .ok_or("no (4,2) cover of K4")?;
    ensure!(verify_occ(&k4, &occ).is_ok(), "K4 cover rejected");
    let sym = find_occ_flow(&k4, 4, 1, &SearchOptions::default()).map_err(|e| e.to_string())?;
    for p in [1.0, 2.0, f64::INFINITY].map(fin) {
        let v = simplex_vectors(4, 1, p).map_err(|e| e.to_string())?;
        let cert = certify_omega(&k4, &sym, &v, p, "acceptance").map_err(|e| e.to_string())?;
        checked(&cert)?;
        for n in cert.flow.norms(p) {
            ensure!(near(n, 1.0, 1e-12), "simplex norm {n} at p={p}");
        }
        ensure!(
            near(cert.claimed_r, 2.0, 1e-12),
            "simplex r = {} at p={p}",
            cert.claimed_r
        );
    }
    Ok(())
}

fn constructed_flows() -> Result<Vec<(MultiGraph, VectorFlow)>, String> {
    let opts = SearchOptions::default();
    let mut out = Vec::new();
    for g in [
        named::petersen(),
        named::complete(4),
        named::cube(),
        named::complete_bipartite(3, 3),
    ] {
        let six = six_flow_omega(&g, &opts).map_err(|e| e.to_string())?;
        for col in Table1Column::ALL {
            let p = col.fixed_p().unwrap_or(PNorm::Finite(2.0));
            let t = table1_vectors(col, p).map_err(|e| e.to_string())?;
            out.push((
                g.clone(),
                six.instantiate(&g, &t.assignment).map_err(|e| e.to_string())?,
            ));
        }
        if let Ok(s) = find_occ_flow(&g, 4, 1, &opts) {
            let v = simplex_vectors(4, 1, PNorm::Finite(2.0)).map_err(|e| e.to_string())?;
            out.push((g.clone(), s.instantiate(&g, &v).map_err(|e| e.to_string())?));
        }
        if let Ok(s) = flowdex::vector::omega_flow_from_4nzf(&g, &opts) {
            let v = thm15_vectors(PNorm::Finite(1.5));
            out.push((g.clone(), s.instantiate(&g, &v).map_err(|e| e.to_string())?));
        }
    }
    Ok(out)
}

fn property_suites() -> Check {
    let flows = constructed_flows()?;
    ensure!(flows.len() >= 20, "only {} constructed flows", flows.len());
    for (g, f) in &flows {
        let res = f.max_residual(g);
        ensure!(res <= 1e-9, "constructed flow residual {res:e}");
    }

    for (n, edges) in common::connected_multigraphs(8) {
        let g = common::graph(n, &edges);
        for k in 2..=4u32 {
            let got = find_int_nzf(&g, k).map_err(|e| e.to_string())?;
            let expect = common::has_zk_flow(n, &edges, k as i64);
            ensure!(got.is_some() == expect, "k={k} on {edges:?}: search {}", got.is_some());
            if let Some(f) = got {
                ensure!(verify_int_flow(&g, &f, k).is_ok(), "k={k} on {edges:?}: bad flow");
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let dipole = named::dipole(2);
    for _ in 0..1000 {
        let v = vec![rng.gen_range(-1e3..1e3), rng.gen_range(-1e3..1e3)];
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        let flow = VectorFlow::new(&dipole, flowdex::Orientation::reference(&dipole), vec![v.clone(), neg])
            .map_err(|e| e.to_string())?;
        let t = transform_2d(&flow, Direction::OneToInf).map_err(|e| e.to_string())?;
        let (a, b) = (pnorm(&v, PNorm::Finite(1.0)), pnorm(&t.values[0], PNorm::Infinity));
        ensure!(near(a, b, 1e-12 * a.max(1.0)), "transform: {a} vs {b}");
    }

    let ps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY].map(fin);
    let index = |p: PNorm| {
        if p.value() <= 2.0 {
            1.0 + 2f64.powf(1.0 - p.reciprocal())
        } else {
            1.0 + 2f64.powf(p.reciprocal())
        }
    };
    for (i, &p1) in ps.iter().enumerate() {
        for &p2 in &ps[i + 1..] {
            let b = transfer_bound(2, p1, p2, index(p2)).map_err(|e| e.to_string())?;
            ensure!(b.contains(index(p1), 1e-12), "transfer {p1} <- {p2}: {b:?}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 7] = [
        ("1 table replication", table_replication, Duration::from_secs(1)),
        ("2 g2 numerics", g2_numerics, Duration::from_secs(5)),
        ("3 crossover", crossover, Duration::from_secs(1)),
        ("4 Petersen suite", petersen_suite, Duration::from_secs(300)),
        ("5 K4 suite", k4_suite, Duration::from_secs(120)),
        ("6 cycle-cover constructions", occ_suite, Duration::from_secs(60)),
        ("7 property suites", property_suites, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed <= limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
