//! Scalar analysis of the bound functions `g1`, `g2`, `g3`, `a(p)` and the
//! interval argument bounding `g2` by `sqrt 2` on `[1, 2]`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vector::PNorm;

/// `(2^p - 1)^(1/p)`, with limit 2 at infinity.
pub fn a_of_p(p: PNorm) -> f64 {
    match p {
        PNorm::Finite(q) => (2f64.powf(q) - 1.0).powf(1.0 / q),
        PNorm::Infinity => 2.0,
    }
}

/// `(5/4) 2^(1 - 1/p)`.
pub fn g1(p: PNorm) -> f64 {
    1.25 * 2f64.powf(1.0 - p.reciprocal())
}

/// `[(2^(-1/p) + 3^(-1/p))^p + (2^(-1/p) - 3^(-1/p))^p + 1/3]^(1/p)`.
///
/// At infinity `x(p) -> 2` and `y(p) -> 0`, so the limit is 2.
pub fn g2(p: PNorm) -> f64 {
    match p {
        PNorm::Finite(q) => {
            let (x, y) = (x_of_p(q), y_of_p(q));
            // factor out x^p to stay finite for large p
            x * (1.0 + (y / x).powf(q) + x.powf(-q) / 3.0).powf(1.0 / q)
        }
        PNorm::Infinity => 2.0,
    }
}

/// `2^(1/p)`.
pub fn g3(p: PNorm) -> f64 {
    2f64.powf(p.reciprocal())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GCurveSample {
    pub p: PNorm,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub min_g: f64,
}

impl GCurveSample {
    /// The resulting upper bound `1 + min g` on the 3-dimensional index.
    pub fn bound(&self) -> f64 {
        1.0 + self.min_g
    }
}

pub fn g_funcs(p: PNorm) -> GCurveSample {
    let (a, b, c) = (g1(p), g2(p), g3(p));
    GCurveSample {
        p,
        g1: a,
        g2: b,
        g3: c,
        min_g: a.min(b).min(c),
    }
}

/// Root of `g1 - g2` on `[1, 2]` by bisection to `1e-9`.
pub fn crossover_p0() -> Result<f64> {
    let diff = |p: f64| g1(PNorm::Finite(p)) - g2(PNorm::Finite(p));
    let (mut lo, mut hi) = (1.0, 2.0);
    let (dlo, dhi) = (diff(lo), diff(hi));
    if dlo.signum() == dhi.signum() {
        return Err(Error::Internal(format!(
            "g1 - g2 has no sign change on [1, 2] ({dlo}, {dhi})"
        )));
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if diff(mid).signum() == dlo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `2^(-1/p) + 3^(-1/p)`.
pub fn x_of_p(p: f64) -> f64 {
    2f64.powf(-1.0 / p) + 3f64.powf(-1.0 / p)
}

/// `2^(-1/p) - 3^(-1/p)`.
pub fn y_of_p(p: f64) -> f64 {
    2f64.powf(-1.0 / p) - 3f64.powf(-1.0 / p)
}

/// `[x^2 + y^2] - [x^p + y^p]`.
pub fn i_of_p(p: f64) -> f64 {
    let (x, y) = (x_of_p(p), y_of_p(p));
    (x * x + y * y) - (x.powf(p) + y.powf(p))
}

/// `2 (2^(-2/p) + 3^(-2/p)) + 1/3 - 2^(p/2)`.
pub fn h1_of_p(p: f64) -> f64 {
    2.0 * (2f64.powf(-2.0 / p) + 3f64.powf(-2.0 / p)) + 1.0 / 3.0 - 2f64.powf(p / 2.0)
}

/// `2 (3^m - 2^m) + 1/3`.
pub fn h_of_m(m: f64) -> f64 {
    2.0 * (3f64.powf(m) - 2f64.powf(m)) + 1.0 / 3.0
}

/// Unique critical point of `h`: `3^m ln 3 = 2^m ln 2`, i.e.
/// `m0 = -log_{3/2}(log_2 3)`.
pub fn h_minimizer() -> f64 {
    -(3f64.log2()).ln() / 1.5f64.ln()
}

/// Ratio for the rewrite `g2(p)^p = [F1(p) + F2(p) + 1] / 3`.
/// `x(p) = 3^(-1/p) (r^(1/p) + 1)` holds with `r = 3/2`.
pub const F_RATIO: f64 = 1.5;

/// `(r^(1/p) + 1)^p`.
pub fn f1(p: f64) -> f64 {
    (F_RATIO.powf(1.0 / p) + 1.0).powf(p)
}

/// `(r^(1/p) - 1)^p`.
pub fn f2(p: f64) -> f64 {
    (F_RATIO.powf(1.0 / p) - 1.0).powf(p)
}

/// `[(F1(p2) + F2(p1) + 1) / 3]^(1/p1)`, an upper bound for `g2` on `[p1, p2]`.
pub fn phi_interval(p1: f64, p2: f64) -> Result<f64> {
    if !(1.0 <= p1 && p1 <= p2) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p1 <= p2 (p1 = {p1}, p2 = {p2})"
        )));
    }
    Ok(((f1(p2) + f2(p1) + 1.0) / 3.0).powf(1.0 / p1))
}

/// Subintervals of `[1, 1.6]` used for the `Φ` bounds.
pub const PHI_BREAKPOINTS: [(f64, f64); 5] = [(1.0, 1.1), (1.1, 1.25), (1.25, 1.4), (1.4, 1.5), (1.5, 1.6)];

/// Every numerical fact behind `g2 <= sqrt 2` on `[1, 2]`, evaluated on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Thm32Report {
    pub step: f64,
    pub phi_table: Vec<(f64, f64, f64)>,
    pub g2_max_on_grid: f64,
    pub i_min_on_grid: f64,
    pub h1_max_on_grid: f64,
    pub h_endpoints: (f64, f64),
    pub h_max_on_grid: f64,
    pub m0: f64,
    pub h_slope_at_m0: f64,
    pub log_inequality: f64,
    pub f1_nondecreasing: bool,
    pub f2_nonincreasing: bool,
    pub x_increasing: bool,
    pub y_decreasing: bool,
    pub exponent_bound_holds: bool,
    pub failures: Vec<String>,
}

impl Thm32Report {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn grid(a: f64, b: f64, step: f64) -> impl Iterator<Item = f64> {
    let n = ((b - a) / step).round().max(1.0) as usize;
    (0..=n).map(move |i| a + (b - a) * i as f64 / n as f64)
}

fn monotone(values: &[f64], increasing: bool) -> bool {
    values
        .windows(2)
        .all(|w| if increasing { w[1] >= w[0] } else { w[1] <= w[0] })
}

pub fn verify_g2_bound() -> Thm32Report {
    verify_g2_bound_with_step(1e-3)
}

pub fn verify_g2_bound_with_step(step: f64) -> Thm32Report {
    const EPS: f64 = 1e-12;
    let sqrt2 = 2f64.sqrt();
    let mut failures = Vec::new();

    let phi_table: Vec<(f64, f64, f64)> = PHI_BREAKPOINTS
        .iter()
        .map(|&(a, b)| (a, b, phi_interval(a, b).expect("ordered breakpoints")))
        .collect();
    for &(a, b, v) in &phi_table {
        if v >= sqrt2 {
            failures.push(format!("Phi({a}, {b}) = {v} is not below sqrt 2"));
        }
    }

    let g2_max = grid(1.0, 2.0, step)
        .map(|p| g2(PNorm::Finite(p)))
        .fold(f64::MIN, f64::max);
    if g2_max > sqrt2 + EPS {
        failures.push(format!("max g2 on [1, 2] is {g2_max} > sqrt 2"));
    }
    let i_min = grid(1.6, 2.0, step).map(i_of_p).fold(f64::MAX, f64::min);
    if i_min < -EPS {
        failures.push(format!("I(p) reaches {i_min} < 0 on [1.6, 2]"));
    }
    let h1_max = grid(1.6, 2.0, step).map(h1_of_p).fold(f64::MIN, f64::max);
    if h1_max > EPS {
        failures.push(format!("H1(p) reaches {h1_max} > 0 on [1.6, 2]"));
    }

    let h_endpoints = (h_of_m(-1.25), h_of_m(-1.0));
    if h_endpoints.0 > -0.001 {
        failures.push(format!("h(-5/4) = {} is not <= -0.001", h_endpoints.0));
    }
    if h_endpoints.1.abs() > EPS {
        failures.push(format!("h(-1) = {} is not 0", h_endpoints.1));
    }
    let h_max = grid(-1.25, -1.0, step).map(h_of_m).fold(f64::MIN, f64::max);
    if h_max > EPS {
        failures.push(format!("h reaches {h_max} > 0 on [-5/4, -1]"));
    }
    let exponent_bound_holds = grid(-1.25, -1.0, step).all(|m| -1.0 / m >= m + 2.0 - EPS);
    if !exponent_bound_holds {
        failures.push("-1/m >= m + 2 fails on [-5/4, -1]".into());
    }
    let m0 = h_minimizer();
    let h_slope_at_m0 = 2.0 * (3f64.powf(m0) * 3f64.ln() - 2f64.powf(m0) * 2f64.ln());
    if h_slope_at_m0.abs() > 1e-12 {
        failures.push(format!("h'(m0) = {h_slope_at_m0} is not 0"));
    }

    let log_inequality = x_of_p(1.6).powf(1.6) * x_of_p(1.6).ln() + y_of_p(1.6).powf(1.6) * y_of_p(2.0).ln();
    if log_inequality <= 0.08 {
        failures.push(format!(
            "x(1.6)^1.6 ln x(1.6) + y(1.6)^1.6 ln y(2) = {log_inequality} <= 0.08"
        ));
    }

    let f1_vals: Vec<f64> = grid(1.0, 1.6, step).map(f1).collect();
    let f2_vals: Vec<f64> = grid(1.0, 1.6, step).map(f2).collect();
    let f1_nondecreasing = monotone(&f1_vals, true);
    let f2_nonincreasing = monotone(&f2_vals, false);
    if !f1_nondecreasing {
        failures.push("F1 is not nondecreasing on [1, 1.6]".into());
    }
    if !f2_nonincreasing {
        failures.push("F2 is not nonincreasing on [1, 1.6]".into());
    }
    let xs: Vec<f64> = grid(1.0, 2.0, step).map(x_of_p).collect();
    let ys: Vec<f64> = grid(1.0, 2.0, step).map(y_of_p).collect();
    let x_increasing = monotone(&xs, true);
    let y_decreasing = monotone(&ys, false);
    if !x_increasing {
        failures.push("x(p) is not increasing on [1, 2]".into());
    }
    if !y_decreasing {
        failures.push("y(p) is not decreasing on [1, 2]".into());
    }

    Thm32Report {
        step,
        phi_table,
        g2_max_on_grid: g2_max,
        i_min_on_grid: i_min,
        h1_max_on_grid: h1_max,
        h_endpoints,
        h_max_on_grid: h_max,
        m0,
        h_slope_at_m0,
        log_inequality,
        f1_nondecreasing,
        f2_nonincreasing,
        x_increasing,
        y_decreasing,
        exponent_bound_holds,
        failures,
    }
}

/// Both sides of the four inequalities
/// `1 <= a^p <= 2^p`, `1 <= (1+a^p)/2^p <= 2^p`, `1 <= 1+a^p <= 2^p`,
/// `1 <= (3^p+a^p)/2^p <= 2^p` with `a = a(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableInequalities {
    pub p: f64,
    /// `(middle term, upper bound)` for each inequality; the lower bound is 1.
    pub terms: [(f64, f64); 4],
    pub holds: [bool; 4],
    /// `4^p - 3^p >= 2^p - 1`
    pub convexity_holds: bool,
}

impl TableInequalities {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h) && self.convexity_holds
    }
}

pub fn check_table_inequalities(p: f64) -> Result<TableInequalities> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be finite and >= 1")));
    }
    const EPS: f64 = 1e-12;
    let ap = 2f64.powf(p) - 1.0;
    let two_p = 2f64.powf(p);
    let terms = [
        (ap, two_p),
        ((1.0 + ap) / two_p, two_p),
        (1.0 + ap, two_p),
        ((3f64.powf(p) + ap) / two_p, two_p),
    ];
    let holds = terms.map(|(mid, hi)| 1.0 - EPS * hi <= mid && mid <= hi * (1.0 + EPS));
    let convexity_holds = 4f64.powf(p) - 3f64.powf(p) >= (two_p - 1.0) * (1.0 - EPS);
    Ok(TableInequalities {
        p,
        terms,
        holds,
        convexity_holds,
    })
}

pub(crate) fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Uniform-grid samples of the three curves as CSV with header
/// `p,g1,g2,g3,min_g,bound`.
pub fn emit_curves_csv(p_min: f64, p_max: f64, steps: usize) -> Result<String> {
    if !(1.0 <= p_min && p_min < p_max && p_max.is_finite()) || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p_min < p_max < inf and steps >= 1 (got {p_min}, {p_max}, {steps})"
        )));
    }
    let mut s = String::from("p,g1,g2,g3,min_g,bound\n");
    for i in 0..=steps {
        let p = p_min + (p_max - p_min) * i as f64 / steps as f64;
        let g = g_funcs(PNorm::Finite(p));
        writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt17(p),
            fmt17(g.g1),
            fmt17(g.g2),
            fmt17(g.g3),
            fmt17(g.min_g),
            fmt17(g.bound())
        )
        .unwrap();
    }
    Ok(s)
}
