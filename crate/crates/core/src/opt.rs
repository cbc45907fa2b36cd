//! Direct search for vector flows with a small max/min norm ratio, using the
//! cotree values as free variables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bridges, spanning_structure, EdgeId, MultiGraph, Orientation};
use crate::intflow::{find_int_nzf_with, SearchOptions};
use crate::vector::{
    certify, pnorm, six_flow_omega, table1_vectors, verify_certificate, FlowCertificate, PNorm, Table1Column,
    VectorFlow, DEFAULT_TOLERANCE,
};

/// Linear map from cotree vectors to edge vectors in the reference
/// orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowParametrization {
    pub graph: MultiGraph,
    pub d: usize,
    pub cotree_edges: Vec<EdgeId>,
    /// `(cotree index, sign)` terms for every edge
    pub terms: Vec<Vec<(usize, f64)>>,
}

pub fn parametrize(g: &MultiGraph, d: usize) -> Result<FlowParametrization> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if let Some(&e) = bridges(g).first() {
        return Err(Error::Bridge(e));
    }
    let basis = spanning_structure(g);
    let mut terms = vec![Vec::new(); g.edge_count()];
    for (c, row) in basis.rows.iter().enumerate() {
        for (e, &s) in row.iter().enumerate() {
            if s != 0 {
                terms[e].push((c, s as f64));
            }
        }
    }
    Ok(FlowParametrization {
        graph: g.clone(),
        d,
        cotree_edges: basis.cotree_edges,
        terms,
    })
}

impl FlowParametrization {
    /// Number of free real coordinates.
    pub fn dimension(&self) -> usize {
        self.cotree_edges.len() * self.d
    }

    /// Edge vectors for the flat assignment `x` (cotree vector `c` occupies
    /// `x[c*d .. (c+1)*d]`).
    pub fn edge_values(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let d = self.d;
        self.terms
            .iter()
            .map(|t| {
                let mut v = vec![0.0; d];
                for &(c, s) in t {
                    for (j, vj) in v.iter_mut().enumerate() {
                        *vj += s * x[c * d + j];
                    }
                }
                v
            })
            .collect()
    }

    pub fn flow(&self, x: &[f64]) -> VectorFlow {
        let values = self.edge_values(x);
        VectorFlow::new(&self.graph, Orientation::reference(&self.graph), values)
            .expect("edge values have the parametrization's shape")
    }

    /// Cotree vectors of an existing flow.
    pub fn assignment_of(&self, flow: &VectorFlow) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dimension());
        for &e in &self.cotree_edges {
            let s = flow.orientation.sign(&self.graph, e) as f64;
            for j in 0..self.d {
                x.push(s * flow.values[e].get(j).copied().unwrap_or(0.0));
            }
        }
        x
    }

    fn norms_into(&self, x: &[f64], p: PNorm, buf: &mut [f64], out: &mut [f64]) {
        let d = self.d;
        for (e, t) in self.terms.iter().enumerate() {
            buf.iter_mut().for_each(|b| *b = 0.0);
            for &(c, s) in t {
                for (j, b) in buf.iter_mut().enumerate() {
                    *b += s * x[c * d + j];
                }
            }
            out[e] = pnorm(buf, p);
        }
    }
}

/// `max / min` edge norm, or infinity when the smallest norm is below
/// `epsilon` times the largest.
pub fn ratio(param: &FlowParametrization, x: &[f64], p: PNorm, epsilon: f64) -> f64 {
    let mut buf = vec![0.0; param.d];
    let mut norms = vec![0.0; param.terms.len()];
    param.norms_into(x, p, &mut buf, &mut norms);
    exact_ratio(&norms, epsilon)
}

fn exact_ratio(norms: &[f64], epsilon: f64) -> f64 {
    let max = norms.iter().copied().fold(0.0, f64::max);
    let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min >= epsilon * max) || max == 0.0 {
        return f64::INFINITY;
    }
    max / min
}

/// Power-mean surrogate `M_q / M_{-q}` for the ratio.
fn smooth_ratio(norms: &[f64], q: f64, epsilon: f64) -> f64 {
    let max = norms.iter().copied().fold(0.0, f64::max);
    let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min >= epsilon * max) || max == 0.0 {
        return f64::INFINITY;
    }
    let m = norms.len() as f64;
    let hi = max * (norms.iter().map(|n| (n / max).powf(q)).sum::<f64>() / m).powf(1.0 / q);
    let lo = min * (norms.iter().map(|n| (n / min).powf(-q)).sum::<f64>() / m).powf(-1.0 / q);
    hi / lo
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    /// objective evaluations allowed per restart
    pub max_evaluations: u64,
    /// power-mean exponents of the smoothing stages
    pub smoothing: Vec<f64>,
    pub step_start: f64,
    pub smooth_step_floor: f64,
    pub polish_step_start: f64,
    pub step_floor: f64,
    /// a poll improving the objective by less than this fraction halves the step
    pub poll_progress: f64,
    /// polls allowed at one step size before it is halved
    pub polls_per_step: usize,
    /// degeneracy floor relative to the largest norm
    pub epsilon: f64,
    /// start one extra run from the six-flow construction
    pub construction_warm_start: bool,
    /// start one extra run from these cotree vectors, zero-padded to `d`
    pub warm_start: Option<Vec<Vec<f64>>>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 16,
            seed: 0,
            max_evaluations: 5_000_000,
            smoothing: vec![4.0, 16.0, 64.0, 256.0],
            step_start: 0.5,
            smooth_step_floor: 1e-4,
            polish_step_start: 1e-2,
            step_floor: 1e-7,
            poll_progress: 1e-9,
            polls_per_step: 50,
            epsilon: 1e-6,
            construction_warm_start: true,
            warm_start: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub best_r: f64,
    pub certificate: FlowCertificate,
    /// cotree vectors of the best flow, flattened
    pub assignment: Vec<f64>,
    /// index of the winning run; `restarts` and above are warm starts
    pub run: usize,
}

impl OptimizeResult {
    /// The winning assignment as one vector per cotree edge.
    pub fn cotree_vectors(&self) -> Vec<Vec<f64>> {
        let d = self.certificate.d;
        self.assignment.chunks(d.max(1)).map(<[f64]>::to_vec).collect()
    }
}

struct Descent<'a> {
    param: &'a FlowParametrization,
    p: PNorm,
    epsilon: f64,
    evaluations: u64,
    budget: u64,
    poll_progress: f64,
    polls_per_step: usize,
    buf: Vec<f64>,
    norms: Vec<f64>,
}

impl Descent<'_> {
    fn eval(&mut self, x: &[f64], q: Option<f64>) -> f64 {
        self.evaluations += 1;
        self.param.norms_into(x, self.p, &mut self.buf, &mut self.norms);
        match q {
            Some(q) => smooth_ratio(&self.norms, q, self.epsilon),
            None => exact_ratio(&self.norms, self.epsilon),
        }
    }

    fn exhausted(&self) -> bool {
        self.evaluations >= self.budget
    }

    /// Pattern search over coordinate and random unit directions with
    /// geometric step decay.
    fn search(&mut self, x: &mut [f64], q: Option<f64>, step0: f64, floor: f64, rng: &mut ChaCha8Rng) {
        let n = x.len();
        let mut f = self.eval(x, q);
        let mut step = step0;
        let mut trial = vec![0.0; n];
        let mut dir = vec![0.0; n];
        let mut polls = 0;
        while step > floor && !self.exhausted() {
            let before = f;
            let mut improved = false;
            for k in 0..2 * n {
                if k < n {
                    dir.iter_mut().for_each(|v| *v = 0.0);
                    dir[k] = 1.0;
                } else {
                    random_unit(rng, &mut dir);
                }
                for s in [step, -step] {
                    for i in 0..n {
                        trial[i] = x[i] + s * dir[i];
                    }
                    let ft = self.eval(&trial, q);
                    if ft < f - 1e-12 {
                        x.copy_from_slice(&trial);
                        f = ft;
                        improved = true;
                        break;
                    }
                }
                if self.exhausted() {
                    return;
                }
            }
            polls += 1;
            // slow progress counts as a failed poll
            if !improved || before - f < self.poll_progress * before || polls >= self.polls_per_step {
                step *= 0.5;
                polls = 0;
            }
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    loop {
        out.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
        let len = out.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > 1e-3 {
            out.iter_mut().for_each(|v| *v /= len);
            return;
        }
    }
}

fn run_seed(seed: u64, run: usize) -> u64 {
    seed ^ (run as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// One descent run; returns the best exact ratio seen (start or end) and
/// its assignment.
fn run_once(
    param: &FlowParametrization,
    p: PNorm,
    config: &OptimizerConfig,
    run: usize,
    start: Option<&[f64]>,
) -> (f64, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed(config.seed, run));
    let mut d = Descent {
        param,
        p,
        epsilon: config.epsilon,
        evaluations: 0,
        budget: config.max_evaluations,
        poll_progress: config.poll_progress,
        polls_per_step: config.polls_per_step,
        buf: vec![0.0; param.d],
        norms: vec![0.0; param.terms.len()],
    };
    let n = param.dimension();
    let mut x = match start {
        Some(s) => s.to_vec(),
        None => {
            let mut x = vec![0.0; n];
            for _ in 0..1000 {
                x.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
                if d.eval(&x, None).is_finite() {
                    break;
                }
            }
            x
        }
    };
    let start_x = x.clone();
    let start_r = d.eval(&start_x, None);
    for &q in &config.smoothing {
        d.search(&mut x, Some(q), config.step_start, config.smooth_step_floor, &mut rng);
    }
    d.search(&mut x, None, config.polish_step_start, config.step_floor, &mut rng);
    let end_r = d.eval(&x, None);
    if start_r <= end_r {
        (start_r, start_x)
    } else {
        (end_r, x)
    }
}

fn construction_start(param: &FlowParametrization, p: PNorm) -> Option<Vec<f64>> {
    let g = &param.graph;
    let column = match (param.d, p) {
        (2, _) => Table1Column::D2AnyP,
        (_, PNorm::Infinity) => Table1Column::D3Inf,
        (_, PNorm::Finite(1.0)) => Table1Column::D3One,
        _ => Table1Column::D3AnyP,
    };
    if param.d < column.dimension() {
        return None;
    }
    let triple = table1_vectors(column, p).ok()?;
    let padded: Vec<Vec<f64>> = triple
        .assignment
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(param.d, 0.0);
            w
        })
        .collect();
    let sym = six_flow_omega(g, &SearchOptions::from_env()).ok()?;
    let flow = sym.instantiate(g, &padded).ok()?;
    Some(param.assignment_of(&flow))
}

fn lifted_start(param: &FlowParametrization, vectors: &[Vec<f64>]) -> Result<Vec<f64>> {
    if vectors.len() != param.cotree_edges.len() {
        return Err(Error::DimensionMismatch {
            expected: param.cotree_edges.len(),
            found: vectors.len(),
        });
    }
    let mut x = Vec::with_capacity(param.dimension());
    for v in vectors {
        if v.len() > param.d {
            return Err(Error::DimensionMismatch {
                expected: param.d,
                found: v.len(),
            });
        }
        x.extend_from_slice(v);
        x.extend(std::iter::repeat_n(0.0, param.d - v.len()));
    }
    Ok(x)
}

/// Smallest `k` with a nowhere-zero `k`-flow, certified as a scalar flow.
fn optimize_scalar(g: &MultiGraph) -> Result<OptimizeResult> {
    if let Some(&e) = bridges(g).first() {
        return Err(Error::Bridge(e));
    }
    let opts = SearchOptions::from_env();
    for k in 2..=6 {
        if let Some(f) = find_int_nzf_with(g, k, &opts)? {
            let flow = VectorFlow::from_int_flow(g, &f)?;
            let cert = certify(
                g,
                &flow,
                PNorm::Finite(1.0),
                &format!("nowhere-zero {k}-flow by cotree search"),
            )?;
            let assignment = f.values.iter().map(|&v| v as f64).collect();
            return Ok(OptimizeResult {
                best_r: cert.claimed_r,
                certificate: cert,
                assignment,
                run: 0,
            });
        }
    }
    Err(Error::NotFound("nowhere-zero 6-flow".into()))
}

/// Multi-start search for a flow with small `1 + max/min`; the returned
/// certificate has been verified.
pub fn optimize(g: &MultiGraph, d: usize, p: PNorm, config: &OptimizerConfig) -> Result<OptimizeResult> {
    if config.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    if !(config.epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::Degenerate("graph has no edges".into()));
    }
    if d == 1 {
        return optimize_scalar(g);
    }
    let param = parametrize(g, d)?;

    let mut starts: Vec<Option<Vec<f64>>> = vec![None; config.restarts];
    if config.construction_warm_start {
        if let Some(x) = construction_start(&param, p) {
            starts.push(Some(x));
        }
    }
    if let Some(w) = &config.warm_start {
        starts.push(Some(lifted_start(&param, w)?));
    }

    let results: Vec<(f64, Vec<f64>)> = starts
        .par_iter()
        .enumerate()
        .map(|(run, s)| run_once(&param, p, config, run, s.as_deref()))
        .collect();
    let (run, (best, x)) = results
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .expect("at least one run");
    if !best.is_finite() {
        return Err(Error::Degenerate(format!(
            "all {} runs ended at a degenerate point",
            starts.len()
        )));
    }
    let flow = param.flow(&x);
    let provenance = format!(
        "direct search: d={d} p={p} restarts={} seed={} winning run={run}",
        config.restarts, config.seed
    );
    let cert = certify(g, &flow, p, &provenance)?;
    let report = verify_certificate(&cert, DEFAULT_TOLERANCE);
    if !report.is_ok() {
        return Err(Error::Internal(format!(
            "optimizer produced an invalid certificate: {report}"
        )));
    }
    Ok(OptimizeResult {
        best_r: cert.claimed_r,
        certificate: cert,
        assignment: x,
        run,
    })
}
