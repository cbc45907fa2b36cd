use std::fmt;
use std::str::FromStr;

use crate::analysis::a_of_p;
use crate::error::{Error, Result};
use crate::vector::norm::PNorm;
use crate::vector::omega::{instantiate_omega, norm_window, OmegaSet};

/// The four vector choices realizing the six-flow vector set with a small
/// norm ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Column {
    /// `d = 2`, any `p`, window `[1, 2]`
    D2AnyP,
    /// `d = 3`, any `p`, window `[1, 2^(1/p)]`
    D3AnyP,
    /// `d = 3`, `p = inf`, all norms 1
    D3Inf,
    /// `d = 3`, `p = 1`, window `[1, 5/4]`
    D3One,
}

impl Table1Column {
    pub const ALL: [Table1Column; 4] = [
        Table1Column::D2AnyP,
        Table1Column::D3AnyP,
        Table1Column::D3Inf,
        Table1Column::D3One,
    ];

    pub fn dimension(&self) -> usize {
        match self {
            Table1Column::D2AnyP => 2,
            _ => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Table1Column::D2AnyP => "d2-anyp",
            Table1Column::D3AnyP => "d3-anyp",
            Table1Column::D3Inf => "d3-inf",
            Table1Column::D3One => "d3-one",
        }
    }

    /// The exponent this column is designed for, if it is fixed.
    pub fn fixed_p(&self) -> Option<PNorm> {
        match self {
            Table1Column::D3Inf => Some(PNorm::Infinity),
            Table1Column::D3One => Some(PNorm::Finite(1.0)),
            _ => None,
        }
    }
}

impl fmt::Display for Table1Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Table1Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table1Column::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown column {s:?} (expected d2-anyp, d3-anyp, d3-inf or d3-one)"
            ))
        })
    }
}

/// Concrete `P1, P2, P3` together with the ten vectors of the six-flow set.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTriple {
    pub assignment: Vec<Vec<f64>>,
    /// in [`OmegaSet::six_flow`] order
    pub omega: Vec<Vec<f64>>,
}

impl VectorTriple {
    pub fn new(p1: Vec<f64>, p2: Vec<f64>, p3: Vec<f64>) -> Result<Self> {
        let assignment = vec![p1, p2, p3];
        let omega = instantiate_omega(&OmegaSet::six_flow(), &assignment)?;
        Ok(VectorTriple { assignment, omega })
    }

    pub fn window(&self, p: PNorm) -> (f64, f64) {
        norm_window(&self.omega, p)
    }

    /// `max / min` of the ten norms.
    pub fn ratio(&self, p: PNorm) -> f64 {
        let (lo, hi) = self.window(p);
        hi / lo
    }
}

/// The vectors of one column. The `p`-specific columns ignore `p`.
pub fn table1_vectors(column: Table1Column, p: PNorm) -> Result<VectorTriple> {
    let a = a_of_p(p);
    match column {
        Table1Column::D2AnyP => VectorTriple::new(vec![0.0, -a], vec![-0.5, a / 2.0], vec![1.0, 0.0]),
        Table1Column::D3AnyP => VectorTriple::new(vec![0.0, 0.0, 1.0], vec![0.0, a / 2.0, -0.5], vec![1.0, 0.0, 0.0]),
        Table1Column::D3Inf => VectorTriple::new(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]),
        Table1Column::D3One => VectorTriple::new(
            vec![-0.5, 0.0, 0.5],
            vec![0.125, -0.5, -0.375],
            vec![0.375, -0.25, 0.375],
        ),
    }
}

/// `P1 = (a, a, 0)`, `P2 = (-a, 0, -a)`, `P3 = (b, -b, -b)` with
/// `a = 2^(-1/p)`, `b = 3^(-1/p)`: four vectors of norm 1 and six of norm
/// `g2(p)`.
pub fn thm31_vectors(p: PNorm) -> VectorTriple {
    let a = 2f64.powf(-p.reciprocal());
    let b = 3f64.powf(-p.reciprocal());
    VectorTriple::new(vec![a, a, 0.0], vec![-a, 0.0, -a], vec![b, -b, -b]).expect("fixed shapes")
}

/// Two planar vectors for the four-flow set `{P1, P2, P1+P2, P1-P2}` with
/// ratio `2^(1 - 1/p)` for `p <= 2` and `2^(1/p)` above.
pub fn thm15_vectors(p: PNorm) -> [Vec<f64>; 2] {
    if p.value() <= 2.0 {
        let a = 2f64.powf(-p.reciprocal());
        [vec![a, a], vec![a, -a]]
    } else {
        [vec![1.0, 0.0], vec![0.0, 1.0]]
    }
}

/// `v_i = e_i - (1/k) 1` in `R^k`, divided by `(2l)^(1/p)`, so every row of
/// the `(k, l)` cover set has `p`-norm exactly 1.
pub fn simplex_vectors(k: usize, l: usize, p: PNorm) -> Result<Vec<Vec<f64>>> {
    if k < 2 || l == 0 || 2 * l > k {
        return Err(Error::InvalidParameter(format!(
            "need k >= 2 and 1 <= l <= k/2 (k = {k}, l = {l})"
        )));
    }
    let alpha = (2.0 * l as f64).powf(-p.reciprocal());
    let c = 1.0 / k as f64;
    Ok((0..k)
        .map(|i| (0..k).map(|j| alpha * (if i == j { 1.0 } else { 0.0 } - c)).collect())
        .collect())
}

/// Coordinates in an orthonormal basis of the hyperplane `sum x = 0`
/// (Helmert basis). Preserves Euclidean norms of vectors in the hyperplane.
pub fn hyperplane_coordinates(v: &[f64]) -> Vec<f64> {
    let k = v.len();
    (1..k)
        .map(|j| {
            let head: f64 = v[..j].iter().sum();
            let jf = j as f64;
            (head - jf * v[j]) / (jf * (jf + 1.0)).sqrt()
        })
        .collect()
}

/// `P_i = (1/2)(-1)^i e_{ceil(i/2)}` for `i = 1..=k`, in dimension
/// `ceil(k/2)`.
pub fn halfunit_vectors(k: usize) -> Result<Vec<Vec<f64>>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k >= 2 (k = {k})")));
    }
    let d = k.div_ceil(2);
    Ok((1..=k)
        .map(|i| {
            let mut v = vec![0.0; d];
            v[i.div_ceil(2) - 1] = if i % 2 == 0 { 0.5 } else { -0.5 };
            v
        })
        .collect())
}
