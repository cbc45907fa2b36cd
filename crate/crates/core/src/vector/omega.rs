use crate::error::{Error, Result};
use crate::vector::norm::{pnorm, PNorm};

/// A symbolic vector set: each row is an integer combination
/// `sum_i c_i P_i` of `t` formal vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSet {
    t: usize,
    rows: Vec<Vec<i32>>,
}

impl OmegaSet {
    pub fn new(t: usize, rows: Vec<Vec<i32>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != t {
                return Err(Error::DimensionMismatch {
                    expected: t,
                    found: r.len(),
                });
            }
            if rows[..i].contains(r) {
                return Err(Error::InvalidParameter(format!("row {i} repeats an earlier row")));
            }
        }
        Ok(OmegaSet { t, rows })
    }

    /// `{P}`.
    pub fn single() -> Self {
        OmegaSet {
            t: 1,
            rows: vec![vec![1]],
        }
    }

    /// `{P1, P2, P1+P2}`.
    pub fn three_flow() -> Self {
        OmegaSet {
            t: 2,
            rows: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        }
    }

    /// `{P1, P2, P1+P2, P1-P2}`.
    pub fn four_flow() -> Self {
        OmegaSet {
            t: 2,
            rows: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
        }
    }

    /// `Ω1 ∪ Ω2 ∪ Ω3` with `Ω1 = {P1, P2, P1+P2}`, `Ω2 = {P3}` and
    /// `Ω3 = (Ω1 + Ω2) ∪ (Ω1 - Ω2)`, in the order
    /// `P1, P2, P1+P2, P3, P1±P3, P2±P3, P1+P2±P3`.
    pub fn six_flow() -> Self {
        OmegaSet {
            t: 3,
            rows: vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![1, 1, 0],
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![1, 0, -1],
                vec![0, 1, 1],
                vec![0, 1, -1],
                vec![1, 1, 1],
                vec![1, 1, -1],
            ],
        }
    }

    /// `{ sum_I P_i - sum_J P_j : |I| = |J| = l, I ∩ J = ∅ }` over `k` vectors.
    pub fn occ(k: usize, l: usize) -> Self {
        let subsets: Vec<u64> = (0u64..1 << k).filter(|s| s.count_ones() as usize == l).collect();
        let mut rows = Vec::new();
        for &a in &subsets {
            for &b in &subsets {
                if a & b == 0 {
                    rows.push((0..k).map(|i| (a >> i & 1) as i32 - (b >> i & 1) as i32).collect());
                }
            }
        }
        OmegaSet { t: k, rows }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Human-readable row, e.g. `P1+P2-P3`.
    pub fn label(&self, row: usize) -> String {
        let mut s = String::new();
        for (i, &c) in self.rows[row].iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("P{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Evaluates every row of `omega` at a numeric assignment of the formal
/// vectors.
pub fn instantiate_omega(omega: &OmegaSet, assignment: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if assignment.len() != omega.t {
        return Err(Error::DimensionMismatch {
            expected: omega.t,
            found: assignment.len(),
        });
    }
    let d = assignment.first().map_or(0, |v| v.len());
    if let Some(bad) = assignment.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    Ok(omega
        .rows
        .iter()
        .map(|row| {
            let mut out = vec![0.0; d];
            for (c, p) in row.iter().zip(assignment) {
                for (o, x) in out.iter_mut().zip(p) {
                    *o += *c as f64 * x;
                }
            }
            out
        })
        .collect())
}

/// `(min, max)` p-norm over a list of vectors.
pub fn norm_window(vectors: &[Vec<f64>], p: PNorm) -> (f64, f64) {
    vectors
        .iter()
        .map(|v| pnorm(v, p))
        .fold((f64::INFINITY, 0.0), |(lo, hi), n| (lo.min(n), hi.max(n)))
}
