use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vector::flow::VectorFlow;
use crate::vector::norm::PNorm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    OneToInf,
    InfToOne,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::OneToInf => "one-to-inf",
            Direction::InfToOne => "inf-to-one",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-to-inf" => Ok(Direction::OneToInf),
            "inf-to-one" => Ok(Direction::InfToOne),
            _ => Err(Error::InvalidParameter(format!(
                "unknown direction {s:?} (expected one-to-inf or inf-to-one)"
            ))),
        }
    }
}

/// `T(x, y) = (x - y, x + y)`, taking 1-norms to infinity-norms.
pub fn rotate_scale(v: [f64; 2], direction: Direction) -> [f64; 2] {
    let [x, y] = v;
    match direction {
        Direction::OneToInf => [x - y, x + y],
        Direction::InfToOne => [(x + y) / 2.0, (y - x) / 2.0],
    }
}

/// Applies [`rotate_scale`] to every value of a planar flow.
pub fn transform_2d(flow: &VectorFlow, direction: Direction) -> Result<VectorFlow> {
    if flow.d != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: flow.d,
        });
    }
    let mut out = flow.clone();
    for v in &mut out.values {
        let [a, b] = rotate_scale([v[0], v[1]], direction);
        *v = vec![a, b];
    }
    Ok(out)
}

/// Range for the ratio under `p1` given a ratio bound under `p2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
    pub d: usize,
    pub p1: PNorm,
    pub p2: PNorm,
}

impl BoundInterval {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lower - tol <= x && x <= self.upper + tol
    }
}

fn check_order(d: usize, p1: PNorm, p2: PNorm, phi: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if p1.value() >= p2.value() {
        return Err(Error::InvalidParameter(format!("need p1 < p2 (p1 = {p1}, p2 = {p2})")));
    }
    if !(phi >= 2.0) {
        return Err(Error::InvalidParameter(format!("ratio bound {phi} must be at least 2")));
    }
    Ok((d as f64).powf(p1.reciprocal() - p2.reciprocal()))
}

/// Given `phi` for `p2`, the interval `[1 + (phi-1)/c, 1 + c (phi-1)]` for
/// `p1 < p2`, where `c = d^(1/p1 - 1/p2)`.
pub fn transfer_bound(d: usize, p1: PNorm, p2: PNorm, phi_p2: f64) -> Result<BoundInterval> {
    let c = check_order(d, p1, p2, phi_p2)?;
    Ok(BoundInterval {
        lower: 1.0 + (phi_p2 - 1.0) / c,
        upper: 1.0 + c * (phi_p2 - 1.0),
        d,
        p1,
        p2,
    })
}

/// Given `phi` for the smaller exponent `p1`, the interval for `p2`.
/// The factor is symmetric, so the interval has the same shape.
pub fn transfer_bound_reverse(d: usize, p1: PNorm, p2: PNorm, phi_p1: f64) -> Result<BoundInterval> {
    transfer_bound(d, p1, p2, phi_p1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::norm::pnorm;

    #[test]
    fn unit_vector() {
        assert_eq!(rotate_scale([1.0, 0.0], Direction::OneToInf), [1.0, 1.0]);
        assert_eq!(rotate_scale([0.0, 0.0], Direction::OneToInf), [0.0, 0.0]);
        let v = [0.3, -1.7];
        let back = rotate_scale(rotate_scale(v, Direction::OneToInf), Direction::InfToOne);
        assert!((back[0] - v[0]).abs() < 1e-15 && (back[1] - v[1]).abs() < 1e-15);
        let t = rotate_scale(v, Direction::OneToInf);
        assert!((pnorm(&t, PNorm::Infinity) - pnorm(&v, PNorm::Finite(1.0))).abs() < 1e-15);
    }

    #[test]
    fn k4_interval() {
        let b = transfer_bound(2, PNorm::Finite(1.0), PNorm::Finite(2.0), 1.0 + 2f64.sqrt()).unwrap();
        assert!((b.lower - 2.0).abs() < 1e-12);
        assert!((b.upper - 3.0).abs() < 1e-12);
        assert!(b.contains(2.0, 1e-12));
    }

    #[test]
    fn order_guard() {
        let p = PNorm::Finite(2.0);
        assert!(transfer_bound(2, p, p, 3.0).is_err());
        assert!(transfer_bound(2, PNorm::Finite(1.0), p, 1.5).is_err());
    }
}
