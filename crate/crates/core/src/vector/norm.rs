use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The exponent of a p-norm, `p >= 1`, with infinity as its own variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!("p = {p} must be at least 1")));
        }
        Ok(if p.is_infinite() {
            PNorm::Infinity
        } else {
            PNorm::Finite(p)
        })
    }

    /// `1/p`, zero at infinity.
    pub fn reciprocal(&self) -> f64 {
        match *self {
            PNorm::Finite(p) => 1.0 / p,
            PNorm::Infinity => 0.0,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PNorm::Infinity)
    }

    pub fn value(&self) -> f64 {
        match *self {
            PNorm::Finite(p) => p,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        pnorm(x, *self)
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "INF" => Ok(PNorm::Infinity),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("cannot parse p = {t:?}")))?;
                PNorm::new(p)
            }
        }
    }
}

/// `(sum |x_i|^p)^(1/p)`, or `max |x_i|` at infinity.
pub fn pnorm(x: &[f64], p: PNorm) -> f64 {
    match p {
        PNorm::Infinity => x.iter().fold(0.0, |m, v| m.max(v.abs())),
        PNorm::Finite(1.0) => x.iter().map(|v| v.abs()).sum(),
        PNorm::Finite(2.0) => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        PNorm::Finite(q) => {
            let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            scale * x.iter().map(|v| (v.abs() / scale).powf(q)).sum::<f64>().powf(1.0 / q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(pnorm(&[1.0, -1.0], PNorm::Finite(1.0)), 2.0);
        assert!((pnorm(&[1.0, 1.0], PNorm::Finite(2.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(pnorm(&[0.5, -0.75, 0.0], PNorm::Finite(1.0)), 1.25);
        assert_eq!(pnorm(&[0.5, -3.0], PNorm::Infinity), 3.0);
        assert!((pnorm(&[1.0, 1.0], PNorm::Finite(3.0)) - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(pnorm(&[0.0, 0.0], PNorm::Finite(1.5)), 0.0);
    }

    #[test]
    fn large_p_approaches_max() {
        let x = [0.3, -0.9, 0.5];
        let big = pnorm(&x, PNorm::Finite(4096.0));
        assert!((big - 0.9).abs() < 1e-3);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("inf".parse::<PNorm>().unwrap(), PNorm::Infinity);
        assert_eq!("1.5".parse::<PNorm>().unwrap(), PNorm::Finite(1.5));
        assert!("0.5".parse::<PNorm>().is_err());
        assert!("abc".parse::<PNorm>().is_err());
        assert_eq!(PNorm::Infinity.to_string(), "inf");
        assert_eq!(PNorm::Finite(2.0).to_string(), "2");
    }
}
