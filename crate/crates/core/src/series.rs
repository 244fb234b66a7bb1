//! Poincaré series: finitely supported sequences of graded ranks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Graded rank generating polynomial. `coeffs[d]` is the rank in degree `d`;
/// trailing zeros are trimmed so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    coeffs: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// The formal quotient produced a negative rank, so the relation degrees
    /// cannot come from a regular sequence.
    #[error("series coefficient at degree {degree} is negative; relation degrees are not a regular sequence")]
    NegativeCoefficient { degree: usize },
}

impl PoincareSeries {
    pub fn zero() -> Self {
        PoincareSeries { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PoincareSeries { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        let mut s = PoincareSeries { coeffs };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, degree: usize) -> u64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest degree with nonzero rank.
    pub fn top_degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Value at x = 1, i.e. the total rank.
    pub fn total_rank(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// True when `coeff(d) == coeff(top - d)` for all `d <= top` and no rank
    /// lives above `top`.
    pub fn is_palindromic_about(&self, top: usize) -> bool {
        if self.coeffs.len() > top + 1 {
            return false;
        }
        (0..=top).all(|d| self.coeff(d) == self.coeff(top - d))
    }

    /// Multiply by `1 + x^d`, truncating above `max_degree`.
    pub fn mul_one_plus_x_pow(&self, d: usize, max_degree: usize) -> Self {
        let len = (max_degree + 1).min(self.coeffs.len() + d);
        let mut out = vec![0u64; len.max(self.coeffs.len().min(max_degree + 1))];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i <= max_degree {
                out[i] += c;
            }
            if i + d <= max_degree {
                if i + d >= out.len() {
                    out.resize(i + d + 1, 0);
                }
                out[i + d] += c;
            }
        }
        PoincareSeries::from_coeffs(out)
    }

    pub fn truncated(&self, max_degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(max_degree + 1);
        PoincareSeries::from_coeffs(coeffs)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (d, 1) => write!(f, "x^{d}")?,
                (d, c) => write!(f, "{c}*x^{d}")?,
            }
        }
        Ok(())
    }
}

/// Truncation of `prod_rels (1 - x^r) / prod_gens (1 - x^g)`.
///
/// Computed by exact integer convolution; a negative intermediate is fine,
/// only the final truncation must be non-negative.
pub fn complete_intersection_series(
    generator_degrees: &[u32],
    relation_degrees: &[u32],
    max_degree: u32,
) -> Result<PoincareSeries, SeriesError> {
    let max = max_degree as usize;
    let mut c = vec![0i128; max + 1];
    c[0] = 1;
    for &g in generator_degrees {
        let g = g as usize;
        for d in g..=max {
            c[d] += c[d - g];
        }
    }
    for &r in relation_degrees {
        let r = r as usize;
        for d in (r..=max).rev() {
            c[d] -= c[d - r];
        }
    }
    let mut out = Vec::with_capacity(max + 1);
    for (degree, &v) in c.iter().enumerate() {
        if v < 0 {
            return Err(SeriesError::NegativeCoefficient { degree });
        }
        out.push(v as u64);
    }
    Ok(PoincareSeries::from_coeffs(out))
}
