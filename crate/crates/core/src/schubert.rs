//! Combinatorial oracle for complex Grassmannian cohomology: partitions in a
//! box, the Pieri rule for multiplication by the special class, sigma_1
//! heights and Betti numbers.
//!
//! Deliberately shares no code with `idealalg`; this is the independent side
//! of the graded-dimension and height cross-checks.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::polyring::Rational;
use crate::series::PoincareSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchubertError {
    #[error("parts must be weakly decreasing and positive")]
    NotAPartition,
    #[error("partition does not fit the box")]
    OutsideBox,
}

/// Number of rows and column width bounding the partitions, i.e. the ambient
/// Grassmannian `CG_{rows+width, rows}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxShape {
    pub rows: u32,
    pub width: u32,
}

impl BoxShape {
    pub fn new(rows: u32, width: u32) -> Self {
        BoxShape { rows, width }
    }
}

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self, SchubertError> {
        let parts = parts.into();
        let ok = parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(SchubertError::NotAPartition)
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn fits_in_box(&self, shape: BoxShape) -> bool {
        self.parts.len() as u32 <= shape.rows
            && self.parts.first().is_none_or(|&p| p <= shape.width)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Partitions of size exactly `size` fitting the box, largest first part
/// first.
pub fn partitions_of_size_in_box(size: u32, shape: BoxShape) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::new();
    fn rec(rem: u32, max_part: u32, slots: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = max_part.min(rem);
        for p in (1..=hi).rev() {
            acc.push(p);
            rec(rem - p, p, slots - 1, acc, out);
            acc.pop();
        }
    }
    rec(size, shape.width, shape.rows, &mut acc, &mut out);
    out
}

/// All partitions fitting the box, grouped by size ascending; within a size,
/// largest first part first.
pub fn partitions_in_box(shape: BoxShape) -> Vec<Partition> {
    let mut out = Vec::new();
    for size in 0..=shape.rows * shape.width {
        out.extend(partitions_of_size_in_box(size, shape));
    }
    out
}

/// A linear combination of Schubert basis classes inside a fixed box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertElement {
    shape: BoxShape,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SchubertElement {
    pub fn zero(shape: BoxShape) -> Self {
        SchubertElement {
            shape,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit class `sigma_()`.
    pub fn unit(shape: BoxShape) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Partition::empty(), Rational::one());
        SchubertElement { shape, coeffs }
    }

    pub fn basis(shape: BoxShape, lambda: Partition) -> Result<Self, SchubertError> {
        if !lambda.fits_in_box(shape) {
            return Err(SchubertError::OutsideBox);
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda, Rational::one());
        Ok(SchubertElement { shape, coeffs })
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    /// Topological degree when every term has the same partition size.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut sizes = self.coeffs.keys().map(|p| p.size());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(2 * first)
    }

    /// Pieri rule: multiply by `sigma_r`, adding all horizontal strips of
    /// size `r` and discarding anything that leaves the box.
    pub fn pieri(&self, r: u32) -> Self {
        assert!(r >= 1, "pieri multiplies by sigma_r with r >= 1");
        let mut out = SchubertElement::zero(self.shape);
        let rows = self.shape.rows as usize;
        for (lambda, c) in &self.coeffs {
            if rows == 0 {
                continue;
            }
            let mut padded = vec![0u32; rows];
            padded[..lambda.parts.len()].copy_from_slice(&lambda.parts);
            let mut mu = vec![0u32; rows];
            strip_rec(&padded, self.shape.width, 0, r, &mut mu, &mut |mu| {
                let parts: Vec<u32> = mu.iter().copied().filter(|&p| p > 0).collect();
                let key = Partition { parts };
                let entry = out.coeffs.entry(key).or_insert_with(Rational::zero);
                *entry += c;
            });
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }
}

/// Enumerate `mu >= lambda` row by row with `mu/lambda` a horizontal strip of
/// total size `r`: `lambda[i] <= mu[i] <= lambda[i-1]` (and `<= width` in the
/// first row).
fn strip_rec(
    lambda: &[u32],
    width: u32,
    i: usize,
    rem: u32,
    mu: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if i == lambda.len() {
        if rem == 0 {
            emit(mu);
        }
        return;
    }
    let lo = lambda[i];
    let cap = if i == 0 { width } else { lambda[i - 1] };
    let hi = cap.min(lo + rem);
    for v in lo..=hi {
        mu[i] = v;
        strip_rec(lambda, width, i + 1, rem - (v - lo), mu, emit);
    }
    mu[i] = 0;
}

/// Largest `t` with `sigma_1^t != 0` under iterated Pieri steps; equals
/// `rows * width`.
pub fn sigma1_height(shape: BoxShape) -> u32 {
    let mut x = SchubertElement::unit(shape);
    let mut t = 0;
    loop {
        let next = x.pieri(1);
        if next.is_zero() {
            return t;
        }
        x = next;
        t += 1;
    }
}

/// Poincaré polynomial of `CG_{rows+width, rows}` in topological degrees
/// (coefficient of `x^{2j}` counts size-`j` partitions in the box), plus the
/// Euler characteristic `binomial(rows+width, rows)`.
pub fn betti_and_euler(shape: BoxShape) -> (PoincareSeries, u64) {
    let top = (shape.rows * shape.width) as usize;
    let mut coeffs = vec![0u64; 2 * top + 1];
    let mut euler = 0u64;
    for j in 0..=top as u32 {
        let count = partitions_of_size_in_box(j, shape).len() as u64;
        coeffs[2 * j as usize] = count;
        euler += count;
    }
    (PoincareSeries::from_coeffs(coeffs), euler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_in_box_2_2() {
        let got = partitions_in_box(BoxShape::new(2, 2));
        let want = vec![
            Partition::empty(),
            p(&[1]),
            p(&[2]),
            p(&[1, 1]),
            p(&[2, 1]),
            p(&[2, 2]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn partitions_in_degenerate_boxes() {
        assert_eq!(
            partitions_in_box(BoxShape::new(0, 5)),
            vec![Partition::empty()]
        );
        assert_eq!(
            partitions_in_box(BoxShape::new(3, 0)),
            vec![Partition::empty()]
        );
    }

    #[test]
    fn partitions_in_box_2_3_counts() {
        let shape = BoxShape::new(2, 3);
        let counts: Vec<usize> = (0..=6)
            .map(|j| partitions_of_size_in_box(j, shape).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 2, 1, 1]);
        assert_eq!(partitions_in_box(shape).len(), 10);
    }

    #[test]
    fn pieri_basic() {
        let shape = BoxShape::new(2, 2);
        let s1 = SchubertElement::basis(shape, p(&[1])).unwrap();
        let got = s1.pieri(1);
        assert_eq!(got.coeff(&p(&[2])), rat(1));
        assert_eq!(got.coeff(&p(&[1, 1])), rat(1));
        assert_eq!(got.terms().count(), 2);
    }

    #[test]
    fn pieri_box_truncation() {
        let shape = BoxShape::new(2, 2);
        let top = SchubertElement::basis(shape, p(&[2, 2])).unwrap();
        assert!(top.pieri(1).is_zero());
    }

    #[test]
    fn sigma1_fourth_power_is_two_tableaux() {
        let shape = BoxShape::new(2, 2);
        let mut x = SchubertElement::unit(shape);
        for _ in 0..4 {
            x = x.pieri(1);
        }
        assert_eq!(x.terms().count(), 1);
        assert_eq!(x.coeff(&p(&[2, 2])), rat(2));
    }

    #[test]
    fn sigma1_heights() {
        assert_eq!(sigma1_height(BoxShape::new(2, 2)), 4);
        assert_eq!(sigma1_height(BoxShape::new(1, 7)), 7);
        assert_eq!(sigma1_height(BoxShape::new(0, 3)), 0);
        assert_eq!(sigma1_height(BoxShape::new(3, 2)), 6);
    }

    #[test]
    fn betti_and_euler_examples() {
        let (series, euler) = betti_and_euler(BoxShape::new(2, 2));
        assert_eq!(series.coeffs(), &[1, 0, 1, 0, 2, 0, 1, 0, 1]);
        assert_eq!(euler, 6);

        let (series, euler) = betti_and_euler(BoxShape::new(1, 1));
        assert_eq!(series.coeffs(), &[1, 0, 1]);
        assert_eq!(euler, 2);

        let (_, euler) = betti_and_euler(BoxShape::new(2, 3));
        assert_eq!(euler, 10);
    }

    /// Vertical strips of size `r`, the dual of the Pieri rule; test-only
    /// oracle for the sigma_1^2 consistency identity.
    fn dual_pieri(x: &SchubertElement, r: u32) -> SchubertElement {
        let shape = x.shape();
        let mut out = SchubertElement::zero(shape);
        for (lambda, c) in x.terms() {
            let rows = shape.rows as usize;
            if rows == 0 {
                continue;
            }
            let mut padded = vec![0u32; rows];
            padded[..lambda.parts().len()].copy_from_slice(lambda.parts());
            // mu/lambda vertical: 0 <= mu[i] - lambda[i] <= 1 per row, sum r
            let picks = (0..rows).collect::<Vec<_>>();
            fn choose(
                picks: &[usize],
                start: usize,
                rem: u32,
                padded: &[u32],
                width: u32,
                acc: &mut Vec<usize>,
                out: &mut Vec<Vec<u32>>,
            ) {
                if rem == 0 {
                    let mut mu = padded.to_vec();
                    for &i in acc.iter() {
                        mu[i] += 1;
                    }
                    let valid = mu[0] <= width && mu.windows(2).all(|w| w[0] >= w[1]);
                    if valid {
                        out.push(mu);
                    }
                    return;
                }
                for (j, &i) in picks.iter().enumerate().skip(start) {
                    acc.push(i);
                    choose(picks, j + 1, rem - 1, padded, width, acc, out);
                    acc.pop();
                }
            }
            let mut mus = Vec::new();
            choose(
                &picks,
                0,
                r,
                &padded,
                shape.width,
                &mut Vec::new(),
                &mut mus,
            );
            for mu in mus {
                let parts: Vec<u32> = mu.into_iter().filter(|&q| q > 0).collect();
                let key = Partition::new(parts).unwrap();
                let entry = out.coeffs.entry(key).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    proptest! {
        /// sigma_1 * sigma_1 = sigma_2 + sigma_{1,1}, so two Pieri steps by 1
        /// equal one step by 2 plus one dual step by 2.
        #[test]
        fn pieri_squares_consistent(rows in 1u32..4, width in 1u32..4, size in 0u32..5) {
            let shape = BoxShape::new(rows, width);
            for lambda in partitions_of_size_in_box(size.min(rows * width), shape) {
                let x = SchubertElement::basis(shape, lambda).unwrap();
                let twice = x.pieri(1).pieri(1);
                let horizontal = x.pieri(2);
                let vertical = dual_pieri(&x, 2);
                // compare coefficientwise
                let mut sum = horizontal.clone();
                for (mu, c) in vertical.terms() {
                    let entry = sum.coeffs.entry(mu.clone()).or_insert_with(Rational::zero);
                    *entry += c;
                }
                sum.coeffs.retain(|_, v| !v.is_zero());
                prop_assert_eq!(twice, sum);
            }
        }

        /// Complementation symmetry: the Betti series of a box is palindromic.
        #[test]
        fn betti_palindromic(rows in 0u32..5, width in 0u32..5) {
            let (series, _) = betti_and_euler(BoxShape::new(rows, width));
            prop_assert!(series.is_palindromic_about((2 * rows * width) as usize));
        }

        /// The height always equals rows * width.
        #[test]
        fn sigma1_height_formula(rows in 0u32..4, width in 0u32..5) {
            prop_assert_eq!(sigma1_height(BoxShape::new(rows, width)), rows * width);
        }
    }
}
