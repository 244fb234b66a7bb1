//! Exact rational scalars and graded multivariate polynomials over a fixed
//! generator alphabet.
//!
//! Generators carry positive integer degrees (topological degrees: `p_i` in
//! 4i, `c_i` in 2i, Euler classes in the bundle rank). Everything is immutable
//! and commutative; odd exterior classes never enter this ring, they are
//! tracked separately by the presentation layer.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational scalar. Stored in lowest terms with a
/// positive denominator; all arithmetic is exact.
pub type Rational = BigRational;

/// Convenience constructor for integer scalars.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience constructor for fractions; `d` must be nonzero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("incompatible generator alphabets: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown generator `{name}` (available: {available})")]
    UnknownGenerator { name: String, available: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegreeGenerator(String),
}

/// A named generator with its topological degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ordered list of generators. The order is fixed for the lifetime of the
/// alphabet; monomial comparisons and canonical rendering depend on it.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorAlphabet {
    entries: Vec<Generator>,
}

impl GeneratorAlphabet {
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>, PolyError> {
        let entries: Vec<Generator> = entries
            .into_iter()
            .map(|(name, degree)| Generator {
                name: name.into(),
                degree,
            })
            .collect();
        for (i, g) in entries.iter().enumerate() {
            if g.degree == 0 {
                return Err(PolyError::ZeroDegreeGenerator(g.name.clone()));
            }
            if entries[..i].iter().any(|h| h.name == g.name) {
                return Err(PolyError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(GeneratorAlphabet { entries }))
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|g| g.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.entries.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|g| g.name.as_str())
    }

    fn describe(&self) -> String {
        self.entries
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Build a monomial from an exponent vector (one entry per generator).
    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), self.entries.len(), "exponent vector length");
        let degree = exps
            .iter()
            .zip(&self.entries)
            .map(|(&e, g)| e * g.degree)
            .sum();
        Monomial {
            exps: exps.to_vec(),
            degree,
        }
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial {
            exps: vec![0; self.entries.len()],
            degree: 0,
        }
    }
}

/// Exponent vector over an alphabet, with its weighted degree cached.
///
/// Ordering is graded: by degree first, ties broken lexicographically on the
/// exponent vector with the *earlier* generators weighing more, largest
/// first. With the alphabet `(p1, c2)` the degree-8 monomials order as
/// `p1^2, p1*c2, c2^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial, alphabet: &GeneratorAlphabet) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        alphabet.monomial(&exps)
    }

    fn render(&self, alphabet: &GeneratorAlphabet) -> String {
        let mut parts = Vec::new();
        for (e, g) in self.exps.iter().zip(alphabet.entries()) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of weighted degree exactly `d`, in canonical order.
pub fn monomials_of_degree(alphabet: &Arc<GeneratorAlphabet>, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut acc = vec![0u32; alphabet.len()];
    fn rec(
        alphabet: &GeneratorAlphabet,
        i: usize,
        rem: u32,
        acc: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == alphabet.len() {
            if rem == 0 {
                out.push(alphabet.monomial(acc));
            }
            return;
        }
        let g = alphabet.entries()[i].degree;
        for e in (0..=rem / g).rev() {
            acc[i] = e;
            rec(alphabet, i + 1, rem - e * g, acc, out);
        }
        acc[i] = 0;
    }
    rec(alphabet, 0, d, &mut acc, &mut out);
    out
}

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored; term iteration follows the canonical
/// monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    alphabet: Arc<GeneratorAlphabet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(alphabet: &Arc<GeneratorAlphabet>) -> Self {
        GradedPoly {
            alphabet: Arc::clone(alphabet),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<GeneratorAlphabet>) -> Self {
        Self::constant(alphabet, Rational::one())
    }

    pub fn constant(alphabet: &Arc<GeneratorAlphabet>, c: Rational) -> Self {
        let mut p = Self::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(alphabet.unit_monomial(), c);
        }
        p
    }

    pub fn generator(alphabet: &Arc<GeneratorAlphabet>, name: &str) -> Result<Self, PolyError> {
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownGenerator {
                name: name.to_string(),
                available: alphabet.describe(),
            })?;
        let mut exps = vec![0u32; alphabet.len()];
        exps[idx] = 1;
        Ok(Self::monomial_term(
            alphabet,
            alphabet.monomial(&exps),
            Rational::one(),
        ))
    }

    pub fn monomial_term(alphabet: &Arc<GeneratorAlphabet>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        alphabet: &Arc<GeneratorAlphabet>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(alphabet);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn alphabet(&self) -> &Arc<GeneratorAlphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(PolyError::AlphabetMismatch {
                left: self.alphabet.describe(),
                right: other.alphabet.describe(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2, &self.alphabet), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        GradedPoly {
            alphabet: Arc::clone(&self.alphabet),
            terms,
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        GradedPoly {
            alphabet: Arc::clone(&self.alphabet),
            terms,
        }
    }

    /// `self^t` with `pow(_, 0) = 1`.
    pub fn pow(&self, t: u32) -> Self {
        let mut out = Self::one(&self.alphabet);
        let mut base = self.clone();
        let mut t = t;
        while t > 0 {
            if t & 1 == 1 {
                out = out.checked_mul(&base).expect("same alphabet");
            }
            t >>= 1;
            if t > 0 {
                base = base.checked_mul(&base).expect("same alphabet");
            }
        }
        out
    }

    /// The part of the polynomial of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedPoly {
            alphabet: Arc::clone(&self.alphabet),
            terms,
        }
    }

    /// Degrees with a nonzero part, ascending.
    pub fn degrees_present(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees_present().len() <= 1
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let degs = self.degrees_present();
        match degs.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

fn render_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for GradedPoly {
    /// Canonical text form: terms in canonical monomial order, coefficients
    /// as `a` or `a/b`, powers as `name^k`, factors joined by `*`. Parsing
    /// this rendering with `exprparse` reproduces the polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mono = m.render(&self.alphabet);
            if mono.is_empty() {
                write!(f, "{}", render_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", render_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alpha_pc() -> Arc<GeneratorAlphabet> {
        GeneratorAlphabet::new([("p1", 4), ("c2", 4)]).unwrap()
    }

    fn alpha_ec() -> Arc<GeneratorAlphabet> {
        GeneratorAlphabet::new([("e", 2), ("c2", 4)]).unwrap()
    }

    fn gen(alpha: &Arc<GeneratorAlphabet>, name: &str) -> GradedPoly {
        GradedPoly::generator(alpha, name).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let a = alpha_pc();
        let p1 = gen(&a, "p1");
        assert!((&p1 + &p1.negated()).is_zero());
    }

    #[test]
    fn like_term_collection() {
        let a = alpha_pc();
        let p1 = gen(&a, "p1");
        let c2 = gen(&a, "c2");
        let s = &(&c2 + &p1) + &p1;
        assert_eq!(s.to_string(), "2*p1 + c2");
        assert_eq!(s.coeff(&a.monomial(&[1, 0])), rat(2));
    }

    #[test]
    fn grading_additivity() {
        let a = alpha_pc();
        let x = &gen(&a, "p1") + &gen(&a, "c2");
        let y = gen(&a, "c2");
        let prod = &x * &y;
        assert_eq!(prod.homogeneous_degree(), Some(8));
    }

    #[test]
    fn difference_of_squares() {
        let a = alpha_pc();
        let p1 = gen(&a, "p1");
        let c2 = gen(&a, "c2");
        let lhs = &(&c2 + &p1) * &(&c2 - &p1);
        let rhs = &(&c2 * &c2) - &(&p1 * &p1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_square_degree() {
        let a = alpha_ec();
        let e = gen(&a, "e");
        let e2 = &e * &e;
        assert_eq!(e2.homogeneous_degree(), Some(4));
    }

    #[test]
    fn one_is_identity() {
        let a = alpha_ec();
        let x = &gen(&a, "e") + &GradedPoly::constant(&a, ratio(1, 2));
        assert_eq!(&GradedPoly::one(&a) * &x, x);
    }

    #[test]
    fn pow_examples() {
        let a = alpha_pc();
        let p1 = gen(&a, "p1");
        assert_eq!(p1.pow(0), GradedPoly::one(&a));
        let c2 = gen(&a, "c2");
        let sq = (&c2 + &p1).pow(2);
        // p1^2 + 2*p1*c2 + c2^2 in canonical order
        assert_eq!(sq.to_string(), "p1^2 + 2*p1*c2 + c2^2");
        let e = gen(&alpha_ec(), "e");
        assert_eq!(e.pow(2).to_string(), "e^2");
    }

    #[test]
    fn monomials_of_degree_examples() {
        let a = alpha_ec();
        let ms = monomials_of_degree(&a, 4);
        assert_eq!(
            ms,
            vec![a.monomial(&[2, 0]), a.monomial(&[0, 1])],
            "degree 4 over {{e:2, c2:4}} is [e^2, c2]"
        );
        let b = GeneratorAlphabet::new([("p1", 4)]).unwrap();
        assert!(monomials_of_degree(&b, 6).is_empty());
        let c = alpha_pc();
        let ms = monomials_of_degree(&c, 8);
        assert_eq!(ms.len(), 3);
        assert_eq!(
            ms,
            vec![
                c.monomial(&[2, 0]),
                c.monomial(&[1, 1]),
                c.monomial(&[0, 2])
            ]
        );
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let x = gen(&alpha_pc(), "p1");
        let y = gen(&alpha_ec(), "e");
        assert!(matches!(
            x.checked_add(&y),
            Err(PolyError::AlphabetMismatch { .. })
        ));
        assert!(matches!(
            x.checked_mul(&y),
            Err(PolyError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn unknown_generator() {
        let a = alpha_pc();
        assert!(matches!(
            GradedPoly::generator(&a, "p2"),
            Err(PolyError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(
            GeneratorAlphabet::new([("p1", 4), ("p1", 8)]),
            Err(PolyError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            GeneratorAlphabet::new([("p1", 0)]),
            Err(PolyError::ZeroDegreeGenerator(_))
        ));
    }

    #[test]
    fn rational_string_round_trip() {
        for c in [rat(0), rat(7), rat(-3), ratio(22, 7), ratio(-5, 8)] {
            let s = render_rational(&c);
            let back: Rational = s.parse().unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn monomial_count_matches_generating_function() {
        // sum_d count(d) x^d == prod 1/(1 - x^deg), truncated
        let a = GeneratorAlphabet::new([("p1", 4), ("e", 2), ("c2", 4), ("c4", 8)]).unwrap();
        let series = crate::series::complete_intersection_series(&a.degrees(), &[], 24).unwrap();
        for d in 0..=24u32 {
            assert_eq!(
                monomials_of_degree(&a, d).len() as u64,
                series.coeff(d as usize),
                "degree {d}"
            );
        }
    }

    fn arb_poly(alpha: Arc<GeneratorAlphabet>) -> impl Strategy<Value = GradedPoly> {
        let n = alpha.len();
        proptest::collection::vec(
            (proptest::collection::vec(0u32..4, n), -6i64..7, 1i64..5),
            0..6,
        )
        .prop_map(move |terms| {
            GradedPoly::from_terms(
                &alpha,
                terms
                    .into_iter()
                    .map(|(exps, n, d)| (alpha.monomial(&exps), ratio(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_commutative(
            (a, b) in (Just(alpha_pc())).prop_flat_map(|al| (arb_poly(al.clone()), arb_poly(al)))
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associative(
            (a, b, c) in (Just(alpha_ec())).prop_flat_map(|al| {
                (arb_poly(al.clone()), arb_poly(al.clone()), arb_poly(al))
            })
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn homogeneous_parts_reassemble(
            a in Just(alpha_ec()).prop_flat_map(arb_poly)
        ) {
            let mut sum = GradedPoly::zero(a.alphabet());
            for d in a.degrees_present() {
                sum = &sum + &a.homogeneous_part(d);
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn product_of_homogeneous_is_homogeneous(
            (a, b) in (Just(alpha_pc())).prop_flat_map(|al| (arb_poly(al.clone()), arb_poly(al)))
        ) {
            let (pa, pb) = (a.homogeneous_part(4), b.homogeneous_part(8));
            let prod = &pa * &pb;
            if !prod.is_zero() {
                prop_assert_eq!(prod.homogeneous_degree(), Some(12));
            }
        }
    }
}
