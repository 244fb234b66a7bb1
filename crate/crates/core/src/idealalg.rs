//! Exact linear algebra on graded slices of homogeneous ideals: slice ranks,
//! normal forms, graded dimensions of quotients and nilpotency heights.
//!
//! No Groebner machinery: every query here is homogeneous and bounded in
//! degree, so each degree slice is handled by exact row reduction over the
//! monomial basis of that degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{One, Zero};
use thiserror::Error;

use crate::polyring::{monomials_of_degree, GeneratorAlphabet, GradedPoly, Monomial, Rational};
use crate::series::{complete_intersection_series as ci_series, PoincareSeries, SeriesError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("relation {index} uses a different alphabet")]
    ForeignRelation { index: usize },
    #[error(transparent)]
    Poly(#[from] crate::polyring::PolyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeightError {
    /// The power `x^cap` is still nonzero in the quotient; raise the cap or
    /// report the element as not visibly nilpotent.
    #[error("height cap {cap} reached with a nonzero power")]
    CapExceeded { cap: u32 },
    #[error("height is defined for nonzero homogeneous elements of positive degree")]
    NotHomogeneousPositive,
}

/// A homogeneous ideal: nonzero homogeneous relations over a shared alphabet.
#[derive(Debug)]
pub struct HomogeneousIdeal {
    alphabet: Arc<GeneratorAlphabet>,
    relations: Vec<GradedPoly>,
}

impl HomogeneousIdeal {
    pub fn new(
        alphabet: Arc<GeneratorAlphabet>,
        relations: Vec<GradedPoly>,
    ) -> Result<Self, IdealError> {
        for (index, r) in relations.iter().enumerate() {
            if r.alphabet() != &alphabet {
                return Err(IdealError::ForeignRelation { index });
            }
            if r.is_zero() {
                return Err(IdealError::ZeroRelation { index });
            }
            if !r.is_homogeneous() {
                return Err(IdealError::InhomogeneousRelation { index });
            }
        }
        Ok(HomogeneousIdeal {
            alphabet,
            relations,
        })
    }

    pub fn alphabet(&self) -> &Arc<GeneratorAlphabet> {
        &self.alphabet
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations
            .iter()
            .map(|r| r.homogeneous_degree().expect("validated homogeneous"))
            .collect()
    }

    /// Rank over Q of the degree-`d` slice of the ideal.
    pub fn slice_rank(&self, d: u32) -> usize {
        self.slice_echelon(d).rows.len()
    }

    /// Reduced row echelon form of the degree-`d` slice, rows spanning
    /// `{ m * r : r relation, m monomial, deg(m*r) = d }`.
    ///
    /// Columns are scanned in the *reverse* of the canonical monomial order,
    /// so pivots prefer the lex-smallest monomials (the `c`-heavy ones) and
    /// the standard monomials concentrate on the leading generators. This is
    /// what makes `nf(c2) = -e^2` rather than the other way around.
    fn slice_echelon(&self, d: u32) -> SliceEchelon {
        let mut monos = monomials_of_degree(&self.alphabet, d);
        monos.reverse();
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let width = monos.len();
        let mut ech = SliceEchelon {
            monos,
            index,
            rows: Vec::new(),
            pivot_of_col: HashMap::new(),
        };
        for r in &self.relations {
            let rdeg = r.homogeneous_degree().expect("validated homogeneous");
            if rdeg > d {
                continue;
            }
            for m in monomials_of_degree(&self.alphabet, d - rdeg) {
                let shifted = GradedPoly::monomial_term(&self.alphabet, m, Rational::one());
                let product = shifted.checked_mul(r).expect("same alphabet");
                let mut v = vec![Rational::zero(); width];
                for (mono, c) in product.terms() {
                    v[ech.index[mono]] = c.clone();
                }
                ech.insert_row(v);
            }
        }
        ech.rows.sort_by_key(|row| row.pivot);
        ech
    }
}

struct EchelonRow {
    pivot: usize,
    entries: Vec<Rational>,
}

struct SliceEchelon {
    /// Monomials in elimination (column) order.
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<EchelonRow>,
    pivot_of_col: HashMap<usize, usize>,
}

impl SliceEchelon {
    /// Reduce `v` against the current rows in place; returns true if anything
    /// remains.
    fn reduce(&self, v: &mut [Rational]) -> bool {
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if !c.is_zero() {
                for (a, b) in v.iter_mut().zip(&row.entries) {
                    if !b.is_zero() {
                        *a -= &c * b;
                    }
                }
            }
        }
        v.iter().any(|a| !a.is_zero())
    }

    fn insert_row(&mut self, mut v: Vec<Rational>) {
        if !self.reduce(&mut v) {
            return;
        }
        let pivot = v.iter().position(|a| !a.is_zero()).expect("nonzero row");
        let inv = v[pivot].clone();
        for a in v.iter_mut() {
            if !a.is_zero() {
                *a /= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            let c = row.entries[pivot].clone();
            if !c.is_zero() {
                for (a, b) in row.entries.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a -= &c * b;
                    }
                }
            }
        }
        self.pivot_of_col.insert(pivot, self.rows.len());
        self.rows.push(EchelonRow { pivot, entries: v });
    }
}

/// A graded quotient ring, queried one degree slice at a time. Echelon data
/// is cached per degree behind a mutex so shared references stay cheap.
#[derive(Debug)]
pub struct QuotientRing {
    ideal: HomogeneousIdeal,
    top_degree_hint: Option<u32>,
    cache: Mutex<HashMap<u32, Arc<SliceData>>>,
}

#[derive(Debug)]
struct SliceData {
    /// Column order (reverse canonical) of the slice.
    monos: Vec<Monomial>,
    /// Reduced rows as (pivot column, entries).
    rows: Vec<(usize, Vec<Rational>)>,
}

impl QuotientRing {
    pub fn new(ideal: HomogeneousIdeal) -> Self {
        QuotientRing {
            ideal,
            top_degree_hint: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_top_degree_hint(ideal: HomogeneousIdeal, hint: u32) -> Self {
        QuotientRing {
            ideal,
            top_degree_hint: Some(hint),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    pub fn alphabet(&self) -> &Arc<GeneratorAlphabet> {
        self.ideal.alphabet()
    }

    pub fn top_degree_hint(&self) -> Option<u32> {
        self.top_degree_hint
    }

    fn slice(&self, d: u32) -> Arc<SliceData> {
        if let Some(hit) = self.cache.lock().unwrap().get(&d) {
            return Arc::clone(hit);
        }
        let ech = self.ideal.slice_echelon(d);
        let data = Arc::new(SliceData {
            monos: ech.monos,
            rows: ech.rows.into_iter().map(|r| (r.pivot, r.entries)).collect(),
        });
        self.cache.lock().unwrap().insert(d, Arc::clone(&data));
        data
    }

    /// Residue of `x` modulo the ideal, expressed over the standard
    /// monomials. Linear, idempotent, and `nf(x) = 0` iff `x` lies in the
    /// ideal.
    pub fn normal_form(&self, x: &GradedPoly) -> Result<GradedPoly, IdealError> {
        if x.alphabet() != self.alphabet() {
            return Err(IdealError::ForeignRelation { index: 0 });
        }
        let mut out = GradedPoly::zero(self.alphabet());
        for d in x.degrees_present() {
            let part = x.homogeneous_part(d);
            let slice = self.slice(d);
            let index: HashMap<&Monomial, usize> = slice
                .monos
                .iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let mut v = vec![Rational::zero(); slice.monos.len()];
            for (m, c) in part.terms() {
                v[index[m]] = c.clone();
            }
            for (pivot, entries) in &slice.rows {
                let c = v[*pivot].clone();
                if !c.is_zero() {
                    for (a, b) in v.iter_mut().zip(entries) {
                        if !b.is_zero() {
                            *a -= &c * b;
                        }
                    }
                }
            }
            let residue = GradedPoly::from_terms(
                self.alphabet(),
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (slice.monos[i].clone(), c)),
            );
            out = out.checked_add(&residue).expect("same alphabet");
        }
        Ok(out)
    }

    pub fn contains(&self, x: &GradedPoly) -> Result<bool, IdealError> {
        Ok(self.normal_form(x)?.is_zero())
    }

    /// Dimension over Q of the degree-`d` part of the quotient.
    pub fn graded_dimension(&self, d: u32) -> usize {
        let slice = self.slice(d);
        slice.monos.len() - slice.rows.len()
    }

    /// Sum of graded dimensions as a series, up to `max_degree` inclusive.
    pub fn poincare_polynomial(&self, max_degree: u32) -> PoincareSeries {
        let coeffs = (0..=max_degree)
            .map(|d| self.graded_dimension(d) as u64)
            .collect();
        PoincareSeries::from_coeffs(coeffs)
    }

    /// Largest degree `<= scan_limit` with nonzero graded dimension.
    pub fn top_degree(&self, scan_limit: u32) -> Option<u32> {
        (0..=scan_limit)
            .rev()
            .find(|&d| self.graded_dimension(d) > 0)
    }

    /// Largest `t <= cap` with `nf(x^t) != 0`, by iterated normal-form
    /// powering. Returns 0 when `nf(x) = 0`; `CapExceeded` when even `x^cap`
    /// is nonzero, so nilpotence was not certified.
    pub fn height(&self, x: &GradedPoly, cap: u32) -> Result<u32, HeightError> {
        let positive = x.homogeneous_degree().map(|d| d > 0).unwrap_or(false);
        if !positive {
            if x.is_zero() {
                return Ok(0);
            }
            return Err(HeightError::NotHomogeneousPositive);
        }
        let mut acc = self
            .normal_form(x)
            .map_err(|_| HeightError::NotHomogeneousPositive)?;
        if acc.is_zero() {
            return Ok(0);
        }
        for t in 1..=cap {
            let next = acc.checked_mul(x).expect("same alphabet");
            let next = self
                .normal_form(&next)
                .map_err(|_| HeightError::NotHomogeneousPositive)?;
            if next.is_zero() {
                return Ok(t);
            }
            acc = next;
        }
        Err(HeightError::CapExceeded { cap })
    }
}

/// Truncated series `prod (1 - x^{d_rel}) / prod (1 - x^{d_gen})` for a
/// purported regular sequence over `alphabet`.
pub fn complete_intersection_series(
    alphabet: &GeneratorAlphabet,
    relation_degrees: &[u32],
    max_degree: u32,
) -> Result<PoincareSeries, SeriesError> {
    ci_series(&alphabet.degrees(), relation_degrees, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, ratio};
    use proptest::prelude::*;

    /// Q[e,c2]/(c2 + e^2, e^2*c2), the running example; isomorphic to
    /// Q[e]/(e^4).
    fn example_quotient() -> QuotientRing {
        let a = GeneratorAlphabet::new([("e", 2), ("c2", 4)]).unwrap();
        let e = GradedPoly::generator(&a, "e").unwrap();
        let c2 = GradedPoly::generator(&a, "c2").unwrap();
        let e2 = &e * &e;
        let r1 = &c2 + &e2;
        let r2 = &e2 * &c2;
        QuotientRing::new(HomogeneousIdeal::new(a, vec![r1, r2]).unwrap())
    }

    #[test]
    fn slice_rank_examples() {
        let q = example_quotient();
        assert_eq!(q.ideal().slice_rank(4), 1);
        // below every relation degree: no rows
        assert_eq!(q.ideal().slice_rank(2), 0);
        // degree 8: the three monomials e^4, e^2*c2, c2^2 are all in the
        // ideal (e^4 = e^2(c2+e^2) - e^2c2, c2^2 = c2(c2+e^2) - e^2c2), so
        // the slice has full rank 3; consistent with graded dimension 0.
        assert_eq!(q.ideal().slice_rank(8), 3);
    }

    #[test]
    fn normal_form_examples() {
        let q = example_quotient();
        let a = q.alphabet().clone();
        let e = GradedPoly::generator(&a, "e").unwrap();
        let c2 = GradedPoly::generator(&a, "c2").unwrap();
        let e2 = &e * &e;
        assert_eq!(q.normal_form(&c2).unwrap(), e2.negated());
        assert!(q.normal_form(&e2.pow(2)).unwrap().is_zero());
        let one = GradedPoly::one(&a);
        assert_eq!(q.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn graded_dimension_examples() {
        let q = example_quotient();
        let dims: Vec<usize> = [0u32, 2, 4, 6, 8]
            .iter()
            .map(|&d| q.graded_dimension(d))
            .collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 0], "the ring is Q[e]/(e^4)");

        let free = QuotientRing::new(
            HomogeneousIdeal::new(GeneratorAlphabet::new([("p1", 4)]).unwrap(), vec![]).unwrap(),
        );
        for t in 0..5 {
            assert_eq!(free.graded_dimension(4 * t), 1);
        }
        assert_eq!(q.graded_dimension(0), 1);
    }

    #[test]
    fn height_examples() {
        let q = example_quotient();
        let a = q.alphabet().clone();
        let e = GradedPoly::generator(&a, "e").unwrap();
        assert_eq!(q.height(&e, 10).unwrap(), 3);
        let e2 = &e * &e;
        assert_eq!(q.height(&e2, 10).unwrap(), 1);

        // cap too small to certify nilpotence
        assert_eq!(q.height(&e, 2), Err(HeightError::CapExceeded { cap: 2 }));

        // p1 with image 0: Q[p1, e]/(p1, e^2)
        let b = GeneratorAlphabet::new([("p1", 4), ("e", 4)]).unwrap();
        let p1 = GradedPoly::generator(&b, "p1").unwrap();
        let eb = GradedPoly::generator(&b, "e").unwrap();
        let q2 = QuotientRing::new(HomogeneousIdeal::new(b, vec![p1.clone(), &eb * &eb]).unwrap());
        assert_eq!(q2.height(&p1, 10).unwrap(), 0);
    }

    #[test]
    fn poincare_polynomial_examples() {
        let q = example_quotient();
        assert_eq!(
            q.poincare_polynomial(8).coeffs(),
            &[1, 0, 1, 0, 1, 0, 1],
            "1 + x^2 + x^4 + x^6"
        );
        let free = QuotientRing::new(
            HomogeneousIdeal::new(GeneratorAlphabet::new([("p1", 4)]).unwrap(), vec![]).unwrap(),
        );
        assert_eq!(
            free.poincare_polynomial(12).coeffs(),
            &[1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]
        );
        let a = GeneratorAlphabet::new([("p1", 4)]).unwrap();
        let p1 = GradedPoly::generator(&a, "p1").unwrap();
        let trunc = QuotientRing::new(HomogeneousIdeal::new(a, vec![p1.pow(2)]).unwrap());
        assert_eq!(trunc.poincare_polynomial(8).coeffs(), &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn ci_series_matches_example_quotient() {
        let q = example_quotient();
        let s =
            complete_intersection_series(q.alphabet(), &q.ideal().relation_degrees(), 8).unwrap();
        assert_eq!(s, q.poincare_polynomial(8));
    }

    #[test]
    fn rejects_bad_relations() {
        let a = GeneratorAlphabet::new([("e", 2)]).unwrap();
        let zero = GradedPoly::zero(&a);
        assert!(matches!(
            HomogeneousIdeal::new(a.clone(), vec![zero]),
            Err(IdealError::ZeroRelation { .. })
        ));
        let e = GradedPoly::generator(&a, "e").unwrap();
        let mixed = &e + &GradedPoly::one(&a);
        assert!(matches!(
            HomogeneousIdeal::new(a, vec![mixed]),
            Err(IdealError::InhomogeneousRelation { .. })
        ));
    }

    fn arb_homogeneous(q: &QuotientRing, d: u32) -> impl Strategy<Value = GradedPoly> {
        let alpha = q.alphabet().clone();
        let monos = monomials_of_degree(&alpha, d);
        proptest::collection::vec((-5i64..6, 1i64..4), monos.len()).prop_map(move |cs| {
            GradedPoly::from_terms(
                &alpha,
                monos
                    .iter()
                    .cloned()
                    .zip(cs.into_iter().map(|(n, dd)| ratio(n, dd))),
            )
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_linear((x, y, s) in {
            let q = example_quotient();
            (arb_homogeneous(&q, 6), arb_homogeneous(&q, 6), -4i64..5)
        }) {
            let q = example_quotient();
            let lhs = q.normal_form(&(&x.scaled(&rat(s)) + &y)).unwrap();
            let rhs = &q.normal_form(&x).unwrap().scaled(&rat(s)) + &q.normal_form(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normal_form_idempotent(x in arb_homogeneous(&example_quotient(), 8)) {
            let q = example_quotient();
            let nf = q.normal_form(&x).unwrap();
            prop_assert_eq!(q.normal_form(&nf).unwrap(), nf);
        }

        #[test]
        fn multiples_of_relations_vanish(exps in proptest::collection::vec(0u32..3, 2)) {
            let q = example_quotient();
            let m = q.alphabet().monomial(&exps);
            let shift = GradedPoly::monomial_term(q.alphabet(), m, rat(1));
            for r in q.ideal().relations() {
                prop_assert!(q.normal_form(&(&shift * r)).unwrap().is_zero());
            }
        }

        #[test]
        fn height_scale_invariant(n in 1i64..9, d in 1i64..5) {
            let q = example_quotient();
            let e = GradedPoly::generator(q.alphabet(), "e").unwrap();
            let scaled = e.scaled(&ratio(n, d));
            prop_assert_eq!(q.height(&scaled, 10).unwrap(), q.height(&e, 10).unwrap());
        }
    }
}
