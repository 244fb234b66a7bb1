//! Ring presentations and cohomological fact sheets for oriented isotropic
//! Grassmannians, oriented real Grassmannians with odd ambient dimension, and
//! the sphere identifications between them.
//!
//! The isotropic construction follows the transgression images
//! `d(x_{2i-1}) = sum_{j<=i/2} p_j c_{i-2j}`: a survivor sieve reduces each
//! differential against the previously accepted relations; nonzero reductions
//! become quotient relations, zero reductions leave an odd exterior class.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::idealalg::{HomogeneousIdeal, IdealError, QuotientRing};
use crate::polyring::{GeneratorAlphabet, GradedPoly, PolyError};
use crate::schubert::{partitions_of_size_in_box, BoxShape};
use crate::series::PoincareSeries;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid space parameters: {0}")]
pub struct SpaceError(pub String);

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("parameters out of range: {0}")]
    InvalidParameters(String),
    #[error("unsupported space: {0}")]
    Unsupported(String),
    #[error("top degree mismatch: quotient top {quotient_top} + exterior sum {exterior_sum} != dimension {dimension}")]
    TopDegreeMismatch {
        quotient_top: u64,
        exterior_sum: u64,
        dimension: u64,
    },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A closed manifold (or sphere) the toolkit reasons about.
///
/// `IsotropicOriented { n, k }` is the space of oriented k-dimensional
/// isotropic subspaces of a symplectic R^{2n}; its ambient dimension is `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceId {
    IsotropicOriented { n: u32, k: u32 },
    RealOriented { m: u32, l: u32 },
    ComplexGrass { n: u32, k: u32 },
    Sphere { d: u32 },
}

impl SpaceId {
    pub fn isotropic(n: u32, k: u32) -> Result<Self, SpaceError> {
        if n >= 1 && (1..=n).contains(&k) {
            Ok(SpaceId::IsotropicOriented { n, k })
        } else {
            Err(SpaceError(format!(
                "isotropic space needs 1 <= k <= n, got n={n}, k={k}"
            )))
        }
    }

    pub fn real_oriented(m: u32, l: u32) -> Result<Self, SpaceError> {
        if m >= 2 && (1..m).contains(&l) {
            Ok(SpaceId::RealOriented { m, l })
        } else {
            Err(SpaceError(format!(
                "real oriented Grassmannian needs m >= 2 and 1 <= l <= m-1, got m={m}, l={l}"
            )))
        }
    }

    pub fn complex(n: u32, k: u32) -> Result<Self, SpaceError> {
        if n >= 1 && k <= n {
            Ok(SpaceId::ComplexGrass { n, k })
        } else {
            Err(SpaceError(format!(
                "complex Grassmannian needs 0 <= k <= n, got n={n}, k={k}"
            )))
        }
    }

    pub fn sphere(d: u32) -> Result<Self, SpaceError> {
        if d >= 1 {
            Ok(SpaceId::Sphere { d })
        } else {
            Err(SpaceError("sphere dimension must be >= 1".into()))
        }
    }

    /// Manifold dimension.
    pub fn dimension(&self) -> u64 {
        match *self {
            SpaceId::IsotropicOriented { n, k } => {
                let (n, k) = (n as u64, k as u64);
                2 * k * (n - k) + k * (k + 1) / 2
            }
            SpaceId::RealOriented { m, l } => {
                let (m, l) = (m as u64, l as u64);
                l * (m - l)
            }
            SpaceId::ComplexGrass { n, k } => {
                let (n, k) = (n as u64, k as u64);
                2 * k * (n - k)
            }
            SpaceId::Sphere { d } => d as u64,
        }
    }

    /// Sphere dimension when the space is one of the recorded sphere
    /// identifications.
    pub fn sphere_equivalent(&self) -> Option<u32> {
        match *self {
            SpaceId::IsotropicOriented { n, k: 1 } => Some(2 * n - 1),
            SpaceId::RealOriented { m, l } if l == 1 || l == m - 1 => Some(m - 1),
            SpaceId::Sphere { d } => Some(d),
            _ => None,
        }
    }

    /// Replace the sphere-diffeomorphic real Grassmannians by their sphere.
    pub fn normalized(&self) -> SpaceId {
        match *self {
            SpaceId::RealOriented { m, l } if l == 1 || l == m - 1 => SpaceId::Sphere { d: m - 1 },
            other => other,
        }
    }

    /// Compact spec string, e.g. `I:10,3`, `RG:8,3`, `CG:4,2`, `S:7`.
    pub fn spec_string(&self) -> String {
        match *self {
            SpaceId::IsotropicOriented { n, k } => format!("I:{},{}", 2 * n, k),
            SpaceId::RealOriented { m, l } => format!("RG:{m},{l}"),
            SpaceId::ComplexGrass { n, k } => format!("CG:{n},{k}"),
            SpaceId::Sphere { d } => format!("S:{d}"),
        }
    }

    /// Parse the spec-string syntax. The isotropic form takes the ambient
    /// dimension literally: `I:10,3` is the space with n=5, k=3.
    pub fn parse_spec(s: &str) -> Result<Self, SpaceError> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| SpaceError(format!("expected TAG:params, got `{s}`")))?;
        let nums: Vec<u32> = rest
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| SpaceError(format!("non-numeric parameter in `{s}`")))?;
        match (tag, nums.as_slice()) {
            ("I", [ambient, k]) => {
                if ambient % 2 != 0 || *ambient == 0 {
                    return Err(SpaceError(format!(
                        "isotropic ambient dimension must be even and positive, got {ambient}"
                    )));
                }
                SpaceId::isotropic(ambient / 2, *k)
            }
            ("RG", [m, l]) => SpaceId::real_oriented(*m, *l),
            ("CG", [n, k]) => SpaceId::complex(*n, *k),
            ("S", [d]) => SpaceId::sphere(*d),
            _ => Err(SpaceError(format!(
                "unrecognized space spec `{s}` (expected I:2n,k | RG:m,l | CG:n,k | S:d)"
            ))),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            SpaceId::IsotropicOriented { .. } => "isotropic-oriented",
            SpaceId::RealOriented { .. } => "real-oriented",
            SpaceId::ComplexGrass { .. } => "complex",
            SpaceId::Sphere { .. } => "sphere",
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match *self {
            SpaceId::IsotropicOriented { n, k } => json!({"ambient": 2 * n, "n": n, "k": k}),
            SpaceId::RealOriented { m, l } => json!({"m": m, "l": l}),
            SpaceId::ComplexGrass { n, k } => json!({"n": n, "k": k}),
            SpaceId::Sphere { d } => json!({"d": d}),
        };
        json!({
            "id": self.spec_string(),
            "family": self.family_name(),
            "params": params,
            "dimension": self.dimension(),
        })
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

/// Cohomological facts used by the degree-obstruction criteria. All fields
/// are O(1) formulas so fact sheets stay cheap inside large scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactSheet {
    pub space: SpaceId,
    pub h1_rank: u32,
    /// Rank of H^4 for isotropic spaces and spheres (exact, including the
    /// rank-2 case k=4 where the Euler class also lives in degree 4 and the
    /// rank-0 case n-k=1). For real oriented Grassmannians with
    /// 2 <= l <= m-2 this records the certified line spanned by the first
    /// Pontryagin class; the criteria only ever use positivity.
    pub h4_rank: u32,
    pub h4_generator_name: Option<String>,
    /// Whether the unoriented companion space is orientable.
    pub orientable: bool,
    pub sphere_equivalent: Option<u32>,
}

impl FactSheet {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.spec_string(),
            "h1_rank": self.h1_rank,
            "h4_rank": self.h4_rank,
            "h4_generator": self.h4_generator_name,
            "unoriented_companion_orientable": self.orientable,
            "sphere_equivalent": self.sphere_equivalent.map(|d| format!("S:{d}")),
        })
    }
}

fn sphere_facts(space: SpaceId, d: u32, orientable: bool) -> FactSheet {
    FactSheet {
        space,
        h1_rank: u32::from(d == 1),
        h4_rank: u32::from(d == 4),
        h4_generator_name: None,
        orientable,
        sphere_equivalent: Some(d),
    }
}

/// Low-degree facts per space. Values are exact ring facts (cross-checked
/// against the built presentations in the test suites), not paraphrases.
pub fn fact_sheet(space: &SpaceId) -> FactSheet {
    match *space {
        SpaceId::IsotropicOriented { n, k } => {
            if k == 1 {
                return sphere_facts(*space, 2 * n - 1, true);
            }
            if k == n {
                return FactSheet {
                    space: *space,
                    h1_rank: 1,
                    h4_rank: 0,
                    h4_generator_name: None,
                    orientable: k % 2 == 1,
                    sphere_equivalent: None,
                };
            }
            // 2 <= k < n. Degree-4 ranks of A(n,k): the p1 class survives iff
            // a c2 generator exists (n-k >= 2); for k = 4 the Euler class is
            // an independent degree-4 class.
            let (h4, gen) = if n - k >= 2 {
                if k == 4 {
                    (2, Some("p1".to_string()))
                } else {
                    (1, Some("p1".to_string()))
                }
            } else if k == 4 {
                (1, Some("e".to_string()))
            } else {
                (0, None)
            };
            FactSheet {
                space: *space,
                h1_rank: 0,
                h4_rank: h4,
                h4_generator_name: gen,
                orientable: k % 2 == 1,
                sphere_equivalent: None,
            }
        }
        SpaceId::RealOriented { m, l } => {
            if l == 1 || l == m - 1 {
                return sphere_facts(*space, m - 1, m % 2 == 0);
            }
            FactSheet {
                space: *space,
                h1_rank: 0,
                h4_rank: 1,
                h4_generator_name: Some("p1".to_string()),
                orientable: m % 2 == 0,
                sphere_equivalent: None,
            }
        }
        SpaceId::ComplexGrass { n, k } => {
            let h4 = partitions_of_size_in_box(2, BoxShape::new(k, n - k)).len() as u32;
            FactSheet {
                space: *space,
                h1_rank: 0,
                h4_rank: h4,
                h4_generator_name: None,
                orientable: true,
                sphere_equivalent: None,
            }
        }
        SpaceId::Sphere { d } => sphere_facts(*space, d, true),
    }
}

// ---------------------------------------------------------------------------
// Isotropic construction

/// Alphabet for the transgression sieve of `I~(2n,k)`: Pontryagin generators
/// of the tautological bundle (Euler class replacing the top one for even
/// rank), then all Chern generators `c1..c_{n-k}` of the complementary
/// complex bundle.
pub fn sieve_alphabet(n: u32, k: u32) -> Arc<GeneratorAlphabet> {
    let mut entries: Vec<(String, u32)> = Vec::new();
    if k % 2 == 1 {
        for j in 1..=(k - 1) / 2 {
            entries.push((format!("p{j}"), 4 * j));
        }
    } else {
        for j in 1..k / 2 {
            entries.push((format!("p{j}"), 4 * j));
        }
        entries.push(("e".to_string(), k));
    }
    for t in 1..=n - k {
        entries.push((format!("c{t}"), 2 * t));
    }
    GeneratorAlphabet::new(entries).expect("valid sieve alphabet")
}

fn bundle_names_for_sieve(alphabet: &GeneratorAlphabet, n: u32, k: u32) -> Vec<String> {
    alphabet
        .entries()
        .iter()
        .map(|g| {
            if g.name.starts_with('c') {
                format!("gamma_{}", n - k)
            } else {
                format!("xi_{k}")
            }
        })
        .collect()
}

/// Image of `p_j` of the rank-k tautological bundle inside `alphabet`:
/// `p_0 = 1`, `p_j = 0` above the rank bound, and for even rank the top
/// class is the Euler square `e^2`.
fn pontryagin_image(alphabet: &Arc<GeneratorAlphabet>, k: u32, j: u32) -> GradedPoly {
    if j == 0 {
        return GradedPoly::one(alphabet);
    }
    let m = k / 2;
    if (k % 2 == 1 && j > (k - 1) / 2) || (k % 2 == 0 && j > m) {
        return GradedPoly::zero(alphabet);
    }
    if k % 2 == 0 && j == m {
        let e = GradedPoly::generator(alphabet, "e").expect("euler generator");
        return &e * &e;
    }
    GradedPoly::generator(alphabet, &format!("p{j}")).expect("pontryagin generator")
}

fn chern_image(alphabet: &Arc<GeneratorAlphabet>, bound: u32, t: u32) -> GradedPoly {
    if t == 0 {
        return GradedPoly::one(alphabet);
    }
    if t > bound {
        return GradedPoly::zero(alphabet);
    }
    GradedPoly::generator(alphabet, &format!("c{t}")).expect("chern generator")
}

fn differential_in(alphabet: &Arc<GeneratorAlphabet>, n: u32, k: u32, i: u32) -> GradedPoly {
    let mut acc = GradedPoly::zero(alphabet);
    for j in 0..=i / 2 {
        let p = pontryagin_image(alphabet, k, j);
        let c = chern_image(alphabet, n - k, i - 2 * j);
        acc = &acc + &(&p * &c);
    }
    acc
}

/// The transgression image `d(x_{2i-1}) = sum_{j=0}^{i/2} p_j c_{i-2j}` with
/// all truncation rules applied, over the sieve alphabet of `I~(2n,k)`.
pub fn differential(i: u32, n: u32, k: u32) -> Result<GradedPoly, BuildError> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&k) {
        return Err(BuildError::InvalidParameters(format!(
            "differential needs 1 <= i <= n and 1 <= k <= n, got i={i}, n={n}, k={k}"
        )));
    }
    Ok(differential_in(&sieve_alphabet(n, k), n, k, i))
}

/// How one sieve stage resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SieveOutcomeTag {
    /// Nonzero reduction at an even stage: a quotient relation.
    Relation,
    /// Zero reduction: the fiber class survives as an exterior generator of
    /// the stated degree.
    Survivor { degree: u32 },
    /// Nonzero reduction at an odd stage: the relation eliminates an
    /// odd-index Chern generator, consuming the fiber class.
    ConsumedEliminator,
}

#[derive(Debug, Clone)]
pub struct SieveStep {
    /// Stage index `i`; the fiber class has degree `2i - 1`.
    pub stage: u32,
    pub differential: GradedPoly,
    pub reduction: GradedPoly,
    pub outcome: SieveOutcomeTag,
}

#[derive(Debug, Clone)]
pub struct SieveTrace {
    pub steps: Vec<SieveStep>,
}

impl SieveTrace {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    let outcome = match &s.outcome {
                        SieveOutcomeTag::Relation => json!({"tag": "relation"}),
                        SieveOutcomeTag::Survivor { degree } => {
                            json!({"tag": "survivor", "degree": degree})
                        }
                        SieveOutcomeTag::ConsumedEliminator => {
                            json!({"tag": "consumed-eliminator"})
                        }
                    };
                    json!({
                        "stage": s.stage,
                        "fiber_degree": 2 * s.stage - 1,
                        "differential": s.differential.to_string(),
                        "reduction": s.reduction.to_string(),
                        "outcome": outcome,
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for SieveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let outcome = match &s.outcome {
                SieveOutcomeTag::Relation => "relation".to_string(),
                SieveOutcomeTag::Survivor { degree } => format!("survivor (degree {degree})"),
                SieveOutcomeTag::ConsumedEliminator => "eliminates a Chern generator".to_string(),
            };
            writeln!(
                f,
                "stage i={}: d(x_{}) = {}; reduction = {}; {}",
                s.stage,
                2 * s.stage - 1,
                s.differential,
                s.reduction,
                outcome
            )?;
        }
        Ok(())
    }
}

pub struct SieveResult {
    pub alphabet: Arc<GeneratorAlphabet>,
    /// Accepted relations, in stage order; the original differentials, not
    /// their reductions.
    pub relations: Vec<GradedPoly>,
    /// Exterior survivor degrees, ascending.
    pub exterior_degrees: Vec<u32>,
    pub trace: SieveTrace,
}

/// Run the survivor sieve for `I~(2n,k)`: reduce each differential modulo
/// the previously accepted relations; keep nonzero stages as relations and
/// record zero stages as exterior survivors.
pub fn survivor_sieve(n: u32, k: u32) -> Result<SieveResult, BuildError> {
    if !(1..n).contains(&k) {
        return Err(BuildError::InvalidParameters(format!(
            "sieve needs 1 <= k < n, got n={n}, k={k}"
        )));
    }
    let alphabet = sieve_alphabet(n, k);
    let mut relations: Vec<GradedPoly> = Vec::new();
    let mut exterior = Vec::new();
    let mut steps = Vec::new();
    for i in 1..=n {
        let d = differential_in(&alphabet, n, k, i);
        let quotient = QuotientRing::new(HomogeneousIdeal::new(
            Arc::clone(&alphabet),
            relations.clone(),
        )?);
        let reduction = quotient.normal_form(&d)?;
        let outcome = if reduction.is_zero() {
            exterior.push(2 * i - 1);
            SieveOutcomeTag::Survivor { degree: 2 * i - 1 }
        } else {
            relations.push(d.clone());
            if i % 2 == 0 {
                SieveOutcomeTag::Relation
            } else {
                SieveOutcomeTag::ConsumedEliminator
            }
        };
        steps.push(SieveStep {
            stage: i,
            differential: d,
            reduction,
            outcome,
        });
    }
    exterior.sort_unstable();
    Ok(SieveResult {
        alphabet,
        relations,
        exterior_degrees: exterior,
        trace: SieveTrace { steps },
    })
}

// ---------------------------------------------------------------------------
// Presentations

/// A graded quotient presentation tensored with an exterior algebra on odd
/// degrees; the cohomology model of one space.
pub struct Presentation {
    space: SpaceId,
    alphabet: Arc<GeneratorAlphabet>,
    bundles: Vec<String>,
    relations: Vec<GradedPoly>,
    exterior_degrees: Vec<u32>,
    quotient: QuotientRing,
}

impl Presentation {
    fn assemble(
        space: SpaceId,
        alphabet: Arc<GeneratorAlphabet>,
        bundles: Vec<String>,
        relations: Vec<GradedPoly>,
        exterior_degrees: Vec<u32>,
    ) -> Result<Self, BuildError> {
        debug_assert!(exterior_degrees.iter().all(|d| d % 2 == 1));
        let ideal = HomogeneousIdeal::new(Arc::clone(&alphabet), relations.clone())?;
        let quotient = QuotientRing::with_top_degree_hint(ideal, space.dimension() as u32);
        Ok(Presentation {
            space,
            alphabet,
            bundles,
            relations,
            exterior_degrees,
            quotient,
        })
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn alphabet(&self) -> &Arc<GeneratorAlphabet> {
        &self.alphabet
    }

    /// Bundle of origin per generator, parallel to the alphabet entries.
    pub fn bundles(&self) -> &[String] {
        &self.bundles
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn exterior_degrees(&self) -> &[u32] {
        &self.exterior_degrees
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.quotient.ideal().relation_degrees()
    }

    /// Socle degree of the quotient factor: sum of relation degrees minus
    /// sum of generator degrees (the relations form a regular sequence; the
    /// series cross-checks pin this down in the tests).
    pub fn expected_quotient_top(&self) -> u64 {
        let rels: u64 = self.relation_degrees().iter().map(|&d| d as u64).sum();
        let gens: u64 = self.alphabet.degrees().iter().map(|&d| d as u64).sum();
        rels - gens
    }

    /// Largest degree with a nonzero quotient slice, found by scanning.
    pub fn quotient_top_degree(&self) -> u64 {
        self.quotient
            .top_degree(self.expected_quotient_top() as u32)
            .unwrap_or(0) as u64
    }

    pub fn exterior_sum(&self) -> u64 {
        self.exterior_degrees.iter().map(|&d| d as u64).sum()
    }

    /// Top degree of the whole model: quotient top plus exterior degrees.
    pub fn top_degree(&self) -> u64 {
        self.quotient_top_degree() + self.exterior_sum()
    }

    /// Full Poincaré polynomial: quotient series times `prod (1 + x^d)` over
    /// the exterior degrees.
    pub fn full_poincare(&self) -> PoincareSeries {
        let top = self.top_degree() as usize;
        let mut series = self
            .quotient
            .poincare_polynomial(self.quotient_top_degree() as u32);
        for &d in &self.exterior_degrees {
            series = series.mul_one_plus_x_pow(d as usize, top);
        }
        series
    }

    /// The first Pontryagin class of the tautological bundle inside this
    /// alphabet: the generator `p1` when present, otherwise `e^2` for the
    /// rank-2 Euler class.
    pub fn p1_image(&self) -> Option<GradedPoly> {
        if self.alphabet.contains("p1") {
            return Some(GradedPoly::generator(&self.alphabet, "p1").expect("present"));
        }
        if let Some(idx) = self.alphabet.index_of("e") {
            if self.alphabet.entries()[idx].degree == 2 {
                let e = GradedPoly::generator(&self.alphabet, "e").expect("present");
                return Some(&e * &e);
            }
        }
        None
    }

    /// Termination cap for height searches: the quotient vanishes above the
    /// manifold dimension, so `dim/deg + 1` powers always suffice.
    pub fn default_height_cap(&self, x: &GradedPoly) -> u32 {
        let deg = x.homogeneous_degree().unwrap_or(1).max(1) as u64;
        (self.space.dimension() / deg + 1) as u32
    }

    /// Structured document, schema `iso-grass/presentation@1`.
    pub fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .alphabet
            .entries()
            .iter()
            .zip(&self.bundles)
            .map(|(g, b)| json!({"name": g.name, "degree": g.degree, "bundle": b}))
            .collect();
        json!({
            "format": "iso-grass/presentation@1",
            "space": self.space.to_json(),
            "generators": generators,
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "exterior_degrees": self.exterior_degrees,
            "top_degree": self.top_degree(),
        })
    }
}

/// Alphabet of the reduced quotient `A(n,k)`: the Pontryagin/Euler part plus
/// the even-index Chern generators only.
fn a_alphabet(n: u32, k: u32) -> Arc<GeneratorAlphabet> {
    let mut entries: Vec<(String, u32)> = Vec::new();
    if k % 2 == 1 {
        for j in 1..=(k - 1) / 2 {
            entries.push((format!("p{j}"), 4 * j));
        }
    } else {
        for j in 1..k / 2 {
            entries.push((format!("p{j}"), 4 * j));
        }
        entries.push(("e".to_string(), k));
    }
    for t in 1..=(n - k) / 2 {
        entries.push((format!("c{}", 2 * t), 4 * t));
    }
    GeneratorAlphabet::new(entries).expect("valid A alphabet")
}

/// The reduced quotient presentation `A(n,k)` on the even generators, with
/// the even-stage relations `sum_l p_l c_{2j-2l}` whose reduction against
/// the previously accepted ones is nonzero.
pub fn build_quotient_a(n: u32, k: u32) -> Result<Presentation, BuildError> {
    if !(2..n).contains(&k) {
        return Err(BuildError::InvalidParameters(format!(
            "quotient A(n,k) needs 2 <= k < n, got n={n}, k={k}"
        )));
    }
    let alphabet = a_alphabet(n, k);
    let bundles = bundle_names_for_sieve(&alphabet, n, k);
    let mut relations: Vec<GradedPoly> = Vec::new();
    for j in 1..=n / 2 {
        let mut candidate = GradedPoly::zero(&alphabet);
        for l in 0..=j {
            let p = pontryagin_image(&alphabet, k, l);
            let t = 2 * (j - l);
            let c = if t == 0 {
                GradedPoly::one(&alphabet)
            } else if t > n - k {
                GradedPoly::zero(&alphabet)
            } else {
                GradedPoly::generator(&alphabet, &format!("c{t}")).expect("even chern")
            };
            candidate = &candidate + &(&p * &c);
        }
        let quotient = QuotientRing::new(HomogeneousIdeal::new(
            Arc::clone(&alphabet),
            relations.clone(),
        )?);
        if !quotient.normal_form(&candidate)?.is_zero() {
            relations.push(candidate);
        }
    }
    let space = SpaceId::isotropic(n, k).expect("validated");
    Presentation::assemble(space, alphabet, bundles, relations, Vec::new())
}

/// The full cohomology model of `I~(2n,k)`: the sieve presentation (with its
/// Chern eliminators) tensored with the exterior survivors. Validates the
/// top-degree identity against the manifold dimension.
pub fn build_full_isotropic(n: u32, k: u32) -> Result<Presentation, BuildError> {
    if !(2..n).contains(&k) {
        return Err(BuildError::InvalidParameters(format!(
            "full isotropic model needs 2 <= k < n, got n={n}, k={k}"
        )));
    }
    let sieve = survivor_sieve(n, k)?;
    let space = SpaceId::isotropic(n, k).expect("validated");
    let bundles = bundle_names_for_sieve(&sieve.alphabet, n, k);
    let presentation = Presentation::assemble(
        space,
        sieve.alphabet,
        bundles,
        sieve.relations,
        sieve.exterior_degrees,
    )?;
    let quotient_top = presentation.quotient_top_degree();
    let exterior_sum = presentation.exterior_sum();
    let dimension = space.dimension();
    if quotient_top + exterior_sum != dimension {
        return Err(BuildError::TopDegreeMismatch {
            quotient_top,
            exterior_sum,
            dimension,
        });
    }
    Ok(presentation)
}

// ---------------------------------------------------------------------------
// Real oriented Grassmannians, odd ambient dimension

struct RealFactor {
    rank: u32,
    suffix: &'static str,
}

fn real_alphabet(m: u32, l: u32) -> (Arc<GeneratorAlphabet>, Vec<String>) {
    let factors = [
        RealFactor {
            rank: l,
            suffix: "",
        },
        RealFactor {
            rank: m - l,
            suffix: "'",
        },
    ];
    let mut entries: Vec<(String, u32)> = Vec::new();
    let mut bundles = Vec::new();
    for f in &factors {
        if f.rank % 2 == 0 {
            for j in 1..f.rank / 2 {
                entries.push((format!("p{j}{}", f.suffix), 4 * j));
                bundles.push(format!("xi_{}", f.rank));
            }
            if f.rank >= 2 {
                entries.push((format!("e{}", f.suffix), f.rank));
                bundles.push(format!("xi_{}", f.rank));
            }
        } else {
            for j in 1..=(f.rank - 1) / 2 {
                entries.push((format!("p{j}{}", f.suffix), 4 * j));
                bundles.push(format!("xi_{}", f.rank));
            }
        }
    }
    (
        GeneratorAlphabet::new(entries).expect("valid real alphabet"),
        bundles,
    )
}

fn real_pontryagin_image(
    alphabet: &Arc<GeneratorAlphabet>,
    rank: u32,
    suffix: &str,
    j: u32,
) -> GradedPoly {
    if j == 0 {
        return GradedPoly::one(alphabet);
    }
    if rank % 2 == 0 {
        let half = rank / 2;
        if j > half {
            return GradedPoly::zero(alphabet);
        }
        if j == half {
            let e = GradedPoly::generator(alphabet, &format!("e{suffix}")).expect("euler");
            return &e * &e;
        }
        GradedPoly::generator(alphabet, &format!("p{j}{suffix}")).expect("pontryagin")
    } else {
        if j > (rank - 1) / 2 {
            return GradedPoly::zero(alphabet);
        }
        GradedPoly::generator(alphabet, &format!("p{j}{suffix}")).expect("pontryagin")
    }
}

/// Cohomology presentation of the oriented real Grassmannian `RG~(m,l)` for
/// odd `m`: Pontryagin/Euler generators of both tautological factors modulo
/// the degree-4t components of their total Pontryagin product being trivial,
/// `t = 1 .. (m-1)/2`. Covers the sphere cases l=1 and l=m-1 as the rank-one
/// degenerations.
pub fn build_real_oriented_odd(m: u32, l: u32) -> Result<Presentation, BuildError> {
    if m % 2 == 0 {
        return Err(BuildError::Unsupported(format!(
            "real oriented presentations require odd ambient dimension; RG:{m},{l} has even m \
             (only the fact sheet and the height formula are available)"
        )));
    }
    if !(1..m).contains(&l) {
        return Err(BuildError::InvalidParameters(format!(
            "real oriented Grassmannian needs 1 <= l <= m-1, got m={m}, l={l}"
        )));
    }
    let (alphabet, bundles) = real_alphabet(m, l);
    let mut relations: Vec<GradedPoly> = Vec::new();
    for t in 1..=(m - 1) / 2 {
        let mut candidate = GradedPoly::zero(&alphabet);
        for a in 0..=t {
            let pa = real_pontryagin_image(&alphabet, l, "", a);
            let pb = real_pontryagin_image(&alphabet, m - l, "'", t - a);
            candidate = &candidate + &(&pa * &pb);
        }
        let quotient = QuotientRing::new(HomogeneousIdeal::new(
            Arc::clone(&alphabet),
            relations.clone(),
        )?);
        if !quotient.normal_form(&candidate)?.is_zero() {
            relations.push(candidate);
        }
    }
    let space = SpaceId::real_oriented(m, l).expect("validated");
    let presentation = Presentation::assemble(space, alphabet, bundles, relations, Vec::new())?;
    let quotient_top = presentation.quotient_top_degree();
    let dimension = space.dimension();
    if quotient_top != dimension {
        return Err(BuildError::TopDegreeMismatch {
            quotient_top,
            exterior_sum: 0,
            dimension,
        });
    }
    Ok(presentation)
}

// ---------------------------------------------------------------------------
// Closed-form degree data and the survivor-set formula comparison

/// Degree data of a presentation without building the ring: generator
/// degrees of the reduced quotient, relation degrees, exterior degrees.
/// Validated against the sieve for every (n,k) in the test ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationShape {
    pub generator_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    pub exterior_degrees: Vec<u32>,
}

impl PresentationShape {
    pub fn quotient_top(&self) -> u64 {
        let rels: u64 = self.relation_degrees.iter().map(|&d| d as u64).sum();
        let gens: u64 = self.generator_degrees.iter().map(|&d| d as u64).sum();
        rels - gens
    }

    pub fn exterior_sum(&self) -> u64 {
        self.exterior_degrees.iter().map(|&d| d as u64).sum()
    }

    pub fn top_degree(&self) -> u64 {
        self.quotient_top() + self.exterior_sum()
    }

    /// Full rank series: complete-intersection quotient series times the
    /// exterior factors.
    pub fn rank_series(&self) -> PoincareSeries {
        let top = self.top_degree() as usize;
        let mut series = crate::series::complete_intersection_series(
            &self.generator_degrees,
            &self.relation_degrees,
            self.quotient_top() as u32,
        )
        .expect("relation degrees form a regular sequence");
        for &d in &self.exterior_degrees {
            series = series.mul_one_plus_x_pow(d as usize, top);
        }
        series
    }
}

/// Closed-form shape of the isotropic model, valid for `1 <= k <= n`: even
/// stages `j = 1 .. floor(k/2) + floor((n-k)/2)` are relations, later even
/// stages and the odd stages above `n-k` are exterior survivors.
pub fn isotropic_shape(n: u32, k: u32) -> Result<PresentationShape, BuildError> {
    if !(1..=n).contains(&k) {
        return Err(BuildError::InvalidParameters(format!(
            "isotropic shape needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut generator_degrees = Vec::new();
    if k % 2 == 1 {
        generator_degrees.extend((1..=(k - 1) / 2).map(|j| 4 * j));
    } else {
        generator_degrees.extend((1..k / 2).map(|j| 4 * j));
        generator_degrees.push(k);
    }
    generator_degrees.extend((1..=(n - k) / 2).map(|t| 4 * t));
    let relation_count = k / 2 + (n - k) / 2;
    let relation_degrees: Vec<u32> = (1..=relation_count).map(|j| 4 * j).collect();
    let mut exterior_degrees: Vec<u32> = (1..=n)
        .filter(|i| i % 2 == 1 && *i > n - k)
        .map(|i| 2 * i - 1)
        .collect();
    exterior_degrees.extend((relation_count + 1..=n / 2).map(|j| 4 * j - 1));
    exterior_degrees.sort_unstable();
    Ok(PresentationShape {
        generator_degrees,
        relation_degrees,
        exterior_degrees,
    })
}

/// Closed-form shape of the odd-ambient real oriented model, `1 <= l <= m-1`.
pub fn real_oriented_shape(m: u32, l: u32) -> Result<PresentationShape, BuildError> {
    if m % 2 == 0 {
        return Err(BuildError::Unsupported(format!(
            "real oriented shapes require odd ambient dimension, got m={m}"
        )));
    }
    if !(1..m).contains(&l) {
        return Err(BuildError::InvalidParameters(format!(
            "real oriented shape needs 1 <= l <= m-1, got m={m}, l={l}"
        )));
    }
    let mut generator_degrees = Vec::new();
    for rank in [l, m - l] {
        if rank % 2 == 0 {
            generator_degrees.extend((1..rank / 2).map(|j| 4 * j));
            if rank >= 2 {
                generator_degrees.push(rank);
            }
        } else {
            generator_degrees.extend((1..=(rank - 1) / 2).map(|j| 4 * j));
        }
    }
    let relation_degrees: Vec<u32> = (1..=(m - 1) / 2).map(|t| 4 * t).collect();
    Ok(PresentationShape {
        generator_degrees,
        relation_degrees,
        exterior_degrees: Vec::new(),
    })
}

/// The literal arithmetic-progression reading of the published survivor-set
/// formula: consecutive odd integers from `4*floor((n-k+1)/2) + 1` up to
/// `2n-3` when both n and k are even, else up to `2n-1`. Exposed for
/// comparison only; the sieve is authoritative.
pub fn remark_exterior_formula(n: u32, k: u32) -> Vec<u32> {
    let start = 4 * ((n - k + 1) / 2) + 1;
    let end = if n % 2 == 0 && k % 2 == 0 {
        2 * n - 3
    } else {
        2 * n - 1
    };
    if start > end {
        return Vec::new();
    }
    (start..=end).step_by(2).collect()
}

/// Side-by-side comparison of the sieve's exterior degrees with the literal
/// formula reading, arbitrated by the top-degree identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkComparison {
    pub space: SpaceId,
    pub formula_degrees: Vec<u32>,
    pub sieve_degrees: Vec<u32>,
    /// Whether quotient top + formula degrees hit the manifold dimension.
    pub formula_top_consistent: bool,
    pub agrees: bool,
}

impl RemarkComparison {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.spec_string(),
            "formula_degrees": self.formula_degrees,
            "sieve_degrees": self.sieve_degrees,
            "formula_top_consistent": self.formula_top_consistent,
            "agrees": self.agrees,
        })
    }
}

pub fn remark_comparison(n: u32, k: u32) -> Result<RemarkComparison, BuildError> {
    let shape = isotropic_shape(n, k)?;
    let space = SpaceId::isotropic(n, k).expect("validated");
    let formula = remark_exterior_formula(n, k);
    let formula_sum: u64 = formula.iter().map(|&d| d as u64).sum();
    let formula_top_consistent = shape.quotient_top() + formula_sum == space.dimension();
    let agrees = formula == shape.exterior_degrees;
    Ok(RemarkComparison {
        space,
        formula_degrees: formula,
        sieve_degrees: shape.exterior_degrees,
        formula_top_consistent,
        agrees,
    })
}
