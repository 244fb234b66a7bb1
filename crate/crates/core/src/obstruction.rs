//! Brouwer-degree obstructions between equal-dimensional spaces.
//!
//! A map of nonzero degree pulls rational cohomology back injectively, so a
//! target invariant exceeding the matching source invariant forces degree
//! zero. The criteria run in a fixed order (sphere target, identical spaces,
//! H^1, H^4, p1-height, graded-rank comparison) and every evaluation is
//! recorded in the verdict's reason trace with its numeric values.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::idealalg::QuotientRing;
use crate::presentations::{
    build_quotient_a, fact_sheet, isotropic_shape, real_oriented_shape, SpaceId,
};
use crate::schubert::{betti_and_euler, sigma1_height, BoxShape};
use crate::series::PoincareSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("dimension mismatch: source has dimension {source_dim}, target {target_dim}")]
    DimensionMismatch { source_dim: u64, target_dim: u64 },
    #[error("unsupported space for verdicts: {0}")]
    UnsupportedSpace(String),
    #[error("p1 height formula undefined: {0}")]
    HeightUndefined(String),
}

/// Manifold dimension of a space.
pub fn dimension(space: &SpaceId) -> u64 {
    space.dimension()
}

/// `floor(k/2) * floor((n-k)/2)` for isotropic spaces with `2 <= k < n`,
/// `floor(l/2) * floor((m-l)/2)` for real oriented spaces with
/// `2 <= l <= m-2`; the nilpotency height of the first Pontryagin class.
pub fn p1_height_formula(space: &SpaceId) -> Result<u64, ObstructionError> {
    match *space {
        SpaceId::IsotropicOriented { n, k } if (2..n).contains(&k) => {
            Ok((k as u64 / 2) * ((n - k) as u64 / 2))
        }
        SpaceId::RealOriented { m, l } if l >= 2 && l + 2 <= m => {
            Ok((l as u64 / 2) * ((m - l) as u64 / 2))
        }
        other => Err(ObstructionError::HeightUndefined(format!(
            "{} has no p1 height in this toolkit",
            other.spec_string()
        ))),
    }
}

/// Full rank series of a space's rational cohomology, from the closed-form
/// presentation shapes. `None` when the toolkit has no model (real oriented
/// with even ambient dimension, excluding the sphere cases).
pub fn rank_series(space: &SpaceId) -> Option<PoincareSeries> {
    let space = space.normalized();
    match space {
        SpaceId::IsotropicOriented { n, k } => Some(
            isotropic_shape(n, k)
                .expect("valid parameters")
                .rank_series(),
        ),
        SpaceId::RealOriented { m, l } => {
            if m % 2 == 1 {
                Some(
                    real_oriented_shape(m, l)
                        .expect("valid parameters")
                        .rank_series(),
                )
            } else {
                None
            }
        }
        SpaceId::ComplexGrass { n, k } => Some(betti_and_euler(BoxShape::new(k, n - k)).0),
        SpaceId::Sphere { d } => {
            let mut coeffs = vec![0u64; d as usize + 1];
            coeffs[0] = 1;
            coeffs[d as usize] += 1;
            Some(PoincareSeries::from_coeffs(coeffs))
        }
    }
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    /// The target is a sphere of matching dimension; maps of any degree
    /// exist.
    AnyDegreePossible,
    /// No criterion in the chain rules out a nonzero degree.
    NoObstructionDetected,
    /// Some necessary condition for a cohomology monomorphism fails.
    ForcedZero,
}

impl VerdictTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::AnyDegreePossible => "AnyDegreePossible",
            VerdictTag::NoObstructionDetected => "NoObstructionDetected",
            VerdictTag::ForcedZero => "ForcedZero",
        }
    }
}

/// One evaluated criterion with its numeric values.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub criterion: &'static str,
    pub values: Value,
    pub triggered: bool,
}

impl TraceEntry {
    fn new(criterion: &'static str, values: Value, triggered: bool) -> Self {
        TraceEntry {
            criterion,
            values,
            triggered,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "values": self.values,
            "triggered": self.triggered,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub tag: VerdictTag,
    /// Short reason for the decisive criterion, e.g. `HeightMismatch(1, 0)`.
    pub reason: Option<String>,
    pub trace: Vec<TraceEntry>,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag.as_str(),
            "reason": self.reason,
            "trace": self.trace.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        match &self.reason {
            Some(r) => format!("{} {}", self.tag.as_str(), r),
            None => self.tag.as_str().to_string(),
        }
    }
}

/// Degree-possibility verdict for a map `source -> target` of equal
/// dimensions.
pub fn verdict(source: &SpaceId, target: &SpaceId) -> Result<Verdict, ObstructionError> {
    for s in [source, target] {
        if matches!(s, SpaceId::ComplexGrass { .. }) {
            return Err(ObstructionError::UnsupportedSpace(format!(
                "{} (verdicts cover isotropic, real oriented and sphere spaces)",
                s.spec_string()
            )));
        }
    }
    let (source_dim, target_dim) = (source.dimension(), target.dimension());
    if source_dim != target_dim {
        return Err(ObstructionError::DimensionMismatch {
            source_dim,
            target_dim,
        });
    }
    let src = source.normalized();
    let tgt = target.normalized();
    let mut trace = Vec::new();

    // 1. sphere target: maps of arbitrary degree exist
    let sphere = tgt.sphere_equivalent();
    trace.push(TraceEntry::new(
        "sphere-target",
        json!({"target": tgt.spec_string(), "sphere_dim": sphere}),
        sphere.is_some(),
    ));
    if let Some(d) = sphere {
        return Ok(Verdict {
            tag: VerdictTag::AnyDegreePossible,
            reason: Some(format!("SphereTarget(S:{d})")),
            trace,
        });
    }

    // 2. identical spaces: nothing to obstruct
    let identical = src == tgt;
    trace.push(TraceEntry::new(
        "identical",
        json!({"source": src.spec_string(), "target": tgt.spec_string()}),
        identical,
    ));
    if identical {
        return Ok(Verdict {
            tag: VerdictTag::NoObstructionDetected,
            reason: None,
            trace,
        });
    }

    let fs_src = fact_sheet(&src);
    let fs_tgt = fact_sheet(&tgt);

    // 3. H^1 must inject
    let h1_hit = fs_tgt.h1_rank > fs_src.h1_rank;
    trace.push(TraceEntry::new(
        "h1",
        json!({"source": fs_src.h1_rank, "target": fs_tgt.h1_rank}),
        h1_hit,
    ));
    if h1_hit {
        return Ok(Verdict {
            tag: VerdictTag::ForcedZero,
            reason: Some(format!(
                "H1Mismatch({} < {})",
                fs_src.h1_rank, fs_tgt.h1_rank
            )),
            trace,
        });
    }

    // 4. a nonzero H^4 cannot inject into zero
    let h4_hit = fs_tgt.h4_rank > 0 && fs_src.h4_rank == 0;
    trace.push(TraceEntry::new(
        "h4",
        json!({"source": fs_src.h4_rank, "target": fs_tgt.h4_rank}),
        h4_hit,
    ));
    if h4_hit {
        return Ok(Verdict {
            tag: VerdictTag::ForcedZero,
            reason: Some(format!(
                "H4Mismatch({} < {})",
                fs_src.h4_rank, fs_tgt.h4_rank
            )),
            trace,
        });
    }

    // 5. p1 heights must agree: p1(target) maps to a multiple of p1(source)
    //    and a monomorphism preserves both the last nonzero power and the
    //    first zero one
    let hs = p1_height_formula(&src).ok();
    let ht = p1_height_formula(&tgt).ok();
    match (hs, ht) {
        (Some(a), Some(b)) => {
            let hit = a != b;
            trace.push(TraceEntry::new(
                "p1-height",
                json!({"source": a, "target": b}),
                hit,
            ));
            if hit {
                return Ok(Verdict {
                    tag: VerdictTag::ForcedZero,
                    reason: Some(format!("HeightMismatch({a}, {b})")),
                    trace,
                });
            }
        }
        _ => {
            trace.push(TraceEntry::new(
                "p1-height",
                json!({"source": hs, "target": ht, "note": "height undefined on at least one side"}),
                false,
            ));
        }
    }

    // informational arithmetic context for the scan reports
    match (&src, &tgt) {
        (SpaceId::IsotropicOriented { n, k }, SpaceId::IsotropicOriented { n: m, k: l })
            if k < n && l < m =>
        {
            let (k64, l64) = (*k as i64, *l as i64);
            let product = (k64 - l64) * (k64 + l64 + 1);
            trace.push(TraceEntry::new(
                "height-case-arithmetic",
                json!({
                    "k": k,
                    "l": l,
                    "k_area": *k as u64 * (*n - *k) as u64,
                    "l_area": *l as u64 * (*m - *l) as u64,
                    "product": product,
                    "divisible_by_4": product.rem_euclid(4) == 0,
                    "within_16": product.abs() <= 16,
                }),
                false,
            ));
        }
        (SpaceId::IsotropicOriented { n, k }, SpaceId::RealOriented { .. })
        | (SpaceId::RealOriented { .. }, SpaceId::IsotropicOriented { n, k })
            if k < n =>
        {
            let (n64, k64) = (*n as u64, *k as u64);
            let value = k64 * (n64 - k64) + k64 * (k64 + 1) / 2;
            trace.push(TraceEntry::new(
                "iso-real-dimension-bound",
                json!({"value": value, "exceeds_4": value > 4}),
                false,
            ));
        }
        _ => {}
    }

    // 6. graded-rank comparison: every Betti number of the target must fit
    //    inside the source
    match (rank_series(&src), rank_series(&tgt)) {
        (Some(ss), Some(ts)) => {
            let top = source_dim as usize;
            let witness = (0..=top).find(|&d| ts.coeff(d) > ss.coeff(d));
            trace.push(TraceEntry::new(
                "graded-rank",
                match witness {
                    Some(d) => json!({
                        "witness_degree": d,
                        "source_rank": ss.coeff(d),
                        "target_rank": ts.coeff(d),
                    }),
                    None => json!({"witness_degree": Value::Null}),
                },
                witness.is_some(),
            ));
            if let Some(d) = witness {
                return Ok(Verdict {
                    tag: VerdictTag::ForcedZero,
                    reason: Some(format!(
                        "RankMismatch(degree {d}: {} < {})",
                        ss.coeff(d),
                        ts.coeff(d)
                    )),
                    trace,
                });
            }
        }
        (ss, ts) => {
            trace.push(TraceEntry::new(
                "graded-rank",
                json!({
                    "source_series_available": ss.is_some(),
                    "target_series_available": ts.is_some(),
                }),
                false,
            ));
        }
    }

    Ok(Verdict {
        tag: VerdictTag::NoObstructionDetected,
        reason: None,
        trace,
    })
}

// ---------------------------------------------------------------------------
// Equal-dimension pair enumeration

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFamily {
    IsoIso,
    IsoReal,
    RealIso,
}

impl PairFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairFamily::IsoIso => "iso-iso",
            PairFamily::IsoReal => "iso-real",
            PairFamily::RealIso => "real-iso",
        }
    }

    pub fn parse(s: &str) -> Option<PairFamily> {
        match s {
            "iso-iso" => Some(PairFamily::IsoIso),
            "iso-real" => Some(PairFamily::IsoReal),
            "real-iso" => Some(PairFamily::RealIso),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PairRecord {
    pub family: PairFamily,
    pub source: SpaceId,
    pub target: SpaceId,
    pub dim: u64,
    pub verdict: Verdict,
}

impl PairRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.as_str(),
            "source": self.source.spec_string(),
            "target": self.target.spec_string(),
            "dim": self.dim,
            "verdict": self.verdict.to_json(),
        })
    }
}

fn isotropic_spaces(bound: u32) -> Vec<SpaceId> {
    let mut out = Vec::new();
    for n in 2..=bound {
        for k in 2..=n {
            out.push(SpaceId::IsotropicOriented { n, k });
        }
    }
    out
}

fn real_spaces(bound: u32) -> Vec<SpaceId> {
    let mut out = Vec::new();
    for m in 4..=bound {
        for l in 2..=m - 2 {
            out.push(SpaceId::RealOriented { m, l });
        }
    }
    out
}

fn by_dimension(spaces: Vec<SpaceId>) -> BTreeMap<u64, Vec<SpaceId>> {
    let mut map: BTreeMap<u64, Vec<SpaceId>> = BTreeMap::new();
    for s in spaces {
        map.entry(s.dimension()).or_default().push(s);
    }
    map
}

/// All ordered equal-dimension pairs with parameters up to `bound` and both
/// Grassmannian parameters at least 2 (the sphere columns are excluded by
/// construction), each with its verdict.
pub fn enumerate_equal_dim_pairs(family: PairFamily, bound: u32) -> Vec<PairRecord> {
    let iso = by_dimension(isotropic_spaces(bound));
    let real = by_dimension(real_spaces(bound));
    let mut out = Vec::new();
    let mut push = |source: SpaceId, target: SpaceId, dim: u64| {
        let verdict = verdict(&source, &target).expect("equal dimensions by construction");
        out.push(PairRecord {
            family,
            source,
            target,
            dim,
            verdict,
        });
    };
    match family {
        PairFamily::IsoIso => {
            for (dim, spaces) in &iso {
                for a in spaces {
                    for b in spaces {
                        if a != b {
                            push(*a, *b, *dim);
                        }
                    }
                }
            }
        }
        PairFamily::IsoReal => {
            for (dim, spaces) in &iso {
                if let Some(targets) = real.get(dim) {
                    for a in spaces {
                        for b in targets {
                            push(*a, *b, *dim);
                        }
                    }
                }
            }
        }
        PairFamily::RealIso => {
            for (dim, spaces) in &real {
                if let Some(targets) = iso.get(dim) {
                    for a in spaces {
                        for b in targets {
                            push(*a, *b, *dim);
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.dim, a.source, a.target).cmp(&(b.dim, b.source, b.target)));
    out
}

#[derive(Debug, Clone, Default)]
pub struct ScanSummary {
    pub total: usize,
    pub forced_zero: usize,
    pub any_degree_possible: usize,
    pub no_obstruction_detected: usize,
    pub by_reason: BTreeMap<String, usize>,
}

impl ScanSummary {
    pub fn from_pairs(pairs: &[PairRecord]) -> Self {
        let mut s = ScanSummary {
            total: pairs.len(),
            ..Default::default()
        };
        for p in pairs {
            match p.verdict.tag {
                VerdictTag::ForcedZero => s.forced_zero += 1,
                VerdictTag::AnyDegreePossible => s.any_degree_possible += 1,
                VerdictTag::NoObstructionDetected => s.no_obstruction_detected += 1,
            }
            if let Some(r) = &p.verdict.reason {
                let key = r.split('(').next().unwrap_or(r).to_string();
                *s.by_reason.entry(key).or_default() += 1;
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "forced_zero": self.forced_zero,
            "any_degree_possible": self.any_degree_possible,
            "no_obstruction_detected": self.no_obstruction_detected,
            "by_reason": self.by_reason,
        })
    }
}

// ---------------------------------------------------------------------------
// Height-matching arithmetic scan

/// A pair of distinct isotropic spaces with equal dimension and equal
/// p1-height, together with the arithmetic the published case analysis
/// attaches to it.
#[derive(Debug, Clone)]
pub struct HeightMatchingTuple {
    pub source: SpaceId,
    pub target: SpaceId,
    pub dim: u64,
    pub height: u64,
    /// k(n-k) on the source side.
    pub source_area: u64,
    /// l(m-l) on the target side.
    pub target_area: u64,
    pub area_gap_within_4: bool,
    /// (k-l)(k+l+1)
    pub case_product: i64,
    pub divisible_by_4: bool,
    pub within_16: bool,
}

impl HeightMatchingTuple {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.spec_string(),
            "target": self.target.spec_string(),
            "dim": self.dim,
            "height": self.height,
            "source_area": self.source_area,
            "target_area": self.target_area,
            "area_gap_within_4": self.area_gap_within_4,
            "case_product": self.case_product,
            "divisible_by_4": self.divisible_by_4,
            "within_16": self.within_16,
        })
    }
}

#[derive(Debug, Clone)]
pub struct HeightMatchingReport {
    pub bound: u32,
    /// Distinct-parameter tuples with equal dimension and equal height.
    pub tuples: Vec<HeightMatchingTuple>,
    pub identical_matches: usize,
    /// `2(2l+3)` is never divisible by 4.
    pub gap_two_rejected: bool,
    /// `2l+2` is divisible by 4 exactly when l is odd.
    pub gap_one_parity: bool,
    /// Every tuple satisfies the claimed bounds and there are no distinct
    /// tuples at all.
    pub all_claims_hold: bool,
}

impl HeightMatchingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "tuples": self.tuples.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "identical_matches": self.identical_matches,
            "gap_two_rejected": self.gap_two_rejected,
            "gap_one_parity": self.gap_one_parity,
            "all_claims_hold": self.all_claims_hold,
        })
    }
}

/// Scan all isotropic parameter pairs up to `bound` for equal dimension plus
/// equal p1-height, and evaluate the case-analysis arithmetic on each match.
pub fn height_matching_scan(bound: u32) -> HeightMatchingReport {
    let mut tuples = Vec::new();
    let mut identical = 0usize;
    let spaces: Vec<SpaceId> = isotropic_spaces(bound)
        .into_iter()
        .filter(|s| matches!(s, SpaceId::IsotropicOriented { n, k } if k < n))
        .collect();
    let by_dim = by_dimension(spaces);
    for (dim, group) in &by_dim {
        for a in group {
            for b in group {
                if a >= b {
                    if a == b {
                        identical += 1;
                    }
                    continue;
                }
                let (ha, hb) = (
                    p1_height_formula(a).expect("k < n"),
                    p1_height_formula(b).expect("k < n"),
                );
                if ha != hb {
                    continue;
                }
                let (
                    SpaceId::IsotropicOriented { n, k },
                    SpaceId::IsotropicOriented { n: m, k: l },
                ) = (*a, *b)
                else {
                    unreachable!()
                };
                let source_area = k as u64 * (n - k) as u64;
                let target_area = l as u64 * (m - l) as u64;
                let case_product = (k as i64 - l as i64) * (k as i64 + l as i64 + 1);
                tuples.push(HeightMatchingTuple {
                    source: *a,
                    target: *b,
                    dim: *dim,
                    height: ha,
                    source_area,
                    target_area,
                    area_gap_within_4: source_area.abs_diff(target_area) <= 4,
                    case_product,
                    divisible_by_4: case_product.rem_euclid(4) == 0,
                    within_16: case_product.abs() <= 16,
                });
            }
        }
    }
    let gap_two_rejected = (2..bound as i64).all(|l| (2 * (2 * l + 3)).rem_euclid(4) != 0);
    let gap_one_parity =
        (2..bound as i64).all(|l| ((2 * l + 2).rem_euclid(4) == 0) == (l % 2 == 1));
    let all_claims_hold = tuples.is_empty() && gap_two_rejected && gap_one_parity;
    HeightMatchingReport {
        bound,
        tuples,
        identical_matches: identical,
        gap_two_rejected,
        gap_one_parity,
        all_claims_hold,
    }
}

// ---------------------------------------------------------------------------
// Parametric case families

/// One of the `k = l + 1` parametric families (l in {3, 5, 7}) solving the
/// dimension identity, whose height-equality equation must fail for every s.
#[derive(Debug, Clone, Copy)]
pub struct CaseFamily {
    pub l: u32,
    pub k: u32,
    n_lin: (i64, i64),
    m_lin: (i64, i64),
}

impl CaseFamily {
    pub fn for_l(l: u32) -> Option<CaseFamily> {
        match l {
            3 => Some(CaseFamily {
                l: 3,
                k: 4,
                n_lin: (3, 2),
                m_lin: (4, 1),
            }),
            5 => Some(CaseFamily {
                l: 5,
                k: 6,
                n_lin: (5, 3),
                m_lin: (6, 2),
            }),
            7 => Some(CaseFamily {
                l: 7,
                k: 8,
                n_lin: (7, 4),
                m_lin: (8, 3),
            }),
            _ => None,
        }
    }

    pub fn all() -> Vec<CaseFamily> {
        [3, 5, 7]
            .into_iter()
            .map(|l| CaseFamily::for_l(l).expect("known family"))
            .collect()
    }

    pub fn n_of(&self, s: i64) -> i64 {
        self.n_lin.0 * s + self.n_lin.1
    }

    pub fn m_of(&self, s: i64) -> i64 {
        self.m_lin.0 * s + self.m_lin.1
    }

    /// Height-equality test expressions, left and right hand side.
    pub fn height_sides(&self, s: i64) -> (i64, i64) {
        match self.l {
            3 => (2 * s - 1, 2 * ((3 * s - 2) / 2)),
            5 => (3 * ((5 * s - 3) / 2), 2 * (3 * s - 2)),
            7 => (4 * ((7 * s - 4) / 2), 3 * (4 * s - 2)),
            _ => unreachable!(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseFamilyReport {
    pub l: u32,
    pub k: u32,
    pub s_max: u32,
    pub dimension_identity_holds: bool,
    /// Sides also agree with the canonical height formulas of the
    /// parametrized spaces.
    pub sides_match_height_formulas: bool,
    pub heights_never_equal: bool,
    /// (lhs, rhs) at s = 1.
    pub first_values: (i64, i64),
    pub equal_at: Vec<i64>,
}

impl CaseFamilyReport {
    pub fn passed(&self) -> bool {
        self.dimension_identity_holds
            && self.sides_match_height_formulas
            && self.heights_never_equal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "k": self.k,
            "s_max": self.s_max,
            "dimension_identity_holds": self.dimension_identity_holds,
            "sides_match_height_formulas": self.sides_match_height_formulas,
            "heights_never_equal": self.heights_never_equal,
            "first_values": [self.first_values.0, self.first_values.1],
            "equal_at": self.equal_at,
        })
    }
}

/// Verify a case family for `s = 1..=s_max`: the parametrization satisfies
/// the dimension identity and the height equation has both sides unequal.
pub fn case_family_check(family: &CaseFamily, s_max: u32) -> CaseFamilyReport {
    let mut dimension_identity_holds = true;
    let mut sides_match = true;
    let mut equal_at = Vec::new();
    for s in 1..=s_max as i64 {
        let (n, m) = (family.n_of(s), family.m_of(s));
        let a = SpaceId::IsotropicOriented {
            n: n as u32,
            k: family.k,
        };
        let b = SpaceId::IsotropicOriented {
            n: m as u32,
            k: family.l,
        };
        if a.dimension() != b.dimension() {
            dimension_identity_holds = false;
        }
        let (lhs, rhs) = family.height_sides(s);
        let heights = (
            p1_height_formula(&a).expect("k < n") as i64,
            p1_height_formula(&b).expect("l < m") as i64,
        );
        let sides_as_heights = match family.l {
            // for l = 3 the published equation puts the target height on the
            // left; the other families put the source height first
            3 => (heights.1, heights.0),
            _ => heights,
        };
        if (lhs, rhs) != sides_as_heights {
            sides_match = false;
        }
        if lhs == rhs {
            equal_at.push(s);
        }
    }
    let first_values = family.height_sides(1);
    CaseFamilyReport {
        l: family.l,
        k: family.k,
        s_max,
        dimension_identity_holds,
        sides_match_height_formulas: sides_match,
        heights_never_equal: equal_at.is_empty(),
        first_values,
        equal_at,
    }
}

// ---------------------------------------------------------------------------
// Isotropic-vs-real dimension bound

#[derive(Debug, Clone)]
pub struct IsoRealBoundReport {
    pub bound: u32,
    /// Minimum of `k(n-k) + k(k+1)/2` over `2 <= k < n <= bound`.
    pub min_value: u64,
    pub min_at: (u32, u32),
    pub all_exceed_4: bool,
}

impl IsoRealBoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "min_value": self.min_value,
            "min_at": {"n": self.min_at.0, "k": self.min_at.1},
            "all_exceed_4": self.all_exceed_4,
        })
    }
}

pub fn iso_real_bound_check(bound: u32) -> IsoRealBoundReport {
    let mut min_value = u64::MAX;
    let mut min_at = (0, 0);
    for n in 3..=bound {
        for k in 2..n {
            let v = k as u64 * (n - k) as u64 + k as u64 * (k as u64 + 1) / 2;
            if v < min_value {
                min_value = v;
                min_at = (n, k);
            }
        }
    }
    IsoRealBoundReport {
        bound,
        min_value,
        min_at,
        all_exceed_4: min_value > 4,
    }
}

// ---------------------------------------------------------------------------
// Cross-validation suites and the full verification run

#[derive(Debug, Clone, Default)]
pub struct CrossCheckReport {
    /// Brute-force p1 heights vs the formula, 2 <= k < n <= 7.
    pub height_formula_matches: bool,
    /// Reduced-quotient ranks vs the partition oracle for odd k (both
    /// parities of n), m < s <= 6, including the height bridge.
    pub schubert_ranks_match: bool,
    /// Even-k quotients vs the odd-ambient real presentations, s <= 5.
    pub real_ranks_match: bool,
    pub failures: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.height_formula_matches && self.schubert_ranks_match && self.real_ranks_match
    }

    pub fn to_json(&self) -> Value {
        json!({
            "height_formula_matches": self.height_formula_matches,
            "schubert_ranks_match": self.schubert_ranks_match,
            "real_ranks_match": self.real_ranks_match,
            "failures": self.failures,
        })
    }
}

fn quotient_p1_height(p: &crate::presentations::Presentation) -> Option<u64> {
    let x = p.p1_image()?;
    let cap = p.default_height_cap(&x);
    Some(p.quotient().height(&x, cap).expect("cap bounds the search") as u64)
}

fn betti_of_quotient(q: &QuotientRing, degree: u32) -> u64 {
    q.graded_dimension(degree) as u64
}

pub fn run_cross_checks() -> CrossCheckReport {
    let mut report = CrossCheckReport {
        height_formula_matches: true,
        schubert_ranks_match: true,
        real_ranks_match: true,
        failures: Vec::new(),
    };

    for n in 3..=7u32 {
        for k in 2..n {
            let p = build_quotient_a(n, k).expect("in range");
            let brute = quotient_p1_height(&p).expect("p1 image exists for k >= 2");
            let formula = p1_height_formula(&SpaceId::IsotropicOriented { n, k }).expect("k < n");
            if brute != formula {
                report.height_formula_matches = false;
                report.failures.push(format!(
                    "height mismatch at I:{},{}: brute {brute}, formula {formula}",
                    2 * n,
                    k
                ));
            }
        }
    }

    for s in 2..=6u32 {
        for m in 1..s {
            for (n, width) in [(2 * s, s - 1 - m), (2 * s + 1, s - m)] {
                let k = 2 * m + 1;
                if k >= n {
                    continue;
                }
                let p = build_quotient_a(n, k).expect("in range");
                let shape = BoxShape::new(m, width);
                let (betti, _) = betti_and_euler(shape);
                let top_j = m * width;
                for j in 0..=top_j + 1 {
                    let lhs = betti_of_quotient(p.quotient(), 4 * j);
                    let rhs = betti.coeff(2 * j as usize);
                    if lhs != rhs {
                        report.schubert_ranks_match = false;
                        report.failures.push(format!(
                            "rank mismatch A({n},{k}) degree {} vs box ({m},{width}) size {j}: {lhs} != {rhs}",
                            4 * j
                        ));
                    }
                }
                let brute = quotient_p1_height(&p).expect("p1 image exists");
                let sigma = sigma1_height(shape) as u64;
                if brute != sigma || sigma != (m * width) as u64 {
                    report.schubert_ranks_match = false;
                    report.failures.push(format!(
                        "height bridge mismatch A({n},{k}): quotient {brute}, sigma1 {sigma}"
                    ));
                }
            }
        }
    }

    for s in 2..=5u32 {
        for m in 1..s {
            let real = build_real_oriented(2 * s + 1, 2 * m, &mut report);
            let Some(real) = real else { continue };
            let top = real.quotient_top_degree() as u32;
            for nn in [2 * s, 2 * s + 1] {
                let p = build_quotient_a(nn, 2 * m).expect("in range");
                for d in 0..=top + 4 {
                    let lhs = betti_of_quotient(p.quotient(), d);
                    let rhs = betti_of_quotient(real.quotient(), d);
                    if lhs != rhs {
                        report.real_ranks_match = false;
                        report.failures.push(format!(
                            "rank mismatch A({nn},{}) vs RG:{},{} at degree {d}: {lhs} != {rhs}",
                            2 * m,
                            2 * s + 1,
                            2 * m
                        ));
                    }
                }
            }
        }
    }

    report
}

fn build_real_oriented(
    m: u32,
    l: u32,
    report: &mut CrossCheckReport,
) -> Option<crate::presentations::Presentation> {
    match crate::presentations::build_real_oriented_odd(m, l) {
        Ok(p) => Some(p),
        Err(e) => {
            report.real_ranks_match = false;
            report
                .failures
                .push(format!("RG:{m},{l} failed to build: {e}"));
            None
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerificationConfig {
    pub bound: u32,
    pub s_max: u32,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            bound: 40,
            s_max: 200,
        }
    }
}

#[derive(Debug)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub pairs: Vec<PairRecord>,
    pub summaries: BTreeMap<&'static str, ScanSummary>,
    pub height_matching: HeightMatchingReport,
    pub case_families: Vec<CaseFamilyReport>,
    pub iso_real_bound: IsoRealBoundReport,
    pub cross_checks: CrossCheckReport,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "format": "iso-grass/report@1",
            "config": {"bound": self.config.bound, "s_max": self.config.s_max},
            "pairs": self.pairs.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "summary": self
                .summaries
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_json()))
                .collect::<serde_json::Map<String, Value>>(),
            "height_matching": self.height_matching.to_json(),
            "case_families": self.case_families.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "iso_real_bound": self.iso_real_bound.to_json(),
            "cross_checks": self.cross_checks.to_json(),
            "failures": self.failures,
            "passed": self.passed,
        })
    }
}

/// Run every scan and cross-validation suite. `passed` is true exactly when
/// every assertion holds; failures carry one line per violated claim.
pub fn run_verification(config: VerificationConfig) -> VerificationReport {
    let mut failures = Vec::new();
    let mut pairs = Vec::new();
    let mut summaries = BTreeMap::new();
    for family in [PairFamily::IsoIso, PairFamily::IsoReal, PairFamily::RealIso] {
        let records = enumerate_equal_dim_pairs(family, config.bound);
        for r in &records {
            if r.verdict.tag != VerdictTag::ForcedZero {
                failures.push(format!(
                    "{} pair {} -> {} (dim {}): expected ForcedZero, got {}",
                    family.as_str(),
                    r.source.spec_string(),
                    r.target.spec_string(),
                    r.dim,
                    r.verdict.summary()
                ));
            }
        }
        summaries.insert(family.as_str(), ScanSummary::from_pairs(&records));
        pairs.extend(records);
    }

    let height_matching = height_matching_scan(config.bound);
    if !height_matching.all_claims_hold {
        for t in &height_matching.tuples {
            failures.push(format!(
                "height-matching collision: {} vs {} (dim {}, height {}, areas {} vs {}, case product {})",
                t.source.spec_string(),
                t.target.spec_string(),
                t.dim,
                t.height,
                t.source_area,
                t.target_area,
                t.case_product
            ));
        }
        if !height_matching.gap_two_rejected {
            failures.push("gap-two divisibility rejection failed".to_string());
        }
        if !height_matching.gap_one_parity {
            failures.push("gap-one parity rejection failed".to_string());
        }
    }

    let case_families: Vec<CaseFamilyReport> = CaseFamily::all()
        .iter()
        .map(|f| case_family_check(f, config.s_max))
        .collect();
    for c in &case_families {
        if !c.passed() {
            failures.push(format!(
                "case family l={} failed (identity {}, sides {}, unequal {})",
                c.l,
                c.dimension_identity_holds,
                c.sides_match_height_formulas,
                c.heights_never_equal
            ));
        }
    }

    let iso_real_bound = iso_real_bound_check(config.bound.max(5));
    if !iso_real_bound.all_exceed_4 {
        failures.push(format!(
            "iso-real dimension bound violated: min {} at {:?}",
            iso_real_bound.min_value, iso_real_bound.min_at
        ));
    }

    let cross_checks = run_cross_checks();
    failures.extend(cross_checks.failures.iter().cloned());

    let passed = failures.is_empty();
    VerificationReport {
        config,
        pairs,
        summaries,
        height_matching,
        case_families,
        iso_real_bound,
        cross_checks,
        failures,
        passed,
    }
}
