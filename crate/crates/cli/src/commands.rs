use serde_json::{json, Value};

use isograss_core::exprparse;
use isograss_core::obstruction::{self, PairFamily, VerificationConfig, VerificationReport};
use isograss_core::presentations::{
    build_full_isotropic, build_real_oriented_odd, fact_sheet, remark_comparison, survivor_sieve,
    BuildError, Presentation, SpaceId,
};
use isograss_core::schubert::{betti_and_euler, BoxShape};
use isograss_core::GradedPoly;

use crate::{CliConfig, CliError, EXIT_DIMENSION_MISMATCH, EXIT_UNSUPPORTED};

fn parse_space(spec: &str) -> Result<SpaceId, CliError> {
    SpaceId::parse_spec(spec).map_err(|e| CliError::usage(e.to_string()))
}

fn emit(config: &CliConfig, value: &Value, text: String) {
    if config.json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("valid json")
        );
    } else {
        println!("{text}");
    }
}

/// Build the ring presentation of a space, or explain why there is none.
fn presentation_for(space: &SpaceId) -> Result<Presentation, CliError> {
    match *space {
        SpaceId::IsotropicOriented { n, k } => {
            if k == n {
                Err(CliError::unsupported(format!(
                    "{} has no quotient presentation here (only its fact sheet: h1 = 1, h4 = 0)",
                    space.spec_string()
                )))
            } else if k == 1 {
                Err(CliError::unsupported(format!(
                    "{} is the sphere S:{}; use the sphere fact sheet",
                    space.spec_string(),
                    2 * n - 1
                )))
            } else {
                build_full_isotropic(n, k).map_err(build_error)
            }
        }
        SpaceId::RealOriented { m, l } => build_real_oriented_odd(m, l).map_err(build_error),
        _ => Err(CliError::unsupported(format!(
            "{} has no quotient presentation in this toolkit",
            space.spec_string()
        ))),
    }
}

fn build_error(e: BuildError) -> CliError {
    match e {
        BuildError::Unsupported(msg) => CliError::unsupported(msg),
        other => CliError {
            code: EXIT_UNSUPPORTED,
            message: other.to_string(),
        },
    }
}

pub fn cmd_space(config: &CliConfig, spec: &str) -> Result<(), CliError> {
    let space = parse_space(spec)?;
    let facts = fact_sheet(&space);
    let normalized = space.normalized();
    let mut text = format!(
        "space: {} ({})\ndimension: {}\nh1 rank: {}\nh4 rank: {}",
        space.spec_string(),
        space.family_name(),
        space.dimension(),
        facts.h1_rank,
        facts.h4_rank,
    );
    if let Some(g) = &facts.h4_generator_name {
        text.push_str(&format!(" (generator {g})"));
    }
    text.push_str(&format!(
        "\nunoriented companion orientable: {}",
        facts.orientable
    ));
    if let Some(d) = facts.sphere_equivalent {
        text.push_str(&format!("\nsphere equivalent: S:{d}"));
    }
    if normalized != space {
        text.push_str(&format!("\nnormalized to {}", normalized.spec_string()));
    }
    let value = json!({
        "space": space.to_json(),
        "fact_sheet": facts.to_json(),
        "normalized": if normalized != space { Some(normalized.spec_string()) } else { None },
    });
    emit(config, &value, text);
    Ok(())
}

fn presentation_text(p: &Presentation) -> String {
    let gens: Vec<String> = p
        .alphabet()
        .entries()
        .iter()
        .zip(p.bundles())
        .map(|(g, b)| format!("{} (deg {}, {})", g.name, g.degree, b))
        .collect();
    let rels: Vec<String> = p.relations().iter().map(|r| r.to_string()).collect();
    let ext: Vec<String> = p.exterior_degrees().iter().map(|d| d.to_string()).collect();
    format!(
        "space: {}\ngenerators: {}\nrelations: {}\nexterior degrees: {{{}}}\ntop degree: {}",
        p.space().spec_string(),
        gens.join(", "),
        if rels.is_empty() {
            "(none)".to_string()
        } else {
            rels.join(", ")
        },
        ext.join(", "),
        p.top_degree(),
    )
}

pub fn cmd_ring(config: &CliConfig, spec: &str, trace: bool) -> Result<(), CliError> {
    let space = parse_space(spec)?;
    if let SpaceId::ComplexGrass { n, k } = space {
        // summary through the partition oracle; no quotient presentation
        let shape = BoxShape::new(k, n - k);
        let (betti, euler) = betti_and_euler(shape);
        let text = format!(
            "space: {} (complex Grassmannian)\nschubert basis: partitions in a {} x {} box\npoincare: {}\neuler characteristic: {}",
            space.spec_string(),
            k,
            n - k,
            betti,
            euler
        );
        let value = json!({
            "format": "iso-grass/schubert-summary@1",
            "space": space.to_json(),
            "box": {"rows": k, "width": n - k},
            "betti": betti.coeffs(),
            "euler": euler,
        });
        emit(config, &value, text);
        return Ok(());
    }
    let p = presentation_for(&space)?;
    let mut text = presentation_text(&p);
    let mut value = p.to_json();
    if trace {
        if let SpaceId::IsotropicOriented { n, k } = space {
            let sieve = survivor_sieve(n, k).map_err(build_error)?;
            let comparison = remark_comparison(n, k).map_err(build_error)?;
            text.push_str(&format!("\n\nsieve trace:\n{}", sieve.trace));
            text.push_str(&format!(
                "survivor formula comparison:\n  formula degrees: {:?}\n  sieve degrees:   {:?}\n  formula top-degree identity: {}\n  agreement: {}{}",
                comparison.formula_degrees,
                comparison.sieve_degrees,
                if comparison.formula_top_consistent { "holds" } else { "FAILS" },
                comparison.agrees,
                if comparison.agrees { "" } else { "  [DISCREPANCY FLAGGED]" },
            ));
            let obj = value.as_object_mut().expect("object");
            obj.insert("sieve_trace".to_string(), sieve.trace.to_json());
            obj.insert(
                "survivor_formula_comparison".to_string(),
                comparison.to_json(),
            );
        } else {
            text.push_str("\n\nsieve trace: only isotropic presentations have one");
        }
    }
    emit(config, &value, text);
    Ok(())
}

pub fn cmd_poincare(config: &CliConfig, spec: &str) -> Result<(), CliError> {
    let space = parse_space(spec)?;
    if let SpaceId::ComplexGrass { n, k } = space {
        let (betti, euler) = betti_and_euler(BoxShape::new(k, n - k));
        let top = space.dimension() as usize;
        let text = format!(
            "space: {}\npoincare: {}\ntop degree: {}\npalindromic: {}\neuler characteristic: {}",
            space.spec_string(),
            betti,
            top,
            betti.is_palindromic_about(top),
            euler
        );
        let value = json!({
            "space": space.to_json(),
            "coefficients": betti.coeffs(),
            "top_degree": top,
            "palindromic": betti.is_palindromic_about(top),
            "euler": euler,
        });
        emit(config, &value, text);
        return Ok(());
    }
    let p = presentation_for(&space)?;
    let series = p.full_poincare();
    let top = p.top_degree() as usize;
    let palindromic = series.is_palindromic_about(top);
    let text = format!(
        "space: {}\npoincare: {}\ntop degree: {}\npalindromic: {}",
        space.spec_string(),
        series,
        top,
        palindromic
    );
    let value = json!({
        "space": space.to_json(),
        "coefficients": series.coeffs(),
        "top_degree": top,
        "palindromic": palindromic,
    });
    emit(config, &value, text);
    Ok(())
}

/// Resolve the element string over a presentation; the literal `p1` means
/// the first Pontryagin class, which is the Euler square for rank-2 factors.
fn resolve_element(p: &Presentation, element: &str) -> Result<GradedPoly, CliError> {
    if element.trim() == "p1" {
        if let Some(x) = p.p1_image() {
            return Ok(x);
        }
    }
    exprparse::eval_str(element, p.alphabet()).map_err(|e| CliError::usage(e.to_string()))
}

pub fn cmd_height(
    config: &CliConfig,
    spec: &str,
    element: &str,
    cap: Option<u32>,
) -> Result<(), CliError> {
    let space = parse_space(spec)?;
    let p = presentation_for(&space)?;
    let x = resolve_element(&p, element)?;
    // the zero element has height 0 by convention; anything else must be
    // homogeneous of positive degree
    if !x.is_zero() && (!x.is_homogeneous() || x.homogeneous_degree() == Some(0)) {
        return Err(CliError::usage(format!(
            "height needs a homogeneous element of positive degree, got `{x}`"
        )));
    }
    let cap = cap.unwrap_or_else(|| p.default_height_cap(&x));
    let height = p.quotient().height(&x, cap).map_err(|e| CliError {
        code: crate::EXIT_VERIFICATION_FAILURE,
        message: e.to_string(),
    })?;
    let formula = if element.trim() == "p1" {
        obstruction::p1_height_formula(&space).ok()
    } else {
        None
    };
    let mut text = format!(
        "space: {}\nelement: {}\nheight: {}",
        space.spec_string(),
        x,
        height
    );
    if let Some(f) = formula {
        text.push_str(&format!("\nformula: {f}\nagree: {}", f == height as u64));
    }
    let value = json!({
        "space": space.spec_string(),
        "element": x.to_string(),
        "height": height,
        "formula": formula,
        "agree": formula.map(|f| f == height as u64),
        "cap": cap,
    });
    emit(config, &value, text);
    Ok(())
}

pub fn cmd_eval(config: &CliConfig, spec: &str, expression: &str) -> Result<(), CliError> {
    let space = parse_space(spec)?;
    let p = presentation_for(&space)?;
    let raw = exprparse::eval_str(expression, p.alphabet())
        .map_err(|e| CliError::usage(e.to_string()))?;
    let nf = p
        .quotient()
        .normal_form(&raw)
        .expect("same alphabet by construction");
    let text = format!(
        "space: {}\nvalue: {}\nnormal form: {}",
        space.spec_string(),
        raw,
        nf
    );
    let value = json!({
        "space": space.spec_string(),
        "expression": expression,
        "value": raw.to_string(),
        "normal_form": nf.to_string(),
    });
    emit(config, &value, text);
    Ok(())
}

pub fn cmd_verdict(config: &CliConfig, source: &str, target: &str) -> Result<(), CliError> {
    let src = parse_space(source)?;
    let tgt = parse_space(target)?;
    let v = obstruction::verdict(&src, &tgt).map_err(|e| match e {
        obstruction::ObstructionError::DimensionMismatch {
            source_dim,
            target_dim,
        } => CliError {
            code: EXIT_DIMENSION_MISMATCH,
            message: format!(
                "dimension mismatch: {} has dimension {source_dim}, {} has dimension {target_dim}",
                src.spec_string(),
                tgt.spec_string()
            ),
        },
        other => CliError {
            code: EXIT_UNSUPPORTED,
            message: other.to_string(),
        },
    })?;
    let mut text = format!(
        "map: {} -> {}\ndimension: {}\nverdict: {}\ntrace:",
        src.spec_string(),
        tgt.spec_string(),
        src.dimension(),
        v.summary()
    );
    for t in &v.trace {
        text.push_str(&format!(
            "\n  [{}] {}: {}",
            if t.triggered { "x" } else { " " },
            t.criterion,
            t.values
        ));
    }
    let value = json!({
        "source": src.spec_string(),
        "target": tgt.spec_string(),
        "dim": src.dimension(),
        "verdict": v.to_json(),
    });
    emit(config, &value, text);
    Ok(())
}

pub fn cmd_enumerate(config: &CliConfig, family: &str) -> Result<(), CliError> {
    let families: Vec<PairFamily> = match family {
        "all" => vec![PairFamily::IsoIso, PairFamily::IsoReal, PairFamily::RealIso],
        other => vec![PairFamily::parse(other).ok_or_else(|| {
            CliError::usage(format!(
                "unknown family `{other}` (expected all | iso-iso | iso-real | real-iso)"
            ))
        })?],
    };
    let mut text = String::new();
    let mut pairs_json = Vec::new();
    let mut summary_json = serde_json::Map::new();
    for fam in families {
        let records = obstruction::enumerate_equal_dim_pairs(fam, config.bound);
        let summary = obstruction::ScanSummary::from_pairs(&records);
        text.push_str(&format!(
            "family {} (bound {}): {} pairs, {} forced zero, {} any degree, {} undetected\n",
            fam.as_str(),
            config.bound,
            summary.total,
            summary.forced_zero,
            summary.any_degree_possible,
            summary.no_obstruction_detected
        ));
        for r in &records {
            text.push_str(&format!(
                "  {} -> {} dim {} {}\n",
                r.source.spec_string(),
                r.target.spec_string(),
                r.dim,
                r.verdict.summary()
            ));
        }
        summary_json.insert(fam.as_str().to_string(), summary.to_json());
        pairs_json.extend(records.iter().map(|r| r.to_json()));
    }
    let value = json!({
        "format": "iso-grass/report@1",
        "config": {"bound": config.bound},
        "pairs": pairs_json,
        "summary": summary_json,
    });
    emit(config, &value, text.trim_end().to_string());
    Ok(())
}

fn verify_text(report: &VerificationReport) -> String {
    let mut out = format!(
        "degree-obstruction verification (bound {}, s-max {})\n",
        report.config.bound, report.config.s_max
    );
    for (family, summary) in &report.summaries {
        out.push_str(&format!(
            "{} scan: {} pairs, {} forced zero, {} undetected {}\n",
            family,
            summary.total,
            summary.forced_zero,
            summary.no_obstruction_detected,
            if summary.no_obstruction_detected == 0 {
                "[ok]"
            } else {
                "[FAIL]"
            },
        ));
    }
    let hm = &report.height_matching;
    out.push_str(&format!(
        "height-matching scan: {} distinct collisions, gap-2 rejection {}, gap-1 parity {} {}\n",
        hm.tuples.len(),
        hm.gap_two_rejected,
        hm.gap_one_parity,
        if hm.all_claims_hold { "[ok]" } else { "[FAIL]" },
    ));
    for t in &hm.tuples {
        out.push_str(&format!(
            "  collision: {} vs {} (dim {}, height {}, areas {} vs {}, case product {})\n",
            t.source.spec_string(),
            t.target.spec_string(),
            t.dim,
            t.height,
            t.source_area,
            t.target_area,
            t.case_product
        ));
    }
    for c in &report.case_families {
        out.push_str(&format!(
            "case family l={} k={}: identity {}, sides-match {}, never-equal {} for s <= {}, s=1 values ({}, {}) {}\n",
            c.l,
            c.k,
            c.dimension_identity_holds,
            c.sides_match_height_formulas,
            c.heights_never_equal,
            c.s_max,
            c.first_values.0,
            c.first_values.1,
            if c.passed() { "[ok]" } else { "[FAIL]" },
        ));
    }
    let b = &report.iso_real_bound;
    out.push_str(&format!(
        "iso-real dimension bound: min {} at (n={}, k={}) {}\n",
        b.min_value,
        b.min_at.0,
        b.min_at.1,
        if b.all_exceed_4 { "> 4 [ok]" } else { "[FAIL]" },
    ));
    let cc = &report.cross_checks;
    out.push_str(&format!(
        "cross-checks: height formula {}, complex-oracle ranks {}, real ranks {} {}\n",
        cc.height_formula_matches,
        cc.schubert_ranks_match,
        cc.real_ranks_match,
        if cc.passed() { "[ok]" } else { "[FAIL]" },
    ));
    if !report.failures.is_empty() {
        out.push_str("failures:\n");
        for f in &report.failures {
            out.push_str(&format!("  {f}\n"));
        }
    }
    out.push_str(&format!(
        "verification: {}",
        if report.passed { "PASS" } else { "FAIL" }
    ));
    out
}

pub fn cmd_verify(config: &CliConfig) -> Result<(), CliError> {
    let report = obstruction::run_verification(VerificationConfig {
        bound: config.bound,
        s_max: config.s_max,
    });
    if config.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("valid json")
        );
    } else {
        println!("{}", verify_text(&report));
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError {
            code: crate::EXIT_VERIFICATION_FAILURE,
            message: format!(
                "{} assertion(s) failed; see the report above",
                report.failures.len()
            ),
        })
    }
}
