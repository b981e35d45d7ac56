//! Rendering for everything the binary prints. Text output is meant for
//! reading; JSON output carries the same values and witnesses but no
//! timings, so identical runs produce byte-identical reports.

use crate::suite::{CheckResult, SuiteConfig};
use kloc_core::{
    print_complex, ChainMap, CoefficientObject, CqRealSequence, CqSelfBound, DetectionReport,
    DivisibleReport, Error, ExactSequenceReport, ExtensionProblem, GradedGroup, IntMatrix,
    SEquivalenceReport, SFiniteness, SplittingReport, UctResult,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

pub fn emit(mode: OutputMode, text: Vec<String>, value: Value) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match mode {
        OutputMode::Text => text.iter().try_for_each(|line| writeln!(out, "{line}")),
        OutputMode::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialise")
        ),
    };
    // a closed pipe downstream is not our error
    result.ok();
}

fn int_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| int_json(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn les_json(r: &ExactSequenceReport) -> Value {
    let nodes: Vec<Value> = r
        .nodes
        .iter()
        .map(|n| {
            json!({
                "label": n.label,
                "group": n.group,
                "incoming": n.incoming,
                "outgoing": n.outgoing,
            })
        })
        .collect();
    json!({
        "nodes": nodes,
        "exact_at": r.exact_at,
        "witnesses": r.witnesses,
        "all_exact": r.all_exact(),
    })
}

pub fn les_text(r: &ExactSequenceReport) -> Vec<String> {
    let mut out = Vec::new();
    for (node, ok) in r.nodes.iter().zip(&r.exact_at) {
        out.push(format!(
            "{}: {} (in {}, out {}) [{}]",
            node.label,
            node.group,
            node.incoming,
            node.outgoing,
            if *ok { "exact" } else { "NOT EXACT" }
        ));
    }
    out.push(format!("exact: {}", if r.all_exact() { "yes" } else { "no" }));
    for w in &r.witnesses {
        out.push(format!("witness {w}"));
    }
    out
}

pub fn graded_degrees_json(g: &GradedGroup) -> Value {
    let degrees: Vec<Value> = g
        .representatives()
        .iter()
        .map(|&n| json!({"degree": n, "value": g.value_at(n).to_string()}))
        .collect();
    json!({ "degrees": degrees })
}

pub fn graded_degrees_text(g: &GradedGroup) -> Vec<String> {
    let parts: Vec<String> = g
        .representatives()
        .iter()
        .map(|&n| format!("degree {n}: {}", g.value_at(n)))
        .collect();
    vec![parts.join(", ")]
}

fn candidate_list(p: &ExtensionProblem) -> Vec<String> {
    let mut seen = std::collections::BTreeSet::new();
    p.candidates
        .iter()
        .filter_map(|c| {
            let s = c.group.to_string();
            seen.insert(s.clone()).then_some(s)
        })
        .collect()
}

pub fn problem_value_text(p: &ExtensionProblem) -> String {
    match &p.resolved {
        Some(g) => g.to_string(),
        None => format!("one of {{{}}}", candidate_list(p).join(", ")),
    }
}

fn problem_json(p: &ExtensionProblem) -> Value {
    json!({
        "degree": p.degree,
        "sub": p.sub.to_string(),
        "quot": p.quot.to_string(),
        "candidates": candidate_list(p),
        "resolved": p.resolved.as_ref().map(|g| g.to_string()),
    })
}

pub fn problems_json(ps: &[ExtensionProblem]) -> Value {
    Value::Array(ps.iter().map(problem_json).collect())
}

pub fn problems_text(ps: &[ExtensionProblem]) -> Vec<String> {
    let parts: Vec<String> = ps
        .iter()
        .map(|p| format!("degree {}: {}", p.degree, problem_value_text(p)))
        .collect();
    vec![parts.join(", ")]
}

pub fn coefficient_object_json(co: &CoefficientObject) -> Value {
    json!({
        "base": co.base,
        "modulus": co.modulus,
        "degrees": problems_json(&co.problems),
        "object": co.object.as_ref().map(|o| json!({
            "name": o.name(),
            "k_groups": graded_degrees_json(o.k_groups())["degrees"],
        })),
    })
}

pub fn coefficient_object_text(co: &CoefficientObject) -> Vec<String> {
    let mut out = vec![format!("{} with mod-{} coefficients", co.base, co.modulus)];
    out.extend(problems_text(&co.problems));
    match &co.object {
        Some(o) => {
            let mut line = format!("realised by {}: ", o.name());
            line.push_str(&graded_degrees_text(o.k_groups()).join(""));
            out.push(line);
        }
        None => out.push("not realised: an extension stays unresolved".into()),
    }
    out
}

pub fn uct_json(r: &UctResult) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "degree": e.degree,
                "sub": e.sub.to_string(),
                "quot": e.quot.to_string(),
                "candidates": e.problem.as_ref().map(candidate_list),
                "resolved": e.resolved.as_ref().map(|m| m.to_string()),
                "note": e.note,
            })
        })
        .collect();
    json!({
        "source": r.source,
        "target": r.target,
        "period": r.period,
        "entries": entries,
    })
}

pub fn uct_text(r: &UctResult) -> Vec<String> {
    let mut out = vec![format!(
        "pairing of {} with {} (period {})",
        r.source, r.target, r.period
    )];
    for e in &r.entries {
        let value = match (&e.resolved, &e.problem) {
            (Some(m), _) => m.to_string(),
            (None, Some(p)) => problem_value_text(p),
            (None, None) => "unresolved".into(),
        };
        let mut line = format!(
            "degree {}: {} (sub {}, quot {})",
            e.degree, value, e.sub, e.quot
        );
        if let Some(note) = &e.note {
            line.push_str(&format!("; {note}"));
        }
        out.push(line);
    }
    out
}

pub fn cq_real_json(r: &CqRealSequence) -> Value {
    json!({
        "modulus": r.modulus,
        "kko_0": r.kko_0.to_string(),
        "kko_minus1": r.kko_minus1.to_string(),
        "les": les_json(&r.les),
    })
}

pub fn cq_real_text(r: &CqRealSequence) -> Vec<String> {
    let mut out = vec![
        format!("KKO_0(C{}, R) = {}", r.modulus, r.kko_0),
        format!("KKO_-1(C{}, R) = {}", r.modulus, r.kko_minus1),
    ];
    out.extend(les_text(&r.les));
    out
}

pub fn cq_bound_json(r: &CqSelfBound) -> Value {
    json!({
        "modulus": r.modulus,
        "degree": r.problem.degree,
        "sub": r.problem.sub.to_string(),
        "quot": r.problem.quot.to_string(),
        "candidates": candidate_list(&r.problem),
        "exponent_bound": r.exponent_bound.to_string(),
        "exponent_bound_holds": r.exponent_bound_holds,
        "conclusion": r.conclusion,
    })
}

pub fn cq_bound_text(r: &CqSelfBound) -> Vec<String> {
    vec![
        format!(
            "KKO_0(C{q}, C{q}): sub {}, quot {}",
            r.problem.sub,
            r.problem.quot,
            q = r.modulus
        ),
        format!("candidates: {}", candidate_list(&r.problem).join(", ")),
        format!(
            "exponent bound {}: {}",
            r.exponent_bound,
            if r.exponent_bound_holds {
                "holds for every candidate"
            } else {
                "VIOLATED"
            }
        ),
        r.conclusion.clone(),
    ]
}

pub fn divisible_json(r: &DivisibleReport) -> Value {
    let open = match &r.divisible_self_pairing {
        Ok(m) => json!({"computed": m.to_string()}),
        Err(e) => json!({"unverified": e.to_string()}),
    };
    json!({
        "self_pairing": r.self_pairing.to_string(),
        "against_point": r.against_point.to_string(),
        "against_point_rationalised": r.against_point_rationalised.to_string(),
        "torsion_tensor": r.torsion_tensor.to_string(),
        "divisible_self_pairing": open,
    })
}

pub fn divisible_text(r: &DivisibleReport) -> Vec<String> {
    let mut out = vec![
        format!("KK_0(DQ, DQ) = {}", r.self_pairing),
        format!("KK_0(DQ, point) = {}", r.against_point),
        format!("KK_0(DQ, point) rationalised = {}", r.against_point_rationalised),
        format!("Q/Z tensor Q = {}", r.torsion_tensor),
    ];
    match &r.divisible_self_pairing {
        Ok(m) => out.push(format!("KK_0(DQZ, DQZ) = {m}")),
        Err(Error::NotRepresentable { .. }) => {
            out.push("KK_0(DQZ, DQZ): unverified, value not representable here".into());
        }
        Err(e) => out.push(format!("KK_0(DQZ, DQZ): {e}")),
    }
    out
}

pub fn detection_json(r: &DetectionReport) -> Value {
    let per_degree: Vec<Value> = r
        .per_degree
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "iso": d.phi_iso,
                "localised_iso": d.loc_iso,
                "divisible_layer_iso": d.tor0_iso,
                "torsion_layer_iso": d.tor1_iso,
                "mod_prime_iso": d.mod_prime_iso,
            })
        })
        .collect();
    json!({
        "per_degree": per_degree,
        "iso": r.phi_iso,
        "localised_iso": r.loc_iso,
        "torsion_iso": r.tor_iso,
        "per_prime": r.per_prime,
    })
}

pub fn detection_text(r: &DetectionReport) -> Vec<String> {
    let flag = |b: bool| if b { "yes" } else { "no" };
    let mut out = Vec::new();
    for d in &r.per_degree {
        out.push(format!(
            "degree {}: iso {}, localised {}, divisible layer {}, torsion layer {}",
            d.degree,
            flag(d.phi_iso),
            flag(d.loc_iso),
            flag(d.tor0_iso),
            flag(d.tor1_iso)
        ));
    }
    out.push(format!(
        "overall: iso {}, localised {}, torsion {}",
        flag(r.phi_iso),
        flag(r.loc_iso),
        flag(r.tor_iso)
    ));
    if !r.per_prime.is_empty() {
        let per: Vec<String> = r
            .per_prime
            .iter()
            .map(|(p, ok)| format!("{p}: {}", flag(*ok)))
            .collect();
        out.push(format!("per prime: {}", per.join(", ")));
    }
    out
}

pub fn splitting_json(r: &SplittingReport) -> Value {
    let per_degree: Vec<Value> = r
        .per_degree
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "left": d.left.to_string(),
                "right": d.right.to_string(),
                "iso": d.iso,
            })
        })
        .collect();
    json!({
        "coefficient": r.coefficient.to_string(),
        "chi_two_torsion": r.chi_two_torsion,
        "doubling_composites": r.doubling_composites,
        "per_degree": per_degree,
        "splits": r.all_iso,
    })
}

pub fn splitting_text(r: &SplittingReport) -> Vec<String> {
    let mut out = vec![format!("coefficients: {}", r.coefficient)];
    out.push(format!(
        "chi is 2-torsion: {}",
        if r.chi_two_torsion { "yes" } else { "no" }
    ));
    let bad: Vec<String> = r
        .doubling_composites
        .iter()
        .filter(|&&(_, ok)| !ok)
        .map(|(m, _)| m.to_string())
        .collect();
    out.push(if bad.is_empty() {
        "doubling composites: all agree".into()
    } else {
        format!("doubling composites fail in degrees {}", bad.join(", "))
    });
    for d in &r.per_degree {
        out.push(format!(
            "degree {}: {} vs {} [{}]",
            d.degree,
            d.left,
            d.right,
            if d.iso { "iso" } else { "DIFFER" }
        ));
    }
    out.push(format!("splits: {}", if r.all_iso { "yes" } else { "no" }));
    out
}

pub fn sfinite_json(r: &SFiniteness) -> Value {
    match r {
        SFiniteness::ZeroObject => json!({"finiteness": "zero-object", "annihilator": 1}),
        SFiniteness::Annihilated(s) => {
            json!({"finiteness": "annihilated", "annihilator": s.to_string()})
        }
        SFiniteness::NotSFinite => json!({"finiteness": "not-s-finite", "annihilator": null}),
    }
}

pub fn sfinite_text(r: &SFiniteness) -> Vec<String> {
    vec![match r {
        SFiniteness::ZeroObject => "zero object: the identity is nullhomotopic".into(),
        SFiniteness::Annihilated(s) => format!("S-finite: annihilated by {s}"),
        SFiniteness::NotSFinite => "not S-finite".into(),
    }]
}

pub fn sequiv_json(r: &SEquivalenceReport) -> Value {
    json!({
        "cone": sfinite_json(&r.cone_finiteness),
        "inverse_witness": r.inverse_witness.as_ref().map(|s| s.to_string()),
        "bound_exceeded": r.bound_exceeded,
        "agree": r.agree,
    })
}

pub fn sequiv_text(r: &SEquivalenceReport) -> Vec<String> {
    let mut out = Vec::new();
    out.push(format!(
        "cone: {}",
        sfinite_text(&r.cone_finiteness).join("")
    ));
    out.push(match &r.inverse_witness {
        Some(s) => format!("scaled homotopy inverse found with s = {s}"),
        None if r.bound_exceeded => "inverse search exhausted its bound".into(),
        None => "no scaled homotopy inverse".into(),
    });
    out.push(format!(
        "routes agree: {}",
        if r.agree { "yes" } else { "no" }
    ));
    out
}

pub fn chain_map_json(f: &ChainMap) -> Value {
    let mut parts = serde_json::Map::new();
    if let Some((lo, hi)) = f.source().window() {
        for n in lo..=hi {
            let m = f.part_at(n);
            if m.rows() > 0 || m.cols() > 0 {
                parts.insert(n.to_string(), matrix_json(&m));
            }
        }
    }
    json!({
        "source": print_complex(f.source()),
        "target": print_complex(f.target()),
        "parts": Value::Object(parts),
    })
}

pub fn chain_map_text(f: &ChainMap) -> Vec<String> {
    let mut out = vec![
        format!("source: {}", print_complex(f.source())),
        format!("target: {}", print_complex(f.target())),
    ];
    if let Some((lo, hi)) = f.source().window() {
        for n in lo..=hi {
            let m = f.part_at(n);
            if m.rows() > 0 || m.cols() > 0 {
                out.push(format!("degree {n}: {}", matrix_text(&m)));
            }
        }
    }
    out
}

pub fn checks_json(cfg: &SuiteConfig, results: &[CheckResult]) -> Value {
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "claim": r.claim,
                "passed": r.passed,
                "summary": r.summary,
                "details": r.details,
            })
        })
        .collect();
    json!({
        "seed": cfg.seed,
        "trials": cfg.trials,
        "max_order": cfg.max_order,
        "checks": checks,
        "passed": results.iter().all(|r| r.passed),
    })
}

pub fn checks_text(cfg: &SuiteConfig, results: &[CheckResult]) -> Vec<String> {
    let mut out = vec![format!(
        "reproduction suite: seed {:#x}, trials {}, max order {}",
        cfg.seed, cfg.trials, cfg.max_order
    )];
    for r in results {
        out.push(format!(
            "{:>2}  {}  {:<22} {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.claim
        ));
        out.push(format!("          {} ({} ms)", r.summary, r.millis));
        for d in &r.details {
            out.push(format!("          {d}"));
        }
    }
    let good = results.iter().filter(|r| r.passed).count();
    let total_ms: u128 = results.iter().map(|r| r.millis).sum();
    out.push(format!(
        "{good}/{} checks passed in {:.1} s",
        results.len(),
        total_ms as f64 / 1000.0
    ));
    out
}
