//! Machine-readable (JSON) and human-readable (text) report emission.
//! Exact scalars are serialized as compact strings (`3/4+1/2i`), never as
//! floating point.

use crate::gallery::GalleryCase;
use crate::normal_form::FormTag;
use crate::poly::Point;
use crate::verify::{VerificationReport, Verdict};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl ReportFormat {
    pub fn parse(text: &str) -> Result<ReportFormat, String> {
        match text {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

pub fn point_to_json(pt: &Point) -> Value {
    json!({
        "p": pt.p.iter().map(|s| s.to_compact_string()).collect::<Vec<_>>(),
        "q": pt.q.iter().map(|s| s.to_compact_string()).collect::<Vec<_>>(),
    })
}

pub fn form_label(form: FormTag) -> &'static str {
    match form {
        FormTag::Form1 => "form1",
        FormTag::Form2 => "form2",
        FormTag::Form3 => "form3",
    }
}

pub fn verdict_to_json(verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Holds => json!({ "verdict": "holds" }),
        Verdict::HypothesisViolated(v) => json!({
            "verdict": "hypothesis-violated",
            "violation": v.label(),
        }),
        Verdict::Indeterminate(msg) => json!({
            "verdict": "indeterminate",
            "detail": msg,
        }),
    }
}

/// Process exit code for a verdict: 0 holds, 2 hypothesis violated,
/// 4 internal/indeterminate.
pub fn verdict_exit_code(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Holds => 0,
        Verdict::HypothesisViolated(_) => 2,
        Verdict::Indeterminate(_) => 4,
    }
}

pub fn verification_to_json(rep: &VerificationReport) -> Value {
    let mut v = json!({
        "command": "verify",
        "input_p": rep.input_p,
        "input_q": rep.input_q,
        "n": rep.n,
        "d": rep.d,
        "rank_p": rep.rank_p,
        "rank_p_pow_d": rep.rank_p_pow_d,
        "target": rep.target.map(|t| t.to_string()),
        "rank_formula_matches": rep.rank_formula_matches,
        "qpd_lower_bound": rep.qpd_lower_bound,
        "qpd_exact_rank": rep.qpd_exact_rank,
        "structure_ok": rep.structure_ok,
        "pivots_ok": rep.pivots_ok,
        "extra_power_factored": rep.extra_power_factored,
        "timings_ms": rep.timings_ms.iter().map(|(k, v)| json!({"step": k, "ms": v})).collect::<Vec<_>>(),
    });
    let obj = v.as_object_mut().unwrap();
    for (k, val) in verdict_to_json(&rep.verdict).as_object().unwrap() {
        obj.insert(k.clone(), val.clone());
    }
    if let Some(pt) = &rep.base_point {
        obj.insert("base_point".into(), point_to_json(pt));
    }
    if let Some(nf) = &rep.normal_form {
        obj.insert(
            "normal_form".into(),
            json!({
                "form": form_label(nf.form),
                "r": nf.r,
                "dimension_after": nf.dimension_after,
                "steps": nf.steps,
                "swapped_blocks": nf.swapped_blocks,
                "epsilons": nf.epsilons.iter().map(|e| e.to_compact_string()).collect::<Vec<_>>(),
            }),
        );
    }
    v
}

pub fn verification_to_text(rep: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance: n = {}, d = {}\n", rep.n, rep.d));
    out.push_str(&format!("  P = {}\n", rep.input_p));
    out.push_str(&format!("  Q = {}\n", rep.input_q));
    if let Some(pt) = &rep.base_point {
        let coords: Vec<String> = pt.p.iter().map(|s| s.to_compact_string()).collect();
        out.push_str(&format!("base point (z,w): ({})\n", coords.join(", ")));
    }
    if let Some(r) = rep.rank_p {
        out.push_str(&format!("rank P           : {r}\n"));
    }
    if let Some(r) = rep.rank_p_pow_d {
        out.push_str(&format!("rank P^d         : {r}\n"));
    }
    if let Some(t) = rep.target {
        out.push_str(&format!("target C(r+d-1,d): {t}\n"));
    }
    if let Some(b) = rep.qpd_lower_bound {
        out.push_str(&format!("rank QP^d bound  : {b} (certified lower bound)\n"));
    }
    if let Some(e) = rep.qpd_exact_rank {
        out.push_str(&format!("rank QP^d exact  : {e}\n"));
    }
    if let Some(nf) = &rep.normal_form {
        out.push_str(&format!(
            "normal form      : {} (r = {}, dim {} after {} steps{})\n",
            form_label(nf.form),
            nf.r,
            nf.dimension_after,
            nf.steps,
            if nf.epsilons.is_empty() {
                String::new()
            } else {
                format!(
                    ", eps = [{}]",
                    nf.epsilons
                        .iter()
                        .map(|e| e.to_compact_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        ));
    }
    if let (Some(s), Some(p)) = (rep.structure_ok, rep.pivots_ok) {
        out.push_str(&format!(
            "certification    : structure {}, pivots {}\n",
            if s { "ok" } else { "FAILED" },
            if p { "ok" } else { "FAILED" }
        ));
    }
    let verdict = match &rep.verdict {
        Verdict::Holds => "holds".to_string(),
        Verdict::HypothesisViolated(v) => format!("hypothesis violated ({})", v.label()),
        Verdict::Indeterminate(msg) => format!("indeterminate ({msg})"),
    };
    out.push_str(&format!("verdict          : {verdict}\n"));
    out
}

pub fn gallery_to_json(cases: &[GalleryCase]) -> Value {
    Value::Array(
        cases
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "construction": c.construction,
                    "claim": c.claim,
                    "expected": c.expected.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>(),
                    "observed": c.observed.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>(),
                    "pass": c.pass,
                })
            })
            .collect(),
    )
}

pub fn gallery_to_text(cases: &[GalleryCase]) -> String {
    let mut out = String::new();
    for c in cases {
        out.push_str(&format!(
            "[{}] {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.id
        ));
        out.push_str(&format!("    {}\n", c.construction));
        out.push_str(&format!("    claim: {}\n", c.claim));
        for ((k, e), (_, o)) in c.expected.iter().zip(&c.observed) {
            let mark = if e == o { " " } else { "!" };
            out.push_str(&format!("   {mark}{k}: expected {e}, observed {o}\n"));
        }
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} cases pass\n", cases.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::AnalyticJet;
    use crate::poly::PolarizedPolynomial as P;
    use crate::scalar::Scalar;
    use crate::verify::{verify_theorem, VerifyOptions};

    #[test]
    fn holds_verdict_serializes() {
        let n = 2;
        let p = P::var_w(n)
            .add(&P::var_eta(n))
            .unwrap()
            .add(&P::var_z(n, 0).mul(&P::var_zeta(n, 0)).unwrap())
            .unwrap();
        let q = AnalyticJet::constant_one(n, 2);
        let rep = verify_theorem(&p, &q, 2, None, VerifyOptions::default());
        let v = verification_to_json(&rep);
        assert_eq!(v["verdict"], "holds");
        assert_eq!(v["rank_p"], 3);
        let text = verification_to_text(&rep);
        assert!(text.contains("verdict          : holds"));
    }

    #[test]
    fn scalar_encoding_in_reports() {
        let s = Scalar::from_ratio(3, 4).add(&Scalar::i().mul(&Scalar::from_ratio(1, 2)));
        assert_eq!(s.to_compact_string(), "3/4+1/2i");
    }

    #[test]
    fn gallery_emits_one_object_per_case() {
        let cases = crate::gallery::run_gallery();
        let v = gallery_to_json(&cases);
        assert_eq!(v.as_array().unwrap().len(), cases.len());
        for item in v.as_array().unwrap() {
            assert!(item["pass"].is_boolean());
        }
    }
}
