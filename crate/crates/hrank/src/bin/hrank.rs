//! Command-line interface: exact hermitian rank computations, signed
//! square decompositions, normal-form reduction, and verification of the
//! rank inequality for powers of bidegree-(1,1) polynomials.
//!
//! Exit codes: 0 success or verdict "holds"; 2 hypothesis violated;
//! 3 parse or usage error; 4 internal check failed.

use clap::{Args, Parser, Subcommand};
use hrank::gallery::run_gallery;
use hrank::jet::{AnalyticJet, Recipe};
use hrank::matrix::{rank_factorize, rank_of, signature_decompose};
use hrank::normal_form::{classify_linear_form, find_zero, reduce_full_rank};
use hrank::parse::{parse_point, parse_poly};
use hrank::random::{random_instance, InstanceShape};
use hrank::report::{
    form_label, gallery_to_json, gallery_to_text, verdict_exit_code, verification_to_json,
    verification_to_text, ReportFormat,
};
use hrank::verify::{verify_theorem, Verdict, VerifyOptions};
use hrank::{Bidegree, Error, PolarizedPolynomial, ScalarField};
use serde_json::json;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hrank",
    about = "Exact hermitian rank computations on C^n",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Number of holomorphic variables (z1..z{n-1}, w)
    #[arg(short = 'n', long = "dimension", default_value_t = 2)]
    n: usize,
    /// Scalar field: qi, or qi-sqrtS for a square-free S >= 2
    #[arg(long = "field", default_value = "qi")]
    field: String,
    /// Output format: text or json
    #[arg(long = "format", default_value = "text")]
    format: String,
    /// Write the report to a file instead of standard output
    #[arg(long = "out")]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and bidegree of a polynomial expression
    Rank {
        #[command(flatten)]
        common: CommonOpts,
        /// Expression, e.g. "w + ~w + z1*~z1"
        expr: String,
    },
    /// Rank factorization and, for real-valued input, the signed square
    /// decomposition
    Decompose {
        #[command(flatten)]
        common: CommonOpts,
        expr: String,
    },
    /// Classify the linear normal form and reduce to the full-rank form
    Normalize {
        #[command(flatten)]
        common: CommonOpts,
        /// Power used when transporting Q = 1 through the reduction
        #[arg(short = 'd', long = "power", default_value_t = 2)]
        d: u32,
        expr: String,
    },
    /// Verify rank(Q P^d) >= rank(P^d) = C(rank P + d - 1, d)
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(short = 'd', long = "power")]
        d: u32,
        /// The bidegree-(1,1) polynomial P
        #[arg(long = "p")]
        p_expr: String,
        /// The factor Q (interpretation set by --q-kind)
        #[arg(long = "q", default_value = "1")]
        q_expr: String,
        /// poly | reciprocal | exp
        #[arg(long = "q-kind", default_value = "poly")]
        q_kind: String,
        /// Diagonal base point as comma-separated scalars for (z1..,w)
        #[arg(long = "point")]
        point: Option<String>,
        /// Also compute the exact rank of Q P^d (polynomial Q only)
        #[arg(long = "exact", default_value_t = false)]
        exact: bool,
    },
    /// Run the counterexample gallery
    Gallery {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Seeded randomized verification suite
    RandomSuite {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(short = 'd', long = "power", default_value_t = 2)]
        d: u32,
        #[arg(long = "seed", default_value_t = 1)]
        seed: u64,
        #[arg(long = "trials", default_value_t = 25)]
        trials: u64,
        /// full-normal-form | general | with-poly-q | with-jet-q | mixed
        #[arg(long = "shape", default_value = "mixed")]
        shape: String,
    },
}

fn emit(common: &CommonOpts, text: String) -> Result<(), String> {
    match &common.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            f.write_all(text.as_bytes())
                .map_err(|e| format!("write failed: {e}"))?;
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Usage-level errors exit with code 3.
fn usage_err(msg: impl Into<String>) -> (i32, String) {
    (3, msg.into())
}

fn parse_common(common: &CommonOpts) -> Result<(ScalarField, ReportFormat), (i32, String)> {
    let field = ScalarField::parse(&common.field).map_err(usage_err)?;
    let format = ReportFormat::parse(&common.format).map_err(usage_err)?;
    if common.n < 1 {
        return Err(usage_err("dimension must be at least 1"));
    }
    Ok((field, format))
}

/// Expression arguments starting with `@` name a UTF-8 file to read.
fn parse_expr(
    expr: &str,
    n: usize,
    field: ScalarField,
) -> Result<PolarizedPolynomial, (i32, String)> {
    let text = match expr.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| usage_err(format!("cannot read {path}: {e}")))?,
        None => expr.to_string(),
    };
    parse_poly(text.trim(), n, field).map_err(|e| match e {
        Error::Parse { pos, msg } => usage_err(format!("parse error at byte {pos}: {msg}")),
        other => usage_err(other.to_string()),
    })
}

fn bidegree_json(b: Bidegree) -> serde_json::Value {
    match b {
        Bidegree::Zero => json!("zero"),
        Bidegree::Of(j, k) => json!([j, k]),
    }
}

fn run() -> Result<i32, (i32, String)> {
    let cli = Cli::try_parse().map_err(|e| {
        let msg = e.render().to_string();
        let code = if e.use_stderr() { 3 } else { 0 };
        (code, msg)
    })?;

    match cli.command {
        Command::Rank { common, expr } => {
            let (field, format) = parse_common(&common)?;
            let p = parse_expr(&expr, common.n, field)?;
            let rank = rank_of(&p);
            let text = match format {
                ReportFormat::Json => serde_json::to_string_pretty(&json!({
                    "command": "rank",
                    "n": common.n,
                    "field": field.to_string(),
                    "input": expr,
                    "bidegree": bidegree_json(p.bidegree()),
                    "real_valued": p.is_real_valued(),
                    "rank": rank,
                }))
                .unwrap(),
                ReportFormat::Text => {
                    let bd = match p.bidegree() {
                        Bidegree::Zero => "zero polynomial".to_string(),
                        Bidegree::Of(j, k) => format!("({j}, {k})"),
                    };
                    format!(
                        "polynomial : {p}\nbidegree   : {bd}\nreal-valued: {}\nrank       : {rank}",
                        p.is_real_valued()
                    )
                }
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(0)
        }
        Command::Decompose { common, expr } => {
            let (field, format) = parse_common(&common)?;
            let p = parse_expr(&expr, common.n, field)?;
            let fact = rank_factorize(&p);
            let signature = if p.is_real_valued() {
                Some(signature_decompose(&p).expect("real-valued checked"))
            } else {
                None
            };
            let text = match format {
                ReportFormat::Json => {
                    let mut v = json!({
                        "command": "decompose",
                        "n": common.n,
                        "input": expr,
                        "rank": fact.rank,
                        "phi": fact.phi.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "psi": fact.psi.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    });
                    if let Some(sig) = &signature {
                        v.as_object_mut().unwrap().insert(
                            "signature".into(),
                            json!({
                                "positive": sig.positive.iter()
                                    .map(|(w, f)| json!({"weight": w.to_compact_string(), "poly": f.to_string()}))
                                    .collect::<Vec<_>>(),
                                "negative": sig.negative.iter()
                                    .map(|(w, f)| json!({"weight": w.to_compact_string(), "poly": f.to_string()}))
                                    .collect::<Vec<_>>(),
                                "squares": sig.square_count(),
                            }),
                        );
                    }
                    serde_json::to_string_pretty(&v).unwrap()
                }
                ReportFormat::Text => {
                    let mut out = format!("rank {} factorization of {p}\n", fact.rank);
                    for (k, (f, g)) in fact.phi.iter().zip(&fact.psi).enumerate() {
                        out.push_str(&format!("  phi_{k} = {f}\n  psi_{k} = {g}\n"));
                    }
                    if let Some(sig) = &signature {
                        out.push_str(&format!(
                            "signed squares ({} positive, {} negative):\n",
                            sig.positive.len(),
                            sig.negative.len()
                        ));
                        for (w, f) in &sig.positive {
                            out.push_str(&format!("  + {} * |{f}|^2\n", w.to_compact_string()));
                        }
                        for (w, f) in &sig.negative {
                            out.push_str(&format!("  - {} * |{f}|^2\n", w.to_compact_string()));
                        }
                    } else {
                        out.push_str("input is not real-valued; no signed square decomposition\n");
                    }
                    out
                }
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(0)
        }
        Command::Normalize { common, d, expr } => {
            let (field, format) = parse_common(&common)?;
            let p = parse_expr(&expr, common.n, field)?;
            // move a zero to the origin first when needed
            let centered = if p.constant_term().is_zero() {
                p.clone()
            } else {
                match find_zero(&p).map_err(|e| usage_err(e.to_string()))? {
                    Some(pt) => p.translate(&pt.p, &pt.q),
                    None => {
                        let msg = "no zero point found; the polynomial may have an empty zero set"
                            .to_string();
                        return Err((2, msg));
                    }
                }
            };
            let class = classify_linear_form(&centered).map_err(|e| usage_err(e.to_string()))?;
            let q = AnalyticJet::constant_one(common.n, d);
            let reduced = reduce_full_rank(&centered, &q, d);
            let text = match format {
                ReportFormat::Json => {
                    let mut v = json!({
                        "command": "normalize",
                        "n": common.n,
                        "input": expr,
                        "form": form_label(class.form),
                        "r": class.r,
                        "classified": class.result.to_string(),
                        "rank": rank_of(&p),
                    });
                    if let Ok((p2, _q2, rep)) = &reduced {
                        v.as_object_mut().unwrap().insert(
                            "full_rank_form".into(),
                            json!({
                                "polynomial": p2.to_string(),
                                "dimension": p2.dimension(),
                                "steps": rep.trail.len(),
                                "epsilons": rep.epsilons.iter().map(|e| e.to_compact_string()).collect::<Vec<_>>(),
                            }),
                        );
                    }
                    serde_json::to_string_pretty(&v).unwrap()
                }
                ReportFormat::Text => {
                    let mut out = format!(
                        "linear form : {} with r = {}\nclassified  : {}\nrank        : {}\n",
                        form_label(class.form),
                        class.r,
                        class.result,
                        rank_of(&p)
                    );
                    match &reduced {
                        Ok((p2, _q2, rep)) => {
                            out.push_str(&format!(
                                "full-rank   : {} (dimension {}, {} steps)\n",
                                p2,
                                p2.dimension(),
                                rep.trail.len()
                            ));
                        }
                        Err(e) => out.push_str(&format!("reduction   : {e}\n")),
                    }
                    out
                }
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(0)
        }
        Command::Verify {
            common,
            d,
            p_expr,
            q_expr,
            q_kind,
            point,
            exact,
        } => {
            let (field, format) = parse_common(&common)?;
            let p = parse_expr(&p_expr, common.n, field)?;
            let q_poly = parse_expr(&q_expr, common.n, field)?;
            let trunc = d.max(2);
            let q = match q_kind.as_str() {
                "poly" => AnalyticJet::from_polynomial(q_poly, trunc),
                "reciprocal" => AnalyticJet::jet_of(Recipe::Reciprocal(q_poly), trunc)
                    .map_err(|e| usage_err(e.to_string()))?,
                "exp" => AnalyticJet::jet_of(Recipe::Exp(q_poly), trunc)
                    .map_err(|e| usage_err(e.to_string()))?,
                other => return Err(usage_err(format!("unknown --q-kind `{other}`"))),
            };
            let base = match point {
                Some(text) => {
                    Some(parse_point(&text, common.n).map_err(|e| usage_err(e.to_string()))?)
                }
                None => None,
            };
            let rep = verify_theorem(
                &p,
                &q,
                d,
                base,
                VerifyOptions {
                    compute_exact_qpd: exact,
                },
            );
            let text = match format {
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&verification_to_json(&rep)).unwrap()
                }
                ReportFormat::Text => verification_to_text(&rep),
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(verdict_exit_code(&rep.verdict))
        }
        Command::Gallery { common } => {
            let (_field, format) = parse_common(&common)?;
            let cases = run_gallery();
            let all_pass = cases.iter().all(|c| c.pass);
            let text = match format {
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&gallery_to_json(&cases)).unwrap()
                }
                ReportFormat::Text => gallery_to_text(&cases),
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(if all_pass { 0 } else { 4 })
        }
        Command::RandomSuite {
            common,
            d,
            seed,
            trials,
            shape,
        } => {
            let (_field, format) = parse_common(&common)?;
            let shapes: Vec<InstanceShape> = match shape.as_str() {
                "full-normal-form" => vec![InstanceShape::FullNormalFormWithTail],
                "general" => vec![InstanceShape::GeneralBidegree11],
                "with-poly-q" => vec![InstanceShape::WithPolynomialQ],
                "with-jet-q" => vec![InstanceShape::WithJetQ],
                "mixed" => vec![
                    InstanceShape::FullNormalFormWithTail,
                    InstanceShape::GeneralBidegree11,
                    InstanceShape::WithPolynomialQ,
                    InstanceShape::WithJetQ,
                ],
                other => return Err(usage_err(format!("unknown shape `{other}`"))),
            };
            let mut results = Vec::new();
            let mut all_hold = true;
            for k in 0..trials {
                let inst_seed = seed.wrapping_add(k);
                let inst_shape = shapes[(k as usize) % shapes.len()];
                let n = common.n.max(1);
                let inst = random_instance(inst_seed, n, d, inst_shape);
                let rep = verify_theorem(
                    &inst.p,
                    &inst.q,
                    d,
                    inst.base_point.clone(),
                    VerifyOptions::default(),
                );
                let ok = rep.verdict == Verdict::Holds;
                all_hold &= ok;
                results.push((inst_seed, inst_shape, rep));
            }
            let text = match format {
                ReportFormat::Json => {
                    let items: Vec<serde_json::Value> = results
                        .iter()
                        .map(|(s, sh, rep)| {
                            let mut v = verification_to_json(rep);
                            let obj = v.as_object_mut().unwrap();
                            obj.insert("seed".into(), json!(s));
                            obj.insert("shape".into(), json!(format!("{sh:?}")));
                            v
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "command": "random-suite",
                        "trials": trials,
                        "all_hold": all_hold,
                        "results": items,
                    }))
                    .unwrap()
                }
                ReportFormat::Text => {
                    let mut out = String::new();
                    for (s, sh, rep) in &results {
                        let verdict = match &rep.verdict {
                            Verdict::Holds => "holds".to_string(),
                            other => format!("{other:?}"),
                        };
                        out.push_str(&format!(
                            "seed {s:4} {sh:?}: rank P = {:?}, target = {:?}, bound = {:?} -> {verdict}\n",
                            rep.rank_p, rep.target, rep.qpd_lower_bound
                        ));
                    }
                    out.push_str(&format!(
                        "{}/{} instances hold\n",
                        results
                            .iter()
                            .filter(|(_, _, r)| r.verdict == Verdict::Holds)
                            .count(),
                        results.len()
                    ));
                    out
                }
            };
            emit(&common, text).map_err(usage_err)?;
            Ok(if all_hold { 0 } else { 4 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err((code, msg)) => {
            if code == 0 {
                // clap help/version output
                print!("{msg}");
                ExitCode::SUCCESS
            } else {
                eprintln!("{msg}");
                ExitCode::from(code as u8)
            }
        }
    }
}
