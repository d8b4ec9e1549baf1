//! End-to-end verification of the rank inequality for one instance
//! `(P, Q, d)`: hypothesis checks, base-point arrangement, normal-form
//! reduction, structure and pivot certification, and the final verdict
//! comparing the certified lower bound against `C(rank P + d - 1, d)`.

use crate::error::Error;
use crate::index_sets::{pivot_verify, structure_check, StructureMode};
use crate::jet::{jet_times_power, rank_lower_bound, AnalyticJet};
use crate::matrix::{build_matrix, multinomial_bound, rank_of};
use crate::normal_form::{
    classify_linear_form, factor_out_p, find_zero, reduce_full_rank, replay, ChangeStep, FormTag,
    NormalFormReport,
};
use crate::poly::{Bidegree, Point, PolarizedPolynomial};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use std::time::Instant;

/// Which hypothesis of the rank inequality failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisViolation {
    BidegreeTooLarge { got: (u32, u32) },
    QIdenticallyZero,
    NoZeroPointFound,
    GivenPointNotOnZeroSet,
    QUndefinedAtBasePoint,
    QVanishesOnZeroSet,
}

impl HypothesisViolation {
    pub fn label(&self) -> &'static str {
        match self {
            HypothesisViolation::BidegreeTooLarge { .. } => "bidegree-too-large",
            HypothesisViolation::QIdenticallyZero => "q-identically-zero",
            HypothesisViolation::NoZeroPointFound => "no-zero-point-found",
            HypothesisViolation::GivenPointNotOnZeroSet => "given-point-not-on-zero-set",
            HypothesisViolation::QUndefinedAtBasePoint => "q-undefined-at-base-point",
            HypothesisViolation::QVanishesOnZeroSet => "q-vanishes-at-base-point",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The exact inequality `lower bound >= C(rank P + d - 1, d)` was
    /// established.
    Holds,
    HypothesisViolated(HypothesisViolation),
    /// Nothing was falsified, but the instance could not be certified
    /// (for example the truncated product vanished at this order).
    Indeterminate(String),
}

/// Condensed normalization trail for reports.
#[derive(Debug, Clone)]
pub struct NormalFormSummary {
    pub form: FormTag,
    pub r: usize,
    pub dimension_after: usize,
    pub steps: usize,
    pub swapped_blocks: bool,
    pub epsilons: Vec<Scalar>,
}

impl NormalFormSummary {
    fn from_report(rep: &NormalFormReport) -> NormalFormSummary {
        NormalFormSummary {
            form: rep.form,
            r: rep.r,
            dimension_after: rep.result.dimension(),
            steps: rep.trail.len(),
            swapped_blocks: rep
                .trail
                .iter()
                .any(|s| matches!(s, ChangeStep::SwapBlocks)),
            epsilons: rep.epsilons.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub input_p: String,
    pub input_q: String,
    pub n: usize,
    pub d: u32,
    pub base_point: Option<Point>,
    pub rank_p: Option<usize>,
    pub rank_p_pow_d: Option<usize>,
    /// `C(rank P + d - 1, d)`, the exact target.
    pub target: Option<u128>,
    pub rank_formula_matches: Option<bool>,
    /// Exact rank of the truncated coefficient matrix of `Q P^d`: a
    /// certified lower bound for the true rank.
    pub qpd_lower_bound: Option<usize>,
    /// Exact rank of `Q P^d` itself when `Q` is polynomial and the exact
    /// route was requested.
    pub qpd_exact_rank: Option<usize>,
    pub structure_ok: Option<bool>,
    pub pivots_ok: Option<bool>,
    /// Rank certified by the staged pivot reduction on both matrices, when
    /// it succeeded.
    pub pivot_certified_rank: Option<usize>,
    /// Exact rank of the truncated matrix of the reduced `P^d`, computed
    /// independently of the pivot route.
    pub pd_matrix_rank: Option<usize>,
    pub extra_power_factored: u32,
    pub normal_form: Option<NormalFormSummary>,
    pub verdict: Verdict,
    pub timings_ms: Vec<(String, u128)>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Also compute the exact rank of `Q P^d` (polynomial `Q` only).
    pub compute_exact_qpd: bool,
}

/// Searches the zero set of a bidegree-(1,1) polynomial for a polarized
/// point where the jet is defined and nonzero, using that `P` has degree
/// at most 1 in `w`: assign small deterministic values to every other
/// variable and solve for `w` exactly.
fn find_point_with_q_nonzero(p: &PolarizedPolynomial, q: &AnalyticJet) -> Option<Point> {
    let n = p.dimension();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x61727261_6e6765);
    for attempt in 0..240 {
        let small = |rng: &mut rand_chacha::ChaCha8Rng| -> Scalar {
            let denom = 1i64 << rng.gen_range(0u32..4);
            Scalar::from_ratio(rng.gen_range(-2i64..=2), denom)
        };
        let mut pp: Vec<Scalar> = (0..n).map(|_| small(&mut rng)).collect();
        let mut qq: Vec<Scalar> = (0..n).map(|_| small(&mut rng)).collect();
        if attempt < 8 {
            // first try sparse assignments close to the origin
            for v in pp.iter_mut().skip(attempt % 2) {
                *v = Scalar::zero();
            }
            for v in qq.iter_mut().skip((attempt + 1) % 2) {
                *v = Scalar::zero();
            }
        }
        // P = A + B w once every other variable is fixed
        let with_w = |w: Scalar, pp: &[Scalar], qq: &[Scalar]| -> Point {
            let mut full_p = pp.to_vec();
            full_p[n - 1] = w;
            Point::new(full_p, qq.to_vec())
        };
        let a = p.evaluate(&with_w(Scalar::zero(), &pp, &qq));
        let b = p.evaluate(&with_w(Scalar::one(), &pp, &qq)).sub(&a);
        if b.is_zero() {
            continue;
        }
        let w = a.neg().div(&b);
        let point = with_w(w, &pp, &qq);
        debug_assert!(p.evaluate(&point).is_zero());
        if q.is_nonzero_at(&point) == Some(true) {
            return Some(point);
        }
    }
    None
}

/// Runs the full pipeline. Hypothesis violations become structured
/// verdicts; only programmer errors (dimension mismatches) panic.
pub fn verify_theorem(
    p: &PolarizedPolynomial,
    q: &AnalyticJet,
    d: u32,
    base_point: Option<Point>,
    opts: VerifyOptions,
) -> VerificationReport {
    assert_eq!(
        p.dimension(),
        q.dimension(),
        "P and Q must share a dimension"
    );
    assert!(q.truncation() >= d, "Q must be truncated to at least (d, d)");
    let n = p.dimension();
    let mut report = VerificationReport {
        input_p: p.to_string(),
        input_q: q.recipe_kind_label(),
        n,
        d,
        base_point: None,
        rank_p: None,
        rank_p_pow_d: None,
        target: None,
        rank_formula_matches: None,
        qpd_lower_bound: None,
        qpd_exact_rank: None,
        structure_ok: None,
        pivots_ok: None,
        pivot_certified_rank: None,
        pd_matrix_rank: None,
        extra_power_factored: 0,
        normal_form: None,
        verdict: Verdict::Indeterminate("pipeline did not finish".into()),
        timings_ms: Vec::new(),
    };
    let t0 = Instant::now();
    let stamp = |report: &mut VerificationReport, label: &str, start: Instant| {
        report
            .timings_ms
            .push((label.to_string(), start.elapsed().as_millis()));
    };

    // bidegree hypothesis
    if !p.bidegree().at_most(1, 1) {
        let Bidegree::Of(j, k) = p.bidegree() else {
            unreachable!()
        };
        report.verdict =
            Verdict::HypothesisViolated(HypothesisViolation::BidegreeTooLarge { got: (j, k) });
        return report;
    }

    // Q not identically zero
    if q.is_identically_zero() {
        report.verdict = Verdict::HypothesisViolated(HypothesisViolation::QIdenticallyZero);
        return report;
    }

    // P identically zero: the inequality is trivial for d >= 1
    if p.is_zero() {
        report.rank_p = Some(0);
        report.target = Some(multinomial_bound(0, d));
        report.rank_p_pow_d = Some(if d == 0 { 1 } else { 0 });
        if d >= 1 {
            report.verdict = Verdict::Holds;
            report.qpd_lower_bound = Some(0);
        } else {
            let bound = rank_lower_bound(q, p, 0).expect("bidegree fits");
            report.qpd_lower_bound = Some(bound);
            report.verdict = if bound >= 1 {
                Verdict::Holds
            } else {
                Verdict::Indeterminate(
                    "Q vanishes at the expansion point; rank 1 not certified at order 0".into(),
                )
            };
        }
        return report;
    }

    // base point on the zero set
    let t_zero = Instant::now();
    let point = match base_point {
        Some(pt) => {
            assert_eq!(pt.dimension(), n, "point dimension mismatch");
            if !p.evaluate(&pt).is_zero() {
                report.verdict =
                    Verdict::HypothesisViolated(HypothesisViolation::GivenPointNotOnZeroSet);
                return report;
            }
            pt
        }
        None => match find_zero(p).expect("bidegree already checked") {
            Some(pt) => pt,
            None => {
                report.verdict =
                    Verdict::HypothesisViolated(HypothesisViolation::NoZeroPointFound);
                return report;
            }
        },
    };
    stamp(&mut report, "zero-point", t_zero);
    report.base_point = Some(point.clone());

    // Q defined at the base point
    if q.is_nonzero_at(&point).is_none() {
        report.verdict = Verdict::HypothesisViolated(HypothesisViolation::QUndefinedAtBasePoint);
        return report;
    }

    // move the base point to the origin: substituting x -> x + point
    // makes the new origin evaluate the old function at the point
    let mut cur_p = p.translate(&point.p, &point.q);
    let mut cur_q = match q.translate(&point.p, &point.q) {
        Ok(j) => j,
        Err(_) => {
            report.verdict =
                Verdict::HypothesisViolated(HypothesisViolation::QUndefinedAtBasePoint);
            return report;
        }
    };
    debug_assert!(cur_p.constant_term().is_zero());

    // exact rank data on the original polynomial
    let t_rank = Instant::now();
    let rank_p = rank_of(p);
    let target = multinomial_bound(rank_p, d);
    let rank_pd = rank_of(&p.pow(d));
    stamp(&mut report, "rank-p", t_rank);
    report.rank_p = Some(rank_p);
    report.target = Some(target);
    report.rank_p_pow_d = Some(rank_pd);
    report.rank_formula_matches = Some(rank_pd as u128 == target);

    if opts.compute_exact_qpd {
        if let Some(q_poly) = q.as_polynomial() {
            let t_exact = Instant::now();
            let product = q_poly.mul(&p.pow(d)).expect("same dimension");
            report.qpd_exact_rank = Some(rank_of(&product));
            stamp(&mut report, "exact-qpd", t_exact);
        }
    }

    // trivial branch: rank P <= 1
    if rank_p <= 1 {
        let bound = rank_lower_bound(&cur_q, &cur_p, d).expect("bidegree fits");
        report.qpd_lower_bound = Some(bound);
        report.verdict = if bound as u128 >= target {
            Verdict::Holds
        } else {
            Verdict::Indeterminate(format!(
                "rank P = {rank_p}: truncated product gives bound {bound} < {target} at this order"
            ))
        };
        return report;
    }

    // arrange Q nonzero at the base point (its constant after translation)
    let mut extra_power = 0u32;
    if cur_q.constant_term().is_zero() {
        let t_arr = Instant::now();
        let mut arranged = false;
        if let Some(pt) = find_point_with_q_nonzero(&cur_p, &cur_q) {
            let moved_p = cur_p.translate(&pt.p, &pt.q);
            if let Ok(moved_q) = cur_q.translate(&pt.p, &pt.q) {
                debug_assert!(moved_p.constant_term().is_zero());
                cur_p = moved_p;
                cur_q = moved_q;
                arranged = true;
            }
        }
        if !arranged {
            // polynomial Q vanishing on the whole zero set: split off the
            // largest power of P, then certify at the raised degree
            if let Some(q_poly) = cur_q.as_polynomial() {
                if let Ok(rep) = classify_linear_form(&cur_p) {
                    if matches!(rep.form, FormTag::Form1 | FormTag::Form2) {
                        let moved_q = replay(&q_poly, &rep.trail);
                        if let Ok((q_rest, power)) = factor_out_p(&moved_q, &rep.result) {
                            if power > 0 {
                                cur_p = rep.result;
                                extra_power = power;
                                cur_q = AnalyticJet::from_polynomial(
                                    q_rest,
                                    q.truncation() + power,
                                );
                                if cur_q.constant_term().is_zero() {
                                    if let Some(pt) = find_point_with_q_nonzero(&cur_p, &cur_q) {
                                        cur_p = cur_p.translate(&pt.p, &pt.q);
                                        cur_q = cur_q
                                            .translate(&pt.p, &pt.q)
                                            .expect("polynomial jets always move");
                                    }
                                }
                                arranged = !cur_q.constant_term().is_zero();
                            }
                        }
                    }
                }
            }
        }
        stamp(&mut report, "arrange-q", t_arr);
        if !arranged {
            report.verdict = Verdict::HypothesisViolated(HypothesisViolation::QVanishesOnZeroSet);
            return report;
        }
    }
    report.extra_power_factored = extra_power;
    let d_eff = d + extra_power;

    // normal form reduction
    let t_nf = Instant::now();
    let (p_norm, q_norm, nf_report) = match reduce_full_rank(&cur_p, &cur_q, d_eff) {
        Ok(out) => out,
        Err(Error::EpsilonSearchFailed) => {
            report.verdict = Verdict::Indeterminate(
                "no admissible epsilon shift kept Q nonzero within the dyadic search".into(),
            );
            return report;
        }
        Err(Error::QVanishesAtBasePoint) => {
            report.verdict = Verdict::HypothesisViolated(HypothesisViolation::QVanishesOnZeroSet);
            return report;
        }
        Err(e) => {
            report.verdict = Verdict::Indeterminate(format!("reduction failed: {e}"));
            return report;
        }
    };
    stamp(&mut report, "normal-form", t_nf);
    report.normal_form = Some(NormalFormSummary::from_report(&nf_report));

    // structure certification on both matrices
    let t_struct = Instant::now();
    let p_pow = p_norm.pow(d_eff);
    let structure_p = structure_check(&p_pow, d_eff, &StructureMode::PowerOnly);
    let qpd = match jet_times_power(&q_norm, &p_norm, d_eff) {
        Ok(j) => j,
        Err(e) => {
            report.verdict = Verdict::Indeterminate(format!("product truncation failed: {e}"));
            return report;
        }
    };
    let structure_q = structure_check(
        qpd.coefficients(),
        d_eff,
        &StructureMode::WithQ(q_norm.constant_term()),
    );
    report.structure_ok = Some(structure_p.ok && structure_q.ok);
    stamp(&mut report, "structure", t_struct);

    let t_piv = Instant::now();
    let m_p = build_matrix(&p_pow, d_eff);
    let m_q = build_matrix(qpd.coefficients(), d_eff);
    let pivots_p = pivot_verify(&m_p, d_eff);
    let pivots_q = pivot_verify(&m_q, d_eff);
    report.pivots_ok = Some(pivots_p.ok && pivots_q.ok);
    if pivots_p.rank == pivots_q.rank {
        report.pivot_certified_rank = pivots_p.rank;
    }
    report.pd_matrix_rank = Some(crate::matrix::exact_rank(&m_p));
    stamp(&mut report, "pivots", t_piv);

    let t_bound = Instant::now();
    let bound = crate::matrix::exact_rank(&m_q);
    stamp(&mut report, "lower-bound", t_bound);
    report.qpd_lower_bound = Some(bound);

    if !(structure_p.ok && structure_q.ok && pivots_p.ok && pivots_q.ok) {
        report.verdict =
            Verdict::Indeterminate("internal structure or pivot certification failed".into());
        return report;
    }

    // compare at the effective degree: when a power of P was factored out
    // of Q, the certified bound covers the raised target, which dominates
    // the original one
    let target_eff = multinomial_bound(rank_p, d_eff);
    report.verdict = if bound as u128 >= target_eff && target_eff >= target {
        Verdict::Holds
    } else if (bound as u128) < target_eff {
        Verdict::Indeterminate(format!("certified bound {bound} below target {target_eff}"))
    } else {
        Verdict::Indeterminate("factored target below original target".into())
    };
    report
        .timings_ms
        .push(("total".into(), t0.elapsed().as_millis()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolarizedPolynomial as P;

    fn full_normal_form(n: usize) -> P {
        let mut p = P::var_w(n).add(&P::var_eta(n)).unwrap();
        for k in 0..n - 1 {
            p = p
                .add(&P::var_z(n, k).mul(&P::var_zeta(n, k)).unwrap())
                .unwrap();
        }
        p
    }

    #[test]
    fn holds_with_binomial_ten() {
        // P = w + wbar + |z1|^2 on C^2 with d = 3: rank P = 3 and the
        // target is C(5, 3) = 10
        let n = 2;
        let d = 3;
        let p = full_normal_form(n);
        let q = AnalyticJet::from_polynomial(
            P::constant(n, Scalar::from_int(2))
                .add(&P::var_z(n, 0))
                .unwrap(),
            d,
        );
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.rank_p, Some(3));
        assert_eq!(rep.target, Some(10));
        assert_eq!(rep.rank_p_pow_d, Some(10));
        assert_eq!(rep.rank_formula_matches, Some(true));
        assert!(rep.qpd_lower_bound.unwrap() >= 10);
        assert_eq!(rep.structure_ok, Some(true));
        assert_eq!(rep.pivots_ok, Some(true));
    }

    #[test]
    fn no_zero_set_is_reported() {
        let n = 2;
        let p = P::one(n).add(&P::hermitian_norm_sq(n)).unwrap();
        let q = AnalyticJet::constant_one(n, 2);
        let rep = verify_theorem(&p, &q, 2, None, VerifyOptions::default());
        assert_eq!(
            rep.verdict,
            Verdict::HypothesisViolated(HypothesisViolation::NoZeroPointFound)
        );
    }

    #[test]
    fn q_identically_zero_is_reported() {
        let n = 2;
        let p = full_normal_form(n);
        let q = AnalyticJet::from_polynomial(P::zero(n), 2);
        let rep = verify_theorem(&p, &q, 2, None, VerifyOptions::default());
        assert_eq!(
            rep.verdict,
            Verdict::HypothesisViolated(HypothesisViolation::QIdenticallyZero)
        );
    }

    #[test]
    fn exact_route_agrees_for_polynomial_q() {
        let n = 2;
        let d = 2;
        let p = full_normal_form(n);
        let q = AnalyticJet::from_polynomial(
            P::one(n)
                .add(&P::var_z(n, 0).mul(&P::var_zeta(n, 0)).unwrap())
                .unwrap(),
            d,
        );
        let rep = verify_theorem(
            &p,
            &q,
            d,
            None,
            VerifyOptions {
                compute_exact_qpd: true,
            },
        );
        assert_eq!(rep.verdict, Verdict::Holds);
        let exact = rep.qpd_exact_rank.unwrap();
        let bound = rep.qpd_lower_bound.unwrap();
        assert!(exact >= bound);
        assert!(bound as u128 >= rep.target.unwrap());
    }

    #[test]
    fn exact_and_certified_routes_agree_on_random_instances() {
        use crate::random::{random_instance, InstanceShape};
        for seed in 0..12u64 {
            let n = 1 + (seed as usize) % 3;
            let d = (seed % 3) as u32 + 1;
            let inst = random_instance(900 + seed, n, d, InstanceShape::WithPolynomialQ);
            let rep = verify_theorem(
                &inst.p,
                &inst.q,
                d,
                inst.base_point.clone(),
                VerifyOptions {
                    compute_exact_qpd: true,
                },
            );
            assert_eq!(rep.verdict, Verdict::Holds, "seed {seed}");
            let exact = rep.qpd_exact_rank.expect("polynomial Q");
            let bound = rep.qpd_lower_bound.unwrap();
            assert!(exact >= bound, "seed {seed}: exact {exact} < bound {bound}");
            assert!(bound as u128 >= rep.target.unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn rank_one_trivial_branch() {
        // P = w has rank 1: target C(d, d) = 1
        let n = 2;
        let p = P::var_w(n);
        let q = AnalyticJet::from_polynomial(P::constant(n, Scalar::from_int(3)), 2);
        let rep = verify_theorem(&p, &q, 2, None, VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.rank_p, Some(1));
        assert_eq!(rep.target, Some(1));
    }

    #[test]
    fn given_point_off_zero_set_is_rejected() {
        let n = 2;
        let p = full_normal_form(n);
        let q = AnalyticJet::constant_one(n, 2);
        let off = Point::diagonal(vec![Scalar::zero(), Scalar::one()]);
        let rep = verify_theorem(&p, &q, 2, Some(off), VerifyOptions::default());
        assert_eq!(
            rep.verdict,
            Verdict::HypothesisViolated(HypothesisViolation::GivenPointNotOnZeroSet)
        );
    }

    #[test]
    fn q_vanishing_at_point_gets_rearranged() {
        // Q = z1 vanishes at the origin but not on the zero set of P, so
        // the pipeline moves to a nearby zero-set point and still holds.
        let n = 2;
        let d = 1;
        let p = full_normal_form(n);
        let q = AnalyticJet::from_polynomial(P::var_z(n, 0), d);
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    }

    #[test]
    fn q_multiple_of_p_factors_out() {
        // Q = P vanishes identically on the zero set; the pipeline splits
        // it off and certifies at the raised power.
        let n = 2;
        let d = 1;
        let p = full_normal_form(n);
        let q = AnalyticJet::from_polynomial(p.clone(), d + 1);
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
        assert_eq!(rep.extra_power_factored, 1);
    }

    #[test]
    fn undefined_q_at_zero_point() {
        // P = 1 - ||z||^2 has zeros only where 1/P^d blows up
        let n = 2;
        let d = 2;
        let p = P::one(n).sub(&P::hermitian_norm_sq(n)).unwrap();
        let q = AnalyticJet::reciprocal_of(p.pow(d), d).unwrap();
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        assert_eq!(
            rep.verdict,
            Verdict::HypothesisViolated(HypothesisViolation::QUndefinedAtBasePoint)
        );
    }
}
