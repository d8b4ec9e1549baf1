//! The counterexample gallery: each case pins exact numbers showing that
//! the rank inequality is sharp and that none of its hypotheses can be
//! dropped — constant factors give equality, a missing zero set or an
//! undefined factor collapses the product rank to 1, bidegree (2,2)
//! breaks the bound, and the norm-form lower bound is attained.

use crate::jet::{rank_lower_bound, AnalyticJet};
use crate::matrix::{multinomial_bound, rank_of};
use crate::poly::PolarizedPolynomial;
use crate::random::{random_instance, InstanceShape};
use crate::scalar::Scalar;
use crate::verify::{verify_theorem, HypothesisViolation, Verdict, VerifyOptions};

#[derive(Debug, Clone)]
pub struct GalleryCase {
    pub id: String,
    pub construction: String,
    /// The exact claim the numbers certify.
    pub claim: String,
    /// `(name, expected)` pairs, all exact integers or verdict labels.
    pub expected: Vec<(String, String)>,
    pub observed: Vec<(String, String)>,
    pub pass: bool,
}

fn case(
    id: &str,
    construction: &str,
    claim: &str,
    pairs: Vec<(&str, String, String)>,
) -> GalleryCase {
    let pass = pairs.iter().all(|(_, e, o)| e == o);
    GalleryCase {
        id: id.to_string(),
        construction: construction.to_string(),
        claim: claim.to_string(),
        expected: pairs
            .iter()
            .map(|(k, e, _)| (k.to_string(), e.clone()))
            .collect(),
        observed: pairs
            .iter()
            .map(|(k, _, o)| (k.to_string(), o.clone()))
            .collect(),
        pass,
    }
}

fn full_normal_form(n: usize) -> PolarizedPolynomial {
    let mut p = PolarizedPolynomial::var_w(n)
        .add(&PolarizedPolynomial::var_eta(n))
        .unwrap();
    for k in 0..n - 1 {
        p = p
            .add(
                &PolarizedPolynomial::var_z(n, k)
                    .mul(&PolarizedPolynomial::var_zeta(n, k))
                    .unwrap(),
            )
            .unwrap();
    }
    p
}

/// Runs every gallery case; failures are verdicts inside the cases, never
/// panics.
pub fn run_gallery() -> Vec<GalleryCase> {
    let mut out = Vec::new();

    // (a) constant Q: equality rank(c P^d) = rank(P^d)
    {
        let n = 2;
        let d = 2;
        let p = full_normal_form(n);
        let pd = p.pow(d);
        let rank_pd = rank_of(&pd);
        let scaled = pd.scale(&Scalar::from_int(3));
        let rank_qpd = rank_of(&scaled);
        out.push(case(
            "a-constant-q-equality",
            "P = w + ~w + |z1|^2 on C^2, Q = 3, d = 2",
            "a nonzero constant Q gives equality: rank(Q P^d) = rank(P^d) = C(n+d, d)",
            vec![
                ("rank_pd", "6".into(), rank_pd.to_string()),
                ("rank_qpd", "6".into(), rank_qpd.to_string()),
            ],
        ));
    }

    // (b) P without zeros: rank P^d = C(n+d, d) but rank Q P^d = 1
    {
        let n = 2;
        let d = 2;
        let p = PolarizedPolynomial::one(n)
            .add(&PolarizedPolynomial::hermitian_norm_sq(n))
            .unwrap();
        let rank_pd = rank_of(&p.pow(d));
        let q = AnalyticJet::reciprocal_of(p.pow(d), d).unwrap();
        let bound = rank_lower_bound(&q, &p, d).unwrap();
        let qpd = crate::jet::jet_times_power(&q, &p, d).unwrap();
        let exact_trunc_rank = if qpd.coefficients() == &PolarizedPolynomial::one(n) {
            1
        } else {
            0
        };
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        let verdict = match rep.verdict {
            Verdict::HypothesisViolated(HypothesisViolation::NoZeroPointFound) => {
                "no-zero-point-found".to_string()
            }
            other => format!("{other:?}"),
        };
        out.push(case(
            "b-no-zero-set",
            "P = 1 + ||z||^2 on C^2, Q = 1/P^d, d = 2",
            "without a zero set the inequality fails: rank(Q P^d) = 1 < C(n+d, d) = rank(P^d)",
            vec![
                ("rank_qpd", "1".into(), bound.to_string()),
                ("rank_pd", "6".into(), rank_pd.to_string()),
                ("product_is_one", "1".into(), exact_trunc_rank.to_string()),
                ("verdict", "no-zero-point-found".into(), verdict),
            ],
        ));
    }

    // (c) Q undefined near the zero set: same collapse
    {
        let n = 2;
        let d = 2;
        let p = PolarizedPolynomial::one(n)
            .sub(&PolarizedPolynomial::hermitian_norm_sq(n))
            .unwrap();
        let rank_pd = rank_of(&p.pow(d));
        let q = AnalyticJet::reciprocal_of(p.pow(d), d).unwrap();
        let bound = rank_lower_bound(&q, &p, d).unwrap();
        let rep = verify_theorem(&p, &q, d, None, VerifyOptions::default());
        let verdict = match rep.verdict {
            Verdict::HypothesisViolated(HypothesisViolation::QUndefinedAtBasePoint) => {
                "q-undefined-at-base-point".to_string()
            }
            other => format!("{other:?}"),
        };
        out.push(case(
            "c-q-undefined-on-zero-set",
            "P = 1 - ||z||^2 on C^2, Q = 1/P^d, d = 2",
            "Q defined only away from the zero set: rank(Q P^d) = 1 < rank(P^d)",
            vec![
                ("rank_qpd_lower_bound", "1".into(), bound.to_string()),
                ("rank_pd", "6".into(), rank_pd.to_string()),
                ("verdict", "q-undefined-at-base-point".into(), verdict),
            ],
        ));
    }

    // (d) bidegree (2,2): ranks collapse from 3 to 2
    {
        let n = 2;
        let a = PolarizedPolynomial::var_z(n, 0)
            .mul(&PolarizedPolynomial::var_zeta(n, 0))
            .unwrap();
        let b = PolarizedPolynomial::var_w(n)
            .mul(&PolarizedPolynomial::var_eta(n))
            .unwrap();
        let r2 = Scalar::sqrt_base(2);
        let p = a
            .pow(2)
            .add(&b.pow(2))
            .unwrap()
            .sub(&a.mul(&b).unwrap().scale(&r2))
            .unwrap();
        let q = a
            .pow(2)
            .add(&b.pow(2))
            .unwrap()
            .add(&a.mul(&b).unwrap().scale(&r2))
            .unwrap();
        let rank_p = rank_of(&p);
        let product = p.mul(&q).unwrap();
        let rank_qp = rank_of(&product);
        // the product is |z1|^8 + |z2|^8
        let expected_product = a.pow(4).add(&b.pow(4)).unwrap();
        let product_matches = product == expected_product;
        let qjet = AnalyticJet::from_polynomial(q, 2);
        let rep = verify_theorem(&p, &qjet, 1, None, VerifyOptions::default());
        let verdict = match rep.verdict {
            Verdict::HypothesisViolated(HypothesisViolation::BidegreeTooLarge { .. }) => {
                "bidegree-too-large".to_string()
            }
            other => format!("{other:?}"),
        };
        out.push(case(
            "d-bidegree-2-2",
            "P = |z1|^4 - r2 |z1|^2 |z2|^2 + |z2|^4, Q the same with +r2, d = 1",
            "bidegree (2,2) breaks the bound: rank P = 3 but rank(Q P) = 2",
            vec![
                ("rank_p", "3".into(), rank_p.to_string()),
                ("rank_qp", "2".into(), rank_qp.to_string()),
                ("product_is_z1_8_plus_z2_8", "true".into(), product_matches.to_string()),
                ("verdict", "bidegree-too-large".into(), verdict),
            ],
        ));
    }

    // (e) the n = 2 equality example |z1|^4 - |z2|^4
    {
        let n = 2;
        let z1z1 = PolarizedPolynomial::var_z(n, 0)
            .mul(&PolarizedPolynomial::var_zeta(n, 0))
            .unwrap();
        let wweta = PolarizedPolynomial::var_w(n)
            .mul(&PolarizedPolynomial::var_eta(n))
            .unwrap();
        let q = z1z1.sub(&wweta).unwrap();
        let product = z1z1.pow(2).sub(&wweta.pow(2)).unwrap();
        let rank_product = rank_of(&product);
        let rank_q = rank_of(&q);
        out.push(case(
            "e-rank-two-product",
            "Q = |z1|^2 - |z2|^2 against P = ||z||^2 on C^2",
            "rank(Q ||z||^2) = |z1|^4 - |z2|^4 has rank 2 = n with rank Q = 2 > 1",
            vec![
                ("rank_product", "2".into(), rank_product.to_string()),
                ("rank_q", "2".into(), rank_q.to_string()),
            ],
        ));
    }

    // (f) norm-form lower bound: rank(Q ||z||^2) >= n on C^3
    {
        let n = 3;
        let d = 1;
        let p = PolarizedPolynomial::hermitian_norm_sq(n);
        let mut pairs = Vec::new();
        for seed in [11u64, 12, 13] {
            let inst = random_instance(seed, n, d, InstanceShape::WithPolynomialQ);
            // reuse only the random Q; pin P = ||z||^2 with the origin base point
            let q = inst.q;
            let q_ok = q.is_nonzero_at(&crate::poly::Point::origin(n)) == Some(true);
            let q_use = if q_ok {
                q
            } else {
                AnalyticJet::from_polynomial(
                    PolarizedPolynomial::one(n),
                    d.max(2),
                )
            };
            let rep = verify_theorem(
                &p,
                &q_use,
                d,
                Some(crate::poly::Point::origin(n)),
                VerifyOptions::default(),
            );
            let bound = rep.qpd_lower_bound.unwrap_or(0);
            let holds = rep.verdict == Verdict::Holds && bound >= n;
            pairs.push((
                format!("seed_{seed}_bound_at_least_n"),
                "true".to_string(),
                holds.to_string(),
            ));
        }
        let pass = pairs.iter().all(|(_, e, o)| e == o);
        out.push(GalleryCase {
            id: "f-norm-form-lower-bound".into(),
            construction: "P = ||z||^2 on C^3, random polynomial Q with Q(0) != 0, d = 1".into(),
            claim: format!(
                "rank(Q ||z||^2) >= n = {n} whenever Q is nonzero at the origin"
            ),
            expected: pairs
                .iter()
                .map(|(k, e, _)| (k.clone(), e.clone()))
                .collect(),
            observed: pairs
                .iter()
                .map(|(k, _, o)| (k.clone(), o.clone()))
                .collect(),
            pass,
        });
    }

    // (g) the multinomial upper bound is attained on the normal form
    {
        let n = 3;
        let d = 3;
        let p = full_normal_form(n);
        let rank_p = rank_of(&p);
        let rank_pd = rank_of(&p.pow(d));
        let bound = multinomial_bound(rank_p, d);
        out.push(case(
            "g-power-rank-formula",
            "P = w + ~w + ||z'||^2 on C^3, d = 3",
            "rank(P^d) attains C(rank P + d - 1, d) exactly",
            vec![
                ("rank_p", "4".into(), rank_p.to_string()),
                ("rank_pd", bound.to_string(), rank_pd.to_string()),
                ("binomial", "20".into(), bound.to_string()),
            ],
        ));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_gallery_cases_pass() {
        let cases = run_gallery();
        assert!(!cases.is_empty());
        for c in &cases {
            assert!(c.pass, "gallery case {} failed: {:?}", c.id, c.observed);
        }
    }
}
