//! Exact truncated power series (jets) of bidegree `(d, d)` representing
//! real-analytic factors `Q`. A jet carries the recipe it was built from,
//! so coordinate changes transport it by re-expansion instead of by
//! manipulating truncated coefficients, which would lose the feedback of
//! higher-order terms into low degrees.

use crate::error::Error;
use crate::matrix::{build_matrix, exact_rank};
use crate::poly::{Bidegree, Point, PolarizedPolynomial};
use crate::scalar::Scalar;

/// Coordinate transforms a jet can be pushed through.
#[derive(Debug, Clone)]
pub enum JetTransform {
    Translate { p0: Vec<Scalar>, q0: Vec<Scalar> },
    Linear { a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>> },
    BlockSwap,
    DropTailVars { keep: usize },
}

impl JetTransform {
    fn apply_poly(&self, s: &PolarizedPolynomial) -> PolarizedPolynomial {
        match self {
            JetTransform::Translate { p0, q0 } => s.translate(p0, q0),
            JetTransform::Linear { a, b } => s.linear_change_unchecked(a, b),
            JetTransform::BlockSwap => s.block_swap(),
            JetTransform::DropTailVars { keep } => s.zero_out_tail_vars(*keep),
        }
    }

    /// Maps a point in the transformed coordinates back to the base ones.
    /// `DropTailVars` needs the base dimension and is handled by the caller.
    fn map_point(&self, pt: &Point) -> Point {
        match self {
            JetTransform::Translate { p0, q0 } => Point::new(
                pt.p.iter().zip(p0).map(|(x, s)| x.add(s)).collect(),
                pt.q.iter().zip(q0).map(|(x, s)| x.add(s)).collect(),
            ),
            JetTransform::Linear { a, b } => Point::new(
                crate::linalg::mat_vec(a, &pt.p),
                crate::linalg::mat_vec(b, &pt.q),
            ),
            JetTransform::BlockSwap => Point::new(pt.q.clone(), pt.p.clone()),
            JetTransform::DropTailVars { .. } => {
                unreachable!("DropTailVars points are mapped with the base dimension")
            }
        }
    }
}

/// Construction recipe of a jet. `Shifted` wraps another recipe with a
/// coordinate transform; expansion pushes the transform into the base.
#[derive(Debug, Clone)]
pub enum Recipe {
    Polynomial(PolarizedPolynomial),
    Reciprocal(PolarizedPolynomial),
    Exp(PolarizedPolynomial),
    Product(Vec<Recipe>),
    Shifted {
        base: Box<Recipe>,
        transform: JetTransform,
    },
}

impl Recipe {
    fn dimension(&self) -> usize {
        match self {
            Recipe::Polynomial(s) | Recipe::Reciprocal(s) | Recipe::Exp(s) => s.dimension(),
            Recipe::Product(rs) => rs[0].dimension(),
            Recipe::Shifted { base, transform } => match transform {
                JetTransform::DropTailVars { keep } => keep + 1,
                _ => base.dimension(),
            },
        }
    }

    /// Structural rewrite pushing a transform into the recipe. For `Exp`,
    /// the transported polynomial is re-centered so its constant term is
    /// zero; this drops a nonzero constant factor `exp(c)`, which changes
    /// the jet by a unit and leaves every rank unchanged.
    fn rewritten(&self, tf: &JetTransform) -> Result<Recipe, Error> {
        match self {
            Recipe::Polynomial(s) => Ok(Recipe::Polynomial(tf.apply_poly(s))),
            Recipe::Reciprocal(s) => {
                let moved = tf.apply_poly(s);
                if moved.constant_term().is_zero() {
                    return Err(Error::JetUndefined(
                        "reciprocal denominator vanishes at the new base point".into(),
                    ));
                }
                Ok(Recipe::Reciprocal(moved))
            }
            Recipe::Exp(s) => {
                let moved = tf.apply_poly(s);
                let c = moved.constant_term();
                let centered = moved
                    .sub(&PolarizedPolynomial::constant(moved.dimension(), c))
                    .unwrap();
                Ok(Recipe::Exp(centered))
            }
            Recipe::Product(rs) => Ok(Recipe::Product(
                rs.iter()
                    .map(|r| r.rewritten(tf))
                    .collect::<Result<Vec<_>, _>>()?,
            )),
            Recipe::Shifted { base, transform } => base.rewritten(transform)?.rewritten(tf),
        }
    }

    fn expand(&self, d: u32) -> Result<PolarizedPolynomial, Error> {
        match self {
            Recipe::Polynomial(s) => Ok(s.truncate_bidegree(d)),
            Recipe::Reciprocal(s) => {
                let n = s.dimension();
                let c = s.constant_term();
                let Some(c_inv) = c.inverse() else {
                    return Err(Error::JetUndefined(
                        "reciprocal of a polynomial with zero constant term".into(),
                    ));
                };
                // 1/S = (1/c) sum_k (-u)^k with u = S/c - 1 of positive degree
                let u = s
                    .scale(&c_inv)
                    .sub(&PolarizedPolynomial::one(n))
                    .unwrap();
                let minus_u = u.neg().truncate_bidegree(d);
                let mut acc = PolarizedPolynomial::one(n);
                let mut pow = PolarizedPolynomial::one(n);
                for _ in 1..=2 * d {
                    pow = pow.mul(&minus_u).unwrap().truncate_bidegree(d);
                    if pow.is_zero() {
                        break;
                    }
                    acc = acc.add(&pow).unwrap();
                }
                Ok(acc.scale(&c_inv))
            }
            Recipe::Exp(s) => {
                if !s.constant_term().is_zero() {
                    return Err(Error::JetUndefined(
                        "exp recipe requires a zero constant term".into(),
                    ));
                }
                let n = s.dimension();
                let st = s.truncate_bidegree(d);
                let mut acc = PolarizedPolynomial::one(n);
                let mut term = PolarizedPolynomial::one(n);
                for k in 1..=2 * d {
                    term = term
                        .mul(&st)
                        .unwrap()
                        .truncate_bidegree(d)
                        .scale(&Scalar::from_ratio(1, k as i64));
                    if term.is_zero() {
                        break;
                    }
                    acc = acc.add(&term).unwrap();
                }
                Ok(acc)
            }
            Recipe::Product(rs) => {
                let mut acc = PolarizedPolynomial::one(self.dimension());
                for r in rs {
                    acc = acc.mul(&r.expand(d)?).unwrap().truncate_bidegree(d);
                }
                Ok(acc)
            }
            Recipe::Shifted { base, transform } => base.rewritten(transform)?.expand(d),
        }
    }

    fn is_identically_zero(&self) -> bool {
        match self {
            Recipe::Polynomial(s) => s.is_zero(),
            Recipe::Reciprocal(_) | Recipe::Exp(_) => false,
            Recipe::Product(rs) => rs.iter().any(|r| r.is_identically_zero()),
            Recipe::Shifted { base, .. } => base.is_identically_zero(),
        }
    }

    /// `Some(value != 0)` at a point, `None` when the recipe is undefined
    /// there. Exponentials never vanish, so nonzeroness is decidable even
    /// though their values are transcendental.
    fn nonzero_at(&self, pt: &Point) -> Option<bool> {
        match self {
            Recipe::Polynomial(s) => Some(!s.evaluate(pt).is_zero()),
            Recipe::Exp(_) => Some(true),
            Recipe::Reciprocal(s) => {
                if s.evaluate(pt).is_zero() {
                    None
                } else {
                    Some(true)
                }
            }
            Recipe::Product(rs) => {
                let mut nonzero = true;
                for r in rs {
                    nonzero &= r.nonzero_at(pt)?;
                }
                Some(nonzero)
            }
            Recipe::Shifted { base, transform } => {
                let mapped = match transform {
                    JetTransform::DropTailVars { keep } => {
                        let base_n = base.dimension();
                        let grow = |v: &[Scalar]| -> Vec<Scalar> {
                            let mut out = v[..*keep].to_vec();
                            out.resize(base_n - 1, Scalar::zero());
                            out.push(v[v.len() - 1].clone());
                            out
                        };
                        Point::new(grow(&pt.p), grow(&pt.q))
                    }
                    other => other.map_point(pt),
                };
                base.nonzero_at(&mapped)
            }
        }
    }

    fn is_defined_at(&self, pt: &Point) -> bool {
        self.nonzero_at(pt).is_some()
    }
}

/// Exact `(d, d)` truncation of a real-analytic function, with its recipe.
#[derive(Debug, Clone)]
pub struct AnalyticJet {
    n: usize,
    trunc: u32,
    coeffs: PolarizedPolynomial,
    recipe: Recipe,
}

impl AnalyticJet {
    /// Builds a jet from a recipe, expanding exactly up to bidegree `(d, d)`.
    pub fn jet_of(recipe: Recipe, d: u32) -> Result<AnalyticJet, Error> {
        let coeffs = recipe.expand(d)?;
        Ok(AnalyticJet {
            n: recipe.dimension(),
            trunc: d,
            coeffs,
            recipe,
        })
    }

    pub fn from_polynomial(p: PolarizedPolynomial, d: u32) -> AnalyticJet {
        AnalyticJet::jet_of(Recipe::Polynomial(p), d).expect("polynomial jets always expand")
    }

    pub fn constant_one(n: usize, d: u32) -> AnalyticJet {
        AnalyticJet::from_polynomial(PolarizedPolynomial::one(n), d)
    }

    pub fn reciprocal_of(p: PolarizedPolynomial, d: u32) -> Result<AnalyticJet, Error> {
        AnalyticJet::jet_of(Recipe::Reciprocal(p), d)
    }

    pub fn exp_of(p: PolarizedPolynomial, d: u32) -> Result<AnalyticJet, Error> {
        AnalyticJet::jet_of(Recipe::Exp(p), d)
    }

    pub fn product_of(jets: &[AnalyticJet], d: u32) -> Result<AnalyticJet, Error> {
        AnalyticJet::jet_of(
            Recipe::Product(jets.iter().map(|j| j.recipe.clone()).collect()),
            d,
        )
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn coefficients(&self) -> &PolarizedPolynomial {
        &self.coeffs
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs.constant_term()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.recipe.is_identically_zero()
    }

    /// Whether the recipe defines a value at `pt` (in current coordinates).
    pub fn is_defined_at(&self, pt: &Point) -> bool {
        self.recipe.is_defined_at(pt)
    }

    /// `Some(Q(pt) != 0)`, or `None` when the recipe is undefined at `pt`.
    pub fn is_nonzero_at(&self, pt: &Point) -> Option<bool> {
        self.recipe.nonzero_at(pt)
    }

    /// Short human-readable description of the recipe for report echoes.
    pub fn recipe_kind_label(&self) -> String {
        fn label(r: &Recipe) -> String {
            match r {
                Recipe::Polynomial(p) => format!("poly({p})"),
                Recipe::Reciprocal(p) => format!("reciprocal({p})"),
                Recipe::Exp(p) => format!("exp({p})"),
                Recipe::Product(rs) => {
                    let inner: Vec<String> = rs.iter().map(label).collect();
                    format!("product({})", inner.join(", "))
                }
                Recipe::Shifted { base, .. } => format!("shifted({})", label(base)),
            }
        }
        label(&self.recipe)
    }

    /// The exact polynomial behind the recipe, resolving any transport
    /// wrappers; `None` for genuinely non-polynomial jets.
    pub fn as_polynomial(&self) -> Option<PolarizedPolynomial> {
        fn resolve(r: &Recipe) -> Option<PolarizedPolynomial> {
            match r {
                Recipe::Polynomial(p) => Some(p.clone()),
                Recipe::Shifted { base, transform } => {
                    resolve(&base.rewritten(transform).ok()?)
                }
                _ => None,
            }
        }
        resolve(&self.recipe)
    }

    fn transported(&self, tf: JetTransform, new_n: usize) -> Result<AnalyticJet, Error> {
        let recipe = Recipe::Shifted {
            base: Box::new(self.recipe.clone()),
            transform: tf,
        };
        let coeffs = recipe.expand(self.trunc)?;
        Ok(AnalyticJet {
            n: new_n,
            trunc: self.trunc,
            coeffs,
            recipe,
        })
    }

    pub fn translate(&self, p0: &[Scalar], q0: &[Scalar]) -> Result<AnalyticJet, Error> {
        if p0.iter().all(|s| s.is_zero()) && q0.iter().all(|s| s.is_zero()) {
            return Ok(self.clone());
        }
        self.transported(
            JetTransform::Translate {
                p0: p0.to_vec(),
                q0: q0.to_vec(),
            },
            self.n,
        )
    }

    pub fn linear_change(
        &self,
        a: &[Vec<Scalar>],
        b: &[Vec<Scalar>],
    ) -> Result<AnalyticJet, Error> {
        self.transported(
            JetTransform::Linear {
                a: a.to_vec(),
                b: b.to_vec(),
            },
            self.n,
        )
    }

    pub fn block_swap(&self) -> Result<AnalyticJet, Error> {
        self.transported(JetTransform::BlockSwap, self.n)
    }

    pub fn zero_out_tail_vars(&self, keep: usize) -> Result<AnalyticJet, Error> {
        self.transported(JetTransform::DropTailVars { keep }, keep + 1)
    }
}

/// The `(d, d)` truncation of `Q * P^d`, exact because `P^d` has only
/// nonnegative-degree terms: low coefficients of the product never depend
/// on coefficients of `Q` beyond the truncation.
pub fn jet_times_power(
    q: &AnalyticJet,
    p: &PolarizedPolynomial,
    d: u32,
) -> Result<AnalyticJet, Error> {
    if q.trunc < d {
        return Err(Error::TruncationTooLow {
            needed: d,
            got: q.trunc,
        });
    }
    if !p.bidegree().at_most(1, 1) {
        let got = match p.bidegree() {
            Bidegree::Zero => (0, 0),
            Bidegree::Of(j, k) => (j, k),
        };
        return Err(Error::BidegreeTooLarge { got });
    }
    let pd = p.pow(d);
    let coeffs = q.coeffs.mul(&pd)?.truncate_bidegree(d);
    Ok(AnalyticJet {
        n: q.n,
        trunc: d,
        coeffs,
        recipe: Recipe::Product(vec![q.recipe.clone(), Recipe::Polynomial(pd)]),
    })
}

/// Certified lower bound for `rank(Q P^d)`: the exact rank of the
/// `(d, d)`-truncated coefficient matrix, which is a submatrix of the full
/// one, so its rank can only undercount.
pub fn rank_lower_bound(
    q: &AnalyticJet,
    p: &PolarizedPolynomial,
    d: u32,
) -> Result<usize, Error> {
    let qpd = jet_times_power(q, p, d)?;
    Ok(exact_rank(&build_matrix(&qpd.coeffs, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{ExponentVector, PolarizedMonomial};
    use crate::poly::PolarizedPolynomial as P;

    fn z1zeta1(n: usize) -> P {
        P::var_z(n, 0).mul(&P::var_zeta(n, 0)).unwrap()
    }

    #[test]
    fn reciprocal_geometric_series() {
        // 1/(1 + z1 zeta1) at d = 2 is 1 - z1 zeta1 + z1^2 zeta1^2
        let n = 2;
        let s = P::one(n).add(&z1zeta1(n)).unwrap();
        let jet = AnalyticJet::reciprocal_of(s.clone(), 2).unwrap();
        let expected = P::one(n)
            .sub(&z1zeta1(n))
            .unwrap()
            .add(&z1zeta1(n).pow(2))
            .unwrap();
        assert_eq!(jet.coefficients(), &expected);

        // multiplied back, the truncation is exactly 1
        let prod = jet
            .coefficients()
            .mul(&s)
            .unwrap()
            .truncate_bidegree(2);
        assert_eq!(prod, P::one(n));
    }

    #[test]
    fn exp_series() {
        // exp(z1 zeta1) at d = 2 is 1 + z1 zeta1 + (1/2) z1^2 zeta1^2
        let n = 2;
        let jet = AnalyticJet::exp_of(z1zeta1(n), 2).unwrap();
        let expected = P::one(n)
            .add(&z1zeta1(n))
            .unwrap()
            .add(&z1zeta1(n).pow(2).scale(&Scalar::from_ratio(1, 2)))
            .unwrap();
        assert_eq!(jet.coefficients(), &expected);
        assert!(AnalyticJet::exp_of(P::one(n), 2).is_err());
    }

    #[test]
    fn reciprocal_of_power_of_norm() {
        // 1/(1 + ||z||^2)^d times (1 + ||z||^2)^d truncates to 1
        let n = 2;
        let d = 2;
        let p = P::one(n).add(&P::hermitian_norm_sq(n)).unwrap();
        let jet = AnalyticJet::reciprocal_of(p.pow(d), d).unwrap();
        let prod = jet
            .coefficients()
            .mul(&p.pow(d))
            .unwrap()
            .truncate_bidegree(d);
        assert_eq!(prod, P::one(n));
    }

    #[test]
    fn zero_constant_reciprocal_rejected() {
        let n = 2;
        let e = AnalyticJet::reciprocal_of(P::var_w(n), 2).unwrap_err();
        assert!(matches!(e, Error::JetUndefined(_)));
    }

    #[test]
    fn jet_times_power_cases() {
        let n = 2;
        let d = 2;
        let p = P::var_w(n)
            .add(&P::var_eta(n))
            .unwrap()
            .add(&z1zeta1(n))
            .unwrap();
        // Q = 1 reproduces the truncation of P^d
        let one = AnalyticJet::constant_one(n, d);
        let qpd = jet_times_power(&one, &p, d).unwrap();
        assert_eq!(qpd.coefficients(), &p.pow(d).truncate_bidegree(d));

        // Q = 1/(1 + ||z||^2)^d against P = 1 + ||z||^2 truncates to 1
        let pn = P::one(n).add(&P::hermitian_norm_sq(n)).unwrap();
        let q = AnalyticJet::reciprocal_of(pn.pow(d), d).unwrap();
        let qp = jet_times_power(&q, &pn, d).unwrap();
        assert_eq!(qp.coefficients(), &P::one(n));
        assert_eq!(rank_lower_bound(&q, &pn, d).unwrap(), 1);

        // truncation too low is rejected
        assert!(matches!(
            jet_times_power(&AnalyticJet::constant_one(n, 1), &p, 2),
            Err(Error::TruncationTooLow { .. })
        ));
    }

    #[test]
    fn pivot_coefficients_scale_with_q() {
        let n = 2;
        let d = 2;
        let p = P::var_w(n)
            .add(&P::var_eta(n))
            .unwrap()
            .add(&z1zeta1(n))
            .unwrap();
        let q = AnalyticJet::from_polynomial(
            P::constant(n, Scalar::from_int(2)).add(&P::var_z(n, 0)).unwrap(),
            d,
        );
        let qpd = jet_times_power(&q, &p, d).unwrap();
        let pd = p.pow(d);
        for z in crate::index_sets::enumerate_pivot_set(n, d) {
            assert_eq!(
                qpd.coefficients().coefficient(&z),
                pd.coefficient(&z).mul(&Scalar::from_int(2))
            );
        }
    }

    #[test]
    fn rank_lower_bound_examples() {
        let n = 2;
        let d = 2;
        let p = P::var_w(n)
            .add(&P::var_eta(n))
            .unwrap()
            .add(&z1zeta1(n))
            .unwrap();
        let one = AnalyticJet::constant_one(n, d);
        assert_eq!(rank_lower_bound(&one, &p, d).unwrap(), 6);
        // never exceeds the matrix side, and is monotone in d here
        let mut prev = 0;
        for dd in 0..=3u32 {
            let q = AnalyticJet::constant_one(n, dd);
            let b = rank_lower_bound(&q, &p, dd).unwrap();
            assert!(b as u128 <= crate::matrix::binomial((n as u32 + dd) as u64, dd as u64));
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn translation_reexpands_from_recipe() {
        // moving 1/(1 - z1 zeta1) to z1 = 1/2, zeta1 = 1/2 keeps exactness:
        // constant becomes 1/(1 - 1/4) = 4/3
        let n = 2;
        let s = P::one(n).sub(&z1zeta1(n)).unwrap();
        let jet = AnalyticJet::reciprocal_of(s, 2).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let moved = jet
            .translate(
                &[half.clone(), Scalar::zero()],
                &[half.clone(), Scalar::zero()],
            )
            .unwrap();
        assert_eq!(moved.constant_term(), Scalar::from_ratio(4, 3));

        // moving onto the singular set is rejected
        let bad = jet.translate(
            &[Scalar::one(), Scalar::zero()],
            &[Scalar::one(), Scalar::zero()],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn definedness_predicate_follows_recipe() {
        let n = 2;
        let s = P::one(n).sub(&z1zeta1(n)).unwrap();
        let jet = AnalyticJet::reciprocal_of(s, 2).unwrap();
        let origin = Point::origin(n);
        assert!(jet.is_defined_at(&origin));
        let singular = Point::diagonal(vec![Scalar::one(), Scalar::zero()]);
        assert!(!jet.is_defined_at(&singular));
        // after translation, definedness is asked in the new coordinates
        let half = Scalar::from_ratio(1, 2);
        let moved = jet
            .translate(&[half.clone(), Scalar::zero()], &[half.clone(), Scalar::zero()])
            .unwrap();
        assert!(moved.is_defined_at(&origin));
        assert!(!moved.is_defined_at(&Point::diagonal(vec![half, Scalar::zero()])));
    }

    #[test]
    fn drop_vars_keeps_recipe_exact() {
        let n = 3;
        let d = 2;
        let denom = P::one(n)
            .add(&P::var_z(n, 1).mul(&P::var_zeta(n, 1)).unwrap())
            .unwrap()
            .add(&z1zeta1(n))
            .unwrap();
        let jet = AnalyticJet::reciprocal_of(denom, d).unwrap();
        let dropped = jet.zero_out_tail_vars(1).unwrap();
        assert_eq!(dropped.dimension(), 2);
        // equals the reciprocal of 1 + z1 zeta1 in dimension 2
        let expected = AnalyticJet::reciprocal_of(
            P::one(2).add(&z1zeta1(2)).unwrap(),
            d,
        )
        .unwrap();
        assert_eq!(dropped.coefficients(), expected.coefficients());
    }

    #[test]
    fn exp_translation_drops_unit_factor() {
        // exp(z1 + zeta1) moved by z1 -> z1 + 1 stays exp of a
        // zero-constant polynomial; the exp(1) unit factor is dropped,
        // which no rank computation can see.
        let n = 2;
        let s = P::var_z(n, 0).add(&P::var_zeta(n, 0)).unwrap();
        let jet = AnalyticJet::exp_of(s, 2).unwrap();
        let moved = jet
            .translate(&[Scalar::one(), Scalar::zero()], &[Scalar::zero(), Scalar::zero()])
            .unwrap();
        assert_eq!(moved.constant_term(), Scalar::one());
        assert_eq!(moved.coefficients(), jet.coefficients());
    }

    #[test]
    fn block_swap_transposes_coefficients() {
        let n = 2;
        let s = P::one(n)
            .add(&P::var_z(n, 0).scale(&Scalar::from_int(2)))
            .unwrap();
        let jet = AnalyticJet::reciprocal_of(s, 2).unwrap();
        let swapped = jet.block_swap().unwrap();
        let m = PolarizedMonomial::from_parts(
            ExponentVector::zeros(1),
            0,
            ExponentVector::unit(1, 0),
            0,
        );
        assert_eq!(
            swapped.coefficients().coefficient(&m),
            jet.coefficients().coefficient(&m.block_swapped())
        );
    }
}
