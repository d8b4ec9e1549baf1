//! Deterministic random instances for the verification suites. The same
//! `(seed, n, d, shape)` always produces the same instance.

use crate::jet::{AnalyticJet, Recipe};
use crate::poly::{Point, PolarizedPolynomial};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceShape {
    /// `P` in full-rank normal form plus a random `(1,1)` tail in `w`/`eta`;
    /// base point at the origin; `Q` a random polynomial nonzero there.
    FullNormalFormWithTail,
    /// Random bidegree-(1,1) `P` with a planted diagonal zero; `Q = 1`.
    GeneralBidegree11,
    /// Planted-zero `P` with a random polynomial `Q` of degree at most 2,
    /// nonzero at the base point.
    WithPolynomialQ,
    /// Planted-zero `P` with a non-polynomial jet `Q` (reciprocal,
    /// exponential, or a product), defined and nonzero at the base point.
    WithJetQ,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub p: PolarizedPolynomial,
    pub q: AnalyticJet,
    pub base_point: Option<Point>,
}

fn small_rational(rng: &mut ChaCha20Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=4))
}

fn small_gaussian(rng: &mut ChaCha20Rng) -> Scalar {
    let re = small_rational(rng);
    let im = small_rational(rng);
    re.add(&Scalar::i().mul(&im))
}

/// A sparse random polynomial of bidegree at most `(jmax, kmax)`.
fn random_poly(
    rng: &mut ChaCha20Rng,
    n: usize,
    jmax: u32,
    kmax: u32,
    keep_prob: f64,
) -> PolarizedPolynomial {
    let order_h = crate::matrix::MonomialOrder::new(n, jmax);
    let order_a = crate::matrix::MonomialOrder::new(n, kmax);
    let mut out = PolarizedPolynomial::zero(n);
    for holo in order_h.monomials() {
        for anti in order_a.monomials() {
            if rng.gen_bool(keep_prob) {
                out.add_term(
                    crate::monomial::PolarizedMonomial::from_holo_pair(holo, anti),
                    small_gaussian(rng),
                );
            }
        }
    }
    out
}

fn normal_form_with_tail(rng: &mut ChaCha20Rng, n: usize) -> PolarizedPolynomial {
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
    // random (1,1) tail involving w or eta
    let w = PolarizedPolynomial::var_w(n);
    let eta = PolarizedPolynomial::var_eta(n);
    let mut tail = w.mul(&eta).unwrap().scale(&small_gaussian(rng));
    for k in 0..n - 1 {
        tail = tail
            .add(
                &w.mul(&PolarizedPolynomial::var_zeta(n, k))
                    .unwrap()
                    .scale(&small_gaussian(rng)),
            )
            .unwrap()
            .add(
                &PolarizedPolynomial::var_z(n, k)
                    .mul(&eta)
                    .unwrap()
                    .scale(&small_gaussian(rng)),
            )
            .unwrap();
    }
    p.add(&tail).unwrap()
}

fn general_bidegree11_with_zero(
    rng: &mut ChaCha20Rng,
    n: usize,
) -> (PolarizedPolynomial, Point) {
    // random (1,1) polynomial vanishing at the origin, then moved so the
    // planted zero sits at a random diagonal point
    loop {
        let mut p = random_poly(rng, n, 1, 1, 0.6);
        let c = p.constant_term();
        p = p
            .sub(&PolarizedPolynomial::constant(n, c))
            .unwrap();
        if p.is_zero() {
            continue;
        }
        let t: Vec<Scalar> = (0..n).map(|_| small_rational(rng)).collect();
        let point = Point::diagonal(t);
        let neg_p: Vec<Scalar> = point.p.iter().map(|x| x.neg()).collect();
        let neg_q: Vec<Scalar> = point.q.iter().map(|x| x.neg()).collect();
        let moved = p.translate(&neg_p, &neg_q);
        debug_assert!(moved.evaluate(&point).is_zero());
        return (moved, point);
    }
}

fn random_poly_q_nonzero_at(
    rng: &mut ChaCha20Rng,
    n: usize,
    point: &Point,
) -> PolarizedPolynomial {
    loop {
        let q = random_poly(rng, n, 2, 2, 0.35);
        if !q.evaluate(point).is_zero() {
            return q;
        }
        // thicken the constant term and retry
        let bump = q
            .add(&PolarizedPolynomial::constant(
                n,
                Scalar::from_int(rng.gen_range(1i64..=3)),
            ))
            .unwrap();
        if !bump.evaluate(point).is_zero() {
            return bump;
        }
    }
}

fn random_jet_q(
    rng: &mut ChaCha20Rng,
    n: usize,
    d: u32,
    point: &Point,
) -> AnalyticJet {
    loop {
        let kind = rng.gen_range(0u32..3);
        let candidate = match kind {
            0 => {
                // reciprocal of 1 + small (1,1) polynomial
                let mut s = random_poly(rng, n, 1, 1, 0.4);
                let c = s.constant_term();
                s = s
                    .sub(&PolarizedPolynomial::constant(n, c))
                    .unwrap()
                    .add(&PolarizedPolynomial::one(n))
                    .unwrap();
                AnalyticJet::jet_of(Recipe::Reciprocal(s), d)
            }
            1 => {
                // exp of a zero-constant (1,1) polynomial
                let mut s = random_poly(rng, n, 1, 1, 0.4);
                let c = s.constant_term();
                s = s.sub(&PolarizedPolynomial::constant(n, c)).unwrap();
                AnalyticJet::jet_of(Recipe::Exp(s), d)
            }
            _ => {
                let poly = random_poly_q_nonzero_at(rng, n, point);
                let mut s = random_poly(rng, n, 1, 1, 0.4);
                let c = s.constant_term();
                s = s
                    .sub(&PolarizedPolynomial::constant(n, c))
                    .unwrap()
                    .add(&PolarizedPolynomial::one(n))
                    .unwrap();
                AnalyticJet::jet_of(
                    Recipe::Product(vec![Recipe::Polynomial(poly), Recipe::Reciprocal(s)]),
                    d,
                )
            }
        };
        if let Ok(jet) = candidate {
            if jet.is_nonzero_at(point) == Some(true) {
                return jet;
            }
        }
    }
}

/// Deterministic instance generation; `P` always satisfies the requested
/// shape, and `Q` is nonzero at the base point by rejection sampling.
pub fn random_instance(seed: u64, n: usize, d: u32, shape: InstanceShape) -> Instance {
    assert!(n >= 1);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    match shape {
        InstanceShape::FullNormalFormWithTail => {
            let p = normal_form_with_tail(&mut rng, n);
            let origin = Point::origin(n);
            let q_poly = random_poly_q_nonzero_at(&mut rng, n, &origin);
            Instance {
                p,
                q: AnalyticJet::from_polynomial(q_poly, d.max(2)),
                base_point: Some(origin),
            }
        }
        InstanceShape::GeneralBidegree11 => {
            let (p, point) = general_bidegree11_with_zero(&mut rng, n);
            Instance {
                p,
                q: AnalyticJet::constant_one(n, d.max(2)),
                base_point: Some(point),
            }
        }
        InstanceShape::WithPolynomialQ => {
            let (p, point) = general_bidegree11_with_zero(&mut rng, n);
            let q_poly = random_poly_q_nonzero_at(&mut rng, n, &point);
            Instance {
                p,
                q: AnalyticJet::from_polynomial(q_poly, d.max(2)),
                base_point: Some(point),
            }
        }
        InstanceShape::WithJetQ => {
            let (p, point) = general_bidegree11_with_zero(&mut rng, n);
            let q = random_jet_q(&mut rng, n, d.max(2), &point);
            Instance {
                p,
                q,
                base_point: Some(point),
            }
        }
    }
}
