//! The monomial index sets behind the structure of `C(P^d)` and
//! `C(Q P^d)`: membership classification, the componentwise partial order
//! and its implications, pivot re-indexing by reduction stage, and the
//! staged row reduction that certifies full rank.
//!
//! For a monomial `z^a w^b zbar^c wbar^e` and a degree `d`:
//! - `A_d`:  `|a| + b <= d` and `|c| + e <= d`;
//! - `B_d`:  `|a| + b + e <= d` and `|c| + b + e <= d` (a subset of `A_d`);
//! - `P_d`:  `|a| + b + e = d` and `a = c` (the pivots);
//! - `N_d`:  `B_d` minus `P_d` (the guaranteed zeros).

use crate::error::Error;
use crate::matrix::{binomial, CoefficientMatrix};
use crate::monomial::{ExponentVector, PolarizedMonomial};
use crate::poly::PolarizedPolynomial;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Membership verdict for a monomial relative to degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialClass {
    InPd,
    InNd,
    InANotB,
    Outside,
}

pub fn classify_monomial(m: &PolarizedMonomial, d: u32) -> MonomialClass {
    let holo = m.holo_degree();
    let anti = m.anti_degree();
    if holo > d || anti > d {
        return MonomialClass::Outside;
    }
    let hb = m.z.degree() + m.w + m.eta;
    let ab = m.zeta.degree() + m.w + m.eta;
    if hb > d || ab > d {
        return MonomialClass::InANotB;
    }
    if hb == d && m.z == m.zeta {
        MonomialClass::InPd
    } else {
        MonomialClass::InNd
    }
}

/// The componentwise partial order on exponent data.
pub fn order_leq(m1: &PolarizedMonomial, m2: &PolarizedMonomial) -> bool {
    m1.leq(m2)
}

/// One implication of the order interplay, identified by number:
/// 1. strict `<` with the larger monomial in `B_d` puts the smaller in `N_d`;
/// 2. difference in `A_1 \ B_1` with the larger in `B_d` puts the smaller in `N_{d-1}`;
/// 3. difference in `P_1` with the larger in `N_d` puts the smaller in `N_{d-1}`;
/// 4. difference in `P_1` with the larger in `P_d` puts the smaller in `P_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderImplicationReport {
    /// `(implication number, conclusion held)` for each applicable one.
    pub applied: Vec<(u8, bool)>,
    pub all_hold: bool,
}

pub fn order_implications(
    m_small: &PolarizedMonomial,
    m_big: &PolarizedMonomial,
    d: u32,
) -> Result<OrderImplicationReport, Error> {
    if !m_small.leq(m_big) {
        return Err(Error::InvalidInput(
            "order_implications requires m_small <= m_big".into(),
        ));
    }
    let diff = m_big.checked_sub(m_small).unwrap();
    let big_class = classify_monomial(m_big, d);
    let diff_class_1 = classify_monomial(&diff, 1);
    let mut applied = Vec::new();
    if !diff.is_one() && matches!(big_class, MonomialClass::InPd | MonomialClass::InNd) {
        let held = classify_monomial(m_small, d) == MonomialClass::InNd;
        applied.push((1u8, held));
    }
    if d >= 1 {
        if diff_class_1 == MonomialClass::InANotB
            && matches!(big_class, MonomialClass::InPd | MonomialClass::InNd)
        {
            let held = classify_monomial(m_small, d - 1) == MonomialClass::InNd;
            applied.push((2u8, held));
        }
        if diff_class_1 == MonomialClass::InPd && big_class == MonomialClass::InNd {
            let held = classify_monomial(m_small, d - 1) == MonomialClass::InNd;
            applied.push((3u8, held));
        }
        if diff_class_1 == MonomialClass::InPd && big_class == MonomialClass::InPd {
            let held = classify_monomial(m_small, d - 1) == MonomialClass::InPd;
            applied.push((4u8, held));
        }
    }
    let all_hold = applied.iter().all(|(_, h)| *h);
    Ok(OrderImplicationReport { applied, all_hold })
}

/// Re-indexing of a pivot monomial by its reduction stage `t` and its
/// `z`-exponent `alpha`: the monomial is
/// `z^alpha w^{(2d - |alpha| - t)/2} zbar^alpha wbar^{(t - |alpha|)/2}`,
/// mirrored when `conjugated` is set. Requires `|alpha| <= t <= d` and
/// `t = |alpha| (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotIndex {
    pub t: u32,
    pub alpha: ExponentVector,
    pub conjugated: bool,
}

pub fn pivot_monomial(idx: &PivotIndex, d: u32) -> Result<PolarizedMonomial, Error> {
    let a = idx.alpha.degree();
    if idx.t > d || a > idx.t || (idx.t - a) % 2 != 0 {
        return Err(Error::PivotParity);
    }
    let e = (idx.t - a) / 2;
    let b = (2 * d - a - idx.t) / 2;
    let m = if idx.conjugated {
        PolarizedMonomial::from_parts(idx.alpha.clone(), e, idx.alpha.clone(), b)
    } else {
        PolarizedMonomial::from_parts(idx.alpha.clone(), b, idx.alpha.clone(), e)
    };
    debug_assert_eq!(classify_monomial(&m, d), MonomialClass::InPd);
    Ok(m)
}

fn z_exponents_with_degree_at_most(n_prime: usize, bound: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n_prime];
    fn rec(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
        if pos == exps.len() {
            out.push(ExponentVector(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[pos] = e;
            rec(exps, pos + 1, remaining - e, out);
        }
        exps[pos] = 0;
    }
    rec(&mut exps, 0, bound, &mut out);
    out
}

/// All pivots of stage `t` (unconjugated side), in a deterministic order.
pub fn stage_pivots(n: usize, d: u32, t: u32) -> Vec<PolarizedMonomial> {
    let mut out = Vec::new();
    for alpha in z_exponents_with_degree_at_most(n - 1, t) {
        let a = alpha.degree();
        if (t - a) % 2 != 0 {
            continue;
        }
        out.push(
            pivot_monomial(
                &PivotIndex {
                    t,
                    alpha,
                    conjugated: false,
                },
                d,
            )
            .unwrap(),
        );
    }
    out
}

/// All elements of `P_d`, each exactly once.
pub fn enumerate_pivot_set(n: usize, d: u32) -> Vec<PolarizedMonomial> {
    let mut out = Vec::new();
    for t in 0..=d {
        for z in stage_pivots(n, d, t) {
            let conj = z.block_swapped();
            if conj != z {
                out.push(conj);
            }
            out.push(z);
        }
    }
    out
}

/// `#P_d` by enumeration; equals `C(n + d, d)`.
pub fn pivot_count(n: usize, d: u32) -> usize {
    enumerate_pivot_set(n, d).len()
}

/// Structure check mode: bare powers `P^d`, or a `(d, d)`-truncation of
/// `Q P^d` with the constant value `q0 = Q(0)` supplied explicitly.
#[derive(Debug, Clone)]
pub enum StructureMode {
    PowerOnly,
    WithQ(Scalar),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureViolationKind {
    NonzeroOnN,
    NotPositiveOnP,
    WrongValueOnP,
}

#[derive(Debug, Clone)]
pub struct StructureViolation {
    pub monomial: PolarizedMonomial,
    pub kind: StructureViolationKind,
    pub observed: Scalar,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub ok: bool,
    pub zeros_checked: usize,
    pub pivots_checked: usize,
    pub violations: Vec<StructureViolation>,
}

/// The multinomial coefficient `d! / (prod a_i! * b! * e!)`; this is the
/// coefficient every `P_d` monomial carries in `P^d` for `P` of the
/// full-rank normal form, independent of the tail.
pub fn pivot_multinomial(d: u32, m: &PolarizedMonomial) -> Scalar {
    debug_assert_eq!(m.z.degree() + m.w + m.eta, d);
    let mut value = BigInt::one();
    for k in 2..=d as u64 {
        value *= BigInt::from(k);
    }
    let mut denom = BigInt::one();
    let mut fact = |e: u32| {
        for k in 2..=e as u64 {
            denom *= BigInt::from(k);
        }
    };
    for &e in &m.z.0 {
        fact(e);
    }
    fact(m.w);
    fact(m.eta);
    Scalar::from_rational(BigRational::new(value, denom))
}

/// Checks the zero/nonzero pattern of `R` against the index sets: every
/// `N_d` coefficient must vanish; every `P_d` coefficient must be a
/// positive rational (`PowerOnly`) or exactly `q0` times the multinomial
/// value (`WithQ`). Violations are reported, not raised.
pub fn structure_check(r: &PolarizedPolynomial, d: u32, mode: &StructureMode) -> StructureReport {
    let n = r.dimension();
    let order = crate::matrix::MonomialOrder::new(n, d);
    let mut report = StructureReport {
        ok: true,
        zeros_checked: 0,
        pivots_checked: 0,
        violations: Vec::new(),
    };
    for holo in order.monomials() {
        for anti in order.monomials() {
            let m = PolarizedMonomial::from_holo_pair(holo, anti);
            match classify_monomial(&m, d) {
                MonomialClass::InNd => {
                    report.zeros_checked += 1;
                    let c = r.coefficient(&m);
                    if !c.is_zero() {
                        report.ok = false;
                        report.violations.push(StructureViolation {
                            monomial: m,
                            kind: StructureViolationKind::NonzeroOnN,
                            observed: c,
                        });
                    }
                }
                MonomialClass::InPd => {
                    report.pivots_checked += 1;
                    let c = r.coefficient(&m);
                    match mode {
                        StructureMode::PowerOnly => {
                            if !(c.is_real() && c.real_sign() > 0) {
                                report.ok = false;
                                report.violations.push(StructureViolation {
                                    monomial: m,
                                    kind: StructureViolationKind::NotPositiveOnP,
                                    observed: c,
                                });
                            }
                        }
                        StructureMode::WithQ(q0) => {
                            let expected = q0.mul(&pivot_multinomial(d, &m));
                            if c != expected {
                                report.ok = false;
                                report.violations.push(StructureViolation {
                                    monomial: m,
                                    kind: StructureViolationKind::WrongValueOnP,
                                    observed: c,
                                });
                            }
                        }
                    }
                }
                MonomialClass::InANotB | MonomialClass::Outside => {}
            }
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct PivotViolation {
    /// Reduction stage, or `None` for the up-front pattern check.
    pub stage: Option<u32>,
    pub row: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct PivotReport {
    pub ok: bool,
    /// Certified rank (the full side `C(n + d, d)`) when the reduction
    /// succeeded.
    pub rank: Option<usize>,
    pub stages_completed: u32,
    pub violation: Option<PivotViolation>,
}

/// Staged row reduction: for `t = 0..d`, the stage-`t` pivots must sit in
/// rows that are otherwise zero; their columns are then eliminated, and
/// symmetrically for the conjugate pivots with columns and rows swapped.
/// On success the surviving support is exactly the pivot set, certifying
/// `rank = C(n + d, d)`. The input matrix is never modified.
pub fn pivot_verify(m: &CoefficientMatrix, d: u32) -> PivotReport {
    let order = m.order();
    let n = order.dimension();
    assert_eq!(order.degree_bound(), d, "matrix truncated at a different degree");
    let side = m.side();
    let mut work: Vec<Vec<Scalar>> = m.entries().clone();

    let fail = |stage: Option<u32>, row: usize, col: usize, message: String| PivotReport {
        ok: false,
        rank: None,
        stages_completed: stage.unwrap_or(0),
        violation: Some(PivotViolation {
            stage,
            row,
            col,
            message,
        }),
    };

    // pattern precondition on the raw entries
    for row in 0..side {
        for col in 0..side {
            let mono = PolarizedMonomial::from_holo_pair(order.monomial(col), order.monomial(row));
            match classify_monomial(&mono, d) {
                MonomialClass::InNd => {
                    if !work[row][col].is_zero() {
                        return fail(
                            None,
                            row,
                            col,
                            format!("claimed-zero entry at {mono} is nonzero"),
                        );
                    }
                }
                MonomialClass::InPd => {
                    if work[row][col].is_zero() {
                        return fail(None, row, col, format!("pivot entry at {mono} is zero"));
                    }
                }
                _ => {}
            }
        }
    }

    let position = |z: &PolarizedMonomial| -> (usize, usize) {
        let row = order.index_of(&z.anti()).expect("row monomial in range");
        let col = order.index_of(&z.holo()).expect("col monomial in range");
        (row, col)
    };

    for t in 0..=d {
        for z in stage_pivots(n, d, t) {
            let (prow, pcol) = position(&z);
            for col in 0..side {
                if col != pcol && !work[prow][col].is_zero() {
                    return fail(
                        Some(t),
                        prow,
                        col,
                        format!("stage {t}: row of pivot {z} has a nonzero at column {col}"),
                    );
                }
            }
            let pivot = work[prow][pcol].clone();
            if pivot.is_zero() {
                return fail(Some(t), prow, pcol, format!("stage {t}: pivot {z} vanished"));
            }
            // row operations: with the pivot row supported only at pcol,
            // subtracting (entry/pivot) times it clears the column
            for row in 0..side {
                if row != prow && !work[row][pcol].is_zero() {
                    let factor = work[row][pcol].div(&pivot);
                    let update = factor.mul(&pivot);
                    work[row][pcol] = work[row][pcol].sub(&update);
                }
            }
            let conj = z.block_swapped();
            if conj == z {
                continue;
            }
            let (crow, ccol) = position(&conj);
            for row in 0..side {
                if row != crow && !work[row][ccol].is_zero() {
                    return fail(
                        Some(t),
                        row,
                        ccol,
                        format!(
                            "stage {t}: column of conjugate pivot {conj} has a nonzero at row {row}"
                        ),
                    );
                }
            }
            let cpivot = work[crow][ccol].clone();
            if cpivot.is_zero() {
                return fail(Some(t), crow, ccol, format!("stage {t}: pivot {conj} vanished"));
            }
            // column operations clearing the conjugate pivot's row
            for col in 0..side {
                if col != ccol && !work[crow][col].is_zero() {
                    let factor = work[crow][col].div(&cpivot);
                    let update = factor.mul(&cpivot);
                    work[crow][col] = work[crow][col].sub(&update);
                }
            }
        }
    }

    // the surviving support must be exactly the pivot set
    let mut expected = vec![vec![false; side]; side];
    for z in enumerate_pivot_set(n, d) {
        let (row, col) = position(&z);
        expected[row][col] = true;
    }
    for row in 0..side {
        for col in 0..side {
            let nonzero = !work[row][col].is_zero();
            if nonzero != expected[row][col] {
                return fail(
                    Some(d),
                    row,
                    col,
                    "reduced matrix support differs from the pivot set".to_string(),
                );
            }
        }
    }
    let rank = binomial((n as u32 + d) as u64, d as u64) as usize;
    debug_assert_eq!(rank, side);
    PivotReport {
        ok: true,
        rank: Some(rank),
        stages_completed: d + 1,
        violation: None,
    }
}
