//! The truncated matrix of coefficients of a polarized polynomial, exact
//! rank via fraction-free elimination, rank factorizations, and signed
//! square decompositions.

use crate::error::Error;
use crate::monomial::{ExponentVector, HoloMonomial, PolarizedMonomial};
use crate::poly::PolarizedPolynomial;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Binomial coefficient as u128; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for j in 0..k {
        out = out * (n - j) as u128 / (j + 1) as u128;
    }
    out
}

/// `C(r + d - 1, d)`, the multinomial-theorem bound on the rank of a d-th
/// power of a rank-r polynomial.
pub fn multinomial_bound(r: usize, d: u32) -> u128 {
    if r == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    binomial(r as u64 + d as u64 - 1, d as u64)
}

/// Bijection between holomorphic monomials of degree at most `d` on `C^n`
/// and indices `0..C(n+d, d)`, in graded order with a reverse-lex
/// tie-break under the variable order `z1 < z2 < ... < w`. Index 0 is the
/// constant monomial and degree-one monomials appear as `z1, ..., z_{n-1}, w`.
#[derive(Debug, Clone)]
pub struct MonomialOrder {
    n: usize,
    d: u32,
    monomials: Vec<HoloMonomial>,
    index: BTreeMap<HoloMonomial, usize>,
}

fn grevlex_cmp(a: &HoloMonomial, b: &HoloMonomial) -> Ordering {
    let da = a.degree();
    let db = b.degree();
    if da != db {
        return da.cmp(&db);
    }
    // same degree: compare the full exponent list (z1..z_{n-1}, w) at the
    // last differing position; smaller exponent there comes first
    let ea: Vec<u32> = a.z.0.iter().copied().chain([a.w]).collect();
    let eb: Vec<u32> = b.z.0.iter().copied().chain([b.w]).collect();
    for (x, y) in ea.iter().rev().zip(eb.iter().rev()) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

fn enumerate_monomials(n: usize, d: u32) -> Vec<HoloMonomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<HoloMonomial>) {
        if pos == exps.len() {
            let n = exps.len();
            out.push(HoloMonomial {
                z: ExponentVector(exps[..n - 1].to_vec()),
                w: exps[n - 1],
            });
            return;
        }
        for e in 0..=remaining {
            exps[pos] = e;
            rec(exps, pos + 1, remaining - e, out);
        }
        exps[pos] = 0;
    }
    rec(&mut exps, 0, d, &mut out);
    out.sort_by(grevlex_cmp);
    out
}

impl MonomialOrder {
    pub fn new(n: usize, d: u32) -> MonomialOrder {
        assert!(n >= 1);
        let monomials = enumerate_monomials(n, d);
        debug_assert_eq!(monomials.len() as u128, binomial((n as u32 + d) as u64, d as u64));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        MonomialOrder {
            n,
            d,
            monomials,
            index,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, idx: usize) -> &HoloMonomial {
        &self.monomials[idx]
    }

    pub fn index_of(&self, m: &HoloMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomials(&self) -> &[HoloMonomial] {
        &self.monomials
    }
}

/// Square matrix of coefficients `C(R)_d`: rows are indexed by
/// `(zeta, eta)`-monomials and columns by `(z, w)`-monomials, both in the
/// same graded reverse-lex order; the entry at `(row gamma, col alpha)` is
/// the coefficient of `z^alpha zeta^gamma` in `R`.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    order: MonomialOrder,
    entries: Vec<Vec<Scalar>>,
}

impl CoefficientMatrix {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn side(&self) -> usize {
        self.order.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &Vec<Vec<Scalar>> {
        &self.entries
    }

    /// True when `entry(gamma, alpha) == conj(entry(alpha, gamma))` for all
    /// positions, which holds exactly when the truncated part of `R` is
    /// real-valued.
    pub fn is_hermitian(&self) -> bool {
        let s = self.side();
        for i in 0..s {
            for j in i..s {
                if self.entries[i][j] != self.entries[j][i].conj() {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds `C(R)_d`; coefficients of monomials of bidegree beyond `(d, d)`
/// are ignored.
pub fn build_matrix(r: &PolarizedPolynomial, d: u32) -> CoefficientMatrix {
    let order = MonomialOrder::new(r.dimension(), d);
    let side = order.len();
    let mut entries = vec![vec![Scalar::zero(); side]; side];
    for (m, c) in r.terms() {
        if m.holo_degree() > d || m.anti_degree() > d {
            continue;
        }
        let col = order.index_of(&m.holo()).expect("column in range");
        let row = order.index_of(&m.anti()).expect("row in range");
        entries[row][col] = c.clone();
    }
    CoefficientMatrix { order, entries }
}

/// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
/// Row denominators are cleared up front so every intermediate entry is a
/// minor of an integral matrix; the division step is exact.
pub fn exact_rank(m: &CoefficientMatrix) -> usize {
    exact_rank_entries(&m.entries)
}

pub fn exact_rank_entries(entries: &[Vec<Scalar>]) -> usize {
    let mut work: Vec<Vec<Scalar>> = Vec::with_capacity(entries.len());
    for row in entries {
        let mut lcm = BigInt::from(1);
        for e in row {
            use num_integer::Integer;
            lcm = lcm.lcm(&e.denominator_lcm());
        }
        let factor = Scalar::from_rational(num_rational::BigRational::from(lcm));
        work.push(row.iter().map(|e| e.mul(&factor)).collect());
    }
    // radical-free matrices run on a bare Gaussian-integer representation,
    // skipping rational normalization in the inner loop
    let gauss: Option<Vec<Vec<GaussInt>>> = work
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.gaussian_integer_parts())
                .collect::<Option<Vec<_>>>()
        })
        .collect();
    match gauss {
        Some(m) => bareiss_rank_gaussian(m),
        None => bareiss_rank(work),
    }
}

type GaussInt = (BigInt, BigInt);

fn g_is_zero(a: &GaussInt) -> bool {
    use num_traits::Zero;
    a.0.is_zero() && a.1.is_zero()
}

fn g_mul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn g_sub(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Exact division in the Gaussian integers; the quotient is guaranteed to
/// exist for fraction-free elimination intermediates.
fn g_div_exact(t: &GaussInt, p: &GaussInt) -> GaussInt {
    let norm = &p.0 * &p.0 + &p.1 * &p.1;
    let conj = (p.0.clone(), -p.1.clone());
    let u = g_mul(t, &conj);
    debug_assert!(
        (&u.0 % &norm == BigInt::from(0)) && (&u.1 % &norm == BigInt::from(0)),
        "inexact Gaussian division in fraction-free elimination"
    );
    (&u.0 / &norm, &u.1 / &norm)
}

fn g_bits(a: &GaussInt) -> u64 {
    a.0.bits() + a.1.bits()
}

fn bareiss_rank_gaussian(mut m: Vec<Vec<GaussInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let limit = rows.min(cols);
    let one: GaussInt = (BigInt::from(1), BigInt::from(0));
    let mut prev = one;
    let mut k = 0;
    while k < limit {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in k..rows {
            for j in k..cols {
                if g_is_zero(&m[i][j]) {
                    continue;
                }
                let size = g_bits(&m[i][j]);
                if best.map(|(_, _, s)| size < s).unwrap_or(true) {
                    best = Some((i, j, size));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return k;
        };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..rows {
            if g_is_zero(&m[i][k]) {
                for j in k + 1..cols {
                    if !g_is_zero(&m[i][j]) {
                        let t = g_mul(&pivot, &m[i][j]);
                        m[i][j] = g_div_exact(&t, &prev);
                    }
                }
                continue;
            }
            let lead = m[i][k].clone();
            for j in k + 1..cols {
                let t = g_sub(&g_mul(&pivot, &m[i][j]), &g_mul(&lead, &m[k][j]));
                m[i][j] = g_div_exact(&t, &prev);
            }
            m[i][k] = (BigInt::from(0), BigInt::from(0));
        }
        prev = pivot;
        k += 1;
    }
    k
}

fn bareiss_rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let limit = rows.min(cols);
    let mut prev = Scalar::one();
    let mut k = 0;
    while k < limit {
        // full pivoting: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, u64)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let size = m[i][j].size_hint();
                if best.map(|(_, _, s)| size < s).unwrap_or(true) {
                    best = Some((i, j, size));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return k;
        };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        let pivot = m[k][k].clone();
        let prev_inv = prev.inverse().expect("previous pivot nonzero");
        for i in k + 1..rows {
            if m[i][k].is_zero() {
                // row update still rescales by pivot/prev to keep the
                // minor structure exact
                for j in k + 1..cols {
                    if !m[i][j].is_zero() {
                        m[i][j] = pivot.mul(&m[i][j]).mul(&prev_inv);
                    }
                }
                continue;
            }
            let lead = m[i][k].clone();
            for j in k + 1..cols {
                let t = pivot.mul(&m[i][j]).sub(&lead.mul(&m[k][j]));
                m[i][j] = t.mul(&prev_inv);
            }
            m[i][k] = Scalar::zero();
        }
        prev = pivot;
        k += 1;
    }
    k
}

/// Rank of a polynomial: the rank of its full coefficient matrix, equal to
/// the minimal number of terms in a holomorphic decomposition.
pub fn rank_of(r: &PolarizedPolynomial) -> usize {
    let d = r.max_degree();
    exact_rank(&build_matrix(r, d))
}

/// A holomorphic polynomial in the `(z, w)` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoloPoly {
    n: usize,
    terms: BTreeMap<HoloMonomial, Scalar>,
}

impl HoloPoly {
    pub fn zero(n: usize) -> HoloPoly {
        HoloPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, m: HoloMonomial, c: Scalar) -> HoloPoly {
        let mut p = HoloPoly::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: HoloMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &HoloPoly) -> HoloPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> HoloPoly {
        let mut out = HoloPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HoloMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// `self(z) * conj(other)(zeta)` as a polarized polynomial.
    pub fn sesquilinear_product(&self, other: &HoloPoly) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mg, cg) in &other.terms {
                out.add_term(
                    PolarizedMonomial::from_holo_pair(ma, mg),
                    ca.mul(&cg.conj()),
                );
            }
        }
        out
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = PolarizedMonomial::from_parts(
                m.z.clone(),
                m.w,
                ExponentVector::zeros(m.z.len()),
                0,
            );
            if mono.is_one() {
                write!(f, "{}", c.to_compact_string())?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({})*{}", c.to_compact_string(), mono)?;
            }
        }
        Ok(())
    }
}

/// Exact rank factorization `R = sum_k phi_k(z) * conj(psi_k)(zeta)`;
/// the `psi` coefficients are stored before conjugation, so each `psi_k`
/// is itself a holomorphic polynomial.
#[derive(Debug, Clone)]
pub struct RankFactorization {
    pub rank: usize,
    pub phi: Vec<HoloPoly>,
    pub psi: Vec<HoloPoly>,
}

impl RankFactorization {
    pub fn reconstruct(&self, n: usize) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(n);
        for (f, g) in self.phi.iter().zip(&self.psi) {
            out = out.add(&f.sesquilinear_product(g)).expect("same dimension");
        }
        out
    }
}

/// Reduced row echelon form over the field; returns pivot column indices.
fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inverse().unwrap();
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = m[i][j].sub(&f.mul(&m[r][j]));
                m[i][j] = t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank factorization of the coefficient matrix: the pivot columns
/// give the `zeta`-side family and the reduced rows give the `z`-side
/// family. The reconstruction is verified exactly before returning.
pub fn rank_factorize(r: &PolarizedPolynomial) -> RankFactorization {
    let n = r.dimension();
    let mat = build_matrix(r, r.max_degree());
    let side = mat.side();
    let mut work = mat.entries.clone();
    let pivots = rref(&mut work);
    let rank = pivots.len();
    let mut phi = Vec::with_capacity(rank);
    let mut psi = Vec::with_capacity(rank);
    for (k, _) in pivots.iter().enumerate() {
        let mut f = HoloPoly::zero(n);
        for col in 0..side {
            f.add_term(mat.order.monomial(col).clone(), work[k][col].clone());
        }
        phi.push(f);
    }
    for &pc in &pivots {
        let mut g = HoloPoly::zero(n);
        for row in 0..side {
            g.add_term(mat.order.monomial(row).clone(), mat.entries[row][pc].conj());
        }
        psi.push(g);
    }
    let fact = RankFactorization { rank, phi, psi };
    let rebuilt = fact.reconstruct(n);
    assert_eq!(&rebuilt, r, "rank factorization must reconstruct the input");
    fact
}

/// `R` restricted to the diagonal written as a weighted difference of
/// squared moduli of holomorphic polynomials; weights are positive
/// elements of the real subfield (plain rationals over `Q(i)`).
#[derive(Debug, Clone)]
pub struct SignatureDecomposition {
    pub positive: Vec<(Scalar, HoloPoly)>,
    pub negative: Vec<(Scalar, HoloPoly)>,
}

impl SignatureDecomposition {
    pub fn square_count(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn reconstruct(&self, n: usize) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(n);
        for (w, f) in &self.positive {
            out = out
                .add(&f.sesquilinear_product(f).scale(w))
                .expect("same dimension");
        }
        for (w, f) in &self.negative {
            out = out
                .sub(&f.sesquilinear_product(f).scale(w))
                .expect("same dimension");
        }
        out
    }
}

/// Hermitian congruence diagonalization of the coefficient matrix.
/// Zero-diagonal pivots are handled by mixing in a partner column, which
/// realizes the rank-2 split `x conj(y) + y conj(x) = (|x+y|^2 - |x-y|^2)/2`.
pub fn signature_decompose(r: &PolarizedPolynomial) -> Result<SignatureDecomposition, Error> {
    if !r.is_real_valued() {
        return Err(Error::NotRealValued);
    }
    let n = r.dimension();
    let mat = build_matrix(r, r.max_degree());
    debug_assert!(mat.is_hermitian());
    let side = mat.side();
    let mut m = mat.entries.clone();
    let mut basis: Vec<HoloPoly> = (0..side)
        .map(|k| HoloPoly::monomial(n, mat.order.monomial(k).clone(), Scalar::one()))
        .collect();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    loop {
        let diag = (0..side).find(|&i| !m[i][i].is_zero());
        let pivot_row = match diag {
            Some(i) => i,
            None => {
                // locate any nonzero off-diagonal entry
                let mut found = None;
                'outer: for i in 0..side {
                    for j in 0..side {
                        if i != j && !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break;
                };
                // pick c with 2 Re(c * m[i][j]) != 0, staying in the field
                let c = if m[i][j].real_part().is_zero() {
                    Scalar::i()
                } else {
                    Scalar::one()
                };
                // congruence: col_i += c col_j, row_i += conj(c) row_j
                for row in 0..side {
                    let t = m[row][i].add(&c.mul(&m[row][j]));
                    m[row][i] = t;
                }
                let cc = c.conj();
                for col in 0..side {
                    let t = m[i][col].add(&cc.mul(&m[j][col]));
                    m[i][col] = t;
                }
                let vi = basis[i].clone();
                basis[j] = basis[j].add(&vi.scale(&c.neg()));
                debug_assert!(!m[i][i].is_zero());
                i
            }
        };
        let i = pivot_row;
        let m_ii = m[i][i].clone();
        debug_assert!(m_ii.is_real());
        let column: Vec<Scalar> = (0..side).map(|row| m[row][i].clone()).collect();
        // extract the square: (1/m_ii) |sum_col m[i][col] basis[col]|^2
        let mut g = HoloPoly::zero(n);
        for col in 0..side {
            if !m[i][col].is_zero() {
                g = g.add(&basis[col].scale(&m[i][col]));
            }
        }
        let w = m_ii.inverse().unwrap();
        if w.real_sign() > 0 {
            positive.push((w, g));
        } else {
            negative.push((w.neg(), g));
        }
        // M <- M - (1/m_ii) u u*, clearing row i and column i
        let inv = m_ii.inverse().unwrap();
        for row in 0..side {
            if column[row].is_zero() {
                continue;
            }
            let f = column[row].mul(&inv);
            for col in 0..side {
                let t = m[row][col].sub(&f.mul(&column[col].conj()));
                m[row][col] = t;
            }
        }
        debug_assert!((0..side).all(|k| m[i][k].is_zero() && m[k][i].is_zero()));
    }
    let out = SignatureDecomposition { positive, negative };
    let rebuilt = out.reconstruct(n);
    assert_eq!(&rebuilt, r, "signature decomposition must reconstruct the input");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolarizedPolynomial as P;

    fn full_normal_form(n: usize) -> P {
        P::var_w(n)
            .add(&P::var_eta(n))
            .unwrap()
            .add(&{
                let mut acc = P::zero(n);
                for k in 0..n - 1 {
                    acc = acc
                        .add(&P::var_z(n, k).mul(&P::var_zeta(n, k)).unwrap())
                        .unwrap();
                }
                acc
            })
            .unwrap()
    }

    #[test]
    fn order_layout_matches_convention() {
        let order = MonomialOrder::new(3, 2);
        assert_eq!(order.len(), 10);
        let names: Vec<String> = order
            .monomials()
            .iter()
            .map(|m| {
                PolarizedMonomial::from_parts(m.z.clone(), m.w, ExponentVector::zeros(2), 0)
                    .to_string()
            })
            .collect();
        assert_eq!(
            names,
            vec!["1", "z1", "z2", "w", "z1^2", "z1*z2", "z2^2", "z1*w", "z2*w", "w^2"]
        );
    }

    #[test]
    fn norm_matrix_on_c2() {
        // ||z||^2 on C^2 at d = 1 gives diag(0, 1, 1) and rank 2
        let p = P::hermitian_norm_sq(2);
        let m = build_matrix(&p, 1);
        assert_eq!(m.side(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j && i > 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                assert_eq!(m.entry(i, j), &expected, "at ({i},{j})");
            }
        }
        assert_eq!(exact_rank(&m), 2);
    }

    #[test]
    fn constant_matrix() {
        let p = P::constant(2, Scalar::one());
        let m = build_matrix(&p, 2);
        assert_eq!(m.entry(0, 0), &Scalar::one());
        let nonzero = m
            .entries()
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .count();
        assert_eq!(nonzero, 1);
        assert_eq!(exact_rank(&m), 1);
    }

    #[test]
    fn normal_form_matrix_antidiagonal() {
        // w + eta + z1 zeta1 at d = 1: [[0,0,1],[0,1,0],[1,0,0]]
        let p = full_normal_form(2);
        let m = build_matrix(&p, 1);
        let one = Scalar::one();
        let zero = Scalar::zero();
        let expected = [
            [&zero, &zero, &one],
            [&zero, &one, &zero],
            [&one, &zero, &zero],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), expected[i][j]);
            }
        }
        assert_eq!(exact_rank(&m), 3);
    }

    #[test]
    fn rank_examples() {
        // |z1|^4 - |z2|^4 on C^2 has rank 2
        let n = 2;
        let z1z1 = P::var_z(n, 0).mul(&P::var_zeta(n, 0)).unwrap();
        let wweta = P::var_w(n).mul(&P::var_eta(n)).unwrap();
        let p = z1z1.pow(2).sub(&wweta.pow(2)).unwrap();
        assert_eq!(rank_of(&p), 2);

        assert_eq!(rank_of(&P::zero(2)), 0);
        let single = P::var_z(3, 0).mul(&P::var_zeta(3, 1)).unwrap();
        assert_eq!(rank_of(&single), 1);

        // rank((w + eta + z1 zeta1)^2) = C(4, 2) = 6
        let nf = full_normal_form(2);
        assert_eq!(rank_of(&nf.pow(2)), 6);
    }

    #[test]
    fn sqrt2_counterexample_ranks() {
        // |z1|^4 - sqrt2 |z1|^2 |z2|^2 + |z2|^4 has rank 3; with the
        // opposite middle sign the product collapses to rank 2.
        let n = 2;
        let a = P::var_z(n, 0).mul(&P::var_zeta(n, 0)).unwrap();
        let b = P::var_w(n).mul(&P::var_eta(n)).unwrap();
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
        assert_eq!(rank_of(&p), 3);
        assert_eq!(exact_rank(&build_matrix(&p, 2)), 3);
        let prod = p.mul(&q).unwrap();
        assert_eq!(rank_of(&prod), 2);
    }

    #[test]
    fn rank_is_invariant_under_conjugate_swap() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(21);
        for trial in 0..25 {
            let n = 1 + trial % 3;
            let order = MonomialOrder::new(n, 2);
            let mut p = P::zero(n);
            for holo in order.monomials() {
                for anti in order.monomials() {
                    if rng.gen_bool(0.25) {
                        let c = Scalar::from_ratio(
                            rng.gen_range(-3i64..=3),
                            rng.gen_range(1i64..=3),
                        )
                        .add(&Scalar::i().mul(&Scalar::from_int(rng.gen_range(-2i64..=2))));
                        p.add_term(PolarizedMonomial::from_holo_pair(holo, anti), c);
                    }
                }
            }
            assert_eq!(rank_of(&p), rank_of(&p.conjugate_swap()), "trial {trial}");
        }
    }

    #[test]
    fn deleting_monomials_never_increases_rank() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(27);
        let n = 2;
        let base = full_normal_form(n).pow(2);
        let base_rank = rank_of(&base);
        for _ in 0..40 {
            let mut pruned = P::zero(n);
            for (m, c) in base.terms() {
                if rng.gen_bool(0.7) {
                    pruned.add_term(m.clone(), c.clone());
                }
            }
            assert!(rank_of(&pruned) <= base_rank);
        }
    }

    #[test]
    fn multinomial_bound_values() {
        assert_eq!(multinomial_bound(3, 2), 6);
        assert_eq!(multinomial_bound(7, 0), 1);
        assert_eq!(multinomial_bound(1, 9), 1);
        assert_eq!(multinomial_bound(0, 0), 1);
        assert_eq!(multinomial_bound(0, 3), 0);
    }

    #[test]
    fn rank_factorize_examples() {
        let n = 3;
        let p = P::var_z(n, 0)
            .mul(&P::var_zeta(n, 0))
            .unwrap()
            .add(&P::var_z(n, 1).mul(&P::var_zeta(n, 1)).unwrap())
            .unwrap();
        let f = rank_factorize(&p);
        assert_eq!(f.rank, 2);
        assert_eq!(f.reconstruct(n), p);

        let c = P::constant(2, Scalar::from_int(5));
        let fc = rank_factorize(&c);
        assert_eq!(fc.rank, 1);

        let z = P::zero(2);
        assert_eq!(rank_factorize(&z).rank, 0);

        // |z1|^4 - |z2|^4
        let n = 2;
        let q = P::var_z(n, 0)
            .mul(&P::var_zeta(n, 0))
            .unwrap()
            .pow(2)
            .sub(&P::var_w(n).mul(&P::var_eta(n)).unwrap().pow(2))
            .unwrap();
        let fq = rank_factorize(&q);
        assert_eq!(fq.rank, 2);
        assert_eq!(fq.reconstruct(n), q);
    }

    #[test]
    fn signature_examples() {
        // w + eta + |z1|^2 needs 3 squares
        let n = 2;
        let p = full_normal_form(n);
        let sig = signature_decompose(&p).unwrap();
        assert_eq!(sig.square_count(), 3);
        assert_eq!(sig.square_count(), rank_of(&p));
        assert_eq!(sig.reconstruct(n), p);

        // |z1|^2 - |z2|^2 splits as one positive and one negative square
        let q = P::var_z(3, 0)
            .mul(&P::var_zeta(3, 0))
            .unwrap()
            .sub(&P::var_z(3, 1).mul(&P::var_zeta(3, 1)).unwrap())
            .unwrap();
        let sq = signature_decompose(&q).unwrap();
        assert_eq!(sq.positive.len(), 1);
        assert_eq!(sq.negative.len(), 1);

        // ||z||^2 on C^3: three positive squares
        let r = P::hermitian_norm_sq(3);
        let sr = signature_decompose(&r).unwrap();
        assert_eq!(sr.positive.len(), 3);
        assert_eq!(sr.negative.len(), 0);

        // non-real-valued input rejected
        let bad = P::var_z(2, 0);
        assert_eq!(signature_decompose(&bad).unwrap_err(), Error::NotRealValued);
    }

    #[test]
    fn zero_diagonal_rank2_split() {
        // w + conj(w): hermitian with zero diagonal at every position
        let n = 2;
        let p = P::var_w(n).add(&P::var_eta(n)).unwrap();
        let sig = signature_decompose(&p).unwrap();
        assert_eq!(sig.square_count(), 2);
        assert_eq!(sig.positive.len(), 1);
        assert_eq!(sig.negative.len(), 1);
        assert_eq!(sig.reconstruct(n), p);
    }
}
