//! Sparse polarized polynomials `R(z, w, zeta, eta)` with exact scalar
//! coefficients, together with evaluation, translations, and independent
//! linear coordinate changes in the two variable blocks.

use crate::error::Error;
use crate::monomial::{ExponentVector, HoloMonomial, PolarizedMonomial};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Bidegree of a polynomial; the zero polynomial gets a distinguished
/// verdict instead of a sentinel pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bidegree {
    Zero,
    Of(u32, u32),
}

impl Bidegree {
    pub fn at_most(&self, j: u32, k: u32) -> bool {
        match self {
            Bidegree::Zero => true,
            Bidegree::Of(a, b) => *a <= j && *b <= k,
        }
    }
}

/// A point in the polarized space: values for `(z, w)` and independently
/// for `(zeta, eta)`. On the diagonal, `q` is the conjugate of `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
}

impl Point {
    pub fn new(p: Vec<Scalar>, q: Vec<Scalar>) -> Point {
        assert_eq!(p.len(), q.len());
        Point { p, q }
    }

    /// The diagonal point `(p, conj(p))`.
    pub fn diagonal(p: Vec<Scalar>) -> Point {
        let q = p.iter().map(|x| x.conj()).collect();
        Point { p, q }
    }

    pub fn origin(n: usize) -> Point {
        Point {
            p: vec![Scalar::zero(); n],
            q: vec![Scalar::zero(); n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.p.len()
    }

    pub fn is_origin(&self) -> bool {
        self.p.iter().all(|x| x.is_zero()) && self.q.iter().all(|x| x.is_zero())
    }
}

/// Finitely supported coefficient map from polarized monomials to scalars.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedPolynomial {
    n: usize,
    terms: BTreeMap<PolarizedMonomial, Scalar>,
}

impl PolarizedPolynomial {
    pub fn zero(n: usize) -> PolarizedPolynomial {
        assert!(n >= 1);
        PolarizedPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, value: Scalar) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        p.add_term(PolarizedMonomial::one(n), value);
        p
    }

    pub fn one(n: usize) -> PolarizedPolynomial {
        PolarizedPolynomial::constant(n, Scalar::one())
    }

    /// The variable `z_{k+1}` (0-based `k`, valid for `k < n - 1`).
    pub fn var_z(n: usize, k: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        p.add_term(
            PolarizedMonomial::from_parts(
                ExponentVector::unit(n - 1, k),
                0,
                ExponentVector::zeros(n - 1),
                0,
            ),
            Scalar::one(),
        );
        p
    }

    pub fn var_w(n: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        p.add_term(
            PolarizedMonomial::from_parts(
                ExponentVector::zeros(n - 1),
                1,
                ExponentVector::zeros(n - 1),
                0,
            ),
            Scalar::one(),
        );
        p
    }

    pub fn var_zeta(n: usize, k: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        p.add_term(
            PolarizedMonomial::from_parts(
                ExponentVector::zeros(n - 1),
                0,
                ExponentVector::unit(n - 1, k),
                0,
            ),
            Scalar::one(),
        );
        p
    }

    pub fn var_eta(n: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        p.add_term(
            PolarizedMonomial::from_parts(
                ExponentVector::zeros(n - 1),
                0,
                ExponentVector::zeros(n - 1),
                1,
            ),
            Scalar::one(),
        );
        p
    }

    /// The polarization of `||z||^2` on `C^n`, including the `w eta` pair.
    pub fn hermitian_norm_sq(n: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::zero(n);
        for k in 0..n - 1 {
            p.add_term(
                PolarizedMonomial::from_parts(
                    ExponentVector::unit(n - 1, k),
                    0,
                    ExponentVector::unit(n - 1, k),
                    0,
                ),
                Scalar::one(),
            );
        }
        p.add_term(
            PolarizedMonomial::from_parts(
                ExponentVector::zeros(n - 1),
                1,
                ExponentVector::zeros(n - 1),
                1,
            ),
            Scalar::one(),
        );
        p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolarizedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &PolarizedMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `value` to the coefficient of `m`, pruning zeros eagerly.
    pub fn add_term(&mut self, m: PolarizedMonomial, value: Scalar) {
        if value.is_zero() {
            return;
        }
        debug_assert_eq!(m.z.len(), self.n - 1);
        match self.terms.get_mut(&m) {
            Some(c) => {
                let s = c.add(&value);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(m, value);
            }
        }
    }

    pub fn add(&self, other: &PolarizedPolynomial) -> Result<PolarizedPolynomial, Error> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolarizedPolynomial) -> Result<PolarizedPolynomial, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    fn check_dim(&self, other: &PolarizedPolynomial) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Product by the convolution formula: the coefficient of each monomial
    /// is the sum over all componentwise splittings.
    pub fn mul(&self, other: &PolarizedPolynomial) -> Result<PolarizedPolynomial, Error> {
        self.check_dim(other)?;
        let mut out = PolarizedPolynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// `R^d` with the empty-product convention `R^0 = 1`.
    pub fn pow(&self, d: u32) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::one(self.n);
        for _ in 0..d {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// The reality operator: coefficient at `(a, b, c, e)` becomes the
    /// conjugate of the coefficient at `(c, e, a, b)`. A polynomial is
    /// real-valued on the diagonal exactly when it is fixed by this map.
    pub fn conjugate_swap(&self) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.block_swapped(), c.conj());
        }
        out
    }

    /// Coefficient-preserving exchange of the two variable blocks
    /// (transposes the matrix of coefficients; rank is unchanged).
    pub fn block_swap(&self) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.block_swapped(), c.clone());
        }
        out
    }

    pub fn is_real_valued(&self) -> bool {
        self.conjugate_swap() == *self
    }

    pub fn bidegree(&self) -> Bidegree {
        if self.terms.is_empty() {
            return Bidegree::Zero;
        }
        let mut j = 0;
        let mut k = 0;
        for m in self.terms.keys() {
            j = j.max(m.holo_degree());
            k = k.max(m.anti_degree());
        }
        Bidegree::Of(j, k)
    }

    /// Largest of the two bidegree components; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        match self.bidegree() {
            Bidegree::Zero => 0,
            Bidegree::Of(j, k) => j.max(k),
        }
    }

    pub fn evaluate(&self, pt: &Point) -> Scalar {
        assert_eq!(pt.dimension(), self.n, "point dimension mismatch");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.z.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&pt.p[k]);
                }
            }
            for _ in 0..m.w {
                term = term.mul(&pt.p[self.n - 1]);
            }
            for (k, &e) in m.zeta.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&pt.q[k]);
                }
            }
            for _ in 0..m.eta {
                term = term.mul(&pt.q[self.n - 1]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes `(z, w) -> (z, w) + p0` and `(zeta, eta) -> (zeta, eta) + q0`.
    pub fn translate(&self, p0: &[Scalar], q0: &[Scalar]) -> PolarizedPolynomial {
        assert_eq!(p0.len(), self.n);
        assert_eq!(q0.len(), self.n);
        let mut holo_forms = Vec::with_capacity(self.n);
        let mut anti_forms = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut lin = vec![Scalar::zero(); self.n];
            lin[k] = Scalar::one();
            holo_forms.push(AffineForm {
                linear: lin.clone(),
                constant: p0[k].clone(),
            });
            anti_forms.push(AffineForm {
                linear: lin,
                constant: q0[k].clone(),
            });
        }
        self.substitute_affine(&holo_forms, &anti_forms)
    }

    /// Independent linear changes: each `(z, w)` variable `i` is replaced by
    /// the form given by row `i` of `a`, and similarly for the
    /// `(zeta, eta)` block with `b`. Singular matrices are rejected.
    pub fn linear_change(
        &self,
        a: &[Vec<Scalar>],
        b: &[Vec<Scalar>],
    ) -> Result<PolarizedPolynomial, Error> {
        if crate::linalg::invert(a).is_none() || crate::linalg::invert(b).is_none() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.linear_change_unchecked(a, b))
    }

    pub(crate) fn linear_change_unchecked(
        &self,
        a: &[Vec<Scalar>],
        b: &[Vec<Scalar>],
    ) -> PolarizedPolynomial {
        assert_eq!(a.len(), self.n);
        assert_eq!(b.len(), self.n);
        let holo_forms: Vec<AffineForm> = a
            .iter()
            .map(|row| AffineForm {
                linear: row.clone(),
                constant: Scalar::zero(),
            })
            .collect();
        let anti_forms: Vec<AffineForm> = b
            .iter()
            .map(|row| AffineForm {
                linear: row.clone(),
                constant: Scalar::zero(),
            })
            .collect();
        self.substitute_affine(&holo_forms, &anti_forms)
    }

    /// General affine substitution used by translate and linear_change;
    /// form `k` replaces variable `k` of the corresponding block.
    pub(crate) fn substitute_affine(
        &self,
        holo_forms: &[AffineForm],
        anti_forms: &[AffineForm],
    ) -> PolarizedPolynomial {
        let n = self.n;
        let holo_polys: Vec<PolarizedPolynomial> =
            holo_forms.iter().map(|f| f.to_holo_poly(n)).collect();
        let anti_polys: Vec<PolarizedPolynomial> =
            anti_forms.iter().map(|f| f.to_anti_poly(n)).collect();
        let mut holo_powers: Vec<Vec<PolarizedPolynomial>> =
            (0..n).map(|_| vec![PolarizedPolynomial::one(n)]).collect();
        let mut anti_powers: Vec<Vec<PolarizedPolynomial>> =
            (0..n).map(|_| vec![PolarizedPolynomial::one(n)]).collect();
        let power = |cache: &mut Vec<Vec<PolarizedPolynomial>>,
                         polys: &[PolarizedPolynomial],
                         k: usize,
                         e: usize|
         -> PolarizedPolynomial {
            while cache[k].len() <= e {
                let next = cache[k]
                    .last()
                    .unwrap()
                    .mul(&polys[k])
                    .expect("same dimension");
                cache[k].push(next);
            }
            cache[k][e].clone()
        };
        let mut out = PolarizedPolynomial::zero(n);
        for (m, c) in &self.terms {
            let mut term = PolarizedPolynomial::constant(n, c.clone());
            for (k, &e) in m.z.0.iter().enumerate() {
                if e > 0 {
                    term = term
                        .mul(&power(&mut holo_powers, &holo_polys, k, e as usize))
                        .unwrap();
                }
            }
            if m.w > 0 {
                term = term
                    .mul(&power(&mut holo_powers, &holo_polys, n - 1, m.w as usize))
                    .unwrap();
            }
            for (k, &e) in m.zeta.0.iter().enumerate() {
                if e > 0 {
                    term = term
                        .mul(&power(&mut anti_powers, &anti_polys, k, e as usize))
                        .unwrap();
                }
            }
            if m.eta > 0 {
                term = term
                    .mul(&power(&mut anti_powers, &anti_polys, n - 1, m.eta as usize))
                    .unwrap();
            }
            out = out.add(&term).unwrap();
        }
        out
    }

    /// Sets `z_{keep+1}, ..., z_{n'}` and their `zeta` partners to zero and
    /// drops them, producing a polynomial in dimension `keep + 1`.
    pub fn zero_out_tail_vars(&self, keep: usize) -> PolarizedPolynomial {
        assert!(keep <= self.n - 1);
        let new_n = keep + 1;
        let mut out = PolarizedPolynomial::zero(new_n);
        'terms: for (m, c) in &self.terms {
            for k in keep..self.n - 1 {
                if m.z.0[k] > 0 || m.zeta.0[k] > 0 {
                    continue 'terms;
                }
            }
            let z = ExponentVector(m.z.0[..keep].to_vec());
            let zeta = ExponentVector(m.zeta.0[..keep].to_vec());
            out.add_term(
                PolarizedMonomial::from_parts(z, m.w, zeta, m.eta),
                c.clone(),
            );
        }
        out
    }

    /// Restriction of the coefficient support to monomials of bidegree at
    /// most `(d, d)`.
    pub fn truncate_bidegree(&self, d: u32) -> PolarizedPolynomial {
        let mut out = PolarizedPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            if m.holo_degree() <= d && m.anti_degree() <= d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The coefficient of the purely holomorphic monomial `z^a w^b`
    /// (antiholomorphic part zero).
    pub fn holo_coefficient(&self, h: &HoloMonomial) -> Scalar {
        let m = PolarizedMonomial::from_parts(
            h.z.clone(),
            h.w,
            ExponentVector::zeros(self.n - 1),
            0,
        );
        self.coefficient(&m)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&PolarizedMonomial::one(self.n))
    }
}

/// An affine form `constant + sum_k linear[k] * x_k` over one variable block.
#[derive(Debug, Clone)]
pub(crate) struct AffineForm {
    pub linear: Vec<Scalar>,
    pub constant: Scalar,
}

impl AffineForm {
    fn to_holo_poly(&self, n: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::constant(n, self.constant.clone());
        for (k, c) in self.linear.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if k < n - 1 {
                PolarizedMonomial::from_parts(
                    ExponentVector::unit(n - 1, k),
                    0,
                    ExponentVector::zeros(n - 1),
                    0,
                )
            } else {
                PolarizedMonomial::from_parts(
                    ExponentVector::zeros(n - 1),
                    1,
                    ExponentVector::zeros(n - 1),
                    0,
                )
            };
            p.add_term(m, c.clone());
        }
        p
    }

    fn to_anti_poly(&self, n: usize) -> PolarizedPolynomial {
        let mut p = PolarizedPolynomial::constant(n, self.constant.clone());
        for (k, c) in self.linear.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if k < n - 1 {
                PolarizedMonomial::from_parts(
                    ExponentVector::zeros(n - 1),
                    0,
                    ExponentVector::unit(n - 1, k),
                    0,
                )
            } else {
                PolarizedMonomial::from_parts(
                    ExponentVector::zeros(n - 1),
                    0,
                    ExponentVector::zeros(n - 1),
                    1,
                )
            };
            p.add_term(m, c.clone());
        }
        p
    }
}

impl fmt::Display for PolarizedPolynomial {
    /// Renders in the expression grammar: `+`, `-`, `*`, `^`, `~` prefixes,
    /// with composite coefficients parenthesized, so output re-parses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let cs = c.to_compact_string();
            let simple = !cs.contains('+') && !(cs.len() > 1 && cs[1..].contains('-'));
            let coeff_txt = if simple {
                coeff_for_grammar(&cs)
            } else {
                format!("({})", coeff_for_grammar(&cs))
            };
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{coeff_txt}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff_txt}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Rewrites compact scalar tokens (`2i`, `3r2`, `ir2`) as grammar products
/// (`2*i`, `3*r2`, `i*r2`).
fn coeff_for_grammar(compact: &str) -> String {
    let mut out = String::new();
    let bytes = compact.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let ch = bytes[k] as char;
        if (ch == 'i' || ch == 'r') && k > 0 && bytes[k - 1].is_ascii_digit() {
            out.push('*');
        }
        if ch == 'r' && k > 0 && bytes[k - 1] == b'i' {
            out.push('*');
        }
        out.push(ch);
        k += 1;
    }
    out
}
