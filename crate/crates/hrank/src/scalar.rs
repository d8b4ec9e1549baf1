//! Exact scalars in the field `Q(i)` optionally extended by a real square
//! root `sqrt(s)` of a square-free integer `s >= 2`.
//!
//! A value is stored as `a + b*i + (c + d*i)*sqrt(s)` with rational
//! components. Since `sqrt(s)` is real, conjugation negates `b` and `d`
//! only. All arithmetic is exact; equality is decidable componentwise
//! because `1` and `sqrt(s)` are linearly independent over `Q(i)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Scalar field selector: plain Gaussian rationals or the quadratic
/// extension by `sqrt(base)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    Qi,
    QiSqrt(u32),
}

impl ScalarField {
    pub fn radical_base(&self) -> Option<u32> {
        match self {
            ScalarField::Qi => None,
            ScalarField::QiSqrt(s) => Some(*s),
        }
    }

    /// Accepts `qi`, `qi-sqrt2`, `qi-sqrt3`, ... with a square-free base.
    pub fn parse(text: &str) -> Result<ScalarField, String> {
        if text == "qi" {
            return Ok(ScalarField::Qi);
        }
        if let Some(rest) = text.strip_prefix("qi-sqrt") {
            let s: u32 = rest
                .parse()
                .map_err(|_| format!("invalid field `{text}`"))?;
            if s < 2 {
                return Err(format!("radical base must be >= 2, got {s}"));
            }
            if !is_square_free(s) {
                return Err(format!("radical base must be square-free, got {s}"));
            }
            return Ok(ScalarField::QiSqrt(s));
        }
        Err(format!(
            "unknown field `{text}` (expected `qi` or `qi-sqrtS`)"
        ))
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Qi => write!(f, "qi"),
            ScalarField::QiSqrt(s) => write!(f, "qi-sqrt{s}"),
        }
    }
}

fn is_square_free(mut s: u32) -> bool {
    let mut p = 2u32;
    while p * p <= s {
        if s % (p * p) == 0 {
            return false;
        }
        while s % p == 0 {
            s /= p;
        }
        p += 1;
    }
    true
}

/// An exact element `a + b*i + (c + d*i)*sqrt(base)`.
///
/// Invariant: `base == 0` exactly when `c = d = 0`, so purely Gaussian
/// rational values compare equal regardless of which field produced them.
/// Mixing two distinct nonzero bases in one operation is a programming
/// error and panics; a computation fixes a single field up front.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
    rad_re: BigRational,
    rad_im: BigRational,
    base: u32,
}

fn rat_i64(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    fn normalized(mut self) -> Scalar {
        if self.rad_re.is_zero() && self.rad_im.is_zero() {
            self.base = 0;
        }
        self
    }

    pub fn zero() -> Scalar {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
            rad_re: BigRational::zero(),
            rad_im: BigRational::zero(),
            base: 0,
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(rat_i64(n, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(rat_i64(num, den))
    }

    pub fn from_rational(re: BigRational) -> Scalar {
        Scalar {
            re,
            im: BigRational::zero(),
            rad_re: BigRational::zero(),
            rad_im: BigRational::zero(),
            base: 0,
        }
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
            rad_re: BigRational::zero(),
            rad_im: BigRational::zero(),
            base: 0,
        }
    }

    /// `sqrt(base)` for a square-free `base >= 2`.
    pub fn sqrt_base(base: u32) -> Scalar {
        assert!(base >= 2 && is_square_free(base), "bad radical base {base}");
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
            rad_re: BigRational::one(),
            rad_im: BigRational::zero(),
            base,
        }
    }

    pub fn from_parts(
        re: BigRational,
        im: BigRational,
        rad_re: BigRational,
        rad_im: BigRational,
        base: u32,
    ) -> Scalar {
        if !(rad_re.is_zero() && rad_im.is_zero()) {
            assert!(base >= 2 && is_square_free(base), "bad radical base {base}");
        }
        Scalar {
            re,
            im,
            rad_re,
            rad_im,
            base,
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad_re.is_zero() && self.rad_im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.rad_re.is_zero() && self.rad_im.is_zero()
    }

    /// True when the value is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.im.is_zero() && self.rad_im.is_zero()
    }

    /// True when the value lies in `Q` (no imaginary and no radical part).
    pub fn is_rational(&self) -> bool {
        self.im.is_zero() && self.rad_re.is_zero() && self.rad_im.is_zero()
    }

    pub fn rational_value(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.re)
        } else {
            None
        }
    }

    pub fn radical_base(&self) -> Option<u32> {
        if self.base == 0 {
            None
        } else {
            Some(self.base)
        }
    }

    fn merged_base(&self, other: &Scalar) -> u32 {
        match (self.base, other.base) {
            (0, b) => b,
            (b, 0) => b,
            (a, b) => {
                assert!(a == b, "mixed radical bases sqrt({a}) and sqrt({b})");
                a
            }
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
            rad_re: self.rad_re.clone(),
            rad_im: -self.rad_im.clone(),
            base: self.base,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
            rad_re: -self.rad_re.clone(),
            rad_im: -self.rad_im.clone(),
            base: self.base,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let base = self.merged_base(other);
        Scalar {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            rad_re: &self.rad_re + &other.rad_re,
            rad_im: &self.rad_im + &other.rad_im,
            base,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let base = self.merged_base(other);
        // Complex products of the rational and radical halves:
        // (x1 + y1*sqrt(s)) (x2 + y2*sqrt(s)) = (x1 x2 + s y1 y2) + (x1 y2 + y1 x2) sqrt(s)
        let self_rad = !self.rad_re.is_zero() || !self.rad_im.is_zero();
        let other_rad = !other.rad_re.is_zero() || !other.rad_im.is_zero();
        let (x1r, x1i) = (&self.re, &self.im);
        let (x2r, x2i) = (&other.re, &other.im);
        let mut re = x1r * x2r - x1i * x2i;
        let mut im = x1r * x2i + x1i * x2r;
        let mut rad_re = BigRational::zero();
        let mut rad_im = BigRational::zero();
        if self_rad || other_rad {
            let (y1r, y1i) = (&self.rad_re, &self.rad_im);
            let (y2r, y2i) = (&other.rad_re, &other.rad_im);
            if self_rad && other_rad {
                let s = BigRational::from(BigInt::from(base));
                re += &s * (y1r * y2r - y1i * y2i);
                im += &s * (y1r * y2i + y1i * y2r);
            }
            rad_re = x1r * y2r - x1i * y2i + (y1r * x2r - y1i * x2i);
            rad_im = x1r * y2i + x1i * y2r + (y1r * x2i + y1i * x2r);
        }
        Scalar {
            re,
            im,
            rad_re,
            rad_im,
            base,
        }
        .normalized()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.rad_re.is_zero() && self.rad_im.is_zero() {
            // plain complex inverse
            let n = &self.re * &self.re + &self.im * &self.im;
            return Some(Scalar {
                re: &self.re / &n,
                im: -(&self.im / &n),
                rad_re: BigRational::zero(),
                rad_im: BigRational::zero(),
                base: 0,
            });
        }
        // 1/(x + y sqrt(s)) = (x - y sqrt(s)) / (x^2 - s y^2), with x, y in Q(i).
        // The denominator is nonzero because sqrt(s) is not in Q(i).
        let s = BigRational::from(BigInt::from(self.base));
        let x = Scalar::from_parts(
            self.re.clone(),
            self.im.clone(),
            BigRational::zero(),
            BigRational::zero(),
            0,
        );
        let y = Scalar::from_parts(
            self.rad_re.clone(),
            self.rad_im.clone(),
            BigRational::zero(),
            BigRational::zero(),
            0,
        );
        let s_scalar = Scalar::from_rational(s);
        let denom = x.mul(&x).sub(&s_scalar.mul(&y.mul(&y)));
        let denom_inv = denom.inverse()?;
        let out_x = x.mul(&denom_inv);
        let out_y = y.neg().mul(&denom_inv);
        Some(
            Scalar {
                re: out_x.re,
                im: out_x.im,
                rad_re: out_y.re,
                rad_im: out_y.im,
                base: self.base,
            }
            .normalized(),
        )
    }

    /// Exact division; panics on division by zero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inverse().expect("division by zero scalar"))
    }

    pub fn real_part(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: BigRational::zero(),
            rad_re: self.rad_re.clone(),
            rad_im: BigRational::zero(),
            base: self.base,
        }
        .normalized()
    }

    /// The coefficient of `i`, as a real scalar: for `a + bi + (c + di) sqrt(s)`
    /// this is `b + d sqrt(s)`.
    pub fn imag_part(&self) -> Scalar {
        Scalar {
            re: self.im.clone(),
            im: BigRational::zero(),
            rad_re: self.rad_im.clone(),
            rad_im: BigRational::zero(),
            base: self.base,
        }
        .normalized()
    }

    /// Exact sign of a real scalar `a + c sqrt(s)`: -1, 0, or 1.
    ///
    /// Panics when called on a non-real value.
    pub fn real_sign(&self) -> i32 {
        assert!(self.is_real(), "real_sign on non-real scalar");
        let a = &self.re;
        let c = &self.rad_re;
        if c.is_zero() {
            return rational_sign(a);
        }
        if a.is_zero() {
            return rational_sign(c);
        }
        let sa = rational_sign(a);
        let sc = rational_sign(c);
        if sa == sc {
            return sa;
        }
        // a and c have opposite signs: compare |a| with |c| sqrt(s) via squares.
        let s = BigRational::from(BigInt::from(self.base));
        let diff = a * a - &s * (c * c);
        match rational_sign(&diff) {
            0 => 0,
            d => d * sa,
        }
    }

    /// Exact square root of a nonnegative real scalar when it exists in the
    /// field `Q(i)(sqrt(base_hint))`; `None` otherwise. The result is real.
    pub fn try_real_sqrt(&self, base_hint: Option<u32>) -> Option<Scalar> {
        if !self.is_real() || self.real_sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let a = &self.re;
        let c = &self.rad_re;
        if c.is_zero() {
            if let Some(r) = rational_sqrt(a) {
                return Some(Scalar::from_rational(r));
            }
            if let Some(s) = base_hint.or(self.radical_base()) {
                // a = s * k^2  =>  sqrt(a) = k sqrt(s)
                let s_rat = BigRational::from(BigInt::from(s));
                if let Some(k) = rational_sqrt(&(a / &s_rat)) {
                    let mut out = Scalar::sqrt_base(s);
                    out.rad_re = k;
                    return Some(out.normalized());
                }
            }
            return None;
        }
        // sqrt(a + c sqrt(s)) = x + y sqrt(s) requires x^2 + s y^2 = a, 2xy = c.
        let s_rat = BigRational::from(BigInt::from(self.base));
        let disc = a * a - &s_rat * (c * c);
        let t = rational_sqrt_signed(&disc)?;
        let two = rat_i64(2, 1);
        for x_sq in [(a + &t) / &two, (a - &t) / &two] {
            if rational_sign(&x_sq) < 0 {
                continue;
            }
            if let Some(x) = rational_sqrt(&x_sq) {
                if x.is_zero() {
                    continue;
                }
                let y = c / (&two * &x);
                let cand = Scalar::from_parts(
                    x,
                    BigRational::zero(),
                    y,
                    BigRational::zero(),
                    self.base,
                );
                if cand.real_sign() >= 0 && cand.mul(&cand) == *self {
                    return Some(cand);
                }
                let neg = cand.neg();
                if neg.real_sign() >= 0 && neg.mul(&neg) == *self {
                    return Some(neg);
                }
            }
        }
        None
    }

    /// Numerical embedding as `(re, im)` doubles for floating-point oracles.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let rad = if self.base == 0 {
            0.0
        } else {
            (self.base as f64).sqrt()
        };
        let r = rational_f64(&self.re) + rational_f64(&self.rad_re) * rad;
        let i = rational_f64(&self.im) + rational_f64(&self.rad_im) * rad;
        (r, i)
    }

    /// The value as a Gaussian integer `(re, im)` when it is radical-free
    /// with unit denominators.
    pub fn gaussian_integer_parts(&self) -> Option<(BigInt, BigInt)> {
        if self.base != 0 || !self.rad_re.is_zero() || !self.rad_im.is_zero() {
            return None;
        }
        if !self.re.denom().is_one() || !self.im.denom().is_one() {
            return None;
        }
        Some((self.re.numer().clone(), self.im.numer().clone()))
    }

    /// Rough size in bits, used to prefer small pivots during elimination.
    pub fn size_hint(&self) -> u64 {
        let mut bits = 0u64;
        for part in [&self.re, &self.im, &self.rad_re, &self.rad_im] {
            bits += part.numer().bits() + part.denom().bits();
        }
        bits
    }

    /// Least common multiple of the denominators of all four components.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for part in [&self.re, &self.im, &self.rad_re, &self.rad_im] {
            l = l.lcm(part.denom());
        }
        l
    }

    /// Compact stable encoding, e.g. `3/4+1/2i-2r2+1/3ir2`; `0` for zero.
    /// Terms appear in the fixed order: rational, `i`, `r<s>`, `ir<s>`.
    pub fn to_compact_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let push = |q: &BigRational, suffix: &str, out: &mut String| {
            if q.is_zero() {
                return;
            }
            if q.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let abs = q.abs();
            out.push_str(&abs.numer().to_string());
            if !abs.denom().is_one() {
                out.push('/');
                out.push_str(&abs.denom().to_string());
            }
            out.push_str(suffix);
        };
        push(&self.re, "", &mut out);
        push(&self.im, "i", &mut out);
        if self.base != 0 {
            let r = format!("r{}", self.base);
            let ir = format!("ir{}", self.base);
            push(&self.rad_re, &r, &mut out);
            push(&self.rad_im, &ir, &mut out);
        }
        out
    }

    /// Parses the compact encoding produced by [`Scalar::to_compact_string`].
    pub fn parse_compact(text: &str) -> Result<Scalar, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err("empty scalar".to_string());
        }
        if t == "0" {
            return Ok(Scalar::zero());
        }
        let bytes = t.as_bytes();
        let mut pos = 0usize;
        let mut acc = Scalar::zero();
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' {
                pos += 1;
            } else if bytes[pos] == b'-' {
                sign = -1;
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let numer: BigInt = if pos > start {
                t[start..pos].parse().map_err(|_| "bad numerator")?
            } else {
                BigInt::one()
            };
            let mut denom = BigInt::one();
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let ds = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == ds {
                    return Err(format!("missing denominator at {pos}"));
                }
                denom = t[ds..pos].parse().map_err(|_| "bad denominator")?;
                if denom.is_zero() {
                    return Err("zero denominator".to_string());
                }
            }
            let mut has_i = false;
            if pos < bytes.len() && bytes[pos] == b'i' {
                has_i = true;
                pos += 1;
            }
            let mut base = 0u32;
            if pos < bytes.len() && bytes[pos] == b'r' {
                pos += 1;
                let bs = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == bs {
                    return Err(format!("missing radical base at {pos}"));
                }
                base = t[bs..pos].parse().map_err(|_| "bad radical base")?;
                if base < 2 || !is_square_free(base) {
                    return Err(format!("bad radical base {base}"));
                }
            }
            if pos == start && !has_i && base == 0 {
                return Err(format!("unexpected character at {pos}"));
            }
            let q = BigRational::new(numer * BigInt::from(sign), denom);
            let term = match (has_i, base) {
                (false, 0) => Scalar::from_rational(q),
                (true, 0) => Scalar::from_parts(
                    BigRational::zero(),
                    q,
                    BigRational::zero(),
                    BigRational::zero(),
                    0,
                ),
                (false, b) => Scalar::from_parts(
                    BigRational::zero(),
                    BigRational::zero(),
                    q,
                    BigRational::zero(),
                    b,
                ),
                (true, b) => Scalar::from_parts(
                    BigRational::zero(),
                    BigRational::zero(),
                    BigRational::zero(),
                    q,
                    b,
                ),
            };
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact_string())
    }
}

fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

fn rational_f64(q: &BigRational) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // Good enough for oracle embeddings at desk scale.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Exact square root of a nonnegative rational when it is rational.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    let n = q.numer();
    let d = q.denom();
    let ns = n.sqrt();
    let ds = d.sqrt();
    if &(&ns * &ns) == n && &(&ds * &ds) == d {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

fn rational_sqrt_signed(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        None
    } else {
        rational_sqrt(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_spot_checks() {
        let x = Scalar::from_ratio(3, 4).add(&Scalar::i().mul(&Scalar::from_ratio(1, 2)));
        let y = Scalar::from_int(-2).add(&Scalar::i());
        assert_eq!(x.add(&y), y.add(&x));
        assert_eq!(x.mul(&y), y.mul(&x));
        let inv = y.inverse().unwrap();
        assert!(y.mul(&inv).is_one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn conjugation_is_involution() {
        let s = Scalar::sqrt_base(2);
        let x = Scalar::from_ratio(1, 3)
            .add(&Scalar::i().mul(&Scalar::from_int(2)))
            .add(&s.mul(&Scalar::from_ratio(-1, 2)))
            .add(&s.mul(&Scalar::i()));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(x.add(&x.conj()).imag_part(), Scalar::zero());
    }

    #[test]
    fn radical_inverse() {
        // 1/(1 + sqrt(2)) = sqrt(2) - 1
        let x = Scalar::one().add(&Scalar::sqrt_base(2));
        let inv = x.inverse().unwrap();
        let expected = Scalar::sqrt_base(2).sub(&Scalar::one());
        assert_eq!(inv, expected);
        assert!(x.mul(&inv).is_one());

        // a mixed value with i and sqrt(2)
        let y = Scalar::from_int(2)
            .add(&Scalar::i())
            .add(&Scalar::sqrt_base(2).mul(&Scalar::from_ratio(1, 3)));
        assert!(y.mul(&y.inverse().unwrap()).is_one());
    }

    #[test]
    fn zero_iff_all_components_zero() {
        assert!(Scalar::zero().is_zero());
        let tiny = Scalar::from_parts(
            BigRational::zero(),
            BigRational::zero(),
            rat_i64(1, 1000000),
            BigRational::zero(),
            2,
        );
        assert!(!tiny.is_zero());
    }

    #[test]
    fn real_sign_exact() {
        // 3 - 2 sqrt(2) > 0 since 9 > 8
        let x = Scalar::from_int(3).sub(&Scalar::sqrt_base(2).mul(&Scalar::from_int(2)));
        assert_eq!(x.real_sign(), 1);
        // 1 - sqrt(2) < 0
        let y = Scalar::one().sub(&Scalar::sqrt_base(2));
        assert_eq!(y.real_sign(), -1);
        assert_eq!(Scalar::zero().real_sign(), 0);
    }

    #[test]
    fn real_sqrt_cases() {
        let q = Scalar::from_ratio(9, 4);
        assert_eq!(
            q.try_real_sqrt(None).unwrap(),
            Scalar::from_ratio(3, 2)
        );
        // sqrt(8) = 2 sqrt(2)
        let e = Scalar::from_int(8);
        let r = e.try_real_sqrt(Some(2)).unwrap();
        assert_eq!(r, Scalar::sqrt_base(2).mul(&Scalar::from_int(2)));
        // sqrt(3 + 2 sqrt(2)) = 1 + sqrt(2)
        let x = Scalar::from_int(3).add(&Scalar::sqrt_base(2).mul(&Scalar::from_int(2)));
        let rx = x.try_real_sqrt(None).unwrap();
        assert_eq!(rx, Scalar::one().add(&Scalar::sqrt_base(2)));
        assert!(Scalar::from_int(2).try_real_sqrt(None).is_none());
    }

    #[test]
    fn compact_codec_round_trip() {
        let samples = [
            Scalar::zero(),
            Scalar::one(),
            Scalar::from_ratio(3, 4).add(&Scalar::i().mul(&Scalar::from_ratio(1, 2))),
            Scalar::from_int(-2)
                .add(&Scalar::sqrt_base(2).mul(&Scalar::from_ratio(-5, 7)))
                .add(&Scalar::sqrt_base(2).mul(&Scalar::i().mul(&Scalar::from_int(3)))),
        ];
        for s in &samples {
            let text = s.to_compact_string();
            let back = Scalar::parse_compact(&text).unwrap();
            assert_eq!(&back, s, "round trip failed for {text}");
        }
        assert_eq!(
            Scalar::from_ratio(3, 4)
                .add(&Scalar::i().mul(&Scalar::from_ratio(1, 2)))
                .to_compact_string(),
            "3/4+1/2i"
        );
    }
}
