//! Multi-indices and polarized monomials `z^a w^b zeta^c eta^e` in the
//! split coordinates `(z, w)` and `(zeta, eta)` on `C^n`, where `w` is the
//! distinguished last holomorphic variable and `(zeta, eta)` is the
//! polarization block standing in for the conjugates.

use std::fmt;

/// A vector of nonnegative exponents over the `z` block (length `n - 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zeros(len: usize) -> ExponentVector {
        ExponentVector(vec![0; len])
    }

    pub fn unit(len: usize, k: usize) -> ExponentVector {
        let mut v = vec![0; len];
        v[k] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise partial order.
    pub fn leq(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !other.leq(self) {
            return None;
        }
        Some(ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }
}

/// A monomial on the holomorphic side only: `z^exp * w^w_exp`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HoloMonomial {
    pub z: ExponentVector,
    pub w: u32,
}

impl HoloMonomial {
    pub fn one(n: usize) -> HoloMonomial {
        HoloMonomial {
            z: ExponentVector::zeros(n - 1),
            w: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.z.degree() + self.w
    }
}

/// A polarized monomial `z^a w^b zeta^c eta^e`; `(a, b)` is the
/// holomorphic part and `(c, e)` the antiholomorphic part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolarizedMonomial {
    pub z: ExponentVector,
    pub w: u32,
    pub zeta: ExponentVector,
    pub eta: u32,
}

impl PolarizedMonomial {
    pub fn one(n: usize) -> PolarizedMonomial {
        PolarizedMonomial {
            z: ExponentVector::zeros(n - 1),
            w: 0,
            zeta: ExponentVector::zeros(n - 1),
            eta: 0,
        }
    }

    pub fn from_parts(z: ExponentVector, w: u32, zeta: ExponentVector, eta: u32) -> Self {
        debug_assert_eq!(z.len(), zeta.len());
        PolarizedMonomial { z, w, zeta, eta }
    }

    pub fn from_holo_pair(holo: &HoloMonomial, anti: &HoloMonomial) -> Self {
        PolarizedMonomial {
            z: holo.z.clone(),
            w: holo.w,
            zeta: anti.z.clone(),
            eta: anti.w,
        }
    }

    pub fn is_one(&self) -> bool {
        self.w == 0 && self.eta == 0 && self.z.degree() == 0 && self.zeta.degree() == 0
    }

    /// Total degree in the `(z, w)` block: `|a| + b`.
    pub fn holo_degree(&self) -> u32 {
        self.z.degree() + self.w
    }

    /// Total degree in the `(zeta, eta)` block: `|c| + e`.
    pub fn anti_degree(&self) -> u32 {
        self.zeta.degree() + self.eta
    }

    pub fn holo(&self) -> HoloMonomial {
        HoloMonomial {
            z: self.z.clone(),
            w: self.w,
        }
    }

    pub fn anti(&self) -> HoloMonomial {
        HoloMonomial {
            z: self.zeta.clone(),
            w: self.eta,
        }
    }

    /// Exchanges the two variable blocks: `(a, b, c, e) -> (c, e, a, b)`.
    pub fn block_swapped(&self) -> PolarizedMonomial {
        PolarizedMonomial {
            z: self.zeta.clone(),
            w: self.eta,
            zeta: self.z.clone(),
            eta: self.w,
        }
    }

    /// Componentwise partial order on all four exponent groups.
    pub fn leq(&self, other: &PolarizedMonomial) -> bool {
        self.z.leq(&other.z)
            && self.w <= other.w
            && self.zeta.leq(&other.zeta)
            && self.eta <= other.eta
    }

    pub fn mul(&self, other: &PolarizedMonomial) -> PolarizedMonomial {
        PolarizedMonomial {
            z: self.z.add(&other.z),
            w: self.w + other.w,
            zeta: self.zeta.add(&other.zeta),
            eta: self.eta + other.eta,
        }
    }

    pub fn checked_sub(&self, other: &PolarizedMonomial) -> Option<PolarizedMonomial> {
        Some(PolarizedMonomial {
            z: self.z.checked_sub(&other.z)?,
            w: self.w.checked_sub(other.w)?,
            zeta: self.zeta.checked_sub(&other.zeta)?,
            eta: self.eta.checked_sub(other.eta)?,
        })
    }
}

impl fmt::Display for PolarizedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, &e) in self.z.0.iter().enumerate() {
            if e == 1 {
                parts.push(format!("z{}", k + 1));
            } else if e > 1 {
                parts.push(format!("z{}^{}", k + 1, e));
            }
        }
        if self.w == 1 {
            parts.push("w".to_string());
        } else if self.w > 1 {
            parts.push(format!("w^{}", self.w));
        }
        for (k, &e) in self.zeta.0.iter().enumerate() {
            if e == 1 {
                parts.push(format!("~z{}", k + 1));
            } else if e > 1 {
                parts.push(format!("~z{}^{}", k + 1, e));
            }
        }
        if self.eta == 1 {
            parts.push("~w".to_string());
        } else if self.eta > 1 {
            parts.push(format!("~w^{}", self.eta));
        }
        write!(f, "{}", parts.join("*"))
    }
}
