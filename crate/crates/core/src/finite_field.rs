//! Finite fields built as towers `GF(p) ⊂ GF(p^m) ⊂ GF(p^{3m})`.
//!
//! Every field element is stored as its canonical index: for a prime field the
//! residue itself, for an extension of degree `d` over a base of order `s` the
//! number `c_0 + c_1 s + ... + c_{d-1} s^{d-1}` where `c_i` are the indices of
//! its coordinates in the base. Enumerating indices `0..order` is the canonical
//! element order used by [`FieldSpec::find_primitive`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Fields above this order are refused so that products of two indices fit in a `u64`.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is reducible: ({factor}) * ({cofactor})")]
    ReducibleModulus {
        factor: Polynomial,
        cofactor: Polynomial,
    },
    #[error("modulus must be monic of degree at least 1")]
    InvalidModulus,
    #[error("polynomial degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("field order exceeds {MAX_FIELD_ORDER}")]
    FieldTooLarge,
    #[error("index {index} is not an element of a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("inverse of zero")]
    ZeroInversion,
    #[error("operation requires a nonzero argument")]
    ZeroArgument,
    #[error("operands belong to different fields")]
    FieldMismatch,
}

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    characteristic: u64,
    order: u64,
    base: Option<FieldSpec>,
    modulus: Option<Polynomial>,
}

/// A finite field: either a prime field or a simple extension of another `FieldSpec`.
///
/// Cloning is cheap; clones share the same description.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())?;
        if let Some(m) = &self.0.modulus {
            write!(f, "[{m}]")?;
        }
        Ok(())
    }
}

impl FieldSpec {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(FieldError::FieldTooLarge);
        }
        Ok(FieldSpec(Arc::new(FieldInner {
            characteristic: p,
            order: p,
            base: None,
            modulus: None,
        })))
    }

    /// `GF(q)` for a prime power `q = p^m`: the prime field when `m = 1`, otherwise
    /// the extension of `GF(p)` by the smallest monic irreducible of degree `m`.
    pub fn galois(q: u64) -> Result<Self, FieldError> {
        let (p, m) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let prime = Self::prime(p)?;
        if m == 1 {
            return Ok(prime);
        }
        let modulus = prime.find_irreducible(m as usize)?;
        prime.extend(modulus)
    }

    /// Extension of `self` by a monic irreducible `modulus` with coefficients in `self`.
    pub fn extend(&self, modulus: Polynomial) -> Result<Self, FieldError> {
        if modulus.field != *self {
            return Err(FieldError::FieldMismatch);
        }
        let degree = match modulus.degree() {
            Some(d) if d >= 1 && modulus.is_monic() => d,
            _ => return Err(FieldError::InvalidModulus),
        };
        let order = checked_power(self.order(), degree).ok_or(FieldError::FieldTooLarge)?;
        if let Some((factor, cofactor)) = modulus.factor_witness() {
            return Err(FieldError::ReducibleModulus { factor, cofactor });
        }
        Ok(FieldSpec(Arc::new(FieldInner {
            characteristic: self.characteristic(),
            order,
            base: Some(self.clone()),
            modulus: Some(modulus),
        })))
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Degree of the top extension step (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0
            .modulus
            .as_ref()
            .and_then(Polynomial::degree)
            .unwrap_or(1)
    }

    pub fn base(&self) -> Option<&FieldSpec> {
        self.0.base.as_ref()
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        self.0.modulus.as_ref()
    }

    /// Moduli of every extension step, bottom of the tower first.
    pub fn tower(&self) -> Vec<Polynomial> {
        let mut out = match self.base() {
            Some(b) => b.tower(),
            None => Vec::new(),
        };
        out.extend(self.modulus().cloned());
        out
    }

    /// The field below this one; a prime field is its own coordinate field.
    fn coordinate_field(&self) -> &FieldSpec {
        self.base().unwrap_or(self)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1,
        }
    }

    /// Element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= self.order() {
            return Err(FieldError::ElementOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value: index,
        })
    }

    /// Element from coordinate indices over the field below, lowest power first.
    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElement, FieldError> {
        let sub = self.coordinate_field();
        if coords.len() != self.degree() {
            return Err(FieldError::ElementOutOfRange {
                index: coords.len() as u64,
                order: self.degree() as u64,
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= sub.order()) {
            return Err(FieldError::ElementOutOfRange {
                index: bad,
                order: sub.order(),
            });
        }
        let value = match self.base() {
            Some(_) => self.encode(coords),
            None => coords[0],
        };
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |value| FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// The lexicographically smallest monic irreducible polynomial of `degree` over `self`.
    ///
    /// Candidates `x^d + c_{d-1} x^{d-1} + ... + c_0` are ranked by the tuple
    /// `(c_{d-1}, ..., c_0)` of canonical coefficient indices.
    pub fn find_irreducible(&self, degree: usize) -> Result<Polynomial, FieldError> {
        if degree == 0 {
            return Err(FieldError::InvalidDegree(degree));
        }
        let count = checked_power(self.order(), degree).ok_or(FieldError::FieldTooLarge)?;
        (0..count)
            .map(|tail| Polynomial::monic_with_tail(self, degree, tail))
            .find(|p| p.factor_witness().is_none())
            .ok_or(FieldError::InvalidDegree(degree))
    }

    /// First element in canonical order whose multiplicative order is `|F| - 1`.
    pub fn find_primitive(&self) -> FieldElement {
        let target = self.order() - 1;
        (1..self.order())
            .map(|value| FieldElement {
                field: self.clone(),
                value,
            })
            .find(|e| e.order().ok() == Some(target))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn decode(&self, mut value: u64) -> Vec<u64> {
        let s = self.coordinate_field().order();
        let mut out = vec![0; self.degree()];
        for c in out.iter_mut() {
            *c = value % s;
            value /= s;
        }
        out
    }

    fn encode(&self, coords: &[u64]) -> u64 {
        let s = self.coordinate_field().order();
        coords.iter().rev().fold(0, |acc, &c| acc * s + c)
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(&FieldSpec, u64, u64) -> u64) -> u64 {
        let base = self.coordinate_field();
        let x = self.decode(a);
        let y = self.decode(b);
        let z: Vec<u64> = x.iter().zip(&y).map(|(&u, &v)| op(base, u, v)).collect();
        self.encode(&z)
    }

    pub(crate) fn raw_add(&self, a: u64, b: u64) -> u64 {
        match self.base() {
            None => (a + b) % self.order(),
            Some(_) => self.digitwise(a, b, FieldSpec::raw_add),
        }
    }

    pub(crate) fn raw_sub(&self, a: u64, b: u64) -> u64 {
        match self.base() {
            None => (a + self.order() - b) % self.order(),
            Some(_) => self.digitwise(a, b, FieldSpec::raw_sub),
        }
    }

    pub(crate) fn raw_neg(&self, a: u64) -> u64 {
        self.raw_sub(0, a)
    }

    pub(crate) fn raw_mul(&self, a: u64, b: u64) -> u64 {
        let (base, modulus) = match (self.base(), self.modulus()) {
            (Some(b), Some(m)) => (b, m),
            _ => return a * b % self.order(),
        };
        if a == 0 || b == 0 {
            return 0;
        }
        let d = self.degree();
        let x = self.decode(a);
        let y = self.decode(b);
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &u) in x.iter().enumerate().filter(|(_, &u)| u != 0) {
            for (j, &v) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                prod[i + j] = base.raw_add(prod[i + j], base.raw_mul(u, v));
            }
        }
        // modulus is monic: x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        let m = modulus.coefficients();
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in m[..d].iter().enumerate() {
                prod[i - d + j] = base.raw_sub(prod[i - d + j], base.raw_mul(c, mj));
            }
            prod[i] = 0;
        }
        self.encode(&prod[..d])
    }

    pub(crate) fn raw_pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut result = 1;
        let mut square = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.raw_mul(result, square);
            }
            square = self.raw_mul(square, square);
            exp >>= 1;
        }
        result
    }

    pub(crate) fn raw_inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.raw_pow(a, self.order() - 2))
    }
}

fn checked_power(base: u64, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp).filter(|&v| v <= MAX_FIELD_ORDER)
}

/// Polynomial over a [`FieldSpec`], coefficients lowest degree first, always trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl Polynomial {
    /// Coefficients are canonical element indices of `field`.
    pub fn new(field: &FieldSpec, coeffs: Vec<u64>) -> Result<Self, FieldError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(FieldError::ElementOutOfRange {
                index: bad,
                order: field.order(),
            });
        }
        Ok(Self::trimmed(field.clone(), coeffs))
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::trimmed(field.clone(), Vec::new())
    }

    fn trimmed(field: FieldSpec, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    /// `x^degree + c_{degree-1} x^{degree-1} + ... + c_0` where `tail` packs the
    /// `c_i` as base-`|field|` digits, `c_{degree-1}` most significant.
    fn monic_with_tail(field: &FieldSpec, degree: usize, mut tail: u64) -> Self {
        let s = field.order();
        let mut coeffs = vec![0; degree + 1];
        for c in coeffs[..degree].iter_mut() {
            *c = tail % s;
            tail /= s;
        }
        coeffs[degree] = 1;
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.raw_add(out[i + j], f.raw_mul(a, b));
            }
        }
        Ok(Self::trimmed(f.clone(), out))
    }

    /// Quotient and remainder of division by a nonzero `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), FieldError> {
        if self.field != divisor.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = &self.field;
        let dd = divisor.degree().ok_or(FieldError::ZeroArgument)?;
        let lead_inv = f
            .raw_inv(divisor.coeffs[dd])
            .ok_or(FieldError::ZeroInversion)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.raw_mul(rem[top], lead_inv);
            let shift = top - dd;
            quot[shift] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.raw_sub(rem[shift + j], f.raw_mul(c, dj));
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            Self::trimmed(f.clone(), quot),
            Self::trimmed(f.clone(), rem),
        ))
    }

    /// A nontrivial factorization `(factor, cofactor)` with `factor` the first monic
    /// divisor of degree `1..=deg/2` in canonical order, or `None` if irreducible.
    pub fn factor_witness(&self) -> Option<(Polynomial, Polynomial)> {
        let degree = self.degree()?;
        for d in 1..=degree / 2 {
            let count = checked_power(self.field.order(), d)?;
            for tail in 0..count {
                let candidate = Self::monic_with_tail(&self.field, d, tail);
                let (q, r) = self.div_rem(&candidate).ok()?;
                if r.is_zero() {
                    return Some((candidate, q));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.degree(), Some(d) if d >= 1) && self.factor_witness().is_none()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = FieldElement {
                field: self.field.clone(),
                value: c,
            };
            match (i, c) {
                (0, _) => write!(f, "{coeff}")?,
                (_, 1) => {}
                _ => write!(f, "{coeff}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u64,
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Canonical index of this element in its field.
    pub fn index(&self) -> u64 {
        self.value
    }

    /// Coordinate indices over the field below (a single entry for a prime field).
    pub fn coords(&self) -> Vec<u64> {
        match self.field.base() {
            Some(_) => self.field.decode(self.value),
            None => vec![self.value],
        }
    }

    /// Coordinates as elements of the base field; `None` for a prime field.
    pub fn coord_elements(&self) -> Option<Vec<FieldElement>> {
        let base = self.field.base()?;
        Some(
            self.coords()
                .into_iter()
                .map(|value| FieldElement {
                    field: base.clone(),
                    value,
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, value: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.raw_add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.raw_sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.raw_mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.raw_neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let v = self
            .field
            .raw_inv(self.value)
            .ok_or(FieldError::ZeroInversion)?;
        Ok(self.with(v))
    }

    /// Square-and-multiply; `pow(0) = 1` including for the zero element.
    pub fn pow(&self, exp: u64) -> FieldElement {
        self.with(self.field.raw_pow(self.value, exp))
    }

    /// Multiplicative order, using the factorization of `|F| - 1`.
    pub fn order(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let group = self.field.order() - 1;
        let mut order = group;
        for (r, _) in arith::factorize(group) {
            while order.is_multiple_of(r) && self.field.raw_pow(self.value, order / r) == 1 {
                order /= r;
            }
        }
        Ok(order)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coord_elements() {
            None => write!(f, "{}", self.value),
            Some(coords) => {
                write!(f, "(")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}
