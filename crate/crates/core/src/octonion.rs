//! Octonion scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{table, BASIS_NAMES};

/// An octonion `sum_q c_q e_q` over the basis `(1, i, j, k, kl, jl, il, l)`.
///
/// Serializes as an array of 8 numbers in basis order.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 8]", into = "[f64; 8]")]
pub struct Octonion([f64; 8]);

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion::unit(0);
    pub const I: Octonion = Octonion::unit(1);
    pub const J: Octonion = Octonion::unit(2);
    pub const K: Octonion = Octonion::unit(3);
    pub const KL: Octonion = Octonion::unit(4);
    pub const JL: Octonion = Octonion::unit(5);
    pub const IL: Octonion = Octonion::unit(6);
    pub const L: Octonion = Octonion::unit(7);

    /// Checked constructor; rejects NaN and infinities.
    pub fn new(coeffs: [f64; 8]) -> Result<Self> {
        match coeffs.iter().position(|c| !c.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(Octonion(coeffs)),
        }
    }

    /// Unchecked constructor for coefficients already known to be finite.
    pub const fn from_coeffs(coeffs: [f64; 8]) -> Self {
        Octonion(coeffs)
    }

    /// The basis unit `e_{q+1}`.
    pub const fn unit(q: usize) -> Self {
        let mut c = [0.0; 8];
        c[q] = 1.0;
        Octonion(c)
    }

    pub const fn real(x: f64) -> Self {
        Octonion([x, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Builds `sum c * e_q` from `(coefficient, index)` terms.
    pub fn from_terms(terms: &[(f64, usize)]) -> Self {
        let mut c = [0.0; 8];
        for &(x, q) in terms {
            c[q] += x;
        }
        Octonion(c)
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.map(|x| -x);
        c[0] = self.0[0];
        Octonion(c)
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn im(&self) -> Self {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    /// Euclidean inner product inherited from R^8.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `conj(a) / |a|^2`.
    pub fn inverse(&self, eps: f64) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2.sqrt() <= eps {
            return Err(Error::DivisionByZero { norm: n2.sqrt() });
        }
        Ok(self.conj() / n2)
    }

    /// Unit vector in the same direction, if the norm exceeds `eps`.
    pub fn normalized(&self, eps: f64) -> Option<Self> {
        let n = self.norm();
        (n > eps).then(|| *self / n)
    }

    pub fn is_pure_imaginary(&self, eps: f64) -> bool {
        self.0[0].abs() <= eps
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `cos(theta) + u sin(theta)` for a pure imaginary unit `u`.
    pub fn unit_complex(u: Octonion, theta: f64, eps: f64) -> Result<Self> {
        let norm = u.norm();
        if u.re().abs() > eps || (norm - 1.0).abs() > eps {
            return Err(Error::NotUnitImaginary {
                real: u.re(),
                norm,
            });
        }
        Ok(Octonion::real(theta.cos()) + u * theta.sin())
    }
}

/// `(ab)c - a(bc)`.
pub fn associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    (a * b) * c - a * (b * c)
}

/// `ab - ba`.
pub fn commutator(a: Octonion, b: Octonion) -> Octonion {
    a * b - b * a
}

impl TryFrom<[f64; 8]> for Octonion {
    type Error = Error;

    fn try_from(c: [f64; 8]) -> Result<Self> {
        Octonion::new(c)
    }
}

impl From<Octonion> for [f64; 8] {
    fn from(o: Octonion) -> Self {
        o.0
    }
}

impl From<f64> for Octonion {
    fn from(x: f64) -> Self {
        Octonion::real(x)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x -= y;
        }
        Octonion(c)
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        *self = *self + rhs;
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        *self = *self - rhs;
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|x| -x))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    #[inline]
    fn mul(self, rhs: Octonion) -> Octonion {
        Octonion(table().mul_coeffs(&self.0, &rhs.0))
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: f64) -> Octonion {
        Octonion(self.0.map(|x| x * rhs))
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs * self
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    fn div(self, rhs: f64) -> Octonion {
        Octonion(self.0.map(|x| x / rhs))
    }
}

impl std::iter::Sum for Octonion {
    fn sum<I: Iterator<Item = Octonion>>(iter: I) -> Octonion {
        iter.fold(Octonion::ZERO, |acc, x| acc + x)
    }
}

/// Writes the octonion in the command-line term syntax, e.g. `1+kl` or
/// `-0.5i+2jl`. Coefficients use the shortest round-trip representation.
impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, &c) in self.0.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let name = if q == 0 { "" } else { BASIS_NAMES[q] };
            let mag = c.abs();
            if c < 0.0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if mag != 1.0 || q == 0 {
                write!(f, "{mag}")?;
            }
            f.write_str(name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion({self})")
    }
}
