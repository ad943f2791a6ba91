use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, QPoly};
use super::FieldError;
use crate::linalg::{exterior_power_matrix, RatMatrix};

/// An element of `Q[x]/(f)`, stored as its reduced representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    rep: QPoly,
}

impl FieldElement {
    pub fn new(coeffs: Vec<BigRational>, f: &Poly) -> Self {
        Self {
            rep: QPoly::new(coeffs).rem(&f.to_rational()),
        }
    }

    pub fn from_integers(coeffs: &[i64], f: &Poly) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), f)
    }

    pub fn rational(q: BigRational) -> Self {
        Self {
            rep: QPoly::new(vec![q]),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Coefficients on `1, x, ..., x^(d-1)`, padded to length `d`.
    pub fn coordinates(&self, d: usize) -> Vec<BigRational> {
        let mut v = self.rep.coeffs().to_vec();
        v.resize(d, BigRational::zero());
        v
    }

    pub fn mul(&self, other: &FieldElement, f: &Poly) -> FieldElement {
        Self {
            rep: self.rep.mul(&other.rep).rem(&f.to_rational()),
        }
    }
}

fn nonzero(a: &FieldElement) -> Result<(), FieldError> {
    if a.is_zero() {
        Err(FieldError::ZeroElement)
    } else {
        Ok(())
    }
}

/// Matrix of multiplication by `a` on the power basis; column `j` holds the
/// coordinates of `x^j * a`.
pub fn multiplication_matrix(a: &FieldElement, f: &Poly) -> Result<RatMatrix, FieldError> {
    nonzero(a)?;
    let d = f.degree();
    let mut columns = Vec::with_capacity(d);
    let mut current = a.clone();
    let x = FieldElement::new(vec![BigRational::zero(), BigRational::one()], f);
    for _ in 0..d {
        columns.push(current.coordinates(d));
        current = current.mul(&x, f);
    }
    Ok(RatMatrix::from_fn(d, d, |i, j| columns[j][i].clone()))
}

/// The field norm `N(a) = det(multiplication by a)`.
pub fn norm(a: &FieldElement, f: &Poly) -> Result<BigRational, FieldError> {
    Ok(multiplication_matrix(a, f)?.det()?)
}

/// Sign of the norm, which is the product of the signs of `a` under the real
/// embeddings.
pub fn sign_of(a: &FieldElement, f: &Poly) -> Result<i8, FieldError> {
    Ok(if norm(a, f)?.is_negative() { -1 } else { 1 })
}

/// `theta_a = /\^q (a) / |N(a)|` on `/\^q` of the power basis.
pub fn theta_matrix(a: &FieldElement, f: &Poly, q: usize) -> Result<RatMatrix, FieldError> {
    let d = f.degree();
    if q > d {
        return Err(FieldError::DegreeOutOfRange { q, d });
    }
    let m = multiplication_matrix(a, f)?;
    let n = m.det()?.abs();
    let inv = BigRational::new(BigInt::one(), BigInt::one()) / n;
    Ok(exterior_power_matrix(&m, q)?.scale(&inv))
}

/// Whether `I - theta_a` is invertible on `/\^q K` for `q < d`, i.e. whether
/// the two-term rational complex for the action of `a` is acyclic.
pub fn vanishing_check(a: &FieldElement, f: &Poly, q: usize) -> Result<bool, FieldError> {
    let d = f.degree();
    if q >= d {
        return Err(FieldError::DegreeOutOfRange { q, d });
    }
    let theta = theta_matrix(a, f, q)?;
    let id = RatMatrix::identity(theta.rows());
    Ok(!id.checked_sub(&theta)?.det()?.is_zero())
}
