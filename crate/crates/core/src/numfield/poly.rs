use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Integer polynomial with positive leading coefficient and degree at least 1.
/// Coefficients are stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, FieldError> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(FieldError::Parse("polynomial must have degree at least 1".into()));
        }
        if coeffs.last().is_some_and(Signed::is_negative) {
            return Err(FieldError::Parse("leading coefficient must be positive".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, FieldError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("degree >= 1")
    }

    pub fn to_rational(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Rational roots, by the rational root test.
    pub fn has_rational_root(&self) -> bool {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return true;
        }
        let q = self.to_rational();
        let nums = divisors(&a0.abs());
        let dens = divisors(self.leading());
        for p in &nums {
            for d in &dens {
                for sign in [1, -1] {
                    let x = BigRational::new(p * sign, d.clone());
                    if q.eval(&x).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if n.is_multiple_of(&i) {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

/// Parses `x^3-2`, `2x^2 + 3*x - 1`, `x - 1` and the like.
impl FromStr for Poly {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(FieldError::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in cleaned.char_indices() {
            if (c == '+' || c == '-') && i > 0 && !cleaned[..i].ends_with('^') {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);

        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'+') => (1, &term[1..]),
                Some(b'-') => (-1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(FieldError::Parse(format!("dangling sign in {s:?}")));
            }
            let (coef, power) = match body.find('x') {
                None => (parse_int(body, s)?, 0usize),
                Some(pos) => {
                    let coef_part = body[..pos].trim_end_matches('*');
                    let coef = if coef_part.is_empty() {
                        BigInt::one()
                    } else {
                        parse_int(coef_part, s)?
                    };
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else if let Some(exp) = rest.strip_prefix('^') {
                        exp.parse::<usize>()
                            .map_err(|_| FieldError::Parse(format!("bad exponent in {s:?}")))?
                    } else {
                        return Err(FieldError::Parse(format!("unexpected {rest:?} in {s:?}")));
                    };
                    (coef, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += coef * sign;
        }
        Poly::new(coeffs)
    }
}

fn parse_int(t: &str, whole: &str) -> Result<BigInt, FieldError> {
    BigInt::from_str(t).map_err(|_| FieldError::Parse(format!("bad coefficient {t:?} in {whole:?}")))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let a = c.abs();
            let show_coef = k == 0 || !a.is_one();
            if show_coef {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &lead;
            if !factor.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    let s = &factor * c;
                    r[top - dd + k] -= s;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        QPoly::new(r)
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Number of distinct real roots of a squarefree polynomial, from the sign
/// changes of its Sturm sequence at minus and plus infinity.
pub fn sturm_real_roots(f: &Poly) -> Result<usize, FieldError> {
    let p0 = f.to_rational();
    let p1 = p0.derivative();
    if p0.gcd(&p1).degree() != Some(0) {
        return Err(FieldError::NotSquarefree(f.to_string()));
    }
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    let signs_at = |minus_infinity: bool| -> Vec<bool> {
        seq.iter()
            .map(|p| {
                let positive = p.leading().expect("nonzero").is_positive();
                let odd = p.degree().expect("nonzero") % 2 == 1;
                if minus_infinity && odd {
                    !positive
                } else {
                    positive
                }
            })
            .collect()
    };
    let changes = |s: Vec<bool>| s.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(changes(signs_at(true)) - changes(signs_at(false)))
}
