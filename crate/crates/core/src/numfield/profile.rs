use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::poly::{sturm_real_roots, Poly};
use super::FieldError;

const CYCLOTOMIC_LIMIT: u64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuSource {
    Computed,
    Asserted,
}

impl MuSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Computed => "computed",
            Self::Asserted => "asserted",
        }
    }
}

/// The invariants of a number field that the homology and K-theory formulas
/// depend on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldProfile {
    degree: usize,
    real_embeddings: usize,
    complex_pairs: usize,
    mu_order: u64,
    mu_source: MuSource,
}

impl NumberFieldProfile {
    pub fn new(degree: usize, real_embeddings: usize, mu_order: u64, mu_source: MuSource) -> Result<Self, FieldError> {
        if degree == 0 {
            return Err(FieldError::InvalidProfile("degree must be at least 1".into()));
        }
        if real_embeddings > degree || !(degree - real_embeddings).is_multiple_of(2) {
            return Err(FieldError::InvalidProfile(format!(
                "{real_embeddings} real embeddings is impossible in degree {degree}"
            )));
        }
        validate_mu(mu_order, degree, real_embeddings)?;
        Ok(Self {
            degree,
            real_embeddings,
            complex_pairs: (degree - real_embeddings) / 2,
            mu_order,
            mu_source,
        })
    }

    /// The profile of `Q` itself.
    pub fn rationals() -> Self {
        Self::new(1, 1, 2, MuSource::Computed).expect("valid")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn real_embeddings(&self) -> usize {
        self.real_embeddings
    }

    pub fn complex_pairs(&self) -> usize {
        self.complex_pairs
    }

    pub fn mu_order(&self) -> u64 {
        self.mu_order
    }

    pub fn mu_source(&self) -> MuSource {
        self.mu_source
    }

    pub fn totally_imaginary(&self) -> bool {
        self.real_embeddings == 0
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "real_embeddings": self.real_embeddings,
            "complex_pairs": self.complex_pairs,
            "mu_order": self.mu_order,
            "mu_source": self.mu_source.as_str(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, FieldError> {
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| FieldError::InvalidProfile(format!("missing integer {k:?}")))
        };
        let source = match v.get("mu_source").and_then(Value::as_str) {
            Some("computed") => MuSource::Computed,
            Some("asserted") => MuSource::Asserted,
            _ => {
                return Err(FieldError::InvalidProfile(
                    "mu_source must be \"computed\" or \"asserted\"".into(),
                ))
            }
        };
        let p = Self::new(
            field("degree")? as usize,
            field("real_embeddings")? as usize,
            field("mu_order")?,
            source,
        )?;
        if field("complex_pairs")? as usize != p.complex_pairs {
            return Err(FieldError::InvalidProfile(
                "complex_pairs does not match degree and real_embeddings".into(),
            ));
        }
        Ok(p)
    }
}

fn validate_mu(mu: u64, degree: usize, real_embeddings: usize) -> Result<(), FieldError> {
    let invalid = |reason: String| Err(FieldError::InvalidMu { mu, reason });
    if mu == 0 || !mu.is_multiple_of(2) {
        return invalid("the order must be even, since -1 is a root of unity".into());
    }
    if real_embeddings > 0 && mu != 2 {
        return invalid("a field with a real embedding has only +1 and -1 as roots of unity".into());
    }
    let phi = euler_phi(mu);
    if !(degree as u64).is_multiple_of(phi) {
        return invalid(format!("phi({mu}) = {phi} does not divide the degree {degree}"));
    }
    Ok(())
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (lowest first) of the `n`-th cyclotomic polynomial, from
/// `x^n - 1 = prod_{k | n} Phi_k`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for k in (1..n).filter(|k| n.is_multiple_of(*k)) {
        num = divide_monic(&num, &cyclotomic_polynomial(k));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (k, &b) in den.iter().enumerate() {
            rem[i + k] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn primitive_part(f: &Poly) -> Vec<BigInt> {
    let content = f.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    f.coeffs().iter().map(|c| c / &content).collect()
}

fn cyclotomic_mu(f: &Poly) -> Option<u64> {
    let d = f.degree() as u64;
    let prim = primitive_part(f);
    (1..=CYCLOTOMIC_LIMIT)
        .filter(|&n| euler_phi(n) == d)
        .find(|&n| {
            let phi = cyclotomic_polynomial(n);
            phi.len() == prim.len() && phi.iter().zip(&prim).all(|(&a, b)| BigInt::from(a) == *b)
        })
        .map(|n| n.lcm(&2))
}

/// Roots of unity in an imaginary quadratic field `Q(sqrt(D))`: 4 when the
/// squarefree part of `D` is -1, 6 when it is -3, else 2.
fn imaginary_quadratic_mu(f: &Poly) -> Option<u64> {
    if f.degree() != 2 {
        return None;
    }
    let [c, b, a] = [&f.coeffs()[0], &f.coeffs()[1], &f.coeffs()[2]];
    let disc: BigInt = b * b - BigInt::from(4) * a * c;
    if !disc.is_negative() {
        return None;
    }
    let core = squarefree_part(&disc.abs());
    Some(if core == BigInt::from(1) {
        4
    } else if core == BigInt::from(3) {
        6
    } else {
        2
    })
}

fn squarefree_part(n: &BigInt) -> BigInt {
    let mut m = n.clone();
    let mut out = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while m.is_multiple_of(&p) {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m
}

/// Signature and roots of unity of `Q[x]/(f)`. Irreducibility of `f` is the
/// caller's responsibility; it is only sanity-checked in degrees 2 and 3.
pub fn build_profile(f: &Poly, mu_hint: Option<u64>) -> Result<NumberFieldProfile, FieldError> {
    let d = f.degree();
    let r1 = sturm_real_roots(f)?;
    if (2..=3).contains(&d) && f.has_rational_root() {
        return Err(FieldError::RationalRoot(f.to_string()));
    }
    if let Some(mu) = mu_hint {
        validate_mu(mu, d, r1)?;
    }
    let computed = if r1 > 0 {
        Some(2)
    } else {
        cyclotomic_mu(f).or_else(|| imaginary_quadratic_mu(f))
    };
    let (mu, source) = match (computed, mu_hint) {
        (Some(c), Some(h)) if c != h => {
            return Err(FieldError::InvalidMu {
                mu: h,
                reason: format!("Q[x]/({f}) has {c} roots of unity"),
            })
        }
        (Some(c), _) => (c, MuSource::Computed),
        (None, Some(h)) => (h, MuSource::Asserted),
        (None, None) => return Err(FieldError::MuRequired(f.to_string())),
    };
    NumberFieldProfile::new(d, r1, mu, source)
}
