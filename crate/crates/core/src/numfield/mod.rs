//! Number fields `K = Q[x]/(f)`: signature, roots of unity, element
//! arithmetic on the power basis and the closed-form homology and K-theory
//! outputs that depend only on `(d, r1, |mu|)`.

mod closed;
mod element;
mod poly;
mod profile;

pub use closed::{
    finite_model_homology, finite_model_limit_check, groupoid_homology, ring_cstar_ktheory, tfg_report,
    torsionfree_submonoid_ktheory, LimitCheck, RingKTheory, TfgReport,
};
pub use element::{multiplication_matrix, norm, sign_of, theta_matrix, vanishing_check, FieldElement};
pub use poly::{sturm_real_roots, Poly, QPoly};
pub use profile::{build_profile, cyclotomic_polynomial, euler_phi, MuSource, NumberFieldProfile};

use crate::complex::ComplexError;
use crate::linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("polynomial {0} has a rational root and is not irreducible")]
    RationalRoot(String),
    #[error("the order of the roots of unity of Q[x]/({0}) is not determined; pass it explicitly")]
    MuRequired(String),
    #[error("invalid roots-of-unity order {mu}: {reason}")]
    InvalidMu { mu: u64, reason: String },
    #[error("invalid field profile: {0}")]
    InvalidProfile(String),
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("degree {q} out of range for a field of degree {d}")]
    DegreeOutOfRange { q: usize, d: usize },
    #[error("the generator list is empty")]
    EmptyGenerators,
    #[error("{signs} signs given for {rank} generators")]
    SignCount { rank: usize, signs: usize },
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i8),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
