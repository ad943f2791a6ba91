//! Exact homology and K-theory invariants for groupoids of number-field
//! multiplicative actions and of integral dynamics.
//!
//! Everything is computed with arbitrary-precision integers and rationals.
//! Closed-form answers are paired with brute-force chain-complex computations
//! so the two can be checked against each other.

pub mod abelian;
pub mod complex;
pub mod intdyn;
pub mod linalg;
pub mod numfield;
pub mod report;
pub mod verify;
