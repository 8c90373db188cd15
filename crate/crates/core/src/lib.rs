//! Exact Hankel determinants of Jacobi-symbol polynomials.
//!
//! For odd `n` the polynomials `a_k(x) = Σ_{m<k} J(k-m, n) x^m` fill an
//! `n × n` Hankel matrix `H_n = [a_{i+j-1}]`. Its determinant vanishes
//! identically when `n` is composite and has an explicit closed form when
//! `n` is prime. This crate computes `det H_n` exactly in three independent
//! ways, produces checkable vanishing certificates for composites, and
//! verifies the spectral and Gauss-sum facts behind the closed form.
//!
//! Linear algebra is generic over [`Domain`]; the aliases below fix the
//! concrete rings used throughout.

pub mod arith;
pub mod certificates;
pub mod cyclo;
pub mod error;
pub mod hankel;
pub mod identities;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod spectral;
pub mod suite;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use arith::{Factorization, OddPrime, QuadraticCharacter, Symbol};
pub use certificates::{
    composite_certificate, verify_certificate, CertificateKind, CompositeCertificate,
};
pub use cyclo::{gauss_sum, CycloElem};
pub use error::{Error, Result};
pub use hankel::{build_hankel, closed_form, det_direct, det_interp, HankelInstance};
pub use linalg::RingMatrix;
pub use poly::{Degree, IntPoly};
pub use scalar::Domain;
pub use spectral::{spectrum_check, SpectrumReport};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntMatrix = RingMatrix<BigInt>;
pub type PolyMatrix = RingMatrix<IntPoly>;
pub type RationalMatrix = RingMatrix<BigRational>;
