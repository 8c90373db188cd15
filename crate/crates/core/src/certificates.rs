//! Explicit row dependences proving `H_n(x) ≡ 0` for odd composite `n`.
//!
//! A certificate lists `(row, coefficient)` pairs; it is valid when the
//! combination `Σ coefficient · r_row` of Hankel rows vanishes in Z[x]^n and
//! at least one combined coefficient is nonzero. Verification rebuilds the
//! rows from the polynomials `a_k` and never touches a determinant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::hankel::a_sequence;
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "snake_case")]
pub enum CertificateKind {
    /// `n = m^2`.
    Square { m: u64 },
    /// `n = p^(2e+1) · q` with `p` prime and `p ∤ q`.
    OddPower { p: u64, e: u32, q: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeCertificate {
    pub n: u64,
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub dependence: Vec<(usize, IntPoly)>,
}

impl CompositeCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        CompositeCertificate::deserialize(value)
            .map_err(|e| Error::Domain(format!("bad certificate JSON: {e}")))
    }
}

fn x_times(c: i64) -> IntPoly {
    IntPoly::monomial(c, 1)
}

pub fn composite_certificate(n: u64) -> Result<CompositeCertificate> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidModulus(n.to_string()));
    }
    if n < 9 || is_prime(n) {
        return Err(Error::Domain(format!("{n} is not an odd composite")));
    }

    let m = n.sqrt();
    if m * m == n {
        // r_2 - x r_1 - r_{m+2} + x r_{m+1} = 0; m >= 3 so m + 2 <= m^2
        let dependence = vec![
            (2, IntPoly::constant(1)),
            (1, x_times(-1)),
            (m as usize + 2, IntPoly::constant(-1)),
            (m as usize + 1, x_times(1)),
        ];
        return Ok(CompositeCertificate {
            n,
            kind: CertificateKind::Square { m },
            dependence,
        });
    }

    // Not a square, so some prime has an odd exponent; take the smallest.
    let factorization = factorize(n)?;
    let (p, exponent) = factorization
        .factors()
        .iter()
        .find(|(_, e)| e % 2 == 1)
        .map(|(p, e)| (p.to_u64().expect("factor of a u64"), *e))
        .expect("a non-square has a prime with odd exponent");
    let q = n / p.pow(exponent);
    // Largest row used is (p-1)q + 2. If q >= 2 then (p-1)q + 2 <= pq <= n.
    // If q = 1 then n = p^(2e+1) is composite, so e >= 1 and
    // (p-1) + 2 = p + 1 <= p^3 <= n.
    debug_assert!((p - 1) * q + 2 <= n);
    let dependence = (0..p)
        .flat_map(|i| {
            let base = (i * q) as usize;
            [(base + 2, IntPoly::constant(1)), (base + 1, x_times(-1))]
        })
        .collect();
    Ok(CompositeCertificate {
        n,
        kind: CertificateKind::OddPower {
            p,
            e: (exponent - 1) / 2,
            q,
        },
        dependence,
    })
}

/// True iff the certificate's row combination vanishes identically and is
/// nontrivial. Row indices outside `1..=n` are an error.
pub fn verify_certificate(cert: &CompositeCertificate) -> Result<bool> {
    let n = cert.n;
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Domain(format!("certificate for invalid size {n}")));
    }
    let size = n as usize;
    let mut combined: BTreeMap<usize, IntPoly> = BTreeMap::new();
    for (row, coeff) in &cert.dependence {
        if *row == 0 || *row > size {
            return Err(Error::IndexOutOfRange {
                row: *row,
                col: 1,
                rows: size,
                cols: size,
            });
        }
        let entry = combined.entry(*row).or_default();
        *entry = &*entry + coeff;
    }
    combined.retain(|_, c| !c.is_zero());
    if combined.is_empty() {
        return Ok(false);
    }

    // r_i has entries a_i, …, a_{i+n-1}
    let a = a_sequence(n, 2 * size - 1)?;
    for col in 0..size {
        let sum = combined.iter().fold(IntPoly::zero(), |acc, (row, c)| {
            &acc + &(c * &a[row - 1 + col])
        });
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 0-1 vector `[gcd(i+1, m) = 1]` for `i = 1..=m^2`.
pub fn coprime_indicator(m: u64) -> Vec<BigInt> {
    (1..=m * m)
        .map(|i| BigInt::from(u8::from(num_integer::gcd(i + 1, m) == 1)))
        .collect()
}
