//! The Jacobi-symbol polynomials `a_k(x)` and the Hankel determinant
//! `H_n(x) = det[a_{i+j-1}(x)]`, computed three ways: Bareiss over Z[x],
//! integer evaluation with interpolation, and the closed form for primes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, jacobi, OddPrime, QuadraticCharacter};
use crate::error::{Error, Result};
use crate::poly::{decimal, lagrange_interpolate, IntPoly};
use crate::{IntMatrix, PolyMatrix};

fn require_odd(n: u64) -> Result<()> {
    if n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidModulus(n.to_string()))
    }
}

fn require_hankel_size(n: u64) -> Result<()> {
    require_odd(n)?;
    if n < 3 {
        return Err(Error::Domain(format!(
            "Hankel size must be odd and at least 3, got {n}"
        )));
    }
    Ok(())
}

/// `J(a, n)` for `a` in `0..n`.
pub(crate) fn jacobi_table(n: u64) -> Result<Vec<i64>> {
    (0..n).map(|a| jacobi(a, n).map(|s| s.value())).collect()
}

/// `a_k(x) = Σ_{m=0}^{k-1} J(k-m, n) x^m`, monic of degree `k - 1`.
///
/// The `m = k` term carries `J(0, n)`, which vanishes for `n > 1`; it is
/// dropped for every `n` so that `a_k` always has degree `k - 1`.
pub fn a_poly(k: usize, n: u64) -> Result<IntPoly> {
    require_odd(n)?;
    if k == 0 {
        return Err(Error::Domain("a_k is defined for k >= 1".into()));
    }
    let coeffs = (0..k)
        .map(|m| jacobi((k - m) as u64, n).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// `a_1, …, a_count` for modulus `n`, via `a_{k+1} = J(k+1, n) + x·a_k`.
pub fn a_sequence(n: u64, count: usize) -> Result<Vec<IntPoly>> {
    require_odd(n)?;
    let table = jacobi_table(n)?;
    let j = |k: usize| BigInt::from(table[k % n as usize]);
    let mut out: Vec<IntPoly> = Vec::with_capacity(count);
    for k in 1..=count {
        let next = match out.last() {
            None => IntPoly::constant(j(1)),
            Some(prev) => &prev.shift(1) + &IntPoly::constant(j(k)),
        };
        out.push(next);
    }
    Ok(out)
}

/// The `n x n` Hankel matrix `[a_{i+j-1}(x)]`.
#[derive(Clone, Debug)]
pub struct HankelInstance {
    n: u64,
    matrix: PolyMatrix,
}

impl HankelInstance {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Row `r_i = (a_i, …, a_{i+n-1})`, 1-based.
    pub fn row(&self, i: usize) -> Result<&[IntPoly]> {
        self.matrix.row(i)
    }
}

pub fn build_hankel(n: u64) -> Result<HankelInstance> {
    require_hankel_size(n)?;
    let size = n as usize;
    let a = a_sequence(n, 2 * size - 1)?;
    let matrix = PolyMatrix::from_fn(size, size, |i, j| a[i + j - 2].clone());
    Ok(HankelInstance { n, matrix })
}

/// `H_n(x)` by Bareiss elimination over Z[x].
pub fn det_direct(inst: &HankelInstance) -> IntPoly {
    inst.matrix.bareiss_det().expect("Hankel matrix is square")
}

/// `H_n(x)` from integer determinants at `2n - 1` nodes.
///
/// Row operations `r_{i+1} - x·r_i` leave only the first row non-constant, so
/// the degree is below `n`; the nodes `-(n-1)..=(n-1)` cover the looser bound
/// `2n - 2` without relying on that.
pub fn det_interp(n: u64) -> Result<IntPoly> {
    require_hankel_size(n)?;
    let size = n as usize;
    let table = jacobi_table(n)?;
    let span = n as i64 - 1;
    let points = (-span..=span)
        .into_par_iter()
        .map(|t| {
            let t = BigInt::from(t);
            let mut values: Vec<BigInt> = Vec::with_capacity(2 * size - 1);
            let mut acc = BigInt::zero();
            for k in 1..2 * size {
                acc = &acc * &t + table[k % size];
                values.push(acc.clone());
            }
            let m = IntMatrix::from_fn(size, size, |i, j| values[i + j - 2].clone());
            (t, m.bareiss_det().expect("square"))
        })
        .collect::<Vec<_>>();
    lagrange_interpolate(&points)
}

/// `b_k = Σ_{i=1}^{p-k} (i/p)` for `k = 0..p-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSumVector {
    p: OddPrime,
    b: Vec<i64>,
}

impl PartialSumVector {
    pub fn modulus(&self) -> OddPrime {
        self.p
    }

    pub fn values(&self) -> &[i64] {
        &self.b
    }

    pub fn as_poly(&self) -> IntPoly {
        IntPoly::from_i64s(&self.b)
    }
}

pub fn partial_sums(p: OddPrime) -> PartialSumVector {
    let chi = QuadraticCharacter::new(p);
    let n = p.get() as i64;
    let mut prefix = vec![0i64; n as usize + 1];
    for i in 1..=n {
        prefix[i as usize] = prefix[i as usize - 1] + chi.value(i);
    }
    let b = (0..n).map(|k| prefix[(n - k) as usize]).collect();
    PartialSumVector { p, b }
}

/// `(-1)^((p-1)/2) · p^((p-3)/2)`.
pub fn leading_scalar(p: OddPrime) -> BigInt {
    let magnitude = num_traits::pow(BigInt::from(p.get()), (p.half() - 1) as usize);
    BigInt::from(p.minus_one_character()) * magnitude
}

/// `H_p(x)` for a prime `p` from the partial sums, with no determinant.
pub fn closed_form(n: u64) -> Result<IntPoly> {
    require_hankel_size(n)?;
    if !is_prime(n) {
        return Err(Error::CompositeInput { n });
    }
    let p = OddPrime::new(n)?;
    Ok(partial_sums(p).as_poly().scale(&leading_scalar(p)))
}

/// Which factors divide `H_p(x)` in Z[x], with the exact quotients.
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub p: OddPrime,
    pub one_mod_four: bool,
    pub determinant: IntPoly,
    /// `H_p / x^2`.
    pub quotient_by_x2: IntPoly,
    /// `H_p / (x^2 (x^2 - 1))`, only for p ≡ 1 (mod 4).
    pub quotient_by_x2_x2m1: Option<IntPoly>,
    /// The quotient above further divided by `(-1)^((p-1)/2) p^((p-3)/2)`.
    pub normalized_quotient: IntPoly,
    #[serde(serialize_with = "decimal::serialize")]
    pub scalar: BigInt,
    /// p ≡ 3 (mod 4): normalized coefficients equal `b_{k+2}`.
    pub coefficients_are_shifted_b: Option<bool>,
    /// p ≡ 1 (mod 4), exploratory: coefficient `k` equals
    /// `-(b_{k+2} + b_k + b_{k-2} + …)`, a sum over indices of one parity.
    pub coefficients_are_parity_sums: Option<bool>,
}

pub fn divisibility_report(p: OddPrime) -> Result<DivisibilityReport> {
    let h = closed_form(p.get())?;
    divisibility_report_for(p, &h)
}

/// Divisibility analysis of a given candidate for `H_p(x)`. A failed
/// division is reported as [`Error::Falsified`].
pub fn divisibility_report_for(p: OddPrime, h: &IntPoly) -> Result<DivisibilityReport> {
    let falsified =
        |what: &str, e: Error| Error::Falsified(format!("{what} does not divide H_{p}: {e}"));
    let x2 = IntPoly::monomial(1, 2);
    let quotient_by_x2 = h.divexact(&x2).map_err(|e| falsified("x^2", e))?;
    let scalar = leading_scalar(p);
    let scalar_poly = IntPoly::constant(scalar.clone());
    let b = partial_sums(p);
    let b = b.values();

    if p.is_one_mod_four() {
        let x2m1 = IntPoly::from_i64s(&[-1, 0, 1]);
        let q = quotient_by_x2
            .divexact(&x2m1)
            .map_err(|e| falsified("x^2(x^2 - 1)", e))?;
        let normalized = q
            .divexact(&scalar_poly)
            .map_err(|e| falsified("the leading scalar", e))?;
        let len = b.len().saturating_sub(4);
        let parity_ok = (0..len).all(|k| {
            let expected: i64 = -(0..=k / 2).map(|i| b[k + 2 - 2 * i]).sum::<i64>();
            normalized.coeff(k) == BigInt::from(expected)
        }) && normalized.coeffs().len() <= len;
        Ok(DivisibilityReport {
            p,
            one_mod_four: true,
            determinant: h.clone(),
            quotient_by_x2,
            quotient_by_x2_x2m1: Some(q),
            normalized_quotient: normalized,
            scalar,
            coefficients_are_shifted_b: None,
            coefficients_are_parity_sums: Some(parity_ok),
        })
    } else {
        let normalized = quotient_by_x2
            .divexact(&scalar_poly)
            .map_err(|e| falsified("the leading scalar", e))?;
        let shifted = IntPoly::from_i64s(&b[2..]);
        Ok(DivisibilityReport {
            p,
            one_mod_four: false,
            determinant: h.clone(),
            quotient_by_x2,
            quotient_by_x2_x2m1: None,
            coefficients_are_shifted_b: Some(normalized == shifted),
            normalized_quotient: normalized,
            scalar,
            coefficients_are_parity_sums: None,
        })
    }
}

/// `H_1(x) = det[a_1] = 1`. Outside the theorem's range, which starts at 3.
pub fn h_one() -> IntPoly {
    IntPoly::one()
}
