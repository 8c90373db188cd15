//! Exact arithmetic in Z[ζ_p] for an odd prime p.
//!
//! Elements are kept in the basis `1, ζ, …, ζ^(p-2)`, i.e. reduced modulo
//! Φ_p(x) = 1 + x + … + x^(p-1). That normal form is unique, so equality is
//! coefficient comparison. Real and imaginary parts of complex sums become
//! statements about the conjugation ζ ↦ ζ^(-1): an element is real iff it is
//! fixed by [`CycloElem::conjugate`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{OddPrime, QuadraticCharacter, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: OddPrime,
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    /// Reduces `Σ full[i] ζ^i`, where `full` has length `p`.
    fn reduce(p: OddPrime, mut full: Vec<BigInt>) -> Self {
        debug_assert_eq!(full.len(), p.as_usize());
        // ζ^(p-1) = -(1 + ζ + … + ζ^(p-2))
        let top = full.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in &mut full {
                *c -= &top;
            }
        }
        CycloElem { p, coeffs: full }
    }

    /// `Σ c_i ζ^(e_i)` for arbitrary integer exponents.
    pub fn from_terms<I>(p: OddPrime, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let n = p.get() as i64;
        let mut full = vec![BigInt::zero(); p.as_usize()];
        for (e, c) in terms {
            full[e.rem_euclid(n) as usize] += c;
        }
        CycloElem::reduce(p, full)
    }

    pub fn zero(p: OddPrime) -> Self {
        CycloElem {
            p,
            coeffs: vec![BigInt::zero(); p.as_usize() - 1],
        }
    }

    pub fn from_int(p: OddPrime, k: impl Into<BigInt>) -> Self {
        let mut e = CycloElem::zero(p);
        e.coeffs[0] = k.into();
        e
    }

    pub fn one(p: OddPrime) -> Self {
        CycloElem::from_int(p, 1)
    }

    /// `ζ^e`.
    pub fn zeta_pow(p: OddPrime, e: i64) -> Self {
        CycloElem::from_terms(p, [(e, BigInt::one())])
    }

    pub fn modulus(&self) -> OddPrime {
        self.p
    }

    /// Coefficients on `1, ζ, …, ζ^(p-2)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(k)` when the element is the rational integer `k`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &CycloElem) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        }
    }

    pub fn try_add(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check(other)?;
        Ok(CycloElem {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check(other)?;
        Ok(CycloElem {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Product via cyclic convolution mod `x^p - 1`, then Φ_p reduction.
    pub fn try_mul(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check(other)?;
        let n = self.p.as_usize();
        let mut full = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CycloElem::reduce(self.p, full))
    }

    pub fn scale(&self, k: &BigInt) -> CycloElem {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_symbol(&self, s: Symbol) -> CycloElem {
        match s {
            Symbol::One => self.clone(),
            Symbol::Zero => CycloElem::zero(self.p),
            Symbol::MinusOne => -self.clone(),
        }
    }

    /// Image under the automorphism ζ ↦ ζ^(-1) (complex conjugation).
    pub fn conjugate(&self) -> CycloElem {
        let n = self.p.get() as i64;
        CycloElem::from_terms(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (n - i as i64, c.clone())),
        )
    }

    /// Fixed by conjugation, i.e. lies in the real subring.
    pub fn is_real(&self) -> bool {
        &self.conjugate() == self
    }
}

impl Add for CycloElem {
    type Output = CycloElem;

    /// Panics if the moduli differ; use [`CycloElem::try_add`] to recover.
    fn add(self, rhs: CycloElem) -> CycloElem {
        self.try_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;

    fn sub(self, rhs: CycloElem) -> CycloElem {
        self.try_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;

    fn mul(self, rhs: CycloElem) -> CycloElem {
        self.try_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;

    fn neg(self) -> CycloElem {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn require_unit_index(p: OddPrime, r: i64) -> Result<()> {
    if r.rem_euclid(p.get() as i64) == 0 {
        Err(Error::Domain(format!("index {r} is divisible by p = {p}")))
    } else {
        Ok(())
    }
}

/// Quadratic Gauss sum `g_r = Σ_j (j/p) ζ^(rj)`, `p ∤ r`.
pub fn gauss_sum(p: OddPrime, r: i64) -> Result<CycloElem> {
    require_unit_index(p, r)?;
    let chi = QuadraticCharacter::new(p);
    Ok(CycloElem::from_terms(
        p,
        (1..p.get() as i64).map(|j| (r * j, BigInt::from(chi.value(j)))),
    ))
}

/// `Σ ζ^(rj)` over `j` in `1..p` with `(j/p) = sign`.
pub fn qr_partial_sum(p: OddPrime, r: i64, sign: Symbol) -> Result<CycloElem> {
    require_unit_index(p, r)?;
    if sign == Symbol::Zero {
        return Err(Error::Domain("sign must be +1 or -1".into()));
    }
    let chi = QuadraticCharacter::new(p);
    Ok(CycloElem::from_terms(
        p,
        (1..p.get() as i64)
            .filter(|&j| chi.symbol(j) == sign)
            .map(|j| (r * j, BigInt::one())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    #[test]
    fn monomial_relations() {
        for p in [3u64, 5, 7, 13] {
            let p = op(p);
            let n = p.get() as i64;
            assert_eq!(
                CycloElem::zeta_pow(p, 1) * CycloElem::zeta_pow(p, n - 1),
                CycloElem::one(p)
            );
            let all = CycloElem::from_terms(p, (0..n).map(|e| (e, BigInt::one())));
            assert!(all.is_zero());
        }
    }

    #[test]
    fn hand_reduced_product() {
        let p = op(5);
        let a = CycloElem::from_terms(p, [(1, BigInt::one()), (4, BigInt::one())]);
        let b = CycloElem::from_terms(p, [(2, BigInt::one()), (3, BigInt::one())]);
        assert_eq!((a * b).as_integer(), Some(&BigInt::from(-1)));
    }

    #[test]
    fn mixing_moduli_is_an_error() {
        let a = CycloElem::one(op(5));
        let b = CycloElem::one(op(7));
        assert_eq!(a.try_add(&b), Err(Error::ModulusMismatch(5, 7)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn conjugation_examples() {
        for p in [5u64, 7, 11] {
            let p = op(p);
            let n = p.get() as i64;
            let real = CycloElem::from_terms(p, [(1, BigInt::one()), (n - 1, BigInt::one())]);
            assert_eq!(real.conjugate(), real);
            assert!(CycloElem::one(p).is_real());
            let chi = QuadraticCharacter::new(p);
            for r in 1..n {
                let g = gauss_sum(p, r).unwrap();
                // reindexing j -> -j gives conj(g_r) = (-1/p) g_r
                let reindexed =
                    CycloElem::from_terms(p, (1..n).map(|j| (-r * j, BigInt::from(chi.value(j)))));
                assert_eq!(g.conjugate(), reindexed);
                assert_eq!(g.conjugate(), g.scale_symbol(p.minus_one_character()));
            }
        }
    }

    #[test]
    fn gauss_sum_squares() {
        let g5 = gauss_sum(op(5), 1).unwrap();
        assert_eq!((g5.clone() * g5).as_integer(), Some(&BigInt::from(5)));
        let g3 = gauss_sum(op(3), 1).unwrap();
        assert_eq!((g3.clone() * g3).as_integer(), Some(&BigInt::from(-3)));
        let p = op(7);
        let g1 = gauss_sum(p, 1).unwrap();
        let chi = QuadraticCharacter::new(p);
        for r in 1..7 {
            assert_eq!(gauss_sum(p, r).unwrap(), g1.scale_symbol(chi.symbol(r)));
        }
        assert!(gauss_sum(p, 14).is_err());
    }

    #[test]
    fn partial_sum_identities_at_13() {
        let p = op(13);
        let chi = QuadraticCharacter::new(p);
        let g1 = gauss_sum(p, 1).unwrap();
        let one = CycloElem::one(p);
        let two = BigInt::from(2);
        for r in 1..13 {
            let plus = qr_partial_sum(p, r, Symbol::One).unwrap();
            let minus = qr_partial_sum(p, r, Symbol::MinusOne).unwrap();
            assert!(plus.is_real(), "r = {r}");
            let t23 = plus.scale(&two) + one.clone() - g1.scale_symbol(chi.symbol(r));
            assert!(t23.is_zero(), "r = {r}");
            let t232 = minus.scale(&two) + one.clone() + g1.scale_symbol(chi.symbol(r));
            assert!(t232.is_zero(), "r = {r}");
        }
        assert!(qr_partial_sum(p, 1, Symbol::Zero).is_err());
        assert!(qr_partial_sum(p, 26, Symbol::One).is_err());
    }

    fn elem(p: OddPrime) -> impl Strategy<Value = CycloElem> {
        prop::collection::vec(-20i64..20, p.as_usize()).prop_map(move |c| {
            CycloElem::from_terms(
                p,
                c.into_iter()
                    .enumerate()
                    .map(|(i, v)| (i as i64, BigInt::from(v))),
            )
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_a_ring_automorphism(
            (a, b) in (0usize..4).prop_flat_map(|k| {
                let p = OddPrime::new([3, 5, 7, 11][k]).unwrap();
                (elem(p), elem(p))
            })
        ) {
            prop_assert_eq!((a.clone() * b.clone()).conjugate(), a.conjugate() * b.conjugate());
            prop_assert_eq!((a.clone() + b.clone()).conjugate(), a.conjugate() + b.conjugate());
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }

        #[test]
        fn multiplication_commutes_and_associates(
            (a, b, c) in (0usize..3).prop_flat_map(|k| {
                let p = OddPrime::new([5, 7, 13][k]).unwrap();
                (elem(p), elem(p), elem(p))
            })
        ) {
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
        }

        #[test]
        fn partial_sums_add_to_minus_one(k in 0usize..8, r in 1i64..200) {
            let p = OddPrime::new([3, 5, 7, 11, 13, 17, 29, 31][k]).unwrap();
            prop_assume!(r % p.get() as i64 != 0);
            let total = qr_partial_sum(p, r, Symbol::One).unwrap() + qr_partial_sum(p, r, Symbol::MinusOne).unwrap();
            prop_assert_eq!(total.as_integer(), Some(&BigInt::from(-1)));
        }

        #[test]
        fn gauss_sum_multiplicative_reindexing(k in 0usize..6, r in 1i64..100, s in 1i64..100) {
            let p = OddPrime::new([3, 5, 7, 11, 13, 23][k]).unwrap();
            let n = p.get() as i64;
            prop_assume!(r % n != 0 && s % n != 0);
            let chi = QuadraticCharacter::new(p);
            prop_assert_eq!(
                gauss_sum(p, r * s).unwrap(),
                gauss_sum(p, r).unwrap().scale_symbol(chi.symbol(s))
            );
        }
    }
}
