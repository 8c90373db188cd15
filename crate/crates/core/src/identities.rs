//! Character-sum identities for the Legendre symbol modulo an odd prime.

use num_traits::Num;

use crate::arith::{OddPrime, QuadraticCharacter, Symbol};
use crate::error::{Error, Result};

fn require_unit(p: OddPrime, i: i64) -> Result<()> {
    if i.rem_euclid(p.get() as i64) == 0 {
        Err(Error::Domain(format!("{i} is divisible by p = {p}")))
    } else {
        Ok(())
    }
}

/// `Σ_{k=0}^{p-1} ((i+k)/p)((j+k)/p)`: `p - 1` when `i ≡ j`, else `-1`.
pub fn orthogonality(p: OddPrime, i: i64, j: i64) -> i64 {
    let chi = QuadraticCharacter::new(p);
    (0..p.get() as i64)
        .map(|k| chi.value(i + k) * chi.value(j + k))
        .sum()
}

/// `Σ_{j=0}^{p-1} ((i+j)/p)(j/p)`, which is `-1` whenever `p ∤ i`.
pub fn shifted_product_sum(p: OddPrime, i: i64) -> Result<i64> {
    require_unit(p, i)?;
    Ok(orthogonality(p, i, 0))
}

/// `Σ ((i+j)/p)` over the nonresidues `j` in `1..p`; equals `(1 - (i/p))/2`.
pub fn nonresidue_row_sum(p: OddPrime, i: i64) -> Result<i64> {
    require_unit(p, i)?;
    let chi = QuadraticCharacter::new(p);
    Ok((1..p.get() as i64)
        .filter(|&j| chi.symbol(j) == Symbol::MinusOne)
        .map(|j| chi.value(i + j))
        .sum())
}

/// `Σ_{m=1}^{p-1} m·(m/p)`. Zero for p ≡ 1 (mod 4); for p ≡ 3 (mod 4) the
/// value is returned without any claim about it.
pub fn weighted_residue_sum(p: OddPrime) -> i64 {
    let chi = QuadraticCharacter::new(p);
    (1..p.get() as i64).map(|m| m * chi.value(m)).sum()
}

/// Sums of the quadratic residues and of the nonresidues in `1..p`.
pub fn residue_class_sums(p: OddPrime) -> (i64, i64) {
    let chi = QuadraticCharacter::new(p);
    (1..p.get() as i64).fold((0, 0), |(res, non), m| match chi.symbol(m) {
        Symbol::One => (res + m, non),
        _ => (res, non + m),
    })
}

/// For p ≡ 1 (mod 4): `Σ_{m=1}^{(p-1)/2} ((2m-1)/p) = -(2/p)·Σ_{m=1}^{(p-1)/2} (m/p)`
/// and both sides vanish.
pub fn alternating_sum_check(p: OddPrime) -> Result<bool> {
    if !p.is_one_mod_four() {
        return Err(Error::Domain(format!(
            "the alternating sum identity needs p ≡ 1 (mod 4), got {p}"
        )));
    }
    let chi = QuadraticCharacter::new(p);
    let half = p.half() as i64;
    let odd: i64 = (1..=half).map(|m| chi.value(2 * m - 1)).sum();
    let lower: i64 = (1..=half).map(|m| chi.value(m)).sum();
    let n = p.get();
    let two_char = Symbol::parity((n * n - 1) / 8).value();
    Ok(odd == -two_char * lower && odd == 0 && lower == 0)
}

/// `Σ F(j) + Σ (j/p) F(j) = Σ F(j^2)` for a period-`p` function given by its
/// values `F(0), …, F(p-1)`.
pub fn f_transform_check<T: Num + Clone>(p: OddPrime, values: &[T]) -> Result<bool> {
    let n = p.as_usize();
    if values.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need {n} values of F, got {}",
            values.len()
        )));
    }
    let chi = QuadraticCharacter::new(p);
    let mut lhs = T::zero();
    for (j, v) in values.iter().enumerate() {
        lhs = lhs + v.clone();
        lhs = match chi.symbol(j as i64) {
            Symbol::One => lhs + v.clone(),
            Symbol::MinusOne => lhs - v.clone(),
            Symbol::Zero => lhs,
        };
    }
    let rhs = (0..n).fold(T::zero(), |acc, j| acc + values[j * j % n].clone());
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn op(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn scan(a: i64, p: i64) -> i64 {
        let r = a.rem_euclid(p);
        if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(orthogonality(op(7), 2, 2), 6);
        let brute: i64 = (0..7).map(|k| scan(1 + k, 7) * scan(4 + k, 7)).sum();
        assert_eq!(orthogonality(op(7), 1, 4), brute);
        assert_eq!(brute, -1);
        assert_eq!(orthogonality(op(13), 0, 5), -1);
    }

    #[test]
    fn orthogonality_closed_form() {
        for p in OddPrime::up_to(101) {
            let n = p.get() as i64;
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { n - 1 } else { -1 };
                    assert_eq!(orthogonality(p, i, j), expected);
                }
            }
        }
    }

    #[test]
    fn shifted_product_examples() {
        for (p, i) in [(5u64, 1i64), (11, 7), (3, 2)] {
            let brute: i64 = (0..p as i64)
                .map(|j| scan(i + j, p as i64) * scan(j, p as i64))
                .sum();
            assert_eq!(shifted_product_sum(op(p), i).unwrap(), brute);
            assert_eq!(brute, -1);
        }
        assert!(shifted_product_sum(op(5), 10).is_err());
    }

    #[test]
    fn nonresidue_row_sum_examples() {
        assert_eq!(nonresidue_row_sum(op(7), 1).unwrap(), 0);
        assert_eq!(nonresidue_row_sum(op(7), 3).unwrap(), 1);
        let brute: i64 = (1..13)
            .filter(|&j| scan(j, 13) == -1)
            .map(|j| scan(2 + j, 13))
            .sum();
        assert_eq!(nonresidue_row_sum(op(13), 2).unwrap(), brute);
        assert_eq!(brute, (1 - scan(2, 13)) / 2);
        assert!(nonresidue_row_sum(op(7), 0).is_err());
    }

    #[test]
    fn weighted_form_of_row_sum() {
        for p in OddPrime::up_to(101) {
            let chi = QuadraticCharacter::new(p);
            let n = p.get() as i64;
            for i in 1..n {
                // 2·Σ ((i+j)/p)·(1 - (j/p))/2 = 1 - (i/p), kept doubled to stay integral
                let lhs: i64 = (1..n).map(|j| chi.value(i + j) * (1 - chi.value(j))).sum();
                assert_eq!(lhs, 1 - chi.value(i), "p = {p}, i = {i}");
                assert_eq!(2 * nonresidue_row_sum(p, i).unwrap(), 1 - chi.value(i));
            }
        }
    }

    #[test]
    fn weighted_residue_examples() {
        assert_eq!(weighted_residue_sum(op(5)), 0);
        assert_eq!(weighted_residue_sum(op(13)), 0);
        let brute: i64 = (1..7).map(|m| m * scan(m, 7)).sum();
        assert_eq!(weighted_residue_sum(op(7)), brute);
        assert_ne!(brute, 0);
    }

    #[test]
    fn residue_sums_split_evenly_for_one_mod_four() {
        for p in OddPrime::up_to(101)
            .into_iter()
            .filter(|p| p.is_one_mod_four())
        {
            let n = p.get() as i64;
            assert_eq!(weighted_residue_sum(p), 0);
            assert_eq!(residue_class_sums(p), (n * (n - 1) / 4, n * (n - 1) / 4));
        }
    }

    #[test]
    fn alternating_sum_examples() {
        for p in [5u64, 13, 17] {
            assert!(alternating_sum_check(op(p)).unwrap());
        }
        assert!(alternating_sum_check(op(7)).is_err());
    }

    #[test]
    fn f_transform_examples() {
        let p = op(7);
        assert!(f_transform_check(p, &[1i64; 7]).unwrap());
        let mut indicator = vec![0i64; 7];
        indicator[0] = 1;
        assert!(f_transform_check(p, &indicator).unwrap());
        let ident: Vec<i64> = (0..7).collect();
        let lhs: i64 = (0..7).sum::<i64>() + (0..7).map(|j| scan(j, 7) * j).sum::<i64>();
        let rhs: i64 = (0..7).map(|j| j * j % 7).sum();
        assert_eq!(lhs, rhs);
        assert!(f_transform_check(p, &ident).unwrap());
        assert!(f_transform_check(p, &[1i64; 6]).is_err());
    }

    #[test]
    fn f_transform_over_rationals() {
        let p = op(11);
        let values: Vec<BigRational> = (0..11)
            .map(|j| BigRational::new(BigInt::from(j * j - 3), BigInt::from(j + 2)))
            .collect();
        assert!(f_transform_check(p, &values).unwrap());
    }

    #[test]
    fn f_transform_detects_non_identity() {
        // a hand-built counterexample: perturbing the right-hand side breaks it
        let p = op(5);
        let values = [3i64, 1, 4, 1, 5];
        assert!(f_transform_check(p, &values).unwrap());
        let lhs: i64 = values.iter().sum::<i64>()
            + values
                .iter()
                .enumerate()
                .map(|(j, v)| scan(j as i64, 5) * v)
                .sum::<i64>();
        assert_ne!(lhs + 1, (0..5).map(|j| values[j * j % 5]).sum::<i64>());
    }
}
