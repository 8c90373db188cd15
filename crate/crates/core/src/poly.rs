//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored little-endian: `coeffs[i]` is the coefficient of
//! `x^i`. The zero polynomial is the empty vector and every other value has a
//! nonzero last coefficient.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Domain;

/// Operand length at which multiplication switches to Karatsuba.
const KARATSUBA_THRESHOLD: usize = 32;

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        IntPoly::monomial(1, 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x0 + c)
    }

    /// Exact quotient `self / divisor` in Z[x].
    ///
    /// Fails with [`Error::InexactDivision`] carrying the index of the first
    /// coefficient (of `self`) at which division breaks down.
    pub fn divexact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (lead, dd) = match (divisor.leading_coeff(), divisor.degree()) {
            (Some(l), Degree::Finite(d)) => (l, d),
            _ => return Err(Error::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Err(Error::InexactDivision { index: n - 1 });
        }
        let mut quot = vec![BigInt::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision { index: k + dd });
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if let Some(index) = rem.iter().position(|c| !c.is_zero()) {
            return Err(Error::InexactDivision { index });
        }
        Ok(IntPoly::new(quot))
    }

    /// Renders as JSON: a little-endian array of decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<IntPoly> {
        IntPoly::deserialize(value).map_err(|e| Error::Domain(format!("bad polynomial JSON: {e}")))
    }
}

/// The unique polynomial of degree below `points.len()` through `points`.
///
/// Newton divided differences are carried in exact rationals; the result must
/// land in Z[x], otherwise [`Error::NonIntegral`] reports the first offending
/// coefficient.
pub fn lagrange_interpolate(points: &[(BigInt, BigInt)]) -> Result<IntPoly> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::DuplicateNode(x.to_string()));
        }
    }
    if points.is_empty() {
        return Ok(IntPoly::zero());
    }
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(x.clone()))
        .collect();
    let mut dd: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let n = points.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Newton form to monomial basis: acc = acc * (x - xs[i]) + dd[i]
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    let coeffs = acc
        .into_iter()
        .enumerate()
        .map(|(index, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral { index })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn add_into(acc: &mut [BigInt], src: &[BigInt]) {
    for (a, s) in acc.iter_mut().zip(src) {
        *a += s;
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sum_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(&mut out, short);
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));

    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    let mut z1 = karatsuba(&sum_slices(a0, a1), &sum_slices(b0, b1));
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }

    let len = a.len() + b.len() - 1;
    let mut out = vec![BigInt::zero(); len.max(2 * m + z2.len()).max(m + z1.len())];
    add_into(&mut out, &z0);
    add_into(&mut out[m..], &z1);
    add_into(&mut out[2 * m..], &z2);
    debug_assert!(out[len..].iter().all(Zero::is_zero));
    out.truncate(len);
    out
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        IntPoly::constant(1)
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(sum_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in out.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        IntPoly::new(out)
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(karatsuba(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;

            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

impl Domain for IntPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.divexact(rhs).ok()
    }
}

/// Descending powers with zero terms omitted, e.g. `x^4 - x^3 + x - 1`,
/// `5x^4 - 5x^2`, `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

/// Serializes a `BigInt` as a decimal string.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(p(&[-1, 1]) + p(&[1]), IntPoly::x());
        let f = p(&[3, 0, -2]);
        assert_eq!(IntPoly::zero() + f.clone(), f);
        // a_3 + a_4 for n = 3
        assert_eq!(p(&[0, -1, 1]) + p(&[1, 0, -1, 1]), p(&[1, -1, 0, 1]));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p(&[-1, 1]) * p(&[1, 1]), p(&[-1, 0, 1]));
        assert!((p(&[4, 5]) * IntPoly::zero()).is_zero());
        assert_eq!(p(&[-1, 1]) * p(&[0, -1, 1]), p(&[0, 1, -2, 1]));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p(&[0, -1, 1]).eval(&big(0)), big(0));
        assert_eq!(p(&[0, 0, -1]).eval(&big(3)), big(-9));
        assert_eq!(p(&[-1, 1, 0, -1, 1]).eval(&big(2)), big(9));
    }

    #[test]
    fn divexact_examples() {
        assert_eq!(p(&[0, 0, -1]).divexact(&p(&[0, 0, 1])).unwrap(), p(&[-1]));
        assert_eq!(p(&[-1, 0, 1]).divexact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        // H_5 = 5x^2(x-1)(x+1) = 5x^4 - 5x^2
        let h5 = p(&[0, 0, -5, 0, 5]);
        assert_eq!(h5.divexact(&p(&[0, 0, -1, 0, 1])).unwrap(), p(&[5]));
    }

    #[test]
    fn divexact_reports_first_failing_index() {
        // x^2 + 1 is not divisible by x - 1; remainder 2 sits at index 0
        assert_eq!(
            p(&[1, 0, 1]).divexact(&p(&[-1, 1])),
            Err(Error::InexactDivision { index: 0 })
        );
        // leading coefficient 3 not divisible by 2
        assert_eq!(
            p(&[0, 0, 3]).divexact(&p(&[0, 2])),
            Err(Error::InexactDivision { index: 2 })
        );
        assert_eq!(
            p(&[1]).divexact(&p(&[0, 1])),
            Err(Error::InexactDivision { index: 0 })
        );
        assert_eq!(
            p(&[1]).divexact(&IntPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(IntPoly::zero().divexact(&p(&[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn interpolation_examples() {
        let pts = [(big(0), big(0)), (big(1), big(-1)), (big(-1), big(-1))];
        assert_eq!(lagrange_interpolate(&pts).unwrap(), p(&[0, 0, -1]));
        assert_eq!(lagrange_interpolate(&[(big(0), big(7))]).unwrap(), p(&[7]));
        let zeros = [(big(0), big(0)), (big(1), big(0)), (big(2), big(0))];
        assert!(lagrange_interpolate(&zeros).unwrap().is_zero());
    }

    #[test]
    fn interpolation_errors() {
        let dup = [(big(1), big(0)), (big(1), big(3))];
        assert!(matches!(
            lagrange_interpolate(&dup),
            Err(Error::DuplicateNode(_))
        ));
        // through (0,0) and (2,1): x/2
        let frac = [(big(0), big(0)), (big(2), big(1))];
        assert_eq!(
            lagrange_interpolate(&frac),
            Err(Error::NonIntegral { index: 1 })
        );
    }

    #[test]
    fn degree_of_zero_is_below_every_degree() {
        assert_eq!(IntPoly::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(p(&[5]).degree(), Degree::Finite(0));
        assert_eq!(p(&[0, 0, 1, 0, 0]).degree(), Degree::Finite(2));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(p(&[-1, 1, 0, -1, 1]).to_string(), "x^4 - x^3 + x - 1");
        assert_eq!(p(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 0, -5, 0, 5]).to_string(), "5x^4 - 5x^2");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(p(&[1, -2]).to_string(), "-2x + 1");
    }

    #[test]
    fn json_rendering() {
        let f = p(&[-1, 1, 0, -1, 1]);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"["-1","1","0","-1","1"]"#
        );
        assert_eq!(serde_json::to_string(&IntPoly::zero()).unwrap(), "[]");
        let huge: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let g = IntPoly::monomial(huge, 3);
        assert_eq!(IntPoly::from_json(&g.to_json()).unwrap(), g);
        assert!(IntPoly::from_json(&serde_json::json!(["1", "x"])).is_err());
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-50i64..50, 0..max_len).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(f in small_poly(8), g in small_poly(8), h in small_poly(8)) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in small_poly(10), g in small_poly(10), t in -20i64..20) {
            let t = BigInt::from(t);
            prop_assert_eq!((&f * &g).eval(&t), f.eval(&t) * g.eval(&t));
            prop_assert_eq!((&f + &g).eval(&t), f.eval(&t) + g.eval(&t));
        }

        #[test]
        fn divexact_inverts_multiplication(f in small_poly(10), g in small_poly(6)) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).divexact(&g).unwrap(), f);
        }

        #[test]
        fn interpolation_recovers_polynomial(f in small_poly(41)) {
            let count = f.coeffs().len().max(1);
            let pts: Vec<_> = (0..count as i64)
                .map(|i| {
                    let t = BigInt::from(i - (count as i64) / 2);
                    let v = f.eval(&t);
                    (t, v)
                })
                .collect();
            prop_assert_eq!(lagrange_interpolate(&pts).unwrap(), f);
        }

        #[test]
        fn karatsuba_agrees_with_schoolbook(
            a in prop::collection::vec(-1000i64..1000, 0..150),
            b in prop::collection::vec(-1000i64..1000, 0..150),
        ) {
            let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
            let b: Vec<BigInt> = b.into_iter().map(BigInt::from).collect();
            prop_assert_eq!(
                IntPoly::new(karatsuba(&a, &b)),
                IntPoly::new(schoolbook(&a, &b))
            );
        }

        #[test]
        fn json_round_trip(f in small_poly(12)) {
            let text = serde_json::to_string(&f).unwrap();
            let back: IntPoly = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
