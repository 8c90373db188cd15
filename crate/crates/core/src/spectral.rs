//! Legendre-symbol matrices `A_p`, `B_p`, `C_p`, `D_p` and exact checks of
//! their determinants, cofactors, characteristic polynomials and eigenvectors.

use num_bigint::BigInt;
use num_traits::{Float, FloatConst, One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{primitive_root, OddPrime, QuadraticCharacter, Symbol};
use crate::cyclo::{gauss_sum, CycloElem};
use crate::error::{Error, Result};
use crate::hankel::leading_scalar;
use crate::poly::{decimal, IntPoly};
use crate::IntMatrix;

fn symbol_matrix(p: OddPrime, size: usize, f: impl Fn(i64, i64) -> i64) -> IntMatrix {
    let chi = QuadraticCharacter::new(p);
    IntMatrix::from_fn(size, size, |i, j| {
        BigInt::from(chi.value(f(i as i64, j as i64)))
    })
}

/// `A_p = [((i+j-1)/p)]`, `p x p`.
pub fn build_a(p: OddPrime) -> IntMatrix {
    symbol_matrix(p, p.as_usize(), |i, j| i + j - 1)
}

/// `C_p = [((i+j)/p)]`, `(p-1) x (p-1)`.
pub fn build_c(p: OddPrime) -> IntMatrix {
    symbol_matrix(p, p.as_usize() - 1, |i, j| i + j)
}

/// `B_p = [((i-j)/p)]`, `(p-1) x (p-1)`.
pub fn build_b(p: OddPrime) -> IntMatrix {
    symbol_matrix(p, p.as_usize() - 1, |i, j| i - j)
}

/// The circulant `D_p = [((i-j)/p)]`, `p x p`.
pub fn build_d(p: OddPrime) -> IntMatrix {
    symbol_matrix(p, p.as_usize(), |i, j| i - j)
}

/// `(x^2 - 1)(x^2 - p)^((p-3)/2)` for p ≡ 1 (mod 4), otherwise
/// `(x^2 + 1)(x^2 + p)^((p-3)/2)`.
pub fn expected_char_poly(p: OddPrime) -> IntPoly {
    let s: i64 = if p.is_one_mod_four() { -1 } else { 1 };
    let unit = IntPoly::from_i64s(&[s, 0, 1]);
    let big = IntPoly::from_i64s(&[s * p.get() as i64, 0, 1]);
    (0..p.half() - 1).fold(unit, |acc, _| &acc * &big)
}

/// `w_1 = ((1 - (j/p))/2)_j` and `w_2 = ((1 + (j/p))/2)_j` for `j = 1..p-1`.
pub fn w_vectors(p: OddPrime) -> (Vec<BigInt>, Vec<BigInt>) {
    let chi = QuadraticCharacter::new(p);
    (1..p.get() as i64)
        .map(|j| {
            let s = chi.value(j);
            (BigInt::from((1 - s) / 2), BigInt::from((1 + s) / 2))
        })
        .unzip()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofactorReport {
    pub p: OddPrime,
    pub all_equal: bool,
    #[serde(serialize_with = "opt_decimal")]
    pub common_value: Option<BigInt>,
    #[serde(serialize_with = "decimal::serialize")]
    pub det_c: BigInt,
}

impl CofactorReport {
    /// Every cofactor equals `det C_p`.
    pub fn passed(&self) -> bool {
        self.all_equal && self.common_value.as_ref() == Some(&self.det_c)
    }
}

fn opt_decimal<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// All `p^2` cofactors of `A_p`.
pub fn cofactor_check(p: OddPrime) -> CofactorReport {
    let a = build_a(p);
    let n = p.as_usize();
    let cofactors: Vec<BigInt> = (0..n * n)
        .into_par_iter()
        .map(|idx| a.cofactor(idx / n + 1, idx % n + 1).expect("valid index"))
        .collect();
    let all_equal = cofactors.windows(2).all(|w| w[0] == w[1]);
    CofactorReport {
        p,
        all_equal,
        common_value: all_equal.then(|| cofactors[0].clone()),
        det_c: build_c(p).bareiss_det().expect("square"),
    }
}

pub fn cofactors_all_equal(p: OddPrime) -> bool {
    cofactor_check(p).passed()
}

/// Exact determinant of the `(p-1)/2`-dimensional 0-1 matrix
/// `[(1 + sign·((i+j-1)/p)) / 2]`, for primes `p > 3`, p ≡ 3 (mod 4).
pub fn chapman_det(p: OddPrime, sign: Symbol) -> Result<BigInt> {
    if p.is_one_mod_four() || p.get() <= 3 {
        return Err(Error::Domain(format!(
            "the 0-1 determinants are only claimed for primes p > 3 with p ≡ 3 (mod 4), got {p}"
        )));
    }
    if sign == Symbol::Zero {
        return Err(Error::Domain("sign must be +1 or -1".into()));
    }
    let s = sign.value();
    let chi = QuadraticCharacter::new(p);
    let m = IntMatrix::from_fn(p.half() as usize, p.half() as usize, |i, j| {
        BigInt::from((1 + s * chi.value((i + j - 1) as i64)) / 2)
    });
    m.bareiss_det()
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub p: OddPrime,
    #[serde(serialize_with = "decimal::serialize")]
    pub det_c: BigInt,
    #[serde(serialize_with = "decimal::serialize")]
    pub det_b: BigInt,
    #[serde(serialize_with = "decimal::serialize")]
    pub expected_det_c: BigInt,
    pub char_poly_b: IntPoly,
    pub expected_char_poly: IntPoly,
    /// `B_p^T = (-1/p)·B_p`.
    pub transpose_relation: bool,
    /// `B_p·w_1 = w_1` for p ≡ 1 (mod 4). For p ≡ 3 (mod 4) `B_p` is skew and
    /// has no real eigenvalues; there `w_1 ± i·w_2` are the `±i` eigenvectors,
    /// so the check is `B_p·w_1 = -w_2`.
    pub w1_ok: bool,
    /// `B_p·w_2 = -w_2` for p ≡ 1 (mod 4), `B_p·w_2 = w_1` for p ≡ 3 (mod 4).
    pub w2_ok: bool,
    /// `None` when `p` exceeds the cofactor bound.
    pub cofactors_equal: Option<bool>,
    #[serde(serialize_with = "opt_decimal")]
    pub chapman_plus: Option<BigInt>,
    #[serde(serialize_with = "opt_decimal")]
    pub chapman_minus: Option<BigInt>,
    /// Number of quadratic residues in `1..=(p-1)/2`.
    pub lower_half_residues: usize,
}

impl SpectrumReport {
    pub fn det_c_ok(&self) -> bool {
        self.det_c == self.expected_det_c
    }

    /// `det C_p = (-1)^((p-1)/2) det B_p`.
    pub fn exchange_relation(&self) -> bool {
        self.det_c == BigInt::from(self.p.minus_one_character()) * &self.det_b
    }

    pub fn char_poly_ok(&self) -> bool {
        self.char_poly_b == self.expected_char_poly
    }

    pub fn passed(&self) -> bool {
        self.det_c_ok()
            && self.exchange_relation()
            && self.char_poly_ok()
            && self.transpose_relation
            && self.w1_ok
            && self.w2_ok
            && self.cofactors_equal != Some(false)
    }
}

/// Largest prime for which [`spectrum_check`] computes all cofactors by default.
pub const DEFAULT_COFACTOR_BOUND: u64 = 31;

pub fn spectrum_check(p: OddPrime) -> SpectrumReport {
    spectrum_check_with(p, DEFAULT_COFACTOR_BOUND)
}

/// Like [`spectrum_check`], computing cofactors only when `p <= cofactor_bound`.
pub fn spectrum_check_with(p: OddPrime, cofactor_bound: u64) -> SpectrumReport {
    let b = build_b(p);
    let c = build_c(p);
    let (w1, w2) = w_vectors(p);
    let bw1 = b.mat_vec(&w1).expect("dimensions agree");
    let bw2 = b.mat_vec(&w2).expect("dimensions agree");
    let neg_w2: Vec<BigInt> = w2.iter().map(|x| -x).collect();
    let sign = BigInt::from(p.minus_one_character());
    let chi = QuadraticCharacter::new(p);
    let one_mod_four = p.is_one_mod_four();
    let three_mod_four = !one_mod_four && p.get() > 3;

    SpectrumReport {
        p,
        det_c: c.bareiss_det().expect("square"),
        det_b: b.bareiss_det().expect("square"),
        expected_det_c: leading_scalar(p),
        char_poly_b: b.char_poly().expect("integer matrix"),
        expected_char_poly: expected_char_poly(p),
        transpose_relation: b.transpose() == b.scale(&sign),
        w1_ok: if one_mod_four {
            bw1 == w1
        } else {
            bw1 == neg_w2
        },
        w2_ok: if one_mod_four {
            bw2 == neg_w2
        } else {
            bw2 == w1
        },
        cofactors_equal: (p.get() <= cofactor_bound).then(|| cofactors_all_equal(p)),
        chapman_plus: three_mod_four.then(|| chapman_det(p, Symbol::One).expect("valid")),
        chapman_minus: three_mod_four.then(|| chapman_det(p, Symbol::MinusOne).expect("valid")),
        lower_half_residues: (1..=p.half() as i64)
            .filter(|&r| chi.symbol(r) == Symbol::One)
            .count(),
    }
}

fn matrix_times_cyclo(m: &IntMatrix, v: &[CycloElem]) -> Vec<CycloElem> {
    let p = v[0].modulus();
    (1..=m.rows())
        .map(|i| {
            v.iter()
                .enumerate()
                .fold(CycloElem::zero(p), |acc, (k, x)| {
                    let c = m.get(i, k + 1);
                    if c.is_zero() {
                        acc
                    } else {
                        acc + x.scale(c)
                    }
                })
        })
        .collect()
}

/// `g_r`, with `g_0 = Σ (j/p) = 0`.
fn gauss_sum_or_zero(p: OddPrime, r: i64) -> CycloElem {
    if r.rem_euclid(p.get() as i64) == 0 {
        CycloElem::zero(p)
    } else {
        gauss_sum(p, r).expect("p does not divide r")
    }
}

fn power_vector(p: OddPrime, r: i64) -> Vec<CycloElem> {
    (0..p.get() as i64)
        .map(|j| CycloElem::zeta_pow(p, r * j))
        .collect()
}

/// Checks `D_p · v = g_r · v` exactly in Z[ζ_p]^p for `v = (ζ^(-rj))_{j=0..p-1}`.
///
/// The vector `(ζ^(rj))_j` is also an eigenvector, with eigenvalue
/// `g_{-r} = (-1/p) g_r`; see [`circulant_eigenvalue`].
pub fn circulant_eigen_check(p: OddPrime, r: i64) -> bool {
    let d = build_d(p);
    let v = power_vector(p, -r);
    let g = gauss_sum_or_zero(p, r);
    let dv = matrix_times_cyclo(&d, &v);
    dv.iter()
        .zip(&v)
        .all(|(lhs, x)| *lhs == g.clone() * x.clone())
}

/// Eigenvalue of `D_p` on `z_r = (ζ^(rj))_{j=0..p-1}`, or `None` if `z_r`
/// is not an eigenvector.
pub fn circulant_eigenvalue(p: OddPrime, r: i64) -> Option<CycloElem> {
    let d = build_d(p);
    let z = power_vector(p, r);
    let dz = matrix_times_cyclo(&d, &z);
    // z_0 = 1, so the first component is the candidate eigenvalue
    let lambda = dz[0].clone();
    dz.iter()
        .zip(&z)
        .all(|(lhs, x)| *lhs == lambda.clone() * x.clone())
        .then_some(lambda)
}

fn float<F: Float>(v: f64) -> F {
    F::from(v).expect("representable")
}

fn residual<F: Float>(b: &[Vec<F>], v: &[F], lambda: F) -> F {
    b.iter()
        .zip(v)
        .map(|(row, vi)| {
            let bv = row
                .iter()
                .zip(v)
                .fold(F::zero(), |acc, (x, y)| acc + *x * *y);
            (bv - lambda * *vi).abs()
        })
        .fold(F::zero(), F::max)
}

/// Floating-point check of the real eigenvector families of `B_p` for
/// p ≡ 1 (mod 4): `u_r = (sin(2πrj/p))_j` with eigenvalue `(r/p)√p`, and the
/// cosine differences `v_1 - v_{h^k}` (eigenvalue `√p`) and
/// `v_g - v_{g h^k}` (eigenvalue `-√p`), `g` the smallest primitive root,
/// `h = g^4`, `k = 1..(p-1)/4 - 1`. Returns the largest residual.
pub fn real_eigenvector_residual<F: Float + FloatConst>(p: OddPrime, r: u64) -> Result<F> {
    if !p.is_one_mod_four() {
        return Err(Error::Domain(format!(
            "real eigenvector families need p ≡ 1 (mod 4), got {p}"
        )));
    }
    if r == 0 || r > p.half() {
        return Err(Error::Domain(format!(
            "r must lie in 1..={}, got {r}",
            p.half()
        )));
    }
    let n = p.get();
    let chi = QuadraticCharacter::new(p);
    let b: Vec<Vec<F>> = (1..n as i64)
        .map(|i| {
            (1..n as i64)
                .map(|j| float(chi.value(i - j) as f64))
                .collect()
        })
        .collect();
    let sqrt_p = float::<F>(n as f64).sqrt();
    let angle = |s: u64, j: u64| F::TAU() * float::<F>(((s * j) % n) as f64) / float(n as f64);
    let sin_vec = |s: u64| (1..n).map(|j| angle(s, j).sin()).collect::<Vec<F>>();
    let cos_vec = |s: u64| (1..n).map(|j| angle(s, j).cos()).collect::<Vec<F>>();
    let diff = |a: Vec<F>, b: Vec<F>| a.into_iter().zip(b).map(|(x, y)| x - y).collect::<Vec<F>>();

    let lambda_r = float::<F>(chi.value(r as i64) as f64) * sqrt_p;
    let mut worst = residual(&b, &sin_vec(r), lambda_r);

    let g: u64 = primitive_root(n)?.try_into().expect("g < p");
    let h = (0..4).fold(1u64, |acc, _| acc * g % n);
    let mut hk = 1u64;
    for _ in 1..(n - 1) / 4 {
        hk = hk * h % n;
        let plus = diff(cos_vec(1), cos_vec(hk));
        let minus = diff(cos_vec(g), cos_vec(g * hk % n));
        worst = worst
            .max(residual(&b, &plus, sqrt_p))
            .max(residual(&b, &minus, -sqrt_p));
    }
    Ok(worst)
}

/// [`real_eigenvector_residual`] compared against `tol`.
pub fn real_eigenvector_spotcheck<F: Float + FloatConst>(
    p: OddPrime,
    r: u64,
    tol: F,
) -> Result<bool> {
    Ok(real_eigenvector_residual::<F>(p, r)? <= tol)
}

/// `det C_p · Σ_j a_j(x)`, the determinant reassembled from the common
/// cofactor.
pub fn reassembled_determinant(p: OddPrime, common_cofactor: &BigInt) -> Result<IntPoly> {
    let a = crate::hankel::a_sequence(p.get(), p.as_usize())?;
    let sum = a.iter().fold(IntPoly::zero(), |acc, f| &acc + f);
    Ok(sum.scale(common_cofactor))
}

/// `M^T = -M`.
pub fn is_skew_symmetric(m: &IntMatrix) -> bool {
    m.transpose() == m.scale(&-BigInt::one())
}
