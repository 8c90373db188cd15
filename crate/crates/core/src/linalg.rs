//! Dense matrices over an exact [`Domain`].
//!
//! All public indices are 1-based.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{lagrange_interpolate, IntPoly};
use crate::scalar::Domain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix<D> {
    rows: usize,
    cols: usize,
    entries: Vec<D>,
}

impl<D: Domain> RingMatrix<D> {
    /// Row-major construction.
    pub fn new(rows: usize, cols: usize, entries: Vec<D>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Entry `(i, j)` is `f(i, j)` with 1-based `i`, `j`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> D) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix::from_fn(rows, cols, |_, _| D::zero())
    }

    pub fn identity(n: usize) -> Self {
        RingMatrix::from_fn(n, n, |i, j| if i == j { D::one() } else { D::zero() })
    }

    /// `k x k` matrix with ones on the anti-diagonal.
    pub fn exchange(k: usize) -> Self {
        RingMatrix::from_fn(
            k,
            k,
            |i, j| if i + j == k + 1 { D::one() } else { D::zero() },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[D] {
        &self.entries
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&D> {
        self.check_index(i, j)?;
        Ok(&self.entries[(i - 1) * self.cols + (j - 1)])
    }

    /// Panicking accessor for indices already known to be valid.
    pub fn get(&self, i: usize, j: usize) -> &D {
        self.entry(i, j).expect("matrix index in range")
    }

    pub fn row(&self, i: usize) -> Result<&[D]> {
        if i == 0 || i > self.rows {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: 1,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(&self.entries[(i - 1) * self.cols..i * self.cols])
    }

    pub fn transpose(&self) -> Self {
        RingMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<E>(&self, f: impl FnMut(&D) -> E) -> RingMatrix<E> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &D) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn mat_mul(&self, other: &RingMatrix<D>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RingMatrix::from_fn(self.rows, other.cols, |i, j| {
            (1..=self.cols).fold(D::zero(), |acc, k| {
                acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)))
            })
        }))
    }

    pub fn mat_vec(&self, v: &[D]) -> Result<Vec<D>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((1..=self.rows)
            .map(|i| {
                v.iter().enumerate().fold(D::zero(), |acc, (k, x)| {
                    acc.add_ref(&self.get(i, k + 1).mul_ref(x))
                })
            })
            .collect())
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Result<Self> {
        self.check_index(i, j)?;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx / self.cols + 1 != i && idx % self.cols + 1 != j)
            .map(|(_, x)| x.clone())
            .collect();
        Ok(RingMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        })
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division is by the previous pivot and is exact in any integral
    /// domain. A zero pivot is replaced by swapping in the first later column
    /// with a nonzero entry in the pivot row.
    pub fn bareiss_det(&self) -> Result<D> {
        self.require_square("determinant")?;
        let n = self.rows;
        if n == 0 {
            return Ok(D::one());
        }
        let mut a = self.entries.clone();
        let at = |r: usize, c: usize| r * n + c;
        let mut negate = false;
        let mut prev = D::one();
        for k in 0..n - 1 {
            if a[at(k, k)].is_zero() {
                let Some(c) = (k + 1..n).find(|&c| !a[at(k, c)].is_zero()) else {
                    return Ok(D::zero());
                };
                for r in k..n {
                    a.swap(at(r, k), at(r, c));
                }
                negate = !negate;
            }
            let pivot = a[at(k, k)].clone();
            for i in k + 1..n {
                let lead = a[at(i, k)].clone();
                for j in k + 1..n {
                    let t = a[at(i, j)]
                        .mul_ref(&pivot)
                        .sub_ref(&lead.mul_ref(&a[at(k, j)]));
                    a[at(i, j)] = t
                        .div_exact(&prev)
                        .expect("Bareiss quotient is exact in an integral domain");
                }
            }
            prev = pivot;
        }
        let det = a[at(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    /// `(-1)^(i+j)` times the `(i, j)` minor determinant.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<D> {
        self.require_square("cofactor")?;
        if self.rows < 2 {
            return Err(Error::DimensionMismatch("cofactor needs n >= 2".into()));
        }
        let m = self.minor(i, j)?.bareiss_det()?;
        Ok(if (i + j).is_multiple_of(2) { m } else { -m })
    }
}

impl RingMatrix<BigInt> {
    /// `det(xI - M)`, from Bareiss determinants at the nodes `0..=dim` and
    /// exact interpolation.
    pub fn char_poly(&self) -> Result<IntPoly> {
        self.require_square("characteristic polynomial")?;
        let n = self.rows;
        let points = (0..=n as i64)
            .into_par_iter()
            .map(|t| {
                let t = BigInt::from(t);
                let shifted = RingMatrix::from_fn(n, n, |i, j| {
                    let diag = if i == j { t.clone() } else { BigInt::zero() };
                    diag - self.get(i, j)
                });
                shifted.bareiss_det().map(|d| (t, d))
            })
            .collect::<Result<Vec<_>>>()?;
        lagrange_interpolate(&points)
    }
}

/// `k x k` exchange matrix.
pub fn exchange_matrix<D: Domain>(k: usize) -> RingMatrix<D> {
    RingMatrix::exchange(k)
}

/// `(-1)^(k(k-1)/2)`, the determinant of the `k x k` exchange matrix.
pub fn exchange_sign(k: usize) -> BigInt {
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, PolyMatrix, RationalMatrix};
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Laplace expansion along the first row; test oracle only.
    fn laplace_det<D: Domain>(m: &RingMatrix<D>) -> D {
        let n = m.rows();
        if n == 0 {
            return D::one();
        }
        (1..=n).fold(D::zero(), |acc, j| {
            let term = m.get(1, j).mul_ref(&laplace_det(&m.minor(1, j).unwrap()));
            if j % 2 == 1 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            }
        })
    }

    fn int_matrix(n: usize, v: &[i64]) -> IntMatrix {
        RingMatrix::new(n, n, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    /// Legendre symbol by square scan; independent of the arith module.
    fn scan_legendre(a: i64, p: i64) -> i64 {
        let r = a.rem_euclid(p);
        if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    fn legendre_matrix(n: usize, p: i64, f: impl Fn(i64, i64) -> i64) -> IntMatrix {
        RingMatrix::from_fn(n, n, |i, j| {
            BigInt::from(scan_legendre(f(i as i64, j as i64), p))
        })
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            int_matrix(1, &[-7]).bareiss_det().unwrap(),
            BigInt::from(-7)
        );
        let e5: IntMatrix = exchange_matrix(5);
        assert_eq!(e5.bareiss_det().unwrap(), BigInt::from(1));
        let c5 = legendre_matrix(4, 5, |i, j| i + j);
        assert_eq!(c5.bareiss_det().unwrap(), BigInt::from(5));
        assert_eq!(IntMatrix::identity(0).bareiss_det().unwrap(), BigInt::one());
    }

    #[test]
    fn zero_pivot_needs_column_swap() {
        let m = int_matrix(3, &[0, 2, 1, 3, 0, 4, 5, 6, 0]);
        assert_eq!(m.bareiss_det().unwrap(), laplace_det(&m));
        let singular = int_matrix(3, &[0, 0, 0, 1, 2, 3, 4, 5, 6]);
        assert!(singular.bareiss_det().unwrap().is_zero());
    }

    #[test]
    fn non_square_is_rejected() {
        let m = RingMatrix::new(2, 3, vec![BigInt::one(); 6]).unwrap();
        assert!(matches!(m.bareiss_det(), Err(Error::DimensionMismatch(_))));
        assert!(RingMatrix::<BigInt>::new(2, 2, vec![BigInt::one(); 3]).is_err());
    }

    #[test]
    fn cofactor_examples() {
        let a3 = legendre_matrix(3, 3, |i, j| i + j - 1);
        // deleting row 1 and column 3 leaves [[(2/3),(3/3)],[(3/3),(4/3)]] = [[-1,0],[0,1]]
        assert_eq!(a3.cofactor(1, 3).unwrap(), BigInt::from(-1));
        let a5 = legendre_matrix(5, 5, |i, j| i + j - 1);
        for i in 1..=5 {
            for j in 1..=5 {
                assert_eq!(a5.cofactor(i, j).unwrap(), BigInt::from(5), "({i},{j})");
            }
        }
        assert_eq!(
            IntMatrix::identity(2).cofactor(1, 1).unwrap(),
            BigInt::one()
        );
        assert!(matches!(
            a3.cofactor(0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            a3.cofactor(1, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            IntMatrix::zeros(2, 2).char_poly().unwrap(),
            IntPoly::from_i64s(&[0, 0, 1])
        );
        let b5 = legendre_matrix(4, 5, |i, j| i - j);
        let b7 = legendre_matrix(6, 7, |i, j| i - j);
        let cp5 = b5.char_poly().unwrap();
        let cp7 = b7.char_poly().unwrap();
        assert_eq!(cp5, IntPoly::from_i64s(&[5, 0, -6, 0, 1]));
        assert_eq!(cp7, IntPoly::from_i64s(&[49, 0, 63, 0, 15, 0, 1]));
        // cross-check: det(tI - B) by Laplace expansion at a few nodes
        for t in [-3i64, 2, 5] {
            let shifted = RingMatrix::from_fn(6, 6, |i, j| {
                BigInt::from(if i == j { t } else { 0 }) - b7.get(i, j)
            });
            assert_eq!(cp7.eval(&BigInt::from(t)), laplace_det(&shifted));
        }
    }

    #[test]
    fn products_with_exchange() {
        let c5 = legendre_matrix(4, 5, |i, j| i + j);
        let b5 = legendre_matrix(4, 5, |i, j| i - j);
        assert_eq!(c5.mat_mul(&exchange_matrix(4)).unwrap(), b5);
        for k in 1..8 {
            let e: IntMatrix = exchange_matrix(k);
            assert_eq!(e.mat_mul(&e).unwrap(), IntMatrix::identity(k));
        }
        let v: Vec<BigInt> = [3, -1, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(IntMatrix::identity(3).mat_vec(&v).unwrap(), v);
        assert!(IntMatrix::identity(2).mat_vec(&v).is_err());
        assert!(IntMatrix::identity(2)
            .mat_mul(&IntMatrix::identity(3))
            .is_err());
    }

    #[test]
    fn exchange_determinant_sign() {
        for k in 1..=12 {
            let e: IntMatrix = exchange_matrix(k);
            let expected = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(e.bareiss_det().unwrap(), BigInt::from(expected), "k = {k}");
            assert_eq!(exchange_sign(k), BigInt::from(expected));
        }
    }

    #[test]
    fn rational_and_integer_determinants_agree() {
        let m = int_matrix(3, &[2, -1, 0, 4, 3, 7, -5, 1, 1]);
        let q: RationalMatrix = m.map(|x| BigRational::from_integer(x.clone()));
        assert_eq!(
            q.bareiss_det().unwrap(),
            BigRational::from_integer(m.bareiss_det().unwrap())
        );
    }

    fn int_matrix_strategy(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-9i64..10, n * n).prop_map(move |v| int_matrix(n, &v))
        })
    }

    fn poly_matrix_strategy(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-3i64..4, 0..=3), n * n).prop_map(
                move |v| {
                    RingMatrix::new(n, n, v.iter().map(|c| IntPoly::from_i64s(c)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace_over_integers(m in int_matrix_strategy(6)) {
            prop_assert_eq!(m.bareiss_det().unwrap(), laplace_det(&m));
        }

        #[test]
        fn bareiss_matches_laplace_over_polynomials(m in poly_matrix_strategy(4)) {
            prop_assert_eq!(m.bareiss_det().unwrap(), laplace_det(&m));
        }

        #[test]
        fn determinant_is_multiplicative(
            (a, b) in (1usize..=4).prop_flat_map(|n| (
                prop::collection::vec(-6i64..7, n * n).prop_map(move |v| int_matrix(n, &v)),
                prop::collection::vec(-6i64..7, n * n).prop_map(move |v| int_matrix(n, &v)),
            ))
        ) {
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.bareiss_det().unwrap(), a.bareiss_det().unwrap() * b.bareiss_det().unwrap());
        }

        #[test]
        fn char_poly_constant_term(m in int_matrix_strategy(5)) {
            let cp = m.char_poly().unwrap();
            let sign = if m.rows() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(cp.coeff(0), sign * m.bareiss_det().unwrap());
            prop_assert!(cp.is_monic());
            prop_assert_eq!(cp.degree(), crate::poly::Degree::Finite(m.rows()));
        }
    }
}
