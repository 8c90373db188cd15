//! Named verification suites run by `jhankel verify`.
//!
//! Every suite walks the odd primes (or odd integers) up to a bound, clipped
//! by a per-suite cap that keeps the cost bounded, and yields one
//! [`CheckOutcome`] per instance. Work runs in parallel; results keep input
//! order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    factorize, is_prime, jacobi, legendre, primitive_root, OddPrime, QuadraticCharacter, Symbol,
};
use crate::certificates::{composite_certificate, verify_certificate};
use crate::cyclo::{gauss_sum, qr_partial_sum, CycloElem};
use crate::error::{Error, Result};
use crate::hankel::{
    build_hankel, closed_form, det_direct, det_interp, divisibility_report, partial_sums,
};
use crate::identities::{
    alternating_sum_check, f_transform_check, nonresidue_row_sum, orthogonality,
    weighted_residue_sum,
};
use crate::poly::Degree;
use crate::spectral::{
    chapman_det, circulant_eigen_check, cofactor_check, real_eigenvector_residual,
    reassembled_determinant, spectrum_check_with,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Arith,
    Hankel,
    Certificates,
    Spectrum,
    Cofactors,
    Gauss,
    Identities,
    Chapman,
    Numeric,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Arith,
        Suite::Hankel,
        Suite::Certificates,
        Suite::Spectrum,
        Suite::Cofactors,
        Suite::Gauss,
        Suite::Identities,
        Suite::Chapman,
        Suite::Numeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arith => "arith",
            Suite::Hankel => "hankel",
            Suite::Certificates => "certificates",
            Suite::Spectrum => "spectrum",
            Suite::Cofactors => "cofactors",
            Suite::Gauss => "gauss",
            Suite::Identities => "identities",
            Suite::Chapman => "chapman",
            Suite::Numeric => "numeric",
        }
    }

    /// Advisory suites report failures without failing the run.
    pub fn is_advisory(self) -> bool {
        matches!(self, Suite::Numeric)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// Upper limits applied on top of [`SuiteConfig::max_p`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Caps {
    pub arith: u64,
    pub interp: u64,
    pub direct: u64,
    pub closed_form: u64,
    pub certificates: u64,
    pub spectrum: u64,
    pub cofactors: u64,
    pub reassembly: u64,
    pub gauss: u64,
    pub circulant: u64,
    pub identities: u64,
    pub chapman: u64,
    pub numeric: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            arith: 5000,
            interp: 21,
            direct: 13,
            closed_form: 1000,
            certificates: 225,
            spectrum: 31,
            cofactors: 23,
            reassembly: 13,
            gauss: 61,
            circulant: 31,
            identities: 101,
            chapman: 31,
            numeric: 61,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub max_p: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Random period-p functions per prime in the identities suite.
    pub random_functions: usize,
    pub caps: Caps,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_p: 101,
            seed: 0x5eed,
            tolerance: 1e-9,
            random_functions: 100,
            caps: Caps::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_max_p(max_p: u64) -> Self {
        SuiteConfig {
            max_p,
            ..SuiteConfig::default()
        }
    }

    fn primes(&self, cap: u64) -> Vec<OddPrime> {
        OddPrime::up_to(self.max_p.min(cap))
    }

    fn odd(&self, from: u64, cap: u64) -> Vec<u64> {
        (from..=self.max_p.min(cap))
            .filter(|n| n % 2 == 1)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub advisory: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            suite,
            name: name.into(),
            passed,
            advisory: suite.is_advisory(),
            detail: detail.into(),
        }
    }

    fn from_result(suite: Suite, name: impl Into<String>, r: Result<String>) -> Self {
        match r {
            Ok(detail) => CheckOutcome::new(suite, name, true, detail),
            Err(e) => CheckOutcome::new(suite, name, false, e.to_string()),
        }
    }

    /// Failed and counts against the run.
    pub fn is_failure(&self) -> bool {
        !self.passed && !self.advisory
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed, self.advisory) {
            (true, _) => "ok",
            (false, true) => "WARN",
            (false, false) => "FAIL",
        };
        write!(
            f,
            "[{verdict}] {}/{}: {}",
            self.suite, self.name, self.detail
        )
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Falsified(what()))
    }
}

fn per_item<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> CheckOutcome + Sync + Send,
) -> Vec<CheckOutcome> {
    items.par_iter().map(check).collect()
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Vec<CheckOutcome> {
    match suite {
        Suite::Arith => arith_suite(config),
        Suite::Hankel => hankel_suite(config),
        Suite::Certificates => certificate_suite(config),
        Suite::Spectrum => spectrum_suite(config),
        Suite::Cofactors => cofactor_suite(config),
        Suite::Gauss => gauss_suite(config),
        Suite::Identities => identity_suite(config),
        Suite::Chapman => chapman_suite(config),
        Suite::Numeric => numeric_suite(config),
    }
}

pub fn run_all(config: &SuiteConfig) -> Vec<CheckOutcome> {
    Suite::ALL
        .into_iter()
        .flat_map(|s| run_suite(s, config))
        .collect()
}

fn arith_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let odd = config.odd(3, config.caps.arith);
    per_item(&odd, |&m| {
        let r = (|| {
            let f = factorize(m)?;
            ensure(f.product() == BigInt::from(m), || {
                format!("factorization of {m} multiplies back wrongly")
            })?;
            let trial = (3..)
                .step_by(2)
                .take_while(|d| d * d <= m)
                .all(|d| m % d != 0);
            ensure(is_prime(m) == trial, || {
                format!("is_prime({m}) disagrees with trial division")
            })?;
            for a in 0..m.min(64) {
                let by_factors = f.factors().iter().try_fold(Symbol::One, |acc, (q, e)| {
                    legendre(a, q.clone()).map(|s| (0..*e).fold(acc, |x, _| x * s))
                })?;
                ensure(jacobi(a, m)? == by_factors, || {
                    format!("J({a}, {m}) disagrees with its factorization")
                })?;
            }
            if trial {
                let g = primitive_root(m)?.to_u64().expect("below m");
                let mut x = 1u64;
                for k in 1..m {
                    x = x * g % m;
                    ensure(x != 1 || k == m - 1, || {
                        format!("{g} is not a primitive root of {m}")
                    })?;
                }
            }
            Ok(format!("{} prime factor(s)", f.factors().len()))
        })();
        CheckOutcome::from_result(Suite::Arith, format!("m={m}"), r)
    })
}

fn hankel_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = per_item(&config.odd(3, config.caps.interp), |&n| {
        let r = (|| {
            let h = det_interp(n)?;
            if n <= config.caps.direct {
                ensure(det_direct(&build_hankel(n)?) == h, || {
                    format!("det_direct and det_interp differ at n = {n}")
                })?;
            }
            if is_prime(n) {
                ensure(closed_form(n)? == h, || {
                    format!("closed form differs from det_interp at n = {n}")
                })?;
                Ok(format!("prime, H = {h}"))
            } else {
                ensure(h.is_zero(), || format!("H_{n} is nonzero for composite n"))?;
                Ok("composite, H = 0".to_string())
            }
        })();
        CheckOutcome::from_result(Suite::Hankel, format!("n={n}"), r)
    });
    out.extend(per_item(&config.primes(config.caps.closed_form), |&p| {
        let r = (|| {
            let b = partial_sums(p);
            let b = b.values();
            ensure(b[0] == 0 && b[1] == 0, || "b_0 or b_1 is nonzero".into())?;
            let h = closed_form(p.get())?;
            ensure(h.degree() == Degree::Finite(p.as_usize() - 1), || {
                format!("degree of H_{p} is not p - 1")
            })?;
            let sign = BigInt::from(p.minus_one_character());
            let lead = h.leading_coeff().cloned().unwrap_or_default();
            ensure(lead.sign() == sign.sign(), || {
                "leading coefficient has the wrong sign".into()
            })?;
            let report = divisibility_report(p)?;
            ensure(report.coefficients_are_shifted_b != Some(false), || {
                "quotient coefficients are not the shifted partial sums".into()
            })?;
            let extra = if p.is_one_mod_four() {
                "x^2(x^2 - 1)"
            } else {
                "x^2"
            };
            Ok(format!("{extra} divides H_{p}"))
        })();
        CheckOutcome::from_result(Suite::Hankel, format!("closed p={p}"), r)
    }));
    out
}

fn certificate_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let composites: Vec<u64> = config
        .odd(9, config.caps.certificates)
        .into_iter()
        .filter(|&n| !is_prime(n))
        .collect();
    per_item(&composites, |&n| {
        let r = (|| {
            let cert = composite_certificate(n)?;
            ensure(verify_certificate(&cert)?, || {
                format!("certificate for {n} does not verify")
            })?;
            let mut tampered = cert.clone();
            tampered.dependence.pop();
            ensure(!verify_certificate(&tampered)?, || {
                format!("a tampered certificate for {n} verifies")
            })?;
            Ok(format!("{} rows", cert.dependence.len()))
        })();
        CheckOutcome::from_result(Suite::Certificates, format!("n={n}"), r)
    })
}

fn spectrum_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    per_item(&config.primes(config.caps.spectrum), |&p| {
        let report = spectrum_check_with(p, 0);
        let detail = format!(
            "det C = {} (expected {}), char poly {}, w1 {}, w2 {}",
            report.det_c,
            report.expected_det_c,
            if report.char_poly_ok() {
                "matches"
            } else {
                "differs"
            },
            report.w1_ok,
            report.w2_ok
        );
        CheckOutcome::new(Suite::Spectrum, format!("p={p}"), report.passed(), detail)
    })
}

fn cofactor_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    per_item(&config.primes(config.caps.cofactors), |&p| {
        let r = (|| {
            let report = cofactor_check(p);
            ensure(report.passed(), || {
                format!("cofactors of A_{p} are not all equal to det C_{p}")
            })?;
            let common = report.common_value.expect("all equal");
            if p.get() <= config.caps.reassembly {
                let h = det_interp(p.get())?;
                ensure(reassembled_determinant(p, &common)? == h, || {
                    "cofactor reassembly differs from H_p".into()
                })?;
            }
            Ok(format!("common cofactor {common}"))
        })();
        CheckOutcome::from_result(Suite::Cofactors, format!("p={p}"), r)
    })
}

fn gauss_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out = per_item(&config.primes(config.caps.gauss), |&p| {
        let r = (|| {
            let g1 = gauss_sum(p, 1)?;
            let square = CycloElem::from_int(p, p.minus_one_character().value() * p.get() as i64);
            let one = CycloElem::one(p);
            for r in 1..p.get() as i64 {
                let chi = legendre(r, p.get())?;
                let gr = gauss_sum(p, r)?;
                ensure(gr.clone() * gr.clone() == square, || {
                    format!("g_{r}^2 != (-1/p) p")
                })?;
                ensure(gr == g1.scale_symbol(chi), || {
                    format!("g_{r} != ({r}/p) g_1")
                })?;
                let plus = qr_partial_sum(p, r, Symbol::One)?;
                let minus = qr_partial_sum(p, r, Symbol::MinusOne)?;
                ensure(
                    (plus.clone() + plus.clone() + one.clone() - gr.clone()).is_zero(),
                    || format!("residue partial sum form fails at r = {r}"),
                )?;
                ensure(
                    (minus.clone() + minus.clone() + one.clone() + gr).is_zero(),
                    || format!("nonresidue partial sum form fails at r = {r}"),
                )?;
                if p.is_one_mod_four() {
                    ensure(plus.is_real() && minus.is_real(), || {
                        format!("partial sums are not real at r = {r}")
                    })?;
                }
            }
            Ok(format!(
                "g_1^2 = {}",
                p.minus_one_character().value() * p.get() as i64
            ))
        })();
        CheckOutcome::from_result(Suite::Gauss, format!("p={p}"), r)
    });
    out.extend(per_item(&config.primes(config.caps.circulant), |&p| {
        let failing: Vec<i64> = (0..p.get() as i64)
            .filter(|&r| !circulant_eigen_check(p, r))
            .collect();
        let detail = if failing.is_empty() {
            "D_p v_r = g_r v_r for all r".to_string()
        } else {
            format!("eigen-relation fails for r in {failing:?}")
        };
        CheckOutcome::new(
            Suite::Gauss,
            format!("circulant p={p}"),
            failing.is_empty(),
            detail,
        )
    }));
    out
}

fn identity_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    per_item(&config.primes(config.caps.identities), |&p| {
        let r = (|| {
            let n = p.get() as i64;
            let chi = QuadraticCharacter::new(p);
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { n - 1 } else { -1 };
                    ensure(orthogonality(p, i, j) == expected, || {
                        format!("orthogonality fails at ({i}, {j})")
                    })?;
                }
            }
            for i in 1..n {
                ensure(2 * nonresidue_row_sum(p, i)? == 1 - chi.value(i), || {
                    format!("nonresidue row sum fails at i = {i}")
                })?;
            }
            if p.is_one_mod_four() {
                ensure(weighted_residue_sum(p) == 0, || {
                    "Σ m (m/p) is nonzero".into()
                })?;
                ensure(alternating_sum_check(p)?, || {
                    "alternating half-range sums disagree".into()
                })?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ p.get());
            for _ in 0..config.random_functions {
                let values: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
                ensure(f_transform_check(p, &values)?, || {
                    format!("transform identity fails for F = {values:?}")
                })?;
            }
            Ok(format!("{} random F", config.random_functions))
        })();
        CheckOutcome::from_result(Suite::Identities, format!("p={p}"), r)
    })
}

fn chapman_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let primes: Vec<OddPrime> = config
        .primes(config.caps.chapman)
        .into_iter()
        .filter(|p| !p.is_one_mod_four() && p.get() > 3)
        .collect();
    per_item(&primes, |&p| {
        let r = (|| {
            let plus = chapman_det(p, Symbol::One)?;
            let minus = chapman_det(p, Symbol::MinusOne)?;
            let target = BigInt::from(-1);
            ensure(plus == target && minus == target, || {
                format!("determinants are {plus} and {minus}")
            })?;
            Ok("both determinants are -1".to_string())
        })();
        CheckOutcome::from_result(Suite::Chapman, format!("p={p}"), r)
    })
}

fn numeric_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let primes: Vec<OddPrime> = config
        .primes(config.caps.numeric)
        .into_iter()
        .filter(|p| p.is_one_mod_four())
        .collect();
    per_item(&primes, |&p| {
        let worst = (1..=p.half())
            .map(|r| real_eigenvector_residual::<f64>(p, r))
            .try_fold(0.0f64, |acc, x| x.map(|x| acc.max(x)));
        match worst {
            Ok(w) => CheckOutcome::new(
                Suite::Numeric,
                format!("p={p}"),
                w <= config.tolerance,
                format!("max residual {w:.3e} (tolerance {:.1e})", config.tolerance),
            ),
            Err(e) => CheckOutcome::new(Suite::Numeric, format!("p={p}"), false, e.to_string()),
        }
    })
}
