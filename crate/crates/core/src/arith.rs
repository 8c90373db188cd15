//! Number theory over arbitrary-precision integers: Legendre and Jacobi
//! symbols, deterministic primality, factorization and primitive roots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Value of a Legendre or Jacobi symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Symbol {
    MinusOne,
    Zero,
    One,
}

impl Symbol {
    pub fn value(self) -> i64 {
        match self {
            Symbol::MinusOne => -1,
            Symbol::Zero => 0,
            Symbol::One => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Symbol> {
        match v {
            -1 => Some(Symbol::MinusOne),
            0 => Some(Symbol::Zero),
            1 => Some(Symbol::One),
            _ => None,
        }
    }

    /// `(-1)^e` as a symbol.
    pub fn parity(e: u64) -> Symbol {
        if e.is_multiple_of(2) {
            Symbol::One
        } else {
            Symbol::MinusOne
        }
    }
}

impl Mul for Symbol {
    type Output = Symbol;

    fn mul(self, rhs: Symbol) -> Symbol {
        Symbol::from_value(self.value() * rhs.value()).expect("product of symbols is a symbol")
    }
}

impl From<Symbol> for BigInt {
    fn from(s: Symbol) -> BigInt {
        BigInt::from(s.value())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Prime factorization, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// The integer this factorization represents.
    pub fn product(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }
}

/// A validated odd prime small enough to index matrices with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p % 2 == 1 && is_prime(p) {
            Ok(OddPrime(p))
        } else {
            Err(Error::NotOddPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// `(p - 1) / 2`.
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    /// True for p ≡ 1 (mod 4).
    pub fn is_one_mod_four(self) -> bool {
        self.0 % 4 == 1
    }

    /// `(-1 / p) = (-1)^((p-1)/2)`.
    pub fn minus_one_character(self) -> Symbol {
        Symbol::parity(self.half())
    }

    /// Odd primes `p` with `p <= bound`, ascending.
    pub fn up_to(bound: u64) -> Vec<OddPrime> {
        (3..=bound)
            .step_by(2)
            .filter_map(|p| OddPrime::new(p).ok())
            .collect()
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Table of `(a / p)` for `a` in `0..p`, looked up by residue.
#[derive(Clone, Debug)]
pub struct QuadraticCharacter {
    p: OddPrime,
    table: Vec<Symbol>,
}

impl QuadraticCharacter {
    /// Marks the squares `k^2 mod p` for `k = 1..=(p-1)/2`, which hit every
    /// nonzero residue exactly once.
    pub fn new(p: OddPrime) -> Self {
        let n = p.get();
        let mut table = vec![Symbol::MinusOne; p.as_usize()];
        table[0] = Symbol::Zero;
        for k in 1..=p.half() {
            table[((k as u128 * k as u128) % n as u128) as usize] = Symbol::One;
        }
        QuadraticCharacter { p, table }
    }

    pub fn modulus(&self) -> OddPrime {
        self.p
    }

    pub fn symbol(&self, a: i64) -> Symbol {
        self.table[a.rem_euclid(self.p.get() as i64) as usize]
    }

    pub fn value(&self, a: i64) -> i64 {
        self.symbol(a).value()
    }
}

/// Legendre symbol `(a / p)` by Euler's criterion. `p` must be an odd prime.
pub fn legendre(a: impl Into<BigInt>, p: impl Into<BigInt>) -> Result<Symbol> {
    let p = p.into();
    if !(p.is_odd() && is_prime(p.clone())) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    Ok(euler_criterion(&a.into(), &p))
}

fn euler_criterion(a: &BigInt, p: &BigInt) -> Symbol {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Symbol::Zero;
    }
    let t = a.modpow(&((p - 1u32) >> 1), p);
    if t.is_one() {
        Symbol::One
    } else {
        debug_assert_eq!(t, p - 1u32);
        Symbol::MinusOne
    }
}

/// Jacobi symbol `J(a, m)` for odd `m >= 1` by quadratic reciprocity, without
/// factoring `m`. `J(a, 1) = 1` for every `a`.
pub fn jacobi(a: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Symbol> {
    let mut m = m.into();
    if !m.is_positive() || m.is_even() {
        return Err(Error::InvalidModulus(m.to_string()));
    }
    let mut a = a.into().mod_floor(&m);
    let mut negate = false;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        a >>= twos;
        let m8 = (&m % 8u32).to_u32().unwrap();
        if twos % 2 == 1 && (m8 == 3 || m8 == 5) {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut m);
        if (&a % 4u32).to_u32() == Some(3) && (&m % 4u32).to_u32() == Some(3) {
            negate = !negate;
        }
        a = a.mod_floor(&m);
    }
    Ok(if !m.is_one() {
        Symbol::Zero
    } else if negate {
        Symbol::MinusOne
    } else {
        Symbol::One
    })
}

/// Miller–Rabin with the first thirteen prime bases is deterministic below
/// this bound (3.317·10²⁴).
pub const DETERMINISTIC_PRIMALITY_BOUND: &str = "3317044064679887385961981";

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Deterministic primality for `n` below [`DETERMINISTIC_PRIMALITY_BOUND`].
/// Larger inputs are tested against all 25 bases below 100, which is a
/// strong-probable-prime answer only.
pub fn is_prime(n: impl Into<BigInt>) -> bool {
    let n = n.into();
    if n < BigInt::from(2) {
        return false;
    }
    for &q in &SMALL_PRIMES {
        if n == BigInt::from(q) {
            return true;
        }
        if (&n % q).is_zero() {
            return false;
        }
    }
    let bound: BigInt = DETERMINISTIC_PRIMALITY_BOUND.parse().unwrap();
    let bases = if n < bound {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES[..]
    };

    let n_minus_one = &n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap();
    let d = &n_minus_one >> s;
    'witness: for &b in bases {
        let mut x = BigInt::from(b).modpow(&d, &n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_LIMIT: u32 = 10_000;

/// Complete prime factorization of `n >= 1`: trial division, then Pollard rho
/// with a fixed seed schedule.
pub fn factorize(n: impl Into<BigInt>) -> Result<Factorization> {
    let mut n = n.into();
    if !n.is_positive() {
        return Err(Error::Domain(format!("cannot factorize {n}; need n >= 1")));
    }
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();
    let mut d = 2u32;
    while d <= TRIAL_DIVISION_LIMIT && BigInt::from(d) * d <= n {
        while (&n % d).is_zero() {
            n /= d;
            *found.entry(BigInt::from(d)).or_default() += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        split_into(n, &mut found);
    }
    Ok(Factorization {
        factors: found.into_iter().collect(),
    })
}

fn split_into(n: BigInt, found: &mut BTreeMap<BigInt, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(n.clone()) {
        *found.entry(n).or_default() += 1;
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_into(r.clone(), found);
        split_into(r, found);
        return;
    }
    let d = pollard_rho(&n);
    split_into(&n / &d, found);
    split_into(d, found);
}

/// Nontrivial factor of an odd composite `n` that is not a perfect square.
fn pollard_rho(n: &BigInt) -> BigInt {
    for c in 1u32.. {
        let step = |x: &BigInt| (x * x + c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        loop {
            x = step(&x);
            y = step(&step(&y));
            let d = (&x - &y).abs().gcd(n);
            if d.is_one() {
                continue;
            }
            if &d != n {
                return d;
            }
            break;
        }
    }
    unreachable!("Pollard rho seed schedule exhausted")
}

/// Smallest generator of `(Z/pZ)*` for an odd prime `p`.
pub fn primitive_root(p: impl Into<BigInt>) -> Result<BigInt> {
    let p = p.into();
    if !(p.is_odd() && is_prime(p.clone())) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let order = &p - 1u32;
    let exponents: Vec<BigInt> = factorize(order.clone())?
        .factors()
        .iter()
        .map(|(q, _)| &order / q)
        .collect();
    let mut g = BigInt::from(2);
    while g < p {
        if exponents.iter().all(|e| !g.modpow(e, &p).is_one()) {
            return Ok(g);
        }
        g += 1u32;
    }
    unreachable!("every odd prime has a primitive root")
}
