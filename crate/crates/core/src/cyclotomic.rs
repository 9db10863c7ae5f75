//! Exact arithmetic in the cyclotomic integers `Z[ζ_L]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(L)-1}` after
//! reduction modulo the `L`-th cyclotomic polynomial `Φ_L`, so every element
//! has exactly one representation and "is the rational integer `n`" is a
//! coefficient test.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact division of integer polynomials (low degree first) by a monic divisor.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of `Φ_L`, lowest degree first. Cached per level.
pub fn cyclotomic_polynomial(level: u32) -> Arc<[i64]> {
    assert!(level >= 1, "cyclotomic level must be positive");
    if let Some(p) = poly_cache().read().unwrap().get(&level) {
        return p.clone();
    }
    // x^L - 1 divided by Φ_d for every proper divisor d of L.
    let mut num = vec![0i64; level as usize + 1];
    num[0] = -1;
    num[level as usize] = 1;
    for d in 1..level {
        if level.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = div_exact_monic(&num, &phi_d);
        }
    }
    let poly: Arc<[i64]> = num.into();
    poly_cache().write().unwrap().insert(level, poly.clone());
    poly
}

/// Reduce a polynomial in `ζ` (lowest degree first) modulo `Φ_L`.
fn reduce(level: u32, mut coeffs: Vec<i64>) -> Vec<i64> {
    let phi = cyclotomic_polynomial(level);
    let deg = phi.len() - 1;
    for i in (deg..coeffs.len()).rev() {
        let c = coeffs[i];
        if c != 0 {
            for (j, &p) in phi.iter().enumerate() {
                coeffs[i - deg + j] -= c * p;
            }
        }
    }
    coeffs.resize(deg, 0);
    coeffs
}

/// An element of `Z[ζ_L]` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicInt {
    level: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(level: u32) -> Self {
        Self::from_int(level, 0)
    }

    pub fn one(level: u32) -> Self {
        Self::from_int(level, 1)
    }

    pub fn from_int(level: u32, n: i64) -> Self {
        let deg = cyclotomic_polynomial(level).len() - 1;
        let mut coeffs = vec![0; deg];
        coeffs[0] = n;
        CyclotomicInt { level, coeffs }
    }

    /// `ζ_L^k` for any integer `k`.
    pub fn zeta_pow(level: u32, k: i64) -> Self {
        let e = k.rem_euclid(level as i64) as usize;
        let mut basis = vec![0; level as usize];
        basis[e] = 1;
        Self::from_power_basis(level, &basis)
    }

    /// Build from coefficients of `1, ζ, ζ², …` of any length (not
    /// necessarily reduced).
    pub fn from_power_basis(level: u32, coeffs: &[i64]) -> Self {
        let mut v = coeffs.to_vec();
        if v.is_empty() {
            v.push(0);
        }
        CyclotomicInt { level, coeffs: reduce(level, v) }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Canonical coefficients, length `φ(L)`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `Some(n)` iff the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Complex conjugation, the Galois automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let l = self.level as usize;
        let mut basis = vec![0i64; l];
        for (i, &c) in self.coeffs.iter().enumerate() {
            basis[(l - i) % l] += c;
        }
        Self::from_power_basis(self.level, &basis)
    }

    /// View at a multiple level `L' = t·L` via `ζ_L = ζ_{L'}^t`.
    pub fn lift_to(&self, level: u32) -> Self {
        assert!(level.is_multiple_of(self.level), "target level must be a multiple");
        let t = (level / self.level) as usize;
        let mut basis = vec![0i64; level as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            basis[i * t] += c;
        }
        Self::from_power_basis(level, &basis)
    }

    fn check_level(&self, other: &Self) {
        assert_eq!(self.level, other.level, "cyclotomic level mismatch");
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt(L={}, {:?})", self.level, self.coeffs)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "z")?,
                (1, _) => write!(f, "{a}z")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{a}z^{i}")?,
            }
            first = false;
        }
        write!(f, " (z = zeta_{})", self.level)
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_level(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInt { level: self.level, coeffs }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_level(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicInt { level: self.level, coeffs }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_level(rhs);
        let mut prod = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CyclotomicInt { level: self.level, coeffs: reduce(self.level, prod) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $m(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Fast integer test for an element given in the power basis of `Z[C_L]`
/// (`L ∈ {2, 3, 4}` handled without allocation).
pub(crate) fn power_basis_integer(level: u32, c: &[i64]) -> Option<i64> {
    match level {
        1 => Some(c[0]),
        2 => Some(c[0] - c[1]),
        3 => (c[1] == c[2]).then(|| c[0] - c[2]),
        4 => (c[1] == c[3]).then(|| c[0] - c[2]),
        _ => CyclotomicInt::from_power_basis(level, c).as_integer(),
    }
}
