//! Exact arithmetic in `Z[ω]` and `Q(ω)`, prime splitting in `Q(√-3)`,
//! cubic residue symbols and the normalised 3-adic valuation.
//!
//! `ω` is the primitive cube root of unity with `ω² = -1 - ω`. An element
//! `a + bω` of `Z[ω]` is *primary* when it is congruent to 1 modulo `3`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, inv_mod, is_prime, mul_mod, pow_mod, reduce_i64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EisensteinError {
    NotCoprimeToThree,
    NotCoprime,
    NotPrime(u64),
    /// The modulus norm does not fit a machine word, so it cannot be factored here.
    TooLarge,
}

impl fmt::Display for EisensteinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EisensteinError::NotCoprimeToThree => f.write_str("element is not coprime to 3"),
            EisensteinError::NotCoprime => f.write_str("arguments share a nonunit factor"),
            EisensteinError::NotPrime(p) => write!(f, "{p} is not prime"),
            EisensteinError::TooLarge => f.write_str("modulus norm exceeds 64 bits"),
        }
    }
}

impl core::error::Error for EisensteinError {}

/// An element `a + bω` of `Z[ω]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        EisensteinInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisensteinInt::new(1, 0)
    }

    pub fn omega() -> Self {
        EisensteinInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a² - ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: `(a - b) - bω`.
    pub fn conj(&self) -> Self {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// `x + conj(x) = 2a - b`.
    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.a - &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The six units `1, -1, ω, -ω, ω², -ω²`.
    pub fn units() -> [EisensteinInt; 6] {
        [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(0, 1),
            EisensteinInt::new(0, -1),
            EisensteinInt::new(-1, -1),
            EisensteinInt::new(1, 1),
        ]
    }

    /// Congruent to 1 modulo `3`.
    pub fn is_primary(&self) -> bool {
        let three = BigInt::from(3);
        (&self.a - 1i32).is_multiple_of(&three) && self.b.is_multiple_of(&three)
    }

    /// The unique associate congruent to 1 modulo `3`.
    pub fn primary_associate(&self) -> Result<EisensteinInt, EisensteinError> {
        if (self.norm() % 3i32).is_zero() {
            return Err(EisensteinError::NotCoprimeToThree);
        }
        EisensteinInt::units()
            .into_iter()
            .map(|u| &u * self)
            .find(EisensteinInt::is_primary)
            .ok_or(EisensteinError::NotCoprimeToThree)
    }

    /// `self / d` when the quotient lies in `Z[ω]`.
    pub fn div_exact(&self, d: &EisensteinInt) -> Option<EisensteinInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        if num.a.is_multiple_of(&n) && num.b.is_multiple_of(&n) {
            Some(EisensteinInt { a: num.a / &n, b: num.b / &n })
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u32) -> EisensteinInt {
        let mut base = self.clone();
        let mut acc = EisensteinInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue modulo `p` under `ω ↦ root`.
    fn residue(&self, root: u64, p: u64) -> u64 {
        let a = big_mod(&self.a, p);
        let b = big_mod(&self.b, p);
        (a + mul_mod(b, root, p)) % p
    }
}

pub(crate) fn big_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap_or(0)
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}ω", self.a, -&self.b)
        } else {
            write!(f, "{}+{}ω", self.a, self.b)
        }
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &o.b;
        EisensteinInt {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }
}

impl Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: EisensteinInt) -> EisensteinInt {
        &self * &o
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: EisensteinInt) -> EisensteinInt {
        &self + &o
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: EisensteinInt) -> EisensteinInt {
        &self - &o
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -self.a, b: -self.b }
    }
}

/// A cube root of unity `ω^k`, stored by its exponent `k ∈ {0, 1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mu3(u8);

impl Mu3 {
    pub const ONE: Mu3 = Mu3(0);
    pub const OMEGA: Mu3 = Mu3(1);
    pub const OMEGA2: Mu3 = Mu3(2);

    pub fn from_exponent(k: i64) -> Mu3 {
        Mu3(k.rem_euclid(3) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Mu3 {
        Mu3((3 - self.0) % 3)
    }

    pub fn pow(self, e: u64) -> Mu3 {
        Mu3(((self.0 as u64 * (e % 3)) % 3) as u8)
    }

    pub fn to_eisenstein(self) -> EisensteinInt {
        match self.0 {
            0 => EisensteinInt::new(1, 0),
            1 => EisensteinInt::new(0, 1),
            _ => EisensteinInt::new(-1, -1),
        }
    }
}

impl Mul for Mu3 {
    type Output = Mu3;
    fn mul(self, o: Mu3) -> Mu3 {
        Mu3((self.0 + o.0) % 3)
    }
}

impl fmt::Display for Mu3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "ω", "ω²"][self.0 as usize])
    }
}

/// Decomposition of a rational prime in `Z[ω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitType {
    /// `p = π·conj(π)` with `π` primary and nonnegative `ω`-coordinate.
    Split(EisensteinInt),
    Inert,
    Ramified,
}

/// Machine-word data for a split prime: the chosen primary generator
/// `c + dω` (with `d > 0`) and the image `r` of `ω` in `Z[ω]/π ≅ F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPrime {
    pub p: u64,
    pub c: i64,
    pub d: i64,
    pub omega_root: u64,
}

impl SplitPrime {
    pub fn generator(&self) -> EisensteinInt {
        EisensteinInt::new(self.c, self.d)
    }

    /// `(a/π)₃` for a rational integer `a`; `None` when `p | a`.
    pub fn rational_symbol(&self, a: u64) -> Option<Mu3> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let x = pow_mod(a, (self.p - 1) / 3, self.p);
        let r = self.omega_root;
        if x == 1 {
            Some(Mu3::ONE)
        } else if x == r {
            Some(Mu3::OMEGA)
        } else {
            debug_assert_eq!(x, mul_mod(r, r, self.p));
            Some(Mu3::OMEGA2)
        }
    }
}

fn primary_small(c: i64, d: i64) -> (i64, i64) {
    let units = [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, 1)];
    for (ua, ub) in units {
        // (ua + ub ω)(c + d ω)
        let a = ua * c - ub * d;
        let b = ua * d + ub * c - ub * d;
        if (a - 1).rem_euclid(3) == 0 && b.rem_euclid(3) == 0 {
            return (a, b);
        }
    }
    unreachable!("norm coprime to 3 always has a primary associate")
}

/// Primary generator of a prime above `p ≡ 1 (mod 3)`, via Cornacchia on
/// `x² + 3y² = p`.
pub fn split_prime_data(p: u64) -> Option<SplitPrime> {
    if p % 3 != 1 || !is_prime(p) {
        return None;
    }
    // A primitive cube root of unity z gives √-3 = 2z + 1.
    let z = (2..p)
        .map(|g| pow_mod(g, (p - 1) / 3, p))
        .find(|&z| z != 1)?;
    let mut s = (2 * z + 1) % p;
    if 2 * s < p {
        s = p - s;
    }
    let limit = arith::isqrt(p);
    let (mut r0, mut r1) = (p, s);
    while r1 > limit {
        (r0, r1) = (r1, r0 % r1);
    }
    let _ = r0;
    let x = r1;
    let rest = p - x * x;
    let y = arith::isqrt(rest / 3);
    if rest % 3 != 0 || 3 * y * y != rest {
        return None;
    }
    // x + y√-3 = (x + y) + 2yω
    let (mut c, mut d) = primary_small((x + y) as i64, 2 * y as i64);
    if d < 0 {
        // conjugate of c + dω is (c - d) - dω, again primary
        (c, d) = (c - d, -d);
    }
    let dinv = inv_mod(reduce_i64(d, p), p)?;
    let omega_root = mul_mod(reduce_i64(-c, p), dinv, p);
    Some(SplitPrime { p, c, d, omega_root })
}

pub fn split_prime(p: u64) -> Result<SplitType, EisensteinError> {
    if !is_prime(p) {
        return Err(EisensteinError::NotPrime(p));
    }
    Ok(match p % 3 {
        0 => SplitType::Ramified,
        2 => SplitType::Inert,
        _ => {
            let sp = split_prime_data(p).expect("p ≡ 1 mod 3 splits");
            SplitType::Split(sp.generator())
        }
    })
}

// (a/π)₃ for π of prime norm p.
fn symbol_mod_split(a: &EisensteinInt, pi: &EisensteinInt, p: u64) -> Result<Mu3, EisensteinError> {
    let c = big_mod(&pi.a, p);
    let d = big_mod(&pi.b, p);
    let dinv = inv_mod(d, p).ok_or(EisensteinError::NotCoprime)?;
    let root = mul_mod((p - c) % p, dinv, p);
    let x = a.residue(root, p);
    if x == 0 {
        return Err(EisensteinError::NotCoprime);
    }
    let y = pow_mod(x, (p - 1) / 3, p);
    if y == 1 {
        Ok(Mu3::ONE)
    } else if y == root {
        Ok(Mu3::OMEGA)
    } else {
        Ok(Mu3::OMEGA2)
    }
}

fn mul_mod_q(x: (u64, u64), y: (u64, u64), q: u64) -> (u64, u64) {
    let ac = mul_mod(x.0, y.0, q);
    let bd = mul_mod(x.1, y.1, q);
    let ad = mul_mod(x.0, y.1, q);
    let bc = mul_mod(x.1, y.0, q);
    ((ac + q - bd) % q, ((ad + bc) % q + q - bd) % q)
}

// (a/q)₃ for an inert rational prime q; the residue field is F_{q²}.
fn symbol_mod_inert(a: &EisensteinInt, q: u64) -> Result<Mu3, EisensteinError> {
    let base = (big_mod(&a.a, q), big_mod(&a.b, q));
    if base == (0, 0) {
        return Err(EisensteinError::NotCoprime);
    }
    let mut e = (q * q - 1) / 3;
    let mut b = base;
    let mut acc = (1u64, 0u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_q(acc, b, q);
        }
        b = mul_mod_q(b, b, q);
        e >>= 1;
    }
    match acc {
        (1, 0) => Ok(Mu3::ONE),
        (0, 1) => Ok(Mu3::OMEGA),
        _ => {
            debug_assert_eq!(acc, (q - 1, q - 1));
            Ok(Mu3::OMEGA2)
        }
    }
}

/// Cubic residue symbol `(a/m)₃`, extended multiplicatively over the prime
/// factorisation of `m`. Units `m` give 1.
pub fn cubic_symbol(a: &EisensteinInt, m: &EisensteinInt) -> Result<Mu3, EisensteinError> {
    let norm = m.norm();
    if (&norm % 3i32).is_zero() {
        return Err(EisensteinError::NotCoprime);
    }
    let n = norm.to_u64().ok_or(EisensteinError::TooLarge)?;
    let mut result = Mu3::ONE;
    let mut rest = m.clone();
    for (p, e) in arith::factorize(n) {
        if p % 3 == 2 {
            let q = EisensteinInt::new(p, 0);
            for _ in 0..e / 2 {
                rest = rest.div_exact(&q).expect("inert prime divides");
            }
            result = result * symbol_mod_inert(a, p)?.pow((e / 2) as u64);
            continue;
        }
        let sp = split_prime_data(p).expect("p ≡ 1 mod 3 splits");
        for pi in [sp.generator(), sp.generator().conj()] {
            let mut k = 0u64;
            while let Some(qt) = rest.div_exact(&pi) {
                rest = qt;
                k += 1;
            }
            if k > 0 {
                result = result * symbol_mod_split(a, &pi, p)?.pow(k);
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok(result)
}

/// An element `re + omc·ω` of `Q(ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QOmega {
    pub re: BigRational,
    pub omc: BigRational,
}

impl QOmega {
    pub fn new(re: BigRational, omc: BigRational) -> Self {
        QOmega { re, omc }
    }

    pub fn zero() -> Self {
        QOmega::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        QOmega::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        QOmega::new(q, BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QOmega::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.omc.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.omc.is_zero()
    }

    pub fn conj(&self) -> Self {
        QOmega::new(&self.re - &self.omc, -&self.omc)
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.omc + &self.omc * &self.omc
    }

    pub fn inv(&self) -> Option<QOmega> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QOmega::new(c.re / &n, c.omc / n))
    }

    /// Real and imaginary parts, using `ω = -1/2 + (√3/2) i`.
    pub fn to_complex(&self) -> (f64, f64) {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let omc = self.omc.to_f64().unwrap_or(f64::NAN);
        (re - omc / 2.0, omc * libm::sqrt(3.0) / 2.0)
    }
}

impl From<&EisensteinInt> for QOmega {
    fn from(x: &EisensteinInt) -> QOmega {
        QOmega::new(
            BigRational::from_integer(x.a.clone()),
            BigRational::from_integer(x.b.clone()),
        )
    }
}

impl From<Mu3> for QOmega {
    fn from(z: Mu3) -> QOmega {
        QOmega::from(&z.to_eisenstein())
    }
}

impl<'a> Add<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn add(self, o: &QOmega) -> QOmega {
        QOmega::new(&self.re + &o.re, &self.omc + &o.omc)
    }
}

impl<'a> Sub<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn sub(self, o: &QOmega) -> QOmega {
        QOmega::new(&self.re - &o.re, &self.omc - &o.omc)
    }
}

impl<'a> Mul<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn mul(self, o: &QOmega) -> QOmega {
        let bd = &self.omc * &o.omc;
        QOmega::new(
            &self.re * &o.re - &bd,
            &self.re * &o.omc + &self.omc * &o.re - bd,
        )
    }
}

impl Add for QOmega {
    type Output = QOmega;
    fn add(self, o: QOmega) -> QOmega {
        &self + &o
    }
}

impl Sub for QOmega {
    type Output = QOmega;
    fn sub(self, o: QOmega) -> QOmega {
        &self - &o
    }
}

impl Mul for QOmega {
    type Output = QOmega;
    fn mul(self, o: QOmega) -> QOmega {
        &self * &o
    }
}

impl Neg for QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega::new(-self.re, -self.omc)
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.omc.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})ω", self.re, self.omc)
        }
    }
}

/// A 3-adic valuation, measured in sixths, or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val6 {
    Finite(i64),
    Infinite,
}

impl Val6 {
    pub const ZERO: Val6 = Val6::Finite(0);

    pub fn from_sixths(s: i64) -> Val6 {
        Val6::Finite(s)
    }

    pub fn integer(n: i64) -> Val6 {
        Val6::Finite(6 * n)
    }

    /// `num/den` with `den ∈ {1, 2, 3, 6}`.
    pub fn ratio(num: i64, den: i64) -> Val6 {
        assert!(den > 0 && 6 % den == 0, "denominator must divide 6");
        Val6::Finite(num * (6 / den))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val6::Infinite)
    }

    pub fn sixths(self) -> Option<i64> {
        match self {
            Val6::Finite(s) => Some(s),
            Val6::Infinite => None,
        }
    }

    /// Reduced `(numerator, denominator)`; `None` for `+∞`.
    pub fn as_fraction(self) -> Option<(i64, i64)> {
        self.sixths().map(|s| {
            let g = s.gcd(&6);
            (s / g, 6 / g)
        })
    }
}

impl Add for Val6 {
    type Output = Val6;
    fn add(self, o: Val6) -> Val6 {
        match (self, o) {
            (Val6::Finite(a), Val6::Finite(b)) => Val6::Finite(a + b),
            _ => Val6::Infinite,
        }
    }
}

impl Sub for Val6 {
    type Output = Val6;
    /// Only meaningful with a finite right-hand side.
    fn sub(self, o: Val6) -> Val6 {
        match (self, o) {
            (Val6::Finite(a), Val6::Finite(b)) => Val6::Finite(a - b),
            (Val6::Infinite, _) => Val6::Infinite,
            (_, Val6::Infinite) => panic!("cannot subtract an infinite valuation"),
        }
    }
}

impl Ord for Val6 {
    fn cmp(&self, o: &Val6) -> Ordering {
        match (self, o) {
            (Val6::Finite(a), Val6::Finite(b)) => a.cmp(b),
            (Val6::Finite(_), Val6::Infinite) => Ordering::Less,
            (Val6::Infinite, Val6::Finite(_)) => Ordering::Greater,
            (Val6::Infinite, Val6::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Val6 {
    fn partial_cmp(&self, o: &Val6) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Val6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fraction() {
            None => f.write_str("inf"),
            Some((n, 1)) => write!(f, "{n}"),
            Some((n, d)) => write!(f, "{n}/{d}"),
        }
    }
}

fn v3_int(x: &BigInt) -> i64 {
    debug_assert!(!x.is_zero());
    let three = BigInt::from(3);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&three);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Ordinary 3-adic valuation of a rational.
pub fn ord3_rational(q: &BigRational) -> Val6 {
    if q.is_zero() {
        return Val6::Infinite;
    }
    Val6::integer(v3_int(q.numer()) - v3_int(q.denom()))
}

/// Normalised 3-adic valuation on `Q(ω)` with `ord₃(3) = 1`, so
/// `ord₃(1 - ω) = 1/2`. Since `3` is totally ramified, `ord₃(x) = ord₃(N x) / 2`.
pub fn ord3(x: &QOmega) -> Val6 {
    match ord3_rational(&x.norm()) {
        Val6::Finite(s) => Val6::Finite(s / 2),
        Val6::Infinite => Val6::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn eis(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(eis(1, 3).norm(), BigInt::from(7));
        assert_eq!(eis(0, 0).norm(), BigInt::from(0));
        assert_eq!(eis(3, 0).norm(), BigInt::from(9));
    }

    #[test]
    fn conj_and_norm_agree() {
        let x = eis(5, -7);
        let p = &x * &x.conj();
        assert_eq!(p.b, BigInt::from(0));
        assert_eq!(p.a, x.norm());
    }

    #[test]
    fn primary_associate_by_enumeration() {
        assert_eq!(eis(-1, -3).primary_associate().unwrap(), eis(1, 3));
        assert_eq!(eis(1, 0).primary_associate().unwrap(), eis(1, 0));
        // Enumerate associates of -2 and keep the one ≡ 1 mod 3.
        let expected: Vec<_> = EisensteinInt::units()
            .into_iter()
            .map(|u| &u * &eis(-2, 0))
            .filter(|x| {
                let r = |v: &BigInt| v.mod_floor(&BigInt::from(3));
                r(&x.a) == BigInt::from(1) && r(&x.b) == BigInt::from(0)
            })
            .collect();
        assert_eq!(expected.len(), 1);
        assert_eq!(eis(-2, 0).primary_associate().unwrap(), expected[0]);
        assert_eq!(expected[0], eis(-2, 0).primary_associate().unwrap());
        assert_eq!(
            eis(1, -1).primary_associate(),
            Err(EisensteinError::NotCoprimeToThree)
        );
    }

    #[test]
    fn split_prime_examples() {
        assert_eq!(split_prime(7).unwrap(), SplitType::Split(eis(1, 3)));
        assert_eq!(split_prime(5).unwrap(), SplitType::Inert);
        assert_eq!(split_prime(3).unwrap(), SplitType::Ramified);
        assert_eq!(split_prime(9), Err(EisensteinError::NotPrime(9)));
        // 3 = -ω²(1 - ω)²
        let l = eis(1, -1);
        let w2 = eis(-1, -1);
        assert_eq!(-(&w2 * &(&l * &l)), eis(3, 0));
    }

    #[test]
    fn symbol_of_two_mod_pi7() {
        assert_eq!(cubic_symbol(&eis(2, 0), &eis(1, 3)).unwrap(), Mu3::OMEGA2);
    }

    #[test]
    fn symbol_of_rationals_at_inert_primes_is_trivial() {
        // 2^((25-1)/3) = 2^8 = 256 ≡ 1 mod 5
        assert_eq!(pow_mod(2, 8, 5), 1);
        assert_eq!(cubic_symbol(&eis(2, 0), &eis(5, 0)).unwrap(), Mu3::ONE);
        for q in [2u64, 5, 11, 17, 23] {
            for a in [2i64, 3, 7, 10] {
                if a as u64 % q != 0 {
                    assert_eq!(cubic_symbol(&eis(a, 0), &eis(q as i64, 0)).unwrap(), Mu3::ONE);
                }
            }
        }
    }

    #[test]
    fn symbol_errors() {
        assert_eq!(cubic_symbol(&eis(7, 0), &eis(1, 3)), Err(EisensteinError::NotCoprime));
        assert_eq!(cubic_symbol(&eis(2, 0), &eis(3, 0)), Err(EisensteinError::NotCoprime));
        assert_eq!(cubic_symbol(&eis(5, 1), &eis(1, 0)).unwrap(), Mu3::ONE);
    }

    #[test]
    fn ord3_examples() {
        assert_eq!(ord3(&QOmega::from_ratio(9, 2)), Val6::integer(2));
        assert_eq!(ord3(&QOmega::from(&eis(1, -1))), Val6::ratio(1, 2));
        assert_eq!(ord3(&QOmega::zero()), Val6::Infinite);
        assert_eq!(ord3(&QOmega::from_ratio(5, 27)), Val6::integer(-3));
    }

    #[test]
    fn val6_display() {
        assert_eq!(alloc::format!("{}", Val6::ratio(-5, 6)), "-5/6");
        assert_eq!(alloc::format!("{}", Val6::from_sixths(3)), "1/2");
        assert_eq!(alloc::format!("{}", Val6::integer(2)), "2");
        assert_eq!(alloc::format!("{}", Val6::Infinite), "inf");
        assert!(Val6::Infinite > Val6::integer(100));
    }
}
