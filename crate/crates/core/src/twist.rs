//! Combinatorial invariants of a cube-free `λ`: its factorisation, the
//! split/inert counts, `t(λ)`, `d(λ)`, `Δ`, Hypothesis (H), the global
//! root number of `x³ + y³ = λ` and its rational torsion order.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, is_cube_mod};

pub use crate::arith::factorize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistError {
    Zero,
    NotCubeFree(u64),
}

impl fmt::Display for TwistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistError::Zero => f.write_str("lambda must be positive"),
            TwistError::NotCubeFree(l) => write!(f, "{l} is not cube-free"),
        }
    }
}

impl core::error::Error for TwistError {}

/// One prime divisor of `λ` with its residue data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    pub p: u64,
    pub exp: u32,
    /// `p mod 3`
    pub class3: u8,
    /// `p mod 9`
    pub class9: u8,
}

impl PrimeFactor {
    pub fn is_split(&self) -> bool {
        self.class3 == 1
    }

    pub fn is_inert(&self) -> bool {
        self.class3 == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistInvariants {
    pub lambda: u64,
    /// `ord₃ λ`
    pub e: u32,
    /// `λ = 3^e · D`
    pub d_part: u64,
    pub primes: Vec<PrimeFactor>,
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub t: i32,
    /// Split prime divisors modulo which 3 is not a cube.
    pub d: u32,
    /// `±rad(D)` normalised to `Δ ≡ 1 (mod 3)`.
    pub delta: i64,
    pub hypothesis_h: bool,
}

impl TwistInvariants {
    /// Prime divisors of `D` (everything except 3).
    pub fn d_primes(&self) -> impl Iterator<Item = &PrimeFactor> {
        self.primes.iter().filter(|f| f.p != 3)
    }

    pub fn rad_d(&self) -> u64 {
        self.delta.unsigned_abs()
    }

    pub fn all_primes_split(&self) -> bool {
        self.primes.iter().all(PrimeFactor::is_split)
    }
}

/// `t(λ)`: 1 if `λ ≡ ±1 (mod 9)`, -1 if `ord₃ λ = 1`, 0 otherwise.
pub fn t_invariant(lambda: u64, e: u32) -> i32 {
    let m = lambda % 9;
    if m == 1 || m == 8 {
        1
    } else if e == 1 {
        -1
    } else {
        0
    }
}

pub fn invariants(lambda: u64) -> Result<TwistInvariants, TwistError> {
    if lambda == 0 {
        return Err(TwistError::Zero);
    }
    let fac = factorize(lambda);
    if fac.iter().any(|&(_, e)| e >= 3) {
        return Err(TwistError::NotCubeFree(lambda));
    }
    let primes: Vec<PrimeFactor> = fac
        .iter()
        .map(|&(p, exp)| PrimeFactor { p, exp, class3: (p % 3) as u8, class9: (p % 9) as u8 })
        .collect();
    let e = arith::val3(lambda);
    let d_part = lambda / 3u64.pow(e);
    let r = primes.iter().filter(|f| f.is_inert()).count() as u32;
    let s = primes.iter().filter(|f| f.is_split()).count() as u32;
    let d = primes
        .iter()
        .filter(|f| f.is_split() && !is_cube_mod(3, f.p))
        .count() as u32;
    let rad: u64 = primes.iter().filter(|f| f.p != 3).map(|f| f.p).product();
    let delta = if rad % 3 == 1 { rad as i64 } else { -(rad as i64) };
    let mut inv = TwistInvariants {
        lambda,
        e,
        d_part,
        n: primes.len() as u32,
        primes,
        r,
        s,
        t: t_invariant(lambda, e),
        d,
        delta,
        hypothesis_h: false,
    };
    inv.hypothesis_h = hypothesis_h(&inv, false);
    Ok(inv)
}

/// Hypothesis (H): for each prime divisor `pᵢ ≡ 1 (mod 3)` of `λ`, every
/// other prime divisor `pⱼ` is a cube modulo `pᵢ`. The divisor 3 takes part
/// as a `pⱼ` only when `include_three` is set.
pub fn hypothesis_h(inv: &TwistInvariants, include_three: bool) -> bool {
    inv.primes.iter().filter(|f| f.is_split()).all(|pi| {
        inv.primes
            .iter()
            .filter(|pj| pj.p != pi.p && (include_three || pj.p != 3))
            .all(|pj| is_cube_mod(pj.p, pi.p))
    })
}

/// Global root number `(-1)^(r - t - 1)`.
pub fn root_number(inv: &TwistInvariants) -> i32 {
    if (inv.r as i32 - inv.t - 1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Local root numbers whose product is the global one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRootNumbers {
    pub infinity: i32,
    pub at_three: i32,
    /// `(p, (-3/p))` for every prime `p | D`.
    pub at_primes: Vec<(u64, i32)>,
}

impl LocalRootNumbers {
    pub fn product(&self) -> i32 {
        self.infinity * self.at_three * self.at_primes.iter().map(|&(_, e)| e).product::<i32>()
    }
}

pub fn local_root_numbers(inv: &TwistInvariants) -> LocalRootNumbers {
    let m = inv.lambda % 9;
    let at_three = if m == 1 || m == 8 || inv.e == 1 { -1 } else { 1 };
    LocalRootNumbers {
        infinity: -1,
        at_three,
        at_primes: inv
            .d_primes()
            .map(|f| (f.p, if f.is_split() { 1 } else { -1 }))
            .collect(),
    }
}

/// Order of the rational torsion subgroup of `x³ + y³ = λ`.
pub fn torsion_order(lambda: u64) -> u32 {
    match lambda {
        1 => 3,
        2 => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_three() {
        let inv = invariants(63).unwrap();
        assert_eq!((inv.e, inv.d_part, inv.n, inv.r, inv.s, inv.t, inv.delta), (2, 7, 2, 0, 1, 0, 7));
    }

    #[test]
    fn twenty_one() {
        let inv = invariants(21).unwrap();
        assert_eq!((inv.e, inv.t, inv.r, inv.s, inv.delta), (1, -1, 0, 1, 7));
    }

    #[test]
    fn one_fifty() {
        let inv = invariants(150).unwrap();
        assert_eq!((inv.e, inv.n, inv.r, inv.s, inv.t, inv.delta), (1, 3, 2, 0, -1, 10));
        assert!(inv.hypothesis_h);
    }

    #[test]
    fn not_cube_free() {
        assert_eq!(invariants(54), Err(TwistError::NotCubeFree(54)));
        assert_eq!(invariants(0), Err(TwistError::Zero));
    }

    #[test]
    fn hypothesis_h_examples() {
        // cubes mod 13 are {1, 5, 8, 12}; 7 is not one of them
        assert!(!invariants(3 * 7 * 13).unwrap().hypothesis_h);
        let inv = invariants(9 * 29 * 181).unwrap();
        assert_eq!(inv.hypothesis_h, crate::arith::pow_mod(29, 60, 181) == 1);
        assert_eq!((inv.s, inv.d), (1, 1));
        assert!(inv.hypothesis_h);
        assert!(!hypothesis_h(&inv, true));
    }

    #[test]
    fn root_numbers() {
        assert_eq!(root_number(&invariants(21).unwrap()), 1);
        assert_eq!(root_number(&invariants(63).unwrap()), -1);
        assert_eq!(root_number(&invariants(9).unwrap()), -1);
    }

    #[test]
    fn torsion() {
        assert_eq!(torsion_order(2), 2);
        assert_eq!(torsion_order(1), 3);
        assert_eq!(torsion_order(21), 1);
    }

    #[test]
    fn rational_points_on_fermat_cubic() {
        // projective search on X³ + Y³ = Z³ with small coordinates
        let mut pts = Vec::new();
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                for z in 0i64..=6 {
                    if (x, y, z) != (0, 0, 0)
                        && x * x * x + y * y * y == z * z * z
                        && num_integer::Integer::gcd(&num_integer::Integer::gcd(&x, &y), &z) == 1
                        && (z > 0 || x > 0)
                    {
                        pts.push((x, y, z));
                    }
                }
            }
        }
        assert_eq!(pts.len() as u32, torsion_order(1));
    }
}
