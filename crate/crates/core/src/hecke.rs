//! The Grössencharacter `ψ_λ` of `x³ + y³ = λ` and the Dirichlet
//! coefficients `a_n` of its L-series.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{self, cube_free_part};
use crate::eisenstein::{self, split_prime_data, EisensteinInt, Mu3, SplitPrime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeError {
    BadPrime { lambda: u64, p: u64 },
    NotSplit(u64),
    Overflow { n: u64 },
    Empty,
}

impl fmt::Display for HeckeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeError::BadPrime { lambda, p } => write!(f, "{p} divides 3·{lambda}"),
            HeckeError::NotSplit(p) => write!(f, "{p} is not a prime ≡ 1 mod 3"),
            HeckeError::Overflow { n } => write!(f, "a_{n} does not fit in 64 bits"),
            HeckeError::Empty => f.write_str("n_max must be at least 1"),
        }
    }
}

impl core::error::Error for HeckeError {}

// ω^k · (c + dω), k = 0, 1, 2
fn rotate(c: i64, d: i64, k: u8) -> (i64, i64) {
    match k % 3 {
        0 => (c, d),
        1 => (-d, c - d),
        _ => (d - c, -c),
    }
}

fn symbol_of(lambda: u64, sp: &SplitPrime) -> Mu3 {
    sp.rational_symbol(lambda).expect("p does not divide lambda")
}

/// `ψ_λ(𝔭) = conj((λ/π)₃)·π` for the primary generator `π` of `𝔭 | p`.
pub fn psi_at_split_prime(lambda: u64, p: u64) -> Result<EisensteinInt, HeckeError> {
    let lambda = cube_free_part(lambda);
    if p == 3 || (p != 0 && lambda % p == 0) {
        return Err(HeckeError::BadPrime { lambda, p });
    }
    let sp = split_prime_data(p).ok_or(HeckeError::NotSplit(p))?;
    let k = symbol_of(lambda, &sp).conj().exponent();
    let (a, b) = rotate(sp.c, sp.d, k);
    Ok(EisensteinInt::new(a, b))
}

fn a_p_split(lambda: u64, sp: &SplitPrime) -> i64 {
    let k = symbol_of(lambda, sp).conj().exponent();
    let (a, b) = rotate(sp.c, sp.d, k);
    2 * a - b
}

/// `a_p` of `x³ + y³ = λ`: the trace of `ψ_λ(𝔭)` at good split `p`, zero
/// at inert and at bad primes.
pub fn a_p(lambda: u64, p: u64) -> i64 {
    let lambda = cube_free_part(lambda);
    if p == 3 || lambda % p == 0 || p % 3 != 1 {
        return 0;
    }
    match split_prime_data(p) {
        Some(sp) => a_p_split(lambda, &sp),
        None => 0,
    }
}

/// Same value as [`a_p`], computed entirely in `Z[ω]` through the general
/// cubic residue symbol. Slow; kept as a cross-check.
pub fn a_p_reference(lambda: u64, p: u64) -> i64 {
    let lambda = cube_free_part(lambda);
    if p == 3 || lambda % p == 0 {
        return 0;
    }
    let pi = match eisenstein::split_prime(p) {
        Ok(eisenstein::SplitType::Split(pi)) => pi,
        _ => return 0,
    };
    let chi = eisenstein::cubic_symbol(&EisensteinInt::new(lambda, 0), &pi).expect("coprime");
    let psi = chi.conj().to_eisenstein() * pi;
    psi.trace().to_i64().expect("|a_p| <= 2 sqrt p")
}

/// `a_1 .. a_{n_max}` for one twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub lambda: u64,
    pub n_max: u64,
    a: Vec<i64>,
}

impl CoefficientTable {
    /// Rebuilds a table from stored coefficients `a_1 .. a_{n_max}`.
    pub fn from_raw(lambda: u64, a: Vec<i64>) -> Result<Self, HeckeError> {
        if a.is_empty() {
            return Err(HeckeError::Empty);
        }
        Ok(CoefficientTable { lambda, n_max: a.len() as u64, a })
    }

    /// `a_n` for `1 ≤ n ≤ n_max`.
    pub fn get(&self, n: u64) -> i64 {
        self.a[(n - 1) as usize]
    }

    /// `a_1 .. a_{n_max}` in order.
    pub fn as_slice(&self) -> &[i64] {
        &self.a
    }
}

fn prime_coefficients(lambda: u64, primes: &[u64]) -> Vec<i64> {
    let one = |&p: &u64| a_p(lambda, p);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        primes.par_iter().with_min_len(256).map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        primes.iter().map(one).collect()
    }
}

/// Coefficients `a_n`, `n ≤ n_max`, by the multiplicative sieve.
pub fn coefficients(lambda: u64, n_max: u64) -> Result<CoefficientTable, HeckeError> {
    if n_max == 0 {
        return Err(HeckeError::Empty);
    }
    let lam = cube_free_part(lambda);
    let n = n_max as usize;
    let spf = arith::spf_sieve(n);
    let primes: Vec<u64> = (2..=n).filter(|&i| spf[i] as usize == i).map(|i| i as u64).collect();
    let ap = prime_coefficients(lam, &primes);

    let mut a = vec![0i64; n + 1];
    a[1] = 1;
    for (&p, &v) in primes.iter().zip(&ap) {
        a[p as usize] = v;
    }
    let overflow = |i: usize| HeckeError::Overflow { n: i as u64 };
    for i in 4..=n {
        let p = spf[i] as usize;
        if p == i {
            continue;
        }
        let mut m = i / p;
        let mut pk = p;
        while m % p == 0 {
            m /= p;
            pk *= p;
        }
        a[i] = if m == 1 {
            // prime power p^k, k ≥ 2
            let prev = a[i / p];
            let prev2 = a[i / p / p];
            let bad = p == 3 || lam % p as u64 == 0;
            if bad {
                0
            } else {
                a[p].checked_mul(prev)
                    .and_then(|x| x.checked_sub((p as i64).checked_mul(prev2)?))
                    .ok_or_else(|| overflow(i))?
            }
        } else {
            a[pk].checked_mul(a[m]).ok_or_else(|| overflow(i))?
        };
    }
    a.remove(0);
    Ok(CoefficientTable { lambda, n_max, a })
}

/// `p + 1 - #C_λ(F_p)` by enumerating the projective points of
/// `x³ + y³ = λz³`. Meant for small good `p`.
pub fn a_p_point_count(lambda: u64, p: u64) -> i64 {
    let l = lambda % p;
    let cubes: Vec<u64> = (0..p).map(|x| x * x % p * x % p).collect();
    let mut count = 0u64;
    // z = 0: x³ = -y³, normalise y = 1
    count += cubes.iter().filter(|&&c| (c + 1) % p == 0).count() as u64;
    // z = 1
    let mut hist = vec![0u64; p as usize];
    for &c in &cubes {
        hist[c as usize] += 1;
    }
    for &cx in &cubes {
        let need = (l + p - cx) % p;
        count += hist[need as usize];
    }
    p as i64 + 1 - count as i64
}

/// Value of `ψ_λ` on a principal ideal `(α)`, `α` primary and coprime to
/// `3λ`, extended multiplicatively from the prime ideals.
pub fn psi_primary(lambda: u64, alpha: &EisensteinInt) -> Option<EisensteinInt> {
    if !alpha.is_primary() {
        return None;
    }
    let l = EisensteinInt::new(BigInt::from(cube_free_part(lambda)), 0);
    let chi = eisenstein::cubic_symbol(&l, alpha).ok()?;
    Some(chi.conj().to_eisenstein() * alpha.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    #[test]
    fn psi_examples() {
        let w2 = Mu3::OMEGA2.to_eisenstein();
        assert_eq!(psi_at_split_prime(3, 7).unwrap(), w2 * EisensteinInt::new(1, 3));
        assert_eq!(psi_at_split_prime(1, 7).unwrap(), EisensteinInt::new(1, 3));
        assert_eq!(psi_at_split_prime(21, 7), Err(HeckeError::BadPrime { lambda: 21, p: 7 }));
        assert_eq!(psi_at_split_prime(2, 5), Err(HeckeError::NotSplit(5)));
    }

    #[test]
    fn a_p_examples() {
        assert_eq!(a_p(3, 7), 5);
        assert_eq!(a_p(3, 5), 0);
        assert_eq!(a_p(1, 7), -1);
        assert_eq!(a_p_point_count(3, 7), 5);
        assert_eq!(a_p_point_count(1, 7), -1);
    }

    #[test]
    fn small_tables() {
        // a_4 = a_2² - 2 = -2 at the inert good prime 2
        let t = coefficients(3, 10).unwrap();
        assert_eq!(t.as_slice(), &[1, 0, 0, -2, 0, 0, 5, 0, 0, 0]);
        assert_eq!(coefficients(5, 1).unwrap().as_slice(), &[1]);
        let t = coefficients(1, 100).unwrap();
        assert_eq!(t.get(35), t.get(5) * t.get(7));
        assert_eq!(coefficients(2, 0), Err(HeckeError::Empty));
    }

    #[test]
    fn point_count_oracle() {
        for lambda in [1u64, 2, 3, 5, 7, 10, 21, 63, 150, 9 * 29 * 181] {
            for p in primes_up_to(200) {
                if p == 3 || lambda % p == 0 {
                    continue;
                }
                assert_eq!(a_p(lambda, p), a_p_point_count(lambda, p), "lambda={lambda} p={p}");
            }
        }
    }

    #[test]
    fn hasse_and_congruence() {
        let ps = primes_up_to(100_000);
        for lambda in [1u64, 2, 3, 7, 21, 150, 3 * 7 * 13] {
            for &p in &ps {
                if p == 3 || lambda % p == 0 {
                    assert_eq!(a_p(lambda, p), 0);
                    continue;
                }
                let a = a_p(lambda, p);
                assert!((a * a) as u64 <= 4 * p, "lambda={lambda} p={p}");
                assert_eq!((a - p as i64 - 1).rem_euclid(3), 0, "lambda={lambda} p={p}");
            }
        }
    }

    #[test]
    fn cube_part_is_invisible() {
        for lambda in [2u64, 3, 7, 10] {
            let t = coefficients(lambda, 2000).unwrap();
            let u = coefficients(lambda * 8, 2000).unwrap();
            let v = coefficients(lambda * 125, 2000).unwrap();
            assert_eq!(t.as_slice(), u.as_slice());
            assert_eq!(t.as_slice(), v.as_slice());
        }
    }

    #[test]
    fn reference_path_agrees() {
        for p in primes_up_to(3000) {
            for lambda in [2u64, 3, 6, 9, 17, 150] {
                assert_eq!(a_p(lambda, p), a_p_reference(lambda, p), "lambda={lambda} p={p}");
            }
        }
    }

    #[test]
    fn psi_is_multiplicative_on_primary_elements() {
        let a = EisensteinInt::new(1, 3); // 7
        let b = EisensteinInt::new(4, 3); // 13
        let ab = &a * &b;
        for lambda in [2u64, 3, 5] {
            let lhs = psi_primary(lambda, &ab).unwrap();
            let rhs = psi_primary(lambda, &a).unwrap() * psi_primary(lambda, &b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
