//! Averaged L-values `Φ_λ^{(χ)} = Σ_α χ(α)·L_S(ψ̄_{λ_α}, 1)/Ω` over the
//! cubic twists `λ_α = 3^e·D_α` sharing the prime support of `λ`, with
//! exact 3-adic valuation certificates for every term.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::dd::{Dd, DdComplex};
use crate::eisenstein::{ord3, split_prime_data, EisensteinInt, Mu3, QOmega, Val6};
use crate::hecke::{self, HeckeError};
use crate::lfunc::{self, LAlg, LOptions, LfuncError};
use crate::tate;
use crate::twist::{self, TwistInvariants};

#[derive(Clone, Debug, PartialEq)]
pub enum AveragingError {
    NotDivisibleByThree(u64),
    CharacterLength { expected: usize, got: usize },
    BadPrime { lambda: u64, p: u64 },
    Lfunc(LfuncError),
}

impl fmt::Display for AveragingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AveragingError::NotDivisibleByThree(l) => write!(f, "{l} is not divisible by 3"),
            AveragingError::CharacterLength { expected, got } => {
                write!(f, "character has {got} exponents, expected {expected}")
            }
            AveragingError::BadPrime { lambda, p } => write!(f, "{p} divides 3·{lambda}"),
            AveragingError::Lfunc(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for AveragingError {}

impl From<LfuncError> for AveragingError {
    fn from(e: LfuncError) -> Self {
        AveragingError::Lfunc(e)
    }
}

impl From<crate::twist::TwistError> for AveragingError {
    fn from(e: crate::twist::TwistError) -> Self {
        AveragingError::Lfunc(e.into())
    }
}

impl From<crate::tate::TateError> for AveragingError {
    fn from(e: crate::tate::TateError) -> Self {
        AveragingError::Lfunc(e.into())
    }
}

impl From<HeckeError> for AveragingError {
    fn from(e: HeckeError) -> Self {
        AveragingError::Lfunc(e.into())
    }
}

/// A point `α ∈ (Z/3)^{n-1}` with its twist `λ_α = 3^e·∏ pᵢ^{αᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistExponent {
    pub alpha: Vec<u8>,
    pub d_alpha: u64,
    pub lambda_alpha: u64,
}

impl TwistExponent {
    pub fn new(inv: &TwistInvariants, alpha: Vec<u8>) -> Self {
        let d_alpha = inv
            .d_primes()
            .zip(&alpha)
            .map(|(f, &a)| f.p.pow(a as u32))
            .product();
        TwistExponent { lambda_alpha: 3u64.pow(inv.e) * d_alpha, d_alpha, alpha }
    }
}

/// All `α ∈ {0,1,2}^k` in lexicographic order.
pub fn exponent_vectors(k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..3u8).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// `1 - ψ̄_{λ_α}(𝔭)/N𝔭` multiplied over the primes `𝔭 | p` (removing the
/// Euler factor at `p`), exactly.
///
/// Inert `p`: `ψ̄((p)) = -p`, giving `(p + 1)/p`. Split `p = π·π̄`: the
/// product of `(π - χ)/π` and its conjugate, `χ = (λ_α/π)₃`.
pub fn euler_factor(lambda_alpha: u64, p: u64) -> Result<QOmega, AveragingError> {
    Ok(euler_factor_parts(lambda_alpha, p)?.into_iter().fold(QOmega::one(), |acc, f| acc * f))
}

/// The one or two sub-factors making up [`euler_factor`].
pub fn euler_factor_parts(lambda_alpha: u64, p: u64) -> Result<Vec<QOmega>, AveragingError> {
    if p == 3 || lambda_alpha % p == 0 {
        return Err(AveragingError::BadPrime { lambda: lambda_alpha, p });
    }
    if p % 3 == 2 {
        return Ok(vec![QOmega::from_ratio(p as i64 + 1, p as i64)]);
    }
    let sp = split_prime_data(p).ok_or(AveragingError::BadPrime { lambda: lambda_alpha, p })?;
    let pi = sp.generator();
    let chi = sp.rational_symbol(lambda_alpha).expect("p does not divide lambda_alpha");
    let part = |g: &EisensteinInt, c: Mu3| {
        let num = QOmega::from(&(g - &c.to_eisenstein()));
        num * QOmega::from(g).inv().expect("nonzero")
    };
    Ok(vec![part(&pi, chi), part(&pi.conj(), chi.conj())])
}

/// `ord₃(Ω_{λ_α}/Ω)`: `-5/6` for `e = 1`, `-1/6` for `e = 2`.
pub fn period_offset(e: u32) -> Val6 {
    match e {
        1 => Val6::ratio(-5, 6),
        2 => Val6::ratio(-1, 6),
        _ => Val6::ratio(-1, 2),
    }
}

/// Lemma bound on `ord₃ Φ`: `n - 13/6` for `e = 1`, `n - 11/6` for `e = 2`.
pub fn phi_bound(n: u32, e: u32) -> Val6 {
    let n = Val6::integer(n as i64);
    if e == 1 {
        n - Val6::ratio(13, 6)
    } else {
        n - Val6::ratio(11, 6)
    }
}

#[derive(Clone, Debug)]
pub struct PhiTerm {
    pub alpha: TwistExponent,
    /// `None` when recognition failed.
    pub lalg: Option<LAlg>,
    pub euler: QOmega,
    pub val: Option<Val6>,
    /// `L_S(ψ̄_{λ_α}, 1)/Ω` from the L-series and tabulated `a_p`.
    pub numeric: Dd,
    /// The same from `L^alg`, the closed-form period and the symbol-based
    /// Euler factors.
    pub exact_numeric: Option<Dd>,
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub lambda: u64,
    pub chi: Vec<u8>,
    pub terms: Vec<PhiTerm>,
    pub min_val: Option<Val6>,
    pub bound: Val6,
    pub certified: bool,
    pub numeric_phi: DdComplex,
    pub numeric_consistent: bool,
    /// Exact `ord₃ Φ_λ^{(χ)}` when `λ` has a single prime besides 3 and 3
    /// is totally ramified in `Q(ω, ∛p)`; `None` otherwise.
    pub exact_val: Option<Val6>,
}

fn mu3_complex(k: u8) -> DdComplex {
    let half = Dd::from_f64(0.5);
    let s = Dd::from_f64(3.0).sqrt().mul_f64(0.5);
    match k % 3 {
        0 => DdComplex::real(Dd::ONE),
        1 => DdComplex::new(-half, s),
        _ => DdComplex::new(-half, -s),
    }
}

fn qomega_to_dd(x: &QOmega) -> Dd {
    // rational values only
    let r: BigRational = x.re.clone();
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    Dd::from_f64(num) / Dd::from_f64(den)
}

fn compute_term(
    inv: &TwistInvariants,
    omega: Dd,
    alpha: Vec<u8>,
    opts: &LOptions,
) -> Result<PhiTerm, AveragingError> {
    let tw = TwistExponent::new(inv, alpha);
    let sub = twist::invariants(tw.lambda_alpha)?;
    let conductor = tate::conductor(tw.lambda_alpha)?;
    let table = hecke::coefficients(tw.lambda_alpha, lfunc::coefficients_needed(conductor, opts.digits))?;
    let cv = lfunc::central_value_with(&sub, conductor, &table, opts.digits)?;

    let removed: Vec<u64> = inv
        .d_primes()
        .zip(&tw.alpha)
        .filter(|(_, &a)| a == 0)
        .map(|(f, _)| f.p)
        .collect();
    let mut euler = QOmega::one();
    let mut euler_numeric = Dd::ONE;
    for &p in &removed {
        euler = euler * euler_factor(tw.lambda_alpha, p)?;
        let ap = if p <= table.n_max { table.get(p) } else { hecke::a_p(tw.lambda_alpha, p) };
        let local = if p % 3 == 2 {
            Dd::from_ratio(p as i64 + 1, p as i64)
        } else {
            Dd::from_ratio(p as i64 + 1 - ap, p as i64)
        };
        euler_numeric *= local;
    }
    let numeric = cv.value / omega * euler_numeric;

    let omega_alpha = lfunc::period_with(&sub, omega);
    let lalg_numeric = (cv.value / omega_alpha).to_f64();
    let (lalg, exact_numeric, val) = match lfunc::classify(lalg_numeric, cv.epsilon, opts) {
        Ok((lalg, _)) => {
            let exact = qomega_to_dd(&QOmega::from_rational(lalg.as_rational())) * (omega_alpha / omega)
                * qomega_to_dd(&euler);
            let val = lalg.ord3() + ord3(&euler) + period_offset(inv.e);
            (Some(lalg), Some(exact), Some(val))
        }
        Err(_) => (None, None, None),
    };
    let consistent = match exact_numeric {
        Some(x) => (x - numeric).abs().to_f64() <= 1e-8 * x.abs().to_f64().max(1.0),
        None => false,
    };
    Ok(PhiTerm { alpha: tw, lalg, euler, val, numeric, exact_numeric, consistent })
}

fn phi_terms(inv: &TwistInvariants, opts: &LOptions) -> Result<Vec<PhiTerm>, AveragingError> {
    let omega = lfunc::fundamental_period();
    let alphas = exponent_vectors(inv.n as usize - 1);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        alphas.into_par_iter().map(|a| compute_term(inv, omega, a, opts)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        alphas.into_iter().map(|a| compute_term(inv, omega, a, opts)).collect()
    }
}

fn check_lambda(lambda: u64) -> Result<TwistInvariants, AveragingError> {
    let inv = twist::invariants(lambda)?;
    if inv.e == 0 {
        return Err(AveragingError::NotDivisibleByThree(lambda));
    }
    Ok(inv)
}

// With one prime p | D the terms are c_k·θ^{-k}, θ = ∛p, up to a common
// factor of valuation period_offset(e). When p ≢ ±1 (mod 9) there is a single
// prime above 3 in K(θ), so ord₃ of Σ c_k θ^{-k} is ord₃ of its norm to K over 3.
fn single_prime_valuation(inv: &TwistInvariants, chi: &[u8], terms: &[PhiTerm]) -> Option<Val6> {
    if inv.n != 2 || terms.len() != 3 {
        return None;
    }
    let p = inv.d_primes().next()?.p;
    if p % 9 == 1 || p % 9 == 8 {
        return None;
    }
    let mut w = Vec::with_capacity(3);
    for (k, t) in terms.iter().enumerate() {
        let lalg = t.lalg.as_ref()?;
        let root = QOmega::from(Mu3::from_exponent((chi[0] as usize * k) as i64));
        w.push(root * QOmega::from_rational(lalg.as_rational()) * t.euler.clone());
    }
    // θ²·Σ w_k θ^{-k} = w₂ + w₁θ + w₀θ²
    let (a, b, c) = (&w[2], &w[1], &w[0]);
    let pq = QOmega::from_ratio(p as i64, 1);
    let cube = |x: &QOmega| x * &(x * x);
    let norm = cube(a) + &pq * &cube(b) + &(&pq * &pq) * &cube(c)
        - QOmega::from_ratio(3 * p as i64, 1) * (a * &(b * c));
    let v = ord3(&norm);
    Some(match v {
        Val6::Infinite => Val6::Infinite,
        Val6::Finite(s) => Val6::Finite(s / 3) + period_offset(inv.e),
    })
}

fn assemble(inv: &TwistInvariants, chi: Vec<u8>, terms: Vec<PhiTerm>) -> PhiReport {
    let mut numeric_phi = DdComplex::ZERO;
    for t in &terms {
        let k: u32 = chi.iter().zip(&t.alpha.alpha).map(|(&c, &a)| c as u32 * a as u32).sum();
        numeric_phi = numeric_phi + mu3_complex((k % 3) as u8).scale(t.numeric);
    }
    let all_known = terms.iter().all(|t| t.val.is_some());
    let min_val = if all_known { terms.iter().filter_map(|t| t.val).min() } else { None };
    let bound = phi_bound(inv.n, inv.e);
    let exact_val = single_prime_valuation(inv, &chi, &terms);
    PhiReport {
        exact_val,
        lambda: inv.lambda,
        certified: min_val.is_some_and(|v| v >= bound),
        numeric_consistent: terms.iter().all(|t| t.consistent),
        chi,
        min_val,
        bound,
        numeric_phi,
        terms,
    }
}

/// `Φ_λ^{(χ)}` with `χ(α) = ω^{Σ cᵢαᵢ}` given by the exponents `c`.
pub fn phi(lambda: u64, chi: &[u8], opts: &LOptions) -> Result<PhiReport, AveragingError> {
    let inv = check_lambda(lambda)?;
    let k = inv.n as usize - 1;
    if chi.len() != k {
        return Err(AveragingError::CharacterLength { expected: k, got: chi.len() });
    }
    let terms = phi_terms(&inv, opts)?;
    Ok(assemble(&inv, chi.iter().map(|c| c % 3).collect(), terms))
}

/// `Φ_λ^{(χ)}` for every character, sharing the term computations.
pub fn phi_all_characters(lambda: u64, opts: &LOptions) -> Result<Vec<PhiReport>, AveragingError> {
    let inv = check_lambda(lambda)?;
    let terms = phi_terms(&inv, opts)?;
    Ok(exponent_vectors(inv.n as usize - 1)
        .into_iter()
        .map(|chi| assemble(&inv, chi, terms.clone()))
        .collect())
}

/// One sub-twist checked by [`main3_certificate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Main3Check {
    pub lambda: u64,
    pub ord3: Val6,
    pub bound: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Main3Certificate {
    pub lambda: u64,
    pub checks: Vec<Main3Check>,
}

impl Main3Certificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `ord₃ L^alg(C_{λ_β}) ≥ n(λ_β) - e` for every twist `λ_β` with the same
/// `e` and prime support inside that of `λ`.
pub fn main3_certificate(lambda: u64, opts: &LOptions) -> Result<Main3Certificate, AveragingError> {
    let inv = check_lambda(lambda)?;
    let mut checks = Vec::new();
    for alpha in exponent_vectors(inv.n as usize - 1) {
        let tw = TwistExponent::new(&inv, alpha);
        let r = lfunc::algebraic_l_value(tw.lambda_alpha, opts)?;
        checks.push(Main3Check {
            lambda: tw.lambda_alpha,
            ord3: r.ord3,
            bound: r.bound,
            holds: r.bound_satisfied,
        });
    }
    Ok(Main3Certificate { lambda, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> LOptions {
        LOptions::default()
    }

    #[test]
    fn inert_factor() {
        assert_eq!(euler_factor(3, 5).unwrap(), QOmega::from_ratio(6, 5));
        assert!(ord3(&euler_factor(3, 5).unwrap()) >= Val6::integer(1));
        assert!(euler_factor(15, 5).is_err());
    }

    #[test]
    fn split_factor() {
        let parts = euler_factor_parts(3, 7).unwrap();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert!(ord3(part) >= Val6::ratio(1, 2));
        }
        // product is (7 + 1 - a_7(3))/7 = 3/7
        assert_eq!(euler_factor(3, 7).unwrap(), QOmega::from_ratio(3, 7));
    }

    #[test]
    fn euler_factor_valuations() {
        for p in crate::arith::primes_up_to(400) {
            if p == 3 {
                continue;
            }
            for l in [3u64, 9, 6, 18] {
                if l % p == 0 {
                    continue;
                }
                let f = euler_factor(l, p).unwrap();
                assert!(f.is_rational());
                assert!(ord3(&f) >= Val6::integer(1), "p={p} l={l}");
            }
        }
    }

    #[test]
    fn phi_21() {
        let r = phi(21, &[0], &opts()).unwrap();
        let lalg: Vec<_> = r.terms.iter().map(|t| t.lalg.clone().unwrap().to_string()).collect();
        assert_eq!(lalg, ["1", "3", "3"]);
        assert_eq!(r.bound, Val6::ratio(-1, 6));
        assert!(r.certified);
        assert!(r.numeric_consistent);
        let twisted = phi(21, &[1], &opts()).unwrap();
        let v: Vec<_> = twisted.terms.iter().map(|t| t.val).collect();
        let w: Vec<_> = r.terms.iter().map(|t| t.val).collect();
        assert_eq!(v, w);
        assert!(twisted.certified);
    }

    #[test]
    fn phi_45_has_vanishing_base_term() {
        let r = phi(45, &[0], &opts()).unwrap();
        assert_eq!(r.terms[0].alpha.lambda_alpha, 9);
        assert_eq!(r.terms[0].lalg, Some(LAlg::Zero));
        assert_eq!(r.terms[0].val, Some(Val6::Infinite));
        assert!(r.numeric_consistent);
        // the other two terms sit at -1/6, below the bound 1/6: the lemma
        // holds only through cancellation, visible in the exact valuation
        assert_eq!(r.min_val, Some(Val6::ratio(-1, 6)));
        assert!(!r.certified);
        assert_eq!(r.exact_val, Some(Val6::ratio(1, 6)));
        for chi in 0..3u8 {
            let r = phi(45, &[chi], &opts()).unwrap();
            assert!(r.exact_val.unwrap() >= r.bound, "chi={chi}");
        }
    }

    #[test]
    fn orthogonality() {
        let reports = phi_all_characters(3 * 2 * 7, &opts()).unwrap();
        let mut total = DdComplex::ZERO;
        for r in &reports {
            total = total + r.numeric_phi;
        }
        let base = reports[0].terms[0].numeric.mul_f64(reports.len() as f64);
        assert!((total.re - base).abs().to_f64() < 1e-12);
        assert!(total.im.abs().to_f64() < 1e-12);
        assert!(reports.iter().all(|r| r.certified));
    }

    #[test]
    fn main3_examples() {
        let c = main3_certificate(3, &opts()).unwrap();
        assert_eq!(c.checks.len(), 1);
        assert!(c.holds());
        let c = main3_certificate(63, &opts()).unwrap();
        let ls: Vec<u64> = c.checks.iter().map(|c| c.lambda).collect();
        assert_eq!(ls, [9, 63, 441]);
        assert!(c.holds());
        let c = main3_certificate(150, &opts()).unwrap();
        assert_eq!(c.checks.len(), 9);
        assert!(c.holds());
        assert!(main3_certificate(10, &opts()).is_err());
    }
}
