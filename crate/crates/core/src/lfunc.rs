//! Periods, the central value `L(C_λ, 1)` and its algebraic part.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dd::{Dd, DD_DIGITS};
use crate::eisenstein::{ord3_rational, Val6};
use crate::hecke::{self, CoefficientTable, HeckeError};
use crate::tate::{self, TateError, WeierstrassModel};
use crate::twist::{self, TwistError, TwistInvariants};

#[derive(Clone, Debug, PartialEq)]
pub enum LfuncError {
    Twist(TwistError),
    Tate(TateError),
    Hecke(HeckeError),
    PrecisionBudgetExceeded { requested: u32, available: u32 },
    Recognition(RecognitionFailure),
    LambdaTooSmall,
}

impl fmt::Display for LfuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfuncError::Twist(e) => e.fmt(f),
            LfuncError::Tate(e) => e.fmt(f),
            LfuncError::Hecke(e) => e.fmt(f),
            LfuncError::PrecisionBudgetExceeded { requested, available } => {
                write!(f, "{requested} digits requested, working precision holds {available}")
            }
            LfuncError::Recognition(e) => e.fmt(f),
            LfuncError::LambdaTooSmall => f.write_str("lambda must be at least 2"),
        }
    }
}

impl core::error::Error for LfuncError {}

impl From<TwistError> for LfuncError {
    fn from(e: TwistError) -> Self {
        LfuncError::Twist(e)
    }
}

impl From<TateError> for LfuncError {
    fn from(e: TateError) -> Self {
        LfuncError::Tate(e)
    }
}

impl From<HeckeError> for LfuncError {
    fn from(e: HeckeError) -> Self {
        LfuncError::Hecke(e)
    }
}

impl From<RecognitionFailure> for LfuncError {
    fn from(e: RecognitionFailure) -> Self {
        LfuncError::Recognition(e)
    }
}

// Composite trapezoid sums of the smooth integrand below, refined by
// Richardson extrapolation.
fn romberg(f: impl Fn(Dd) -> Dd, tol: f64, max_level: usize) -> Dd {
    let mut prev: Vec<Dd> = Vec::new();
    let mut h = Dd::ONE;
    let mut trap = (f(Dd::ZERO) + f(Dd::ONE)).mul_f64(0.5);
    for level in 0..max_level {
        if level > 0 {
            h = h.mul_f64(0.5);
            let count = 1u64 << (level - 1);
            let mut mid = Dd::ZERO;
            for i in 0..count {
                mid += f(h.mul_f64((2 * i + 1) as f64));
            }
            trap = trap.mul_f64(0.5) + mid * h;
        }
        let mut row = Vec::with_capacity(level + 1);
        row.push(trap);
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]).div_f64(factor - 1.0);
            row.push(r);
        }
        if level >= 4 && (row[level] - prev[level - 1]).abs().to_f64() < tol {
            return row[level];
        }
        prev = row;
    }
    prev[prev.len() - 1]
}

/// Real period `Ω = 3.0599…` of `y² = 4x³ - 1`, by quadrature.
///
/// With `x = x₀/v²`, `v = 1 - y²` and `x₀ = 4^{-1/3}` the integral
/// `2∫_{x₀}^∞ dx/√(4x³-1)` becomes `8x₀∫₀¹ dy/√g(1-y²)` where
/// `g(v) = 1 + v + … + v⁵`, which is analytic on `[0, 1]`.
pub fn fundamental_period() -> Dd {
    let x0 = Dd::from_ratio(1, 4).cbrt();
    let g = |y: Dd| {
        let v = Dd::ONE - y.sqr();
        let mut acc = Dd::ONE;
        for _ in 0..5 {
            acc = acc * v + Dd::ONE;
        }
        acc.sqrt().recip()
    };
    x0.mul_f64(8.0) * romberg(g, 1e-29, 22)
}

fn agm(mut a: Dd, mut b: Dd) -> Dd {
    for _ in 0..64 {
        if (a - b).abs().to_f64() <= 1e-31 * a.to_f64() {
            break;
        }
        let next = (a + b).mul_f64(0.5);
        b = (a * b).sqrt();
        a = next;
    }
    a
}

fn dd_from_bigint(x: &BigInt) -> Dd {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    let rest = x - BigInt::from(hi as i128);
    Dd::from_f64(hi) + Dd::from_f64(rest.to_f64().unwrap_or(0.0))
}

/// Least positive real period of `dx/(2y + a₁x + a₃)` on a curve with
/// `y² = 4x³ + b₂x² + 2b₄x + b₆` negative discriminant; `None` otherwise.
pub fn real_period_from_b(b2: Dd, b4: Dd, b6: Dd) -> Option<Dd> {
    let f = |x: Dd| ((x.mul_f64(4.0) + b2) * x + b4.mul_f64(2.0)) * x + b6;
    let df = |x: Dd| (x.mul_f64(12.0) + b2.mul_f64(2.0)) * x + b4.mul_f64(2.0);
    // bracket the real root
    let mut lo = -1.0f64;
    let mut hi = 1.0f64;
    while f(Dd::from_f64(lo)).to_f64() > 0.0 {
        lo *= 2.0;
    }
    while f(Dd::from_f64(hi)).to_f64() < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(Dd::from_f64(mid)).to_f64() < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut e1 = Dd::from_f64(0.5 * (lo + hi));
    for _ in 0..4 {
        let d = df(e1);
        if d.is_zero() {
            break;
        }
        e1 = e1 - f(e1) / d;
    }
    let a = e1.mul_f64(3.0) + b2.mul_f64(0.25);
    let b2_sq = e1.sqr().mul_f64(3.0) + b2 * e1.mul_f64(0.5) + b4.mul_f64(0.5);
    if b2_sq.to_f64() <= 0.0 {
        return None;
    }
    let b = b2_sq.sqrt();
    let c = b.mul_f64(2.0) + a;
    if c.to_f64() <= 0.0 {
        return None;
    }
    Some(Dd::TWO_PI / agm(b.sqrt().mul_f64(2.0), c.sqrt()))
}

/// Real period of an integral model (Néron differential of that model).
pub fn real_period(model: &WeierstrassModel) -> Option<Dd> {
    if !model.discriminant().is_negative() {
        return None;
    }
    real_period_from_b(
        dd_from_bigint(&model.b2()),
        dd_from_bigint(&model.b4()),
        dd_from_bigint(&model.b6()),
    )
}

/// `Ω` again, by the arithmetic-geometric mean.
pub fn fundamental_period_agm() -> Dd {
    real_period_from_b(Dd::ZERO, Dd::ZERO, Dd::from_f64(-1.0)).expect("negative discriminant")
}

/// Normalised period `Ω_λ`: `Ω/(√3·∛λ)` if `ord₃ λ ≤ 1`, `√3·Ω/∛λ` if `ord₃ λ = 2`.
pub fn period(lambda: u64) -> Result<Dd, LfuncError> {
    let inv = twist::invariants(lambda)?;
    Ok(period_with(&inv, fundamental_period()))
}

pub(crate) fn period_with(inv: &TwistInvariants, omega: Dd) -> Dd {
    let s3 = Dd::from_f64(3.0).sqrt();
    let c = Dd::from_u64(inv.lambda).cbrt();
    if inv.e == 2 {
        s3 * omega / c
    } else {
        omega / (s3 * c)
    }
}

/// Period of a global minimal model of `x³ + y³ = λ`, from the AGM on the
/// short model rescaled by the minimalising `u`.
pub fn minimal_model_period(lambda: u64) -> Result<Dd, LfuncError> {
    twist::invariants(lambda)?;
    let short = WeierstrassModel::cubic_twist(lambda);
    let u = tate::minimal_scaling(lambda)?;
    let omega_short = real_period(&short).expect("negative discriminant");
    Ok(omega_short * dd_from_bigint(&u))
}

/// Terms needed so that the tail of `Σ (a_n/n) e^{-2πn/√N}` is below `10^{-digits}`.
pub fn truncation_bound(conductor: u64, digits: u32) -> u64 {
    let sqrt_n = libm::sqrt(conductor as f64);
    let x = sqrt_n * (digits as f64 * core::f64::consts::LN_10 + 5.0) / (2.0 * core::f64::consts::PI);
    libm::ceil(x).max(1.0) as u64
}

const CHUNK: usize = 16_384;

// Σ_{n ≤ len} (a_n/n)·e^{-n·x}, chunked so each block restarts from an
// exact exponential; block sums are combined by a fixed pairwise tree.
fn dirichlet_exp_sum(a: &[i64], x: Dd) -> Dd {
    let q = (-x).exp();
    let block = |(k, chunk): (usize, &[i64])| {
        let start = k * CHUNK + 1;
        let mut qn = (-x.mul_f64(start as f64)).exp();
        let mut acc = Dd::ZERO;
        for (i, &an) in chunk.iter().enumerate() {
            if an != 0 {
                acc += Dd::from_i64(an).div_f64((start + i) as f64) * qn;
            }
            qn *= q;
        }
        acc
    };
    #[cfg(feature = "parallel")]
    let mut parts: Vec<Dd> = {
        use rayon::prelude::*;
        a.par_chunks(CHUNK).enumerate().map(block).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut parts: Vec<Dd> = a.chunks(CHUNK).enumerate().map(block).collect();
    while parts.len() > 1 {
        parts = parts
            .chunks(2)
            .map(|p| if p.len() == 2 { p[0] + p[1] } else { p[0] })
            .collect();
    }
    parts.first().copied().unwrap_or(Dd::ZERO)
}

/// The central value from a coefficient table, evaluated as
/// `Σ (a_n/n)(e^{-2πnA/√N} + ε·e^{-2πn/(A√N)})`.
///
/// Any `A > 0` gives the same number exactly when `ε` is the true root
/// number; the table must reach `truncation_bound(N, digits)·max(A, 1/A)`.
pub fn central_value(table: &CoefficientTable, conductor: u64, epsilon: i32, a: Dd, digits: u32) -> Dd {
    let n_max = truncation_bound(conductor, digits);
    let sqrt_n = Dd::from_u64(conductor).sqrt();
    let x1 = Dd::TWO_PI * a / sqrt_n;
    let x2 = Dd::TWO_PI / (a * sqrt_n);
    let len = |x: Dd| {
        let scale = (Dd::TWO_PI / sqrt_n / x).to_f64();
        let n = libm::ceil(n_max as f64 * scale) as u64 + 1;
        n.min(table.n_max) as usize
    };
    let coeffs = table.as_slice();
    let s1 = dirichlet_exp_sum(&coeffs[..len(x1)], x1);
    let s2 = dirichlet_exp_sum(&coeffs[..len(x2)], x2);
    if epsilon >= 0 {
        s1 + s2
    } else {
        s1 - s2
    }
}

/// Split point used to test the root number: at `A = 1` the sum vanishes
/// identically when `ε = -1`.
pub fn check_split() -> Dd {
    Dd::from_ratio(6, 5)
}

fn precision_check(digits: u32) -> Result<(), LfuncError> {
    if digits > DD_DIGITS {
        return Err(LfuncError::PrecisionBudgetExceeded { requested: digits, available: DD_DIGITS });
    }
    Ok(())
}

/// Everything needed to evaluate `L(C_λ, 1)` at a given precision.
#[derive(Clone, Debug)]
pub struct CentralValue {
    pub lambda: u64,
    pub conductor: u64,
    pub epsilon: i32,
    pub n_max: u64,
    /// `L(C_λ, 1)`; for `ε = -1` the sum at the check split, which should vanish.
    pub value: Dd,
    /// `|L(A=1) - L(A=6/5)|` for `ε = +1`, `|L(A=6/5)|` for `ε = -1`.
    pub split_discrepancy: Dd,
}

/// Coefficients needed for `l_value` at this conductor and precision.
pub fn coefficients_needed(conductor: u64, digits: u32) -> u64 {
    let n = truncation_bound(conductor, digits);
    (n * 6).div_ceil(5) + 2
}

/// `L(C_λ, 1)` with its conductor, root number and split check, from a
/// precomputed table (e.g. a cached one).
pub fn central_value_with(
    inv: &TwistInvariants,
    conductor: u64,
    table: &CoefficientTable,
    digits: u32,
) -> Result<CentralValue, LfuncError> {
    precision_check(digits)?;
    let epsilon = twist::root_number(inv);
    let n_max = truncation_bound(conductor, digits);
    let split = check_split();
    let at_split = central_value(table, conductor, epsilon, split, digits);
    let (value, disc) = if epsilon > 0 {
        let at_one = central_value(table, conductor, epsilon, Dd::ONE, digits);
        (at_one, (at_one - at_split).abs())
    } else {
        (at_split, at_split.abs())
    };
    Ok(CentralValue {
        lambda: inv.lambda,
        conductor,
        epsilon,
        n_max,
        value,
        split_discrepancy: disc,
    })
}

/// `L(C_λ, 1)` to about `digits` significant digits.
pub fn l_value(lambda: u64, digits: u32) -> Result<CentralValue, LfuncError> {
    precision_check(digits)?;
    let inv = twist::invariants(lambda)?;
    let conductor = tate::conductor(lambda)?;
    let table = hecke::coefficients(lambda, coefficients_needed(conductor, digits))?;
    central_value_with(&inv, conductor, &table, digits)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecognitionFailure {
    pub x: f64,
    pub candidates: usize,
}

impl fmt::Display for RecognitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.candidates == 0 {
            write!(f, "no rational with small denominator near {}", self.x)
        } else {
            write!(f, "{} rationals with small denominator near {}", self.candidates, self.x)
        }
    }
}

/// Default recognition tolerance `10⁻⁶·max(1, |x|)`.
pub fn default_tolerance(x: f64) -> f64 {
    1e-6 * libm::fabs(x).max(1.0)
}

/// The unique `p/q` with `q ≤ max_den` and `|x - p/q| < tol`.
pub fn recognize_rational(x: f64, max_den: u64, tol: f64) -> Result<BigRational, RecognitionFailure> {
    let mut found: Vec<BigRational> = Vec::new();
    if x.is_finite() {
        for q in 1..=max_den.max(1) {
            let p = libm::round(x * q as f64);
            if libm::fabs(x - p / q as f64) < tol {
                let r = BigRational::new(BigInt::from(p as i64), BigInt::from(q));
                if !found.contains(&r) {
                    found.push(r);
                }
            }
        }
    }
    if found.len() == 1 {
        Ok(found.pop().unwrap())
    } else {
        Err(RecognitionFailure { x, candidates: found.len() })
    }
}

/// The algebraic part, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LAlg {
    Zero,
    Rational(BigRational),
}

impl LAlg {
    pub fn ord3(&self) -> Val6 {
        match self {
            LAlg::Zero => Val6::Infinite,
            LAlg::Rational(q) => ord3_rational(q),
        }
    }

    pub fn as_rational(&self) -> BigRational {
        match self {
            LAlg::Zero => BigRational::zero(),
            LAlg::Rational(q) => q.clone(),
        }
    }
}

impl fmt::Display for LAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LAlg::Zero => f.write_str("0"),
            LAlg::Rational(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LOptions {
    pub digits: u32,
    pub max_den: u64,
    /// Relative recognition tolerance, scaled by `max(1, |x|)`.
    pub rel_tol: f64,
}

impl Default for LOptions {
    fn default() -> Self {
        LOptions { digits: 12, max_den: 9, rel_tol: 1e-6 }
    }
}

#[derive(Clone, Debug)]
pub struct LValueReport {
    pub lambda: u64,
    pub conductor: u64,
    pub epsilon: i32,
    pub n_max: u64,
    pub l_numeric: Dd,
    pub omega_lambda: Dd,
    pub lalg_numeric: Dd,
    pub lalg: LAlg,
    pub ord3: Val6,
    pub bound: i64,
    pub bound_satisfied: bool,
    /// `|L^alg numeric - L^alg|`.
    pub residual: f64,
    /// Split-point discrepancy divided by `Ω_λ`.
    pub functional_equation_residual: f64,
    /// `Ω_λ / Ω_min`, with `Ω_min` the AGM period of a minimal model.
    pub period_ratio: f64,
}

/// Lower bound on `ord₃ L^alg`: `n - e` if `3 | λ`; otherwise `n` when every
/// prime factor splits and `n - 1` when one is inert.
pub fn ord3_bound(inv: &TwistInvariants) -> i64 {
    let n = inv.n as i64;
    if inv.e > 0 {
        n - inv.e as i64
    } else if inv.all_primes_split() {
        n
    } else {
        n - 1
    }
}

/// `L^alg` from a numeric value: zero below `10⁻⁸`, else recognised.
pub fn classify(lalg_numeric: f64, epsilon: i32, opts: &LOptions) -> Result<(LAlg, f64), RecognitionFailure> {
    if epsilon < 0 || libm::fabs(lalg_numeric) < 1e-8 {
        return Ok((LAlg::Zero, libm::fabs(lalg_numeric)));
    }
    let q = recognize_rational(lalg_numeric, opts.max_den, opts.rel_tol * libm::fabs(lalg_numeric).max(1.0))?;
    let approx = q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
    Ok((LAlg::Rational(q), libm::fabs(lalg_numeric - approx)))
}

pub fn algebraic_l_value(lambda: u64, opts: &LOptions) -> Result<LValueReport, LfuncError> {
    if lambda < 2 {
        return Err(LfuncError::LambdaTooSmall);
    }
    precision_check(opts.digits)?;
    let inv = twist::invariants(lambda)?;
    let conductor = tate::conductor(lambda)?;
    let table = hecke::coefficients(lambda, coefficients_needed(conductor, opts.digits))?;
    report_from_table(&inv, conductor, &table, opts)
}

/// Same as [`algebraic_l_value`] with the coefficient table supplied.
pub fn report_from_table(
    inv: &TwistInvariants,
    conductor: u64,
    table: &CoefficientTable,
    opts: &LOptions,
) -> Result<LValueReport, LfuncError> {
    let cv = central_value_with(inv, conductor, table, opts.digits)?;
    let omega_lambda = period_with(inv, fundamental_period());
    let lalg_numeric = cv.value / omega_lambda;
    let (lalg, residual) = classify(lalg_numeric.to_f64(), cv.epsilon, opts)?;
    let ord3 = lalg.ord3();
    let bound = ord3_bound(inv);
    let period_ratio = (omega_lambda / minimal_model_period(inv.lambda)?).to_f64();
    Ok(LValueReport {
        lambda: inv.lambda,
        conductor,
        epsilon: cv.epsilon,
        n_max: cv.n_max,
        l_numeric: cv.value,
        omega_lambda,
        lalg_numeric,
        bound_satisfied: ord3 >= Val6::integer(bound),
        lalg,
        ord3,
        bound,
        residual,
        functional_equation_residual: (cv.split_discrepancy / omega_lambda).to_f64(),
        period_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn omega_by_quadrature_and_agm() {
        let quad = fundamental_period();
        assert!(quad.to_decimal_string(8).starts_with("3.059908"), "{}", quad.to_decimal_string(20));
        let agm = fundamental_period_agm();
        assert!((quad - agm).abs().to_f64() < 1e-26, "{} vs {}", quad, agm);
        let omega1 = quad / Dd::from_f64(3.0).sqrt();
        assert!(omega1.to_decimal_string(10).starts_with("1.76663875"));
    }

    #[test]
    fn agm_on_27a1() {
        // y² + y = x³ - 7
        let e = WeierstrassModel::new([0, 0, 1, 0, -7]);
        let w = real_period(&e).unwrap();
        assert!(w.to_decimal_string(10).starts_with("1.76663875"), "{w}");
    }

    #[test]
    fn period_closed_forms() {
        let omega = fundamental_period();
        let s3 = Dd::from_f64(3.0).sqrt();
        assert!((period(1).unwrap() - omega / s3).abs().to_f64() < 1e-28);
        let nine = period(9).unwrap();
        assert!((nine - s3 * omega / Dd::from_f64(9.0).cbrt()).abs().to_f64() < 1e-28);
        assert!(period(27).is_err());
    }

    #[test]
    fn truncation_examples() {
        let n = truncation_bound(243, 12);
        assert!((20..=100).contains(&n), "{n}");
        let n = truncation_bound(11907, 12);
        assert!((400..=600).contains(&n), "{n}");
        assert!(truncation_bound(1, 12) >= 1);
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize_rational(0.333333333, 9, 1e-6), Ok(q(1, 3)));
        assert_eq!(recognize_rational(9.000000001, 9, 9e-6), Ok(q(9, 1)));
        assert!(recognize_rational(0.123456, 9, 1e-6).is_err());
        // two candidates within a loose tolerance
        assert!(recognize_rational(0.5, 9, 0.2).is_err());
    }

    #[test]
    fn small_central_values() {
        let omega = fundamental_period();
        let s3 = Dd::from_f64(3.0).sqrt();
        let l1 = l_value(1, 20).unwrap();
        assert!(((l1.value / (omega / s3)).to_f64() - 1.0 / 3.0).abs() < 1e-15);
        let l3 = l_value(3, 20).unwrap();
        assert!(((l3.value / period(3).unwrap()).to_f64() - 1.0).abs() < 1e-15);
        let l9 = l_value(9, 20).unwrap();
        assert_eq!(l9.epsilon, -1);
        assert!(l9.value.abs().to_f64() < 1e-15);
    }

    #[test]
    fn table_rows() {
        let opts = LOptions::default();
        let r = algebraic_l_value(21, &opts).unwrap();
        assert_eq!((r.lalg.clone(), r.ord3, r.bound, r.bound_satisfied), (LAlg::Rational(q(3, 1)), Val6::integer(1), 1, true));
        let r = algebraic_l_value(150, &opts).unwrap();
        assert_eq!((r.lalg.clone(), r.ord3, r.bound), (LAlg::Rational(q(9, 1)), Val6::integer(2), 2));
        let r = algebraic_l_value(18, &opts).unwrap();
        assert_eq!((r.lalg.clone(), r.ord3, r.bound), (LAlg::Rational(BigRational::one()), Val6::ZERO, 0));
        assert!(r.residual < 1e-9);
        assert_eq!(algebraic_l_value(1, &opts).unwrap_err(), LfuncError::LambdaTooSmall);
        let too_many = LOptions { digits: 40, ..opts };
        assert!(matches!(algebraic_l_value(21, &too_many), Err(LfuncError::PrecisionBudgetExceeded { .. })));
    }

    #[test]
    fn root_number_is_confirmed_by_the_split_check() {
        for lambda in [2u64, 3, 5, 6, 7, 9, 10, 12, 17, 21, 63, 150] {
            let cv = l_value(lambda, 16).unwrap();
            let scale = period(lambda).unwrap().to_f64();
            assert!(cv.split_discrepancy.to_f64() < 1e-12 * scale, "lambda={lambda} {}", cv.split_discrepancy);
        }
    }

    #[test]
    fn closed_form_period_is_the_minimal_model_period() {
        for lambda in 1u64..=300 {
            if !crate::arith::is_cube_free(lambda) {
                continue;
            }
            let r = (period(lambda).unwrap() / minimal_model_period(lambda).unwrap()).to_f64();
            assert!((r - 1.0).abs() < 1e-25, "lambda={lambda} ratio={r}");
        }
    }
}
