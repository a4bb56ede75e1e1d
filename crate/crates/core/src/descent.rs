//! The rational 3-isogeny `φ: E_λ → E′_λ` with its dual, and the Ш[3]
//! dimension predictions of 3-descent for `x³ + y³ = λ`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lfunc::LAlg;
use crate::tate::{self, TateError};
use crate::twist::{self, TwistError, TwistInvariants};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentError {
    Twist(TwistError),
    Tate(TateError),
    NotOnCurve,
    CaseNotApplicable,
    RankUnknown,
    /// The BSD quotient needs a nonzero central value.
    Undefined,
}

impl fmt::Display for DescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentError::Twist(e) => e.fmt(f),
            DescentError::Tate(e) => e.fmt(f),
            DescentError::NotOnCurve => f.write_str("point is not on the curve"),
            DescentError::CaseNotApplicable => f.write_str("no exact descent formula applies"),
            DescentError::RankUnknown => f.write_str("rank is unknown"),
            DescentError::Undefined => f.write_str("L-value vanishes"),
        }
    }
}

impl core::error::Error for DescentError {}

impl From<TwistError> for DescentError {
    fn from(e: TwistError) -> Self {
        DescentError::Twist(e)
    }
}

impl From<TateError> for DescentError {
    fn from(e: TateError) -> Self {
        DescentError::Tate(e)
    }
}

/// A rational point on `y² = x³ + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Point {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        Point::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::affine(q(x), q(y))
    }

    /// `(X : Y : Z)`; `Z = 0` is the point at infinity.
    pub fn from_projective(x: BigRational, y: BigRational, z: BigRational) -> Self {
        if z.is_zero() {
            Point::Infinity
        } else {
            Point::affine(x / &z, y / z)
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// `y² = x³ + k`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub k: BigInt,
}

impl Curve {
    pub fn new(k: BigInt) -> Self {
        Curve { k }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y * y == x * x * x + BigRational::from_integer(self.k.clone()),
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(x.clone(), -y),
        }
    }

    pub fn add(&self, p: &Point, r: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, r) {
            (Point::Infinity, _) => return r.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            q(3) * x1 * x1 / (q(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        Point::affine(x3, y3)
    }

    pub fn mul(&self, n: i64, p: &Point) -> Point {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            m >>= 1;
        }
        acc
    }
}

/// `φ: E_λ → E′_λ` and its dual, `E_λ: y² = x³ + k`, `E′_λ: y² = x³ + k′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyPair {
    pub lambda: u64,
    pub e: u32,
    pub k: BigInt,
    pub k_prime: BigInt,
}

impl IsogenyPair {
    pub fn new(lambda: u64) -> Result<Self, DescentError> {
        let inv = twist::invariants(lambda)?;
        let l = BigInt::from(lambda);
        let d = BigInt::from(inv.d_part);
        let k = if inv.e == 2 { BigInt::from(-48) * &d * &d } else { BigInt::from(-432) * &l * &l };
        Ok(IsogenyPair { lambda, e: inv.e, k, k_prime: BigInt::from(16) * &l * &l })
    }

    pub fn domain(&self) -> Curve {
        Curve::new(self.k.clone())
    }

    pub fn codomain(&self) -> Curve {
        Curve::new(self.k_prime.clone())
    }

    /// `φ`. The `3⁻²`, `3⁻³` rescaling sits on `φ` when `e ≤ 1` and on `φ̂`
    /// when `e = 2`.
    pub fn apply_phi(&self, p: &Point) -> Result<Point, DescentError> {
        if !self.domain().contains(p) {
            return Err(DescentError::NotOnCurve);
        }
        Ok(isogeny(&self.k, p, self.e <= 1))
    }

    pub fn apply_phi_hat(&self, p: &Point) -> Result<Point, DescentError> {
        if !self.codomain().contains(p) {
            return Err(DescentError::NotOnCurve);
        }
        Ok(isogeny(&self.k_prime, p, self.e == 2))
    }

    /// Image on `E_λ` of `(X : Y : Z)` on `X³ + Y³ = λZ³`.
    pub fn from_cubic(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> Result<Point, DescentError> {
        let lam = q(self.lambda as i64);
        if x * x * x + y * y * y != &lam * z * z * z {
            return Err(DescentError::NotOnCurve);
        }
        let (cx, cy) = if self.e == 2 {
            let d = q((self.lambda / 9) as i64);
            (q(12) * &d, q(12) * d)
        } else {
            (q(12) * &lam, q(36) * lam)
        };
        Ok(Point::from_projective(cx * z, cy * (y - x), x + y))
    }

    /// [`from_cubic`](Self::from_cubic) for the affine point `(x₀/x₁, y₀/y₁)`.
    pub fn from_cubic_ratios(&self, x: (i64, i64), y: (i64, i64)) -> Result<Point, DescentError> {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        self.from_cubic(&r(x), &r(y), &q(1))
    }

    /// Whether `φ̂(φ(P)) = 3P`.
    pub fn dual_composes_to_three(&self, p: &Point) -> Result<bool, DescentError> {
        let img = self.apply_phi(p)?;
        Ok(self.apply_phi_hat(&img)? == self.domain().mul(3, p))
    }
}

// (x, y) ↦ ((x⁴ + 4kx) / x³, y(x³ − 8k) / x³), optionally divided by (9, 27)
fn isogeny(k: &BigInt, p: &Point, rescale: bool) -> Point {
    let (x, y) = match p {
        Point::Infinity => return Point::Infinity,
        Point::Affine { x, y } => (x, y),
    };
    if x.is_zero() {
        return Point::Infinity;
    }
    let k = BigRational::from_integer(k.clone());
    let x3 = x * x * x;
    let mut nx = (&x3 + q(4) * &k) / (x * x);
    let mut ny = y * (&x3 - q(8) * k) / x3;
    if rescale {
        nx /= q(9);
        ny /= q(27);
    }
    Point::affine(nx, ny)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentCase {
    Thm1I,
    Thm1Ii,
    Thm1Iii,
    Thm2,
    Thm3,
    BoundOnly,
}

impl DescentCase {
    pub fn is_exact(self) -> bool {
        self != DescentCase::BoundOnly
    }

    pub fn label(self) -> &'static str {
        match self {
            DescentCase::Thm1I => "1(i)",
            DescentCase::Thm1Ii => "1(ii)",
            DescentCase::Thm1Iii => "1(iii)",
            DescentCase::Thm2 => "2",
            DescentCase::Thm3 => "3",
            DescentCase::BoundOnly => "bound",
        }
    }
}

impl fmt::Display for DescentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Known(u32),
    Unknown,
}

/// `r − t − 1 − rank`, unclamped.
pub fn sha3_raw(inv: &TwistInvariants, rank: u32) -> i64 {
    inv.r as i64 - inv.t as i64 - 1 - rank as i64
}

/// Lower bound `max(0, r − t − 1 − rank)` for `dim Ш[3]`.
pub fn sha3_lower_bound(inv: &TwistInvariants, rank: u32) -> u32 {
    sha3_raw(inv, rank).max(0) as u32
}

pub fn descent_case(inv: &TwistInvariants) -> DescentCase {
    let others = || inv.d_primes();
    let pm1_mod9 = |c: u8| c == 1 || c == 8;
    if inv.hypothesis_h && inv.s == inv.d {
        if inv.e == 1 {
            return DescentCase::Thm1I;
        }
        if inv.e == 2 && others().any(|f| !pm1_mod9(f.class9)) {
            return DescentCase::Thm1Ii;
        }
        if inv.e == 0 && inv.s == 0 && others().any(|f| f.class9 != 8) {
            return DescentCase::Thm1Iii;
        }
    }
    if inv.e == 2 && inv.s == inv.d && others().filter(|f| f.is_inert()).all(|f| f.class9 == 8) {
        return DescentCase::Thm2;
    }
    if inv.e == 0 && inv.primes.iter().all(|f| f.class9 == 8) {
        return DescentCase::Thm3;
    }
    DescentCase::BoundOnly
}

/// Exact `dim_{F₃} Ш[3]` when one of the descent theorems applies.
pub fn sha3_dimension(inv: &TwistInvariants, rank: u32) -> Result<u32, DescentError> {
    let (r, t, rank) = (inv.r as i64, inv.t as i64, rank as i64);
    let dim = match descent_case(inv) {
        DescentCase::Thm1I | DescentCase::Thm1Ii | DescentCase::Thm1Iii => r - t - 1 - rank,
        DescentCase::Thm2 => r + 1 - rank,
        DescentCase::Thm3 => r - rank,
        DescentCase::BoundOnly => return Err(DescentError::CaseNotApplicable),
    };
    // a negative value means the supplied rank is impossible
    u32::try_from(dim).map_err(|_| DescentError::CaseNotApplicable)
}

/// `dim Ш[3] + rank` is even exactly when the root number is `+1`.
pub fn parity_check(inv: &TwistInvariants, dim: u32, rank: u32) -> bool {
    let even = (dim + rank) % 2 == 0;
    even == (twist::root_number(inv) == 1)
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

/// `L^alg · #tor² / ∏ c_q` and whether it looks like the order of Ш.
pub fn bsd_check(lambda: u64, lalg: &LAlg) -> Result<(BigRational, bool), DescentError> {
    let inv = twist::invariants(lambda)?;
    let l = match lalg {
        LAlg::Zero => return Err(DescentError::Undefined),
        LAlg::Rational(l) => l.clone(),
    };
    let tor = BigInt::from(twist::torsion_order(lambda));
    let c = BigInt::from(tate::tamagawa_product(lambda)?);
    let sha = l * BigRational::from_integer(&tor * &tor) / BigRational::from_integer(c);
    let ok = sha.is_integer() && sha.is_positive() && is_square(sha.numer()) && {
        let n = sha.to_integer();
        let mut v = 0u32;
        let mut m = n;
        while m.is_multiple_of(&BigInt::from(3)) {
            m /= 3;
            v += 1;
        }
        v >= sha3_lower_bound(&inv, 0)
    };
    Ok((sha, ok))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub lambda: u64,
    pub invariants: TwistInvariants,
    /// Whether 3 took part in Hypothesis (H).
    pub h_includes_three: bool,
    pub rank: Rank,
    pub case: DescentCase,
    /// Exact value when `exact`, otherwise a lower bound.
    pub sha3_dim: u32,
    pub exact: bool,
    /// `r − t − 1 − rank` before clamping; absent when the rank is unknown.
    pub sha3_raw: Option<i64>,
    pub parity_ok: Option<bool>,
    pub bsd_sha: Option<BigRational>,
    pub bsd_ok: bool,
}

/// Rank is taken to be 0 when `L^alg ≠ 0`; otherwise `rank` must be given.
pub fn descent_report(lambda: u64, lalg: &LAlg, rank: Option<u32>) -> Result<DescentReport, DescentError> {
    let inv = twist::invariants(lambda)?;
    let rank = match (lalg, rank) {
        (LAlg::Rational(_), _) => Rank::Known(0),
        (LAlg::Zero, Some(r)) => Rank::Known(r),
        (LAlg::Zero, None) => Rank::Unknown,
    };
    let case = descent_case(&inv);
    let (sha3_dim, exact, raw, parity_ok) = match rank {
        Rank::Known(rk) => match sha3_dimension(&inv, rk) {
            Ok(dim) => (dim, true, Some(sha3_raw(&inv, rk)), Some(parity_check(&inv, dim, rk))),
            Err(_) => (sha3_lower_bound(&inv, rk), false, Some(sha3_raw(&inv, rk)), None),
        },
        Rank::Unknown => (0, false, None, None),
    };
    let (bsd_sha, bsd_ok) = match bsd_check(lambda, lalg) {
        Ok((s, ok)) => (Some(s), ok),
        Err(DescentError::Undefined) => (None, false),
        Err(e) => return Err(e),
    };
    Ok(DescentReport {
        lambda,
        invariants: inv,
        h_includes_three: false,
        rank,
        case,
        sha3_dim,
        exact,
        sha3_raw: raw,
        parity_ok,
        bsd_sha,
        bsd_ok,
    })
}

/// Points `n·P`, `n = 1 ..= count`.
pub fn multiples(curve: &Curve, p: &Point, count: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(count);
    let mut acc = p.clone();
    for _ in 0..count {
        out.push(acc.clone());
        acc = curve.add(&acc, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn lalg(n: i64) -> LAlg {
        LAlg::Rational(q(n))
    }

    fn cubic_point(pair: &IsogenyPair, x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Point {
        let r = |(a, b): (i64, i64)| Ratio::new(BigInt::from(a), BigInt::from(b));
        pair.from_cubic(&r(x), &r(y), &r(z)).unwrap()
    }

    fn check_times_three(pair: &IsogenyPair, p: &Point) {
        let e = pair.domain();
        assert!(e.contains(p));
        let img = pair.apply_phi(p).unwrap();
        assert!(pair.codomain().contains(&img));
        assert_eq!(pair.apply_phi_hat(&img).unwrap(), e.mul(3, p));
        assert!(pair.dual_composes_to_three(p).unwrap());
    }

    #[test]
    fn dual_composes_to_three_on_generated_points() {
        // 2³ + 1³ = 9, 2³ + (-1)³ = 7, 17³ + 37³ = 6·21³
        for (lam, x, y, z) in [(9u64, (2, 1), (1, 1), (1, 1)), (7, (2, 1), (-1, 1), (1, 1)), (6, (17, 21), (37, 21), (1, 1))] {
            let pair = IsogenyPair::new(lam).unwrap();
            let p = cubic_point(&pair, x, y, z);
            assert!(!p.is_infinity());
            let pts = multiples(&pair.domain(), &p, if lam == 9 { 50 } else { 12 });
            for pt in &pts {
                check_times_three(&pair, pt);
            }
        }
    }

    #[test]
    fn dual_composes_to_three_on_torsion() {
        let pair = IsogenyPair::new(2).unwrap();
        let p = cubic_point(&pair, (1, 1), (1, 1), (1, 1));
        assert_eq!(p, Point::from_ints(12, 0));
        assert_eq!(pair.from_cubic_ratios((1, 1), (1, 1)).unwrap(), p);
        check_times_three(&pair, &p);
        assert_eq!(pair.domain().mul(2, &p), Point::Infinity);
        for lam in [2u64, 150] {
            check_times_three(&IsogenyPair::new(lam).unwrap(), &Point::Infinity);
        }
    }

    #[test]
    fn kernels() {
        for lam in [2u64, 3, 9, 21, 63, 150] {
            let pair = IsogenyPair::new(lam).unwrap();
            let l = 4 * lam as i64;
            assert_eq!(pair.apply_phi_hat(&Point::from_ints(0, l)).unwrap(), Point::Infinity);
            assert_eq!(pair.apply_phi_hat(&Point::from_ints(0, -l)).unwrap(), Point::Infinity);
            assert_eq!(pair.apply_phi(&Point::Infinity).unwrap(), Point::Infinity);
            assert_eq!(pair.apply_phi(&Point::from_ints(1, 1)), Err(DescentError::NotOnCurve));
        }
    }

    #[test]
    fn line_at_infinity_of_the_cubic() {
        let pair = IsogenyPair::new(9).unwrap();
        assert_eq!(cubic_point(&pair, (1, 1), (-1, 1), (0, 1)), Point::Infinity);
    }

    #[test]
    fn lower_bounds() {
        let b = |l: u64| sha3_lower_bound(&twist::invariants(l).unwrap(), 0);
        assert_eq!(b(150), 2);
        assert_eq!(b(21), 0);
        assert_eq!(b(3), 0);
        let inv = twist::invariants(9 * 2).unwrap();
        assert_eq!(sha3_raw(&inv, 1), -1);
    }

    #[test]
    fn cases() {
        let c = |l: u64| descent_case(&twist::invariants(l).unwrap());
        assert_eq!(c(150), DescentCase::Thm1I);
        assert_eq!(c(9 * 17 * 17), DescentCase::Thm2);
        assert_eq!(c(17 * 53), DescentCase::Thm3);
        assert_eq!(c(9 * 29 * 181), DescentCase::Thm1Ii);
        assert_eq!(c(2 * 5), DescentCase::Thm1Iii);
        assert_eq!(c(3 * 7 * 13), DescentCase::BoundOnly);
    }

    #[test]
    fn dimensions() {
        let d = |l: u64| sha3_dimension(&twist::invariants(l).unwrap(), 0);
        assert_eq!(d(9 * 17 * 17), Ok(2));
        assert_eq!(d(9 * 17 * 17 * 53 * 71), Ok(4));
        assert_eq!(d(150), Ok(2));
        assert_eq!(d(3 * 7 * 13), Err(DescentError::CaseNotApplicable));
    }

    #[test]
    fn parity() {
        let inv = twist::invariants(150).unwrap();
        assert!(parity_check(&inv, 2, 0));
        assert!(parity_check(&twist::invariants(21).unwrap(), 0, 0));
        let nine = twist::invariants(9).unwrap();
        assert!(parity_check(&nine, 0, 1));
        assert!(!parity_check(&nine, 0, 0));
    }

    #[test]
    fn bsd_examples() {
        assert_eq!(bsd_check(21, &lalg(3)).unwrap(), (q(1), true));
        assert_eq!(bsd_check(150, &lalg(9)).unwrap(), (q(9), true));
        assert_eq!(bsd_check(9 * 25 * 49, &lalg(12)).unwrap(), (q(4), true));
        assert_eq!(bsd_check(9, &LAlg::Zero), Err(DescentError::Undefined));
        assert!(!bsd_check(21, &lalg(6)).unwrap().1);
    }

    #[test]
    fn reports() {
        let r = descent_report(150, &lalg(9), None).unwrap();
        assert_eq!((r.case, r.sha3_dim, r.exact, r.parity_ok, r.bsd_ok), (DescentCase::Thm1I, 2, true, Some(true), true));
        let r = descent_report(9, &LAlg::Zero, None).unwrap();
        assert_eq!((r.rank, r.exact, r.bsd_sha), (Rank::Unknown, false, None));
        let r = descent_report(9, &LAlg::Zero, Some(1)).unwrap();
        assert_eq!(r.rank, Rank::Known(1));
    }

    #[test]
    fn exact_cases_have_consistent_parity_and_t_one_forces_two_inert_primes() {
        for lam in 2u64..5000 {
            let Ok(inv) = twist::invariants(lam) else { continue };
            let case = descent_case(&inv);
            if case.is_exact() {
                for rank in 0..2 {
                    if let Ok(dim) = sha3_dimension(&inv, rank) {
                        assert!(parity_check(&inv, dim, rank), "lambda={lam}");
                    }
                }
            }
            if matches!(case, DescentCase::Thm1I | DescentCase::Thm1Ii | DescentCase::Thm1Iii) && inv.t == 1 {
                assert!(inv.r >= 2, "lambda={lam}");
            }
        }
    }
}
