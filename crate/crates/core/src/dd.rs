//! Double-double floating point.
//!
//! A [`Dd`] carries an unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi) / 2`, giving roughly 31 significant decimal digits. The
//! algorithms are the standard error-free transformations (Dekker, Knuth)
//! as popularised by the QD library.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Decimal digits a [`Dd`] can represent reliably.
pub const DD_DIGITS: u32 = 30;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: 3.141_592_653_589_793_1e0,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: 6.283_185_307_179_586_2e0,
        lo: 2.449_293_598_294_706_4e-16,
    };
    pub const LN2: Dd = Dd {
        hi: 6.931_471_805_599_452_9e-1,
        lo: 2.319_046_813_846_299_6e-17,
    };
    pub const LN10: Dd = Dd {
        hi: 2.302_585_092_994_045_9e0,
        lo: -2.170_756_223_382_249_2e-16,
    };
    pub const EPS: f64 = 4.930_380_657_631_32e-32;

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Exact ratio `num / den` rounded to double-double precision.
    pub fn from_ratio(num: i64, den: i64) -> Dd {
        Dd::from_i64(num) / Dd::from_i64(den)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let e = e - p2 + self.lo;
        let q2 = (s + e) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    fn mul_pow2(self, b: f64) -> Dd {
        Dd { hi: self.hi * b, lo: self.lo * b }
    }

    fn ldexp(self, exp: i32) -> Dd {
        Dd { hi: libm::scalbn(self.hi, exp), lo: libm::scalbn(self.lo, exp) }
    }

    pub fn sqr(self) -> Dd {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = 1.0 / libm::sqrt(self.hi);
        let ax = self.hi * x;
        let corr = (self - Dd::from_f64(ax).sqr()).hi * (x * 0.5);
        let (hi, lo) = two_sum(ax, corr);
        Dd { hi, lo }
    }

    pub fn cbrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        // Two Newton steps from the f64 estimate on y^3 = x.
        let mut y = Dd::from_f64(libm::cbrt(self.to_f64()));
        for _ in 0..2 {
            let y2 = y.sqr();
            y = y - (y2 * y - self) / y2.mul_f64(3.0);
        }
        y
    }

    pub fn exp(self) -> Dd {
        const K: f64 = 512.0;
        if self.hi <= -709.0 {
            return Dd::ZERO;
        }
        if self.hi >= 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.is_zero() {
            return Dd::ONE;
        }
        let m = libm::floor(self.hi / Dd::LN2.hi + 0.5);
        let r = (self - Dd::LN2.mul_f64(m)).mul_pow2(1.0 / K);
        // s = exp(r) - 1 by Taylor series; |r| < 7e-4, so 12 terms is ample.
        let mut s = r;
        let mut term = r;
        for k in 2..=12u32 {
            term = (term * r).div_f64(k as f64);
            s += term;
            if libm::fabs(term.hi) < Dd::EPS * 1e-3 {
                break;
            }
        }
        for _ in 0..9 {
            s = s.mul_pow2(2.0) + s.sqr();
        }
        (s + Dd::ONE).ldexp(m as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let x = Dd::from_f64(libm::log(self.hi));
        x + self * (-x).exp() - Dd::ONE
    }

    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    pub fn floor(self) -> Dd {
        let hi = libm::floor(self.hi);
        if hi == self.hi {
            let lo = libm::floor(self.lo);
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else {
            Dd::from_f64(hi)
        }
    }

    /// Decimal expansion with `digits` significant digits (truncated, not rounded).
    pub fn to_decimal_string(self, digits: usize) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;
        let mut out = String::new();
        if !self.is_finite() {
            let _ = write!(out, "{}", self.hi);
            return out;
        }
        let mut x = self;
        if x.hi < 0.0 {
            out.push('-');
            x = -x;
        }
        if x.is_zero() {
            out.push('0');
            return out;
        }
        let mut exp10 = libm::floor(libm::log10(x.hi)) as i32;
        x = x * Dd::from_f64(10.0).powi_signed(-exp10);
        if x.hi >= 10.0 {
            x = x.div_f64(10.0);
            exp10 += 1;
        } else if x.hi < 1.0 {
            x = x.mul_f64(10.0);
            exp10 -= 1;
        }
        let mut mantissa = String::new();
        for _ in 0..digits {
            let d = x.floor().to_f64().clamp(0.0, 9.0);
            mantissa.push((b'0' + d as u8) as char);
            x = (x - Dd::from_f64(d)).mul_f64(10.0);
        }
        if (0..=20).contains(&exp10) && (exp10 as usize) < digits {
            let split = exp10 as usize + 1;
            out.push_str(&mantissa[..split]);
            if split < mantissa.len() {
                out.push('.');
                out.push_str(&mantissa[split..]);
            }
        } else {
            out.push_str(&mantissa[..1]);
            out.push('.');
            out.push_str(&mantissa[1..]);
            let _ = write!(out, "e{exp10}");
        }
        out
    }

    fn powi_signed(self, n: i32) -> Dd {
        if n >= 0 {
            self.powi(n as u32)
        } else {
            self.powi(n.unsigned_abs()).recip()
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 }.add_f64(q3)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(DD_DIGITS as usize).max(1);
        f.write_str(&self.to_decimal_string(digits))
    }
}

/// Complex number over [`Dd`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex { re: Dd::ZERO, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Self {
        DdComplex { re, im }
    }

    pub fn real(re: Dd) -> Self {
        DdComplex { re, im: Dd::ZERO }
    }

    pub fn abs(self) -> Dd {
        (self.re.sqr() + self.im.sqr()).sqrt()
    }

    pub fn scale(self, s: Dd) -> Self {
        DdComplex { re: self.re * s, im: self.im * s }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, rel: f64) -> bool {
        ((a - b).abs().to_f64()) <= rel * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn sqrt_squares_back() {
        let two = Dd::from_f64(2.0);
        let r = two.sqrt();
        assert!(close(r.sqr(), two, 1e-31));
        // sqrt(2) = 1.41421356237309504880168872420969807856967...
        assert!(r.to_decimal_string(30).starts_with("1.41421356237309504880168872420"));
    }

    #[test]
    fn exp_and_ln_are_inverse() {
        for &v in &[-40.0, -3.25, -1e-5, 0.5, 1.0, 7.75, 100.0] {
            let x = Dd::from_f64(v);
            assert!(close(x.exp().ln(), x, 1e-29) || v.abs() < 1e-3, "{v}");
        }
        // e = 2.71828182845904523536028747135266249775724709...
        let e = Dd::ONE.exp();
        assert!(e.to_decimal_string(30).starts_with("2.71828182845904523536028747135"));
    }

    #[test]
    fn exp_additivity() {
        let a = Dd::from_ratio(-314, 100);
        let b = Dd::from_ratio(271, 1000);
        assert!(close((a + b).exp(), a.exp() * b.exp(), 1e-30));
    }

    #[test]
    fn cbrt_of_three() {
        // 3^(1/3) = 1.44224957030740838232163831078010958839186925...
        let c = Dd::from_f64(3.0).cbrt();
        assert!(c.to_decimal_string(30).starts_with("1.44224957030740838232163831078"));
    }

    #[test]
    fn pi_digits() {
        assert!(Dd::PI.to_decimal_string(31).starts_with("3.141592653589793238462643383279"));
        assert!(close(Dd::PI.mul_f64(2.0), Dd::TWO_PI, 1e-32));
    }

    #[test]
    fn integers_round_trip() {
        let big = (1i64 << 60) + 12345;
        let d = Dd::from_i64(big);
        assert_eq!(d.hi as i128 + d.lo as i128, big as i128);
    }
}
