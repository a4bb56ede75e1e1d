//! JSON shapes. Rationals are `{"num", "den"}` objects, valuations exact
//! strings or objects, never floats.

use std::str::FromStr;

use cubelval_core::averaging::{PhiReport, PhiTerm};
use cubelval_core::descent::{DescentReport, Rank};
use cubelval_core::dd::Dd;
use cubelval_core::eisenstein::Val6;
use cubelval_core::lfunc::LAlg;
use cubelval_core::tate::LocalReduction;
use cubelval_core::twist::TwistInvariants;
use serde::Serialize;
use serde_json::Number;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Rational {
    pub num: Number,
    pub den: Number,
}

impl Rational {
    pub fn from_parts(num: impl ToString, den: impl ToString) -> Rational {
        let n = |v: String| Number::from_str(&v).expect("integer");
        Rational { num: n(num.to_string()), den: n(den.to_string()) }
    }

    pub fn from_lalg(l: &LAlg) -> Rational {
        let q = l.as_rational();
        Rational::from_parts(q.numer(), q.denom())
    }
}

/// `ord₃` as `{"num", "den"}` or `"inf"`.
#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Valuation {
    Finite { num: i64, den: i64 },
    Infinite(&'static str),
}

impl From<Val6> for Valuation {
    fn from(v: Val6) -> Self {
        match v.as_fraction() {
            Some((num, den)) => Valuation::Finite { num, den },
            None => Valuation::Infinite("inf"),
        }
    }
}

pub fn dd_string(x: Dd) -> String {
    x.to_decimal_string(15)
}

#[derive(Clone, Debug, Serialize)]
pub struct Local {
    pub p: u64,
    pub kodaira: String,
    pub conductor_exponent: u32,
    pub c: u64,
}

impl From<&LocalReduction> for Local {
    fn from(l: &LocalReduction) -> Self {
        Local { p: l.p, kodaira: l.kodaira.to_string(), conductor_exponent: l.conductor_exponent, c: l.tamagawa }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tamagawa {
    pub product: u64,
    pub local: Vec<Local>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Descent {
    pub case: &'static str,
    pub exact: bool,
    /// A number, or `"unknown"`.
    pub rank: serde_json::Value,
    pub sha3_dim: u32,
    pub sha3_raw: Option<i64>,
    pub parity_ok: Option<bool>,
    pub bsd_sha: Option<Rational>,
    pub bsd_ok: bool,
    pub h_includes_three: bool,
}

impl From<&DescentReport> for Descent {
    fn from(d: &DescentReport) -> Self {
        Descent {
            case: d.case.label(),
            exact: d.exact,
            rank: match d.rank {
                Rank::Known(r) => r.into(),
                Rank::Unknown => "unknown".into(),
            },
            sha3_dim: d.sha3_dim,
            sha3_raw: d.sha3_raw,
            parity_ok: d.parity_ok,
            bsd_sha: d.bsd_sha.as_ref().map(|q| Rational::from_parts(q.numer(), q.denom())),
            bsd_ok: d.bsd_ok,
            h_includes_three: d.h_includes_three,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub lambda: u64,
    pub e: u32,
    #[serde(rename = "D")]
    pub d_part: u64,
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub t: i32,
    pub d: u32,
    pub delta: i64,
    pub hypothesis_h: bool,
    pub epsilon: i32,
    pub conductor: u64,
    pub tamagawa: Tamagawa,
    pub digits: u32,
    pub n_max: Option<u64>,
    pub l_value: Option<String>,
    pub omega: String,
    pub lalg_numeric: Option<String>,
    pub lalg: Option<Rational>,
    pub ord3: Option<Valuation>,
    pub bound: i64,
    pub bound_satisfied: Option<bool>,
    pub descent: Option<Descent>,
}

impl Analysis {
    /// Fields that depend on `λ` alone.
    pub fn skeleton(inv: &TwistInvariants, epsilon: i32, conductor: u64, tamagawa: Tamagawa, omega: Dd, digits: u32, bound: i64) -> Self {
        Analysis {
            lambda: inv.lambda,
            e: inv.e,
            d_part: inv.d_part,
            n: inv.n,
            r: inv.r,
            s: inv.s,
            t: inv.t,
            d: inv.d,
            delta: inv.delta,
            hypothesis_h: inv.hypothesis_h,
            epsilon,
            conductor,
            tamagawa,
            digits,
            n_max: None,
            l_value: None,
            omega: dd_string(omega),
            lalg_numeric: None,
            lalg: None,
            ord3: None,
            bound,
            bound_satisfied: None,
            descent: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub alpha: Vec<u8>,
    pub lambda_alpha: u64,
    pub lalg: Option<Rational>,
    /// Exact valuation of the term as a string, `"inf"` for a zero term.
    pub val: Option<String>,
    pub numeric: String,
    pub consistent: bool,
}

impl From<&PhiTerm> for Term {
    fn from(t: &PhiTerm) -> Self {
        Term {
            alpha: t.alpha.alpha.clone(),
            lambda_alpha: t.alpha.lambda_alpha,
            lalg: t.lalg.as_ref().map(Rational::from_lalg),
            val: t.val.map(|v| v.to_string()),
            numeric: dd_string(t.numeric),
            consistent: t.consistent,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Phi {
    pub chi: Vec<u8>,
    pub bound: String,
    pub min_val: Option<String>,
    pub certified: bool,
    pub numeric_consistent: bool,
    /// Exact valuation of the whole sum, when available.
    pub exact_val: Option<String>,
    pub phi_re: String,
    pub phi_im: String,
    pub terms: Vec<Term>,
}

impl From<&PhiReport> for Phi {
    fn from(r: &PhiReport) -> Self {
        Phi {
            chi: r.chi.clone(),
            bound: r.bound.to_string(),
            min_val: r.min_val.map(|v| v.to_string()),
            certified: r.certified,
            numeric_consistent: r.numeric_consistent,
            exact_val: r.exact_val.map(|v| v.to_string()),
            phi_re: dd_string(r.numeric_phi.re),
            phi_im: dd_string(r.numeric_phi.im),
            terms: r.terms.iter().map(Term::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiDocument {
    pub lambda: u64,
    pub bound: String,
    pub certified: bool,
    pub characters: Vec<Phi>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let s = |v: Val6| serde_json::to_string(&Valuation::from(v)).unwrap();
        assert_eq!(s(Val6::ratio(-1, 6)), r#"{"num":-1,"den":6}"#);
        assert_eq!(s(Val6::Infinite), r#""inf""#);
    }

    #[test]
    fn rationals() {
        let r = Rational::from_parts(12, 1);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":12,"den":1}"#);
    }
}
