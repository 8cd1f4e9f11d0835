use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::string::{PauliOp, PauliString};
use super::{PauliError, EPS_EQ, EPS_ORD};

pub type Scalar = Complex64;

/// Multiply by `i^e` without rounding.
#[inline]
pub(crate) fn mul_i_pow(c: Scalar, e: u32) -> Scalar {
    match e % 4 {
        0 => c,
        1 => Scalar::new(-c.im, c.re),
        2 => Scalar::new(-c.re, -c.im),
        _ => Scalar::new(c.im, -c.re),
    }
}

/// Polar form with `θ` in `[0, 2π)`; angles within `EPS_ORD` of `2π` snap to 0.
pub fn polar(c: Scalar) -> (f64, f64) {
    let r = c.norm();
    let mut theta = c.im.atan2(c.re);
    if theta < 0.0 {
        theta += TAU;
    }
    if theta >= TAU - EPS_ORD {
        theta = 0.0;
    }
    (r, theta)
}

pub fn approx_eq(a: Scalar, b: Scalar, eps: f64) -> bool {
    (a - b).norm() <= eps
}

fn cmp_tol(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= EPS_ORD {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Scalar order: magnitude first, then angle.
pub fn scalar_cmp(a: Scalar, b: Scalar) -> Ordering {
    let (ra, ta) = polar(a);
    let (rb, tb) = polar(b);
    cmp_tol(ra, rb).then_with(|| cmp_tol(ta, tb))
}

/// `λ · P_n ⊗ … ⊗ P_1` with `λ ≠ 0`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliLim {
    scalar: Scalar,
    string: PauliString,
}

impl PauliLim {
    pub fn new(scalar: Scalar, string: PauliString) -> Self {
        debug_assert!(scalar.norm() > 0.0, "PauliLim scalar must be nonzero");
        Self { scalar, string }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(Scalar::new(1.0, 0.0), PauliString::identity(n))
    }

    pub fn scalar_identity(n: u32, scalar: Scalar) -> Self {
        Self::new(scalar, PauliString::identity(n))
    }

    pub fn from_string(string: PauliString) -> Self {
        Self::new(Scalar::new(1.0, 0.0), string)
    }

    pub fn single(n: u32, q: u32, op: PauliOp) -> Self {
        Self::from_string(PauliString::single(n, q, op))
    }

    pub fn n(&self) -> u32 {
        self.string.n()
    }

    pub fn scalar(&self) -> Scalar {
        self.scalar
    }

    pub fn string(&self) -> &PauliString {
        &self.string
    }

    pub fn with_scalar(&self, scalar: Scalar) -> Self {
        Self::new(scalar, self.string)
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        Self::new(self.scalar * c, self.string)
    }

    /// Same string, unit scalar.
    pub fn unscaled(&self) -> Self {
        Self::from_string(self.string)
    }

    pub fn is_identity_string(&self) -> bool {
        self.string.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.string.is_identity() && approx_eq(self.scalar, Scalar::new(1.0, 0.0), EPS_EQ)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PauliError> {
        self.string.check_len(&other.string)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &Self) -> Self {
        let e = self.string.mul_phase_exponent(&other.string);
        Self {
            scalar: mul_i_pow(self.scalar * other.scalar, e),
            string: self.string.xor(&other.string),
        }
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.scalar.inv(), self.string)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.string.commutes_with(&other.string)
    }

    /// Equality with `EPS_EQ` on the scalar.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.string == other.string && approx_eq(self.scalar, other.scalar, EPS_EQ)
    }

    /// Equality with a caller-chosen scalar tolerance.
    pub fn approx_eq_tol(&self, other: &Self, eps: f64) -> bool {
        self.string == other.string && approx_eq(self.scalar, other.scalar, eps)
    }

    pub fn try_lex_cmp(&self, other: &Self) -> Result<Ordering, PauliError> {
        self.string.check_len(&other.string)?;
        Ok(self.lex_cmp(other))
    }

    /// Extended check-vector order: X block, Z block, then `r`, then `θ`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n(), other.n());
        self.string
            .check_cmp(&other.string)
            .then_with(|| scalar_cmp(self.scalar, other.scalar))
    }

    pub fn to_check_vector(&self) -> CheckVector {
        let n = self.n();
        let bits = (0..2 * n).map(|c| self.string.check_bit(c) as u8).collect();
        let (r, theta) = polar(self.scalar);
        CheckVector { n, bits, r, theta }
    }

    pub fn from_check_vector(cv: &CheckVector) -> Result<Self, PauliError> {
        let n = cv.n;
        if cv.bits.len() != 2 * n as usize {
            return Err(PauliError::Parse(format!(
                "check vector has {} bits, expected {}",
                cv.bits.len(),
                2 * n
            )));
        }
        let mut x = 0u128;
        let mut z = 0u128;
        for i in 0..n as usize {
            x = x << 1 | (cv.bits[i] & 1) as u128;
            z = z << 1 | (cv.bits[n as usize + i] & 1) as u128;
        }
        if cv.r <= 0.0 {
            return Err(PauliError::ZeroScalar);
        }
        Ok(Self::new(Scalar::from_polar(cv.r, cv.theta), PauliString::from_bits(n, x, z)))
    }

    /// Top operator and the LIM on the remaining qubits, which keeps the scalar.
    pub fn split_top(&self) -> (PauliOp, PauliLim) {
        let (top, rest) = self.string.split_top();
        (top, Self::new(self.scalar, rest))
    }

    /// `top ⊗ self`.
    pub fn with_top(&self, top: PauliOp) -> Self {
        Self::new(self.scalar, PauliString::with_top(top, &self.string))
    }

    /// `self ⊗ lower`; scalars multiply.
    pub fn kron(&self, lower: &Self) -> Self {
        Self::new(self.scalar * lower.scalar, self.string.kron(&lower.string))
    }

    /// Power of `i` when the scalar is one of `±1, ±i` (within `EPS_EQ`).
    pub fn quarter_phase(&self) -> Option<u32> {
        (0..4).find(|&e| approx_eq(self.scalar, mul_i_pow(Scalar::new(1.0, 0.0), e), EPS_EQ))
    }

    /// Apply to a dense vector whose index bit `j` is the value of qubit `j + 1`.
    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.n();
        assert_eq!(v.len(), 1usize << n);
        let x = self.string.x_bits() as usize;
        let z = self.string.z_bits() as usize;
        let base = mul_i_pow(self.scalar, (x & z).count_ones());
        let mut out = vec![Scalar::new(0.0, 0.0); v.len()];
        for (j, a) in v.iter().enumerate() {
            let sign = if (j & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[j ^ x] = base * a * sign;
        }
        out
    }
}

impl Mul for PauliLim {
    type Output = PauliLim;

    fn mul(self, rhs: PauliLim) -> PauliLim {
        assert_eq!(self.n(), rhs.n(), "PauliLim length mismatch");
        self.mul_unchecked(&rhs)
    }
}

impl Mul for &PauliLim {
    type Output = PauliLim;

    fn mul(self, rhs: &PauliLim) -> PauliLim {
        assert_eq!(self.n(), rhs.n(), "PauliLim length mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for PauliLim {
    type Output = PauliLim;

    fn neg(self) -> PauliLim {
        self.with_scalar(-self.scalar)
    }
}

/// `(x_n..x_1 | z_n..z_1 | r, θ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVector {
    pub n: u32,
    pub bits: Vec<u8>,
    pub r: f64,
    pub theta: f64,
}

impl fmt::Display for CheckVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        for b in &self.bits[..n] {
            write!(f, "{b}")?;
        }
        write!(f, "|")?;
        for b in &self.bits[n..] {
            write!(f, "{b}")?;
        }
        write!(f, "|{},{}", fmt_real(self.r), fmt_real(self.theta))
    }
}

fn fmt_real(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() < 1e-12 {
        format!("{}", r as i64)
    } else {
        format!("{v}")
    }
}

impl fmt::Display for PauliLim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.quarter_phase() {
            Some(0) => String::new(),
            Some(1) => "i*".to_string(),
            Some(2) => "-".to_string(),
            Some(3) => "-i*".to_string(),
            _ => {
                let c = self.scalar;
                if c.im.abs() < EPS_EQ {
                    format!("{}*", fmt_real(c.re))
                } else {
                    format!("({}{:+}i)*", fmt_real(c.re), c.im)
                }
            }
        };
        write!(f, "{prefix}{}", self.string)
    }
}

impl FromStr for PauliLim {
    type Err = PauliError;

    /// Accepts `XZ`, `-XZ`, `i*XZ`, `-i*XZ`, `0.5*XZ`, `(0.5-1i)*XZ` and `()` for the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (scalar, body) = match s.rfind('*') {
            Some(pos) => (parse_scalar(&s[..pos])?, &s[pos + 1..]),
            None => match s.strip_prefix('-') {
                Some(rest) => (Scalar::new(-1.0, 0.0), rest),
                None => (Scalar::new(1.0, 0.0), s),
            },
        };
        if scalar.norm() == 0.0 {
            return Err(PauliError::ZeroScalar);
        }
        let body = body.trim();
        let ops: Vec<PauliOp> = if body == "()" {
            Vec::new()
        } else {
            body.chars()
                .map(|c| {
                    PauliOp::from_symbol(c)
                        .ok_or_else(|| PauliError::Parse(format!("bad Pauli symbol {c:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        Ok(PauliLim::new(scalar, PauliString::from_ops(&ops)))
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, PauliError> {
    let s = s.trim();
    let bad = || PauliError::Parse(format!("bad scalar {s:?}"));
    match s {
        "" => return Ok(Scalar::new(1.0, 0.0)),
        "-" => return Ok(Scalar::new(-1.0, 0.0)),
        "i" => return Ok(Scalar::new(0.0, 1.0)),
        "-i" => return Ok(Scalar::new(0.0, -1.0)),
        _ => {}
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let inner = inner.strip_suffix('i').ok_or_else(bad)?;
        let split = inner
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !inner[..i].ends_with('e'))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re: f64 = inner[..split].parse().map_err(|_| bad())?;
        let im: f64 = inner[split..].parse().map_err(|_| bad())?;
        return Ok(Scalar::new(re, im));
    }
    let re: f64 = s.parse().map_err(|_| bad())?;
    Ok(Scalar::new(re, 0.0))
}

/// Angle of `e^{iπk/4}`; handy for T-gate scalars.
pub fn eighth_root(k: i32) -> Scalar {
    Scalar::from_polar(1.0, PI * k as f64 / 4.0)
}
