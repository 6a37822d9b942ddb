//! Scalar abstraction for the threshold arithmetic used by the detection and
//! structure algorithms.
//!
//! Graph data is purely combinatorial; only the thresholds (`alpha`, `k`,
//! `epsilon`, `lambda`, `c`) carry real values. Every threshold test is written
//! against [`Scalar`] so it can run either in floating point or exactly over
//! [`Rational`](crate::Rational). Square roots never appear: a test such as
//! `x >= k^2 * sqrt(n)` is evaluated as `x^2 >= k^4 * n` with `x >= 0`.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts a vertex or edge count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    /// Lossy conversion used only for reporting.
    fn approx(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_positive(self) -> bool {
        self > Self::zero()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}

/// Returns true when `x >= coeff * sqrt(n)` for non-negative `x`, decided by
/// squaring both sides.
pub fn at_least_coeff_sqrt<S: Scalar>(x: S, coeff: S, n: usize) -> bool {
    if coeff <= S::zero() {
        return x >= S::zero();
    }
    if x < S::zero() {
        return false;
    }
    x * x >= coeff * coeff * S::from_count(n)
}

/// Smallest integer `m` with `m >= coeff * sqrt(n)`.
pub fn ceil_coeff_sqrt<S: Scalar>(coeff: S, n: usize) -> usize {
    if coeff <= S::zero() || n == 0 {
        return 0;
    }
    // Float estimate, then correct with the exact comparison.
    let guess = (coeff.approx() * (n as f64).sqrt()).ceil().max(0.0) as usize;
    let mut m = guess.saturating_sub(2);
    while !at_least_coeff_sqrt(S::from_count(m), coeff, n) {
        m += 1;
    }
    while m > 0 && at_least_coeff_sqrt(S::from_count(m - 1), coeff, n) {
        m -= 1;
    }
    m
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.125"` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Option<Ratio<i64>> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 15 {
        return None;
    }
    let den = 10i64.checked_pow(frac_part.len() as u32)?;
    let int_value: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_value: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let num = int_value.checked_mul(den)?.checked_add(frac_value)?;
    let value = Ratio::new(num, den);
    Some(if negative { -value } else { value })
}
