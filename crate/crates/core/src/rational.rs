//! Exact rational parsing and rendering.
//!
//! Heights arrive as decimal strings (`"0.125"`, `"-3"`, `"1e-2"`) or as
//! fractions (`"7/3"`) and are kept as [`BigRational`] for the whole pipeline.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Q = BigRational;

/// Parses a decimal or fraction literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<Q, Error> {
    let s = text.trim();
    let bad = || Error::Schema(format!("not a decimal or fraction literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_rational(num)?;
        let d = parse_rational(den)?;
        if d.is_zero() {
            return Err(Error::Schema(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Q::from_integer(numer);
    if scale >= 0 {
        value *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Canonical exact rendering: `"3"`, `"-7/3"`.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Natural logarithm of a positive rational, robust to numerators and
/// denominators beyond the `f64` range.
pub fn ln_rational(q: &Q) -> f64 {
    assert!(q.is_positive(), "logarithm of a non-positive rational");
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    if let Some(f) = n.to_f64().filter(|f| f.is_finite()) {
        return f.ln();
    }
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(q: &Q) -> f64 {
    if let Some(f) = q.to_f64().filter(|f| f.is_finite()) {
        return f;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_rational(&q.abs())).exp()
}

/// Renders a real at 12 significant digits, trailing zeros kept so the
/// width of the mantissa is stable (`0.693147180560`).
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    // Rounding may carry into a new decade (9.9999999999995 -> 10.0000000000).
    let render = |exp: i32| {
        let decimals = (11 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    };
    let first = render(exponent);
    let digits = first.trim_start_matches('-').replace('.', "");
    let significant = digits.trim_start_matches('0').len();
    if significant > 12 {
        render(exponent + 1)
    } else {
        first
    }
}
