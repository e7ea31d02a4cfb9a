//! Exact simulation time.
//!
//! Times and service times are rationals over `i128`. Values that arrive as
//! floating point (configuration files, command-line arguments) are snapped
//! to the nearest fraction whose denominator does not exceed
//! [`MAX_DENOMINATOR`], so `62.5`, `0.1` and `1.6666666666666667` become
//! `125/2`, `1/10` and `5/3` respectively.

use num_rational::Ratio;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Time = Ratio<i128>;

pub const MAX_DENOMINATOR: i128 = 1_000_000;

/// Converts a finite `f64` into the closest [`Time`] with a denominator of at
/// most [`MAX_DENOMINATOR`].
pub fn from_f64(value: f64) -> Result<Time> {
    if !value.is_finite() {
        return Err(Error::domain("time", value, "must be finite"));
    }
    if value.abs() > 1e18 {
        return Err(Error::domain("time", value, "magnitude too large"));
    }
    let (mantissa, exponent, sign) = value.integer_decode();
    let mantissa = i128::from(sign) * mantissa as i128;
    let exact = if exponent >= 0 {
        Ratio::from_integer(mantissa << exponent)
    } else if exponent >= -120 {
        Ratio::new(mantissa, 1i128 << (-exponent))
    } else {
        // Below 2^-68 in magnitude; nothing representable survives the
        // denominator limit anyway.
        return Ok(Time::zero());
    };
    Ok(limit_denominator(exact, MAX_DENOMINATOR))
}

pub fn to_f64(t: Time) -> f64 {
    t.to_f64().unwrap_or(f64::NAN)
}

/// Closest fraction to `x` with denominator at most `max_den`.
fn limit_denominator(x: Time, max_den: i128) -> Time {
    if *x.denom() <= max_den {
        return x;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let (mut n, mut d) = (*x.numer(), *x.denom());
    loop {
        let a = n.div_euclid(d);
        let q2 = q0 + a * q1;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p0 + a * p1, q2);
        (n, d) = (d, n - a * d);
        if d == 0 {
            break;
        }
    }
    let k = (max_den - q0) / q1;
    let bound1 = Ratio::new(p0 + k * p1, q0 + k * q1);
    let bound2 = Ratio::new(p1, q1);
    if (bound2 - x).abs() <= (bound1 - x).abs() {
        bound2
    } else {
        bound1
    }
}
