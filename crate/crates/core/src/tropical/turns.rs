//! Arguments measured in turns (units of `2π`), kept as exact rationals.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Turn = Ratio<i128>;

/// Largest denominator accepted when reading an `f64` argument.
pub const MAX_DENOMINATOR: i128 = 1 << 24;

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub fn rationalize(x: f64, max_den: i128) -> Turn {
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 || ((h1 as f64) / (k1 as f64) - x).abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    Ratio::new(h1, k1)
}

/// Representative in `[0, 1)`.
pub fn reduce(t: Turn) -> Turn {
    let f = t.floor();
    let r = t - f;
    if r < Turn::zero() {
        r + Turn::one()
    } else {
        r
    }
}

/// The argument of `z` in turns, rationalized.
pub fn arg_turns(z: num_complex::Complex64) -> Turn {
    reduce(rationalize(z.arg() / std::f64::consts::TAU, MAX_DENOMINATOR))
}

pub fn to_f64(t: Turn) -> f64 {
    *t.numer() as f64 / *t.denom() as f64
}

pub fn half() -> Turn {
    Ratio::new(1, 2)
}
