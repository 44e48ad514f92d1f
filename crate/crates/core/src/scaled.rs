//! Probabilities with an extended binary exponent.
//!
//! The recurrences walk the PMF across whole anti-diagonals of the
//! configuration grid. For lists with thousands of elements the intermediate
//! values drop far below the smallest `f64` (e.g. `1 / C(10000, 500)`), and a
//! linear-space chain that hits zero stays at zero forever. `ScaledProb`
//! carries an `i64` power-of-two exponent next to an `f64` mantissa. Rescaling
//! only ever multiplies by exact powers of two, so while the value stays in
//! the normal `f64` range the arithmetic is bit-identical to plain `f64`.

use std::cmp::Ordering;
use std::fmt;

const RESCALE_HI: f64 = 1.0e150;
const RESCALE_LO: f64 = 1.0e-150;

/// `2^e` for `e` in the normal exponent range.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Split a finite, non-zero, normal `x` into `m * 2^e` with `|m|` in `[1, 2)`.
fn frexp(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: lift into the normal range first
        let (m, e) = frexp(x * pow2(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, biased - 1023)
}

/// Non-negative real `mantissa * 2^exponent`.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledProb {
    mantissa: f64,
    exponent: i64,
}

impl ScaledProb {
    pub const ZERO: ScaledProb = ScaledProb {
        mantissa: 0.0,
        exponent: 0,
    };
    pub const ONE: ScaledProb = ScaledProb {
        mantissa: 1.0,
        exponent: 0,
    };

    /// Wrap a finite non-negative `f64`.
    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x.is_finite() && x >= 0.0, "invalid probability {x}");
        ScaledProb {
            mantissa: x,
            exponent: 0,
        }
        .renormalized()
    }

    /// Build from a natural logarithm; `-inf` maps to zero.
    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let e = (ln / std::f64::consts::LN_2).floor();
        let m = (ln - e * std::f64::consts::LN_2).exp();
        ScaledProb {
            mantissa: m,
            exponent: e as i64,
        }
        .renormalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    fn renormalized(self) -> Self {
        let a = self.mantissa.abs();
        if a == 0.0 || (RESCALE_LO..=RESCALE_HI).contains(&a) {
            return self;
        }
        let (m, e) = frexp(self.mantissa);
        ScaledProb {
            mantissa: m,
            exponent: self.exponent + e,
        }
    }

    /// Value as `f64`; flushes to zero (or saturates) outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        let (m, e) = frexp(self.mantissa);
        let e = e + self.exponent;
        if e > 1023 {
            f64::INFINITY
        } else if e >= -1022 {
            m * pow2(e)
        } else if e >= -1100 {
            m * pow2(e + 64) * pow2(-64)
        } else {
            0.0
        }
    }

    pub fn ln(&self) -> f64 {
        if self.mantissa == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    /// Multiply by an ordinary finite factor.
    #[inline]
    pub fn scale(self, factor: f64) -> Self {
        let mantissa = self.mantissa * factor;
        let out = ScaledProb {
            mantissa,
            exponent: self.exponent,
        };
        if mantissa == 0.0 || (RESCALE_LO..=RESCALE_HI).contains(&mantissa.abs()) {
            out
        } else {
            out.renormalized()
        }
    }
}

impl std::ops::Add for ScaledProb {
    type Output = ScaledProb;

    #[inline]
    fn add(self, other: Self) -> Self {
        if other.mantissa == 0.0 {
            return self;
        }
        if self.mantissa == 0.0 {
            return other;
        }
        if self.exponent == other.exponent {
            return ScaledProb {
                mantissa: self.mantissa + other.mantissa,
                exponent: self.exponent,
            }
            .renormalized();
        }
        let (hi, lo) = if self.exponent > other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let gap = lo.exponent - hi.exponent;
        if gap < -1000 {
            return hi;
        }
        ScaledProb {
            mantissa: hi.mantissa + lo.mantissa * pow2(gap),
            exponent: hi.exponent,
        }
        .renormalized()
    }
}

impl Default for ScaledProb {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ScaledProb {
    fn from(x: f64) -> Self {
        ScaledProb::from_f64(x)
    }
}

impl PartialOrd for ScaledProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.mantissa == 0.0, other.mantissa == 0.0) {
            (true, true) => return Some(Ordering::Equal),
            (true, false) => return Some(Ordering::Less),
            (false, true) => return Some(Ordering::Greater),
            _ => {}
        }
        let (ma, ea) = frexp(self.mantissa);
        let (mb, eb) = frexp(other.mantissa);
        match (ea + self.exponent).cmp(&(eb + other.exponent)) {
            Ordering::Equal => ma.partial_cmp(&mb),
            ord => Some(ord),
        }
    }
}

impl fmt::Debug for ScaledProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v > 0.0 || self.is_zero() {
            write!(f, "{v:e}")
        } else {
            write!(f, "exp({})", self.ln())
        }
    }
}
