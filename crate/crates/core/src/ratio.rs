//! Exact nonnegative rationals and their decimal rendering.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A reduced nonnegative fraction `num / den` with `den >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::OutsideScope("zero denominator".into()));
        }
        Ok(ExactRatio(Ratio::new(num, den)))
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    /// The same value as a signed rational, for differences.
    pub fn to_signed(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numer().clone()),
            BigInt::from(self.denom().clone()),
        )
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &ExactRatio) -> ExactRatio {
        if self >= other {
            ExactRatio(&self.0 - &other.0)
        } else {
            ExactRatio(&other.0 - &self.0)
        }
    }
}

impl From<Ratio<BigUint>> for ExactRatio {
    fn from(r: Ratio<BigUint>) -> Self {
        ExactRatio(r)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

fn pow10(k: u32) -> BigUint {
    BigUint::from(10u32).pow(k)
}

/// `floor(num / den)` rounded to nearest, ties to even.
fn div_round_half_even(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    let twice = &r << 1usize;
    if twice > *den || (twice == *den && q.is_odd()) {
        q + 1u32
    } else {
        q
    }
}

/// Decimal string with `sig_figs` significant digits, rounding half to even,
/// in positional notation (never exponent form).
///
/// `2/3` renders as `0.666666667` and `1` as `1.00000000` at nine digits.
pub fn render_decimal(r: &ExactRatio, sig_figs: usize) -> String {
    render_with(r, sig_figs, div_round_half_even)
}

/// Like [`render_decimal`] but drops the digits past `sig_figs`.
pub fn render_truncated(r: &ExactRatio, sig_figs: usize) -> String {
    render_with(r, sig_figs, |a, b| a / b)
}

fn render_with(
    r: &ExactRatio,
    sig_figs: usize,
    divide: fn(&BigUint, &BigUint) -> BigUint,
) -> String {
    let sig = sig_figs.max(1);
    let (a, b) = (r.numer(), r.denom());
    if a.is_zero() {
        return if sig == 1 {
            "0".to_string()
        } else {
            format!("0.{}", "0".repeat(sig - 1))
        };
    }

    // e = floor(log10(a / b))
    let digits = |x: &BigUint| x.to_str_radix(10).len() as i64;
    let mut e = digits(a) - digits(b);
    let at_least = |e: i64| {
        if e >= 0 {
            *a >= b * pow10(e as u32)
        } else {
            a * pow10((-e) as u32) >= *b
        }
    };
    if !at_least(e) {
        e -= 1;
    }

    let shift = sig as i64 - 1 - e;
    let mut mantissa = if shift >= 0 {
        divide(&(a * pow10(shift as u32)), b)
    } else {
        divide(a, &(b * pow10((-shift) as u32)))
    };
    if mantissa == pow10(sig as u32) {
        mantissa = pow10(sig as u32 - 1);
        e += 1;
    }

    let ds = mantissa.to_str_radix(10);
    if e >= 0 {
        let int_len = e as usize + 1;
        if int_len >= ds.len() {
            format!("{}{}", ds, "0".repeat(int_len - ds.len()))
        } else {
            format!("{}.{}", &ds[..int_len], &ds[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
    }
}

/// Rounds a positive value to the nearest number with a `bits`-bit binary
/// mantissa (ties to even), as a binary floating-point type would store it.
pub fn round_to_binary(r: &ExactRatio, bits: u32) -> ExactRatio {
    let (a, b) = (r.numer(), r.denom());
    if a.is_zero() || bits == 0 {
        return r.clone();
    }
    let lo = BigUint::one() << (bits as usize - 1);
    let hi = BigUint::one() << bits as usize;
    // Find k with 2^(bits-1) <= a 2^k / b < 2^bits.
    let mut k = bits as i64 - (a.bits() as i64 - b.bits() as i64);
    let scaled_floor = |k: i64| {
        if k >= 0 {
            (a << k as usize) / b
        } else {
            a / (b << (-k) as usize)
        }
    };
    loop {
        let f = scaled_floor(k);
        if f >= hi {
            k -= 1;
        } else if f < lo {
            k += 1;
        } else {
            break;
        }
    }
    let m = if k >= 0 {
        div_round_half_even(&(a << k as usize), b)
    } else {
        div_round_half_even(a, &(b << (-k) as usize))
    };
    if k >= 0 {
        ExactRatio(Ratio::new(m, BigUint::one() << k as usize))
    } else {
        ExactRatio(Ratio::new(m << (-k) as usize, BigUint::one()))
    }
}

/// `count / size` as a 32-bit binary floating-point computation displays it:
/// both operands and the quotient are rounded to a 32-bit mantissa, and the
/// result is printed to nine significant digits.
pub fn render_binary32_display(count: &BigUint, size: &BigUint) -> String {
    let round = |x: ExactRatio| round_to_binary(&x, 32);
    let num = round(ExactRatio(Ratio::from_integer(count.clone())));
    let den = round(ExactRatio(Ratio::from_integer(size.clone())));
    if den.numer().is_zero() {
        return "nan".to_string();
    }
    let quotient = round(ExactRatio(num.0 / den.0));
    render_decimal(&quotient, 9)
}
