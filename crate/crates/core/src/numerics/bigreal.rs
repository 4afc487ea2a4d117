use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Requested accuracy: `decimal_digits` correct digits after the point,
/// computed internally with `guard_digits` extra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub decimal_digits: u32,
    pub guard_digits: u32,
}

pub const DEFAULT_GUARD_DIGITS: u32 = 15;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> PrecisionContext {
        PrecisionContext { decimal_digits, guard_digits: DEFAULT_GUARD_DIGITS }
    }

    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> PrecisionContext {
        PrecisionContext { decimal_digits, guard_digits }
    }

    /// Bits of absolute accuracy every primitive result must reach.
    pub fn target_bits(&self) -> u32 {
        ((self.decimal_digits + self.guard_digits) as f64 * LOG2_10).ceil() as u32
    }

    /// Fixed-point scale shared by all values produced under this context.
    pub fn bits(&self) -> u32 {
        self.target_bits() + 8
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(30)
    }
}

/// Fixed-point real `mant * 2^-bits` with an absolute error bound of
/// `err` units in the last place.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
    err: f64,
}

fn floor_shift(v: &BigInt, s: u32) -> BigInt {
    // arithmetic shift on BigInt rounds toward -inf
    v >> s as usize
}

impl BigReal {
    pub fn zero(bits: u32) -> BigReal {
        BigReal { mant: BigInt::zero(), bits, err: 0.0 }
    }

    pub fn one(bits: u32) -> BigReal {
        BigReal { mant: BigInt::one() << bits as usize, bits, err: 0.0 }
    }

    pub fn from_raw(mant: BigInt, bits: u32, err_ulps: f64) -> BigReal {
        BigReal { mant, bits, err: err_ulps }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> BigReal {
        let num = q.numer() << bits as usize;
        let (quot, rem) = num.div_mod_floor(q.denom());
        let err = if rem.is_zero() { 0.0 } else { 1.0 };
        BigReal { mant: quot, bits, err }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn err_ulps(&self) -> f64 {
        self.err
    }

    /// log2 of the absolute error bound (`-inf` when exact).
    pub fn error_log2(&self) -> f64 {
        if self.err == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.err.log2() - self.bits as f64
        }
    }

    pub fn error_log10(&self) -> f64 {
        self.error_log2() / LOG2_10
    }

    /// Add `ulps` (at the current scale) to the error bound.
    pub fn widen(&mut self, ulps: f64) {
        self.err += ulps;
    }

    /// Add an absolute error given as log2.
    pub fn widen_abs_log2(&mut self, log2_abs: f64) {
        if log2_abs.is_finite() {
            self.err += (log2_abs + self.bits as f64).exp2();
        }
    }

    /// Rescale to `bits`, rounding down when coarsening.
    pub fn with_bits(&self, bits: u32) -> BigReal {
        use std::cmp::Ordering::*;
        match bits.cmp(&self.bits) {
            Equal => self.clone(),
            Greater => {
                let s = bits - self.bits;
                BigReal { mant: &self.mant << s as usize, bits, err: self.err * (s as f64).exp2() }
            }
            Less => {
                let s = self.bits - bits;
                let exact = (&self.mant & ((BigInt::one() << s as usize) - 1u32)).is_zero();
                BigReal {
                    mant: floor_shift(&self.mant, s),
                    bits,
                    err: self.err / (s as f64).exp2() + if exact { 0.0 } else { 1.0 },
                }
            }
        }
    }

    fn aligned(a: &BigReal, b: &BigReal) -> (BigReal, BigReal) {
        let bits = a.bits.max(b.bits);
        (a.with_bits(bits), b.with_bits(bits))
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let (a, b) = Self::aligned(self, other);
        BigReal { mant: a.mant + b.mant, bits: a.bits, err: a.err + b.err }
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BigReal {
        BigReal { mant: -self.mant.clone(), bits: self.bits, err: self.err }
    }

    /// Upper bound on `|value|` in ulps, as f64.
    fn abs_ulps(&self) -> f64 {
        self.mant.abs().to_f64().unwrap_or(f64::INFINITY) + self.err
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let (a, b) = Self::aligned(self, other);
        let bits = a.bits;
        let prod = &a.mant * &b.mant;
        let exact = (&prod & ((BigInt::one() << bits as usize) - 1u32)).is_zero();
        let scale = (bits as f64).exp2();
        let a_abs = a.mant.abs().to_f64().unwrap_or(f64::INFINITY) / scale;
        let b_abs = b.mant.abs().to_f64().unwrap_or(f64::INFINITY) / scale;
        let err = a_abs * b.err + b_abs * a.err + a.err * b.err / scale + if exact { 0.0 } else { 1.0 };
        BigReal { mant: floor_shift(&prod, bits), bits, err }
    }

    pub fn mul_rational(&self, q: &BigRational) -> BigReal {
        let num = &self.mant * q.numer();
        let (quot, rem) = num.div_mod_floor(q.denom());
        let qf = q.abs().to_f64().unwrap_or(f64::INFINITY);
        BigReal {
            mant: quot,
            bits: self.bits,
            err: self.err * qf + if rem.is_zero() { 0.0 } else { 1.0 },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.err == 0.0
    }

    /// Nearest f64 to the stored value.
    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits();
        if len == 0 {
            return 0.0;
        }
        let drop = len.saturating_sub(60);
        let top = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
        top * (drop as f64 - self.bits as f64).exp2()
    }

    /// Upper bound on `|value| + error` as f64 (used by residual checks).
    pub fn abs_upper_f64(&self) -> f64 {
        let scale = -(self.bits as f64);
        let v = self.to_f64().abs();
        v + self.err * scale.exp2() + f64::EPSILON * v
    }

    /// log10 of an upper bound on `|value| + error`.
    pub fn abs_upper_log10(&self) -> f64 {
        let ulps = self.abs_ulps();
        if ulps == 0.0 {
            return f64::NEG_INFINITY;
        }
        if ulps.is_finite() {
            (ulps.log2() - self.bits as f64) / LOG2_10
        } else {
            self.to_f64().abs().log10()
        }
    }

    /// Decimal string with exactly `digits` digits after the point, rounded
    /// to nearest.
    pub fn to_decimal(&self, digits: u32) -> String {
        let ten_pow = num_traits::pow(BigInt::from(10u32), digits as usize);
        let scaled = &self.mant * &ten_pow;
        let half = BigInt::one() << (self.bits as usize).saturating_sub(1);
        let rounded = if self.bits == 0 {
            scaled
        } else {
            floor_shift(&(scaled + half), self.bits)
        };
        let neg = rounded.sign() == Sign::Minus;
        let s = rounded.abs().to_string();
        let s = if s.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s)
        } else {
            s
        };
        let (int_part, frac) = s.split_at(s.len() - digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or_else(|| ((self.bits as f64 / LOG2_10).floor() as usize).min(40)) as u32;
        f.write_str(&self.to_decimal(digits))
    }
}

/// Render a small positive number such as a residual bound: "3.2e-28".
pub fn format_sci(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.1e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::rat;

    #[test]
    fn decimal_output() {
        let x = BigReal::from_rational(&rat(1, 3), 100);
        assert_eq!(x.to_decimal(5), "0.33333");
        let y = BigReal::from_rational(&rat(-2, 3), 100);
        assert_eq!(y.to_decimal(3), "-0.667");
        assert_eq!(BigReal::from_rational(&rat(5, 8), 10).to_decimal(4), "0.6250");
        assert_eq!(BigReal::from_rational(&rat(123, 1), 10).to_decimal(0), "123");
    }

    #[test]
    fn arithmetic() {
        let a = BigReal::from_rational(&rat(1, 3), 80);
        let b = BigReal::from_rational(&rat(3, 7), 80);
        let p = a.mul(&b);
        assert!((p.to_f64() - 1.0 / 7.0).abs() < 1e-15);
        assert!(p.err_ulps() < 3.0);
        let s = a.add(&b).sub(&BigReal::from_rational(&rat(16, 21), 80));
        assert!(s.abs_upper_f64() < 1e-22);
        let c = a.mul_rational(&rat(-3, 2));
        assert!((c.to_f64() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rescale() {
        let a = BigReal::from_rational(&rat(1, 3), 60);
        let b = a.with_bits(120);
        assert_eq!(b.with_bits(60).mantissa(), a.mantissa());
        assert!((a.with_bits(20).to_f64() - 1.0 / 3.0).abs() < 1e-6);
    }
}
