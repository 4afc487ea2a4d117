//! Streaming evaluation of the nested polylogarithm series
//! `Li_{k1..kn}(z1..zn) = sum_{m1 > .. > mn > 0} prod z_i^(m_i - m_{i+1}) / m_i^(k_i)`
//! for arguments `z_i = z^(e_i)` with rational `0 < z < 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::bigreal::{BigReal, PrecisionContext};
use crate::error::{MzvError, Result};
use crate::word_algebra::Composition;

/// Largest truncation index the kernel accepts.
pub const MAX_TERMS: u64 = 40_000_000;

/// Base point of a polylogarithm argument tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    Rational(BigRational),
    /// The boundary `z = 1`; only meaningful for convergent indices and
    /// rejected by [`li`].
    One,
}

/// Arguments `(z^e1, ..., z^en)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgTuple {
    pub exponents: Vec<u32>,
    pub base: Base,
}

impl ArgTuple {
    pub fn new(exponents: Vec<u32>, base: BigRational) -> ArgTuple {
        ArgTuple { exponents, base: Base::Rational(base) }
    }

    /// All arguments equal to `z`.
    pub fn diagonal(depth: usize, base: BigRational) -> ArgTuple {
        ArgTuple::new(vec![1; depth], base)
    }

    pub fn boundary(c: &Composition) -> Result<ArgTuple> {
        if !c.is_convergent() {
            return Err(MzvError::DivergentIndex(c.to_string()));
        }
        Ok(ArgTuple { exponents: vec![1; c.depth()], base: Base::One })
    }
}

#[derive(Debug, Clone)]
enum Factor {
    Shift(u32),
    MulShift(u64, u32),
    MulDiv(u64, u64),
    Big(BigInt, BigInt),
}

impl Factor {
    fn new(num: BigInt, den: BigInt) -> Factor {
        let pow2 = (den.clone() & (den.clone() - 1u32)).is_zero();
        let shift = den.bits() as u32 - 1;
        match (num.to_u64(), den.to_u64(), pow2) {
            (Some(1), _, true) => Factor::Shift(shift),
            (Some(n), _, true) => Factor::MulShift(n, shift),
            (Some(n), Some(d), _) => Factor::MulDiv(n, d),
            _ => Factor::Big(num, den),
        }
    }

    /// `floor(v * factor)`; `v` is nonnegative.
    fn apply(&self, v: &BigInt) -> BigInt {
        match self {
            Factor::Shift(s) => v >> *s as usize,
            Factor::MulShift(n, s) => (v * *n) >> *s as usize,
            Factor::MulDiv(n, d) => (v * *n) / *d,
            Factor::Big(n, d) => (v * n).div_floor(d),
        }
    }
}

fn ln_f64(q: &BigRational) -> f64 {
    // ln of a rational in (0,1) without losing precision near 1
    let num = q.numer().to_f64().unwrap_or(f64::MAX);
    let den = q.denom().to_f64().unwrap_or(f64::MAX);
    let gap = (q.denom() - q.numer()).to_f64().unwrap_or(f64::MAX) / den;
    if gap < 0.5 {
        (-gap).ln_1p()
    } else {
        (num / den).ln()
    }
}

/// log2 of the tail bound after truncating the outermost index at `m`.
fn tail_log2(m: u64, log2_r: f64, depth: usize, k1: u32) -> f64 {
    let e = depth as i64 - 1 - k1 as i64;
    let mp1 = (m + 1) as f64;
    let growth = if e > 0 { e as f64 * (1.0 + 1.0 / m as f64).log2() } else { 0.0 };
    let log2_rho = log2_r + growth;
    if log2_rho >= 0.0 {
        return f64::INFINITY;
    }
    let one_minus_rho = -(log2_rho.exp2() - 1.0);
    (m + 1) as f64 * log2_r + e as f64 * mp1.log2() - one_minus_rho.log2()
}

/// Smallest truncation index whose tail bound is below `2^-target_bits`.
fn truncation_index(log2_r: f64, depth: usize, k1: u32, target_bits: f64) -> Result<u64> {
    let mut m = ((target_bits / -log2_r).ceil() as u64).max(depth as u64 + 1);
    while tail_log2(m, log2_r, depth, k1) > -target_bits {
        m += (m / 16).max(1);
        if m > MAX_TERMS {
            return Err(MzvError::DomainError(format!(
                "argument too close to 1: more than {MAX_TERMS} terms needed"
            )));
        }
    }
    Ok(m)
}

/// `Li_c(z^e1, ..., z^en)` to the precision of `ctx`, at scale `ctx.bits()`.
pub fn li(c: &Composition, args: &ArgTuple, ctx: &PrecisionContext) -> Result<BigReal> {
    let depth = c.depth();
    if args.exponents.len() != depth {
        return Err(MzvError::DepthMismatch { index: depth, args: args.exponents.len() });
    }
    let z = match &args.base {
        Base::One => {
            return Err(MzvError::DomainError("z = 1 is the boundary; use zeta instead".into()))
        }
        Base::Rational(z) => z,
    };
    if *z <= BigRational::zero() || *z >= BigRational::one() {
        return Err(MzvError::DomainError(format!("base {z} is not in (0,1)")));
    }
    if args.exponents.iter().any(|&e| e == 0) {
        return Err(MzvError::DomainError("argument exponents must be positive".into()));
    }

    let emin = *args.exponents.iter().min().expect("depth >= 1");
    let log2_r = emin as f64 * ln_f64(z) / std::f64::consts::LN_2;
    // 4 bits of margin absorb the f64 rounding in the bound itself
    let target = ctx.target_bits() as f64 + 4.0;
    let parts = c.parts();
    let m_max = truncation_index(log2_r, depth, parts[0], target)?;

    let kmax = *parts.iter().max().expect("depth >= 1");
    let emax = *args.exponents.iter().max().expect("depth >= 1");
    let round_ulps = (m_max + 1) as f64 * (depth as f64 + 1.0) * ((kmax + emax) as f64 + 3.0);
    let extra = round_ulps.log2().ceil() as u32 + 2;
    let bits = ctx.bits() + extra;

    let factors: Vec<Factor> = args
        .exponents
        .iter()
        .map(|&e| {
            Factor::new(num_traits::pow(z.numer().clone(), e as usize), num_traits::pow(z.denom().clone(), e as usize))
        })
        .collect();

    let total = stream_u128(parts, z, &args.exponents, m_max, bits)
        .unwrap_or_else(|| stream(parts, &factors, m_max, bits));
    let mut out = BigReal::from_raw(total, bits, round_ulps);
    out.widen_abs_log2(tail_log2(m_max, log2_r, depth, parts[0]));
    Ok(out.with_bits(ctx.bits()))
}

/// Powers `m^k` split into chunks that fit in u64.
fn divide_by_power(v: &BigInt, m: u64, k: u32) -> BigInt {
    let per_chunk = (64 / (64 - m.leading_zeros())).max(1);
    let mut out = v.clone();
    let mut left = k;
    while left > 0 {
        let take = left.min(per_chunk);
        out /= m.pow(take);
        left -= take;
    }
    out
}

fn stream(parts: &[u32], factors: &[Factor], m_max: u64, bits: u32) -> BigInt {
    let n = parts.len();
    // g[i] holds the partial sums feeding level i (0-based), for i >= 1
    let mut g = vec![BigInt::zero(); n];
    let mut pow_n = factors[n - 1].apply(&(BigInt::one() << bits as usize));
    let mut total = BigInt::zero();
    let mut level = vec![BigInt::zero(); n];
    for m in 1..=m_max {
        level[n - 1] = divide_by_power(&pow_n, m, parts[n - 1]);
        for i in (0..n - 1).rev() {
            level[i] = divide_by_power(&g[i + 1], m, parts[i]);
        }
        total += &level[0];
        for i in 1..n {
            let sum = &g[i] + &level[i];
            g[i] = factors[i - 1].apply(&sum);
        }
        pow_n = factors[n - 1].apply(&pow_n);
    }
    total
}

/// Same recursion on u128 fixed point, applying `z` once per unit of
/// exponent. Returns `None` when the scale leaves too little headroom or an
/// operation would overflow.
fn stream_u128(parts: &[u32], z: &BigRational, exps: &[u32], m_max: u64, bits: u32) -> Option<BigInt> {
    let p = z.numer().to_u64().filter(|&p| p < 1 << 32)? as u128;
    let q = z.denom().to_u64().filter(|&q| q < 1 << 32)? as u128;
    // 16 bits of integer headroom plus the multiplier width
    if bits + 16 + (128 - p.leading_zeros()) > 127 {
        return None;
    }
    let q_shift = q.is_power_of_two().then(|| q.trailing_zeros());
    let apply = |v: u128, e: u32| -> Option<u128> {
        let mut v = v;
        for _ in 0..e {
            let t = v.checked_mul(p)?;
            v = match q_shift {
                Some(s) => t >> s,
                None => t / q,
            };
        }
        Some(v)
    };
    let div_pow = |v: u128, m: u64, k: u32| -> u128 {
        let m = m as u128;
        let mut v = v;
        let mut left = k;
        while left > 0 {
            if left >= 2 && m < 1 << 32 {
                v /= m * m;
                left -= 2;
            } else {
                v /= m;
                left -= 1;
            }
        }
        v
    };
    let n = parts.len();
    let mut g = vec![0u128; n];
    let mut level = vec![0u128; n];
    let mut pow_n = apply(1u128 << bits, exps[n - 1])?;
    let mut total: u128 = 0;
    for m in 1..=m_max {
        level[n - 1] = div_pow(pow_n, m, parts[n - 1]);
        for i in (0..n - 1).rev() {
            level[i] = div_pow(g[i + 1], m, parts[i]);
        }
        total = total.checked_add(level[0])?;
        for i in 1..n {
            g[i] = apply(g[i].checked_add(level[i])?, exps[i - 1])?;
        }
        pow_n = apply(pow_n, exps[n - 1])?;
    }
    if total >> (bits + 16) != 0 {
        return None;
    }
    Some(BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::rat;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn li1_is_log() {
        let ctx = PrecisionContext::new(20);
        let v = li(&comp("1"), &ArgTuple::diagonal(1, rat(1, 2)), &ctx).unwrap();
        assert_eq!(v.to_decimal(16), "0.6931471805599453");
        let v = li(&comp("1"), &ArgTuple::diagonal(1, rat(7, 10)), &ctx).unwrap();
        assert!((v.to_f64() - (10.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn domain_and_depth_errors() {
        let ctx = PrecisionContext::new(10);
        assert!(matches!(
            li(&comp("2"), &ArgTuple::diagonal(1, rat(1, 1)), &ctx),
            Err(MzvError::DomainError(_))
        ));
        assert!(matches!(
            li(&comp("2,1"), &ArgTuple::diagonal(1, rat(1, 2)), &ctx),
            Err(MzvError::DepthMismatch { .. })
        ));
        let b = ArgTuple::boundary(&comp("2")).unwrap();
        assert!(matches!(li(&comp("2"), &b, &ctx), Err(MzvError::DomainError(_))));
        assert!(ArgTuple::boundary(&comp("1,2")).is_err());
    }

    #[test]
    fn fast_path_matches_bigint() {
        let z = rat(7, 8);
        let parts = [1u32, 2, 1];
        let exps = [1u32, 2, 1];
        let factors: Vec<Factor> = exps
            .iter()
            .map(|&e| Factor::new(num_traits::pow(BigInt::from(7), e as usize), num_traits::pow(BigInt::from(8), e as usize)))
            .collect();
        let slow = stream(&parts, &factors, 400, 70);
        let fast = stream_u128(&parts, &z, &exps, 400, 70).unwrap();
        let diff = (slow - fast).magnitude().to_u64().unwrap();
        assert!(diff < 400 * 4 * 8, "{diff}");
    }

    #[test]
    fn factor_kinds() {
        let v = BigInt::from(1000u32);
        assert_eq!(Factor::new(1.into(), 4.into()).apply(&v), BigInt::from(250));
        assert_eq!(Factor::new(3.into(), 4.into()).apply(&v), BigInt::from(750));
        assert_eq!(Factor::new(3.into(), 10.into()).apply(&v), BigInt::from(300));
    }
}
