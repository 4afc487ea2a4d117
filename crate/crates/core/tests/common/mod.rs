//! Test-only reference values, computed without the library's numerics.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

/// pi to 60 decimal places.
pub const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";

/// Truncated decimal string as an exact rational.
pub fn decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(num, den)
}

/// `c * pi^k` to about 58 digits.
pub fn pi_power(k: usize, c: BigRational) -> BigRational {
    num_traits::pow(decimal(PI_60), k) * c
}

/// Exact decimal digits of a rational, truncated.
pub fn digits(q: &BigRational, n: usize) -> String {
    let scaled = q * BigRational::from_integer(num_traits::pow(BigInt::from(10), n));
    let t = scaled.to_integer().to_string();
    let (a, b) = t.split_at(t.len() - n);
    format!("{}.{}", if a.is_empty() { "0" } else { a }, b)
}

const BERNOULLI: [(f64, f64); 6] =
    [(1.0, 6.0), (-1.0, 30.0), (1.0, 42.0), (-1.0, 30.0), (5.0, 66.0), (-691.0, 2730.0)];

/// Asymptotic series `sum_i c_i m^(-e_i)`.
type Series = Vec<(f64, f64)>;

/// Euler-Maclaurin expansion of `sum_{k > m} k^(-s)`, `s > 1`.
fn tail_single(s: f64) -> Series {
    let mut out = vec![(1.0 / (s - 1.0), s - 1.0), (-0.5, s)];
    let mut fact = 1.0;
    for (k, (bn, bd)) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        // (s)_(2k-1)
        let rising = (0..2 * k - 1).fold(1.0, |acc, i| acc * (s + i as f64));
        out.push((bn / bd / fact * rising, s + 2.0 * k as f64 - 1.0));
    }
    out
}

/// Expansion of `sum_{m_1 > .. > m_j > m} prod m_i^(-s_i)` in `m`.
fn tail_nested(s: &[u32]) -> Series {
    let (last, head) = s.split_last().unwrap();
    if head.is_empty() {
        return tail_single(*last as f64);
    }
    let inner = tail_nested(head);
    let mut out = Series::new();
    for (c, e) in inner {
        for (c2, e2) in tail_single(*last as f64 + e) {
            out.push((c * c2, e2));
        }
    }
    out
}

fn eval_series(series: &Series, m: f64) -> f64 {
    series.iter().map(|(c, e)| c * m.powf(-e)).sum()
}

/// `ζ(s)` by truncated nested sums up to `n` plus an asymptotic tail whose
/// neglected part is below `n^-12`. Agrees with the true value to about
/// `1e-14` for weights up to 8.
pub fn zeta_direct(s: &[u32]) -> f64 {
    assert!(s[0] >= 2, "divergent index");
    let n = 4000usize;
    let d = s.len();
    // g[i][m] = sum over n >= m_i > .. > m_d >= 1 with m_i <= m
    let mut g = vec![vec![0.0f64; n + 1]; d + 1];
    g[d].iter_mut().for_each(|v| *v = 1.0);
    for i in (0..d).rev() {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for m in 1..=n {
            // Kahan summation
            let term = (m as f64).powi(-(s[i] as i32)) * g[i + 1][m - 1];
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            g[i][m] = acc;
        }
    }
    let mut total = g[0][n];
    for j in 1..=d {
        let a = eval_series(&tail_nested(&s[..j]), n as f64);
        total += a * g[j][n];
    }
    total
}

/// Convergent indices of weight `2..=max_weight` and depth `1..=max_depth`.
pub fn convergent_indices(max_weight: u32, max_depth: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let min = if acc.is_empty() { 2 } else { 1 };
        for k in min..=rem {
            acc.push(k);
            rec(rem - k, slots - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for w in 2..=max_weight {
        for d in 1..=max_depth {
            rec(w, d, &mut Vec::new(), &mut out);
        }
    }
    out
}
