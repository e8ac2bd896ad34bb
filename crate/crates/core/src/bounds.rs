//! Evaluators for the estimates that control the probability
//! `π_n = P(Γ ∉ T)` for `Γ ∈ G(n, 1/2)`.
//!
//! `f` is evaluated as an exact rational for `n <= F_EXACT_LIMIT` and in
//! log space (f64, about 15 significant digits) beyond that. The
//! recursion bounds are exact rationals; the Hoeffding-type tails are f64.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Published census constants for `n = 9`.
pub const T9: u64 = 14_853_635_863;
pub const C9: u64 = 683_846_354_560;
/// The uniform bound on `f(n)`, `n >= 18`.
pub const BETA: f64 = 0.03760;
pub const F_EXACT_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("M = {m} exceeds n/2 for n = {n}")]
    MTooLarge { n: usize, m: usize },
    #[error("{0}")]
    Domain(String),
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `f(n) = 2n Σ_{i=0}^{n} C(n,i) 2^{-n-C(i,2)}` exactly.
pub fn f_exact(n: usize) -> Result<BigRational, BoundsError> {
    if n == 0 || n > F_EXACT_LIMIT {
        return Err(BoundsError::Domain(format!(
            "exact f(n) needs 1 <= n <= {F_EXACT_LIMIT}, got {n}"
        )));
    }
    // Common denominator 2^{n + C(n,2)}.
    let top = n * (n - 1) / 2;
    let mut num = BigInt::zero();
    for i in 0..=n {
        num += BigInt::from(binomial(n, i)) << (top - i * i.saturating_sub(1) / 2);
    }
    Ok(BigRational::new(num * BigInt::from(2 * n), pow2(n + top)))
}

/// `f(n)` as f64; exact then rounded for small `n`, log-sum-exp otherwise.
pub fn f(n: usize) -> Result<f64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("f(n) needs n >= 1".into()));
    }
    if n <= F_EXACT_LIMIT {
        return Ok(to_f64(&f_exact(n)?));
    }
    Ok(ln_f_log_space(n).exp())
}

/// Natural logarithm of `f(n)`; usable where `f(n)` itself underflows.
pub fn ln_f(n: usize) -> Result<f64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("f(n) needs n >= 1".into()));
    }
    Ok(ln_f_log_space(n))
}

fn ln_f_log_space(n: usize) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let mut ln_binom = 0.0;
    let terms: Vec<f64> = (0..=n)
        .map(|i| {
            if i > 0 {
                ln_binom += ((n - i + 1) as f64).ln() - (i as f64).ln();
            }
            ln_binom - ln2 * (n + i * i.saturating_sub(1) / 2) as f64
        })
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    (2.0 * n as f64).ln() + max + sum.ln()
}

/// `⌊n^{2/3}⌋`, computed in integers.
pub fn floor_two_thirds(n: usize) -> usize {
    let target = (n as u128) * (n as u128);
    let mut m = (n as f64).powf(2.0 / 3.0) as u128;
    while m * m * m > target {
        m -= 1;
    }
    while (m + 1) * (m + 1) * (m + 1) <= target {
        m += 1;
    }
    m as usize
}

/// `g(n, M) = exp(-n/2 + 2M - 2M²/n)`, for `M <= n/2`.
pub fn g(n: usize, m: usize) -> Result<f64, BoundsError> {
    if 2 * m > n {
        return Err(BoundsError::MTooLarge { n, m });
    }
    let (n, m) = (n as f64, m as f64);
    Ok((-n / 2.0 + 2.0 * m - 2.0 * m * m / n).exp())
}

/// `2^{-n} Σ_{i=0}^{5} C(n,i) 2^{-C(i,2)}`.
pub fn small_clique_term(n: usize) -> f64 {
    let s: f64 = (0..=5.min(n))
        .map(|i| binomial(n, i).to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-((i * i.saturating_sub(1) / 2) as i32)))
        .sum();
    s * 2f64.powi(-(n as i32))
}

/// `h(n) = 2^{-n} Σ_{i≤5} C(n,i) 2^{-C(i,2)} + 2^{-15} g(n, ⌊n^{2/3}⌋)`.
pub fn h(n: usize) -> Result<f64, BoundsError> {
    Ok(small_clique_term(n) + 2f64.powi(-15) * g(n, floor_two_thirds(n))?)
}

/// Closed-form upper bound for `g(n, ⌊n^{2/3}⌋)`.
pub fn g_smooth(n: usize) -> f64 {
    let n = n as f64;
    let c = n.cbrt();
    (-n / 2.0 + 2.0 * c * c - 2.0 * c + 4.0 / c - 2.0 / n).exp()
}

/// The three pieces of the uniform bound on `f(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsmallBreakdown {
    /// `2n · 2^{-n^{2/3}(n^{2/3}-1)/2}`.
    pub upper_tail: f64,
    /// `2n · 2^{-15} · g_smooth(n)`.
    pub hoeffding_term: f64,
    /// The same with the exact `g(n, ⌊n^{2/3}⌋)`.
    pub hoeffding_term_exact_g: f64,
    /// `2n · 2^{-n} Σ_{i≤5} C(n,i) 2^{-C(i,2)}`.
    pub small_cliques: f64,
    pub total: f64,
}

pub fn fsmall_breakdown(n: usize) -> Result<FsmallBreakdown, BoundsError> {
    let two_n = 2.0 * n as f64;
    let a = (n as f64).powf(2.0 / 3.0);
    let upper_tail = two_n * 2f64.powf(-a * (a - 1.0) / 2.0);
    let hoeffding_term = two_n * 2f64.powi(-15) * g_smooth(n);
    let hoeffding_term_exact_g = two_n * 2f64.powi(-15) * g(n, floor_two_thirds(n))?;
    let small_cliques = two_n * small_clique_term(n);
    Ok(FsmallBreakdown {
        upper_tail,
        hoeffding_term,
        hoeffding_term_exact_g,
        small_cliques,
        total: upper_tail + hoeffding_term + small_cliques,
    })
}

/// `π_9 = 1 - t(9)/2^36`, exactly.
pub fn pi9_exact(t9: u64) -> BigRational {
    BigRational::one() - BigRational::new(BigInt::from(t9), pow2(36))
}

pub fn pi9(t9: u64) -> f64 {
    to_f64(&pi9_exact(t9))
}

/// `π_n² + 2π_n(1-π_n) · n c(n) / (2^n t(n)) + (1-π_n)²`.
pub fn pi_2n_bound_exact(n: usize, t: u64, c: u64, pi: &BigRational) -> Result<BigRational, BoundsError> {
    if pi.is_negative() || pi > &BigRational::one() {
        return Err(BoundsError::Domain("π_n must lie in [0, 1]".into()));
    }
    if t == 0 {
        return Err(BoundsError::Domain("t(n) must be positive".into()));
    }
    let one = BigRational::one();
    let q = &one - pi;
    let ratio = BigRational::new(BigInt::from(n) * BigInt::from(c), pow2(n) * BigInt::from(t));
    Ok(pi * pi + BigRational::from_integer(BigInt::from(2)) * pi * &q * ratio + &q * &q)
}

pub fn pi_2n_bound(n: usize, t: u64, c: u64, pi: f64) -> Result<f64, BoundsError> {
    let pi = BigRational::from_float(pi).ok_or_else(|| BoundsError::Domain("π_n is not finite".into()))?;
    Ok(to_f64(&pi_2n_bound_exact(n, t, c, &pi)?))
}

/// `π_{n+1} <= π_n + f(n)`.
pub fn pi_next_bound(n: usize, pi: f64) -> Result<f64, BoundsError> {
    Ok(pi + f(n)?)
}

/// `Σ_{i=n}^{n+k-1} f(i)`.
pub fn additive_tail(n: usize, k: usize) -> Result<f64, BoundsError> {
    (n..n + k).map(f).sum()
}

/// `α² + β < α`.
pub fn contraction_holds(alpha: f64, beta: f64) -> bool {
    alpha * alpha + beta < alpha
}

pub fn to_f64(r: &BigRational) -> f64 {
    // Scale to keep the integer division exact to double precision.
    if r.is_zero() {
        return 0.0;
    }
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
    let shift = 64 - bits;
    let scaled = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Decimal rendering with `sig` significant digits, rounded half up.
pub fn render_decimal(r: &BigRational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let mut exp = to_f64(&a).log10().floor() as i64;
    let ten = BigInt::from(10);
    let scale = |d: i64| -> BigRational {
        if d >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), d as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-d) as usize))
        }
    };
    // Correct the float estimate of the decimal exponent.
    while a < scale(exp) {
        exp -= 1;
    }
    while a >= scale(exp + 1) {
        exp += 1;
    }
    let d = sig as i64 - 1 - exp;
    let scaled = &a * scale(d);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer().to_string();
    let mut point = digits.len() as i64 - d;
    if digits.len() > sig {
        digits.pop();
        point = digits.len() as i64 + 1 - d;
    }
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_small_values() {
        assert_eq!(f_exact(1).unwrap(), BigRational::from_integer(BigInt::from(2)));
        assert_eq!(f(1).unwrap(), 2.0);
        let f18 = f(18).unwrap();
        assert!((f18 - 0.034917510828467106).abs() < 1e-15);
        assert_eq!(render_decimal(&f_exact(18).unwrap(), 12), "0.0349175108285");
    }

    #[test]
    fn log_space_matches_exact() {
        for n in [18usize, 50, 100, 200, 256] {
            let exact = f(n).unwrap();
            let approx = ln_f(n).unwrap().exp();
            assert!((approx / exact - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn floor_power() {
        assert_eq!(floor_two_thirds(18), 6);
        assert_eq!(floor_two_thirds(27), 9);
        assert_eq!(floor_two_thirds(26), 8);
        assert_eq!(floor_two_thirds(1000), 100);
        assert_eq!(floor_two_thirds(999), 99);
    }

    #[test]
    fn tails() {
        assert!((g(18, 0).unwrap() - (-9f64).exp()).abs() < 1e-18);
        assert!(matches!(g(18, 10), Err(BoundsError::MTooLarge { n: 18, m: 10 })));
        let b = fsmall_breakdown(18).unwrap();
        assert!((b.upper_tail - 3.09e-5).abs() < 1e-7);
        assert!(b.hoeffding_term < 0.002731);
        assert!((b.small_cliques - 0.03484).abs() < 5e-6);
        assert!(b.total < BETA);
        assert!(b.hoeffding_term_exact_g <= b.hoeffding_term);
        assert!(h(18).unwrap() > 0.0);
    }

    #[test]
    fn recursion_bounds() {
        assert!((pi9(T9) - 0.78385).abs() < 1e-5);
        let pi = pi9_exact(T9);
        let alpha = to_f64(&pi_2n_bound_exact(9, T9, C9, &pi).unwrap());
        assert!((alpha - 0.93537).abs() < 1e-4);
        assert!(contraction_holds(alpha, BETA));
        assert_eq!(pi_2n_bound(9, T9, C9, 0.0).unwrap(), 1.0);
        assert!(pi_2n_bound(9, T9, C9, 1.5).is_err());
        assert_eq!(additive_tail(18, 1).unwrap(), f(18).unwrap());
        assert_eq!(pi_next_bound(18, 0.5).unwrap(), 0.5 + f(18).unwrap());
    }

    #[test]
    fn rendering() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(render_decimal(&r, 5), "0.33333");
        assert_eq!(render_decimal(&BigRational::new(BigInt::from(2), BigInt::from(3)), 3), "0.667");
        assert_eq!(render_decimal(&BigRational::from_integer(BigInt::from(1234)), 2), "1200");
        assert_eq!(render_decimal(&BigRational::new(BigInt::from(-999), BigInt::from(1000)), 2), "-1.0");
        assert_eq!(render_decimal(&BigRational::from_integer(BigInt::from(2)), 3), "2.00");
    }
}
