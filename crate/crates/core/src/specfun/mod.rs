//! Special functions: log-Gamma and binomials, terminating Gauss
//! hypergeometric sums, Jacobi and Hermite polynomials, and the `G^{11}_{11}`
//! Meijer function.

mod scalar;

pub use scalar::{
    ln_abs_rational, parse_rational, powi, rational_sqrt, rational_to_f64, Rational, Scalar,
};

use crate::error::{Error, Result};
use scalar::LOG_DOMAIN_THRESHOLD;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln n!`
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// `n!` as a float; exact up to `n = 22`, log-domain above the size threshold.
pub fn factorial(n: u64) -> f64 {
    if (n as f64) > LOG_DOMAIN_THRESHOLD {
        return ln_factorial(n).exp();
    }
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Integer binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if (n as f64) > LOG_DOMAIN_THRESHOLD {
        return ln_binomial(n, k).exp();
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `ln C(n, k)` for `0 <= k <= n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Rising factorial `(a)_s = a (a+1) ... (a+s-1)`.
pub fn pochhammer<T: Scalar>(a: &T, s: u32) -> T {
    (0..s).fold(T::one(), |acc, i| acc * (a.clone() + T::from_int(i as i64)))
}

/// Terminating Gauss sum `2F1(-k, b; c; x) = Σ_{s=0}^{k} (-k)_s (b)_s / ((c)_s s!) x^s`.
///
/// Terms are generated by the Pochhammer ratio
/// `t_{s+1} = t_s (s-k)(b+s) / ((c+s)(s+1)) x`. A vanishing `(c)_s` is only an
/// error when it is reached before the numerator has terminated, which allows
/// the Kravchuk case `c = -N`, `k <= N`.
pub fn hyp2f1_terminating<T: Scalar>(k: u32, b: &T, c: &T, x: &T) -> Result<T> {
    let mut sum = T::zero();
    let mut term = T::one();
    for s in 0..=k {
        sum = sum + term.clone();
        if s == k || term.is_zero() {
            break;
        }
        let si = T::from_int(s as i64);
        let cs = c.clone() + si.clone();
        let numer = (si.clone() - T::from_int(k as i64)) * (b.clone() + si.clone());
        if cs.is_zero() {
            if numer.is_zero() {
                break;
            }
            return Err(Error::Parameter(format!(
                "2F1 denominator (c)_{} vanishes before the series terminates (k = {k})",
                s + 1
            )));
        }
        term = term * numer / (cs * (si + T::one())) * x.clone();
    }
    Ok(sum)
}

/// Jacobi polynomial `P_k^{(α,β)}(t)`.
///
/// Evaluated from the explicit sum
/// `Σ_s C(k+α, k-s) C(k+β, s) ((t-1)/2)^s ((t+1)/2)^{k-s}` with generalized
/// binomials, which is a polynomial identity in `α` and `β`. A negative
/// integer `α = -ℓ` with `1 <= ℓ <= k` goes through
/// `P_k^{(-ℓ,β)} = [Γ(k+β+1)/Γ(k+β+1-ℓ)] [(k-ℓ)!/k!] ((t-1)/2)^ℓ P_{k-ℓ}^{(ℓ,β)}`,
/// which exposes the `((t-1)/2)^ℓ` zero explicitly.
pub fn jacobi<T: Scalar>(k: u32, alpha: &T, beta: &T, t: &T) -> T {
    if let Some(ell) = negative_integer_in(alpha, k) {
        let coeff = jacobi_reduction_coefficient(k, ell, beta);
        let half_tm1 = (t.clone() - T::one()) / T::from_int(2);
        let reduced = explicit_sum(k - ell, &T::from_int(ell as i64), beta, t);
        return coeff * powi(&half_tm1, ell as i64) * reduced;
    }
    explicit_sum(k, alpha, beta, t)
}

/// Coefficient `Γ(k+β+1)/Γ(k+β+1-ℓ) · (k-ℓ)!/k!` of the negative-`α` reduction.
pub fn jacobi_reduction_coefficient<T: Scalar>(k: u32, ell: u32, beta: &T) -> T {
    let top = T::from_int(k as i64) + beta.clone();
    T::falling_ratio(&top, &T::from_int(k as i64), ell)
}

fn negative_integer_in<T: Scalar>(alpha: &T, k: u32) -> Option<u32> {
    let a = alpha.as_integer()?;
    if a < 0 && -a <= k as i64 {
        Some((-a) as u32)
    } else {
        None
    }
}

fn explicit_sum<T: Scalar>(k: u32, alpha: &T, beta: &T, t: &T) -> T {
    let two = T::from_int(2);
    let lo = (t.clone() - T::one()) / two.clone();
    let hi = (t.clone() + T::one()) / two;
    let ka = T::from_int(k as i64) + alpha.clone();
    let kb = T::from_int(k as i64) + beta.clone();
    let mut sum = T::zero();
    for s in 0..=k {
        let c = T::binom(&ka, k - s) * T::binom(&kb, s);
        if c.is_zero() {
            continue;
        }
        sum = sum + c * powi(&lo, s as i64) * powi(&hi, (k - s) as i64);
    }
    sum
}

/// `P_n^{(α,·)}(1) = Γ(n+α+1) / (n! Γ(α+1))`, independent of the second parameter.
pub fn jacobi_at_one<T: Scalar>(n: u32, alpha: &T) -> T {
    T::binom(&(T::from_int(n as i64) + alpha.clone()), n)
}

/// `G^{11}_{11}(u | a; b) = Γ(1-a+b) u^b (1+u)^{a-b-1}`.
pub fn meijer_g1111(u: f64, a: f64, b: f64) -> Result<f64> {
    let g = 1.0 - a + b;
    if !(g > 0.0) {
        return Err(Error::Domain(format!(
            "Meijer G11,11 needs 1 - a + b > 0, got {g}"
        )));
    }
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!(
            "Meijer G11,11 needs u >= 0, got {u}"
        )));
    }
    if u == 0.0 && b < 0.0 {
        return Err(Error::Domain(
            "Meijer G11,11 is singular at u = 0 for b < 0".into(),
        ));
    }
    let gamma = log_gamma(g)?.exp();
    let ub = if b == 0.0 { 1.0 } else { u.powf(b) };
    Ok(gamma * ub * (1.0 + u).powf(a - b - 1.0))
}

/// Physicists' Hermite polynomial by `H_{k+1} = 2ξ H_k - 2k H_{k-1}`.
pub fn hermite<T: Scalar>(k: u32, xi: &T) -> T {
    let two = T::from_int(2);
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = two.clone() * xi.clone();
    for n in 1..k {
        let next =
            two.clone() * xi.clone() * cur.clone() - two.clone() * T::from_int(n as i64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}
