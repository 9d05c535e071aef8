//! Cancellation-free building blocks for divided differences in `mu`.
//!
//! Every helper accepts a signed `mu`; a negative step evaluates the
//! backward (nabla) variant of the same quotient.

/// Largest exponent accepted by the binomial-sum helpers.
pub const MAX_POWER: u32 = 60;

/// `C(n, k)` by multiplicative recurrence (exact for `n <= 60`).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c * (n as u128 - i + 1) / i;
    }
    c as f64
}

/// `(e^(a*mu) - 1) / mu`.
pub fn expm1_over(a: f64, mu: f64) -> f64 {
    (a * mu).exp_m1() / mu
}

/// `(cos(a*mu) - 1) / mu`, written as `-2 sin^2(a*mu/2) / mu`.
pub fn cosm1_over(a: f64, mu: f64) -> f64 {
    let s = (0.5 * a * mu).sin();
    -2.0 * s * s / mu
}

/// `sin(a*mu) / mu`.
pub fn sin_over(a: f64, mu: f64) -> f64 {
    (a * mu).sin() / mu
}

/// `((x + mu)^n - x^n) / mu` as `sum_{j<n} C(n, j) x^j mu^(n-1-j)`,
/// accumulated Horner-style in `x`.
pub fn power_difference(x: f64, mu: f64, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    // Coefficient of x^j is C(n, j) mu^(n-1-j); walk j downward.
    let mut acc = binomial(n, n - 1);
    let mut mu_pow = 1.0;
    for j in (0..n - 1).rev() {
        mu_pow *= mu;
        acc = acc * x + binomial(n, j) * mu_pow;
    }
    acc
}

/// Pairwise (cascade) summation with a fixed split order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(60, 0), 1.0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424u64 as f64);
        assert_eq!(binomial(3, 4), 0.0);
    }

    #[test]
    fn power_difference_matches_expansion() {
        // (t + mu)^2 - t^2 over mu = 2t + mu.
        assert_eq!(power_difference(3.0, 1.0, 2), 7.0);
        assert_eq!(power_difference(2.0, 0.0, 3), 12.0);
        for &(x, mu, n) in &[(1.5f64, 0.25f64, 5u32), (-2.0, 0.5, 4), (3.0, -1.0, 3)] {
            let direct = ((x + mu).powi(n as i32) - x.powi(n as i32)) / mu;
            assert!((power_difference(x, mu, n) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn stable_quotients_have_correct_limits() {
        assert!((expm1_over(2.0, 1e-14) - 2.0).abs() < 1e-12);
        assert!(cosm1_over(1.0, 1e-14).abs() < 1e-12);
        assert!((sin_over(3.0, 1e-14) - 3.0).abs() < 1e-12);
        let mu: f64 = 0.3;
        assert!((cosm1_over(2.0, mu) - ((2.0 * mu).cos() - 1.0) / mu).abs() < 1e-15);
    }

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 5050.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
