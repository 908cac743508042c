//! Complex arithmetic, truncated Taylor jets and the two Gaussian integral
//! identities used throughout the closed forms.

mod gauss;
mod jet;
mod jet2;
pub mod quadrature;

pub use gauss::{
    gaussian_moment_integral, gaussian_quadratic_integral, gaussian_quadratic_integral_jet,
    gaussian_quadratic_integral_jet2,
};
pub use jet::{jet_compose, jet_exp, jet_inv_sqrt, jet_product, Jet1};
pub use jet2::Jet2;

use std::sync::OnceLock;

/// Largest `n` with `n!` representable as a finite double.
pub const FACTORIAL_MAX: u32 = 170;

fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![1.0f64; FACTORIAL_MAX as usize + 1];
        for n in 1..t.len() {
            t[n] = t[n - 1] * n as f64;
        }
        t
    })
}

/// `n!` from the precomputed table. Panics above [`FACTORIAL_MAX`].
pub fn factorial(n: u32) -> f64 {
    factorial_table()[n as usize]
}

pub fn checked_factorial(n: u32) -> crate::Result<f64> {
    if n > FACTORIAL_MAX {
        return Err(crate::Error::Range(format!("{n}! overflows a double")));
    }
    Ok(factorial(n))
}

/// `n (n-1) ... (n-k+1)`, zero when `k > n`.
pub fn falling(n: u64, k: u32) -> f64 {
    if k as u64 > n {
        return 0.0;
    }
    (0..k as u64).map(|i| (n - i) as f64).product()
}

/// `x^n` with `0^0 = 1`.
pub fn powu(x: f64, n: u32) -> f64 {
    x.powi(n as i32)
}

#[cfg(test)]
mod tests;
