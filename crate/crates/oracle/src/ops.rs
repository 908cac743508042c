use nalgebra::DMatrix;
use ngstates_core::Complex;

pub(crate) type CMatrix = DMatrix<Complex>;

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Truncated `a` on `|0⟩..|n-1⟩`.
pub fn annihilation(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| if j == i + 1 { c((j as f64).sqrt()) } else { c(0.0) })
}

/// `ln k!` for `k < n`.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n.max(1)];
    for k in 1..n {
        t[k] = t[k - 1] + (k as f64).ln();
    }
    t
}

/// The `n × n` block of `D(z) = exp(z a† - z* a)`.
///
/// `⟨j+d|D(z)|j⟩ = √(j!/(j+d)!) z^d e^{-|z|²/2} L_j^{(d)}(|z|²)` and
/// `⟨j|D(z)|j+d⟩ = √(j!/(j+d)!) (-z*)^d e^{-|z|²/2} L_j^{(d)}(|z|²)`, with the
/// Laguerre polynomials run upward in degree along each diagonal and the
/// prefactor carried in logarithms.
pub fn displacement(z: Complex, n: usize) -> CMatrix {
    let x = z.norm_sqr();
    if x == 0.0 {
        return CMatrix::identity(n, n);
    }
    let lf = ln_factorials(n);
    let (ln_r, phase) = (z.norm().ln(), z.arg());
    let mut out = CMatrix::zeros(n, n);
    for d in 0..n {
        let alpha = d as f64;
        let (mut prev, mut cur) = (0.0, 1.0);
        for j in 0..n - d {
            if j > 0 {
                let k = (j - 1) as f64;
                let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
                prev = cur;
                cur = next;
            }
            let mag = (0.5 * (lf[j] - lf[j + d]) + alpha * ln_r - x / 2.0).exp() * cur;
            let below = Complex::from_polar(mag, alpha * phase);
            out[(j + d, j)] = below;
            if d > 0 {
                // (-z*)^d = (-1)^d conj(z^d)
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                out[(j, j + d)] = below.conj() * sign;
            }
        }
    }
    out
}

/// `exp[(λ/2)(a†² - a²)]` on `|0⟩..|n-1⟩` by Padé scaling and squaring.
pub fn squeeze(lambda: f64, n: usize) -> CMatrix {
    let gen = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j + 2 {
            lambda / 2.0 * ((j + 1) as f64 * (j + 2) as f64).sqrt()
        } else if j == i + 2 {
            -lambda / 2.0 * ((i + 1) as f64 * (i + 2) as f64).sqrt()
        } else {
            0.0
        }
    });
    gen.exp().map(c)
}
