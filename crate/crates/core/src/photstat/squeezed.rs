use crate::numkernel::{factorial, Jet1, Jet2};
use crate::states::{normalization, squeeze_coeffs, SqueezeCoeffs};
use crate::variants::PastsPndPoint;
use crate::{Result, StateSpec};

fn coeffs_of(spec: &StateSpec) -> Result<SqueezeCoeffs> {
    squeeze_coeffs(spec.n_th(), spec.lambda())
}

/// `den^{-1/2} [(1 - (1 - Z)u)² - C0²u²]^{-1/2}` as a jet in `(X, u)`: the
/// generator `Σ_n u^n ⟨n|K|n⟩` of the channel output of the Gaussian kernel.
fn pasts_generator(sq: &SqueezeCoeffs, s: f64, m: usize, u0: f64, d2: usize) -> Result<Jet2> {
    let x = Jet2::var_x(sq.x, m, d2);
    let u = Jet2::var_u(u0, m, d2);
    let cc = sq.c;
    let sx1 = x.scale(s).add_scalar(1.0);
    let den = (&sx1 * &sx1).add_scalar(-s * s * cc * cc);
    let inv_den = den.recip()?;
    let z = &((&x * &x).scale(s) + x).add_scalar(-s * cc * cc) * &inv_den;
    let c0 = inv_den.scale(cc);
    let lin = (&z.add_scalar(-1.0) * &u).add_scalar(1.0);
    let inner = &lin * &lin - &(&c0 * &c0) * &(&u * &u);
    Ok(&den.inv_sqrt()? * &inner.inv_sqrt()?)
}

fn pasts_scale(spec: &StateSpec, sq: &SqueezeCoeffs) -> Result<f64> {
    let m = spec.m();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * factorial(m) / (sq.a_s.sqrt() * normalization(spec)?))
}

pub(super) fn pasts_pnd(spec: &StateSpec, s: f64, n_max: u32, point: PastsPndPoint) -> Result<Vec<f64>> {
    let sq = coeffs_of(spec)?;
    let m = spec.m() as usize;
    let u0 = match point {
        PastsPndPoint::Zero => 0.0,
        PastsPndPoint::One => 1.0,
    };
    let f = pasts_generator(&sq, s, m, u0, n_max as usize)?;
    let scale = pasts_scale(spec, &sq)?;
    Ok((0..=n_max as usize).map(|n| f.coeff(m, n).re * scale).collect())
}

pub(super) fn pasts_moment(spec: &StateSpec, s: f64, r: u32) -> Result<f64> {
    let sq = coeffs_of(spec)?;
    let m = spec.m() as usize;
    let f = pasts_generator(&sq, s, m, 1.0, r as usize)?;
    Ok(factorial(r) * f.coeff(m, r as usize).re * pasts_scale(spec, &sq)?)
}

/// `∂_u^m [(1 - Bu)² - C²u²]^{-1/2}` as a jet of order `order` around `u0`.
fn pssts_kernel(sq: &SqueezeCoeffs, m: usize, u0: f64, order: usize) -> Result<Jet1> {
    let u = Jet1::variable(u0, m + order);
    let lin = u.scale(-sq.b).add_scalar(1.0);
    let d = &lin * &lin - (&u * &u).scale(sq.c * sq.c);
    Ok(d.inv_sqrt()?.derivative_jet(m))
}

/// Output generator in `v`: `h(u(v)) / (s + 1 - sv)` with
/// `u(v) = v + s(1 - v)²/(s + 1 - sv)`.
fn pssts_generator(sq: &SqueezeCoeffs, s: f64, m: usize, v0: f64, order: usize) -> Result<Jet1> {
    let v = Jet1::variable(v0, order);
    let den = v.scale(-s).add_scalar(s + 1.0);
    let pref = den.recip()?;
    let one_minus = v.scale(-1.0).add_scalar(1.0);
    let u = &v + &(&(&one_minus * &one_minus).scale(s) * &pref);
    let h = pssts_kernel(sq, m, u.value().re, order)?;
    Ok(&pref * &Jet1::compose(&h, &u)?)
}

pub(super) fn pssts_pnd(spec: &StateSpec, s: f64, n_max: u32) -> Result<Vec<f64>> {
    let sq = coeffs_of(spec)?;
    let g = pssts_generator(&sq, s, spec.m() as usize, 0.0, n_max as usize)?;
    let scale = 1.0 / (sq.a_s.sqrt() * normalization(spec)?);
    Ok(g.coeffs().iter().map(|c| c.re * scale).collect())
}

pub(super) fn pssts_moment(spec: &StateSpec, s: f64, r: u32) -> Result<f64> {
    let sq = coeffs_of(spec)?;
    let g = pssts_generator(&sq, s, spec.m() as usize, 1.0, r as usize)?;
    Ok(factorial(r) * g.coeff(r as usize).re / (sq.a_s.sqrt() * normalization(spec)?))
}
