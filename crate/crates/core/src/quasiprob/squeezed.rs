//! Squeezed-family characteristic functions and quasi-probabilities as jets in
//! the parameter that generates the added or subtracted photons.

use std::f64::consts::PI;

use super::{Admissibility, KappaOrder};
use crate::numkernel::{factorial, gaussian_quadratic_integral, gaussian_quadratic_integral_jet, Jet1};
use crate::states::{normalization, squeeze_coeffs, SqueezeCoeffs};
use crate::variants::PsstsOutputExponent;
use crate::{Complex, Error, Result, Stage, StateSpec};

fn k(z: Complex, order: usize) -> Jet1 {
    Jet1::constant(z, order)
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn mif_admissible(zeta: Complex, f: Complex, g: Complex) -> Admissibility {
    let zero = c(0.0);
    match gaussian_quadratic_integral(zeta, zero, zero, f, g) {
        Ok(_) => Admissibility::Admissible,
        Err(e) => Admissibility::Inadmissible(format!("singular P: {e}")),
    }
}

/// Coefficient chain for `Φ_s` applied to the Gaussian kernel
/// `:exp[C/2 (a†² + a²) - X a†a]:`, as jets in `X`.
///
/// The output kernel is `den^{-1/2} :exp[C0/2 (a†² + a²) - Z a†a]:` with
/// `Y = X + 1/s`, `Y0 = Y/(s²(Y² - C²))`, `C0 = C/(s²(Y² - C²))` and
/// `Z = 1/s - Y0`. These are carried in the form
/// `den = (1 + sX)² - s²C²`, `Z = (sX² + X - sC²)/den`, `C0 = C/den`,
/// which is regular at `s = 0`. Its antinormal trace adds `E = Z² - C0²`,
/// `Y1 = Z/E - (κ+1)/2` and `C1 = C0/E`.
#[derive(Debug, Clone, PartialEq)]
pub struct AddedChain {
    pub x: Jet1,
    pub den: Jet1,
    pub z: Jet1,
    pub c0: Jet1,
    pub e: Jet1,
}

impl AddedChain {
    pub fn new(sq: &SqueezeCoeffs, s: f64, order: usize) -> Result<Self> {
        let x = Jet1::variable(sq.x, order);
        let cc = sq.c;
        let sx1 = x.scale(s).add_scalar(1.0);
        let den = (&sx1 * &sx1).add_scalar(-s * s * cc * cc);
        let inv_den = den.recip()?;
        let z = ((&x * &x).scale(s) + &x).add_scalar(-s * cc * cc) * &inv_den;
        let c0 = inv_den.scale(cc);
        let e = &z * &z - &c0 * &c0;
        Ok(AddedChain { x, den, z, c0, e })
    }

    pub fn y1(&self, kappa: KappaOrder) -> Result<Jet1> {
        Ok((&self.z * &self.e.recip()?).add_scalar(-(kappa.value() + 1.0) / 2.0))
    }

    pub fn c1(&self) -> Result<Jet1> {
        Ok(&self.c0 * &self.e.recip()?)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct AddedModel {
    chain: AddedChain,
    order: usize,
    kappa: KappaOrder,
    den_pref: Jet1,
    p_pref: Jet1,
    y1: Jet1,
    c1: Jet1,
    scale: f64,
}

impl AddedModel {
    pub fn new(spec: &StateSpec, stage: Stage, kappa: KappaOrder) -> Result<Self> {
        let StateSpec::Pasts { n_th, m, lambda } = *spec else {
            return Err(Error::Contract("photon-added squeezed model needs a PASTS spec".into()));
        };
        let sq = squeeze_coeffs(n_th, lambda)?;
        let order = m as usize;
        let chain = AddedChain::new(&sq, stage.s(), order)?;
        let den_pref = chain.den.inv_sqrt()?;
        let p_pref = &den_pref * &chain.e.inv_sqrt()?;
        let y1 = chain.y1(kappa)?;
        let c1 = chain.c1()?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let scale = sign * factorial(m) / (sq.a_s.sqrt() * normalization(spec)?);
        Ok(AddedModel { chain, order, kappa, den_pref, p_pref, y1, c1, scale })
    }

    pub fn guard(&self) -> Admissibility {
        let half_c1 = self.c1.value() / 2.0;
        mif_admissible(-self.y1.value(), half_c1, half_c1)
    }

    pub fn char_fn(&self, gamma: Complex) -> Result<Complex> {
        let d = self.order;
        let half_c0 = self.chain.c0.scale(0.5);
        let trace = gaussian_quadratic_integral_jet(
            &self.chain.z.scale(-1.0),
            &k(-gamma.conj(), d),
            &k(gamma, d),
            &half_c0,
            &half_c0,
        )?;
        let v = (&self.den_pref * &trace).coeff(d) * self.scale;
        Ok(v * ((self.kappa.value() + 1.0) / 2.0 * gamma.norm_sqr()).exp())
    }

    pub fn quasiprob(&self, alpha: Complex) -> Result<f64> {
        let d = self.order;
        let half_c1 = self.c1.scale(0.5);
        let inner = gaussian_quadratic_integral_jet(
            &self.y1.scale(-1.0),
            &k(-alpha.conj(), d),
            &k(alpha, d),
            &half_c1,
            &half_c1,
        )
        .map_err(|e| Error::Inadmissible(format!("singular P: {e}")))?;
        Ok((&self.p_pref * &inner).coeff(d).re * self.scale / PI)
    }
}

/// Coefficient chain of the normally ordered trace of `a^m ρ_s a†^m`, as jets
/// in `u` around `u = 1`:
/// `D = (1 - Bu)² - C²u²`, `A1 = C/(2D)`,
/// `A2 = [C(B² + C²)u²/2 + BCu(1 - Bu)]/D + C/2`, `A3 = [B(1 - Bu) + C²u]/D`,
/// and at the output `N3 = A3 + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtractedChain {
    pub u: Jet1,
    pub d: Jet1,
    pub a1: Jet1,
    pub a2: Jet1,
    pub a3: Jet1,
}

impl SubtractedChain {
    pub fn new(sq: &SqueezeCoeffs, order: usize) -> Result<Self> {
        let (b, cc) = (sq.b, sq.c);
        let u = Jet1::variable(1.0, order);
        let lin = u.scale(-b).add_scalar(1.0);
        let u2 = &u * &u;
        let d = &lin * &lin - u2.scale(cc * cc);
        let inv_d = d.recip()?;
        let a1 = inv_d.scale(cc / 2.0);
        let a2 = ((u2.scale(cc * (b * b + cc * cc) / 2.0) + (&u * &lin).scale(b * cc)) * &inv_d)
            .add_scalar(cc / 2.0);
        let a3 = (lin.scale(b) + u.scale(cc * cc)) * &inv_d;
        Ok(SubtractedChain { u, d, a1, a2, a3 })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SubtractedModel {
    order: usize,
    pref: Jet1,
    /// coefficient of γ*²
    g_conj: Jet1,
    /// coefficient of γ²
    g_plain: Jet1,
    /// minus the coefficient of |γ|², ordering shift included
    g_abs: Jet1,
    scale: f64,
}

impl SubtractedModel {
    pub fn new(spec: &StateSpec, stage: Stage, kappa: KappaOrder, exponent: PsstsOutputExponent) -> Result<Self> {
        let StateSpec::Pssts { n_th, m, lambda } = *spec else {
            return Err(Error::Contract("photon-subtracted squeezed model needs a PSSTS spec".into()));
        };
        let sq = squeeze_coeffs(n_th, lambda)?;
        let order = m as usize;
        let chain = SubtractedChain::new(&sq, order)?;
        let s = stage.s();
        let shift = (kappa.value() - 1.0) / 2.0;
        let n3 = chain.a3.add_scalar(s);
        let (g_conj, g_plain, g_abs) = match exponent {
            PsstsOutputExponent::Swapped if s > 0.0 => {
                (n3, chain.a2.clone(), chain.a1.add_scalar(-shift))
            }
            _ => (chain.a1.clone(), chain.a2.clone(), n3.add_scalar(-shift)),
        };
        let pref = chain.d.inv_sqrt()?;
        let scale = factorial(m) / (sq.a_s.sqrt() * normalization(spec)?);
        Ok(SubtractedModel { order, pref, g_conj, g_plain, g_abs, scale })
    }

    pub fn guard(&self) -> Admissibility {
        mif_admissible(-self.g_abs.value(), self.g_plain.value(), self.g_conj.value())
    }

    pub fn char_fn(&self, gamma: Complex) -> Result<Complex> {
        let d = self.order;
        let expo = self.g_conj.scale(gamma.conj() * gamma.conj()) + self.g_plain.scale(gamma * gamma)
            - self.g_abs.scale(gamma.norm_sqr());
        Ok((&self.pref * &expo.exp()).coeff(d) * self.scale)
    }

    pub fn quasiprob(&self, alpha: Complex) -> Result<f64> {
        let d = self.order;
        let inner = gaussian_quadratic_integral_jet(
            &self.g_abs.scale(-1.0),
            &k(-alpha.conj(), d),
            &k(alpha, d),
            &self.g_plain,
            &self.g_conj,
        )
        .map_err(|e| Error::Inadmissible(format!("singular P: {e}")))?;
        Ok((&self.pref * &inner).coeff(d).re * self.scale / PI)
    }
}
