//! Thermal-family characteristic functions as sums of Laguerre–Gaussian terms
//! `c (-|γ|²)^j exp(-w|γ|²)` times the ordering factor `exp((κ+σ)|γ|²/2)`.

use std::f64::consts::PI;

use super::{Admissibility, KappaOrder};
use crate::numkernel::{factorial, gaussian_moment_integral, powu};
use crate::states::{normalization, thermal_coeffs};
use crate::variants::PstsOutputShift;
use crate::{Complex, Result, Stage, StateSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RadialTerm {
    pub coef: f64,
    pub power: u32,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RadialSeries {
    pub terms: Vec<RadialTerm>,
    /// +1 for antinormally ordered traces, -1 for normally ordered ones.
    pub sigma: f64,
    output_subtracted: bool,
}

/// Antinormal-trace terms of `Φ_s(a†^M :e^{-a a†a}: a^M)`, each scaled by `scale`.
///
/// The output is the normally ordered sum over `l` of
/// `M!² s^l / (l! (M-l)!² (as+1)^{2M-l+1}) :a†^{M-l} e^{-a' a†a} a^{M-l}:`
/// with `a' = a/(as+1)`; each member contributes a finite Laguerre sum.
pub(crate) fn added_kernel_terms(a: f64, big_m: u32, s: f64, scale: f64) -> Vec<RadialTerm> {
    let a_out = a / (a * s + 1.0);
    let fm = factorial(big_m);
    let mut terms = Vec::new();
    for l in 0..=big_m {
        let sl = powu(s, l);
        if sl == 0.0 {
            continue;
        }
        let j = big_m - l;
        let pref = fm * fm * sl
            / (factorial(l) * factorial(j) * factorial(j) * powu(a * s + 1.0, 2 * big_m - l + 1));
        let fj = factorial(j);
        for b in 0..=j {
            let coef = pref * fj * fj
                / (factorial(b) * factorial(j - b) * factorial(j - b) * powu(a_out, 2 * j - b + 1));
            terms.push(RadialTerm { coef: coef * scale, power: j - b, width: 1.0 / a_out });
        }
    }
    terms
}

impl RadialSeries {
    pub fn new(spec: &StateSpec, stage: Stage) -> Result<Self> {
        let s = stage.s();
        let n_norm = normalization(spec)?;
        let (terms, sigma) = match *spec {
            StateSpec::Pats { n_th, m } => {
                let t = thermal_coeffs(n_th)?;
                (added_kernel_terms(t.a, m, s, 1.0 / n_norm), 1.0)
            }
            StateSpec::Psts { n_th: 0.0, .. } => {
                (added_kernel_terms(1.0, 0, s, 1.0), 1.0)
            }
            StateSpec::Psts { n_th, m } => {
                let fm = factorial(m);
                let terms = (0..=m)
                    .map(|l| RadialTerm {
                        coef: fm * fm * powu(n_th, 2 * m - l + 1)
                            / (factorial(l) * factorial(m - l) * factorial(m - l) * n_norm),
                        power: m - l,
                        width: n_th + s,
                    })
                    .collect();
                (terms, -1.0)
            }
            StateSpec::Pakfts { n_th, m, k } => {
                let t = thermal_coeffs(n_th)?;
                let mut terms = added_kernel_terms(t.a, m, s, 1.0 / n_norm);
                let hole = powu(t.q, k) / factorial(k);
                if hole != 0.0 {
                    terms.extend(added_kernel_terms(1.0, m + k, s, -hole / n_norm));
                }
                (terms, 1.0)
            }
            StateSpec::Pasts { .. } | StateSpec::Pssts { .. } => {
                unreachable!("squeezed families are handled by the jet models")
            }
        };
        let output_subtracted = matches!(spec, StateSpec::Psts { n_th, .. } if *n_th > 0.0) && s > 0.0;
        Ok(RadialSeries { terms, sigma, output_subtracted })
    }

    fn shift(&self, kappa: KappaOrder, sigma: f64) -> f64 {
        (kappa.value() + sigma) / 2.0
    }

    pub fn guard(&self, kappa: KappaOrder) -> Admissibility {
        let shift = self.shift(kappa, self.sigma);
        match self.terms.iter().find(|t| t.coef != 0.0 && !(t.width - shift > 0.0)) {
            None => Admissibility::Admissible,
            Some(t) => Admissibility::Inadmissible(format!(
                "singular P: Gaussian width {} - {} is not positive",
                t.width, shift
            )),
        }
    }

    pub fn char_fn(&self, kappa: KappaOrder, gamma: Complex) -> Complex {
        let r2 = gamma.norm_sqr();
        let shift = self.shift(kappa, self.sigma);
        let v: f64 = self
            .terms
            .iter()
            .map(|t| t.coef * powu(-r2, t.power) * (-(t.width - shift) * r2).exp())
            .sum();
        Complex::new(v, 0.0)
    }

    pub fn quasiprob(&self, kappa: KappaOrder, alpha: Complex, variant: PstsOutputShift) -> Result<f64> {
        let sigma = match variant {
            PstsOutputShift::KappaPlusOne if self.output_subtracted => 1.0,
            _ => self.sigma,
        };
        let shift = self.shift(kappa, sigma);
        let mut acc = 0.0;
        for t in &self.terms {
            let w = t.width - shift;
            let sign = if t.power % 2 == 0 { 1.0 } else { -1.0 };
            let integral = gaussian_moment_integral(
                t.power,
                t.power,
                Complex::new(-w, 0.0),
                -alpha.conj(),
                alpha,
            )
            .map_err(|e| crate::Error::Inadmissible(format!("singular P: {e}")))?;
            acc += t.coef * sign * integral.re;
        }
        Ok(acc / PI)
    }
}
