use crate::numkernel::{factorial, falling, powu, Jet1};
use crate::states::{normalization, thermal_coeffs};
use crate::variants::PstsPndPoint;
use crate::{Result, StateSpec};

/// `Φ_s(a†^M :e^{-a a†a}: a^M)` written as `Σ_l w_l :a†^{M-l} (1-a')^{a†a} a^{M-l}:`.
#[derive(Debug, Clone)]
struct AddedKernel {
    /// `(M - l, w_l)`
    members: Vec<(u32, f64)>,
    /// `1 - a'` with `a' = a/(as + 1)`
    ratio: f64,
}

impl AddedKernel {
    fn new(a: f64, big_m: u32, s: f64, scale: f64) -> Self {
        let fm = factorial(big_m);
        let members = (0..=big_m)
            .filter(|&l| powu(s, l) != 0.0)
            .map(|l| {
                let j = big_m - l;
                let w = fm * fm * powu(s, l)
                    / (factorial(l) * factorial(j) * factorial(j) * powu(a * s + 1.0, 2 * big_m - l + 1));
                (j, w * scale)
            })
            .collect();
        AddedKernel { members, ratio: 1.0 - a / (a * s + 1.0) }
    }

    fn at(&self, n: u64) -> f64 {
        self.members
            .iter()
            .filter(|(j, _)| n >= *j as u64)
            .map(|&(j, w)| w * falling(n, j) * powu(self.ratio, (n - j as u64) as u32))
            .sum()
    }
}

/// Diagonal of the photon-added and number-filtered thermal families.
#[derive(Debug, Clone)]
pub(super) struct Diagonal {
    kernels: Vec<AddedKernel>,
    /// Fock index forced to zero at the input.
    hole: Option<u64>,
}

impl Diagonal {
    pub fn new(spec: &StateSpec, s: f64) -> Result<Self> {
        let n = normalization(spec)?;
        let (kernels, hole) = match *spec {
            StateSpec::Pats { n_th, m } => {
                let t = thermal_coeffs(n_th)?;
                (vec![AddedKernel::new(t.a, m, s, 1.0 / n)], None)
            }
            StateSpec::Pakfts { n_th, m, k } => {
                let t = thermal_coeffs(n_th)?;
                let w = powu(t.q, k) / factorial(k);
                let mut kernels = vec![AddedKernel::new(t.a, m, s, 1.0 / n)];
                if w != 0.0 {
                    kernels.push(AddedKernel::new(1.0, m + k, s, -w / n));
                }
                (kernels, (s == 0.0).then_some((m + k) as u64))
            }
            _ => unreachable!("diagonal series only for added and filtered thermal states"),
        };
        Ok(Diagonal { kernels, hole })
    }

    pub fn at(&self, n: u64) -> f64 {
        if self.hole == Some(n) {
            return 0.0;
        }
        self.kernels.iter().map(|k| k.at(n)).sum()
    }
}

/// Output generator `Σ_n P(n) (u+1)^n` up to normalization:
/// `M(u) = m! / ((1 - su) (1/n_th - u/(1 - su))^{m+1})`.
fn psts_generator(n_th: f64, m: u32, s: f64, u0: f64, order: usize) -> Result<Jet1> {
    let u = Jet1::variable(u0, order);
    let lin = u.scale(-s).add_scalar(1.0);
    let inv = lin.recip()?;
    let w = (&u * &inv).scale(-1.0).add_scalar(1.0 / n_th);
    Ok((&inv * &w.powf(-(m as f64 + 1.0))?).scale(factorial(m)))
}

pub(super) fn psts_pnd(n_th: f64, m: u32, s: f64, n_max: u32, point: PstsPndPoint) -> Result<Vec<f64>> {
    let norm = normalization(&StateSpec::Psts { n_th, m })?;
    if s == 0.0 {
        let q = n_th / (1.0 + n_th);
        return Ok((0..=n_max as u64)
            .map(|n| falling(n + m as u64, m) * powu(q, m + n as u32 + 1) / norm)
            .collect());
    }
    let u0 = match point {
        PstsPndPoint::MinusOne => -1.0,
        PstsPndPoint::Zero => 0.0,
    };
    let g = psts_generator(n_th, m, s, u0, n_max as usize)?;
    Ok(g.coeffs().iter().map(|c| c.re / norm).collect())
}

pub(super) fn psts_moment(n_th: f64, m: u32, s: f64, r: u32) -> Result<f64> {
    if s == 0.0 {
        return Ok(falling((m + r) as u64, r) * powu(n_th, r));
    }
    let norm = normalization(&StateSpec::Psts { n_th, m })?;
    let g = psts_generator(n_th, m, s, 0.0, r as usize)?;
    Ok(factorial(r) * g.coeff(r as usize).re / norm)
}
