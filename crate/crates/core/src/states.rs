//! The five state families, their derived coefficients and normalization.

use serde::{Deserialize, Serialize};

use crate::numkernel::{factorial, powu, Jet1};
use crate::variants::NormPoint;
use crate::{Error, Result};

/// Largest number of added/subtracted photons or filtered Fock index.
pub const MAX_PHOTONS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pats,
    Psts,
    Pakfts,
    Pasts,
    Pssts,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Pats, Family::Psts, Family::Pakfts, Family::Pasts, Family::Pssts];

    pub fn name(self) -> &'static str {
        match self {
            Family::Pats => "pats",
            Family::Psts => "psts",
            Family::Pakfts => "pakfts",
            Family::Pasts => "pasts",
            Family::Pssts => "pssts",
        }
    }

    pub fn is_squeezed(self) -> bool {
        matches!(self, Family::Pasts | Family::Pssts)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown state family `{s}`")))
    }
}

/// One member of a state family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    /// `a†^m ρ_th a^m`
    Pats { n_th: f64, m: u32 },
    /// `a^m ρ_th a†^m`
    Psts { n_th: f64, m: u32 },
    /// `a†^m ρ_kfts a^m`, with Fock component `k` removed from the thermal state
    Pakfts { n_th: f64, m: u32, k: u32 },
    /// `a†^m ρ_s a^m`
    Pasts { n_th: f64, m: u32, lambda: f64 },
    /// `a^m ρ_s a†^m`
    Pssts { n_th: f64, m: u32, lambda: f64 },
}

impl StateSpec {
    pub fn thermal(n_th: f64) -> Self {
        StateSpec::Pats { n_th, m: 0 }
    }

    /// Builds a spec from flat fields; fields unused by the family are ignored.
    pub fn from_parts(family: Family, n_th: f64, m: u32, k: u32, lambda: f64) -> Result<Self> {
        let spec = match family {
            Family::Pats => StateSpec::Pats { n_th, m },
            Family::Psts => StateSpec::Psts { n_th, m },
            Family::Pakfts => StateSpec::Pakfts { n_th, m, k },
            Family::Pasts => StateSpec::Pasts { n_th, m, lambda },
            Family::Pssts => StateSpec::Pssts { n_th, m, lambda },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> Family {
        match self {
            StateSpec::Pats { .. } => Family::Pats,
            StateSpec::Psts { .. } => Family::Psts,
            StateSpec::Pakfts { .. } => Family::Pakfts,
            StateSpec::Pasts { .. } => Family::Pasts,
            StateSpec::Pssts { .. } => Family::Pssts,
        }
    }

    pub fn n_th(&self) -> f64 {
        match *self {
            StateSpec::Pats { n_th, .. }
            | StateSpec::Psts { n_th, .. }
            | StateSpec::Pakfts { n_th, .. }
            | StateSpec::Pasts { n_th, .. }
            | StateSpec::Pssts { n_th, .. } => n_th,
        }
    }

    pub fn m(&self) -> u32 {
        match *self {
            StateSpec::Pats { m, .. }
            | StateSpec::Psts { m, .. }
            | StateSpec::Pakfts { m, .. }
            | StateSpec::Pasts { m, .. }
            | StateSpec::Pssts { m, .. } => m,
        }
    }

    pub fn k(&self) -> u32 {
        match *self {
            StateSpec::Pakfts { k, .. } => k,
            _ => 0,
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            StateSpec::Pasts { lambda, .. } | StateSpec::Pssts { lambda, .. } => lambda,
            _ => 0.0,
        }
    }

    /// Same family and parameters with a different thermal occupation.
    pub fn with_n_th(&self, n_th: f64) -> Self {
        Self::from_parts_unchecked(self.family(), n_th, self.m(), self.k(), self.lambda())
    }

    pub fn with_m(&self, m: u32) -> Self {
        Self::from_parts_unchecked(self.family(), self.n_th(), m, self.k(), self.lambda())
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self::from_parts_unchecked(self.family(), self.n_th(), self.m(), self.k(), lambda)
    }

    fn from_parts_unchecked(family: Family, n_th: f64, m: u32, k: u32, lambda: f64) -> Self {
        match family {
            Family::Pats => StateSpec::Pats { n_th, m },
            Family::Psts => StateSpec::Psts { n_th, m },
            Family::Pakfts => StateSpec::Pakfts { n_th, m, k },
            Family::Pasts => StateSpec::Pasts { n_th, m, lambda },
            Family::Pssts => StateSpec::Pssts { n_th, m, lambda },
        }
    }

    /// Parameter checks that do not need the normalization constant.
    pub fn validate(&self) -> Result<()> {
        let n_th = self.n_th();
        if !(n_th.is_finite() && n_th >= 0.0) {
            return Err(Error::Domain(format!("n_th must be finite and non-negative, got {n_th}")));
        }
        if self.m() > MAX_PHOTONS || self.k() > MAX_PHOTONS {
            return Err(Error::Domain(format!("m and k are capped at {MAX_PHOTONS}")));
        }
        let lambda = self.lambda();
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::Domain(format!("lambda must be finite and non-negative, got {lambda}")));
        }
        match *self {
            StateSpec::Pakfts { n_th, k, .. } if k > 0 && n_th == 0.0 => Err(Error::InvalidState(
                "number filtering with k > 0 needs n_th > 0".into(),
            )),
            StateSpec::Psts { n_th, m } if n_th == 0.0 && m > 0 => Err(Error::InvalidState(
                "photon subtraction from the vacuum has zero norm".into(),
            )),
            StateSpec::Pssts { n_th, m, lambda } if n_th == 0.0 && lambda == 0.0 && m > 0 => Err(
                Error::InvalidState("photon subtraction from the vacuum has zero norm".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// Input state, or output of the noise channel with variance `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Stage {
    Input,
    Output { s: f64 },
}

impl Stage {
    pub fn s(&self) -> f64 {
        match *self {
            Stage::Input => 0.0,
            Stage::Output { s } => s,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.s();
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::Domain(format!("noise variance s must be finite and non-negative, got {s}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalCoeffs {
    /// `1/(1+n_th)`
    pub a: f64,
    /// `n_th/(1+n_th)`
    pub q: f64,
}

pub fn thermal_coeffs(n_th: f64) -> Result<ThermalCoeffs> {
    if !(n_th.is_finite() && n_th >= 0.0) {
        return Err(Error::Domain(format!("n_th must be finite and non-negative, got {n_th}")));
    }
    Ok(ThermalCoeffs { a: 1.0 / (1.0 + n_th), q: n_th / (1.0 + n_th) })
}

/// Coefficients of the normally ordered squeezed thermal state
/// `A_s^{-1/2} :exp[C/2 (a†² + a²) + (B - 1) a†a]:`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeCoeffs {
    pub a_s: f64,
    pub b: f64,
    pub c: f64,
    /// `1 - B`
    pub x: f64,
}

pub fn squeeze_coeffs(n_th: f64, lambda: f64) -> Result<SqueezeCoeffs> {
    if !(n_th.is_finite() && n_th >= 0.0 && lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::Domain(format!("bad squeezed-thermal parameters n_th={n_th}, lambda={lambda}")));
    }
    let ch = lambda.cosh();
    let a_s = n_th * n_th + (2.0 * n_th + 1.0) * ch * ch;
    let b = n_th * (n_th + 1.0) / a_s;
    let c = (2.0 * n_th + 1.0) * (2.0 * lambda).sinh() / (2.0 * a_s);
    let x = 1.0 - b;
    if !(x * x - c * c > 0.0) {
        return Err(Error::Degenerate(format!("X² - C² = {} is not positive", x * x - c * c)));
    }
    Ok(SqueezeCoeffs { a_s, b, c, x })
}

/// `(-1)^m ∂_X^m (X² - C²)^{-1/2}` at `X = 1 - B`, as a jet of order `m` in `X`.
pub(crate) fn pasts_norm_kernel(sq: &SqueezeCoeffs, m: u32) -> Result<f64> {
    let x = Jet1::variable(sq.x, m as usize);
    let d = (&x * &x).add_scalar(-sq.c * sq.c);
    let v = d.inv_sqrt()?.derivative(m as usize).re;
    Ok(if m.is_multiple_of(2) { v } else { -v })
}

/// `∂_u^m [(1 - Bu)² - C²u²]^{-1/2}` at `u = 1`.
pub(crate) fn pssts_norm_kernel(sq: &SqueezeCoeffs, m: u32) -> Result<f64> {
    let u = Jet1::variable(1.0, m as usize);
    let lin = u.scale(-sq.b).add_scalar(1.0);
    let d = &lin * &lin - (&u * &u).scale(sq.c * sq.c);
    Ok(d.inv_sqrt()?.derivative(m as usize).re)
}

/// Trace of the unnormalized operator whose normalized form is the state.
///
/// Conventions: PATS uses `a†^m :e^{-A a†a}: a^m`, PSTS the P-representation
/// `∫ |α|^{2m} e^{-|α|²/n_th} |α⟩⟨α| d²α/π`, PAKFTS
/// `a†^m [:e^{-A a†a}: - q^k/k! :a†^k e^{-a†a} a^k:] a^m`, and the squeezed
/// families `a†^m ρ_s a^m` and `a^m ρ_s a†^m`.
pub fn normalization(spec: &StateSpec) -> Result<f64> {
    normalization_with(spec, NormPoint::default())
}

/// [`normalization`] with a selectable evaluation point for the photon-added
/// squeezed kernel.
pub fn normalization_with(spec: &StateSpec, point: NormPoint) -> Result<f64> {
    spec.validate()?;
    let n = match *spec {
        StateSpec::Pats { n_th, m } => {
            let t = thermal_coeffs(n_th)?;
            factorial(m) / powu(t.a, m + 1)
        }
        StateSpec::Psts { n_th, m } => {
            if n_th == 0.0 {
                // m = 0 here: the vacuum itself
                1.0
            } else {
                factorial(m) * powu(n_th, m + 1)
            }
        }
        StateSpec::Pakfts { n_th, m, k } => {
            let t = thermal_coeffs(n_th)?;
            factorial(m) / powu(t.a, m + 1) - powu(t.q, k) * factorial(m + k) / factorial(k)
        }
        StateSpec::Pasts { n_th, m, lambda } => {
            let sq = squeeze_coeffs(n_th, lambda)?;
            let kernel = match point {
                NormPoint::OneMinusB => pasts_norm_kernel(&sq, m)?,
                NormPoint::B => {
                    let v = Jet1::variable(sq.b, m as usize);
                    let d = (&v * &v).add_scalar(-sq.c * sq.c);
                    d.inv_sqrt()?.derivative(m as usize).re
                }
            };
            kernel / sq.a_s.sqrt()
        }
        StateSpec::Pssts { n_th, m, lambda } => {
            let sq = squeeze_coeffs(n_th, lambda)?;
            pssts_norm_kernel(&sq, m)? / sq.a_s.sqrt()
        }
    };
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidState(format!("normalization {n} is not positive")));
    }
    Ok(n)
}
