use std::ops::{Add, Mul, Neg, Sub};

use crate::{Complex, Error, Result};

/// Truncated Taylor series `Σ c_j t^j`, `c_j = f^(j)/j!`, around an implicit
/// expansion point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    coeffs: Vec<Complex>,
}

impl Jet1 {
    pub fn from_coeffs(coeffs: Vec<Complex>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet1 { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn constant(value: impl Into<Complex>, order: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); order + 1];
        coeffs[0] = value.into();
        Jet1 { coeffs }
    }

    /// The independent variable `x0 + t`.
    pub fn variable(x0: impl Into<Complex>, order: usize) -> Self {
        let mut j = Self::constant(x0, order);
        if order > 0 {
            j.coeffs[1] = Complex::new(1.0, 0.0);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn value(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs[k]
    }

    /// `∂^k f = k! · c_k`.
    pub fn derivative(&self, k: usize) -> Complex {
        self.coeffs[k] * super::factorial(k as u32)
    }

    pub fn scale(&self, s: impl Into<Complex>) -> Jet1 {
        let s = s.into();
        Jet1 { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add_scalar(&self, s: impl Into<Complex>) -> Jet1 {
        let mut out = self.clone();
        out.coeffs[0] += s.into();
        out
    }

    fn check_order(&self, other: &Jet1) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Contract(format!(
                "jet order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn try_product(&self, other: &Jet1) -> Result<Jet1> {
        self.check_order(other)?;
        let d = self.order();
        let coeffs = (0..=d)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Ok(Jet1 { coeffs })
    }

    /// `1/f` by the recurrence `Σ a_j g_{k-j} = δ_k0`.
    pub fn recip(&self) -> Result<Jet1> {
        let a0 = self.coeffs[0];
        if a0 == Complex::new(0.0, 0.0) {
            return Err(Error::SingularExpansion);
        }
        let d = self.order();
        let mut g = vec![Complex::new(0.0, 0.0); d + 1];
        g[0] = 1.0 / a0;
        for k in 1..=d {
            let s: Complex = (1..=k).map(|j| self.coeffs[j] * g[k - j]).sum();
            g[k] = -s / a0;
        }
        Ok(Jet1 { coeffs: g })
    }

    /// `f^p` with the principal branch at the constant term, from `f g' = p f' g`.
    pub fn powf(&self, p: f64) -> Result<Jet1> {
        let a0 = self.coeffs[0];
        if a0 == Complex::new(0.0, 0.0) {
            return Err(Error::SingularExpansion);
        }
        let d = self.order();
        let mut g = vec![Complex::new(0.0, 0.0); d + 1];
        g[0] = if p == -0.5 { 1.0 / a0.sqrt() } else { a0.powf(p) };
        for k in 1..=d {
            let s: Complex = (1..=k)
                .map(|j| self.coeffs[j] * g[k - j] * (p * j as f64 - (k - j) as f64))
                .sum();
            g[k] = s / (a0 * k as f64);
        }
        Ok(Jet1 { coeffs: g })
    }

    pub fn inv_sqrt(&self) -> Result<Jet1> {
        self.powf(-0.5)
    }

    /// `exp f` from `g' = f' g`.
    pub fn exp(&self) -> Jet1 {
        let d = self.order();
        let mut g = vec![Complex::new(0.0, 0.0); d + 1];
        g[0] = self.coeffs[0].exp();
        for k in 1..=d {
            let s: Complex = (1..=k).map(|j| self.coeffs[j] * g[k - j] * j as f64).sum();
            g[k] = s / k as f64;
        }
        Jet1 { coeffs: g }
    }

    /// `outer ∘ inner`, where `outer` is expanded around `inner.value()`.
    pub fn compose(outer: &Jet1, inner: &Jet1) -> Result<Jet1> {
        outer.check_order(inner)?;
        let d = outer.order();
        let mut delta = inner.clone();
        delta.coeffs[0] = Complex::new(0.0, 0.0);
        let mut acc = Jet1::constant(outer.coeffs[d], d);
        for i in (0..d).rev() {
            acc = (&acc * &delta).add_scalar(outer.coeffs[i]);
        }
        Ok(acc)
    }

    /// Taylor coefficients of `f(x0 + t)` shifted by `m`: the jet of `f^(m)/m!`
    /// scaled so that coefficient `j` holds `f^(m+j)(x0)/j!`.
    pub fn derivative_jet(&self, m: usize) -> Jet1 {
        let d = self.order();
        assert!(m <= d);
        let coeffs = (0..=d - m)
            .map(|j| {
                self.coeffs[m + j] * (super::factorial((m + j) as u32) / super::factorial(j as u32))
            })
            .collect();
        Jet1 { coeffs }
    }
}

impl Add for &Jet1 {
    type Output = Jet1;
    fn add(self, rhs: &Jet1) -> Jet1 {
        assert_eq!(self.order(), rhs.order(), "jet order mismatch");
        Jet1 { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: &Jet1) -> Jet1 {
        assert_eq!(self.order(), rhs.order(), "jet order mismatch");
        Jet1 { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: &Jet1) -> Jet1 {
        self.try_product(rhs).expect("jet order mismatch")
    }
}

impl Neg for &Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet1 {
            type Output = Jet1;
            fn $m(self, rhs: Jet1) -> Jet1 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet1> for Jet1 {
            type Output = Jet1;
            fn $m(self, rhs: &Jet1) -> Jet1 {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet1> for &Jet1 {
            type Output = Jet1;
            fn $m(self, rhs: Jet1) -> Jet1 {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn jet_product(a: &Jet1, b: &Jet1) -> Result<Jet1> {
    a.try_product(b)
}

pub fn jet_inv_sqrt(a: &Jet1) -> Result<Jet1> {
    a.inv_sqrt()
}

pub fn jet_exp(a: &Jet1) -> Jet1 {
    a.exp()
}

pub fn jet_compose(outer: &Jet1, inner: &Jet1) -> Result<Jet1> {
    Jet1::compose(outer, inner)
}
