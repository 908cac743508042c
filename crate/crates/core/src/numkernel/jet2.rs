use std::ops::{Add, Mul, Sub};

use super::Jet1;
use crate::{Complex, Error, Result};

/// Bivariate truncated Taylor series `Σ c_ij s^i t^j` with `i ≤ d1`, `j ≤ d2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    d1: usize,
    d2: usize,
    coeffs: Vec<Complex>,
}

impl Jet2 {
    pub fn constant(value: impl Into<Complex>, d1: usize, d2: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); (d1 + 1) * (d2 + 1)];
        coeffs[0] = value.into();
        Jet2 { d1, d2, coeffs }
    }

    /// First variable `x0 + s`.
    pub fn var_x(x0: impl Into<Complex>, d1: usize, d2: usize) -> Self {
        let mut j = Self::constant(x0, d1, d2);
        if d1 > 0 {
            j.coeffs[d2 + 1] = Complex::new(1.0, 0.0);
        }
        j
    }

    /// Second variable `u0 + t`.
    pub fn var_u(u0: impl Into<Complex>, d1: usize, d2: usize) -> Self {
        let mut j = Self::constant(u0, d1, d2);
        if d2 > 0 {
            j.coeffs[1] = Complex::new(1.0, 0.0);
        }
        j
    }

    /// Embeds a jet in the first variable.
    pub fn lift_x(j: &Jet1, d2: usize) -> Self {
        let d1 = j.order();
        let mut out = Self::constant(0.0, d1, d2);
        for (i, c) in j.coeffs().iter().enumerate() {
            out.coeffs[i * (d2 + 1)] = *c;
        }
        out
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex {
        self.coeffs[i * (self.d2 + 1) + j]
    }

    pub fn value(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn scale(&self, s: impl Into<Complex>) -> Jet2 {
        let s = s.into();
        Jet2 { d1: self.d1, d2: self.d2, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add_scalar(&self, s: impl Into<Complex>) -> Jet2 {
        let mut out = self.clone();
        out.coeffs[0] += s.into();
        out
    }

    fn assert_same_shape(&self, other: &Jet2) {
        assert_eq!((self.d1, self.d2), (other.d1, other.d2), "jet2 order mismatch");
    }

    /// `f ∘ self`, given the univariate Taylor coefficients of `f` around
    /// `self.value()` (at least `d1 + d2 + 1` of them).
    pub fn compose_series(&self, outer: &Jet1) -> Jet2 {
        let k = self.d1 + self.d2;
        assert!(outer.order() >= k, "outer series too short");
        let mut delta = self.clone();
        delta.coeffs[0] = Complex::new(0.0, 0.0);
        let mut acc = Jet2::constant(outer.coeff(k), self.d1, self.d2);
        for i in (0..k).rev() {
            acc = (&acc * &delta).add_scalar(outer.coeff(i));
        }
        acc
    }

    /// Coefficient of `t^j` as a series in `s`.
    fn u_slice(&self, j: usize) -> Jet1 {
        Jet1::from_coeffs((0..=self.d1).map(|i| self.coeff(i, j)).collect())
    }

    fn from_u_slices(d1: usize, slices: &[Jet1]) -> Jet2 {
        let d2 = slices.len() - 1;
        let mut out = Jet2::constant(0.0, d1, d2);
        for (j, sl) in slices.iter().enumerate() {
            for (i, c) in sl.coeffs().iter().enumerate() {
                out.coeffs[i * (d2 + 1) + j] = *c;
            }
        }
        out
    }

    /// Runs `k g_k = Σ_{j=1..k} f_j g_{k-j} w(j, k)` in the second variable with
    /// first-variable series as coefficients, then scales by `1/(k·f_0)` where
    /// `divide` is set. Summing in `t` directly avoids the cancellation of a
    /// composed expansion whose majorant outgrows the true radius.
    fn u_recurrence(&self, g0: Jet1, divide: bool, w: impl Fn(usize, usize) -> f64) -> Result<Jet2> {
        let f: Vec<Jet1> = (0..=self.d2).map(|j| self.u_slice(j)).collect();
        let inv0 = if divide { Some(f[0].recip()?) } else { None };
        let mut g = vec![g0];
        for k in 1..=self.d2 {
            let mut acc = Jet1::constant(0.0, self.d1);
            for j in 1..=k {
                let c = w(j, k);
                if c != 0.0 {
                    acc = &acc + &(&f[j] * &g[k - j]).scale(c);
                }
            }
            let acc = acc.scale(1.0 / k as f64);
            g.push(match &inv0 {
                Some(inv) => &acc * inv,
                None => acc,
            });
        }
        Ok(Self::from_u_slices(self.d1, &g))
    }

    pub fn powf(&self, p: f64) -> Result<Jet2> {
        let g0 = self.u_slice(0).powf(p)?;
        self.u_recurrence(g0, true, |j, k| p * j as f64 - (k - j) as f64)
    }

    pub fn inv_sqrt(&self) -> Result<Jet2> {
        self.powf(-0.5)
    }

    pub fn recip(&self) -> Result<Jet2> {
        self.powf(-1.0)
    }

    pub fn exp(&self) -> Jet2 {
        let g0 = self.u_slice(0).exp();
        self.u_recurrence(g0, false, |j, _| j as f64).expect("exp needs no division")
    }

    pub fn try_product(&self, other: &Jet2) -> Result<Jet2> {
        if (self.d1, self.d2) != (other.d1, other.d2) {
            return Err(Error::Contract("jet2 order mismatch".into()));
        }
        Ok(self * other)
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.assert_same_shape(rhs);
        Jet2 {
            d1: self.d1,
            d2: self.d2,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.assert_same_shape(rhs);
        Jet2 {
            d1: self.d1,
            d2: self.d2,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        self.assert_same_shape(rhs);
        let (d1, d2) = (self.d1, self.d2);
        let w = d2 + 1;
        let zero = Complex::new(0.0, 0.0);
        let mut out = vec![zero; (d1 + 1) * w];
        for i1 in 0..=d1 {
            for j1 in 0..=d2 {
                let a = self.coeffs[i1 * w + j1];
                if a == zero {
                    continue;
                }
                for i2 in 0..=d1 - i1 {
                    let row = (i1 + i2) * w + j1;
                    let src = i2 * w;
                    for j2 in 0..=d2 - j1 {
                        out[row + j2] += a * rhs.coeffs[src + j2];
                    }
                }
            }
        }
        Jet2 { d1, d2, coeffs: out }
    }
}

macro_rules! forward_owned2 {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: Jet2) -> Jet2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet2> for Jet2 {
            type Output = Jet2;
            fn $m(self, rhs: &Jet2) -> Jet2 {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned2!(Add, add);
forward_owned2!(Sub, sub);
forward_owned2!(Mul, mul);
