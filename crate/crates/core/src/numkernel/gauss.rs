use super::{factorial, Jet1, Jet2};
use crate::{Complex, Error, Result};

/// `∫ d²z/π z^n z*^m exp[A|z|² + Bz + Cz*]` for `Re A < 0`.
pub fn gaussian_moment_integral(n: u32, m: u32, a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    if !(a.re < 0.0) {
        return Err(Error::Divergent(format!("Re(A) = {} is not negative", a.re)));
    }
    let neg_a = -a;
    let sum: Complex = (0..=n.min(m))
        .map(|l| {
            let w = factorial(n) * factorial(m)
                / (factorial(l) * factorial(n - l) * factorial(m - l));
            b.powu(m - l) * c.powu(n - l) * w / neg_a.powu(n + m - l + 1)
        })
        .sum();
    Ok((-b * c / a).exp() * sum)
}

fn check_quadratic(zeta: Complex, f: Complex, g: Complex) -> Result<Complex> {
    let disc = zeta * zeta - 4.0 * f * g;
    for sign in [1.0, -1.0] {
        let lin = zeta + sign * (f + g);
        if !(lin.re < 0.0) {
            return Err(Error::Divergent(format!("Re(ζ∓f∓g) = {} is not negative", lin.re)));
        }
        if !((disc / lin).re < 0.0) {
            return Err(Error::Divergent(format!(
                "Re((ζ²-4fg)/(ζ∓f∓g)) = {} is not negative",
                (disc / lin).re
            )));
        }
    }
    if disc.im == 0.0 && disc.re <= 0.0 {
        return Err(Error::BranchAmbiguity(format!("ζ²-4fg = {disc} lies on the branch cut")));
    }
    Ok(disc)
}

/// `∫ d²z/π exp[ζ|z|² + ξz + ηz* + fz² + gz*²]`, principal square root.
pub fn gaussian_quadratic_integral(
    zeta: Complex,
    xi: Complex,
    eta: Complex,
    f: Complex,
    g: Complex,
) -> Result<Complex> {
    let disc = check_quadratic(zeta, f, g)?;
    let expo = (-zeta * xi * eta + xi * xi * g + eta * eta * f) / disc;
    Ok(expo.exp() / disc.sqrt())
}

/// Same identity with jet-valued parameters; convergence is checked at the
/// expansion point.
pub fn gaussian_quadratic_integral_jet(
    zeta: &Jet1,
    xi: &Jet1,
    eta: &Jet1,
    f: &Jet1,
    g: &Jet1,
) -> Result<Jet1> {
    check_quadratic(zeta.value(), f.value(), g.value())?;
    let disc = zeta * zeta - (f * g).scale(4.0);
    let num = (zeta * xi * eta).scale(-1.0) + xi * xi * g + eta * eta * f;
    let expo = num * disc.recip()?;
    Ok(expo.exp() * disc.inv_sqrt()?)
}

/// Same identity with bivariate jet parameters.
pub fn gaussian_quadratic_integral_jet2(
    zeta: &Jet2,
    xi: &Jet2,
    eta: &Jet2,
    f: &Jet2,
    g: &Jet2,
) -> Result<Jet2> {
    check_quadratic(zeta.value(), f.value(), g.value())?;
    let disc = zeta * zeta - (f * g).scale(4.0);
    let num = (zeta * xi * eta).scale(-1.0) + xi * xi * g + eta * eta * f;
    let expo = num * disc.recip()?;
    Ok(expo.exp() * disc.inv_sqrt()?)
}
