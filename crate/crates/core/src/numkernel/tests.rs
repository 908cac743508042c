use super::quadrature::GaussHermite;
use super::*;
use crate::Complex;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn assert_coeffs(j: &Jet1, expect: &[f64], tol: f64) {
    assert_eq!(j.order() + 1, expect.len());
    for (k, (a, b)) in j.coeffs().iter().zip(expect).enumerate() {
        assert!((a - b).norm() < tol, "coeff {k}: {a} vs {b}");
    }
}

/// k-th derivative by central differences with step h.
fn central_diff(f: &dyn Fn(f64) -> f64, x: f64, k: usize, h: f64) -> f64 {
    let binom = |n: usize, r: usize| factorial(n as u32) / (factorial(r as u32) * factorial((n - r) as u32));
    (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(k, i) * f(x + (k as f64 / 2.0 - i as f64) * h)
        })
        .sum::<f64>()
        / h.powi(k as i32)
}

fn check_against_fd(j: &Jet1, f: &dyn Fn(f64) -> f64, x: f64) {
    const STEPS: [f64; 5] = [0.0, 1e-3, 5e-3, 1e-2, 2e-2];
    for (k, &h) in STEPS.iter().enumerate().take(j.order().min(4) + 1) {
        // Richardson extrapolation of the O(h²) central stencil
        let fd = if k == 0 {
            f(x)
        } else {
            (4.0 * central_diff(f, x, k, h / 2.0) - central_diff(f, x, k, h)) / 3.0
        };
        let jet = j.derivative(k).re;
        assert!(
            (fd - jet).abs() <= 1e-5 * jet.abs().max(1.0),
            "k={k}: jet {jet} vs fd {fd}"
        );
    }
}

#[test]
fn product_examples() {
    let a = Jet1::from_real(&[1.0, 1.0, 0.0]);
    let b = Jet1::from_real(&[1.0, -1.0, 0.0]);
    assert_coeffs(&jet_product(&a, &b).unwrap(), &[1.0, 0.0, -1.0], 1e-15);
    let one = Jet1::constant(1.0, 2);
    assert_eq!(jet_product(&a, &one).unwrap(), a);
    let geo = Jet1::from_real(&[1.0; 5]);
    let lin = Jet1::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]);
    let p = jet_product(&geo, &lin).unwrap();
    assert_coeffs(&p, &[1.0, 0.0, 0.0, 0.0, 0.0], 1e-15);
    check_against_fd(&p, &|u| (1.0 - u) / (1.0 - u), 0.0);
}

#[test]
fn product_order_mismatch_is_contract_violation() {
    let a = Jet1::constant(1.0, 2);
    let b = Jet1::constant(1.0, 3);
    assert!(matches!(jet_product(&a, &b), Err(crate::Error::Contract(_))));
}

#[test]
fn inv_sqrt_examples() {
    assert_coeffs(&jet_inv_sqrt(&Jet1::from_real(&[4.0, 0.0, 0.0])).unwrap(), &[0.5, 0.0, 0.0], 1e-15);
    let a = Jet1::from_real(&[1.0, -2.0, 0.0, 0.0]);
    let r = jet_inv_sqrt(&a).unwrap();
    assert_coeffs(&r, &[1.0, 1.0, 1.5, 2.5], 1e-14);
    let back = &(&r * &r) * &a;
    assert_coeffs(&back, &[1.0, 0.0, 0.0, 0.0], 1e-12);
    assert!(matches!(jet_inv_sqrt(&Jet1::constant(0.0, 2)), Err(crate::Error::SingularExpansion)));
}

#[test]
fn exp_examples() {
    assert_coeffs(&jet_exp(&Jet1::constant(0.0, 2)), &[1.0, 0.0, 0.0], 1e-15);
    assert_coeffs(&jet_exp(&Jet1::variable(0.0, 3)), &[1.0, 1.0, 0.5, 1.0 / 6.0], 1e-15);
    // f(u) = 0.3 + 0.7u - 0.4u² + 0.2u³ around u = 0
    let f = Jet1::from_real(&[0.3, 0.7, -0.4, 0.2, 0.0]);
    check_against_fd(&jet_exp(&f), &|u| (0.3 + 0.7 * u - 0.4 * u * u + 0.2 * u * u * u).exp(), 0.0);
}

#[test]
fn compose_examples() {
    let inner = Jet1::from_real(&[1.0, 1.0, 0.0]);
    assert_eq!(jet_compose(&Jet1::variable(1.0, 2), &inner).unwrap(), inner);
    let sq = Jet1::from_real(&[1.0, 2.0, 1.0]); // x² around x = 1
    assert_coeffs(&jet_compose(&sq, &inner).unwrap(), &[1.0, 2.0, 1.0], 1e-15);
    let outer = Jet1::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).inv_sqrt().unwrap();
    let inner = Jet1::from_real(&[0.0, 1.0, 1.0, 0.0, 0.0]);
    let r = jet_compose(&outer, &inner).unwrap();
    check_against_fd(&r, &|u| (1.0 - u - u * u).powf(-0.5), 0.0);
}

#[test]
fn derivative_jet_shifts_coefficients() {
    // f = 1/(1-u): f^(m+j)(0)/j! = (m+j)!/j!
    let f = Jet1::from_real(&[1.0; 6]);
    let h = f.derivative_jet(2);
    assert_coeffs(&h, &[2.0, 6.0, 12.0, 20.0], 1e-12);
}

#[test]
fn jet2_matches_nested_univariate() {
    // f(x, u) = [(1 - x u)² - C² u²]^{-1/2}
    let cc = 0.3;
    let (x0, u0) = (0.4, 0.2);
    let x = Jet2::var_x(x0, 3, 4);
    let u = Jet2::var_u(u0, 3, 4);
    let one_minus = (&x * &u).scale(-1.0).add_scalar(1.0);
    let f = (&one_minus * &one_minus - (&u * &u).scale(cc * cc)).inv_sqrt().unwrap();
    let func = |x: f64, u: f64| ((1.0 - x * u).powi(2) - cc * cc * u * u).powf(-0.5);
    for i in 0..=2 {
        for j in 0..=2 {
            // mixed finite difference
            let h = 1e-3;
            let fx = |xx: f64| {
                central_diff(&|uu| func(xx, uu), u0, j, h)
            };
            let fd = central_diff(&fx, x0, i, h);
            let jet = f.coeff(i, j).re * factorial(i as u32) * factorial(j as u32);
            assert!((fd - jet).abs() < 1e-4 * jet.abs().max(1.0), "({i},{j}) {jet} vs {fd}");
        }
    }
}

#[test]
fn moment_integral_examples() {
    let z = c(0.0, 0.0);
    let v = gaussian_moment_integral(0, 0, c(-1.0, 0.0), z, z).unwrap();
    assert!((v - 1.0).norm() < 1e-15);
    let v = gaussian_moment_integral(1, 1, c(-1.0, 0.0), z, z).unwrap();
    assert!((v - 1.0).norm() < 1e-15);
    // direct quadrature of exp(-2|z|² + z - z*) gives e^{-1/2}/2
    let v = gaussian_moment_integral(0, 0, c(-2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    let quad = moment_by_quadrature(0, 0, c(-2.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), 60);
    assert!((v - quad).norm() < 1e-8);
    assert!((v.re - 0.5 * (-0.5f64).exp()).abs() < 1e-14);
    assert!(matches!(
        gaussian_moment_integral(0, 0, c(0.0, 1.0), z, z),
        Err(crate::Error::Divergent(_))
    ));
}

#[test]
fn quadratic_integral_examples() {
    let z = c(0.0, 0.0);
    let v = gaussian_quadratic_integral(c(-1.0, 0.0), z, z, z, z).unwrap();
    assert!((v - 1.0).norm() < 1e-15);
    let v = gaussian_quadratic_integral(c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), z, z).unwrap();
    assert!((v.re - (-1.0f64).exp()).abs() < 1e-15);
    let v = gaussian_quadratic_integral(c(-2.0, 0.0), z, z, c(0.5, 0.0), c(0.5, 0.0)).unwrap();
    assert!((v.re - 3f64.powf(-0.5)).abs() < 1e-15);
    let quad = quadratic_by_quadrature(c(-2.0, 0.0), z, z, c(0.5, 0.0), c(0.5, 0.0), 80);
    assert!((v - quad).norm() < 1e-8);
    assert!(gaussian_quadratic_integral(c(-1.0, 0.0), z, z, c(1.0, 0.0), c(1.0, 0.0)).is_err());
}

#[test]
fn quadratic_jet_matches_scalar_and_fd() {
    // ∂_v of ∫ exp[v|z|² + ξz + ηz* + f(z² + z*²)] against the scalar identity
    let xi = c(0.3, -0.1);
    let eta = c(-0.2, 0.4);
    let fv = c(0.2, 0.0);
    let scalar = |v: f64| gaussian_quadratic_integral(c(v, 0.0), xi, eta, fv, fv).unwrap();
    let d = 4;
    let k = |z: Complex| Jet1::constant(z, d);
    let jet = gaussian_quadratic_integral_jet(&Jet1::variable(-1.3, d), &k(xi), &k(eta), &k(fv), &k(fv)).unwrap();
    check_against_fd(&jet, &|v| scalar(v).re, -1.3);
    let jet_im = Jet1::from_coeffs(jet.coeffs().iter().map(|z| Complex::new(z.im, 0.0)).collect());
    check_against_fd(&jet_im, &|v| scalar(v).im, -1.3);
}

fn moment_by_quadrature(n: u32, m: u32, a: Complex, b: Complex, cc: Complex, order: usize) -> Complex {
    let gh = GaussHermite::new(order);
    let scale = (-a.re).sqrt();
    let mut acc = Complex::new(0.0, 0.0);
    for (&x, &wx) in gh.nodes.iter().zip(&gh.weights) {
        for (&y, &wy) in gh.nodes.iter().zip(&gh.weights) {
            let z = Complex::new(x, y) / scale;
            let f = (Complex::new(0.0, a.im) * z.norm_sqr() + b * z + cc * z.conj()).exp()
                * z.powu(n)
                * z.conj().powu(m);
            acc += f * wx * wy;
        }
    }
    acc / (std::f64::consts::PI * scale * scale)
}

fn quadratic_by_quadrature(
    zeta: Complex,
    xi: Complex,
    eta: Complex,
    f: Complex,
    g: Complex,
    order: usize,
) -> Complex {
    let gh = GaussHermite::new(order);
    let scale = (-zeta.re).sqrt();
    let mut acc = Complex::new(0.0, 0.0);
    for (&x, &wx) in gh.nodes.iter().zip(&gh.weights) {
        for (&y, &wy) in gh.nodes.iter().zip(&gh.weights) {
            let z = Complex::new(x, y) / scale;
            let e = Complex::new(0.0, zeta.im) * z.norm_sqr()
                + xi * z
                + eta * z.conj()
                + f * z * z
                + g * z.conj() * z.conj();
            acc += e.exp() * wx * wy;
        }
    }
    acc / (std::f64::consts::PI * scale * scale)
}

#[test]
fn gauss_hermite_integrates_moments() {
    let gh = GaussHermite::new(24);
    let pi_sqrt = std::f64::consts::PI.sqrt();
    assert!((gh.integrate(|_| 1.0) - pi_sqrt).abs() < 1e-13);
    assert!((gh.integrate(|x| x * x) - pi_sqrt / 2.0).abs() < 1e-13);
    assert!((gh.integrate(|x| x.powi(4)) - 0.75 * pi_sqrt).abs() < 1e-12);
    assert!((gh.integrate(|x| (2.0 * x).cos()) - pi_sqrt * (-1.0f64).exp()).abs() < 1e-13);
}

fn cplx(bound: f64) -> impl Strategy<Value = Complex> {
    (-bound..bound, -bound..bound).prop_map(|(a, b)| Complex::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn moment_integral_matches_quadrature(
        n in 0u32..4, m in 0u32..4,
        are in -2.0f64..-0.7, aim in -0.3f64..0.3,
        b in cplx(0.6), cc in cplx(0.6),
    ) {
        let a = Complex::new(are, aim);
        let closed = gaussian_moment_integral(n, m, a, b, cc).unwrap();
        let quad = moment_by_quadrature(n, m, a, b, cc, 60);
        prop_assert!((closed - quad).norm() <= 1e-8 * closed.norm().max(1e-3), "{closed} vs {quad}");
    }

    #[test]
    fn quadratic_integral_matches_quadrature(
        zre in -2.5f64..-1.2, zim in -0.3f64..0.3,
        xi in cplx(0.6), eta in cplx(0.6), f in cplx(0.2), g in cplx(0.2),
    ) {
        let zeta = Complex::new(zre, zim);
        if let Ok(closed) = gaussian_quadratic_integral(zeta, xi, eta, f, g) {
            let quad = quadratic_by_quadrature(zeta, xi, eta, f, g, 80);
            prop_assert!((closed - quad).norm() <= 1e-8 * closed.norm().max(1e-3), "{closed} vs {quad}");
        }
    }

    #[test]
    fn inv_sqrt_round_trip(c0 in 0.5f64..3.0, c1 in -0.5f64..0.5, c2 in -0.5f64..0.5, c3 in -0.5f64..0.5) {
        let a = Jet1::from_real(&[c0, c1, c2, c3, 0.0, 0.0]);
        let r = a.inv_sqrt().unwrap();
        let back = &(&r * &r) * &a;
        for (k, v) in back.coeffs().iter().enumerate() {
            let target = if k == 0 { 1.0 } else { 0.0 };
            prop_assert!((v - target).norm() < 1e-12, "coeff {k}: {v}");
        }
    }
}
