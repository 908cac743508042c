use std::f64::consts::PI;

use super::*;
use crate::numkernel::{gaussian_quadratic_integral_jet, Jet1};
use crate::states::squeeze_coeffs;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn lattice() -> Vec<StateSpec> {
    let mut out = Vec::new();
    for n_th in [0.1, 0.5, 1.0] {
        for m in 0..=2 {
            out.push(StateSpec::Pats { n_th, m });
            out.push(StateSpec::Psts { n_th, m });
            for k in 0..=2 {
                out.push(StateSpec::Pakfts { n_th, m, k });
            }
            for lambda in [0.0, 0.2, 0.4] {
                out.push(StateSpec::Pasts { n_th, m, lambda });
                out.push(StateSpec::Pssts { n_th, m, lambda });
            }
        }
    }
    out
}

const STAGES: [Stage; 3] = [Stage::Input, Stage::Output { s: 0.3 }, Stage::Output { s: 1.0 }];

#[test]
fn char_fn_is_normalized_hermitian_and_bounded() {
    let gammas = [c(0.3, 0.1), c(-0.8, 0.5), c(1.2, -0.9)];
    for spec in lattice() {
        for stage in STAGES {
            for kappa in KappaOrder::ALL {
                let Ok(q) = QuasiProb::new(&spec, stage, kappa) else { panic!("{spec:?}") };
                if !q.guard().is_admissible() {
                    continue;
                }
                let at0 = q.char_fn(c(0.0, 0.0)).unwrap();
                assert!((at0 - 1.0).norm() < 1e-12, "{spec:?} {stage:?} {kappa:?}: {at0}");
                for g in gammas {
                    let a = q.char_fn(g).unwrap();
                    let b = q.char_fn(-g).unwrap();
                    assert!((a - b.conj()).norm() < 1e-12, "{spec:?} {stage:?} {kappa:?}");
                    if kappa == KappaOrder::Q {
                        assert!(a.norm() <= 1.0 + 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn zero_noise_output_equals_input() {
    let alphas = [c(0.0, 0.0), c(0.4, -0.7), c(-1.1, 0.3)];
    for spec in lattice() {
        for kappa in KappaOrder::ALL {
            let a = QuasiProb::new(&spec, Stage::Input, kappa).unwrap();
            let b = QuasiProb::new(&spec, Stage::Output { s: 0.0 }, kappa).unwrap();
            if !a.guard().is_admissible() {
                continue;
            }
            for z in alphas {
                assert!((a.char_fn(z).unwrap() - b.char_fn(z).unwrap()).norm() < 1e-10);
                assert!((a.point(z).unwrap() - b.point(z).unwrap()).abs() < 1e-10);
            }
        }
    }
}

/// χ_out(γ, κ) = χ_in(γ, κ - 2s): the channel multiplies χ by e^{-s|γ|²}.
#[test]
fn channel_shifts_the_ordering() {
    let s = 0.5;
    for spec in lattice() {
        for z in [c(0.3, 0.2), c(-0.9, 0.6)] {
            let out = char_fn(&spec, Stage::Output { s }, KappaOrder::P, z).unwrap();
            let inp = char_fn(&spec, Stage::Input, KappaOrder::W, z).unwrap();
            assert!((out - inp).norm() < 1e-12, "{spec:?}");
        }
    }
}

#[test]
fn char_fn_examples() {
    let th = StateSpec::thermal(1.0);
    let v = char_fn(&th, Stage::Input, KappaOrder::W, c(1.0, 0.0)).unwrap();
    assert!((v.re - (-1.5f64).exp()).abs() < 1e-12 && v.im.abs() < 1e-15);
    let g = c(0.7, 0.0);
    let out = char_fn(&StateSpec::thermal(0.3), Stage::Output { s: 0.5 }, KappaOrder::W, g).unwrap();
    let hot = char_fn(&StateSpec::thermal(0.8), Stage::Input, KappaOrder::W, g).unwrap();
    assert!((out - hot).norm() < 1e-14);
}

#[test]
fn quasiprob_examples() {
    let origin = c(0.0, 0.0);
    let vac = quasiprob_point(&StateSpec::thermal(0.0), Stage::Input, KappaOrder::W, origin).unwrap();
    assert!((vac - 2.0 / PI).abs() < 1e-14);
    let one = quasiprob_point(&StateSpec::Pats { n_th: 0.0, m: 1 }, Stage::Input, KappaOrder::W, origin).unwrap();
    assert!((one + 2.0 / PI).abs() < 1e-14);
    for n_th in [0.01, 0.3, 1.0, 3.0] {
        let w = quasiprob_point(&StateSpec::Pats { n_th, m: 1 }, Stage::Input, KappaOrder::W, origin).unwrap();
        assert!(w < 0.0);
    }
    let q = quasiprob_point(&StateSpec::thermal(0.5), Stage::Input, KappaOrder::Q, origin).unwrap();
    assert!((q - 1.0 / (PI * 1.5)).abs() < 1e-14);
}

#[test]
fn husimi_is_non_negative() {
    let grid = PhaseGrid::square(-2.5, 2.5, 11).unwrap();
    for spec in lattice() {
        for stage in STAGES {
            let f = quasiprob_grid(&spec, stage, KappaOrder::Q, &grid).unwrap();
            assert!(f.values.iter().all(|&v| v >= -1e-12), "{spec:?} {stage:?}");
        }
    }
}

#[test]
fn guard_examples() {
    let pats = |n_th| StateSpec::Pats { n_th, m: 0 };
    assert!(convergence_guard(&pats(0.5), Stage::Input, KappaOrder::P).is_admissible());
    assert!(!convergence_guard(&pats(0.0), Stage::Input, KappaOrder::P).is_admissible());
    let Admissibility::Inadmissible(reason) = convergence_guard(&pats(0.0), Stage::Input, KappaOrder::P) else {
        unreachable!()
    };
    assert!(reason.contains("singular P"));
    let err = quasiprob_point(&pats(0.0), Stage::Input, KappaOrder::P, c(0.0, 0.0)).unwrap_err();
    assert!(matches!(err, Error::Inadmissible(_)));
    let squeezed = StateSpec::Pasts { n_th: 0.1, m: 0, lambda: 2.0 };
    assert!(!convergence_guard(&squeezed, Stage::Input, KappaOrder::P).is_admissible());
    assert!(convergence_guard(&squeezed, Stage::Input, KappaOrder::W).is_admissible());
    // the channel regularizes P once s exceeds the squeezed variance deficit
    assert!(convergence_guard(&pats(0.0), Stage::Output { s: 0.2 }, KappaOrder::P).is_admissible());
}

#[test]
fn grid_matches_points_and_both_executors() {
    let spec = StateSpec::Pssts { n_th: 0.2, m: 1, lambda: 0.3 };
    let grid = PhaseGrid::new(-1.0, 1.0, 2, -0.5, 0.5, 2).unwrap();
    let q = QuasiProb::new(&spec, Stage::Output { s: 0.3 }, KappaOrder::W).unwrap();
    let seq = q.grid(&grid, Exec::Sequential).unwrap();
    let par = q.grid(&grid, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(seq.get(i, j), q.point(c(grid.re(i), grid.im(j))).unwrap());
        }
    }
    let mut out = Vec::new();
    seq.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("re,im,value\n-1.0000000000000000e0,-5.0000000000000000e-1,"));
}

#[test]
fn thermal_families_are_radial() {
    for spec in [
        StateSpec::Pats { n_th: 0.4, m: 2 },
        StateSpec::Psts { n_th: 0.4, m: 2 },
        StateSpec::Pakfts { n_th: 0.4, m: 1, k: 2 },
    ] {
        for stage in STAGES {
            let q = QuasiProb::new(&spec, stage, KappaOrder::W).unwrap();
            for (r, phi) in [(0.5, 0.3), (1.3, 2.0), (2.1, -1.2)] {
                let a = q.point(c(r, 0.0)).unwrap();
                let b = q.point(Complex::from_polar(r, phi)).unwrap();
                assert!((a - b).abs() < 1e-12, "{spec:?}");
            }
        }
    }
}

#[test]
fn wigner_riemann_sum_is_one() {
    let grid = PhaseGrid::square(-6.0, 6.0, 121).unwrap();
    let f = quasiprob_grid(&StateSpec::Pats { n_th: 0.3, m: 1 }, Stage::Input, KappaOrder::W, &grid).unwrap();
    let cell = 0.1 * 0.1;
    let total: f64 = f.values.iter().sum::<f64>() * cell;
    assert!((total - 1.0).abs() < 1e-3, "{total}");
}

#[test]
fn squeezed_wigner_integrates_to_one() {
    let grid = PhaseGrid::square(-6.0, 6.0, 121).unwrap();
    for spec in [StateSpec::Pasts { n_th: 0.2, m: 1, lambda: 0.4 }, StateSpec::Pssts { n_th: 0.2, m: 2, lambda: 0.4 }] {
        for stage in [Stage::Input, Stage::Output { s: 0.5 }] {
            let f = quasiprob_grid(&spec, stage, KappaOrder::W, &grid).unwrap();
            let total: f64 = f.values.iter().sum::<f64>() * 0.01;
            assert!((total - 1.0).abs() < 1e-3, "{spec:?} {stage:?}: {total}");
        }
    }
}

#[test]
fn wigner_origin_rises_then_relaxes_with_noise() {
    let spec = StateSpec::Pats { n_th: 0.1, m: 1 };
    let w: Vec<f64> = (0..=20)
        .map(|i| quasiprob_point(&spec, Stage::Output { s: 0.1 * i as f64 }, KappaOrder::W, c(0.0, 0.0)).unwrap())
        .collect();
    assert!(w[..=15].windows(2).all(|p| p[1] >= p[0]), "{w:?}");
    assert!(w[20] < w[16]);
}

#[test]
fn added_chain_matches_its_defining_expressions() {
    let sq = squeeze_coeffs(0.3, 0.25).unwrap();
    let s = 0.4;
    let ch = AddedChain::new(&sq, s, 0).unwrap();
    let (x, cc) = (sq.x, sq.c);
    let y = x + 1.0 / s;
    let y0 = y / (s * s * (y * y - cc * cc));
    let c0 = cc / (s * s * (y * y - cc * cc));
    let z = 1.0 / s - y0;
    assert!((ch.z.value().re - z).abs() < 1e-13);
    assert!((ch.c0.value().re - c0).abs() < 1e-13);
    assert!((ch.den.value().re - s * s * (y * y - cc * cc)).abs() < 1e-13);
    assert!((ch.e.value().re - (z * z - c0 * c0)).abs() < 1e-13);
    let y1 = ch.y1(KappaOrder::W).unwrap().value().re;
    assert!((y1 - (z / (z * z - c0 * c0) - 0.5)).abs() < 1e-13);
    // at s = 0 the chain is the identity on the input kernel
    let id = AddedChain::new(&sq, 0.0, 2).unwrap();
    assert_eq!(id.z.coeffs(), id.x.coeffs());
}

#[test]
fn subtracted_chain_matches_the_trace_integral() {
    let sq = squeeze_coeffs(0.3, 0.25).unwrap();
    let ch = SubtractedChain::new(&sq, 0).unwrap();
    let (b, cc) = (sq.b, sq.c);
    for g in [c(0.4, 0.1), c(-0.7, 0.9)] {
        let k = |z: Complex| Jet1::constant(z, 0);
        // ∫ d²z/π exp(-(1-B)|z|² - (γ* - Cγ) z + Bγ z* + C/2 z² + C/2 z*²) e^{Cγ²/2}
        let mif = gaussian_quadratic_integral_jet(
            &k(c(-(1.0 - b), 0.0)),
            &k(-(g.conj() - g * cc)),
            &k(g * b),
            &k(c(cc / 2.0, 0.0)),
            &k(c(cc / 2.0, 0.0)),
        )
        .unwrap()
        .value()
            * (g * g * cc / 2.0).exp();
        let closed = ch.d.value().powf(-0.5)
            * (ch.a1.value() * g.conj() * g.conj() + ch.a2.value() * g * g - ch.a3.value() * g.norm_sqr()).exp();
        assert!((mif - closed).norm() < 1e-13, "{mif} vs {closed}");
    }
}
