use num_complex::Complex;
use recoil::angular::{msum_weight, wigner_6j};
use recoil::basis::{BasisConfig, DiracSpectrum, Orbital};
use recoil::matrix_elements::*;
use recoil::recoil_one::lowest_order;

const ALPHA: f64 = 1.0 / 137.0359895;

fn spectra(z: u32, kappas: &[i32]) -> Vec<DiracSpectrum<f64>> {
    let basis = BasisConfig::<f64>::default().build(z, 2, ALPHA).unwrap();
    kappas
        .iter()
        .map(|&k| recoil::basis::solve_spectrum(k, basis.clone(), ALPHA).unwrap())
        .collect()
}

// Gradient formula for (l1 j1 || grad || l2 j2) with radial functions X/r, Y/r.
fn angular_grad(l1: i32, tj1: i32, l2: i32, tj2: i32) -> f64 {
    let phase = if ((2 * l1 + tj2 + 3) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    phase * (((tj1 + 1) * (tj2 + 1)) as f64).sqrt() * wigner_6j::<f64>([2 * l1, tj1, 1, tj2, 2 * l2, 2]).unwrap()
}

fn radial_grad(l1: i32, l2: i32, w: &[f64], r: &[f64], x: &[f64], y: &[f64], dy: &[f64]) -> f64 {
    let mut acc = 0.0;
    for q in 0..w.len() {
        let d = dy[q] - y[q] / r[q];
        let v = if l1 == l2 + 1 {
            (l2 as f64 + 1.0).sqrt() * (d - l2 as f64 * y[q] / r[q])
        } else if l1 == l2 - 1 {
            -(l2 as f64).sqrt() * (d + (l2 as f64 + 1.0) * y[q] / r[q])
        } else {
            0.0
        };
        acc += w[q] * x[q] * v;
    }
    acc
}

/// `(a||p||n)` from `-i grad` acting on the spline expansion directly.
fn p_by_derivative(a: &State<f64>, n: &State<f64>) -> Complex<f64> {
    let (c1, c2) = (a.channel(), n.channel());
    let sn = n.spectrum;
    let (w, r) = (a.spectrum.weights(), a.spectrum.nodes());
    let t1 = angular_grad(c1.l, c1.two_j, c2.l, c2.two_j)
        * radial_grad(c1.l, c2.l, w, r, a.large(), n.large(), sn.large_derivative(n.index));
    let t2 = angular_grad(c1.l_prime, c1.two_j, c2.l_prime, c2.two_j)
        * radial_grad(c1.l_prime, c2.l_prime, w, r, a.small(), n.small(), sn.small_derivative(n.index));
    Complex::new(0.0, -(t1 + t2))
}

#[test]
fn parity_forbidden_elements_vanish_exactly() {
    let sp = spectra(20, &[-1, 1, -2]);
    let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::S1).unwrap());
    let ones = vec![1.0; sp[0].nodes().len()];
    for i in [0, 10, 40, 70] {
        let same = State::new(&sp[0], i);
        assert_eq!(me_alpha_phi(&a, &same, &ones), Complex::new(0.0, 0.0));
        assert_eq!(me_n_phi(&a, &same, &ones), Complex::new(0.0, 0.0));
        assert_eq!(me_momentum(&a, &same), Complex::new(0.0, 0.0));
        assert_eq!(me_d(&a, &same, 0.3), Complex::new(0.0, 0.0));
        assert!(!PairIntegrals::new(&a, &same).coupled());
    }
    // 2p3/2 (kappa = -2) reaches 1s/2 but not 2p1/2
    let p = State::new(&sp[1], 5);
    let p32 = State::new(&sp[2], 5);
    assert_eq!(me_momentum(&p, &p32), Complex::new(0.0, 0.0));
    assert_ne!(me_momentum(&a, &p32), Complex::new(0.0, 0.0));
}

#[test]
fn zero_kernel_gives_zero() {
    let sp = spectra(10, &[-1, 1]);
    let zero = vec![0.0; sp[0].nodes().len()];
    let a = State::new(&sp[0], sp[0].first_positive());
    for i in [0, 30, 80] {
        let n = State::new(&sp[1], i);
        assert_eq!(me_alpha_phi(&a, &n, &zero), Complex::new(0.0, 0.0));
        assert_eq!(me_n_phi(&a, &n, &zero), Complex::new(0.0, 0.0));
    }
}

#[test]
fn momentum_matches_derivative_form() {
    for z in [1u32, 20, 92] {
        let sp = spectra(z, &[-1, 1, -2]);
        let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::S1).unwrap());
        let scale = momentum_squared(&a).sqrt();
        for s in &sp[1..] {
            let first = s.first_positive();
            for i in [first, first + 1, first + 5, first.saturating_sub(1), 3] {
                let n = State::new(s, i);
                let id = me_momentum(&a, &n);
                let dv = p_by_derivative(&a, &n);
                assert!((id - dv).norm() <= 1e-7 * scale, "Z={z} kappa={} i={i}: {id} vs {dv}", s.kappa());
                let back = me_momentum(&n, &a);
                let dback = p_by_derivative(&n, &a);
                assert!((back - dback).norm() <= 1e-7 * scale, "Z={z} kappa={} i={i} reversed", s.kappa());
            }
        }
    }
}

#[test]
fn hermitian_pairs_give_nonnegative_magnetic_sums() {
    let sp = spectra(50, &[1, -1, 2]);
    let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::P2_HALF).unwrap());
    for s in &sp[1..] {
        let w: f64 = msum_weight(a.channel().two_j, s.channel().two_j);
        for i in (0..s.len()).step_by(7) {
            let n = State::new(s, i);
            let v = me_momentum(&a, &n) * me_momentum(&n, &a) * w;
            assert!(v.im.abs() <= 1e-12 * v.norm().max(1e-300), "imaginary part {v}");
            assert!(v.re >= -1e-15, "negative |p|^2 contribution {v}");
        }
    }
}

#[test]
fn kinetic_expectation_matches_lowest_order_coulomb() {
    // p^2 |a> grows like r^(2 gamma - 2) at the origin, so high Z converges slower
    for (z, orb, tol) in [(10u32, Orbital::S1, 1e-9), (20, Orbital::S2, 1e-8), (20, Orbital::P2_HALF, 1e-8), (60, Orbital::S1, 1e-5)] {
        let sp = spectra(z, &[orb.kappa]);
        let a = State::new(&sp[0], sp[0].find_bound_state(orb).unwrap());
        let half_p2 = 0.5 * momentum_squared(&a);
        let c = lowest_order(z, orb, ALPHA).unwrap().coulomb;
        assert!((half_p2 - c).abs() <= tol * c, "Z={z} {orb}: {half_p2} vs {c}");
    }
}

#[test]
fn retarded_element_tends_to_static() {
    let sp = spectra(30, &[-1, 1]);
    let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::S1).unwrap());
    for i in [2, sp[1].first_positive() + 1, sp[1].len() - 3] {
        let n = State::new(&sp[1], i);
        let d0 = me_d0(&a, &n);
        assert_eq!(me_d(&a, &n, 0.0), d0);
        let d = me_d(&a, &n, 1e-7);
        assert!((d - d0).norm() <= 1e-6 * d0.norm().max(1e-12), "i={i}: {d} vs {d0}");
    }
}

#[test]
fn screened_element_limits() {
    let sp = spectra(30, &[-1, 1]);
    let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::S1).unwrap());
    for i in [2, sp[1].first_positive() + 1, 60] {
        let n = State::new(&sp[1], i);
        let d0 = me_d0(&a, &n);
        let s0 = me_s(&a, &n, 1e-9);
        assert!((s0 - d0).norm() <= 1e-7 * d0.norm(), "i={i}: {s0} vs {d0}");
        let far = me_s(&a, &n, 1e9);
        assert!(far.norm() <= 1e-3 * d0.norm(), "i={i}: S(large y) = {far}");
    }
}

#[test]
fn pair_integrals_reproduce_single_elements() {
    let sp = spectra(40, &[1, -1, 2]);
    let a = State::new(&sp[0], sp[0].find_bound_state(Orbital::P2_HALF).unwrap());
    let nodes = sp[0].nodes();
    let phi: Vec<f64> = nodes.iter().map(|&r| (-0.1 * r).exp() / r).collect();
    let cphi: Vec<Complex<f64>> = nodes.iter().map(|&r| Complex::from_polar(1.0, 0.7 * r)).collect();
    for s in &sp[1..] {
        for i in [0, 20, s.first_positive() + 2] {
            let n = State::new(s, i);
            let pair = PairIntegrals::new(&a, &n);
            let (fwd, bwd) = pair.alpha(&phi);
            assert!((fwd - me_alpha_phi(&a, &n, &phi)).norm() <= 1e-13 * fwd.norm().max(1e-300) + 1e-300);
            assert!((bwd - me_alpha_phi(&n, &a, &phi)).norm() <= 1e-13 * bwd.norm().max(1e-300) + 1e-300);
            let (fwd, bwd) = pair.n(&cphi);
            assert!((fwd - me_n_phi(&a, &n, &cphi)).norm() <= 1e-13 * fwd.norm().max(1e-300) + 1e-300);
            assert!((bwd - me_n_phi(&n, &a, &cphi)).norm() <= 1e-13 * bwd.norm().max(1e-300) + 1e-300);
        }
    }
}
