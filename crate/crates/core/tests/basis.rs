use recoil::basis::*;
use recoil::matrix_elements::radial_integral;
use recoil::Error;

const ALPHA: f64 = 1.0 / 137.0359895;

// (gamma + n_r) / sqrt(n^2 - 2 n_r (|kappa| - gamma)), written out independently
fn dirac_level(z: u32, n: u32, kappa: i32) -> f64 {
    let az = ALPHA * z as f64;
    let k = kappa.abs() as f64;
    let g = (k * k - az * az).sqrt();
    let nr = n as f64 - k;
    (g + nr) / ((n * n) as f64 - 2.0 * nr * (k - g)).sqrt()
}

fn spectrum(z: u32, kappa: i32, cfg: BasisConfig<f64>) -> DiracSpectrum<f64> {
    let basis = cfg.build(z, 2, ALPHA).unwrap();
    solve_spectrum(kappa, basis, ALPHA).unwrap()
}

#[test]
fn bound_levels_match_closed_form() {
    for z in [1u32, 20, 92] {
        for orb in [Orbital::S1, Orbital::S2, Orbital::P2_HALF] {
            let sp = spectrum(z, orb.kappa, BasisConfig::default());
            let e = sp.energies()[sp.find_bound_state(orb).unwrap()];
            let exact = dirac_level(z, orb.n, orb.kappa);
            assert!(((e - exact) / exact).abs() <= 1e-9, "Z={z} {orb}: {e} vs {exact}");
        }
    }
}

#[test]
fn small_cavity_ground_state() {
    // one Bohr radius
    let cfg = BasisConfig { n_splines: 60, box_radius: Some(1.0 / ALPHA), ..BasisConfig::default() };
    let sp = spectrum(92, -1, cfg);
    let e = sp.energies()[sp.first_positive()];
    let exact = (1.0 - (92.0 * ALPHA).powi(2)).sqrt();
    assert!(((e - exact) / exact).abs() <= 1e-9, "{e} vs {exact}");
}

#[test]
fn eigenvectors_are_orthonormal() {
    let sp = spectrum(50, 1, BasisConfig::default());
    let w = sp.weights();
    let probe = [0, 3, sp.first_positive() - 1, sp.first_positive(), sp.first_positive() + 1, sp.len() - 1];
    for &i in &probe {
        for &j in &probe {
            let ov = radial_integral(w, sp.large(i), sp.large(j), &vec![1.0; w.len()])
                + radial_integral(w, sp.small(i), sp.small(j), &vec![1.0; w.len()]);
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((ov - expect).abs() < 1e-10, "({i},{j}) overlap {ov}");
        }
        assert!((sp.norm_check(i) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn spectrum_splits_into_two_branches() {
    for kappa in [-1, 1, -2, 2] {
        let sp = spectrum(30, kappa, BasisConfig::default());
        let e = sp.energies();
        assert_eq!(sp.len(), 2 * sp.basis().n_basis());
        assert_eq!(sp.first_positive(), sp.len() / 2, "kappa={kappa}");
        assert!(e.windows(2).all(|p| p[0] <= p[1]));
        assert!(e[sp.first_positive() - 1] < -1.0, "kappa={kappa}: top of the lower branch {}", e[sp.first_positive() - 1]);
        assert!(e[sp.first_positive()] > 0.0);
    }
}

#[test]
fn quadrature_order_does_not_matter() {
    let a = spectrum(40, -1, BasisConfig::default());
    let b = spectrum(40, -1, BasisConfig { quadrature_order: 16, ..BasisConfig::default() });
    for orb in [Orbital::S1, Orbital::S2] {
        let ea = a.energies()[a.find_bound_state(orb).unwrap()];
        let eb = b.energies()[b.find_bound_state(orb).unwrap()];
        assert!((ea - eb).abs() < 1e-12, "{orb}: {ea} vs {eb}");
    }
}

#[test]
fn error_shrinks_with_spline_count() {
    let exact = dirac_level(10, 2, -1);
    let mut last = f64::INFINITY;
    for n in [20usize, 30, 40] {
        let sp = spectrum(10, -1, BasisConfig { n_splines: n, ..BasisConfig::default() });
        let err = (sp.energies()[sp.find_bound_state(Orbital::S2).unwrap()] - exact).abs();
        assert!(err < last, "n={n}: {err} did not improve on {last}");
        last = err;
    }
}

#[test]
fn spurious_root_is_never_labelled() {
    // kappa > 0 carries an extra root near the 1s energy
    let sp = spectrum(20, 1, BasisConfig::default());
    let e1s = dirac_level(20, 1, -1);
    let spurious = sp.energies().iter().filter(|&&e| ((e - e1s) / (1.0 - e1s)).abs() < 1e-3).count();
    assert_eq!(spurious, 1);
    let i = sp.find_bound_state(Orbital::P2_HALF).unwrap();
    assert!((sp.energies()[i] - dirac_level(20, 2, 1)).abs() < 1e-10);
    assert!(sp.find_bound_state(Orbital::S1).is_err());
    let p32 = Orbital::new(2, -2).unwrap();
    assert!(sp.find_bound_state(p32).is_err());
}

#[test]
fn single_precision_basis() {
    // the overlap matrix loses single precision beyond ~20 splines
    let cfg = BasisConfig::<f32> { n_splines: 20, ..BasisConfig::default() };
    let basis = cfg.build(20, 1, ALPHA as f32).unwrap();
    let sp = solve_spectrum(-1, basis, ALPHA as f32).unwrap();
    let e = sp.energies()[sp.find_bound_state(Orbital::S1).unwrap()];
    assert!((e as f64 - dirac_level(20, 1, -1)).abs() < 1e-5, "{e}");
}

#[test]
fn bad_configurations_are_rejected() {
    let tiny = BasisConfig::<f64> { n_splines: 8, ..BasisConfig::default() };
    assert!(matches!(tiny.build(10, 1, ALPHA), Err(Error::InvalidArgument { .. })));
    assert!(matches!(BasisConfig::<f64>::default().build(0, 1, ALPHA), Err(Error::InvalidArgument { .. })));
    assert!(matches!(BasisConfig::<f64>::default().build(140, 1, ALPHA), Err(Error::Domain { .. })));
    let neg = BasisConfig { box_radius: Some(-1.0), ..BasisConfig::<f64>::default() };
    assert!(neg.build(10, 1, ALPHA).is_err());
    let basis = BasisConfig::<f64>::default().build(10, 1, ALPHA).unwrap();
    assert!(solve_spectrum(0, basis, ALPHA).is_err());
}

#[test]
fn csv_dump_has_header_and_rows() {
    let sp = spectrum(5, -1, BasisConfig { n_splines: 20, ..BasisConfig::default() });
    let mut out = Vec::new();
    sp.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,energy,norm_check");
    assert_eq!(lines.len(), sp.len() + 1);
    assert!(lines[1].starts_with("0,"));
}
