#![allow(clippy::excessive_precision)]

use recoil::basis::{BasisConfig, Orbital};
use recoil::recoil_one::*;
use recoil::Error;

const ALPHA: f64 = 1.0 / 137.0359895;

fn spectra(z: u32, orb: Orbital) -> RecoilSpectra<f64> {
    RecoilSpectra::build(z, orb, &BasisConfig::default(), ALPHA).unwrap()
}

#[test]
fn lowest_order_total_is_binding_identity() {
    // (1 - e^2)/2 at 40 digits
    let oracle = [
        (1u32, Orbital::S1, 0.000026625680984500857764),
        (1, Orbital::S2, 6.6565088643457366678e-6),
        (1, Orbital::P2_HALF, 6.6565088643457366678e-6),
        (20, Orbital::S1, 0.010650272393800343106),
        (20, Orbital::S2, 0.0026768996822679381529),
        (92, Orbital::S1, 0.22535976385281526012),
        (92, Orbital::P2_HALF, 0.06471635388303129443),
    ];
    for (z, orb, exact) in oracle {
        let lo = lowest_order(z, orb, ALPHA).unwrap();
        assert!(((lo.coulomb + lo.transverse - exact) / exact).abs() <= 1e-12, "Z={z} {orb}");
        assert_eq!(lo.total, lo.coulomb + lo.transverse);
    }
}

#[test]
fn lowest_order_nonrelativistic_limit() {
    // Z -> 0: Coulomb -> (Z alpha)^2 / 2n^2, transverse suppressed by (Z alpha)^2
    let lo = lowest_order(1, Orbital::S2, ALPHA).unwrap();
    let nr = ALPHA * ALPHA / 8.0;
    assert!((lo.coulomb - nr).abs() < 1e-4 * nr);
    assert!(lo.transverse.abs() < 1e-4 * nr);
}

#[test]
fn salpeter_columns() {
    for (orb, z, expect) in [
        (Orbital::S1, 1u32, 5.4461),
        (Orbital::S1, 30, 3.1786),
        (Orbital::S1, 92, 2.4315),
        (Orbital::S2, 1, 6.1710),
        (Orbital::S2, 92, 3.1565),
        (Orbital::P2_HALF, 1, -0.3088),
        (Orbital::P2_HALF, 92, -0.3088),
    ] {
        let p = salpeter_p(orb, z, ALPHA).unwrap();
        assert!((p - expect).abs() < 6e-5, "{orb} Z={z}: {p}");
    }
    assert!(salpeter_p(Orbital::new(2, -2).unwrap(), 1, ALPHA).is_err());
}

#[test]
fn level_classification() {
    let sp = spectra(30, Orbital::S2);
    let ints = sp.intermediates().unwrap();
    let degenerate: Vec<_> = ints.iter().filter(|n| n.kind == Level::Degenerate).collect();
    assert_eq!(degenerate.len(), 1);
    assert_eq!(degenerate[0].state.channel().kappa, 1);
    assert!((degenerate[0].energy() - sp.reference().energy()).abs() < 1e-10);
    // the spurious kappa = +1 root near 1s is the only coupled level below 2s
    let open: Vec<_> = ints.iter().filter(|n| n.kind == Level::Open).collect();
    assert_eq!(open.len(), 1);
    assert!(open.iter().all(|n| n.energy().abs() < sp.reference().energy()));

    let ground = spectra(30, Orbital::S1);
    let ints = ground.intermediates().unwrap();
    assert!(ints.iter().all(|n| n.kind == Level::Closed || n.kind == Level::Open));
    assert!(!ints.iter().any(|n| n.kind == Level::Degenerate));
}

#[test]
fn missing_channel_is_rejected() {
    let cfg = BasisConfig::<f64>::default();
    let basis = cfg.build(10, 1, ALPHA).unwrap();
    let only = vec![recoil::basis::solve_spectrum(-1, basis, ALPHA).unwrap()];
    assert!(matches!(RecoilSpectra::from_spectra(Orbital::S1, only), Err(Error::InvalidArgument { .. })));
}

#[test]
fn transverse_representations_agree() {
    for (z, orb) in [(10u32, Orbital::S1), (92, Orbital::S1), (92, Orbital::S2), (92, Orbital::P2_HALF)] {
        let sums = spectral_sums(&spectra(z, orb), &YQuadrature::default()).unwrap();
        let t = sums.transverse_one;
        assert!(((t.dual - t.value.re) / t.value.re).abs() <= 1e-6, "Z={z} {orb}: {} vs {}", t.dual, t.value.re);
        assert!(sums.hermiticity_residue < 1e-10, "Z={z} {orb}: {}", sums.hermiticity_residue);
    }
}

#[test]
fn coulomb_representations_converge_together() {
    // the two forms differ by the completeness deficit of the finite basis
    let gap = |n: usize| {
        let cfg = BasisConfig { n_splines: n, ..BasisConfig::default() };
        let sp = RecoilSpectra::build(92, Orbital::S1, &cfg, ALPHA).unwrap();
        let c = coulomb_second(&sp).unwrap();
        assert!(((c.p_squared - c.spectral_p_squared) + (c.dual - c.value)).abs() < 1e-12 * c.p_squared);
        ((c.dual - c.value) / c.value).abs()
    };
    let (coarse, fine) = (gap(65), gap(80));
    assert!(fine < coarse, "{fine} vs {coarse}");
    assert!(coarse < 1e-2);
}

#[test]
fn ground_state_has_no_width() {
    let sums = spectral_sums(&spectra(50, Orbital::S1), &YQuadrature::default()).unwrap();
    assert_eq!(sums.transverse_one.value.im, 0.0);
    assert_eq!(sums.transverse_two.value.im, 0.0);
    assert_eq!(sums.transverse_two.degenerate_part, 0.0);
}

#[test]
fn y_grid_refinement_is_stable() {
    let sp = spectra(5, Orbital::P2_HALF);
    let q = YQuadrature::default();
    let a = spectral_sums(&sp, &q).unwrap();
    let b = spectral_sums(&sp, &q.refined()).unwrap();
    let scale = a.transverse_two.value.re.abs();
    assert!((a.transverse_two.value.re - b.transverse_two.value.re).abs() < 1e-10 * scale);
    assert!((a.transverse_one.dual - b.transverse_one.dual).abs() < 1e-10 * a.transverse_one.dual.abs());
}

#[test]
fn p_function_components_and_band() {
    let cfg = RecoilConfig::<f64>::default();
    let r = p_function(10, Orbital::S1, &cfg).unwrap();
    let p = r.p;
    assert!((p.total - (p.coulomb + p.transverse_one + p.transverse_two)).abs() < 1e-14);
    let scale = p_scale(10, 1, ALPHA);
    assert!((r.second_order().re * scale - p.total).abs() < 1e-12 * p.total.abs());
    assert!(r.band.total > 0.0 && r.band.total < 1e-3, "band {}", r.band.total);

    let bare = p_function(10, Orbital::S1, &cfg.with_splines(65)).unwrap();
    assert!(bare.band.total == 0.0 && bare.p.total == p.total);
}

#[test]
fn single_state_timing_budget() {
    let t = std::time::Instant::now();
    p_function(92, Orbital::S2, &RecoilConfig::<f64>::default()).unwrap();
    assert!(t.elapsed().as_secs() < 60);
}
