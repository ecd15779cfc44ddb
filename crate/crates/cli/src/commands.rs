use rayon::prelude::*;

use recoil::analysis::{
    convert_energy, fit_p_expansion, lamb_shift_recoil_delta, p_samples, EnergyUnit, FitModel, FitResult,
    FIT_CHARGES, FIT_SPLINES,
};
use recoil::basis::{default_box_radius, solve_spectrum, Orbital};
use recoil::recoil_one::{p_function, p_scale, salpeter_p, RecoilBreakdownOne};
use recoil::recoil_two::{q_function, q_leading, q_unit, uranium_transition, RecoilBreakdownTwo};

use crate::config::{unit_name, RunConfig};
use crate::output::{Cell, Report};
use crate::CliError;

/// Default rows of `table 1` to `table 3`; `table 4` starts at Z = 5.
pub const TABLE_CHARGES: [u32; 22] = [1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80, 85, 90, 92, 95, 100];

pub const CONVERGENCE_SWEEP: [usize; 6] = [40, 50, 60, 70, 80, 90];

fn require_state(cfg: &RunConfig) -> Result<Orbital, CliError> {
    cfg.state.ok_or_else(|| CliError::Usage("--state is required".into()))
}

fn charges(cfg: &RunConfig) -> Result<Vec<u32>, CliError> {
    cfg.z.clone().ok_or_else(|| CliError::Usage("--z is required".into()))
}

fn single_charge(cfg: &RunConfig) -> Result<u32, CliError> {
    match charges(cfg)?.as_slice() {
        [z] => Ok(*z),
        _ => Err(CliError::Usage("this command takes a single --z".into())),
    }
}

/// Mass number for `z`: the flag, or the only tabulated nuclide with that charge.
fn mass_number(cfg: &RunConfig, z: u32) -> Result<u32, CliError> {
    if let Some(a) = cfg.mass_number {
        return Ok(a);
    }
    let known: Vec<u32> = cfg.constants.atomic_masses.keys().filter(|k| k.0 == z).map(|k| k.1).collect();
    match known.as_slice() {
        [a] => Ok(*a),
        _ => Err(CliError::Usage(format!(
            "no unique nuclide for Z={z}; pass --mass-number and add atomic-mass.{z}.A to the config"
        ))),
    }
}

/// Converts an energy in units of `m^2/M` for the requested unit.
struct RecoilUnit {
    unit: Option<EnergyUnit>,
    factor: f64,
}

impl RecoilUnit {
    fn new(cfg: &RunConfig, z: u32) -> Result<Self, CliError> {
        match cfg.unit {
            None | Some(EnergyUnit::Natural) => Ok(RecoilUnit { unit: None, factor: 1.0 }),
            Some(unit) => {
                let a = mass_number(cfg, z)?;
                let ev = cfg.constants.recoil_ev(1.0, z, a)?;
                Ok(RecoilUnit { unit: Some(unit), factor: convert_energy(ev, EnergyUnit::Ev, unit, &cfg.constants) })
            }
        }
    }

    fn label(&self) -> &'static str {
        self.unit.map_or("m^2/M", unit_name)
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let z = single_charge(cfg)?;
    let state = require_state(cfg)?;
    let alpha = cfg.recoil.alpha;
    let basis = cfg.recoil.basis.build(z, state.n, alpha)?;
    let sp = solve_spectrum(state.kappa, basis, alpha)?;
    let bound = sp.find_bound_state(state).ok();
    let unit = cfg.unit.unwrap_or(EnergyUnit::Natural);
    let mut r = Report::new("spectrum", vec!["index", "energy", "norm_check", "label"]);
    for (i, &e) in sp.energies().iter().enumerate() {
        let label = if Some(i) == bound { state.to_string() } else { String::new() };
        r.push(vec![
            Cell::Int(i as i64),
            Cell::exact(convert_energy(e, EnergyUnit::Natural, unit, &cfg.constants)),
            Cell::Real(sp.norm_check(i)),
            Cell::Text(label),
        ]);
    }
    Ok(r)
}

fn per_charge<R: Send>(
    zs: &[u32],
    f: impl Fn(u32) -> recoil::Result<R> + Sync,
) -> Result<Vec<(u32, R)>, CliError> {
    let out: Vec<recoil::Result<R>> = zs.par_iter().map(|&z| f(z)).collect();
    zs.iter().copied().zip(out).map(|(z, r)| Ok((z, r?))).collect()
}

pub fn one(cfg: &RunConfig) -> Result<Report, CliError> {
    let state = require_state(cfg)?;
    let zs = charges(cfg)?;
    let units: Vec<RecoilUnit> = zs.iter().map(|&z| RecoilUnit::new(cfg, z)).collect::<Result<_, _>>()?;
    let results = per_charge(&zs, |z| p_function(z, state, &cfg.recoil))?;
    let mut r = Report::new("one", vec!["z", "state", "quantity", "value", "unit"]);
    for ((z, b), u) in results.iter().zip(&units) {
        push_one(&mut r, *z, state, b, u, cfg)?;
    }
    Ok(r)
}

fn push_one(
    r: &mut Report,
    z: u32,
    state: Orbital,
    b: &RecoilBreakdownOne<f64>,
    u: &RecoilUnit,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    let alpha = cfg.recoil.alpha;
    let scale = p_scale(z, state.n, alpha);
    let mut row = |q: &str, cell: Cell, unit: &str| {
        r.push(vec![Cell::Int(z as i64), Cell::Text(state.to_string()), Cell::Text(q.into()), cell, Cell::Text(unit.into())]);
    };
    row("P_c", Cell::num(b.p.coulomb, b.band.coulomb), "1");
    row("P_tr1", Cell::num(b.p.transverse_one, b.band.transverse_one), "1");
    row("P_tr2", Cell::num(b.p.transverse_two, b.band.transverse_two), "1");
    row("P", Cell::num(b.p.total, b.band.total), "1");
    if let Ok(ps) = salpeter_p(state, z, alpha) {
        row("P_S", Cell::exact(ps), "1");
    }
    let e = |v: f64, band: f64| Cell::num(v * u.factor, band * u.factor);
    row("dE1", e(b.lowest.total, 0.0), u.label());
    row("dE2_c", e(b.coulomb.re, b.band.coulomb / scale), u.label());
    row("dE2_tr1", e(b.transverse_one.re, b.band.transverse_one / scale), u.label());
    row("dE2_tr2", e(b.transverse_two.re, b.band.transverse_two / scale), u.label());
    row("dE2", e(b.second_order().re, b.band.total / scale), u.label());
    row("width_tr1", e(b.transverse_one.im, 0.0), u.label());
    row("width_tr2", e(b.transverse_two.im, 0.0), u.label());
    Ok(())
}

pub fn two(cfg: &RunConfig) -> Result<Report, CliError> {
    let state = require_state(cfg)?;
    let zs = charges(cfg)?;
    let units: Vec<RecoilUnit> = zs.iter().map(|&z| RecoilUnit::new(cfg, z)).collect::<Result<_, _>>()?;
    let results = per_charge(&zs, |z| q_function(z, state, &cfg.recoil))?;
    let mut r = Report::new("two", vec!["z", "state", "quantity", "value", "unit"]);
    for ((z, b), u) in results.iter().zip(&units) {
        push_two(&mut r, *z, b, u, cfg);
    }
    Ok(r)
}

fn push_two(r: &mut Report, z: u32, b: &RecoilBreakdownTwo<f64>, u: &RecoilUnit, cfg: &RunConfig) {
    let unit = q_unit(z, cfg.recoil.alpha);
    let mut row = |q: &str, cell: Cell, label: &str| {
        r.push(vec![Cell::Int(z as i64), Cell::Text(b.valence.to_string()), Cell::Text(q.into()), cell, Cell::Text(label.into())]);
    };
    row("Q_c", Cell::num(b.q.coulomb, b.band.coulomb), "1");
    row("Q_tr1", Cell::num(b.q.transverse_one, b.band.transverse_one), "1");
    row("Q_tr2", Cell::num(b.q.transverse_two, b.band.transverse_two), "1");
    row("Q", Cell::num(b.q.total, b.band.total), "1");
    row("Q_L", Cell::exact(b.q_leading.total), "1");
    let total = b.total();
    row("dE_int", Cell::num(total.re * u.factor, (b.band.total * unit * u.factor).abs()), u.label());
    row("width_int", Cell::exact(total.im * u.factor), u.label());
}

pub fn table(which: u8, cfg: &RunConfig) -> Result<Report, CliError> {
    let zs = match &cfg.z {
        Some(z) => z.clone(),
        None if which == 4 => TABLE_CHARGES[1..].to_vec(),
        None => TABLE_CHARGES.to_vec(),
    };
    let alpha = cfg.recoil.alpha;
    if which == 4 {
        let rows = per_charge(&zs, |z| q_function(z, Orbital::P2_HALF, &cfg.recoil))?;
        let mut r = Report::new("table4", vec!["Z", "Q_c", "Q_tr1", "Q_tr2", "Q", "Q_L"]);
        for (z, b) in rows {
            r.push(vec![
                Cell::Int(z as i64),
                Cell::num(b.q.coulomb, b.band.coulomb),
                Cell::num(b.q.transverse_one, b.band.transverse_one),
                Cell::num(b.q.transverse_two, b.band.transverse_two),
                Cell::num(b.q.total, b.band.total),
                Cell::exact(q_leading(z, alpha).total),
            ]);
        }
        return Ok(r);
    }
    let state = match which {
        1 => Orbital::S1,
        2 => Orbital::S2,
        3 => Orbital::P2_HALF,
        _ => return Err(CliError::Usage(format!("no table {which}; choose 1 to 4"))),
    };
    let rows = per_charge(&zs, |z| Ok((p_function(z, state, &cfg.recoil)?, salpeter_p(state, z, alpha)?)))?;
    let mut r = Report::new(format!("table{which}"), vec!["Z", "P_c", "P_tr1", "P_tr2", "P", "P_S"]);
    for (z, (b, ps)) in rows {
        r.push(vec![
            Cell::Int(z as i64),
            Cell::num(b.p.coulomb, b.band.coulomb),
            Cell::num(b.p.transverse_one, b.band.transverse_one),
            Cell::num(b.p.transverse_two, b.band.transverse_two),
            Cell::num(b.p.total, b.band.total),
            Cell::exact(ps),
        ]);
    }
    Ok(r)
}

fn term_names(model: FitModel) -> (&'static [&'static str], &'static [&'static str]) {
    match model {
        FitModel::SState => (
            &["1", "x", "x^2 ln x", "x^2"],
            &["ln x", "1", "x ln x", "x", "x^2 ln x", "x^2", "x^3"],
        ),
        FitModel::PHalf => (&[], &["1", "x", "x^2 ln x", "x^2", "x^3 ln x", "x^3", "x^4"]),
    }
}

/// Band: change of each coefficient when the samples come from 30 fewer splines.
pub fn fit(cfg: &RunConfig) -> Result<Report, CliError> {
    let state = require_state(cfg)?;
    let model = FitModel::for_orbital(state)?;
    let zs = cfg.z.clone().unwrap_or_else(|| FIT_CHARGES.to_vec());
    let splines = if cfg.splines_given { cfg.recoil.basis.n_splines } else { FIT_SPLINES };
    let coarse = splines.saturating_sub(30).max(cfg.recoil.basis.order + 2);
    let alpha = cfg.recoil.alpha;
    let run = |n: usize| -> recoil::Result<FitResult<f64>> {
        let samples = p_samples(state, &zs, &cfg.recoil.with_splines(n))?;
        fit_p_expansion(&samples, model, alpha)
    };
    let (fine, rough) = rayon::join(|| run(splines), || run(coarse));
    let (fine, rough) = (fine?, rough?);
    let (c_terms, t_terms) = term_names(model);
    let mut r = Report::new("fit", vec!["state", "coefficient", "term", "value"]);
    let mut row = |name: String, term: &str, cell: Cell| {
        r.push(vec![Cell::Text(state.to_string()), Cell::Text(name), Cell::Text(term.into()), cell]);
    };
    for (letter, terms, f, g) in [
        ("a", c_terms, &fine.coulomb, &rough.coulomb),
        ("b", t_terms, &fine.transverse_one, &rough.transverse_one),
        ("c", t_terms, &fine.transverse_two, &rough.transverse_two),
    ] {
        for (i, term) in terms.iter().enumerate() {
            row(format!("{letter}{}", i + 1), term, Cell::num(f[i], (f[i] - g[i]).abs()));
        }
    }
    if let (Some(a), Some(b)) = (fine.combined_order_six(), rough.combined_order_six()) {
        row("order_six".into(), "(alpha Z)^6", Cell::num(a, (a - b).abs()));
    }
    row("residual".into(), "relative", Cell::exact(fine.residual_norm / fine.data_norm));
    Ok(r)
}

pub fn lamb(cfg: &RunConfig) -> Result<Report, CliError> {
    let z = match &cfg.z {
        Some(_) => single_charge(cfg)?,
        None => 1,
    };
    let a = mass_number(cfg, z)?;
    let d = lamb_shift_recoil_delta(z, a, &cfg.constants, &cfg.recoil)?;
    let unit = cfg.unit.unwrap_or(EnergyUnit::Khz);
    let conv = |v: f64| convert_energy(v, EnergyUnit::Khz, unit, &cfg.constants);
    let mut r = Report::new("lamb", vec!["z", "a", "level", "value", "unit"]);
    for (level, v, b) in [("1s", d.ground_khz, d.ground_band_khz), ("2s-2p1/2", d.n2_khz, d.n2_band_khz)] {
        r.push(vec![
            Cell::Int(z as i64),
            Cell::Int(a as i64),
            Cell::Text(level.into()),
            Cell::num(conv(v), conv(b)),
            Cell::Text(unit_name(unit).into()),
        ]);
    }
    Ok(r)
}

pub fn uranium(cfg: &RunConfig) -> Result<Report, CliError> {
    let u = uranium_transition(&cfg.recoil, &cfg.constants)?;
    let unit = cfg.unit.unwrap_or(EnergyUnit::Ev);
    let conv = |v: f64| convert_energy(v, EnergyUnit::Ev, unit, &cfg.constants);
    let mut r = Report::new("uranium-transition", vec!["quantity", "value", "unit"]);
    let [b1s, b2s, b2p, bint] = u.component_bands;
    for (q, v, b) in [
        ("first_order_1s", u.first_1s, 0.0),
        ("first_order_n2", u.first_n2, 0.0),
        ("second_order_1s", u.second_1s, b1s),
        ("second_order_2s", u.second_2s, b2s),
        ("second_order_2p1/2", u.second_2p, b2p),
        ("interaction_2p1/2", u.interaction_2p, bint),
        ("transition_2p1/2-2s", u.transition, u.band),
    ] {
        r.push(vec![Cell::Text(q.into()), Cell::num(conv(v), conv(b)), Cell::Text(unit_name(unit).into())]);
    }
    Ok(r)
}

pub fn convergence(cfg: &RunConfig, box_scale: f64) -> Result<Report, CliError> {
    let z = single_charge(cfg)?;
    let state = require_state(cfg)?;
    if !(box_scale > 0.0 && box_scale.is_finite()) {
        return Err(CliError::Usage("--box-scale must be positive".into()));
    }
    let sweep = if cfg.sweep_given { cfg.recoil.sweep.clone() } else { CONVERGENCE_SWEEP.to_vec() };
    if sweep.is_empty() {
        return Err(CliError::Usage("the sweep needs at least one spline count".into()));
    }
    let largest = *sweep.iter().max().expect("non-empty sweep");
    let alpha = cfg.recoil.alpha;
    let radius = cfg.recoil.basis.box_radius.unwrap_or_else(|| default_box_radius(z, state.n, alpha));
    let wide = {
        let mut c = cfg.recoil.with_splines(largest);
        c.basis.box_radius = Some(radius * box_scale);
        c
    };
    let runs: Vec<recoil::Result<RecoilBreakdownOne<f64>>> =
        sweep.par_iter().map(|&n| p_function(z, state, &cfg.recoil.with_splines(n))).collect();
    let runs = runs.into_iter().collect::<recoil::Result<Vec<_>>>()?;
    let boxed = p_function(z, state, &wide)?;

    let parts = |b: &RecoilBreakdownOne<f64>| [b.p.coulomb, b.p.transverse_one, b.p.transverse_two, b.p.total];
    let spread: [f64; 4] = std::array::from_fn(|k| {
        let vals = runs.iter().map(|b| parts(b)[k]);
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    });

    let mut r = Report::new("convergence", vec!["label", "splines", "box_radius", "P_c", "P_tr1", "P_tr2", "P"]);
    let mut row = |label: &str, n: Cell, radius: f64, p: [f64; 4]| {
        let mut cells = vec![Cell::Text(label.into()), n, Cell::Real(radius)];
        cells.extend(p.iter().zip(spread).map(|(&v, s)| Cell::num(v, s)));
        r.push(cells);
    };
    for (n, b) in sweep.iter().zip(&runs) {
        row("sweep", Cell::Int(*n as i64), radius, parts(b));
    }
    row("box", Cell::Int(largest as i64), radius * box_scale, parts(&boxed));
    row("spread", Cell::Text(String::new()), radius, spread);

    if sweep.len() == 1 {
        r.warnings.push("single spline count in the sweep: the spread is zero and says nothing about convergence".into());
    }
    let last = parts(runs.iter().zip(&sweep).max_by_key(|(_, n)| **n).expect("non-empty").0)[3];
    let shift = (parts(&boxed)[3] - last).abs();
    if sweep.len() > 1 && shift > spread[3] {
        r.warnings.push(format!("scaling the box by {box_scale} moves P by {shift:.3e}, more than the spline spread"));
    }
    Ok(r)
}
