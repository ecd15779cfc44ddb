//! Run configuration: built-in defaults, then a flat `key = value` file, then
//! command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use recoil::analysis::{EnergyUnit, PhysicalConstants};
use recoil::basis::{BasisConfig, Orbital};
use recoil::recoil_one::{RecoilConfig, YQuadrature};

use crate::CliError;

/// The only environment variable the tool reads.
pub const OUTPUT_DIR_VAR: &str = "RECOIL_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Settings as given, before defaults are filled in. Flags and the config
/// file both produce one of these; flags win on merge.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub z: Option<Vec<u32>>,
    pub state: Option<Orbital>,
    pub splines: Option<usize>,
    pub order: Option<usize>,
    pub quadrature: Option<usize>,
    pub box_radius: Option<f64>,
    pub sweep: Option<Vec<usize>>,
    pub y_panel: Option<f64>,
    pub y_order: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub unit: Option<EnergyUnit>,
    pub mass_number: Option<u32>,
    pub alpha_inverse: Option<f64>,
    pub electron_rest_energy_ev: Option<f64>,
    pub ev_to_khz: Option<f64>,
    pub amu_ev: Option<f64>,
    /// `(Z, A) -> atomic mass in u`.
    pub atomic_masses: BTreeMap<(u32, u32), f64>,
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| invalid(format!("config: cannot parse '{value}' for '{key}'")))
}

pub fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse(key, s)).collect()
}

pub fn parse_format(value: &str) -> Result<Format, CliError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(invalid(format!("unknown output format '{other}'"))),
    }
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("config: cannot read {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {}: expected key = value", lineno + 1)))?;
            s.set(&key.trim().to_ascii_lowercase().replace('_', "-"), value.trim())?;
        }
        Ok(s)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "z" => self.z = Some(parse_list(key, value)?),
            "state" => self.state = Some(value.parse().map_err(|e: recoil::Error| invalid(e.to_string()))?),
            "splines" => self.splines = Some(parse(key, value)?),
            "order" => self.order = Some(parse(key, value)?),
            "quadrature" => self.quadrature = Some(parse(key, value)?),
            "box-radius" => self.box_radius = Some(parse(key, value)?),
            "sweep" => self.sweep = Some(parse_list(key, value)?),
            "y-panel" => self.y_panel = Some(parse(key, value)?),
            "y-order" => self.y_order = Some(parse(key, value)?),
            "format" => self.format = Some(parse_format(value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "unit" => self.unit = Some(value.parse().map_err(|e: recoil::Error| invalid(e.to_string()))?),
            "mass-number" => self.mass_number = Some(parse(key, value)?),
            "alpha-inverse" => self.alpha_inverse = Some(parse(key, value)?),
            "electron-rest-energy-ev" => self.electron_rest_energy_ev = Some(parse(key, value)?),
            "ev-to-khz" => self.ev_to_khz = Some(parse(key, value)?),
            "amu-ev" => self.amu_ev = Some(parse(key, value)?),
            _ => {
                // atomic-mass.Z.A = mass in u
                let nuclide = key
                    .strip_prefix("atomic-mass.")
                    .and_then(|rest| rest.split_once('.'))
                    .ok_or_else(|| invalid(format!("config: unknown key '{key}'")))?;
                let z = parse(key, nuclide.0)?;
                let a = parse(key, nuclide.1)?;
                self.atomic_masses.insert((z, a), parse(key, value)?);
            }
        }
        Ok(())
    }

    /// `self` with every unset field taken from `base`.
    pub fn over(self, base: Settings) -> Settings {
        let mut atomic_masses = base.atomic_masses;
        atomic_masses.extend(self.atomic_masses);
        Settings {
            z: self.z.or(base.z),
            state: self.state.or(base.state),
            splines: self.splines.or(base.splines),
            order: self.order.or(base.order),
            quadrature: self.quadrature.or(base.quadrature),
            box_radius: self.box_radius.or(base.box_radius),
            sweep: self.sweep.or(base.sweep),
            y_panel: self.y_panel.or(base.y_panel),
            y_order: self.y_order.or(base.y_order),
            format: self.format.or(base.format),
            output: self.output.or(base.output),
            unit: self.unit.or(base.unit),
            mass_number: self.mass_number.or(base.mass_number),
            alpha_inverse: self.alpha_inverse.or(base.alpha_inverse),
            electron_rest_energy_ev: self.electron_rest_energy_ev.or(base.electron_rest_energy_ev),
            ev_to_khz: self.ev_to_khz.or(base.ev_to_khz),
            amu_ev: self.amu_ev.or(base.amu_ev),
            atomic_masses,
        }
    }
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub z: Option<Vec<u32>>,
    pub state: Option<Orbital>,
    /// True when the spline count was given explicitly.
    pub splines_given: bool,
    pub sweep_given: bool,
    pub recoil: RecoilConfig<f64>,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// `None` leaves the choice to the command.
    pub unit: Option<EnergyUnit>,
    pub mass_number: Option<u32>,
    pub constants: PhysicalConstants<f64>,
}

impl RunConfig {
    pub fn resolve(s: Settings) -> Result<Self, CliError> {
        let mut constants = PhysicalConstants::<f64>::default();
        if let Some(v) = s.alpha_inverse {
            constants.alpha_inverse = v;
        }
        if let Some(v) = s.electron_rest_energy_ev {
            constants.electron_rest_energy_ev = v;
        }
        if let Some(v) = s.ev_to_khz {
            constants.ev_to_khz = v;
        }
        if let Some(v) = s.amu_ev {
            constants.atomic_mass_unit_ev = v;
        }
        constants.atomic_masses.extend(s.atomic_masses);
        constants.validate().map_err(|e| invalid(e.to_string()))?;

        let mut recoil = RecoilConfig::<f64> { alpha: constants.alpha(), ..RecoilConfig::default() };
        let defaults = BasisConfig::<f64>::default();
        recoil.basis = BasisConfig {
            n_splines: s.splines.unwrap_or(defaults.n_splines),
            order: s.order.unwrap_or(defaults.order),
            quadrature_order: s.quadrature.unwrap_or(defaults.quadrature_order),
            box_radius: s.box_radius,
        };
        let sweep_given = s.sweep.is_some();
        if let Some(sweep) = s.sweep {
            recoil.sweep = sweep;
        }
        let y = YQuadrature::<f64>::default();
        recoil.y = YQuadrature { panel_width: s.y_panel.unwrap_or(y.panel_width), order: s.y_order.unwrap_or(y.order), ..y };

        if recoil.basis.order < 2 || recoil.basis.quadrature_order == 0 {
            return Err(invalid("spline order must be at least 2 and the quadrature order positive"));
        }
        if s.box_radius.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
            return Err(invalid("box radius must be positive"));
        }
        if !(recoil.y.panel_width > 0.0) || recoil.y.order == 0 {
            return Err(invalid("y quadrature needs a positive panel width and order"));
        }
        if let Some(z) = &s.z {
            if z.is_empty() || z.contains(&0) {
                return Err(invalid("nuclear charges must be positive"));
            }
        }

        Ok(RunConfig {
            z: s.z,
            state: s.state,
            splines_given: s.splines.is_some(),
            sweep_given,
            recoil,
            format: s.format.unwrap_or(Format::Csv),
            output: s.output,
            unit: s.unit,
            mass_number: s.mass_number,
            constants,
        })
    }

    /// Where the report goes: `None` means stdout.
    pub fn output_path(&self, command: &str, env_dir: Option<PathBuf>) -> Option<PathBuf> {
        match (&self.output, env_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(format!("{command}.{}", self.format.extension()))),
            (None, None) => None,
        }
    }

    /// Key/value echo of everything that affects the numbers.
    pub fn echo(&self) -> BTreeMap<&'static str, String> {
        let b = &self.recoil.basis;
        let mut m = BTreeMap::new();
        if let Some(z) = &self.z {
            m.insert("z", z.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        }
        if let Some(s) = self.state {
            m.insert("state", s.to_string());
        }
        m.insert("splines", b.n_splines.to_string());
        m.insert("order", b.order.to_string());
        m.insert("quadrature", b.quadrature_order.to_string());
        m.insert("box_radius", b.box_radius.map_or("auto".into(), |r| r.to_string()));
        m.insert("sweep", self.recoil.sweep.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
        m.insert("y_panel", self.recoil.y.panel_width.to_string());
        m.insert("y_order", self.recoil.y.order.to_string());
        if let Some(u) = self.unit {
            m.insert("unit", unit_name(u).into());
        }
        if let Some(a) = self.mass_number {
            m.insert("mass_number", a.to_string());
        }
        let k = &self.constants;
        m.insert("alpha_inverse", k.alpha_inverse.to_string());
        m.insert("electron_rest_energy_ev", k.electron_rest_energy_ev.to_string());
        m.insert("ev_to_khz", k.ev_to_khz.to_string());
        m.insert("amu_ev", k.atomic_mass_unit_ev.to_string());
        m
    }
}

pub fn unit_name(unit: EnergyUnit) -> &'static str {
    match unit {
        EnergyUnit::Natural => "natural",
        EnergyUnit::Ev => "eV",
        EnergyUnit::Khz => "kHz",
    }
}
