use std::fmt;
use std::str::FromStr;

use crate::angular::KappaChannel;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bound level `(n, kappa)` of the point-nucleus Coulomb-Dirac problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbital {
    pub n: u32,
    pub kappa: i32,
}

impl Orbital {
    pub const S1: Orbital = Orbital { n: 1, kappa: -1 };
    pub const S2: Orbital = Orbital { n: 2, kappa: -1 };
    pub const P2_HALF: Orbital = Orbital { n: 2, kappa: 1 };

    pub fn new(n: u32, kappa: i32) -> Result<Self> {
        if kappa == 0 || n == 0 || kappa.unsigned_abs() > n || (kappa > 0 && kappa as u32 == n) {
            return Err(Error::invalid("basis", format!("no bound level with n={n}, kappa={kappa}")));
        }
        Ok(Self { n, kappa })
    }

    pub fn channel(&self) -> KappaChannel {
        KappaChannel::new(self.kappa).expect("validated kappa")
    }

    pub fn radial_quantum_number(&self) -> u32 {
        self.n - self.kappa.unsigned_abs()
    }

    /// Levels sharing `(n, |kappa|)` are exactly degenerate for a point nucleus.
    pub fn degenerate_with(&self, other: &Orbital) -> bool {
        self.n == other.n && self.kappa.abs() == other.kappa.abs()
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ch = self.channel();
        const LETTERS: [char; 8] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k'];
        let letter = LETTERS.get(ch.l as usize).copied().unwrap_or('?');
        if ch.l == 0 {
            write!(f, "{}{}", self.n, letter)
        } else {
            write!(f, "{}{}{}/2", self.n, letter, ch.two_j)
        }
    }
}

impl FromStr for Orbital {
    type Err = Error;

    /// Accepts `1s`, `2s`, `2p1/2`, `2p_1/2`, `2p3/2`, `3d5/2`, ...
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("basis", format!("cannot parse state '{s}'"));
        let t = s.trim().to_ascii_lowercase().replace('_', "");
        let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
        let n: u32 = digits.parse().map_err(|_| bad())?;
        let rest = &t[digits.len()..];
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let l = "spdfghik".find(letter).ok_or_else(bad)? as i32;
        let tail: String = chars.collect();
        let two_j = if tail.is_empty() {
            if l != 0 {
                return Err(bad());
            }
            1
        } else {
            let num = tail.strip_suffix("/2").ok_or_else(bad)?;
            num.parse::<i32>().map_err(|_| bad())?
        };
        let ch = KappaChannel::from_l_j(l, two_j).map_err(|_| bad())?;
        Orbital::new(n, ch.kappa)
    }
}

/// Closed-form Coulomb-Dirac level and its auxiliary quantities (`m = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticState<T> {
    pub orbital: Orbital,
    pub n_r: u32,
    pub gamma: T,
    /// `N = sqrt(n^2 - 2 n_r (|kappa| - gamma))`.
    pub big_n: T,
    pub energy: T,
}

impl<T: Real> AnalyticState<T> {
    pub fn new(z: u32, orbital: Orbital, alpha: T) -> Result<Self> {
        let az = alpha * T::int(z as i64);
        let k = T::int(orbital.kappa.abs() as i64);
        if !(az < k) {
            return Err(Error::domain(
                "basis",
                format!("alpha Z = {az} is not below |kappa| = {}", orbital.kappa.abs()),
            ));
        }
        let gamma = (k * k - az * az).sqrt();
        let n_r = orbital.radial_quantum_number();
        let nr = T::int(n_r as i64);
        let nn = T::int(orbital.n as i64);
        let big_n = (nn * nn - T::lit(2.0) * nr * (k - gamma)).sqrt();
        Ok(Self { orbital, n_r, gamma, big_n, energy: (gamma + nr) / big_n })
    }
}

/// `epsilon = (gamma + n_r) / N` in units of the electron mass.
pub fn analytic_energy<T: Real>(z: u32, n: u32, kappa: i32, alpha: T) -> Result<T> {
    Ok(AnalyticState::new(z, Orbital::new(n, kappa)?, alpha)?.energy)
}
