use rayon::prelude::*;

use crate::basis::Orbital;
use crate::error::{Error, Result};
use crate::linalg::LinalgFailure;
use crate::recoil_one::{p_function, RecoilConfig};
use crate::scalar::Real;

/// Low-`Z` expansion shapes for the components of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// `P_c` in `{1, x, x^2 ln x, x^2}`; `P_tr1`, `P_tr2` in
    /// `{ln x, 1, x ln x, x, x^2 ln x, x^2, x^3}`, with `x = alpha Z`.
    SState,
    /// `P_tr1`, `P_tr2` in `{1, x, x^2 ln x, x^2, x^3 ln x, x^3, x^4}`;
    /// `P_c` is not fitted.
    PHalf,
}

impl FitModel {
    pub fn for_orbital(orbital: Orbital) -> Result<Self> {
        match orbital.channel().l {
            0 => Ok(FitModel::SState),
            1 if orbital.kappa == 1 => Ok(FitModel::PHalf),
            _ => Err(Error::invalid("analysis", format!("no expansion model for {orbital}"))),
        }
    }

    fn coulomb_basis<T: Real>(self, x: T) -> Vec<T> {
        let l = x.ln();
        match self {
            FitModel::SState => vec![T::one(), x, x * x * l, x * x],
            FitModel::PHalf => Vec::new(),
        }
    }

    fn transverse_basis<T: Real>(self, x: T) -> Vec<T> {
        let l = x.ln();
        let (x2, x3) = (x * x, x * x * x);
        match self {
            FitModel::SState => vec![l, T::one(), x * l, x, x2 * l, x2, x3],
            FitModel::PHalf => vec![T::one(), x, x2 * l, x2, x3 * l, x3, x3 * x],
        }
    }
}

/// One row of fit input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PSample<T> {
    pub z: u32,
    pub coulomb: T,
    pub transverse_one: T,
    pub transverse_two: T,
}

/// Least-squares expansion coefficients (`a`, `b`, `c` in the order of the
/// model's basis functions).
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<T> {
    pub model: FitModel,
    pub coulomb: Vec<T>,
    pub transverse_one: Vec<T>,
    pub transverse_two: Vec<T>,
    pub residual_norm: T,
    pub data_norm: T,
    pub z: Vec<u32>,
}

impl<T: Real> FitResult<T> {
    /// `b_2 + c_2` plus the `(alpha Z)^6` term of the lowest-order recoil
    /// energy, all in units of `(m^2/M)(alpha Z)^6 / (pi n^3)`.
    pub fn combined_order_six(&self) -> Option<T> {
        match self.model {
            FitModel::PHalf => Some(self.transverse_one[1] + self.transverse_two[1] + T::PI() / T::lit(8.0)),
            FitModel::SState => None,
        }
    }
}

fn solve<T: Real>(rows: &[Vec<T>], rhs: &[T]) -> Result<(Vec<T>, T)> {
    let cols = rows[0].len();
    let flat: Vec<T> = rows.iter().flatten().copied().collect();
    let coef = T::least_squares(rows.len(), cols, &flat, rhs).map_err(|e| match e {
        LinalgFailure::RankDeficient => Error::numerical("analysis", "rank-deficient fit design matrix"),
        other => Error::numerical("analysis", format!("least squares failed: {other:?}")),
    })?;
    let res: T = rows
        .iter()
        .zip(rhs)
        .map(|(row, &y)| {
            let fit: T = row.iter().zip(&coef).map(|(&a, &c)| a * c).sum();
            (fit - y) * (fit - y)
        })
        .sum();
    Ok((coef, res))
}

pub fn fit_p_expansion<T: Real>(samples: &[PSample<T>], model: FitModel, alpha: T) -> Result<FitResult<T>> {
    let mut sorted = samples.to_vec();
    sorted.sort_by_key(|s| s.z);
    sorted.dedup_by_key(|s| s.z);
    let needed = model.transverse_basis(T::one()).len();
    if sorted.len() < needed {
        return Err(Error::invalid(
            "analysis",
            format!("{} distinct samples for {needed} coefficients", sorted.len()),
        ));
    }
    if sorted.iter().any(|s| s.z == 0) {
        return Err(Error::invalid("analysis", "Z = 0 sample"));
    }
    let xs: Vec<T> = sorted.iter().map(|s| alpha * T::int(s.z as i64)).collect();
    let tr_rows: Vec<Vec<T>> = xs.iter().map(|&x| model.transverse_basis(x)).collect();
    let t1: Vec<T> = sorted.iter().map(|s| s.transverse_one).collect();
    let t2: Vec<T> = sorted.iter().map(|s| s.transverse_two).collect();
    let (transverse_one, r1) = solve(&tr_rows, &t1)?;
    let (transverse_two, r2) = solve(&tr_rows, &t2)?;
    let mut residual = r1 + r2;
    let mut data: T = t1.iter().chain(&t2).map(|&v| v * v).sum();
    let coulomb = match model {
        FitModel::SState => {
            let rows: Vec<Vec<T>> = xs.iter().map(|&x| model.coulomb_basis(x)).collect();
            let c: Vec<T> = sorted.iter().map(|s| s.coulomb).collect();
            let (coef, rc) = solve(&rows, &c)?;
            residual += rc;
            data += c.iter().map(|&v| v * v).sum::<T>();
            coef
        }
        FitModel::PHalf => Vec::new(),
    };
    Ok(FitResult {
        model,
        coulomb,
        transverse_one,
        transverse_two,
        residual_norm: residual.sqrt(),
        data_norm: data.sqrt(),
        z: sorted.iter().map(|s| s.z).collect(),
    })
}

/// Nuclear charges used for the low-`Z` fits.
pub const FIT_CHARGES: [u32; 7] = [1, 2, 3, 5, 8, 15, 30];

/// Spline count for fit samples. The negative-energy part of `P` at `Z <= 2`
/// jitters by ~1e-5 between nearby basis sizes, which the seven-point fit
/// amplifies into the `(alpha Z)^2` coefficients; from 90 splines up the
/// jitter drops below the fit tolerance.
pub const FIT_SPLINES: usize = 120;

/// Computes `P` components for each charge (no sweep band).
pub fn p_samples<T: Real>(orbital: Orbital, charges: &[u32], config: &RecoilConfig<T>) -> Result<Vec<PSample<T>>> {
    let cfg = RecoilConfig { sweep: Vec::new(), ..config.clone() };
    charges
        .par_iter()
        .map(|&z| {
            let r = p_function(z, orbital, &cfg)?;
            Ok(PSample { z, coulomb: r.p.coulomb, transverse_one: r.p.transverse_one, transverse_two: r.p.transverse_two })
        })
        .collect()
}
