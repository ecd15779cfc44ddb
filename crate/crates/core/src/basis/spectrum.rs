use std::io::Write;
use std::sync::Arc;

use crate::angular::KappaChannel;
use crate::error::{Error, Result};
use crate::linalg::{LinalgFailure, SquareMatrix};
use crate::scalar::Real;

use super::analytic::{AnalyticState, Orbital};
use super::bspline::SplineBasis;

/// Tolerance for matching a basis eigenvalue to an analytic level, relative to
/// the binding energy `m - epsilon` of that level.
pub const LABEL_TOLERANCE: f64 = 1e-3;

/// Finite-basis eigen-decomposition of the radial Dirac Hamiltonian in one
/// `kappa` channel.
///
/// Radial functions are stored as `G = r g`, `F = r f` for
/// `psi = (g Omega_kappa, i f Omega_{-kappa})`, tabulated together with their
/// derivatives at the quadrature nodes of the shared [`SplineBasis`].
#[derive(Debug, Clone)]
pub struct DiracSpectrum<T> {
    channel: KappaChannel,
    z: u32,
    alpha: T,
    basis: Arc<SplineBasis<T>>,
    energies: Vec<T>,
    coefficients: Vec<Vec<T>>,
    large: Vec<Vec<T>>,
    small: Vec<Vec<T>>,
    large_derivative: Vec<Vec<T>>,
    small_derivative: Vec<Vec<T>>,
}

/// Solves `H c = epsilon B c` for the Coulomb potential `-alpha Z / r`.
pub fn solve_spectrum<T: Real>(kappa: i32, basis: Arc<SplineBasis<T>>, alpha: T) -> Result<DiracSpectrum<T>> {
    let channel = KappaChannel::new(kappa)?;
    let z = basis.grid().z();
    let az = alpha * T::int(z as i64);
    if !(az < T::int(kappa.abs() as i64)) {
        return Err(Error::domain("basis", format!("alpha Z = {az} is not below |kappa| = {}", kappa.abs())));
    }
    let (h, s) = assemble(kappa, &basis, alpha)?;
    let nb = basis.n_basis();
    let pairs = T::generalized_symmetric_eigen(&h, &s).map_err(|e| match e {
        LinalgFailure::NotPositiveDefinite => Error::numerical("basis", "overlap matrix is not positive definite"),
        other => Error::numerical("basis", format!("eigensolver failed: {other:?}")),
    })?;

    let nodes = basis.nodes().len();
    let count = pairs.values.len();
    let mut coefficients = Vec::with_capacity(count);
    let mut large = Vec::with_capacity(count);
    let mut small = Vec::with_capacity(count);
    let mut large_derivative = Vec::with_capacity(count);
    let mut small_derivative = Vec::with_capacity(count);
    for mut c in pairs.vectors {
        // Fix the arbitrary eigenvector sign: largest coefficient positive.
        let pivot = c
            .iter()
            .enumerate()
            .fold((0, T::zero()), |best, (i, &x)| if x.abs() > best.1 { (i, x.abs()) } else { best })
            .0;
        if c[pivot] < T::zero() {
            c.iter_mut().for_each(|x| *x = -*x);
        }
        let mut g = vec![T::zero(); nodes];
        let mut f = vec![T::zero(); nodes];
        let mut dg = vec![T::zero(); nodes];
        let mut df = vec![T::zero(); nodes];
        for q in 0..nodes {
            for (i, b, d) in basis.local_basis(q) {
                g[q] += c[i] * b;
                dg[q] += c[i] * d;
                f[q] += c[nb + i] * b;
                df[q] += c[nb + i] * d;
            }
        }
        coefficients.push(c);
        large.push(g);
        small.push(f);
        large_derivative.push(dg);
        small_derivative.push(df);
    }
    Ok(DiracSpectrum {
        channel,
        z,
        alpha,
        basis,
        energies: pairs.values,
        coefficients,
        large,
        small,
        large_derivative,
        small_derivative,
    })
}

/// Galerkin matrices `(H, B)` of the radial Dirac problem in the basis
/// ordered as large-component splines followed by small-component splines.
pub fn assemble<T: Real>(kappa: i32, basis: &SplineBasis<T>, alpha: T) -> Result<(SquareMatrix<T>, SquareMatrix<T>)> {
    let az = alpha * T::int(basis.grid().z() as i64);
    let nb = basis.n_basis();
    let mut h = SquareMatrix::zeros(2 * nb);
    let mut s = SquareMatrix::zeros(2 * nb);
    let kf = T::int(kappa as i64);
    let k = basis.order();
    let mut local: Vec<(usize, T, T)> = Vec::with_capacity(k);
    for q in 0..basis.nodes().len() {
        let r = basis.nodes()[q];
        let w = basis.weights()[q];
        let v = -az / r;
        local.clear();
        local.extend(basis.local_basis(q));
        for &(i, bi, _) in &local {
            for &(j, bj, dj) in &local {
                let overlap = w * bi * bj;
                let coupling = w * bi * (kf * bj / r - dj);
                s.add(i, j, overlap);
                s.add(nb + i, nb + j, overlap);
                h.add(i, j, overlap * (T::one() + v));
                h.add(nb + i, nb + j, overlap * (v - T::one()));
                h.add(i, nb + j, coupling);
                h.add(nb + j, i, coupling);
            }
        }
    }
    Ok((h, s))
}

impl<T: Real> DiracSpectrum<T> {
    pub fn kappa(&self) -> i32 {
        self.channel.kappa
    }

    pub fn channel(&self) -> &KappaChannel {
        &self.channel
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn basis(&self) -> &Arc<SplineBasis<T>> {
        &self.basis
    }

    /// Eigenvalues in ascending order, rest mass included.
    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// Spline coefficients of state `s`: large component first, then small.
    pub fn coefficients(&self, s: usize) -> &[T] {
        &self.coefficients[s]
    }

    /// `G = r g` at the quadrature nodes.
    pub fn large(&self, s: usize) -> &[T] {
        &self.large[s]
    }

    /// `F = r f` at the quadrature nodes.
    pub fn small(&self, s: usize) -> &[T] {
        &self.small[s]
    }

    pub fn large_derivative(&self, s: usize) -> &[T] {
        &self.large_derivative[s]
    }

    pub fn small_derivative(&self, s: usize) -> &[T] {
        &self.small_derivative[s]
    }

    pub fn nodes(&self) -> &[T] {
        self.basis.nodes()
    }

    pub fn weights(&self) -> &[T] {
        self.basis.weights()
    }

    /// `int (G^2 + F^2) dr`, equal to one for every state up to rounding.
    pub fn norm_check(&self, s: usize) -> T {
        let w = self.weights();
        (0..w.len())
            .map(|q| w[q] * (self.large[s][q] * self.large[s][q] + self.small[s][q] * self.small[s][q]))
            .sum()
    }

    /// Index of the first state with positive energy.
    pub fn first_positive(&self) -> usize {
        self.energies.partition_point(|&e| e < T::zero())
    }

    /// Basis state representing the analytic level `orbital`.
    ///
    /// The nearest eigenvalue is accepted only within [`LABEL_TOLERANCE`]
    /// of the level's binding energy, so spurious roots are never labelled.
    pub fn find_bound_state(&self, orbital: Orbital) -> Result<usize> {
        if orbital.kappa != self.channel.kappa {
            return Err(Error::invalid(
                "basis",
                format!("state {orbital} does not belong to the kappa = {} channel", self.channel.kappa),
            ));
        }
        let exact = AnalyticState::new(self.z, orbital, self.alpha)?.energy;
        let binding = T::one() - exact;
        let (index, distance) = self
            .energies
            .iter()
            .enumerate()
            .map(|(i, &e)| (i, (e - exact).abs()))
            .fold((usize::MAX, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best });
        if index == usize::MAX || distance > T::lit(LABEL_TOLERANCE) * binding {
            return Err(Error::numerical(
                "basis",
                format!("no basis state matches {orbital} (closest deviation {distance})"),
            ));
        }
        Ok(index)
    }

    /// Writes `index,energy,norm_check` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "index,energy,norm_check")?;
        for (i, e) in self.energies.iter().enumerate() {
            writeln!(out, "{i},{:.9e},{:.9e}", e.to_f64_lossy(), self.norm_check(i).to_f64_lossy())?;
        }
        Ok(())
    }
}
