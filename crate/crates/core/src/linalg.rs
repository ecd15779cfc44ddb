//! Dense linear algebra backed by faer, exposed per concrete scalar so the
//! generic numerics never see faer's own scalar traits.

use faer::linalg::triangular_solve::{solve_lower_triangular_in_place, solve_upper_triangular_in_place};
use faer::prelude::*;
use faer::{Mat, Parallelism, Side};

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::default(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T: Copy + Default + std::ops::AddAssign> SquareMatrix<T> {
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] += v;
    }
}

/// Eigenpairs of a symmetric-definite pencil, sorted by ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    /// `vectors[s]` is the eigenvector of `values[s]`, normalised to `v^T B v = 1`.
    pub vectors: Vec<Vec<T>>,
}

/// Failure modes reported by the dense kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinalgFailure {
    NotPositiveDefinite,
    Singular,
    RankDeficient,
    NoConvergence,
}

/// Dense kernels required by the solvers.
pub trait DenseLinalg: Sized {
    /// Solve `H v = lambda B v` for symmetric `H` and symmetric positive definite `B`.
    fn generalized_symmetric_eigen(
        h: &SquareMatrix<Self>,
        b: &SquareMatrix<Self>,
    ) -> Result<EigenPairs<Self>, LinalgFailure>;

    /// Solve the square system `a x = rhs` by LU with partial pivoting.
    fn lu_solve(a: &SquareMatrix<Self>, rhs: &[Self]) -> Result<Vec<Self>, LinalgFailure>;

    /// Least-squares solution of an overdetermined `rows x cols` system
    /// (row-major) through a Householder QR factorisation.
    fn least_squares(rows: usize, cols: usize, a: &[Self], rhs: &[Self]) -> Result<Vec<Self>, LinalgFailure>;
}

macro_rules! impl_dense {
    ($t:ty) => {
        impl DenseLinalg for $t {
            fn generalized_symmetric_eigen(
                h: &SquareMatrix<$t>,
                b: &SquareMatrix<$t>,
            ) -> Result<EigenPairs<$t>, LinalgFailure> {
                let n = h.dim();
                // Jacobi scaling keeps the Cholesky factor well balanced on
                // strongly graded grids.
                let scale: Vec<$t> = (0..n).map(|i| 1.0 / b.get(i, i).sqrt()).collect();
                if scale.iter().any(|s| !s.is_finite()) {
                    return Err(LinalgFailure::NotPositiveDefinite);
                }
                let hs = Mat::<$t>::from_fn(n, n, |i, j| h.get(i, j) * scale[i] * scale[j]);
                let bs = Mat::<$t>::from_fn(n, n, |i, j| b.get(i, j) * scale[i] * scale[j]);
                let l = bs
                    .cholesky(Side::Lower)
                    .map_err(|_| LinalgFailure::NotPositiveDefinite)?
                    .compute_l();
                // A = L^{-1} H L^{-T}
                let mut y = hs;
                solve_lower_triangular_in_place(l.as_ref(), y.as_mut(), Parallelism::None);
                let mut a = y.transpose().to_owned();
                solve_lower_triangular_in_place(l.as_ref(), a.as_mut(), Parallelism::None);
                let a = Mat::<$t>::from_fn(n, n, |i, j| 0.5 * (a.read(i, j) + a.read(j, i)));
                let evd = a.selfadjoint_eigendecomposition(Side::Lower);
                let mut u = evd.u().to_owned();
                solve_upper_triangular_in_place(l.transpose(), u.as_mut(), Parallelism::None);
                let s = evd.s().column_vector();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&p, &q| s.read(p).total_cmp(&s.read(q)));
                if order.iter().any(|&k| !s.read(k).is_finite()) {
                    return Err(LinalgFailure::NoConvergence);
                }
                let values = order.iter().map(|&k| s.read(k)).collect();
                let vectors = order
                    .iter()
                    .map(|&k| (0..n).map(|i| u.read(i, k) * scale[i]).collect())
                    .collect();
                Ok(EigenPairs { values, vectors })
            }

            fn lu_solve(a: &SquareMatrix<$t>, rhs: &[$t]) -> Result<Vec<$t>, LinalgFailure> {
                let n = a.dim();
                let m = Mat::<$t>::from_fn(n, n, |i, j| a.get(i, j));
                let b = Mat::<$t>::from_fn(n, 1, |i, _| rhs[i]);
                let x = m.partial_piv_lu().solve(&b);
                let out: Vec<$t> = (0..n).map(|i| x.read(i, 0)).collect();
                if out.iter().all(|v| v.is_finite()) {
                    Ok(out)
                } else {
                    Err(LinalgFailure::Singular)
                }
            }

            fn least_squares(
                rows: usize,
                cols: usize,
                a: &[$t],
                rhs: &[$t],
            ) -> Result<Vec<$t>, LinalgFailure> {
                if rows < cols {
                    return Err(LinalgFailure::RankDeficient);
                }
                let m = Mat::<$t>::from_fn(rows, cols, |i, j| a[i * cols + j]);
                let norm = m.norm_l2();
                let qr = m.qr();
                let r = qr.compute_thin_r();
                let tiny = norm * <$t>::EPSILON * (rows as $t);
                if (0..cols).any(|i| r.read(i, i).abs() <= tiny) {
                    return Err(LinalgFailure::RankDeficient);
                }
                let b = Mat::<$t>::from_fn(rows, 1, |i, _| rhs[i]);
                let x = qr.solve_lstsq(&b);
                Ok((0..cols).map(|i| x.read(i, 0)).collect())
            }
        }
    };
}

impl_dense!(f32);
impl_dense!(f64);
