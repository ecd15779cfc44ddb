use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::QuadratureRule;

use super::grid::GridSpec;

/// B-splines of order `k` on a [`GridSpec`], tabulated at per-interval
/// Gauss-Legendre nodes.
///
/// The first and last splines are dropped so every basis function vanishes
/// at `r = 0` and `r = R`; basis index `b` refers to spline `b + 1`.
#[derive(Debug, Clone)]
pub struct SplineBasis<T> {
    order: usize,
    n_splines: usize,
    quadrature_order: usize,
    grid: GridSpec<T>,
    knots: Vec<T>,
    nodes: Vec<T>,
    weights: Vec<T>,
    /// First spline index (full numbering) nonzero at each node.
    first: Vec<usize>,
    values: Vec<T>,
    derivatives: Vec<T>,
}

impl<T: Real> SplineBasis<T> {
    /// `n_splines` counts the full spline set before the boundary splines are
    /// removed; the grid must carry `n_splines - order + 2` breakpoints.
    pub fn new(grid: GridSpec<T>, order: usize, quadrature_order: usize) -> Result<Self> {
        if order < 4 {
            return Err(Error::invalid("basis", format!("spline order must be at least 4, got {order}")));
        }
        let intervals = grid.knot_count() - 1;
        let n_splines = intervals + order - 1;
        if n_splines < order + 2 {
            return Err(Error::invalid(
                "basis",
                format!("{n_splines} splines of order {order} leave too few basis functions"),
            ));
        }
        if quadrature_order < order {
            return Err(Error::invalid(
                "basis",
                format!("quadrature order {quadrature_order} is below the spline order {order}"),
            ));
        }
        let b = grid.breakpoints();
        let mut knots = Vec::with_capacity(n_splines + order);
        knots.extend(std::iter::repeat_n(T::zero(), order - 1));
        knots.extend_from_slice(b);
        knots.extend(std::iter::repeat_n(grid.box_radius(), order - 1));

        let rule = QuadratureRule::<T>::gauss_legendre(quadrature_order)?;
        let total = intervals * quadrature_order;
        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut first = Vec::with_capacity(total);
        let mut values = Vec::with_capacity(total * order);
        let mut derivatives = Vec::with_capacity(total * order);
        let mut vals = vec![T::zero(); order];
        let mut ders = vec![T::zero(); order];
        for m in 0..intervals {
            let mu = order - 1 + m;
            for (x, w) in rule.mapped(b[m], b[m + 1]) {
                evaluate_nonzero(&knots, order, mu, x, &mut vals, &mut ders);
                nodes.push(x);
                weights.push(w);
                first.push(m);
                values.extend_from_slice(&vals);
                derivatives.extend_from_slice(&ders);
            }
        }
        Ok(Self {
            order,
            n_splines,
            quadrature_order,
            grid,
            knots,
            nodes,
            weights,
            first,
            values,
            derivatives,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Full spline count including the two dropped boundary splines.
    pub fn n_splines(&self) -> usize {
        self.n_splines
    }

    /// Number of retained basis functions per radial component.
    pub fn n_basis(&self) -> usize {
        self.n_splines - 2
    }

    pub fn quadrature_order(&self) -> usize {
        self.quadrature_order
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    /// Radial quadrature nodes over `(0, R)`.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Nonzero splines at node `q` as `(full spline index, value, derivative)`.
    pub fn local(&self, q: usize) -> impl Iterator<Item = (usize, T, T)> + '_ {
        let k = self.order;
        let f = self.first[q];
        (0..k).map(move |i| (f + i, self.values[q * k + i], self.derivatives[q * k + i]))
    }

    /// Retained basis functions at node `q` as `(basis index, value, derivative)`.
    pub fn local_basis(&self, q: usize) -> impl Iterator<Item = (usize, T, T)> + '_ {
        let last = self.n_splines - 1;
        self.local(q)
            .filter(move |&(i, _, _)| i != 0 && i != last)
            .map(|(i, v, d)| (i - 1, v, d))
    }

    /// Values and derivatives of all splines at an arbitrary radius.
    pub fn evaluate(&self, r: T) -> Vec<(usize, T, T)> {
        let k = self.order;
        let b = self.grid.breakpoints();
        if r < T::zero() || r > self.grid.box_radius() {
            return Vec::new();
        }
        let m = match b.iter().rposition(|&x| x <= r) {
            Some(m) => m.min(b.len() - 2),
            None => 0,
        };
        let mut vals = vec![T::zero(); k];
        let mut ders = vec![T::zero(); k];
        evaluate_nonzero(&self.knots, k, k - 1 + m, r, &mut vals, &mut ders);
        (0..k).map(|i| (m + i, vals[i], ders[i])).collect()
    }
}

/// Cox-de Boor recursion for the `k` splines nonzero on `[t_mu, t_mu+1)`,
/// with first derivatives taken from the order `k - 1` values.
fn evaluate_nonzero<T: Real>(t: &[T], k: usize, mu: usize, x: T, vals: &mut [T], ders: &mut [T]) {
    let mut left = vec![T::zero(); k];
    let mut right = vec![T::zero(); k];
    vals.iter_mut().for_each(|v| *v = T::zero());
    vals[0] = T::one();
    for j in 1..k {
        if j == k - 1 {
            // vals[r] holds B_{mu-k+2+r, k-1}; differentiate into order k.
            let deg = T::int(j as i64);
            for i in 0..k {
                let p = mu + 1 + i - k;
                let a = if i >= 1 { vals[i - 1] / (t[p + k - 1] - t[p]) } else { T::zero() };
                let b = if i + 2 <= k { vals[i] / (t[p + k] - t[p + 1]) } else { T::zero() };
                ders[i] = deg * (a - b);
            }
        }
        left[j] = x - t[mu + 1 - j];
        right[j] = t[mu + j] - x;
        let mut saved = T::zero();
        for r in 0..j {
            let temp = vals[r] / (right[r + 1] + left[j - r]);
            vals[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        vals[j] = saved;
    }
}
