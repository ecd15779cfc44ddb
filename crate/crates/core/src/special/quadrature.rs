use crate::error::{Error, Result};
use crate::scalar::Real;

const NEWTON_MAX_ITER: usize = 100;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    /// Builds the `order`-point rule by Newton iteration on `P_order`.
    ///
    /// Nodes come out strictly increasing and exactly antisymmetric about 0.
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("special", "Gauss-Legendre order must be at least 1"));
        }
        let n = order;
        let nf = T::int(n as i64);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let tol = T::iteration_tolerance();
        for i in 0..n.div_ceil(2) {
            let mut z = (T::PI() * (T::int(i as i64) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            if n % 2 == 1 && i == n / 2 {
                z = T::zero();
            }
            let mut dp = T::one();
            for _ in 0..NEWTON_MAX_ITER {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let step = p / d;
                z -= step;
                if step.abs() <= tol {
                    break;
                }
            }
            // derivative at the converged root
            let (_, d) = legendre_with_derivative(n, z);
            if d.is_finite() && d != T::zero() {
                dp = d;
            }
            let w = T::lit(2.0) / ((T::one() - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Ok(Self { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Nodes and weights affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::lit(0.5);
        let mid = (b + a) * T::lit(0.5);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative<T: Real>(n: usize, z: T) -> (T, T) {
    let mut p1 = T::one();
    let mut p2 = T::zero();
    for j in 1..=n {
        let jf = T::int(j as i64);
        let p3 = p2;
        p2 = p1;
        p1 = ((T::lit(2.0) * jf - T::one()) * z * p2 - (jf - T::one()) * p3) / jf;
    }
    let nf = T::int(n as i64);
    let d = nf * (z * p1 - p2) / (z * z - T::one());
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_order_is_rejected() {
        assert!(QuadratureRule::<f64>::gauss_legendre(0).is_err());
    }

    #[test]
    fn low_orders_have_closed_forms() {
        let one = QuadratureRule::<f64>::gauss_legendre(1).unwrap();
        assert_eq!(one.nodes(), &[0.0]);
        assert!((one.weights()[0] - 2.0).abs() < 1e-15);
        let two = QuadratureRule::<f64>::gauss_legendre(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((two.nodes()[0] + x).abs() < 1e-15 && (two.nodes()[1] - x).abs() < 1e-15);
        assert!((two.weights()[0] - 1.0).abs() < 1e-15 && (two.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn four_points_integrate_x6() {
        let rule = QuadratureRule::<f64>::gauss_legendre(4).unwrap();
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(6));
        assert!((v - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn invariants_hold_up_to_order_64() {
        for n in 1..=64 {
            let rule = QuadratureRule::<f64>::gauss_legendre(n).unwrap();
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n={n} sum={s}");
            for w in rule.nodes().windows(2) {
                assert!(w[0] < w[1]);
            }
            for i in 0..n {
                assert_eq!(rule.nodes()[i], -rule.nodes()[n - 1 - i]);
                assert!(rule.weights()[i] > 0.0);
            }
            // exactness up to degree 2n-1
            for deg in 0..(2 * n) {
                let v = rule.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((v - exact).abs() <= 1e-13 * exact.abs().max(1.0), "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn single_precision_rule_is_usable() {
        let rule = QuadratureRule::<f32>::gauss_legendre(8).unwrap();
        let v = rule.integrate(0.0, 1.0, |x| x * x);
        assert!((v - 1.0 / 3.0).abs() < 1e-6);
    }
}
