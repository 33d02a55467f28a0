//! The Hastings-McLeod solution of Painlevé II.
//!
//! u'' = 2u³ + xu with u(x) ~ -Ai(x) as x → +∞ has a unique global solution;
//! it is negative, strictly decreasing, and approaches -√(-x/2) as x → -∞.
//! It powers the Painlevé representations of F₀ and F₁.
//!
//! The solve is damped-Newton collocation on Chebyshev points. Boundary
//! handling: the right end is pinned to -Ai(x_max); the left end is pinned to
//! the -√(-x/2) asymptote (with its first 1/(8x³) correction). Pinning both
//! ends keeps the exponentially growing linearized mode (size ~ e^{(2√2/3)|x|^{3/2}}
//! on the left) controlled, which a one-sided march cannot do in f64 below
//! x ≈ -12. The right-derivative match to -Ai'(x_max) is not imposed; it
//! comes out automatically and is verified in tests, as is the left-end
//! asymptote agreement.

use nalgebra::{DMatrix, DVector};

use super::airy::{airy_ai, airy_ai_pair};
use crate::error::{Error, Result};

/// A solved Hastings-McLeod profile on a collocation grid.
#[derive(Debug, Clone)]
pub struct PainleveSolution {
    /// Strictly increasing abscissae.
    pub grid: Vec<f64>,
    /// u(x) at the grid points.
    pub u_values: Vec<f64>,
    /// u'(x) at the grid points.
    pub u_prime_values: Vec<f64>,
    /// Where the left asymptotic condition was imposed.
    pub left_boundary: f64,
    /// Where the right Airy condition was imposed.
    pub right_boundary: f64,
    bary_weights: Vec<f64>,
}

/// Solves for the Hastings-McLeod solution on [x_min, x_max].
pub fn hastings_mcleod(x_min: f64, x_max: f64, n_points: usize) -> Result<PainleveSolution> {
    if !(x_min < -4.0) {
        return Err(Error::InvalidParameter {
            name: "x_min",
            reason: format!("must be < -4, got {x_min}"),
        });
    }
    if !(x_max > 4.0) {
        return Err(Error::InvalidParameter {
            name: "x_max",
            reason: format!("must be > 4, got {x_max}"),
        });
    }
    if n_points < 32 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            reason: format!("need at least 32 collocation points, got {n_points}"),
        });
    }

    let n = n_points - 1;
    let (grid, weights) = chebyshev_points(x_min, x_max, n);
    let d1 = differentiation_matrix(&grid, &weights);
    let d2 = &d1 * &d1;

    let right_value = -airy_ai(x_max);
    let left_value = -(-x_min / 2.0).sqrt() * (1.0 + 1.0 / (8.0 * x_min.powi(3)));

    // Initial guess: smooth blend of the two asymptotic regimes.
    let mut u = DVector::from_iterator(
        n_points,
        grid.iter()
            .map(|&x| -(airy_ai(x).powi(2) + (-x).max(0.0) / 2.0).sqrt()),
    );

    let residual = |u: &DVector<f64>| -> DVector<f64> {
        let mut r = &d2 * u;
        for i in 0..n_points {
            r[i] -= 2.0 * u[i].powi(3) + grid[i] * u[i];
        }
        r[0] = u[0] - left_value;
        r[n] = u[n] - right_value;
        r
    };

    let mut res = residual(&u);
    let mut res_norm = res.amax();
    let max_iter = 60;
    for iter in 0..max_iter {
        if res_norm < 1e-9 {
            break;
        }
        if iter == max_iter - 1 {
            return Err(Error::NonlinearSolveFailed {
                iterations: iter,
                residual: res_norm,
            });
        }
        // Jacobian: D² - diag(6u² + x), with identity rows at the ends.
        let mut jac = d2.clone();
        for i in 0..n_points {
            jac[(i, i)] -= 6.0 * u[i] * u[i] + grid[i];
        }
        for j in 0..n_points {
            jac[(0, j)] = 0.0;
            jac[(n, j)] = 0.0;
        }
        jac[(0, 0)] = 1.0;
        jac[(n, n)] = 1.0;

        let lu = jac.lu();
        let step = lu.solve(&(-&res)).ok_or(Error::SingularSystem {
            context: "Painlevé II collocation Jacobian",
        })?;

        // Damping by halving until the residual decreases.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = &u + lambda * &step;
            let trial_res = residual(&trial);
            let trial_norm = trial_res.amax();
            if trial_norm < res_norm || trial_norm < 1e-9 {
                u = trial;
                res = trial_res;
                res_norm = trial_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NonlinearSolveFailed {
                iterations: iter,
                residual: res_norm,
            });
        }
    }

    let u_prime = &d1 * &u;
    Ok(PainleveSolution {
        grid,
        u_values: u.iter().cloned().collect(),
        u_prime_values: u_prime.iter().cloned().collect(),
        left_boundary: x_min,
        right_boundary: x_max,
        bary_weights: weights,
    })
}

impl PainleveSolution {
    /// u(x) by barycentric interpolation on the collocation grid.
    pub fn value_at(&self, x: f64) -> f64 {
        barycentric(&self.grid, &self.u_values, &self.bary_weights, x)
    }

    /// u'(x) by barycentric interpolation.
    pub fn derivative_at(&self, x: f64) -> f64 {
        barycentric(&self.grid, &self.u_prime_values, &self.bary_weights, x)
    }

    /// Max |u'' - 2u³ - xu| over interior grid points, with u'' obtained from
    /// a 9-point local polynomial interpolation independent of the spectral
    /// operator used in the solve.
    pub fn ode_residual_max(&self) -> f64 {
        let n = self.grid.len();
        let mut worst: f64 = 0.0;
        for i in 4..n - 4 {
            let lo = i - 4;
            let d2 = local_second_derivative(&self.grid[lo..=i + 4], &self.u_values[lo..=i + 4], i - lo);
            let x = self.grid[i];
            let u = self.u_values[i];
            worst = worst.max((d2 - 2.0 * u.powi(3) - x * u).abs());
        }
        worst
    }
}

/// Independent shooting cross-check: classical RK4 on the first-order system
/// from x_max down to `x_target`, seeded with (-Ai, -Ai') at x_max.
/// Marching right-to-left is the stable direction for x > 0, so values at
/// moderate x (the cross-validation point is x = 0) carry full accuracy.
pub fn shooting_oracle(x_max: f64, x_target: f64, step: f64) -> (f64, f64) {
    let (ai, aip) = airy_ai_pair(x_max);
    let mut y = -ai;
    let mut yp = -aip;
    let mut x = x_max;
    let h = -step.abs();
    let f = |x: f64, y: f64, yp: f64| (yp, 2.0 * y * y * y + x * y);
    while x > x_target + 1e-12 {
        let h_eff = h.max(x_target - x);
        let (k1, l1) = f(x, y, yp);
        let (k2, l2) = f(x + 0.5 * h_eff, y + 0.5 * h_eff * k1, yp + 0.5 * h_eff * l1);
        let (k3, l3) = f(x + 0.5 * h_eff, y + 0.5 * h_eff * k2, yp + 0.5 * h_eff * l2);
        let (k4, l4) = f(x + h_eff, y + h_eff * k3, yp + h_eff * l3);
        y += h_eff / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        yp += h_eff / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        x += h_eff;
    }
    (y, yp)
}

/// Chebyshev (second kind) points mapped to [a, b], ascending, with their
/// barycentric weights.
fn chebyshev_points(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut grid = Vec::with_capacity(n + 1);
    let mut weights = Vec::with_capacity(n + 1);
    for j in 0..=n {
        grid.push(mid - half * (std::f64::consts::PI * j as f64 / n as f64).cos());
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == n {
            w *= 0.5;
        }
        weights.push(w);
    }
    (grid, weights)
}

/// Barycentric differentiation matrix for arbitrary nodes/weights.
fn differentiation_matrix(grid: &[f64], weights: &[f64]) -> DMatrix<f64> {
    let n = grid.len();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = (weights[j] / weights[i]) / (grid[i] - grid[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        d[(i, i)] = -row_sum;
    }
    d
}

fn barycentric(grid: &[f64], values: &[f64], weights: &[f64], x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xj, &vj), &wj) in grid.iter().zip(values).zip(weights) {
        let dx = x - xj;
        if dx.abs() < 1e-14 {
            return vj;
        }
        let q = wj / dx;
        num += q * vj;
        den += q;
    }
    num / den
}

/// Second derivative at `grid[center]` from the Lagrange polynomial through
/// the given stencil.
fn local_second_derivative(grid: &[f64], values: &[f64], center: usize) -> f64 {
    // Differentiate the Lagrange basis twice at x_c via the standard
    // divided-products; O(s³) on a 9-point stencil is negligible.
    let s = grid.len();
    let xc = grid[center];
    let mut total = 0.0;
    for j in 0..s {
        // l_j''(xc) = l_j(xc) * [ (sum 1/(xc-xk))² - sum 1/(xc-xk)² ] for
        // xc not a root of l_j; here xc is a node, so use the explicit form.
        let mut second = 0.0;
        for p in 0..s {
            if p == j {
                continue;
            }
            for q in 0..s {
                if q == j || q == p {
                    continue;
                }
                let mut prod = 1.0;
                for r in 0..s {
                    if r == j || r == p || r == q {
                        continue;
                    }
                    prod *= (xc - grid[r]) / (grid[j] - grid[r]);
                }
                second += prod / ((grid[j] - grid[p]) * (grid[j] - grid[q]));
            }
        }
        total += values[j] * second;
    }
    total
}
