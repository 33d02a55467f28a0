//! Orthonormal Hermite polynomials for the weight e^{-x²/2}.
//!
//! p_n(x) = (2π)^{-1/4} 2^{-n/2} (n!)^{-1/2} H_n(x/√2) satisfies
//! ∫ p_m p_n e^{-x²/2} dx = δ_mn. Rather than scaling the classical H_n
//! (whose values overflow long before n = 200), the orthonormal family is
//! generated directly by its own three-term recurrence
//!
//! ```text
//! p_0 = (2π)^{-1/4},   p_1 = x p_0,
//! p_{n+1}(x) = (x p_n(x) - √n p_{n-1}(x)) / √(n+1),
//! ```
//!
//! which is numerically stable (forward recurrence in the direction of the
//! dominant solution). The derivative follows from p_n' = √n p_{n-1}.

use crate::error::{Error, Result};

/// Library cap on the polynomial degree.
pub const HERMITE_CAP: usize = 200;

const INV_FOURTH_ROOT_2PI: f64 = 0.631_618_777_746_064_7; // (2π)^{-1/4}

/// p_n(x), the orthonormal Hermite polynomial for weight e^{-x²/2}.
pub fn hermite_orthonormal(n: usize, x: f64) -> Result<f64> {
    if n > HERMITE_CAP {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("degree capped at {HERMITE_CAP}, got {n}"),
        });
    }
    Ok(hermite_recurrence(n, x).1)
}

/// (p_{n-1}(x), p_n(x)) from the stable forward recurrence; p_{-1} = 0.
pub fn hermite_pair(n: usize, x: f64) -> Result<(f64, f64)> {
    if n > HERMITE_CAP {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("degree capped at {HERMITE_CAP}, got {n}"),
        });
    }
    Ok(hermite_recurrence(n, x))
}

fn hermite_recurrence(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = INV_FOURTH_ROOT_2PI;
    if n == 0 {
        return (prev, cur);
    }
    for k in 0..n {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    #[test]
    fn degree_zero_is_constant() {
        for &x in &[-3.0, 0.0, 1.7, 10.0] {
            assert_abs_diff_eq!(
                hermite_orthonormal(0, x).unwrap(),
                (2.0 * std::f64::consts::PI).powf(-0.25),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn degree_one_is_linear() {
        for &x in &[-2.0, 0.0, 0.5, 4.0] {
            assert_abs_diff_eq!(
                hermite_orthonormal(1, x).unwrap(),
                (2.0 * std::f64::consts::PI).powf(-0.25) * x,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(hermite_orthonormal(HERMITE_CAP, 0.3).is_ok());
        assert!(hermite_orthonormal(HERMITE_CAP + 1, 0.3).is_err());
    }

    /// Gauss-Hermite rule for weight e^{-y²} via Golub-Welsch on the Jacobi
    /// matrix; used as the orthogonality oracle.
    fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 1..n {
            let b = (k as f64 / 2.0).sqrt();
            jac[(k - 1, k)] = b;
            jac[(k, k - 1)] = b;
        }
        let eig = nalgebra::SymmetricEigen::new(jac);
        let total_weight = std::f64::consts::PI.sqrt(); // ∫ e^{-y²} dy
        let mut out: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let node = eig.eigenvalues[j];
                let first = eig.eigenvectors[(0, j)];
                (node, total_weight * first * first)
            })
            .collect();
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    }

    #[test]
    fn orthonormality_by_gauss_hermite_quadrature() {
        // ∫ p_m p_n e^{-x²/2} dx = √2 ∫ p_m(√2 y) p_n(√2 y) e^{-y²} dy
        let rule = gauss_hermite(40);
        let root2 = 2f64.sqrt();
        for m in 0..=10usize {
            for n in 0..=10usize {
                let integral: f64 = rule
                    .iter()
                    .map(|&(y, w)| {
                        w * hermite_orthonormal(m, root2 * y).unwrap()
                            * hermite_orthonormal(n, root2 * y).unwrap()
                    })
                    .sum::<f64>()
                    * root2;
                let target = if m == n { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(integral, target, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn pair_matches_individual_values() {
        for n in 1..=60usize {
            let (lo, hi) = hermite_pair(n, 0.83).unwrap();
            assert_abs_diff_eq!(lo, hermite_orthonormal(n - 1, 0.83).unwrap(), epsilon = 1e-13);
            assert_abs_diff_eq!(hi, hermite_orthonormal(n, 0.83).unwrap(), epsilon = 1e-13);
        }
    }

    #[test]
    fn high_degree_values_stay_finite() {
        for &x in &[-20.0, -1.0, 0.0, 15.0, 25.0] {
            let v = hermite_orthonormal(HERMITE_CAP, x).unwrap();
            assert!(v.is_finite());
        }
    }
}
