//! The s^(m) / t^(m) function families entering the rank-k correction
//! determinants, plain and with critical-window parameters w.
//!
//! Definitions (contours from ∞e^{5iπ/6} to ∞e^{iπ/6}):
//!
//! ```text
//! s^(m)(u)            = (1/2π) ∫ e^{iua + ia³/3} (ia)^{-m} da      (0 above contour)
//! t^(m)(v)            = (1/2π) ∫ e^{iva + ia³/3} (-ia)^{m-1} da
//! s^(m)(u; w_1..w_m)  = (1/2π) ∫ e^{iua + ia³/3} Π_j (w_j + ia)^{-1} da   (iw_j above)
//! t^(m)(v; w_1..w_{m-1}) = (1/2π) ∫ e^{ivb + ib³/3} Π_j (w_j - ib) db
//! ```
//!
//! Production evaluation avoids the contour where a stabler route exists:
//!
//! * `s_m` uses the equivalent closed form — a degree-(m-1) polynomial plus
//!   an (m-1)-fold iterated Airy integral; the contour route stays available
//!   as [`s_m_contour`] for cross-checking.
//! * `t_m` is (-d/dv)^{m-1} Ai(v), expanded through the exact ODE recursion
//!   Ai'' = v Ai (never numerical differentiation).
//! * the w-parameterized variants integrate over the contour for moderate u
//!   and switch to a residue sum over the poles iw_j for large positive u,
//!   where the ray quadrature would be hopelessly oscillatory. Both variants
//!   accept an exponential conjugation factor e^{-cu} so downstream resolvent
//!   code can keep values inside f64 range when some w_j < 0 (s then grows
//!   like e^{|w_j| u}).

use num_complex::Complex64;

use super::airy::{airy_ai, airy_ai_derivative};
use super::contour::ContourSpec;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// Largest supported m. Values beyond this are outside the engineered and
/// tested range and are rejected rather than silently degraded.
pub const M_CAP: usize = 8;

/// Positive-u threshold beyond which the integrals leave the caller's
/// contour: the fixed low vertex costs a cancellation factor e^{u|vertex|},
/// so for larger u the contour is lifted toward the saddle at i√u, sweeping
/// the low-lying poles into residue terms.
const LIFT_SWITCH: f64 = 8.0;

/// t^(m)(v; ...) decays like v^{m/2} Ai(v); beyond this it is zero to f64.
const T_NEGLIGIBLE: f64 = 28.0;

fn check_m(m: usize) -> Result<()> {
    if m < 1 || m > M_CAP {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("must satisfy 1 <= m <= {M_CAP}, got {m}"),
        });
    }
    Ok(())
}

/// s^(m)(u) by the closed form: Σ_{l+3n=m-1} (-1)^n/(3^n l! n!) u^l plus the
/// iterated Airy integral (1/(m-1)!) ∫_∞^u (u-y)^{m-1} Ai(y) dy.
pub fn s_m(u: f64, m: usize) -> Result<f64> {
    check_m(m)?;
    Ok(s_poly(u, m) + s_tail_integral(u, m))
}

/// The polynomial part of s^(m).
fn s_poly(u: f64, m: usize) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    while 3 * n <= m - 1 {
        let l = m - 1 - 3 * n;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / (3f64.powi(n as i32) * factorial(l) * factorial(n)) * u.powi(l as i32);
        n += 1;
    }
    sum
}

/// (1/(m-1)!) ∫_∞^u (u-y)^{m-1} Ai(y) dy, i.e. the decaying tail correction.
fn s_tail_integral(u: f64, m: usize) -> f64 {
    // Rewrite toward +∞: (-1)^m/(m-1)! ∫_u^T (y-u)^{m-1} Ai(y) dy.
    let upper = (u + 5.0).max(20.0);
    if u >= upper {
        return 0.0;
    }
    let rule = GaussLegendre::new(24);
    let panels = ((upper - u) / 0.5).ceil() as usize;
    let integral = rule.integrate_panels(u, upper, panels, |y| {
        (y - u).powi(m as i32 - 1) * airy_ai(y)
    });
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    sign * integral / factorial(m - 1)
}

/// t^(m)(v) = (-d/dv)^{m-1} Ai(v).
pub fn t_m(v: f64, m: usize) -> Result<f64> {
    check_m(m)?;
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * airy_ai_derivative(m - 1, v))
}

/// s^(m)(u; w_1..w_m) by the defining contour integral (moderate u) or the
/// residue sum over the poles iw_j (large u).
pub fn s_m_w(u: f64, m: usize, w: &[f64], contour: &ContourSpec) -> Result<f64> {
    s_m_w_scaled(u, m, w, contour, 0.0)
}

/// e^{-c u} s^(m)(u; w), computed without forming the (possibly enormous)
/// unscaled value. Requires c = 0 or c > max_j(-w_j) so the product decays.
pub fn s_m_w_scaled(u: f64, m: usize, w: &[f64], contour: &ContourSpec, c: f64) -> Result<f64> {
    check_m(m)?;
    if w.len() != m {
        return Err(Error::InvalidParameter {
            name: "w",
            reason: format!("expected {m} parameters, got {}", w.len()),
        });
    }
    contour.validate()?;
    let poles: Vec<Complex64> = w.iter().map(|&wj| Complex64::new(0.0, wj)).collect();
    contour.validate_poles(&poles, 1e-8)?;

    if u <= LIFT_SWITCH {
        let integrand = |a: Complex64| {
            let mut phi = phase(u, a);
            for &wj in w {
                phi /= wj + Complex64::i() * a;
            }
            phi
        };
        contour.check_decay(integrand)?;
        let raw = contour.integrate(integrand) / (2.0 * std::f64::consts::PI);
        let value = take_real(raw)?;
        Ok(value * (-c * u).exp())
    } else {
        lifted_evaluation(u, w, c)
    }
}

/// t^(m)(v; w_1..w_{m-1}); the integrand is entire so there are no pole
/// constraints. The optional conjugation multiplies by e^{+c v}.
pub fn t_m_w(v: f64, m: usize, w: &[f64], contour: &ContourSpec) -> Result<f64> {
    t_m_w_scaled(v, m, w, contour, 0.0)
}

/// e^{+c v} t^(m)(v; w).
pub fn t_m_w_scaled(v: f64, m: usize, w: &[f64], contour: &ContourSpec, c: f64) -> Result<f64> {
    check_m(m)?;
    if w.len() != m - 1 {
        return Err(Error::InvalidParameter {
            name: "w",
            reason: format!("expected {} parameters, got {}", m - 1, w.len()),
        });
    }
    contour.validate()?;
    if v > T_NEGLIGIBLE {
        // |t| <= poly(v) * Ai(v) ~ e^{-(2/3) v^{3/2}} < 1e-60 here, and the
        // conjugation factor can never bring that back above f64 noise.
        return Ok(0.0);
    }
    let integrand = |b: Complex64| {
        let mut phi = phase(v, b);
        for &wj in w {
            phi *= wj - Complex64::i() * b;
        }
        phi
    };
    contour.check_decay(integrand)?;
    let raw = contour.integrate(integrand) / (2.0 * std::f64::consts::PI);
    let value = take_real(raw)?;
    Ok(value * (c * v).exp())
}

/// Contour-route evaluation of the plain s^(m), kept as the independent
/// cross-check of the closed form used by [`s_m`].
pub fn s_m_contour(u: f64, m: usize, contour: &ContourSpec) -> Result<f64> {
    s_m_w(u, m, &vec![0.0; m], contour)
}

/// e^{iua + ia³/3}
fn phase(u: f64, a: Complex64) -> Complex64 {
    (Complex64::i() * (u * a + a * a * a / 3.0)).exp()
}

fn take_real(raw: Complex64) -> Result<f64> {
    let tol = 1e-8 * raw.re.abs().max(1.0);
    if !raw.re.is_finite() || raw.im.abs() > tol {
        return Err(Error::NonFinite {
            context: "contour integral lost conjugation symmetry",
        });
    }
    Ok(raw.re)
}

/// Large-u evaluation of e^{-cu} s^(m)(u; w).
///
/// The contour is deformed upward toward the saddle of e^{iua+ia³/3} at
/// a = i√u (stopping 0.3 short of any pole sitting near that height). Poles
/// swept by the deformation contribute residues, extracted numerically by
/// small-circle quadrature so repeated and clustered parameters need no
/// special-casing; the remainder integral over the lifted contour carries
/// the factor e^{-u h + h³/3} and is dropped once that is below 1e-50 of
/// the working scale.
fn lifted_evaluation(u: f64, w: &[f64], c: f64) -> Result<f64> {
    // Contour height: as close to the saddle as the poles allow.
    let mut h = u.sqrt();
    loop {
        let blocking = w
            .iter()
            .cloned()
            .filter(|wj| (wj - h).abs() < 0.3)
            .fold(f64::INFINITY, f64::min);
        if blocking.is_finite() {
            h = blocking - 0.3;
        } else {
            break;
        }
    }

    let swept: Vec<f64> = w.iter().cloned().filter(|&wj| wj < h).collect();
    let mut total = residue_sum(u, w, &swept, c)?;

    // Remainder over the lifted contour; magnitude scale e^{-uh + h³/3 - cu}.
    let log_scale = -u * h + h * h * h / 3.0 - c * u;
    if log_scale > -50.0 {
        let vertex = Complex64::new(0.0, h);
        let radius = (4.5 + 130.0 / u).min(12.0);
        let oscillation = 0.866 * u * radius;
        let nodes = (200usize).max(((0.5 * oscillation) as usize + 80).min(1600));
        let lifted = ContourSpec {
            vertex,
            angle_right: std::f64::consts::FRAC_PI_6,
            angle_left: 5.0 * std::f64::consts::FRAC_PI_6,
            truncation_radius: radius,
            nodes_per_ray: nodes,
        };
        let integrand = |a: Complex64| {
            let expo = Complex64::i() * (u * a + a * a * a / 3.0) - c * u;
            let mut val = expo.exp();
            for &wj in w {
                val /= wj + Complex64::i() * a;
            }
            val
        };
        let raw = lifted.integrate(integrand) / (2.0 * std::f64::consts::PI);
        total += raw;
    }
    take_real(total)
}

/// Sum of residues of (1/2π-normalized) e^{iua+ia³/3-cu} Π 1/(w_j+ia) over
/// the poles listed in `swept`, grouped into clusters and integrated over
/// small circles. The circle radius shrinks like 1/u so |e^{iuρe^{iθ}}|
/// never exceeds e^{~4}.
fn residue_sum(u: f64, w: &[f64], swept: &[f64], c: f64) -> Result<Complex64> {
    let mut sorted = swept.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let link = 8.0 / u;
    let mut clusters: Vec<(f64, f64)> = Vec::new(); // (lo, hi) of each cluster
    for &wj in &sorted {
        match clusters.last_mut() {
            Some((_, hi)) if wj - *hi <= link => *hi = wj,
            _ => clusters.push((wj, wj)),
        }
    }
    let unswept: Vec<f64> = w
        .iter()
        .cloned()
        .filter(|wj| !swept.iter().any(|s| s == wj))
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (idx, &(lo, hi)) in clusters.iter().enumerate() {
        let center = 0.5 * (lo + hi);
        let spread = hi - lo;
        let mut radius = 0.5 * spread + 4.0 / u;
        // stay clear of neighboring clusters and of un-swept poles
        let mut gap = f64::INFINITY;
        if idx > 0 {
            gap = gap.min(lo - clusters[idx - 1].1);
        }
        if idx + 1 < clusters.len() {
            gap = gap.min(clusters[idx + 1].0 - hi);
        }
        for &wj in &unswept {
            gap = gap.min((wj - center).abs() - 0.5 * spread);
        }
        if radius > 0.45 * gap {
            radius = 0.45 * gap;
            if radius <= 0.5 * spread {
                return Err(Error::BadContour(format!(
                    "pole cluster [{lo}, {hi}] too wide to separate at u = {u}"
                )));
            }
        }
        // (1/2π) ∮ f(a) da counterclockwise around i*center; the i from da
        // folds the 2πi residue factor into the 1/2π normalization.
        let n = 128;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let offset = Complex64::from_polar(radius, theta);
            let a = Complex64::new(0.0, center) + offset;
            let expo = Complex64::i() * (u * a + a * a * a / 3.0) - c * u;
            let mut val = expo.exp();
            for &wj in w {
                val /= wj + Complex64::i() * a;
            }
            acc += val * Complex64::i() * offset;
        }
        total += acc / n as f64;
    }
    Ok(total)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn contour() -> ContourSpec {
        ContourSpec::standard(0.0)
    }

    #[test]
    fn rejects_out_of_range_m() {
        assert!(s_m(0.0, 0).is_err());
        assert!(s_m(0.0, 9).is_err());
        assert!(t_m(0.0, 0).is_err());
        assert!(t_m(0.0, 9).is_err());
    }

    #[test]
    fn s1_right_tail_is_one() {
        assert_abs_diff_eq!(s_m(12.0, 1).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn s1_left_tail_decays_slowly() {
        // s^(1)(u) = 1 - ∫_u^∞ Ai; the left tail oscillates toward 0 like
        // |u|^{-3/4}, and at u = -40 the mpmath quadrature oracle gives
        // 1 - 0.96530251812241207 = 0.03469748187758793.
        assert_abs_diff_eq!(s_m(-40.0, 1).unwrap(), 0.034697481877588, epsilon = 1e-9);
        // envelope bound of the oscillation
        assert!(s_m(-40.0, 1).unwrap().abs() < 1.0 / (-40.0f64).abs().powf(0.75));
    }

    #[test]
    fn s_m_closed_form_matches_contour_oracle() {
        // dual-route agreement, including the spec's m = 4 point at u = 0
        for &(u, m) in &[(0.0, 4usize), (-2.0, 1), (0.0, 1), (2.0, 2), (1.0, 3), (-1.5, 6)] {
            let closed = s_m(u, m).unwrap();
            let via_contour = s_m_contour(u, m, &contour()).unwrap();
            assert_abs_diff_eq!(closed, via_contour, epsilon = 1e-8);
        }
    }

    #[test]
    fn t_m_low_orders() {
        for &v in &[-1.0, 0.0, 2.0] {
            assert_abs_diff_eq!(t_m(v, 1).unwrap(), airy_ai(v), epsilon = 0.0);
        }
        for &v in &[-2.0, -0.5, 0.0, 1.0, 3.0] {
            assert_abs_diff_eq!(t_m(v, 3).unwrap(), v * airy_ai(v), epsilon = 1e-13);
        }
        // t^(2)(0) = -Ai'(0), from the series oracle value
        assert_abs_diff_eq!(t_m(0.0, 2).unwrap(), 0.258819403792807, epsilon = 1e-12);
    }

    #[test]
    fn w_zero_reduces_to_plain_families() {
        let c = contour();
        for &u in &[-2.0, 0.0, 2.0] {
            for m in 1..=2usize {
                let plain = s_m(u, m).unwrap();
                let param = s_m_w(u, m, &vec![0.0; m], &c).unwrap();
                assert_abs_diff_eq!(plain, param, epsilon = 1e-7);
            }
        }
        for &v in &[-1.0, 0.0, 1.0] {
            assert_abs_diff_eq!(t_m_w(v, 1, &[], &c).unwrap(), airy_ai(v), epsilon = 1e-8);
            assert_abs_diff_eq!(
                t_m_w(v, 2, &[0.0], &c).unwrap(),
                -airy_ai_derivative(1, v),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn s_with_large_w_is_small_and_monotone() {
        // s^(1)(0; w) = Ai(0)/w + |Ai'(0)|/w² + O(w⁻⁴): the approach to 0 as
        // w grows is algebraic. Quadrature values must track the expansion.
        let vals: Vec<f64> = [4.0, 6.0, 8.0]
            .iter()
            .map(|&wv| s_m_w(0.0, 1, &[wv], &contour()).unwrap().abs())
            .collect();
        for (i, &wv) in [4.0f64, 6.0, 8.0].iter().enumerate() {
            // independent route: expanding 1/(w+ia) turns s^(1)(0; w) into
            // sum_k t^(k+1)(0) / w^{k+1} with t from the ODE derivative tower
            let expansion: f64 = (0..=6)
                .map(|k| t_m(0.0, k + 1).unwrap() / wv.powi(k as i32 + 1))
                .sum();
            assert_abs_diff_eq!(vals[i], expansion, epsilon = 6.0 / wv.powi(8));
        }
        assert!(vals[2] <= 0.05, "s(0; 8) = {}", vals[2]);
        assert!(vals[0] > vals[1] && vals[1] > vals[2], "not decreasing: {vals:?}");
    }

    #[test]
    fn imaginary_part_is_conjugation_symmetric() {
        // exercised through the Err path: the raw integral at these inputs
        // must pass the |Im| <= 1e-8 gate inside s_m_w
        let c = ContourSpec::standard(-0.3);
        let v = s_m_w(1.0, 2, &[0.5, -0.3], &c).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn t_linear_in_w_expansion() {
        // t^(2)(v; w1) = w1 Ai(v) - Ai'(v); value at v = 0, w1 = 1 from the
        // series oracle constants.
        let expected = 0.355028053887817 + 0.258819403792807;
        assert_abs_diff_eq!(
            t_m_w(0.0, 2, &[1.0], &contour()).unwrap(),
            expected,
            epsilon = 1e-6
        );
    }

    #[test]
    fn lifted_route_continues_contour_route() {
        // values an infinitesimal step either side of the lift threshold must
        // agree: any route mismatch would dwarf the 2e-7 * |ds/du| offset
        for (m, w) in [(1usize, vec![0.4]), (2, vec![0.4, -0.2]), (2, vec![0.0, 0.0])] {
            let c = ContourSpec::standard(w.iter().cloned().fold(f64::INFINITY, f64::min));
            let below = s_m_w(LIFT_SWITCH - 1e-7, m, &w, &c).unwrap();
            let above = s_m_w(LIFT_SWITCH + 1e-7, m, &w, &c).unwrap();
            let scale = below.abs().max(above.abs()).max(1e-9);
            assert!(
                ((below - above) / scale).abs() < 1e-6,
                "jump at switch for w={w:?}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn lifted_route_matches_closed_form_at_intermediate_u() {
        // for w = 0 the lifted evaluation must reproduce the closed form of
        // s^(m) through the whole intermediate range
        for m in 1..=3usize {
            for &u in &[9.0, 12.0, 16.0, 20.0, 30.0] {
                let lifted = s_m_w(u, m, &vec![0.0; m], &contour()).unwrap();
                let closed = s_m(u, m).unwrap();
                let scale = closed.abs().max(1.0);
                assert!(
                    ((lifted - closed) / scale).abs() < 1e-8,
                    "m={m}, u={u}: {lifted} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn residue_route_matches_polynomial_at_zero_w() {
        // for w = 0 the residue sum is exactly the closed-form polynomial
        for m in 1..=4usize {
            let u = 40.0;
            let via_res = s_m_w(u, m, &vec![0.0; m], &contour()).unwrap();
            let closed = s_m(u, m).unwrap();
            let scale = closed.abs().max(1.0);
            assert!(
                ((via_res - closed) / scale).abs() < 1e-9,
                "m={m}: {via_res} vs {closed}"
            );
        }
    }

    #[test]
    fn scaled_variant_stays_finite_for_negative_w() {
        // unscaled s would be ~ e^{0.5 * 400} here; the conjugated value is tame
        let w = [-0.5];
        let c = ContourSpec::standard(-0.5);
        let v = s_m_w_scaled(400.0, 1, &w, &c, 0.75).unwrap();
        assert!(v.is_finite());
        // e^{-0.75u} s ~ e^{-0.25u} e^{w³/3}: decaying
        assert!(v.abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn derivative_chain_d_su_is_previous_family() {
        // d/du s^(m) = s^(m-1) (m >= 2) and d/du s^(1) = Ai; together these
        // give the m-fold identity d^m/du^m s^(m) = Ai.
        let h = 1e-4;
        for m in 2..=M_CAP {
            for &u in &[-8.0, -3.0, 0.0, 2.5, 7.0] {
                let d = (s_m(u + h, m).unwrap() - s_m(u - h, m).unwrap()) / (2.0 * h);
                let target = s_m(u, m - 1).unwrap();
                assert_abs_diff_eq!(d, target, epsilon = 1e-4 * target.abs().max(1.0));
            }
        }
        for &u in &[-10.0, -4.0, 0.0, 3.0, 10.0] {
            let d = (s_m(u + h, 1).unwrap() - s_m(u - h, 1).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(d, airy_ai(u), epsilon = 1e-6);
        }
    }

    #[test]
    fn fourth_difference_of_s4_recovers_airy() {
        // direct finite-difference check of d^4/du^4 s^(4) = Ai on a grid,
        // with the 7-point O(h^4) central stencil
        let h = 0.08;
        for &u in &[-6.0, -1.0, 0.0, 1.0, 4.0] {
            let s = |x: f64| s_m(x, 4).unwrap();
            let d4 = (-s(u - 3.0 * h) + 12.0 * s(u - 2.0 * h) - 39.0 * s(u - h) + 56.0 * s(u)
                - 39.0 * s(u + h)
                + 12.0 * s(u + 2.0 * h)
                - s(u + 3.0 * h))
                / (6.0 * h.powi(4));
            assert_abs_diff_eq!(d4, airy_ai(u), epsilon = 1e-4);
        }
    }
}
