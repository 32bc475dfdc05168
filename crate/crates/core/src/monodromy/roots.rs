//! Roots of fewnomials: Aberth–Ehrlich iteration started from the Newton
//! polygon, then Newton polishing.

use num_complex::Complex64;

use crate::error::TrackError;
use crate::loops::FewnomialSupport;

const MAX_ITERATIONS: usize = 500;
/// Relative gap between the two sides of the trinomial discriminant below
/// which the closed form reports a singular polynomial.
const DISCRIMINANT_TOL: f64 = 1e-12;
/// Relative separation used by [`is_nonsingular`] for general supports.
const SEPARATION: f64 = 1e-8;

fn horner(a: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Starting points on the circles given by the upper hull of
/// `{(e, log|a_e|)}`, one circle per edge with as many points as its width.
fn newton_polygon_start(a: &[Complex64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = a.iter().enumerate().filter(|(_, c)| c.norm() > 0.0).map(|(e, c)| (e, c.norm().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (o, m) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (m.0 as f64 - o.0 as f64) * (q.1 - o.1) - (m.1 - o.1) * (q.0 as f64 - o.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (k, w) in hull.windows(2).enumerate() {
        let n = w[1].0 - w[0].0;
        let r = ((w[0].1 - w[1].1) / n as f64).exp();
        let offset = 0.4 + 0.7 * k as f64;
        out.extend((0..n).map(|m| Complex64::from_polar(r, offset + std::f64::consts::TAU * m as f64 / n as f64)));
    }
    out
}

/// All roots of the dense polynomial `Σ a_e x^e`, `a_0, a_deg ≠ 0`. `start`
/// warm-starts the iteration. `None` if the iteration does not settle.
pub(crate) fn aberth(a: &[Complex64], start: Option<&[Complex64]>, tol: f64) -> Option<Vec<Complex64>> {
    let n = a.len() - 1;
    let mut z: Vec<Complex64> = match start {
        Some(s) if s.len() == n => s.to_vec(),
        _ => newton_polygon_start(a),
    };
    if n == 1 {
        return Some(vec![-a[0] / a[1]]);
    }
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(a, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            worst = worst.max(w.norm() / z[k].norm().max(f64::MIN_POSITIVE));
        }
        if worst < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner(a, *zk);
            let step = p / dp;
            if step.is_finite() && step.norm() < 1e-3 * zk.norm() {
                *zk -= step;
            }
        }
    }
    Some(z)
}

/// Smallest distance between two roots, relative to the largest modulus.
pub(crate) fn relative_gap(z: &[Complex64]) -> f64 {
    let scale = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut gap = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            gap = gap.min((z[i] - z[j]).norm());
        }
    }
    gap / scale
}

pub(crate) fn check_coefficients(coeffs: &[Complex64], sup: &FewnomialSupport) -> Result<(), TrackError> {
    if coeffs.len() != sup.len() {
        return Err(TrackError::InvalidLoop(format!("{} coefficients for support {sup}", coeffs.len())));
    }
    Ok(())
}

/// The `d` roots of `Σ c_i x^{a_i}`, `tol` being the relative accuracy.
pub fn roots(coeffs: &[Complex64], sup: &FewnomialSupport, tol: f64) -> Result<Vec<Complex64>, TrackError> {
    solve(coeffs, sup, None, tol, SEPARATION, 0, 0.0)
}

pub(crate) fn solve(
    coeffs: &[Complex64],
    sup: &FewnomialSupport,
    start: Option<&[Complex64]>,
    tol: f64,
    separation: f64,
    segment: usize,
    s: f64,
) -> Result<Vec<Complex64>, TrackError> {
    check_coefficients(coeffs, sup)?;
    let a = sup.dense(coeffs);
    if a[0].norm() == 0.0 {
        return Err(TrackError::RootAtOrigin { segment, s });
    }
    if a[sup.d()].norm() == 0.0 {
        return Err(TrackError::Singular { segment, s });
    }
    let z = aberth(&a, start, tol).ok_or(TrackError::NoConvergence { segment, s })?;
    if relative_gap(&z) < separation {
        return Err(TrackError::Singular { segment, s });
    }
    let scale = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if z.iter().any(|x| x.norm() < separation * scale) {
        return Err(TrackError::RootAtOrigin { segment, s });
    }
    Ok(z)
}

/// Whether the polynomial has `d` distinct nonzero roots. Trinomials use the
/// closed form of the discriminant, other supports the computed roots.
pub fn is_nonsingular(coeffs: &[Complex64], sup: &FewnomialSupport) -> bool {
    if check_coefficients(coeffs, sup).is_err() {
        return false;
    }
    let (c0, cd) = (coeffs[0], coeffs[coeffs.len() - 1]);
    if c0.norm() == 0.0 || cd.norm() == 0.0 {
        return false;
    }
    match sup.exponents() {
        [0, _] => true,
        &[0, p, d] => {
            // x ↦ x^g is a covering of C^*, so reduce to gcd(p, d) = 1
            let g = num_integer::gcd(p, d);
            let (p, d) = ((p / g) as f64, (d / g) as f64);
            let (c1, c2) = (coeffs[1] / c0, cd / c0);
            let lhs = (-c1 * (d - p) / d).powf(d);
            let rhs = (c2 * (d - p) / p).powf(p);
            (lhs - rhs).norm() > DISCRIMINANT_TOL * (lhs.norm() + rhs.norm())
        }
        _ => solve(coeffs, sup, None, 1e-14, SEPARATION, 0, 0.0).is_ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sup(e: &[usize]) -> FewnomialSupport {
        FewnomialSupport::new(e.to_vec()).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        for d in [2usize, 5, 12] {
            let r = roots(&[c(-1.0, 0.0), c(1.0, 0.0)], &sup(&[0, d]), 1e-14).unwrap();
            assert_eq!(r.len(), d);
            for k in 0..d {
                let w = Complex64::from_polar(1.0, TAU * k as f64 / d as f64);
                assert!(r.iter().any(|z| (z - w).norm() < 1e-12), "d = {d}");
            }
        }
    }

    #[test]
    fn double_root_is_singular() {
        let s = sup(&[0, 1, 2]);
        let co = [c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(roots(&co, &s, 1e-14), Err(TrackError::Singular { .. })));
        assert!(!is_nonsingular(&co, &s));
        assert!(is_nonsingular(&[c(-1.0, 0.0), c(1.0, 0.0)], &sup(&[0, 7])));
    }

    #[test]
    fn quadratic_closed_form() {
        // 1 + c1 x + c2 x^2 is singular iff c1^2 = 4 c2
        let s = sup(&[0, 1, 2]);
        let c1 = c(0.3, 1.1);
        assert!(!is_nonsingular(&[c(1.0, 0.0), c1, c1 * c1 / 4.0], &s));
        assert!(is_nonsingular(&[c(1.0, 0.0), c1, c1 * c1 / 4.0 + 1e-6], &s));
        assert!(!is_nonsingular(&[c(1.0, 0.0), c1, c(0.0, 0.0)], &s));
    }

    #[test]
    fn closed_form_agrees_with_roots() {
        let s = sup(&[0, 2, 5]);
        let x0 = Complex64::from_polar(0.8, 0.3);
        // a double root at x0: p(x0) = p'(x0) = 0 fixes c1, c2
        let c2 = 2.0 / (3.0 * x0.powu(5));
        let c1 = -(1.0 + c2 * x0.powu(5)) / x0.powu(2);
        let co = [c(1.0, 0.0), c1, c2];
        assert!(!is_nonsingular(&co, &s));
        assert!(roots(&co, &s, 1e-14).is_err());
        let general = sup(&[0, 1, 2, 5]);
        assert!(!is_nonsingular(&[c(1.0, 0.0), c(0.0, 0.0), c1, c2], &general));
        assert!(is_nonsingular(&[c(1.0, 0.0), c(0.1, 0.0), c1, c2], &general));
    }

    #[test]
    fn zero_constant_term_puts_a_root_at_the_origin() {
        let s = sup(&[0, 3]);
        assert!(matches!(roots(&[c(0.0, 0.0), c(1.0, 0.0)], &s, 1e-14), Err(TrackError::RootAtOrigin { .. })));
    }

    #[test]
    fn widely_spread_moduli() {
        // 1 + e^{-6} x^3 + e^{-20} x^7: roots on circles of radius e^2 and e^{3.5}
        let s = sup(&[0, 3, 7]);
        let co = [c(1.0, 0.0), c((-6.0f64).exp(), 0.0), c((-20.0f64).exp(), 0.0)];
        let r = roots(&co, &s, 1e-14).unwrap();
        let a = s.dense(&co);
        for z in &r {
            let (p, _) = horner(&a, *z);
            let size: f64 = a.iter().enumerate().map(|(e, c)| c.norm() * z.norm().powi(e as i32)).sum();
            assert!(p.norm() < 1e-12 * size);
        }
        let small = r.iter().filter(|z| (z.norm().ln() - 2.0).abs() < 0.3).count();
        assert_eq!(small, 3);
    }

    #[test]
    fn warm_start_reaches_the_same_roots() {
        let s = sup(&[0, 3, 7]);
        let co = [c(1.0, 0.0), c(-0.4, 0.2), c(1.0, 0.0)];
        let r = roots(&co, &s, 1e-14).unwrap();
        let shifted: Vec<Complex64> = r.iter().map(|z| z * 1.01).collect();
        let again = solve(&co, &s, Some(&shifted), 1e-14, 1e-8, 0, 0.0).unwrap();
        for z in &r {
            assert!(again.iter().any(|w| (w - z).norm() < 1e-12));
        }
    }
}
