//! The phase-tropical line `L ⊂ (C^*)^2`, the limit of the rescaled lines
//! `1 + z + w = 0`, and the tropical solutions `φ_c^{-1}(L)` of trinomials
//! `1 + c_1 x^p + c_2 x^d`.
//!
//! `Log L` is the tropical line with vertex at the origin and rays
//! `r_z = {log|w| = 0, log|z| < 0}`, `r_w = {log|z| = 0, log|w| < 0}` and
//! `r_∞ = {log|z| = log|w| > 0}`. Over them `L` is `w = −1`, `z = −1` and
//! `z = −w`. Over the origin it is the closure of the coamoeba of the line:
//! two triangles in the argument torus, with vertices at `(−1, −1)`,
//! `(−1, 1)` and `(1, −1)`.

pub mod loops;
pub mod turns;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::TropicalError;
pub use loops::{default_epsilon, ell_j_loop, gamma_loop, monomial_loop, realize, realize_constant, tau_loop, RealizeSide};
use turns::{arg_turns, half, rationalize, reduce, Turn, MAX_DENOMINATOR};

/// Tolerance on `d log|c_1| − p log|c_2|` below which the Log-line is taken
/// to pass through the origin.
pub const ORIGIN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrinomialSupport {
    p: usize,
    d: usize,
}

impl TrinomialSupport {
    pub fn new(p: usize, d: usize) -> Result<Self, TropicalError> {
        if p == 0 || p >= d {
            return Err(TropicalError::Exponents { p, d });
        }
        if p.gcd(&d) != 1 {
            return Err(TropicalError::NotCoprime { p, d });
        }
        Ok(Self { p, d })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPair {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CoefficientPair {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self, TropicalError> {
        if c1 == Complex64::new(0.0, 0.0) || c2 == Complex64::new(0.0, 0.0) {
            return Err(TropicalError::ZeroCoefficient);
        }
        Ok(Self { c1, c2 })
    }

    /// `(e^{l_1 + i a_1}, e^{l_2 + i a_2})`.
    pub fn from_log(l1: f64, a1: f64, l2: f64, a2: f64) -> Self {
        Self { c1: Complex64::new(l1, a1).exp(), c2: Complex64::new(l2, a2).exp() }
    }
}

pub fn phi(c: &CoefficientPair, sup: &TrinomialSupport, x: Complex64) -> (Complex64, Complex64) {
    (c.c1 * x.powu(sup.p as u32), c.c2 * x.powu(sup.d as u32))
}

/// Whether the torus point `(α, β)` (turns) lies in the closed region over
/// the origin. `slack` widens the region, for floating point input.
fn in_triangles(alpha: f64, beta: f64, slack: f64) -> bool {
    let a = alpha.rem_euclid(1.0);
    let b = beta.rem_euclid(1.0);
    // distance to 1/2 along each coordinate, allowing the wrap at 0 ≡ 1
    let t1 = |a: f64, b: f64| a >= 0.5 - slack && b <= 0.5 + slack && a - b <= 0.5 + slack;
    let t2 = |a: f64, b: f64| a <= 0.5 + slack && b >= 0.5 - slack && b - a <= 0.5 + slack;
    let shifts = [0.0, 1.0, -1.0];
    shifts.iter().any(|&sa| shifts.iter().any(|&sb| t1(a + sa, b + sb) || t2(a + sa, b + sb)))
}

/// Strict interior of the region over the origin.
fn in_open_triangles(alpha: f64, beta: f64) -> bool {
    let (a, b) = (alpha.rem_euclid(1.0), beta.rem_euclid(1.0));
    (a > 0.5 && b < 0.5 && b > 0.0 && a - b < 0.5) || (a < 0.5 && a > 0.0 && b > 0.5 && b - a < 0.5)
}

/// Membership in `L`, with absolute tolerance `tol` on log-moduli and on the
/// defining equations.
pub fn in_phase_tropical_line(z: Complex64, w: Complex64, tol: f64) -> bool {
    if z.norm() == 0.0 || w.norm() == 0.0 {
        return false;
    }
    let (x, y) = (z.norm().ln(), w.norm().ln());
    let minus_one = Complex64::new(-1.0, 0.0);
    if x.abs() <= tol && y.abs() <= tol {
        let turn = |c: Complex64| c.arg() / std::f64::consts::TAU;
        in_triangles(turn(z), turn(w), tol)
    } else if y.abs() <= tol && x < 0.0 {
        (w - minus_one).norm() <= tol
    } else if x.abs() <= tol && y < 0.0 {
        (z - minus_one).norm() <= tol
    } else if (x - y).abs() <= tol && x > 0.0 {
        (z + w).norm() <= tol * z.norm()
    } else {
        false
    }
}

/// A connected component of a tropical solution set: the arc of the circle
/// `|x| = radius` from `start` to `end` counterclockwise, in turns. Isolated
/// points have `start == end`; the full circle has `end = start + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub radius: f64,
    pub start: Turn,
    pub end: Turn,
}

impl Component {
    pub fn is_point(&self) -> bool {
        self.start == self.end
    }

    pub fn length(&self) -> Turn {
        self.end - self.start
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TropicalSolutionSet {
    /// Whether the Log-line of `φ_c` passes through the vertex.
    pub through_origin: bool,
    pub components: Vec<Component>,
}

impl TropicalSolutionSet {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// The `n` solutions of `a + n θ ≡ target (mod 1)`, reduced to `[0, 1)`.
fn solve_linear(a: Turn, n: i64, target: Turn) -> Vec<Turn> {
    let n = n as i128;
    if n == 0 {
        return Vec::new();
    }
    let base = (target - a) / Turn::from_integer(n);
    (0..n.abs()).map(|m| reduce(base + Turn::new(m, n.abs()))).collect()
}

pub fn tropical_solutions(c: &CoefficientPair, sup: &TrinomialSupport) -> TropicalSolutionSet {
    let (p, d) = (sup.p as i64, sup.d as i64);
    let (l1, l2) = (c.c1.norm().ln(), c.c2.norm().ln());
    let (a0, b0) = (arg_turns(c.c1), arg_turns(c.c2));
    let h = half();
    if (d as f64 * l1 - p as f64 * l2).abs() > ORIGIN_TOL * (1.0 + l1.abs() + l2.abs()) {
        let points = |u: f64, thetas: Vec<Turn>| thetas.into_iter().map(move |t| Component { radius: u.exp(), start: t, end: t }).collect::<Vec<_>>();
        let components = if (d as f64) * l1 < (p as f64) * l2 {
            // the line passes above the vertex and meets r_z
            points(-l2 / d as f64, solve_linear(b0, d, h))
        } else {
            let mut v = points(-l1 / p as f64, solve_linear(a0, p, h));
            v.extend(points((l1 - l2) / (d - p) as f64, solve_linear(a0 - b0, p - d, h)));
            v
        };
        let mut components = components;
        components.sort_by_key(|x| x.start);
        return TropicalSolutionSet { through_origin: false, components };
    }

    let radius = (-l1 / p as f64).exp();
    let (a0, b0) = (turns::to_f64(a0), turns::to_f64(b0));
    let mut breaks: Vec<f64> = Vec::new();
    for (a, n) in [(a0, p), (b0, d), (a0 - b0, p - d)] {
        let n = n as f64;
        breaks.extend((0..n.abs() as i64).map(|m| ((0.5 - a) / n + m as f64 / n.abs()).rem_euclid(1.0)));
    }
    breaks.sort_by(f64::total_cmp);
    // breakpoints of different families meet exactly on the discriminant
    let mut merged: Vec<f64> = Vec::new();
    for b in breaks {
        if merged.last().is_none_or(|&m| b - m > ORIGIN_TOL) {
            merged.push(b);
        }
    }
    if merged.len() > 1 && merged[0] + 1.0 - merged[merged.len() - 1] <= ORIGIN_TOL {
        merged.pop();
    }
    let breaks = merged;
    let n = breaks.len();
    let turn = |x: f64| rationalize(x, MAX_DENOMINATOR);
    let one = Turn::from_integer(1);
    // arc i runs from breaks[i] to breaks[i + 1]
    let arc_in: Vec<bool> = (0..n)
        .map(|i| {
            let end = if i + 1 < n { breaks[i + 1] } else { breaks[0] + 1.0 };
            let mid = (breaks[i] + end) / 2.0;
            in_open_triangles(a0 + p as f64 * mid, b0 + d as f64 * mid)
        })
        .collect();
    let components = match (0..n).find(|&i| !arc_in[(i + n - 1) % n]) {
        None => vec![Component { radius, start: turn(breaks[0]), end: turn(breaks[0]) + one }],
        Some(first) => {
            let mut out = Vec::new();
            let mut i = first;
            let mut visited = 0;
            while visited < n {
                let start = breaks[i];
                let mut end = start;
                let mut wraps = 0.0;
                while arc_in[i] {
                    if i + 1 == n {
                        wraps += 1.0;
                    }
                    i = (i + 1) % n;
                    visited += 1;
                    end = breaks[i] + wraps;
                }
                out.push(Component { radius, start: turn(start), end: turn(end) });
                i = (i + 1) % n;
                visited += 1;
            }
            out.sort_by_key(|x| x.start);
            out
        }
    };
    TropicalSolutionSet { through_origin: true, components }
}

/// Whether `c` avoids the tropical discriminant `(−c_1)^d = c_2^p`.
pub fn is_tropical_condition(c: &CoefficientPair, sup: &TrinomialSupport) -> bool {
    let (p, d) = (sup.p as f64, sup.d as f64);
    let (l1, l2) = (c.c1.norm().ln(), c.c2.norm().ln());
    if (d * l1 - p * l2).abs() > ORIGIN_TOL * (1.0 + l1.abs() + l2.abs()) {
        return true;
    }
    let gap = (d * (arg_turns_f64(c.c1) + 0.5) - p * arg_turns_f64(c.c2)).rem_euclid(1.0);
    gap.min(1.0 - gap) > ORIGIN_TOL * d
}

fn arg_turns_f64(z: Complex64) -> f64 {
    z.arg() / std::f64::consts::TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sup(p: usize, d: usize) -> TrinomialSupport {
        TrinomialSupport::new(p, d).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn support_validation() {
        assert!(TrinomialSupport::new(2, 4).is_err());
        assert!(TrinomialSupport::new(0, 4).is_err());
        assert!(TrinomialSupport::new(5, 4).is_err());
        assert!(CoefficientPair::new(cx(0.0, 0.0), cx(1.0, 0.0)).is_err());
    }

    #[test]
    fn phi_values() {
        let s = sup(3, 7);
        let one = CoefficientPair::new(cx(1.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert_eq!(phi(&one, &s, cx(1.0, 0.0)), (cx(1.0, 0.0), cx(1.0, 0.0)));
        let x0 = cx(0.7, 0.4);
        let c = CoefficientPair::new(-x0.inv().powu(3), x0.inv().powu(7)).unwrap();
        let (z, w) = phi(&c, &s, x0);
        assert!((z - cx(-1.0, 0.0)).norm() < 1e-12 && (w - cx(1.0, 0.0)).norm() < 1e-12);
        // the Log-image lies on the line through Log c with direction (p, d)
        let x = cx(1.3, -0.2);
        let (z, w) = phi(&c, &s, x);
        let u = x.norm().ln();
        assert!((z.norm().ln() - (c.c1.norm().ln() + 3.0 * u)).abs() < 1e-12);
        assert!((w.norm().ln() - (c.c2.norm().ln() + 7.0 * u)).abs() < 1e-12);
    }

    #[test]
    fn membership_on_rays() {
        let e1 = (-1.0f64).exp();
        assert!(in_phase_tropical_line(cx(e1, 0.0), cx(-1.0, 0.0), 1e-9));
        assert!(!in_phase_tropical_line(cx(e1, 0.0), cx(1.0, 0.0), 1e-9));
        assert!(in_phase_tropical_line(cx(2.0, 0.0), cx(-2.0, 0.0), 1e-9));
        assert!(in_phase_tropical_line(cx(-1.0, 0.0), cx(0.0, 0.1), 1e-9));
        assert!(!in_phase_tropical_line(cx(2.0, 0.0), cx(3.0, 0.0), 1e-9));
    }

    #[test]
    fn membership_on_the_torus() {
        let at = |a: f64, b: f64| in_phase_tropical_line(Complex64::from_polar(1.0, a * 2.0 * PI), Complex64::from_polar(1.0, b * 2.0 * PI), 1e-9);
        // the two unit solutions of 1 + z + w = 0
        assert!(at(1.0 / 3.0, 2.0 / 3.0));
        assert!(at(2.0 / 3.0, 1.0 / 3.0));
        assert!(at(0.5, 0.0));
        assert!(!at(0.1, 0.1));
        assert!(!at(0.9, 0.9));
    }

    #[test]
    fn coamoeba_agrees_with_the_sweep() {
        // for w = s e^{2πiβ}, s > 0, the argument of z = −1 − w sweeps the open
        // arc from 1/2 to β + 1/2 the short way
        let n = 97;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = ((i as f64 + 0.37) / n as f64, (j as f64 + 0.61) / n as f64);
                let lo = 0.5f64;
                let hi = b + 0.5;
                let span = (hi - lo).rem_euclid(1.0);
                let inside = if span < 0.5 {
                    let x = (a - lo).rem_euclid(1.0);
                    x > 0.0 && x < span
                } else {
                    let x = (lo - a).rem_euclid(1.0);
                    x > 0.0 && x < 1.0 - span
                };
                assert_eq!(in_triangles(a, b, 0.0), inside, "({a}, {b})");
            }
        }
    }

    #[test]
    fn base_point_has_d_points() {
        let eps = 0.2;
        let c = CoefficientPair::from_log(-1.0, PI - eps, 0.0, 0.0);
        let s = tropical_solutions(&c, &sup(3, 7));
        assert!(!s.through_origin);
        assert_eq!(s.count(), 7);
        assert!(s.components.iter().all(Component::is_point));
        assert!(is_tropical_condition(&c, &sup(3, 7)));
    }

    #[test]
    fn origin_fiber_gives_d_arcs() {
        let eps = 0.2;
        let c = CoefficientPair::from_log(0.0, PI - eps, 0.0, 0.0);
        let s = tropical_solutions(&c, &sup(3, 7));
        assert!(s.through_origin);
        assert_eq!(s.count(), 7);
        assert!(s.components.iter().all(|c| !c.is_point()));
        assert!(is_tropical_condition(&c, &sup(3, 7)));
    }

    #[test]
    fn on_the_curve_two_components_merge() {
        let c = CoefficientPair::new(cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert!(!is_tropical_condition(&c, &sup(3, 7)));
        assert_eq!(tropical_solutions(&c, &sup(3, 7)).count(), 6);
        let x0 = Complex64::from_polar(1.0, 0.3);
        let c = CoefficientPair::new(-x0.powu(2), x0.powu(3)).unwrap();
        assert!(!is_tropical_condition(&c, &sup(2, 3)));
        assert_eq!(tropical_solutions(&c, &sup(2, 3)).count(), 2);
    }

    #[test]
    fn solution_points_lie_on_the_line() {
        let s = sup(2, 5);
        for c in [CoefficientPair::from_log(-1.0, 0.4, 0.5, 1.0), CoefficientPair::from_log(2.0, 0.4, -0.5, 1.0)] {
            let set = tropical_solutions(&c, &s);
            assert_eq!(set.count(), 5);
            for comp in &set.components {
                let x = Complex64::from_polar(comp.radius, turns::to_f64(comp.start) * 2.0 * PI);
                let (z, w) = phi(&c, &s, x);
                assert!(in_phase_tropical_line(z, w, 1e-6), "{z} {w}");
            }
        }
    }
}
