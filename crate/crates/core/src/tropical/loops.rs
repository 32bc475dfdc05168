//! Loops in the space of tropical conditions and their realisation as loops
//! of non-singular trinomials.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{is_tropical_condition, CoefficientPair, TrinomialSupport};
use crate::error::{TrackError, TropicalError};
use crate::loops::{CoeffPath, CoefficientLoop, FewnomialSupport, Segment};

/// Samples per segment checked against the tropical discriminant.
const CHECK_SAMPLES: usize = 256;

pub fn default_epsilon(d: usize) -> f64 {
    0.1 / d as f64
}

fn one() -> CoeffPath {
    CoeffPath::constant(Complex64::new(1.0, 0.0))
}

fn support(sup: &TrinomialSupport) -> FewnomialSupport {
    FewnomialSupport::trinomial(sup.p(), sup.d()).expect("valid trinomial")
}

fn invalid(e: TrackError) -> TropicalError {
    TropicalError::Parameters(e.to_string())
}

/// Segment moving `log c_1` linearly, with `c_0 = c_2 = 1`.
fn c1_segment(label: &str, from: Complex64, to: Complex64) -> Segment {
    Segment::new(label, vec![one(), CoeffPath::exp_line(from, to), one()])
}

fn check_epsilon(sup: &TrinomialSupport, eps: f64) -> Result<(), TropicalError> {
    if !(eps > 0.0 && eps < PI / sup.d() as f64) {
        return Err(TropicalError::Parameters(format!("epsilon {eps} must lie in (0, pi/d)")));
    }
    Ok(())
}

/// The four days, `log c_1` running around the rectangle
/// `[−1, 1] × [π − ε, π + ε]` shifted by `i·shift`.
fn days(eps: f64, shift: f64) -> Vec<Segment> {
    let c = |x: f64, y: f64| Complex64::new(x, y + shift);
    vec![
        c1_segment("day 1", c(-1.0, PI - eps), c(1.0, PI - eps)),
        c1_segment("day 2", c(1.0, PI - eps), c(1.0, PI + eps)),
        c1_segment("day 3", c(1.0, PI + eps), c(-1.0, PI + eps)),
        c1_segment("day 4", c(-1.0, PI + eps), c(-1.0, PI - eps)),
    ]
}

/// The loop `γ` based at `c⁽⁰⁾ = (e^{i(π−ε)−1}, 1)`.
pub fn gamma_loop(sup: &TrinomialSupport, eps: f64) -> Result<CoefficientLoop, TropicalError> {
    check_epsilon(sup, eps)?;
    let lp = CoefficientLoop::new(support(sup), days(eps, 0.0)).map_err(invalid)?;
    check_loop(&lp, sup)?;
    Ok(lp)
}

/// The loop realising `b_j`: `γ` rotated by `r` steps of `2π/d` in the `c_1`
/// plane, reversed, and conjugated by the rotation path. The rotation is
/// `r ≡ −p(j − 1) mod d`, since rotating `c_1` by one step advances the
/// exchanged pair by `−p^{-1}`.
pub fn ell_j_loop(sup: &TrinomialSupport, eps: f64, j: usize) -> Result<CoefficientLoop, TropicalError> {
    check_epsilon(sup, eps)?;
    let (p, d) = (sup.p() as i64, sup.d() as i64);
    if j == 0 || j as i64 > d {
        return Err(TropicalError::Parameters(format!("j = {j} outside 1..={d}")));
    }
    let r = (-p * (j as i64 - 1)).rem_euclid(d);
    let shift = 2.0 * PI * r as f64 / d as f64;
    let rotated = CoefficientLoop::new(support(sup), days(eps, shift)).map_err(invalid)?.reversed();
    let lp = if r == 0 {
        rotated
    } else {
        let rho = c1_segment(&format!("rho {r}"), Complex64::new(-1.0, PI - eps), Complex64::new(-1.0, PI - eps + shift));
        rotated.conjugate_by(&[rho]).map_err(invalid)?
    };
    check_loop(&lp, sup)?;
    Ok(lp)
}

/// The loop realising `τ`: `c_1 = e^{i(π−ε)−1}` fixed while `c_2` runs once
/// clockwise around the unit circle. The inner modulus keeps all `d` roots
/// on one circle of the tropical limit.
pub fn tau_loop(sup: &TrinomialSupport, eps: f64) -> Result<CoefficientLoop, TropicalError> {
    check_epsilon(sup, eps)?;
    let c1 = Complex64::new(-1.0, PI - eps).exp();
    let seg = Segment::new("tau", vec![one(), CoeffPath::constant(c1), CoeffPath::exp_line(Complex64::new(0.0, 0.0), Complex64::new(0.0, -2.0 * PI))]);
    let lp = CoefficientLoop::new(support(sup), vec![seg]).map_err(invalid)?;
    check_loop(&lp, sup)?;
    Ok(lp)
}

/// `x^d + e^{iφ}`, `φ ∈ [0, 2π]`, i.e. `x^d − e^{iθ}` with `θ` from `π` to `3π`.
pub fn monomial_loop(d: usize) -> Result<CoefficientLoop, TrackError> {
    let support = FewnomialSupport::new(vec![0, d]).map_err(|e| TrackError::InvalidLoop(e.to_string()))?;
    let seg = Segment::new("x^d - e^(i theta)", vec![CoeffPath::exp_line(Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0 * PI)), one()]);
    CoefficientLoop::new(support, vec![seg])
}

fn pair_at(lp: &CoefficientLoop, segment: usize, s: f64) -> CoefficientPair {
    let v = lp.eval(segment, s);
    CoefficientPair { c1: v[1] / v[0], c2: v[2] / v[0] }
}

fn check_loop(lp: &CoefficientLoop, sup: &TrinomialSupport) -> Result<(), TropicalError> {
    for segment in 0..lp.segments.len() {
        for i in 0..=CHECK_SAMPLES {
            let s = i as f64 / CHECK_SAMPLES as f64;
            if !is_tropical_condition(&pair_at(lp, segment, s), sup) {
                return Err(TropicalError::OnDiscriminant { segment, s });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizeSide {
    /// Scale `c_1`, keep `c_2`.
    #[default]
    First,
    /// Scale `c_2`, keep `c_1`.
    Second,
}

/// The constant carrying the tropical discriminant `(−c_1)^d = c_2^p` onto
/// the discriminant `(−c_1 (d−p)/d)^d = (c_2 (d−p)/p)^p` of the trinomial.
pub fn realize_constant(sup: &TrinomialSupport, side: RealizeSide) -> f64 {
    let (p, d) = (sup.p() as f64, sup.d() as f64);
    match side {
        RealizeSide::First => d / (p.powf(p / d) * (d - p).powf((d - p) / d)),
        RealizeSide::Second => p * (d - p).powf((d - p) / p) / d.powf(d / p),
    }
}

/// `H_t^{-1}` after scaling one coefficient: `c ↦ K · (c/|c|) · |c|^{log t}`.
/// A loop of tropical conditions becomes a loop of non-singular trinomials.
pub fn realize(lp: &CoefficientLoop, sup: &TrinomialSupport, t: f64, side: RealizeSide) -> Result<CoefficientLoop, TropicalError> {
    if t.is_nan() || t <= 1.0 {
        return Err(TropicalError::Parameters(format!("t = {t} must exceed 1")));
    }
    if lp.support.exponents() != [0, sup.p(), sup.d()] {
        return Err(TropicalError::Parameters(format!("loop support {} is not {{0,{},{}}}", lp.support, sup.p(), sup.d())));
    }
    check_loop(lp, sup)?;
    let log_t = t.ln();
    let log_k = realize_constant(sup, side).ln();
    let scaled = match side {
        RealizeSide::First => 1,
        RealizeSide::Second => 2,
    };
    let map = |path: &CoeffPath, k: f64| -> Result<CoeffPath, TropicalError> {
        let f = |l: Complex64| Complex64::new(k + l.re * log_t, l.im);
        match *path {
            CoeffPath::Const { c } => Ok(CoeffPath::constant(f(c.ln()).exp())),
            CoeffPath::ExpLine { from, to } => Ok(CoeffPath::exp_line(f(from), f(to))),
            CoeffPath::Linear { .. } => Err(TropicalError::Parameters("linear segments cannot be realised".into())),
        }
    };
    let segments = lp
        .segments
        .iter()
        .map(|seg| {
            if !seg.paths[0].is_constant(Complex64::new(1.0, 0.0)) {
                return Err(TropicalError::Parameters("the constant coefficient must be 1".into()));
            }
            let paths = seg
                .paths
                .iter()
                .enumerate()
                .map(|(i, path)| match i {
                    0 => Ok(*path),
                    _ => map(path, if i == scaled { log_k } else { 0.0 }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Segment::new(seg.label.clone(), paths))
        })
        .collect::<Result<Vec<_>, TropicalError>>()?;
    CoefficientLoop::new(lp.support.clone(), segments).map_err(invalid)
}
