//! Loops realising `τ` and every `b_j` in the image of `μ_A^★`.
//!
//! All loops are based at the hub `x^d + 1`, whose roots are evenly
//! distributed. The atom `b_{k,j}`, `k = d / gcd(p, d)`, is the pullback
//! along `x ↦ x^{gcd(p,d)}` of the realised loop `ℓ_j` of the trinomial
//! `{0, p/g, d/g}`, embedded into `A` and joined to the hub by shrinking the
//! middle coefficient to zero. Words over the atoms come from
//! [`generation_witness`]; their `τ`-conjugations are pushed onto the atoms,
//! so the `b_j` loops keep `c_0 = c_d = 1` throughout.

use std::collections::HashMap;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use super::{monodromy, TrackParams};
use crate::annular::AnnularWord;
use crate::error::{TrackError, WitnessError};
use crate::loops::{CoeffPath, CoefficientLoop, FewnomialSupport, Segment};
use crate::simple::{generation_witness, Expr, GeneratorWord};
use crate::tropical::{default_epsilon, ell_j_loop, monomial_loop, realize, RealizeSide, TrinomialSupport};

#[derive(Clone, Debug, Serialize)]
pub struct WitnessLoop {
    /// `"t"` or `"b<j>"`.
    pub target: String,
    pub expected: AnnularWord,
    #[serde(skip)]
    pub lp: CoefficientLoop,
    pub segments: usize,
    pub monodromy: AnnularWord,
    pub verified: bool,
    /// The loop stays in `{c_0 = c_d = 1}`.
    pub fixes_extremes: bool,
}

/// Coefficients of `x^d + 1` over `sup`.
pub fn hub_point(sup: &FewnomialSupport) -> Vec<Complex64> {
    let d = sup.d();
    sup.exponents().iter().map(|&e| if e == 0 || e == d { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect()
}

struct Atoms<'a> {
    sup: &'a FewnomialSupport,
    /// an inner exponent for each class `k`
    exponent: HashMap<usize, usize>,
    cache: HashMap<(usize, usize), Vec<Segment>>,
}

impl Atoms<'_> {
    /// Loop segments of `b_{k,j}`, based at the hub.
    fn atom(&mut self, k: usize, j: usize) -> Result<Vec<Segment>, WitnessError> {
        let j = (j as i64 - 1).rem_euclid(k as i64) as usize + 1;
        if let Some(s) = self.cache.get(&(k, j)) {
            return Ok(s.clone());
        }
        let d = self.sup.d();
        let p = *self.exponent.get(&k).ok_or_else(|| WitnessError::Mismatch { target: format!("b({k},{j})"), got: "no exponent of this class".into() })?;
        let g = p.gcd(&d);
        let tri = TrinomialSupport::new(p / g, d / g).map_err(|e| TrackError::InvalidLoop(e.to_string()))?;
        let ell = ell_j_loop(&tri, default_epsilon(d / g), j).map_err(|e| TrackError::InvalidLoop(e.to_string()))?;
        let real = realize(&ell, &tri, std::f64::consts::E, RealizeSide::First).map_err(|e| TrackError::InvalidLoop(e.to_string()))?;
        let lp = real.pullback(g).embed(self.sup)?;
        let base = lp.base_point();
        let hub = hub_point(self.sup);
        let spoke = Segment::new(
            format!("hub to b({k},{j})"),
            hub.iter().zip(&base).map(|(&h, &b)| if h == b { CoeffPath::constant(h) } else { CoeffPath::Linear { from: h, to: b } }).collect(),
        );
        let segs = lp.conjugate_by(&[spoke])?.segments;
        self.cache.insert((k, j), segs.clone());
        Ok(segs)
    }

    /// Time-ordered segments of `τ^shift ★ expr`.
    fn eval(&mut self, gw: &GeneratorWord, expr: &Expr, shift: i64, memo: &mut HashMap<(usize, i64), Vec<Segment>>) -> Result<Vec<Segment>, WitnessError> {
        let d = gw.d as i64;
        Ok(match expr {
            Expr::Atom { k, j } => self.atom(*k, (*j as i64 + shift).rem_euclid(*k as i64) as usize)?,
            Expr::Ref { step } => {
                let key = (*step, shift.rem_euclid(d));
                if let Some(s) = memo.get(&key) {
                    return Ok(s.clone());
                }
                let s = self.eval(gw, &gw.steps[*step].expr, key.1, memo)?;
                memo.insert(key, s.clone());
                s
            }
            Expr::Inv { of } => reverse(self.eval(gw, of, shift, memo)?),
            Expr::After { factors } => {
                let mut out = Vec::new();
                for f in factors.iter().rev() {
                    out.extend(self.eval(gw, f, shift, memo)?);
                }
                out
            }
            Expr::Star { g, h } => {
                // g ★ h = g ∘ h ∘ g⁻¹: first g⁻¹, then h, then g
                let g = self.eval(gw, g, shift, memo)?;
                let h = self.eval(gw, h, shift, memo)?;
                [reverse(g.clone()), h, g].concat()
            }
            Expr::Bullet { x, y } => {
                // x • y = x⁻¹ ∘ y⁻¹ ∘ x ∘ y ∘ x
                let x = self.eval(gw, x, shift, memo)?;
                let y = self.eval(gw, y, shift, memo)?;
                [x.clone(), y.clone(), x.clone(), reverse(y), reverse(x)].concat()
            }
            Expr::TauConj { m, of } => self.eval(gw, of, shift + m, memo)?,
        })
    }
}

fn reverse(segs: Vec<Segment>) -> Vec<Segment> {
    segs.iter().rev().map(Segment::reversed).collect()
}

fn check(
    target: String,
    expected: AnnularWord,
    lp: CoefficientLoop,
    sup: &FewnomialSupport,
    a: f64,
    params: &TrackParams,
) -> Result<WitnessLoop, WitnessError> {
    let word = monodromy(sup, &lp, a, params)?;
    let verified = word.equal_annular(&expected)?;
    Ok(WitnessLoop { target, expected, segments: lp.segments.len(), fixes_extremes: lp.fixes_extremes(), lp, monodromy: word, verified })
}

/// Loops based at `x^d + 1` whose monodromies are `b_1, …, b_d` and `τ`,
/// each checked by tracking.
pub fn surjectivity_witness(sup: &FewnomialSupport, a: f64, params: &TrackParams) -> Result<Vec<WitnessLoop>, WitnessError> {
    let d = sup.d();
    if !sup.is_reduced() {
        return Err(WitnessError::NonReduced(sup.exponents().to_vec(), sup.gcd()));
    }
    if sup.len() < 3 {
        return Err(WitnessError::BadSupport(sup.exponents().to_vec()));
    }
    let mut exponent = HashMap::new();
    for &p in sup.inner() {
        exponent.entry(d / p.gcd(&d)).or_insert(p);
    }
    let mut atoms = Atoms { sup, exponent, cache: HashMap::new() };
    let mut out = Vec::with_capacity(d + 1);
    for j in 1..=d {
        let gw = generation_witness(sup.exponents(), j)?;
        let last = gw.result().expect("a witness has steps");
        let segs = atoms.eval(&gw, &Expr::step(last), 0, &mut HashMap::new())?;
        let lp = CoefficientLoop::new(sup.clone(), segs)?;
        out.push(check(format!("b{j}"), AnnularWord::gen_b(j, d)?, lp, sup, a, params)?);
    }
    let tau = monomial_loop(d)?.embed(sup)?;
    out.push(check("t".into(), AnnularWord::gen_tau(d)?, tau, sup, a, params)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annular::default_cut;

    #[test]
    fn trinomial_witnesses() {
        let sup = FewnomialSupport::new(vec![0, 1, 2]).unwrap();
        let w = surjectivity_witness(&sup, default_cut(2), &TrackParams::default()).unwrap();
        assert_eq!(w.len(), 3);
        for x in &w {
            assert!(x.verified, "{} read {}", x.target, x.monodromy);
        }
        assert!(w[..2].iter().all(|x| x.fixes_extremes));
        assert!(!w[2].fixes_extremes);
    }

    #[test]
    fn refuses_non_reduced() {
        let sup = FewnomialSupport::new(vec![0, 4, 6]).unwrap();
        assert!(matches!(surjectivity_witness(&sup, 0.0, &TrackParams::default()), Err(WitnessError::NonReduced(_, 2))));
    }
}
