//! Braid monodromy of loops of fewnomials: continuation of the roots along
//! a [`CoefficientLoop`] and readout of the resulting braid in `B_d^★`.
//!
//! Consecutive samples are joined by straight lines. A step is accepted when
//! every root moves less than half the smallest gap between roots and less
//! than half its own modulus, so the straight-line interpolation is an
//! isotopy in `C^*` to the true root paths. The readout reads the events of
//! the interpolated paths in the diagram: two strands of adjacent argument
//! exchanging order, and a strand crossing the cut at angle `a`.

mod roots;
mod witness;

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::annular::{AnnularWord, Generator, Letter};
use crate::braid::ArtinWord;
use crate::error::TrackError;
use crate::loops::{CoefficientLoop, FewnomialSupport, Segment};

pub use roots::{is_nonsingular, roots};
pub use witness::{hub_point, surjectivity_witness, WitnessLoop};

/// Step control for [`track`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackParams {
    /// Uniform samples per segment before refinement.
    pub initial_samples: usize,
    /// Maximal number of bisections of an initial step.
    pub max_depth: u32,
    /// Relative accuracy of the roots.
    pub tol: f64,
    /// Smallest accepted relative gap between roots, and between a root and
    /// the origin.
    pub separation: f64,
}

impl Default for TrackParams {
    fn default() -> Self {
        Self { initial_samples: 32, max_depth: 40, tol: 1e-13, separation: 1e-9 }
    }
}

impl TrackParams {
    /// Named tolerance profiles: `default`, `fine` (tolerances halved,
    /// refinement depth and sampling doubled) and `coarse`.
    pub fn profile(name: &str) -> Option<Self> {
        let base = Self::default();
        match name {
            "default" => Some(base),
            "fine" => Some(base.finer(2)),
            "coarse" => Some(Self { initial_samples: 8, max_depth: 30, tol: 1e-11, separation: 1e-8 }),
            _ => None,
        }
    }

    /// `factor` times the sampling and refinement depth, tolerances divided
    /// by `factor`.
    pub fn finer(self, factor: usize) -> Self {
        Self {
            initial_samples: self.initial_samples * factor,
            max_depth: self.max_depth * factor as u32,
            tol: self.tol / factor as f64,
            separation: self.separation / factor as f64,
        }
    }
}

/// The roots along one segment. Column `i` of every row is strand `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackedSegment {
    pub label: String,
    pub times: Vec<f64>,
    pub roots: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootTrajectories {
    pub d: usize,
    pub segments: Vec<TrackedSegment>,
    /// `matching[i]` is the strand whose final position is the initial
    /// position of strand `i`.
    pub matching: Vec<usize>,
}

impl RootTrajectories {
    pub fn samples(&self) -> usize {
        self.segments.iter().map(|s| s.times.len()).sum()
    }

    fn rows(&self) -> impl Iterator<Item = (usize, f64, &Vec<Complex64>)> {
        self.segments.iter().enumerate().flat_map(|(k, s)| s.times.iter().zip(&s.roots).map(move |(&t, r)| (k, t, r)))
    }

    pub fn min_gap(&self) -> f64 {
        self.rows().map(|(_, _, r)| pairwise_gap(r)).fold(f64::INFINITY, f64::min)
    }

    pub fn min_modulus(&self) -> f64 {
        self.rows().flat_map(|(_, _, r)| r.iter().map(|z| z.norm())).fold(f64::INFINITY, f64::min)
    }

    pub fn start(&self) -> &[Complex64] {
        &self.segments[0].roots[0]
    }

    /// Winding numbers around the origin of each strand, by summing the
    /// argument increments between samples. For a pure braid these are
    /// integers.
    pub fn winding_numbers(&self) -> Vec<f64> {
        let mut total = vec![0.0; self.d];
        let mut prev: Option<&Vec<Complex64>> = None;
        for (_, _, r) in self.rows() {
            if let Some(p) = prev {
                for i in 0..self.d {
                    total[i] += (r[i] / p[i]).arg();
                }
            }
            prev = Some(r);
        }
        total.iter().map(|t| t / TAU).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let segments: Vec<serde_json::Value> = self
            .segments
            .iter()
            .map(|s| {
                serde_json::json!({
                    "label": s.label,
                    "times": s.times,
                    "roots": s.roots.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "schema": "fewbraid.trajectories/1", "d": self.d, "matching": self.matching, "segments": segments })
    }
}

fn pairwise_gap(z: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            gap = gap.min((z[i] - z[j]).norm());
        }
    }
    gap
}

/// Reorders `next` so that column `i` continues `prev[i]`, if every root
/// moves less than half the gap and less than half its modulus.
fn match_step(prev: &[Complex64], next: &[Complex64]) -> Option<Vec<Complex64>> {
    let gap = pairwise_gap(prev).min(pairwise_gap(next));
    let mut used = vec![false; next.len()];
    let mut out = Vec::with_capacity(prev.len());
    for &z in prev {
        let (j, dist) = next.iter().enumerate().map(|(j, w)| (j, (w - z).norm())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[j] || dist >= 0.5 * gap || dist >= 0.5 * z.norm() {
            return None;
        }
        used[j] = true;
        out.push(next[j]);
    }
    Some(out)
}

struct SegmentTracker<'a> {
    support: &'a FewnomialSupport,
    params: &'a TrackParams,
    index: usize,
    segment: &'a Segment,
}

impl SegmentTracker<'_> {
    fn solve(&self, s: f64, start: Option<&[Complex64]>) -> Result<Vec<Complex64>, TrackError> {
        roots::solve(&self.segment.eval(s), self.support, start, self.params.tol, self.params.separation, self.index, s)
    }

    fn run(&self, start: Option<&[Complex64]>) -> Result<TrackedSegment, TrackError> {
        let n = self.params.initial_samples.max(1);
        let first = self.solve(0.0, start)?;
        let first = match start {
            Some(s) => match_step(s, &first).ok_or(TrackError::Singular { segment: self.index, s: 0.0 })?,
            None => first,
        };
        let mut times = vec![0.0];
        let mut rows = vec![first];
        for k in 1..=n {
            let (s0, s1) = ((k - 1) as f64 / n as f64, k as f64 / n as f64);
            let r0 = rows.last().expect("nonempty").clone();
            self.advance(s0, &r0, s1, 0, &mut times, &mut rows)?;
        }
        Ok(TrackedSegment { label: self.segment.label.clone(), times, roots: rows })
    }

    fn advance(&self, s0: f64, r0: &[Complex64], s1: f64, depth: u32, times: &mut Vec<f64>, rows: &mut Vec<Vec<Complex64>>) -> Result<(), TrackError> {
        let r1 = self.solve(s1, Some(r0))?;
        if let Some(m) = match_step(r0, &r1) {
            times.push(s1);
            rows.push(m);
            return Ok(());
        }
        if depth >= self.params.max_depth {
            return Err(TrackError::RefinementExhausted { segment: self.index, s0, s1 });
        }
        let mid = 0.5 * (s0 + s1);
        self.advance(s0, r0, mid, depth + 1, times, rows)?;
        let rm = rows.last().expect("just pushed").clone();
        self.advance(mid, &rm, s1, depth + 1, times, rows)
    }
}

/// Continues the roots along every segment of the loop. Identical segments
/// are tracked once.
pub fn track(lp: &CoefficientLoop, params: &TrackParams) -> Result<RootTrajectories, TrackError> {
    let d = lp.support.d();
    let mut cache: HashMap<String, TrackedSegment> = HashMap::new();
    let mut segments: Vec<TrackedSegment> = Vec::with_capacity(lp.segments.len());
    for (index, segment) in lp.segments.iter().enumerate() {
        let key = serde_json::to_string(segment).expect("segments serialise");
        let tracked = match cache.get(&key) {
            Some(t) => t.clone(),
            None => {
                let t = SegmentTracker { support: &lp.support, params, index, segment }.run(None)?;
                cache.insert(key, t.clone());
                t
            }
        };
        let tracked = match segments.last() {
            None => tracked,
            Some(prev) => {
                let end = prev.roots.last().expect("nonempty");
                let perm = permutation_onto(end, &tracked.roots[0]).ok_or(TrackError::Singular { segment: index, s: 0.0 })?;
                TrackedSegment {
                    label: tracked.label,
                    times: tracked.times,
                    roots: tracked.roots.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect(),
                }
            }
        };
        segments.push(tracked);
    }
    let start = &segments[0].roots[0];
    let end = segments.last().expect("a loop has segments").roots.last().expect("nonempty");
    let matching = permutation_onto(end, start).ok_or(TrackError::InvalidLoop("the loop does not close".into()))?;
    Ok(RootTrajectories { d, segments, matching })
}

/// `perm` with `to[perm[i]]` the point of `to` at `from[i]`.
fn permutation_onto(from: &[Complex64], to: &[Complex64]) -> Option<Vec<usize>> {
    let gap = pairwise_gap(from);
    let mut used = vec![false; to.len()];
    let mut perm = Vec::with_capacity(from.len());
    for &z in from {
        let (j, dist) = to.iter().enumerate().map(|(j, w)| (j, (w - z).norm())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[j] || dist > 1e-6 * gap.max(z.norm()) {
            return None;
        }
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

/// Result of a readout, with the frame it was read in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Readout {
    pub word: AnnularWord,
    /// Left end `a` of the argument window `[a, a + 2π)`.
    pub frame: f64,
    /// Strands in slot order at the base point.
    pub base_order: Vec<usize>,
    /// Arguments of the base point roots, in slot order.
    pub base_arguments: Vec<f64>,
    /// Braid identifying the base configuration with the evenly distributed
    /// one. Any configuration with distinct arguments off the cut lies in
    /// the contractible cell of its slot order, so this is trivial.
    pub alignment: AnnularWord,
}

enum Event {
    Swap(usize, usize),
    Cut(usize, bool),
}

fn window_arg(z: Complex64, a: f64) -> f64 {
    let w = (z.arg() - a).rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn slot_order(z: &[Complex64], a: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    // ties put the larger index first, as `before` does
    order.sort_by(|&i, &j| window_arg(z[i], a).total_cmp(&window_arg(z[j], a)).then(j.cmp(&i)));
    order
}

/// Real roots of `c0 + c1 s + c2 s^2` in `[0, 1]`.
fn crossings(c0: f64, c1: f64, c2: f64) -> Vec<f64> {
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    let (c0, c1, c2) = (c0 / scale, c1 / scale, c2 / scale);
    let mut out = Vec::new();
    if c2.abs() < 1e-14 {
        if c1 != 0.0 {
            out.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc < 0.0 {
            return Vec::new();
        }
        let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
        out.push(q / c2);
        if q != 0.0 {
            out.push(c0 / q);
        }
    }
    out.retain(|&s| (0.0..=1.0).contains(&s));
    out.sort_by(f64::total_cmp);
    out
}

/// Keeps `parity` events out of the solved times: the number of events is
/// decided by the endpoint states, which neighbouring intervals share, and
/// the solved times only order them. Times on the boundary are the ones
/// dropped, or used when nothing was solved.
fn settle(mut times: Vec<f64>, parity: bool) -> Vec<f64> {
    if times.len() % 2 == parity as usize {
        return times;
    }
    if times.is_empty() {
        return vec![1.0];
    }
    let edge = |s: f64| s.min(1.0 - s);
    let k = (0..times.len()).min_by(|&x, &y| edge(times[x]).total_cmp(&edge(times[y]))).expect("nonempty");
    times.remove(k);
    times
}

fn interval_events(z0: &[Complex64], z1: &[Complex64], a: f64) -> Vec<(f64, Event)> {
    let d = z0.len();
    let v: Vec<Complex64> = z0.iter().zip(z1).map(|(a, b)| b - a).collect();
    let at = |i: usize, s: f64| z0[i] + v[i] * s;
    let (w0, w1): (Vec<f64>, Vec<f64>) = (z0.iter().map(|z| window_arg(*z, a)).collect(), z1.iter().map(|z| window_arg(*z, a)).collect());
    // steps move each root by less than half its modulus, so arguments
    // change by less than π/6 and a jump of more than π is a cut crossing
    let cut: Vec<Option<bool>> = (0..d)
        .map(|i| {
            if w0[i] > w1[i] + std::f64::consts::PI {
                Some(true)
            } else if w1[i] > w0[i] + std::f64::consts::PI {
                Some(false)
            } else {
                None
            }
        })
        .collect();
    let rot = Complex64::from_polar(1.0, -a);
    let mut events = Vec::new();
    for i in 0..d {
        if let Some(ccw) = cut[i] {
            let (g0, g1) = ((z0[i] * rot).im, (v[i] * rot).im);
            let s = crossings(g0, g1, 0.0).into_iter().find(|&s| (at(i, s) * rot).re > 0.0).unwrap_or(1.0);
            events.push((s, Event::Cut(i, ccw)));
        }
        for j in i + 1..d {
            // i < j comes first iff its window argument is strictly smaller
            let flips = (w0[i] < w0[j]) != (w1[i] < w1[j]);
            let parity = flips ^ cut[i].is_some() ^ cut[j].is_some();
            let c0 = (z0[i] * z0[j].conj()).im;
            let c1 = (z0[i] * v[j].conj() + v[i] * z0[j].conj()).im;
            let c2 = (v[i] * v[j].conj()).im;
            let times: Vec<f64> = crossings(c0, c1, c2).into_iter().filter(|&s| (at(i, s) * at(j, s).conj()).re > 0.0).collect();
            for s in settle(times, parity) {
                events.push((s, Event::Swap(i, j)));
            }
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    events
}

/// Reads the braid of the trajectories in the window `[a, a + 2π)`.
pub fn braid_readout(traj: &RootTrajectories, a: f64) -> Result<AnnularWord, TrackError> {
    Ok(readout(traj, a)?.word)
}

/// Frame offsets tried when the diagram in the requested frame is
/// degenerate, e.g. two strands crossing the cut together. The braid class
/// does not depend on the frame as long as no base root lies in between.
const FRAME_NUDGES: [f64; 6] = [1e-6, -1e-6, 1e-4, -1e-4, 1e-2, -1e-2];

pub fn readout(traj: &RootTrajectories, a: f64) -> Result<Readout, TrackError> {
    let first = match readout_in(traj, a) {
        Err(e @ TrackError::ArgumentCollision { .. }) => e,
        other => return other,
    };
    let base = traj.start();
    for delta in FRAME_NUDGES {
        let (lo, hi) = (a.min(a + delta), a.max(a + delta));
        if base.iter().any(|z| window_arg(*z, lo) <= hi - lo) {
            continue;
        }
        if let Ok(r) = readout_in(traj, a + delta) {
            return Ok(r);
        }
    }
    Err(first)
}

fn readout_in(traj: &RootTrajectories, a: f64) -> Result<Readout, TrackError> {
    let d = traj.d;
    let base = traj.start();
    let mut order = slot_order(base, a);
    let base_arguments: Vec<f64> = order.iter().map(|&i| a + window_arg(base[i], a)).collect();
    let distinct = base_arguments.windows(2).all(|w| w[1] - w[0] > 1e-12) && base_arguments[0] - a > 1e-12 && a + TAU - base_arguments[d - 1] > 1e-12;
    if !distinct {
        return Err(TrackError::ArgumentCollision { segment: 0, s: 0.0 });
    }
    let base_order = order.clone();
    let mut letters = Vec::new();
    let mut pos = vec![0usize; d];
    let place = |order: &[usize], pos: &mut Vec<usize>| {
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
    };
    place(&order, &mut pos);
    let mut prev: Option<(usize, f64, &Vec<Complex64>)> = None;
    for (seg, t, row) in traj.rows() {
        if let Some((pseg, pt, z0)) = prev {
            let stamp = if pseg == seg { pt } else { 0.0 };
            let collision = TrackError::ArgumentCollision { segment: seg, s: stamp };
            for (s, ev) in interval_events(z0, row, a) {
                match ev {
                    Event::Swap(i, j) => {
                        let (lo, hi) = if pos[i] < pos[j] { (i, j) } else { (j, i) };
                        if pos[hi] != pos[lo] + 1 {
                            return Err(collision);
                        }
                        let zl = z0[lo] + (row[lo] - z0[lo]) * s;
                        let zh = z0[hi] + (row[hi] - z0[hi]) * s;
                        let k = pos[lo];
                        letters.push(Letter::new(Generator::B(k + 1), zl.norm() >= zh.norm()));
                        order.swap(k, k + 1);
                    }
                    Event::Cut(i, ccw) => {
                        if ccw && pos[i] == d - 1 {
                            letters.push(Letter::new(Generator::Tau, false));
                            order.rotate_right(1);
                        } else if !ccw && pos[i] == 0 {
                            letters.push(Letter::new(Generator::Tau, true));
                            order.rotate_left(1);
                        } else {
                            return Err(collision);
                        }
                    }
                }
                place(&order, &mut pos);
            }
            if order != slot_order(row, a) {
                return Err(collision);
            }
        }
        prev = Some((seg, t, row));
    }
    let word = AnnularWord::new(d, letters)?;
    Ok(Readout { word, frame: a, base_order, base_arguments, alignment: AnnularWord::identity(d)? })
}

/// `μ_A^★` of the loop, read in the window `[a, a + 2π)`.
pub fn monodromy(sup: &FewnomialSupport, lp: &CoefficientLoop, a: f64, params: &TrackParams) -> Result<AnnularWord, TrackError> {
    if &lp.support != sup {
        return Err(TrackError::InvalidLoop(format!("loop support {} differs from {sup}", lp.support)));
    }
    braid_readout(&track(lp, params)?, a)
}

/// `μ_A`: the monodromy with the puncture filled in.
pub fn monodromy_disk(sup: &FewnomialSupport, lp: &CoefficientLoop, a: f64, params: &TrackParams) -> Result<ArtinWord, TrackError> {
    Ok(monodromy(sup, lp, a, params)?.project_to_disk())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annular::default_cut;
    use crate::loops::CoeffPath;
    use crate::tropical::{monomial_loop, tau_loop, TrinomialSupport};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_loop_is_trivial() {
        let sup = FewnomialSupport::new(vec![0, 3, 7]).unwrap();
        let seg = Segment::new("still", vec![CoeffPath::constant(c(1.0, 0.0)), CoeffPath::constant(c(-0.3, 0.1)), CoeffPath::constant(c(1.0, 0.0))]);
        let lp = CoefficientLoop::new(sup.clone(), vec![seg]).unwrap();
        let traj = track(&lp, &TrackParams::default()).unwrap();
        assert_eq!(traj.matching, (0..7).collect::<Vec<_>>());
        for s in &traj.segments[0].roots {
            assert!(s.iter().zip(traj.start()).all(|(x, y)| (x - y).norm() < 1e-12));
        }
        assert!(braid_readout(&traj, default_cut(7)).unwrap().is_empty());
    }

    #[test]
    fn monomial_loop_reads_tau() {
        for d in [2usize, 3, 7] {
            let lp = monomial_loop(d).unwrap();
            let w = monodromy(&lp.support.clone(), &lp, default_cut(d), &TrackParams::default()).unwrap();
            assert_eq!(w.to_string(), "t", "d = {d}");
        }
    }

    #[test]
    fn tau_loop_roots_turn_by_one_slot() {
        let sup = TrinomialSupport::new(3, 7).unwrap();
        let lp = crate::tropical::realize(&tau_loop(&sup, 0.1 / 7.0).unwrap(), &sup, std::f64::consts::E, crate::tropical::RealizeSide::First).unwrap();
        let traj = track(&lp, &TrackParams::default()).unwrap();
        // the roots are permuted cyclically and their product turns once
        let total: f64 = traj.winding_numbers().iter().sum();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
        let mut i = 0;
        for k in 1..=7 {
            i = traj.matching[i];
            assert_eq!(i == 0, k == 7);
        }
        let w = braid_readout(&traj, default_cut(7)).unwrap();
        assert!(w.equal_annular(&AnnularWord::gen_tau(7).unwrap()).unwrap(), "{w}");
    }

    #[test]
    fn loop_and_reverse_cancel() {
        let lp = monomial_loop(4).unwrap();
        let both = lp.concat(&lp.reversed()).unwrap();
        let w = monodromy(&both.support.clone(), &both, default_cut(4), &TrackParams::default()).unwrap();
        assert!(w.is_trivial());
    }

    #[test]
    fn crossing_roots() {
        assert_eq!(crossings(-1.0, 2.0, 0.0), vec![0.5]);
        assert!(crossings(1.0, 2.0, 0.0).is_empty());
        let r = crossings(0.09, -1.0, 1.0);
        assert!((r[0] - 0.1).abs() < 1e-12 && (r[1] - 0.9).abs() < 1e-12);
        assert!(crossings(1.0, 0.0, 1.0).is_empty());
        assert_eq!(settle(vec![], true), vec![1.0]);
        assert_eq!(settle(vec![0.3, 0.999], true), vec![0.3]);
        assert!(settle(vec![1.0], false).is_empty());
    }

    #[test]
    fn profiles() {
        let fine = TrackParams::profile("fine").unwrap();
        assert_eq!(fine.initial_samples, 2 * TrackParams::default().initial_samples);
        assert!(TrackParams::profile("nope").is_none());
    }
}
