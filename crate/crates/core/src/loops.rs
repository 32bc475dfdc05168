//! Fewnomial supports and piecewise-analytic loops of coefficient vectors.

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{TrackError, WitnessError};

/// Relative tolerance for matching segment endpoints.
const JOIN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FewnomialSupport {
    exponents: Vec<usize>,
}

impl FewnomialSupport {
    pub fn new(mut exponents: Vec<usize>) -> Result<Self, WitnessError> {
        exponents.sort_unstable();
        exponents.dedup();
        if exponents.first() != Some(&0) || exponents.len() < 2 {
            return Err(WitnessError::BadSupport(exponents));
        }
        Ok(Self { exponents })
    }

    pub fn trinomial(p: usize, d: usize) -> Result<Self, WitnessError> {
        if p == 0 || p >= d {
            return Err(WitnessError::BadSupport(vec![0, p, d]));
        }
        Self::new(vec![0, p, d])
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The degree, i.e. the number of roots in `C^*`.
    pub fn d(&self) -> usize {
        *self.exponents.last().expect("non-empty")
    }

    pub fn gcd(&self) -> usize {
        self.exponents.iter().fold(0, |g, &e| g.gcd(&e))
    }

    pub fn is_reduced(&self) -> bool {
        self.gcd() == 1
    }

    /// `(A, b)` with `self = b A` and `A` reduced.
    pub fn reduce(&self) -> (FewnomialSupport, usize) {
        let b = self.gcd();
        (Self { exponents: self.exponents.iter().map(|e| e / b).collect() }, b)
    }

    pub fn scale(&self, b: usize) -> FewnomialSupport {
        Self { exponents: self.exponents.iter().map(|e| e * b).collect() }
    }

    /// The exponents strictly between `0` and `d`.
    pub fn inner(&self) -> &[usize] {
        &self.exponents[1..self.exponents.len() - 1]
    }

    pub fn position(&self, e: usize) -> Option<usize> {
        self.exponents.binary_search(&e).ok()
    }

    /// Dense coefficients `a_0, …, a_d` of the polynomial with the given
    /// sparse coefficients.
    pub fn dense(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.d() + 1];
        for (&e, &c) in self.exponents.iter().zip(coeffs) {
            out[e] = c;
        }
        out
    }
}

impl TryFrom<Vec<usize>> for FewnomialSupport {
    type Error = WitnessError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<FewnomialSupport> for Vec<usize> {
    fn from(s: FewnomialSupport) -> Self {
        s.exponents
    }
}

impl std::fmt::Display for FewnomialSupport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One coefficient as a function of `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoeffPath {
    Const {
        c: Complex64,
    },
    /// `exp((1 − s) L_0 + s L_1)`. The imaginary parts are not reduced, so
    /// the path may wind around the origin.
    ExpLine {
        from: Complex64,
        to: Complex64,
    },
    Linear {
        from: Complex64,
        to: Complex64,
    },
}

impl CoeffPath {
    pub fn constant(c: Complex64) -> Self {
        CoeffPath::Const { c }
    }

    pub fn exp_line(from: Complex64, to: Complex64) -> Self {
        CoeffPath::ExpLine { from, to }
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        match *self {
            CoeffPath::Const { c } => c,
            CoeffPath::ExpLine { from, to } => (from * (1.0 - s) + to * s).exp(),
            CoeffPath::Linear { from, to } => from * (1.0 - s) + to * s,
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            CoeffPath::Const { c } => CoeffPath::Const { c },
            CoeffPath::ExpLine { from, to } => CoeffPath::ExpLine { from: to, to: from },
            CoeffPath::Linear { from, to } => CoeffPath::Linear { from: to, to: from },
        }
    }

    /// Whether the coefficient is identically `c`.
    pub fn is_constant(&self, c: Complex64) -> bool {
        let close = |z: Complex64| (z - c).norm() <= JOIN_TOL * (1.0 + c.norm());
        match *self {
            CoeffPath::Const { c: v } => close(v),
            CoeffPath::ExpLine { from, to } => from == to && close(from.exp()),
            CoeffPath::Linear { from, to } => close(from) && close(to),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub label: String,
    /// One path per exponent of the support.
    pub paths: Vec<CoeffPath>,
}

impl Segment {
    pub fn new(label: impl Into<String>, paths: Vec<CoeffPath>) -> Self {
        Self { label: label.into(), paths }
    }

    pub fn eval(&self, s: f64) -> Vec<Complex64> {
        self.paths.iter().map(|p| p.eval(s)).collect()
    }

    pub fn reversed(&self) -> Self {
        Self { label: format!("{}^-1", self.label), paths: self.paths.iter().map(CoeffPath::reversed).collect() }
    }

    /// Straight line between two coefficient vectors.
    pub fn linear(label: impl Into<String>, from: &[Complex64], to: &[Complex64]) -> Self {
        Self::new(label, from.iter().zip(to).map(|(&f, &t)| CoeffPath::Linear { from: f, to: t }).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientLoop {
    pub support: FewnomialSupport,
    pub segments: Vec<Segment>,
}

fn close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= JOIN_TOL * (1.0 + x.norm().max(y.norm())))
}

impl CoefficientLoop {
    /// Checks that consecutive segments join and that the loop closes.
    pub fn new(support: FewnomialSupport, segments: Vec<Segment>) -> Result<Self, TrackError> {
        if segments.is_empty() {
            return Err(TrackError::InvalidLoop("no segments".into()));
        }
        for (i, s) in segments.iter().enumerate() {
            if s.paths.len() != support.len() {
                return Err(TrackError::InvalidLoop(format!("segment {i} has {} coefficients for {} exponents", s.paths.len(), support.len())));
            }
        }
        for i in 0..segments.len() {
            let next = &segments[(i + 1) % segments.len()];
            if !close(&segments[i].eval(1.0), &next.eval(0.0)) {
                return Err(TrackError::InvalidLoop(format!("segment {i} does not end where the next one starts")));
            }
        }
        Ok(Self { support, segments })
    }

    pub fn base_point(&self) -> Vec<Complex64> {
        self.segments[0].eval(0.0)
    }

    pub fn eval(&self, segment: usize, s: f64) -> Vec<Complex64> {
        self.segments[segment].eval(s)
    }

    pub fn reversed(&self) -> Self {
        Self { support: self.support.clone(), segments: self.segments.iter().rev().map(Segment::reversed).collect() }
    }

    /// `self` followed by `other`; both must start at the same point.
    pub fn concat(&self, other: &CoefficientLoop) -> Result<Self, TrackError> {
        if self.support != other.support {
            return Err(TrackError::InvalidLoop("loops over different supports".into()));
        }
        if !close(&self.base_point(), &other.base_point()) {
            return Err(TrackError::InvalidLoop("loops with different base points".into()));
        }
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Ok(Self { support: self.support.clone(), segments })
    }

    /// `path · self · path⁻¹`: the loop transported along an open path that
    /// ends at the base point of `self`.
    pub fn conjugate_by(&self, path: &[Segment]) -> Result<Self, TrackError> {
        let mut segments: Vec<Segment> = path.to_vec();
        segments.extend(self.segments.iter().cloned());
        segments.extend(path.iter().rev().map(Segment::reversed));
        Self::new(self.support.clone(), segments)
    }

    /// The same coefficients on the support `b A`: the loop of `p(x^b)`.
    pub fn pullback(&self, b: usize) -> Self {
        Self { support: self.support.scale(b), segments: self.segments.clone() }
    }

    /// The loop inside a larger support, the new coefficients set to zero.
    pub fn embed(&self, into: &FewnomialSupport) -> Result<Self, TrackError> {
        let mut index = Vec::with_capacity(into.len());
        for &e in into.exponents() {
            index.push(self.support.position(e));
        }
        for &e in self.support.exponents() {
            if into.position(e).is_none() {
                return Err(TrackError::InvalidLoop(format!("exponent {e} is not in {into}")));
            }
        }
        if into.d() != self.support.d() {
            return Err(TrackError::InvalidLoop("embedding must keep the degree".into()));
        }
        let zero = CoeffPath::constant(Complex64::new(0.0, 0.0));
        let segments = self.segments.iter().map(|s| Segment::new(s.label.clone(), index.iter().map(|i| i.map_or(zero, |i| s.paths[i])).collect())).collect();
        Ok(Self { support: into.clone(), segments })
    }

    /// Whether the constant and leading coefficients are identically one.
    pub fn fixes_extremes(&self) -> bool {
        let one = Complex64::new(1.0, 0.0);
        let last = self.support.len() - 1;
        self.segments.iter().all(|s| s.paths[0].is_constant(one) && s.paths[last].is_constant(one))
    }

    /// `n` samples per segment plus the closing point.
    pub fn samples(&self, n: usize) -> Vec<Vec<Complex64>> {
        let n = n.max(1);
        let mut out = Vec::with_capacity(self.segments.len() * n + 1);
        for seg in &self.segments {
            for i in 0..n {
                out.push(seg.eval(i as f64 / n as f64));
            }
        }
        out.push(self.base_point());
        out
    }

    pub fn to_json(&self, samples_per_segment: usize) -> serde_json::Value {
        serde_json::json!({
            "schema": "fewbraid.coefficient_loop/1",
            "support": self.support,
            "segments": self.segments,
            "samples": self.samples(samples_per_segment).iter().map(|v| v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle_loop() -> CoefficientLoop {
        let one = CoeffPath::constant(c(1.0, 0.0));
        let seg = Segment::new("circle", vec![CoeffPath::exp_line(c(0.0, std::f64::consts::PI), c(0.0, 3.0 * std::f64::consts::PI)), one]);
        CoefficientLoop::new(FewnomialSupport::new(vec![0, 3]).unwrap(), vec![seg]).unwrap()
    }

    #[test]
    fn support_reduction() {
        let b = FewnomialSupport::new(vec![6, 0, 4]).unwrap();
        assert_eq!(b.exponents(), &[0, 4, 6]);
        assert_eq!(b.gcd(), 2);
        let (a, g) = b.reduce();
        assert_eq!(a.exponents(), &[0, 2, 3]);
        assert_eq!(g, 2);
        assert!(a.is_reduced());
        assert_eq!(a.inner(), &[2]);
        assert!(FewnomialSupport::new(vec![1, 2]).is_err());
        assert!(FewnomialSupport::new(vec![0]).is_err());
    }

    #[test]
    fn winding_exp_line_closes() {
        let l = circle_loop();
        assert!((l.eval(0, 0.5)[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(!l.fixes_extremes());
        assert_eq!(l.samples(4).len(), 5);
    }

    #[test]
    fn open_segments_are_rejected() {
        let seg = Segment::linear("open", &[c(1.0, 0.0), c(1.0, 0.0)], &[c(2.0, 0.0), c(1.0, 0.0)]);
        assert!(CoefficientLoop::new(FewnomialSupport::new(vec![0, 2]).unwrap(), vec![seg]).is_err());
    }

    #[test]
    fn embed_and_pullback() {
        let l = circle_loop();
        let big = FewnomialSupport::new(vec![0, 1, 3]).unwrap();
        let e = l.embed(&big).unwrap();
        assert_eq!(e.eval(0, 0.3)[1], c(0.0, 0.0));
        assert_eq!(l.pullback(2).support.exponents(), &[0, 6]);
        assert!(l.embed(&FewnomialSupport::new(vec![0, 1, 4]).unwrap()).is_err());
    }

    #[test]
    fn reverse_and_concat() {
        let l = circle_loop();
        let r = l.reversed();
        assert!((r.eval(0, 0.25)[0] - l.eval(0, 0.75)[0]).norm() < 1e-12);
        assert_eq!(l.concat(&r).unwrap().segments.len(), 2);
    }

    #[test]
    fn json_carries_schema() {
        let v = circle_loop().to_json(2);
        assert_eq!(v["schema"], "fewbraid.coefficient_loop/1");
        assert_eq!(v["samples"].as_array().unwrap().len(), 3);
        let back: CoefficientLoop = serde_json::from_value(serde_json::to_value(circle_loop()).unwrap()).unwrap();
        assert_eq!(back, circle_loop());
    }
}
