//! The braid group `B_d^★` of `d` points in the punctured plane `C^*`.
//!
//! Words are read left to right in time, like [`ArtinWord`]. Points sit in
//! the fundamental domain `[a, a + 2π)` of the argument and are numbered
//! `1..=d` by increasing argument. `τ` rotates every point counterclockwise
//! by one slot, so the point in slot `d` crosses the cut at angle `a` and
//! lands in slot 1. The positive generator `b_j` exchanges slots `j` and
//! `j + 1` by a clockwise half-twist, the point moving counterclockwise
//! passing closer to the puncture. `r_1` carries the point in slot 1 once
//! around the puncture and back.
//!
//! The paper-style product `g∘h` (first `h`, then `g`) is [`AnnularWord::after`].

mod wreath;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::ArtinWord;
use crate::error::AnnularError;

pub use wreath::{wreath_image, WreathElement};

/// Default left end of the fundamental domain of the argument.
pub fn default_cut(d: usize) -> f64 {
    -2.0 * std::f64::consts::PI / d as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Tau,
    B(usize),
    R(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lower, index) = match self.gen {
            Generator::Tau => ("t", None),
            Generator::B(j) => ("b", Some(j)),
            Generator::R(j) => ("r", Some(j)),
        };
        let head = if self.inverse { lower.to_uppercase() } else { lower.to_string() };
        match index {
            Some(j) => write!(f, "{head}{j}"),
            None => write!(f, "{head}"),
        }
    }
}

impl FromStr for Letter {
    type Err = AnnularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AnnularError::BadLetter(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let inverse = head.is_ascii_uppercase();
        let gen = match head.to_ascii_lowercase() {
            't' if rest.is_empty() => Generator::Tau,
            'b' => Generator::B(rest.parse().map_err(|_| bad())?),
            'r' => Generator::R(rest.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(Self { gen, inverse })
    }
}

/// Letters after expansion: `b_j` with `j < d` and `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Basic {
    B(usize, bool),
    Tau(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAnnularWord", into = "RawAnnularWord")]
pub struct AnnularWord {
    d: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct RawAnnularWord {
    d: usize,
    w: Vec<String>,
}

impl TryFrom<RawAnnularWord> for AnnularWord {
    type Error = AnnularError;

    fn try_from(raw: RawAnnularWord) -> Result<Self, Self::Error> {
        let letters = raw.w.iter().map(|s| s.parse()).collect::<Result<Vec<Letter>, _>>()?;
        AnnularWord::new(raw.d, letters)
    }
}

impl From<AnnularWord> for RawAnnularWord {
    fn from(w: AnnularWord) -> Self {
        RawAnnularWord { d: w.d, w: w.letters.iter().map(|l| l.to_string()).collect() }
    }
}

impl AnnularWord {
    pub fn new(d: usize, letters: Vec<Letter>) -> Result<Self, AnnularError> {
        if d == 0 {
            return Err(AnnularError::Degree(d));
        }
        for l in &letters {
            match l.gen {
                Generator::Tau => {}
                Generator::B(_) if d == 1 => return Err(AnnularError::NoBGenerators),
                Generator::B(j) | Generator::R(j) => {
                    if j == 0 || j > d {
                        return Err(AnnularError::IndexOutOfRange { index: j, d });
                    }
                }
            }
        }
        Ok(Self { d, letters })
    }

    /// Parses a whitespace separated list such as `"t b1 B3 r2 T"`.
    pub fn parse(d: usize, text: &str) -> Result<Self, AnnularError> {
        let letters = text.split_whitespace().map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Self::new(d, letters)
    }

    pub fn identity(d: usize) -> Result<Self, AnnularError> {
        Self::new(d, Vec::new())
    }

    pub fn gen_b(j: usize, d: usize) -> Result<Self, AnnularError> {
        Self::new(d, vec![Letter::new(Generator::B(j), false)])
    }

    pub fn gen_r(j: usize, d: usize) -> Result<Self, AnnularError> {
        Self::new(d, vec![Letter::new(Generator::R(j), false)])
    }

    pub fn gen_tau(d: usize) -> Result<Self, AnnularError> {
        Self::new(d, vec![Letter::new(Generator::Tau, false)])
    }

    pub fn tau_power(d: usize, m: i64) -> Result<Self, AnnularError> {
        let l = Letter::new(Generator::Tau, m < 0);
        Self::new(d, vec![l; m.unsigned_abs() as usize])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &AnnularWord) -> Result<(), AnnularError> {
        if self.d != other.d {
            return Err(AnnularError::DegreeMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &AnnularWord) -> Result<AnnularWord, AnnularError> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { d: self.d, letters })
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn after(&self, other: &AnnularWord) -> Result<AnnularWord, AnnularError> {
        other.compose(self)
    }

    pub fn invert(&self) -> AnnularWord {
        Self { d: self.d, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, e: i64) -> AnnularWord {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Self { d: self.d, letters }
    }

    /// `g ★ h = g ∘ h ∘ g⁻¹`.
    pub fn star(g: &AnnularWord, h: &AnnularWord) -> Result<AnnularWord, AnnularError> {
        g.invert().compose(h)?.compose(g)
    }

    /// `x • y = x⁻¹ ∘ y⁻¹ ∘ x ∘ y ∘ x`.
    pub fn bullet(x: &AnnularWord, y: &AnnularWord) -> Result<AnnularWord, AnnularError> {
        x.compose(y)?.compose(x)?.compose(&y.invert())?.compose(&x.invert())
    }

    /// `τ^m ★ self`.
    pub fn tau_conjugate(&self, m: i64) -> AnnularWord {
        let t = Self::tau_power(self.d, m).expect("degree already checked");
        Self::star(&t, self).expect("same degree")
    }

    pub fn free_reduce(&self) -> AnnularWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { d: self.d, letters: out }
    }

    fn basic(&self) -> Vec<Basic> {
        let d = self.d;
        let mut out = Vec::new();
        let taus = |out: &mut Vec<Basic>, m: i64| {
            for _ in 0..m.unsigned_abs() {
                out.push(Basic::Tau(m < 0));
            }
        };
        for l in &self.letters {
            let mut piece = Vec::new();
            match l.gen {
                Generator::Tau => piece.push(Basic::Tau(false)),
                Generator::B(j) if j < d => piece.push(Basic::B(j, false)),
                Generator::B(_) => {
                    taus(&mut piece, -1);
                    piece.push(Basic::B(d - 1, false));
                    taus(&mut piece, 1);
                }
                Generator::R(j) => {
                    taus(&mut piece, -(j as i64 - 1));
                    piece.extend((1..d).map(|k| Basic::B(k, false)));
                    piece.push(Basic::Tau(false));
                    taus(&mut piece, j as i64 - 1);
                }
            }
            if l.inverse {
                out.extend(piece.into_iter().rev().map(|b| match b {
                    Basic::B(j, s) => Basic::B(j, !s),
                    Basic::Tau(s) => Basic::Tau(!s),
                }));
            } else {
                out.extend(piece);
            }
        }
        out
    }

    /// Rewrites the word using only `τ^{±1}` and `b_j^{±1}` with `j < d`.
    pub fn expand(&self) -> AnnularWord {
        let letters = self
            .basic()
            .into_iter()
            .map(|b| match b {
                Basic::B(j, s) => Letter::new(Generator::B(j), s),
                Basic::Tau(s) => Letter::new(Generator::Tau, s),
            })
            .collect();
        Self { d: self.d, letters }
    }

    /// Image in `B_{d+1}`, the puncture being strand 1 at the origin.
    pub fn embed(&self) -> ArtinWord {
        let d = self.d as i32;
        let mut letters = Vec::new();
        for b in self.basic() {
            match b {
                Basic::B(j, inv) => letters.push(if inv { -(j as i32 + 1) } else { j as i32 + 1 }),
                Basic::Tau(false) => {
                    letters.extend((1..=d).rev().map(|k| -k));
                    letters.push(-1);
                }
                Basic::Tau(true) => {
                    letters.push(1);
                    letters.extend(1..=d);
                }
            }
        }
        ArtinWord::from_parts_unchecked(self.d + 1, letters)
    }

    pub fn equal_annular(&self, other: &AnnularWord) -> Result<bool, AnnularError> {
        self.check_same(other)?;
        Ok(self.embed().equal(&other.embed())?)
    }

    pub fn is_trivial(&self) -> bool {
        self.embed().is_trivial()
    }

    /// Image in `B_d` after filling in the puncture.
    pub fn project_to_disk(&self) -> ArtinWord {
        self.embed().delete_strand(0).expect("the puncture strand is fixed")
    }

    /// Slot permutation, `perm[i]` being the final slot of the point that
    /// starts in slot `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        self.crossings().0
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Signed counterclockwise crossings of the cut per starting slot, with
    /// the slot permutation.
    fn crossings(&self) -> (Vec<usize>, Vec<i64>) {
        let d = self.d;
        let mut strand_at: Vec<usize> = (0..d).collect();
        let mut count = vec![0i64; d];
        for b in self.basic() {
            match b {
                Basic::B(j, _) => strand_at.swap(j - 1, j),
                Basic::Tau(false) => {
                    count[strand_at[d - 1]] += 1;
                    strand_at.rotate_right(1);
                }
                Basic::Tau(true) => {
                    count[strand_at[0]] -= 1;
                    strand_at.rotate_left(1);
                }
            }
        }
        let mut perm = vec![0; d];
        for (pos, &s) in strand_at.iter().enumerate() {
            perm[s] = pos;
        }
        (perm, count)
    }

    /// Net number of counterclockwise cut crossings of each strand, indexed
    /// by starting slot. Well defined for any braid; for a pure braid it is
    /// the winding number around the puncture.
    pub fn cut_crossings(&self) -> Vec<i64> {
        self.crossings().1
    }

    /// Winding numbers around the puncture of a pure braid.
    pub fn winding(&self, a: f64) -> Result<WindingVector, AnnularError> {
        let (perm, count) = self.crossings();
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(AnnularError::NotPure);
        }
        Ok(WindingVector { entries: count, basepoint_angle: a })
    }

    /// Pullback along the covering `x ↦ x^b`.
    pub fn pullback(&self, b: usize) -> Result<AnnularWord, AnnularError> {
        if b == 0 {
            return Err(AnnularError::WreathIndex);
        }
        if b == 1 {
            return Ok(self.clone());
        }
        let d = self.d;
        let mut letters = Vec::new();
        for basic in self.basic() {
            match basic {
                Basic::B(j, inv) => {
                    letters.extend((0..b).map(|m| Letter::new(Generator::B(j + m * d), inv)));
                }
                Basic::Tau(inv) => letters.push(Letter::new(Generator::Tau, inv)),
            }
        }
        Ok(Self { d: b * d, letters })
    }
}

impl fmt::Display for AnnularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingVector {
    pub entries: Vec<i64>,
    pub basepoint_angle: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw(d: usize, s: &str) -> AnnularWord {
        AnnularWord::parse(d, s).unwrap()
    }

    #[test]
    fn letters_roundtrip() {
        for s in ["t", "T", "b1", "B12", "r3", "R1"] {
            assert_eq!(s.parse::<Letter>().unwrap().to_string(), s);
        }
        assert!("x1".parse::<Letter>().is_err());
        assert!("b".parse::<Letter>().is_err());
        assert!("t1".parse::<Letter>().is_err());
    }

    #[test]
    fn index_ranges() {
        assert!(AnnularWord::gen_b(0, 3).is_err());
        assert!(AnnularWord::gen_b(4, 3).is_err());
        assert!(AnnularWord::gen_b(3, 3).is_ok());
        assert!(AnnularWord::gen_r(4, 3).is_err());
        assert!(AnnularWord::gen_b(1, 1).is_err());
        assert!(AnnularWord::identity(0).is_err());
    }

    #[test]
    fn json_format() {
        let w: AnnularWord = serde_json::from_str(r#"{"d":7,"w":["t","b1","B3","r2","T"]}"#).unwrap();
        assert_eq!(w, aw(7, "t b1 B3 r2 T"));
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"d":7,"w":["t","b1","B3","r2","T"]}"#);
    }

    #[test]
    fn tau_rotates_generators() {
        for d in 2..=6 {
            for j in 1..d {
                let lhs = AnnularWord::gen_b(j, d).unwrap().tau_conjugate(1);
                assert!(lhs.equal_annular(&AnnularWord::gen_b(j + 1, d).unwrap()).unwrap());
            }
            // the last generator rotates back to the first
            let wrap = AnnularWord::gen_b(d, d).unwrap().tau_conjugate(1);
            assert!(wrap.equal_annular(&AnnularWord::gen_b(1, d).unwrap()).unwrap());
        }
    }

    #[test]
    fn tau_power_d_is_central_full_rotation() {
        // τ^d commutes with b_1 and projects to the inverse full twist, since
        // a counterclockwise rotation is negative for clockwise σ_i
        for d in 2..=5 {
            let td = AnnularWord::tau_power(d, d as i64).unwrap();
            let b1 = AnnularWord::gen_b(1, d).unwrap();
            assert!(td.compose(&b1).unwrap().equal_annular(&b1.compose(&td).unwrap()).unwrap());
            let full = ArtinWord::half_twist(d).pow(-2);
            assert!(td.project_to_disk().equal(&full).unwrap());
        }
    }

    #[test]
    fn r1_relation_and_projection() {
        for d in 2..=6 {
            let r1 = AnnularWord::gen_r(1, d).unwrap();
            let mut rel = AnnularWord::identity(d).unwrap();
            for j in 1..d {
                rel = rel.compose(&AnnularWord::gen_b(j, d).unwrap()).unwrap();
            }
            rel = rel.compose(&AnnularWord::gen_tau(d).unwrap()).unwrap();
            assert!(r1.equal_annular(&rel).unwrap());
            assert!(r1.project_to_disk().is_trivial());
            assert!(r1.embed().equal(&ArtinWord::new(d + 1, vec![-1, -1]).unwrap()).unwrap());
        }
    }

    #[test]
    fn projection_of_b() {
        for d in 2..=5 {
            for j in 1..d {
                let p = AnnularWord::gen_b(j, d).unwrap().project_to_disk();
                assert!(p.equal(&ArtinWord::new(d, vec![j as i32]).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn windings() {
        let d = 4;
        let a = default_cut(d);
        assert_eq!(aw(d, "").winding(a).unwrap().entries, vec![0; 4]);
        assert_eq!(aw(d, "r1").winding(a).unwrap().entries, vec![1, 0, 0, 0]);
        assert_eq!(aw(d, "r3").winding(a).unwrap().entries, vec![0, 0, 1, 0]);
        assert_eq!(aw(d, "r1 r1 r1").winding(a).unwrap().entries, vec![3, 0, 0, 0]);
        assert_eq!(aw(d, "t t t t").winding(a).unwrap().entries, vec![1, 1, 1, 1]);
        assert!(aw(d, "b1").winding(a).is_err());
    }

    #[test]
    fn bullet_of_adjacent() {
        let d = 5;
        let b1 = aw(d, "b1");
        let b2 = aw(d, "b2");
        assert!(AnnularWord::bullet(&b1, &b2).unwrap().equal_annular(&b2).unwrap());
        assert!(!b1.equal_annular(&b1.invert()).unwrap());
    }

    #[test]
    fn pullback_basics() {
        let w = aw(3, "t b1 R2 B3");
        assert_eq!(w.pullback(1).unwrap(), w);
        assert_eq!(aw(3, "t").pullback(2).unwrap(), aw(6, "t"));
        assert_eq!(aw(3, "b2").pullback(2).unwrap(), aw(6, "b2 b5"));
        // b_d lifts to the product of b_{md}
        assert!(aw(3, "b3").pullback(2).unwrap().equal_annular(&aw(6, "b3 b6")).unwrap());
    }
}
