//! Exact computation in the Artin braid group `B_n`.
//!
//! Words are read left to right in time: the word `[1, 2]` is the braid in
//! which `σ_1` happens first and `σ_2` second. The positive generator `σ_i`
//! is the clockwise half-twist exchanging the strands at positions `i` and
//! `i + 1`; in the projection onto the real axis the strand coming from
//! position `i` passes with the larger imaginary part.

mod garside;
mod laurent;
mod lk;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;

pub use garside::{GarsideNormalForm, Permutation};
pub use laurent::LaurentPoly;
pub use lk::{lk_oracle, LkMatrix};

/// A word in the standard generators of the `n`-strand braid group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArtinWord", into = "RawArtinWord")]
pub struct ArtinWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawArtinWord {
    n: usize,
    w: Vec<i32>,
}

impl TryFrom<RawArtinWord> for ArtinWord {
    type Error = BraidError;

    fn try_from(raw: RawArtinWord) -> Result<Self, Self::Error> {
        ArtinWord::new(raw.n, raw.w)
    }
}

impl From<ArtinWord> for RawArtinWord {
    fn from(w: ArtinWord) -> Self {
        RawArtinWord { n: w.strands, w: w.letters }
    }
}

impl ArtinWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        Self { strands, letters: Vec::new() }
    }

    /// The single generator `σ_i^{±1}`.
    pub fn generator(strands: usize, letter: i32) -> Result<Self, BraidError> {
        Self::new(strands, vec![letter])
    }

    /// The half-twist `Δ` spelled as `(σ_1)(σ_2 σ_1)…(σ_{n-1}…σ_1)`.
    pub fn half_twist(strands: usize) -> Self {
        let mut letters = Vec::new();
        for top in 1..strands as i32 {
            letters.extend((1..=top).rev());
        }
        Self { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn from_parts_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        Self { strands, letters }
    }

    pub fn compose(&self, other: &ArtinWord) -> Result<ArtinWord, BraidError> {
        self.check_same(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn invert(&self) -> ArtinWord {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn pow(&self, exponent: i32) -> ArtinWord {
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Self { strands: self.strands, letters }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs.
    pub fn free_reduce(&self) -> ArtinWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { strands: self.strands, letters: out }
    }

    /// Image in the symmetric group: `perm[i]` is the final position of the
    /// strand starting at position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut strand_at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            strand_at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in strand_at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn normal_form(&self) -> GarsideNormalForm {
        GarsideNormalForm::of_word(self)
    }

    /// Decides equality in `B_n` through the Garside normal form.
    pub fn equal(&self, other: &ArtinWord) -> Result<bool, BraidError> {
        self.check_same(other)?;
        if self.exponent_sum() != other.exponent_sum() || self.permutation() != other.permutation() {
            return Ok(false);
        }
        Ok(self.invert().compose(other)?.free_reduce().is_trivial())
    }

    /// True when the word represents the identity element.
    pub fn is_trivial(&self) -> bool {
        let reduced = self.free_reduce();
        if reduced.is_empty() {
            return true;
        }
        if reduced.exponent_sum() != 0 || !reduced.is_pure() {
            return false;
        }
        reduced.normal_form().is_identity()
    }

    /// Removes the strand starting at `strand` (0-based). The strand must
    /// end where it started.
    pub fn delete_strand(&self, strand: usize) -> Result<ArtinWord, BraidError> {
        if strand >= self.strands {
            return Err(BraidError::StrandOutOfRange { strand, strands: self.strands });
        }
        if self.permutation()[strand] != strand {
            return Err(BraidError::StrandNotFixed { strand });
        }
        if self.strands == 1 {
            return Ok(ArtinWord::identity(1));
        }
        let mut strand_at: Vec<usize> = (0..self.strands).collect();
        let mut letters = Vec::new();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (strand_at[i], strand_at[i + 1]);
            if a != strand && b != strand {
                let del_pos = strand_at.iter().position(|&s| s == strand).unwrap();
                let new_i = if del_pos < i { i - 1 } else { i };
                letters.push(l.signum() * (new_i as i32 + 1));
            }
            strand_at.swap(i, i + 1);
        }
        Ok(ArtinWord { strands: self.strands - 1, letters })
    }

    fn check_same(&self, other: &ArtinWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(())
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "s{}", l)?;
            } else {
                write!(f, "S{}", -l)?;
            }
        }
        Ok(())
    }
}
