//! The image `Z/bZ ≀ B_d` of braids pulled back along `x ↦ x^b`.

use serde::{Deserialize, Serialize};

use super::AnnularWord;
use crate::braid::ArtinWord;
use crate::error::AnnularError;

/// A braid on `d` strands with a residue mod `b` on each strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathElement {
    pub b: usize,
    pub base: ArtinWord,
    pub dec: Vec<usize>,
}

impl WreathElement {
    pub fn identity(b: usize, d: usize) -> Self {
        Self { b, base: ArtinWord::identity(d), dec: vec![0; d] }
    }

    /// `self` followed by `other`: decorations add along strands.
    pub fn mul(&self, other: &WreathElement) -> Result<WreathElement, AnnularError> {
        if self.b != other.b || self.dec.len() != other.dec.len() {
            return Err(AnnularError::WreathMismatch(format!("b = {} / {}, d = {} / {}", self.b, other.b, self.dec.len(), other.dec.len())));
        }
        let perm = self.base.permutation();
        let dec = (0..self.dec.len()).map(|j| (self.dec[j] + other.dec[perm[j]]) % self.b).collect();
        Ok(Self { b: self.b, base: self.base.compose(&other.base)?, dec })
    }

    /// Equality in the wreath product, the base compared as braids.
    pub fn equal(&self, other: &WreathElement) -> Result<bool, AnnularError> {
        if self.b != other.b || self.dec != other.dec {
            return Ok(false);
        }
        Ok(self.base.equal(&other.base)?)
    }

    pub fn is_identity(&self) -> bool {
        self.dec.iter().all(|&k| k == 0) && self.base.is_trivial()
    }
}

/// The element of `Z/bZ ≀ B_d` attached to `w`, given the witness
/// `w = pullback(witness, b)`. The decoration of strand `j` is the number of
/// sheets by which the lift starting on sheet 0 advances.
pub fn wreath_image(w: &AnnularWord, witness: &AnnularWord, b: usize) -> Result<WreathElement, AnnularError> {
    if b == 0 {
        return Err(AnnularError::WreathIndex);
    }
    let d = witness.d();
    if w.d() != b * d {
        return Err(AnnularError::WreathMismatch(format!("{} strands is not {b} x {d}", w.d())));
    }
    let lifted = witness.pullback(b)?;
    if !lifted.equal_annular(w)? {
        return Err(AnnularError::WreathMismatch("the witness does not pull back to the braid".into()));
    }
    let perm = w.permutation();
    let dec = (0..d).map(|j| (perm[j] / d) % b).collect();
    Ok(WreathElement { b, base: witness.project_to_disk(), dec })
}
