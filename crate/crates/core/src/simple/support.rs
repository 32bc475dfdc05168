//! Supports of simple braids. Indices live on the cycle `Z/d`, because
//! `b_d` and `b_1` share a strand; every distance below is cyclic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::annular::{AnnularWord, Generator, Letter};
use crate::error::SupportError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Support {
    d: usize,
    indices: Vec<usize>,
}

impl Support {
    pub fn new(d: usize, mut indices: Vec<usize>) -> Result<Self, SupportError> {
        for &j in &indices {
            if j == 0 || j > d {
                return Err(SupportError::OutOfRange { element: j, d });
            }
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self { d, indices })
    }

    /// `J_{k,j}`: the indices congruent to `j` modulo `k`.
    pub fn residue_class(d: usize, k: usize, j: usize) -> Result<Self, SupportError> {
        if k < 2 || !d.is_multiple_of(k) {
            return Err(SupportError::Parameters(format!("{k} is not a divisor >= 2 of {d}")));
        }
        if j == 0 || j > d {
            return Err(SupportError::OutOfRange { element: j, d });
        }
        let r = j % k;
        Self::new(d, (1..=d).filter(|l| l % k == r).collect())
    }

    /// `J_n = {1, 3, …, 2n − 1}`.
    pub fn odd_prefix(d: usize, n: usize) -> Result<Self, SupportError> {
        if 2 * n > d {
            return Err(SupportError::Parameters(format!("J_{n} does not fit in d = {d}")));
        }
        Self::new(d, (0..n).map(|i| 2 * i + 1).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&self.wrap(j as i64)).is_ok()
    }

    /// Representative of `j` in `1..=d`.
    pub fn wrap(&self, j: i64) -> usize {
        (j - 1).rem_euclid(self.d as i64) as usize + 1
    }

    pub fn cyclic_distance(&self, i: usize, j: usize) -> usize {
        let diff = (i as i64 - j as i64).rem_euclid(self.d as i64) as usize;
        diff.min(self.d - diff)
    }

    /// Distance from `j` to the nearest element of `other`.
    pub fn distance_to(&self, j: usize, other: &Support) -> Option<usize> {
        other.indices.iter().map(|&i| self.cyclic_distance(i, j)).min()
    }

    fn min_gap(&self) -> Option<usize> {
        let n = self.indices.len();
        if n < 2 {
            return None;
        }
        (0..n)
            .map(|i| {
                let a = self.indices[i];
                let b = self.indices[(i + 1) % n];
                (b as i64 - a as i64).rem_euclid(self.d as i64) as usize
            })
            .min()
    }

    pub fn is_simple(&self) -> bool {
        self.min_gap().is_none_or(|g| g >= 2)
    }

    pub fn is_sparse(&self) -> bool {
        self.min_gap().is_none_or(|g| g >= 3)
    }

    /// The support rotated by `m` slots, i.e. the support of `τ^m ★ b_J`.
    pub fn rotate(&self, m: i64) -> Support {
        let indices = self.indices.iter().map(|&j| self.wrap(j as i64 + m)).collect();
        Support::new(self.d, indices).expect("rotation stays in range")
    }

    /// Replaces `from` by `to`.
    pub fn moved(&self, from: usize, to: usize) -> Support {
        let mut indices: Vec<usize> = self.indices.iter().copied().filter(|&j| j != from).collect();
        indices.push(self.wrap(to as i64));
        Support::new(self.d, indices).expect("indices stay in range")
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// The simple braid `b_J`.
pub fn simple_braid(support: &Support) -> Result<AnnularWord, SupportError> {
    if !support.is_simple() {
        return Err(SupportError::NotSimple(support.indices.clone()));
    }
    let letters = support.indices.iter().map(|&j| Letter::new(Generator::B(j), false)).collect();
    Ok(AnnularWord::new(support.d, letters)?)
}

/// `b_{k,j}`, the product of the `b_l` with `l ≡ j mod k`.
pub fn b_kj(k: usize, j: usize, d: usize) -> Result<AnnularWord, SupportError> {
    simple_braid(&Support::residue_class(d, k, j)?)
}

/// The support of `b_J • b_{J'}` for sparse `J`, `J'`.
pub fn bullet_support(j: &Support, jp: &Support) -> Result<Support, SupportError> {
    if j.d != jp.d {
        return Err(SupportError::Parameters("supports of different degree".into()));
    }
    for s in [j, jp] {
        if !s.is_sparse() {
            return Err(SupportError::NotSparse(s.indices.clone()));
        }
    }
    let mut out = Vec::new();
    for &x in &j.indices {
        if jp.contains(x) || j.distance_to(x, jp).is_none_or(|dist| dist >= 2) {
            out.push(x);
        }
    }
    for &y in &jp.indices {
        if jp.distance_to(y, j) == Some(1) {
            out.push(y);
        }
    }
    Support::new(j.d, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: usize, v: &[usize]) -> Support {
        Support::new(d, v.to_vec()).unwrap()
    }

    #[test]
    fn residue_classes() {
        assert_eq!(Support::residue_class(6, 3, 1).unwrap(), s(6, &[1, 4]));
        assert_eq!(Support::residue_class(4, 2, 2).unwrap(), s(4, &[2, 4]));
        assert_eq!(Support::residue_class(5, 5, 3).unwrap(), s(5, &[3]));
        assert!(Support::residue_class(6, 4, 1).is_err());
        assert!(Support::residue_class(6, 1, 1).is_err());
    }

    #[test]
    fn cyclic_predicates() {
        assert!(s(6, &[1, 3, 5]).is_simple());
        assert!(!s(6, &[1, 3, 5]).is_sparse());
        assert!(!s(6, &[1, 6]).is_simple());
        assert!(s(6, &[1, 4]).is_sparse());
        assert!(!s(7, &[1, 6]).is_sparse());
        assert!(s(7, &[2]).is_sparse());
    }

    #[test]
    fn b_kj_words() {
        assert_eq!(b_kj(3, 1, 6).unwrap().to_string(), "b1 b4");
        assert_eq!(b_kj(2, 2, 4).unwrap().to_string(), "b2 b4");
        assert_eq!(b_kj(5, 3, 5).unwrap().to_string(), "b3");
    }

    #[test]
    fn bullet_support_examples() {
        let j = s(9, &[1, 5]);
        assert_eq!(bullet_support(&j, &j).unwrap(), j);
        assert_eq!(bullet_support(&s(5, &[1]), &s(5, &[2])).unwrap(), s(5, &[2]));
        assert_eq!(bullet_support(&s(8, &[1, 5]), &s(8, &[3])).unwrap(), s(8, &[1, 5]));
        assert!(bullet_support(&s(8, &[1, 3]), &s(8, &[5])).is_err());
    }

    #[test]
    fn rotation_wraps() {
        assert_eq!(s(6, &[1, 5]).rotate(2), s(6, &[1, 3]));
        assert_eq!(s(6, &[1, 5]).rotate(-1), s(6, &[4, 6]));
        assert_eq!(s(6, &[1, 4]).moved(4, 3), s(6, &[1, 3]));
    }

    #[test]
    fn simple_braid_factors_commute() {
        let j = s(8, &[2, 5, 7]);
        let w = simple_braid(&j).unwrap();
        let shuffled = AnnularWord::parse(8, "b7 b2 b5").unwrap();
        assert!(w.equal_annular(&shuffled).unwrap());
        assert!(simple_braid(&s(8, &[2, 3])).is_err());
    }
}
