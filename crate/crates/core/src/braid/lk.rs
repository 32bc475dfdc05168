//! The Lawrence–Krammer representation over `Z[q^{±1}, t^{±1}]`.
//!
//! The representation is faithful, so it decides the word problem
//! independently of the Garside machinery.

use super::{ArtinWord, LaurentPoly};
use crate::error::BraidError;

fn basis_index(n: usize, j: usize, k: usize) -> usize {
    // pairs (j, k) with 1 <= j < k <= n in lexicographic order
    debug_assert!(1 <= j && j < k && k <= n);
    let before: usize = (1..j).map(|r| n - r).sum();
    before + (k - j - 1)
}

fn poly(terms: &[(i128, i32, i32)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms)
}

/// Image of the basis vector `x_{j,k}` under `σ_i^{sign}`.
fn generator_image(n: usize, i: usize, sign: i32, j: usize, k: usize) -> Vec<(usize, LaurentPoly)> {
    let x = |a: usize, b: usize| basis_index(n, a, b);
    let one = poly(&[(1, 0, 0)]);
    if sign > 0 {
        if i == j && i + 1 == k {
            vec![(x(j, k), poly(&[(-1, 2, 1)]))]
        } else if i + 1 == j {
            vec![(x(i, k), poly(&[(1, 1, 0)])), (x(i, j), poly(&[(1, 2, 0), (-1, 1, 0)])), (x(j, k), poly(&[(1, 0, 0), (-1, 1, 0)]))]
        } else if i == j {
            vec![(x(j + 1, k), one)]
        } else if i + 1 == k {
            vec![(x(j, i), poly(&[(1, 1, 0)])), (x(j, k), poly(&[(1, 0, 0), (-1, 1, 0)])), (x(i, k), poly(&[(-1, 2, 1), (1, 1, 1)]))]
        } else if i == k {
            vec![(x(j, k + 1), one)]
        } else {
            vec![(x(j, k), one)]
        }
    } else if i == j && i + 1 == k {
        vec![(x(j, k), poly(&[(-1, -2, -1)]))]
    } else if i + 1 == j {
        vec![(x(i, k), one)]
    } else if i == j {
        vec![(x(i + 1, k), poly(&[(1, -1, 0)])), (x(i, k), poly(&[(1, 0, 0), (-1, -1, 0)])), (x(i, i + 1), poly(&[(1, -1, -1), (-1, -2, -1)]))]
    } else if i + 1 == k {
        vec![(x(j, i), one)]
    } else if i == k {
        vec![(x(j, i + 1), poly(&[(1, -1, 0)])), (x(j, i), poly(&[(1, 0, 0), (-1, -1, 0)])), (x(i, i + 1), poly(&[(1, -2, 0), (-1, -1, 0)]))]
    } else {
        vec![(x(j, k), one)]
    }
}

/// Matrix of a braid in the Lawrence–Krammer representation. Column `c`
/// holds the image of the `c`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LkMatrix {
    strands: usize,
    columns: Vec<Vec<LaurentPoly>>,
}

impl LkMatrix {
    pub fn identity(strands: usize) -> Self {
        let m = strands * strands.saturating_sub(1) / 2;
        let columns = (0..m).map(|c| (0..m).map(|r| if r == c { LaurentPoly::one() } else { LaurentPoly::zero() }).collect()).collect();
        Self { strands, columns }
    }

    pub fn of_word(word: &ArtinWord) -> Self {
        let mut m = Self::identity(word.strands());
        for &l in word.letters() {
            m.apply(l);
        }
        m
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.columns[col][row]
    }

    fn apply(&mut self, letter: i32) {
        let n = self.strands;
        let i = letter.unsigned_abs() as usize;
        let sign = letter.signum();
        let dim = self.columns.len();
        let images: Vec<Vec<(usize, LaurentPoly)>> =
            (1..=n).flat_map(|j| (j + 1..=n).map(move |k| (j, k))).map(|(j, k)| generator_image(n, i, sign, j, k)).collect();
        for col in &mut self.columns {
            let mut out = vec![LaurentPoly::zero(); dim];
            for (b, v) in col.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (target, c) in &images[b] {
                    out[*target].add_scaled(c, v);
                }
            }
            *col = out;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| col.iter().enumerate().all(|(r, v)| if r == c { v.is_one() } else { v.is_zero() }))
    }
}

/// Decides equality of two braids through their Lawrence–Krammer matrices.
pub fn lk_oracle(a: &ArtinWord, b: &ArtinWord) -> Result<bool, BraidError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch { left: a.strands(), right: b.strands() });
    }
    Ok(LkMatrix::of_word(a) == LkMatrix::of_word(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> ArtinWord {
        ArtinWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn generator_times_inverse_is_identity() {
        for n in 2..=6 {
            for i in 1..n as i32 {
                assert!(LkMatrix::of_word(&w(n, &[i, -i])).is_identity(), "n={n} i={i}");
                assert!(LkMatrix::of_word(&w(n, &[-i, i])).is_identity(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn braid_relations() {
        for n in 3..=6 {
            for i in 1..n as i32 - 1 {
                assert!(lk_oracle(&w(n, &[i, i + 1, i]), &w(n, &[i + 1, i, i + 1])).unwrap());
            }
            for i in 1..n as i32 {
                for j in i + 2..n as i32 {
                    assert!(lk_oracle(&w(n, &[i, j]), &w(n, &[j, i])).unwrap());
                }
            }
        }
    }

    #[test]
    fn separates_simple_braids() {
        assert!(!lk_oracle(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
        assert!(!lk_oracle(&w(3, &[1, 1]), &w(3, &[])).unwrap());
        assert!(!LkMatrix::of_word(&w(4, &[1, 2, 3])).is_identity());
    }

    #[test]
    fn full_twist_is_scalar() {
        // Δ² acts on the representation as the scalar q^{2n} t^2
        let n = 4;
        let m = LkMatrix::of_word(&ArtinWord::half_twist(n).pow(2));
        for r in 0..m.dimension() {
            for c in 0..m.dimension() {
                if r == c {
                    assert_eq!(m.entry(r, c), &LaurentPoly::monomial(1, 2 * n as i32, 2));
                } else {
                    assert!(m.entry(r, c).is_zero());
                }
            }
        }
    }
}
