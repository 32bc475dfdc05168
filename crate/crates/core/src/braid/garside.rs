//! Left-greedy Garside normal form `Δ^p A_1 ⋯ A_k`.
//!
//! Simple elements are stored as permutations: `perm[i]` is the final
//! position of the strand that starts at position `i`. Two strands cross
//! exactly once in the positive permutation braid when their order is
//! reversed, and never otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArtinWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u16).collect())
    }

    /// The permutation of `Δ`, which reverses every pair of strands.
    pub fn delta(n: usize) -> Self {
        Self((0..n as u16).rev().collect())
    }

    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Self(images.iter().map(|&x| x as u16).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.0.len();
        self.0.iter().enumerate().all(|(i, &x)| x as usize == n - 1 - i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Self(inv)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Self(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// Conjugation by `Δ`.
    pub fn flip(&self) -> Self {
        let n = self.0.len() as u16;
        Self((0..self.0.len()).rev().map(|i| n - 1 - self.0[i]).collect())
    }

    /// Generators that can start the permutation braid.
    fn starts_with(&self, i: usize) -> bool {
        self.0[i] > self.0[i + 1]
    }

    /// Positive word of the permutation braid, 1-based letters.
    pub fn to_letters(&self) -> Vec<i32> {
        let mut target: Vec<u16> = self.0.clone();
        let mut letters = Vec::new();
        let n = target.len();
        // bubble sort on the final positions of the strands currently in place
        loop {
            let mut changed = false;
            for i in 0..n.saturating_sub(1) {
                if target[i] > target[i + 1] {
                    target.swap(i, i + 1);
                    letters.push(i as i32 + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        letters
    }
}

/// Makes `(a, b)` left-weighted in place. Returns whether `a` changed.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.len();
    let mut a_inv = a.inverse();
    let mut changed = false;
    loop {
        let mut moved = false;
        for i in 0..n - 1 {
            if b.starts_with(i) && a_inv.0[i] < a_inv.0[i + 1] {
                // a <- a σ_i : swap values i and i+1
                let (p, q) = (a_inv.0[i] as usize, a_inv.0[i + 1] as usize);
                a.0.swap(p, q);
                a_inv.0.swap(i, i + 1);
                // b <- σ_i^{-1} b
                b.0.swap(i, i + 1);
                moved = true;
                changed = true;
            }
        }
        if !moved {
            return changed;
        }
    }
}

/// Normal form `Δ^inf A_1 ⋯ A_k` with every `A_j` a proper simple element
/// and every consecutive pair left-weighted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    pub fn of_word(word: &ArtinWord) -> Self {
        let n = word.strands();
        if n == 1 {
            return Self { strands: 1, inf: 0, factors: Vec::new() };
        }
        let letters = word.letters();
        let negatives = letters.iter().filter(|&&l| l < 0).count();

        // Write every σ_i^{-1} as Δ^{-1}(Δσ_i^{-1}) and push all Δ^{-1} to the
        // front; a factor is flipped once per Δ^{-1} that passes it.
        let mut simples: Vec<Permutation> = Vec::new();
        let mut later_negatives = negatives;
        let delta = Permutation::delta(n);
        for &l in letters {
            let i = l.unsigned_abs() as usize - 1;
            let (x, flip) = if l > 0 {
                let mut p = Permutation::identity(n);
                p.0.swap(i, i + 1);
                (p, later_negatives % 2 == 1)
            } else {
                later_negatives -= 1;
                // Δσ_i^{-1}: swap the values i and i+1 in Δ
                let mut p = delta.clone();
                let (a, b) = (n - 1 - i, n - 2 - i);
                p.0.swap(a, b);
                (p, later_negatives % 2 == 1)
            };
            let x = if flip { x.flip() } else { x };
            // merge into the previous simple factor when the product stays simple
            if let Some(last) = simples.last_mut() {
                if let Some(merged) = merge_simple(last, &x) {
                    *last = merged;
                    continue;
                }
            }
            simples.push(x);
        }

        let mut nf = Self { strands: n, inf: 0, factors: Vec::new() };
        for s in simples {
            nf.push_simple(s);
        }
        nf.clean();
        nf.inf -= negatives as i64;
        nf
    }

    fn push_simple(&mut self, s: Permutation) {
        if s.is_identity() {
            return;
        }
        self.factors.push(s);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (left, right) = self.factors.split_at_mut(j);
            if !left_weight(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        // Δ factors collect at the front, identities at the back
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
        let leading = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.inf += leading as i64;
        }
    }

    fn clean(&mut self) {
        if self.factors.iter().any(|f| f.is_identity() || f.is_delta()) {
            let factors = std::mem::take(&mut self.factors);
            let inf = self.inf;
            self.inf = 0;
            for f in factors {
                self.push_simple(f);
            }
            self.inf += inf;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// A word representing the same braid.
    pub fn to_word(&self) -> ArtinWord {
        let n = self.strands;
        let delta = ArtinWord::half_twist(n);
        let mut letters = delta.pow(self.inf as i32).letters().to_vec();
        for f in &self.factors {
            letters.extend(f.to_letters());
        }
        ArtinWord::from_parts_unchecked(n, letters)
    }
}

fn merge_simple(a: &Permutation, b: &Permutation) -> Option<Permutation> {
    // a·b is simple iff no pair of strands crosses in both
    let c = a.then(b);
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let cross_a = a.0[i] > a.0[j];
            let cross_c = c.0[i] > c.0[j];
            // crossing in a and again in b undoes the order
            if cross_a && !cross_c {
                return None;
            }
        }
    }
    Some(c)
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for p in &self.factors {
            write!(f, " [")?;
            for (k, x) in p.0.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
