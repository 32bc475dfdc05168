//! Integer Laurent polynomials in two variables `q`, `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse map from exponent pairs `(a, b)` of `q^a t^b` to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: i128, q: i32, t: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((q, t), coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(coeff, q_exp, t_exp)` triples.
    pub fn from_terms(terms: &[(i128, i32, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, a, b) in terms {
            p.add_term(c, a, b);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    pub fn coeff(&self, q: i32, t: i32) -> i128 {
        self.terms.get(&(q, t)).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, c: i128, q: i32, t: i32) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((q, t)).or_insert(0);
        *e = e.checked_add(c).expect("Laurent coefficient overflow");
        if *e == 0 {
            self.terms.remove(&(q, t));
        }
    }

    /// `self += c · other`, where `c` is a polynomial.
    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &LaurentPoly) {
        for (&(a1, b1), &c1) in &c.terms {
            for (&(a2, b2), &c2) in &other.terms {
                let prod = c1.checked_mul(c2).expect("Laurent coefficient overflow");
                self.add_term(prod, a1 + a2, b1 + b2);
            }
        }
    }

    pub fn eval(&self, q: f64, t: f64) -> f64 {
        self.terms.iter().map(|(&(a, b), &c)| c as f64 * q.powi(a) * t.powi(b)).sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            out.add_term(c, a, b);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(a, b), &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            if a != 0 {
                write!(f, "*q^{}", a)?;
            }
            if b != 0 {
                write!(f, "*t^{}", b)?;
            }
        }
        Ok(())
    }
}
