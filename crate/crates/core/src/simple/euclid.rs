//! The Euclidean algorithm in `B_d^★`: the subgroup generated by the
//! `τ`-invariant families `b_{k,j}` and `b_{ℓ,j}` contains `b_{lcm(k,ℓ),1}`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::genword::{Expr, GeneratorWord};
use super::shift::{append_shift, ShiftMode};
use super::support::{bullet_support, Support};
use crate::error::SupportError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// One of `k`, `ℓ` divides the other.
    Divides,
    AtLeastThree,
    TwoWide,
    TwoNarrow,
    CoprimeWide,
    TwoThree,
    TwoOdd,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Divides => "divides",
            Branch::AtLeastThree => "a≥3",
            Branch::TwoWide => "a=2,ℓ'≥3",
            Branch::TwoNarrow => "a=2,ℓ'=2",
            Branch::CoprimeWide => "a=1,ℓ≥3",
            Branch::TwoThree => "ℓ=2,k=3",
            Branch::TwoOdd => "ℓ=2,k≥5",
        })
    }
}

/// `(a, k', ℓ')` after ordering so that `k > ℓ`.
fn reduce(k: usize, l: usize, d: usize) -> Result<(usize, usize, usize, usize), SupportError> {
    if k < 2 || l < 2 || k == l || !d.is_multiple_of(k) || !d.is_multiple_of(l) {
        return Err(SupportError::Parameters(format!("k = {k}, l = {l} must be distinct divisors >= 2 of d = {d}")));
    }
    let (k, l) = if k > l { (k, l) } else { (l, k) };
    let a = k.gcd(&l);
    Ok((k, l, a, a * (k / a) * (l / a)))
}

/// The branch used for `(k, ℓ, d)`, after the reductions.
pub fn euclid_branch(k: usize, l: usize, d: usize) -> Result<Branch, SupportError> {
    let (k, l, a, _) = reduce(k, l, d)?;
    let lp = l / a;
    Ok(if k % l == 0 {
        Branch::Divides
    } else if a >= 3 {
        Branch::AtLeastThree
    } else if a == 2 && lp >= 3 {
        Branch::TwoWide
    } else if a == 2 {
        Branch::TwoNarrow
    } else if l >= 3 {
        Branch::CoprimeWide
    } else if k == 3 {
        Branch::TwoThree
    } else {
        Branch::TwoOdd
    })
}

/// A word over the atoms `b_{k,j}`, `b_{ℓ,j}` equal to `b_{q,1}`, `q = lcm(k, ℓ)`.
pub fn euclid_word(k: usize, l: usize, d: usize) -> Result<GeneratorWord, SupportError> {
    let branch = euclid_branch(k, l, d)?;
    let (k, l, _, q) = reduce(k, l, d)?;
    let mut gw = if branch == Branch::Divides {
        let mut gw = GeneratorWord::new(q);
        gw.push(format!("b({k},1)"), Expr::atom(k, 1), Some(Expr::atom(q, 1)), "k is a multiple of l");
        gw
    } else {
        build(branch, k, l, q)?
    };
    gw.branch = Some(branch.to_string());
    if d == q {
        Ok(gw)
    } else {
        gw.rebind(d)
    }
}

fn class(d: usize, k: usize, j: usize) -> Support {
    Support::residue_class(d, k, j).expect("k divides d")
}

fn pair(d: usize, i: usize, j: usize) -> Expr {
    Expr::after(vec![Expr::atom(d, i), Expr::atom(d, j).inv()])
}

/// The unique element of `set` satisfying `pred`.
fn unique(set: &Support, pred: impl Fn(usize) -> bool, what: &str) -> Result<usize, SupportError> {
    let found: Vec<usize> = set.indices().iter().copied().filter(|&j| pred(j)).collect();
    match found.as_slice() {
        [j] => Ok(*j),
        _ => Err(SupportError::Verification(format!("{what}: expected one element of {set}, found {found:?}"))),
    }
}

/// Builds the word in degree `d = lcm(k, ℓ)` with `k > ℓ`, `ℓ ∤ k`.
fn build(branch: Branch, k: usize, l: usize, d: usize) -> Result<GeneratorWord, SupportError> {
    let mut gw = GeneratorWord::new(d);
    let jk = class(d, k, 1);
    let bk = gw.push(format!("b({k},1)"), Expr::atom(k, 1), Some(Expr::simple(&jk)), format!("support {jk}"));
    let bullet_step = |gw: &mut GeneratorWord, label: &str, x: Expr, y: Expr, claim: &Support| {
        gw.push(label, Expr::bullet(x, y), Some(Expr::simple(claim)), format!("support {claim}"))
    };

    let (shifter, j0, mode) = match branch {
        Branch::AtLeastThree => {
            let jl2 = class(d, l, 2);
            let s = bullet_support(&jk, &jl2)?;
            let x = bullet_step(&mut gw, "x = b(k,1) . b(l,2)", Expr::atom(k, 1), Expr::atom(l, 2), &s);
            let sh = gw.push("b(k,1) o x^-1", Expr::after(vec![Expr::step(bk), Expr::step(x).inv()]), Some(pair(d, 1, 2)), "");
            (sh, 1, ShiftMode::Adjacent)
        }
        Branch::TwoWide => {
            let jl1 = class(d, l, 1);
            let jp = unique(&jk, |j| j != 1 && jl1.contains(j + d - 2), "j+")?;
            let j1 = jk.moved(1, 2).moved(jp, jp - 1);
            let x1 = bullet_step(&mut gw, "x1 = b(k,1) . b(l,2)", Expr::atom(k, 1), Expr::atom(l, 2), &j1);
            let j2 = jk.moved(1, 3);
            let x2 = bullet_step(&mut gw, "x2 = (t * x1) . b(k,1)", Expr::tau_conj(1, Expr::step(x1)), Expr::atom(k, 1), &j2);
            let sh = gw.push("b(k,1) o x2^-1", Expr::after(vec![Expr::step(bk), Expr::step(x2).inv()]), Some(pair(d, 1, 3)), "");
            (sh, 1, ShiftMode::Skip)
        }
        Branch::TwoNarrow => {
            let x = bullet_step(&mut gw, "x = b(k,1) . b(4,2)", Expr::atom(k, 1), Expr::atom(l, 2), &Support::new(d, vec![2, k])?);
            let y = gw.push("t * x", Expr::tau_conj(1, Expr::step(x)), Some(Expr::simple(&Support::new(d, vec![3, k + 1])?)), "");
            let sh = gw.push("b(k,1) o (t * x)^-1", Expr::after(vec![Expr::step(bk), Expr::step(y).inv()]), Some(pair(d, 1, 3)), "");
            (sh, 1, ShiftMode::Skip)
        }
        Branch::CoprimeWide => {
            let jm = unique(&jk, |j| j % l == 0, "j-")?;
            let jp = unique(&jk, |j| j % l == 2 % l, "j+")?;
            let j4 = jk.moved(jm, jm + 1).moved(jp, jp - 1);
            let x1 = bullet_step(&mut gw, "x1 = b(k,1) . b(l,1)", Expr::atom(k, 1), Expr::atom(l, 1), &j4);
            let j5 = jk.moved(jm, jm + 2);
            let x2 = bullet_step(&mut gw, "x2 = (t * x1) . b(k,1)", Expr::tau_conj(1, Expr::step(x1)), Expr::atom(k, 1), &j5);
            let sh = gw.push("b(k,1) o x2^-1", Expr::after(vec![Expr::step(bk), Expr::step(x2).inv()]), Some(pair(d, jm, jm + 2)), "");
            (sh, jm, ShiftMode::Skip)
        }
        Branch::TwoThree => {
            let b = |k, j| Expr::atom(k, j);
            let s1 =
                gw.push("sigma1", Expr::after(vec![Expr::tau_conj(-1, Expr::after(vec![b(2, 2).inv(), b(3, 1), b(2, 1).inv()])), b(3, 2), b(3, 1)]), None, "");
            let s2 = gw.push("sigma2", Expr::after(vec![b(2, 1).inv(), Expr::bullet(b(3, 1), b(2, 1))]), None, "");
            let b3 = gw.push("sigma2^-1 o sigma1", Expr::after(vec![Expr::step(s2).inv(), Expr::step(s1)]), Some(Expr::atom(d, 3)), "");
            gw.push("t^-2 * b3", Expr::tau_conj(-2, Expr::step(b3)), Some(Expr::atom(d, 1)), "");
            return Ok(gw);
        }
        Branch::TwoOdd => {
            let b = |kk, j| Expr::atom(kk, j);
            let s3 = gw.push("sigma3", Expr::star(Expr::after(vec![b(k, 2).inv(), b(k, 1).inv(), b(2, 1).inv()]), b(k, 1)), None, "");
            let s4 = gw.push("sigma4", Expr::after(vec![b(k, 1), b(k, 2), b(k, 3), b(k, 4)]), None, "");
            let s5 = gw.push(
                "sigma5",
                Expr::star(Expr::after(vec![Expr::step(s4), Expr::tau_conj(k as i64 + 1, Expr::step(s3)), b(k, 1)]).inv(), Expr::tau_conj(1, Expr::step(s3))),
                Some(Expr::simple(&Support::new(d, vec![2, k + 4])?)),
                "",
            );
            let p = gw.push("t^-1 * sigma5", Expr::tau_conj(-1, Expr::step(s5)), Some(Expr::simple(&Support::new(d, vec![1, k + 3])?)), "");
            let sh = gw.push("b(k,1) o (b1 o b(k+3))^-1", Expr::after(vec![Expr::step(bk), Expr::step(p).inv()]), Some(pair(d, k + 1, k + 3)), "");
            (sh, k + 1, ShiftMode::Skip)
        }
        Branch::Divides => unreachable!("handled by the caller"),
    };

    let (kp, lp) = (d / l, d / k);
    let jl = class(d, l, 1);
    let bl = gw.push(format!("b({l},1)"), Expr::atom(l, 1), Some(Expr::simple(&jl)), format!("support {jl}"));
    let mut small = (lp, append_shift(&mut gw, bk, &jk, shifter, j0, mode, &Support::odd_prefix(d, lp)?)?);
    let mut big = (kp, append_shift(&mut gw, bl, &jl, shifter, j0, mode, &Support::odd_prefix(d, kp)?)?);
    descend(&mut gw, &mut big, &mut small)?;
    Ok(gw)
}

/// Subtractive Euclid on the sizes of `J_x`, `J_y`, ending at `b_{J_1} = b_1`.
fn descend(gw: &mut GeneratorWord, big: &mut (usize, usize), small: &mut (usize, usize)) -> Result<(), SupportError> {
    let d = gw.d;
    loop {
        if big.0 < small.0 {
            std::mem::swap(big, small);
        }
        if small.0 == 1 {
            if gw.result() != Some(small.1) {
                gw.push("b1", Expr::step(small.1), Some(Expr::atom(d, 1)), "");
            }
            return Ok(());
        }
        if big.0 == small.0 {
            return Err(SupportError::Verification(format!("sizes {} and {} are not coprime", big.0, small.0)));
        }
        let (x, y) = (big.0, small.0);
        let diff = x - y;
        // b_{J_x} o b_{J_y}^-1 has support {2y+1, …, 2x−1}
        let from = Support::new(d, (y..x).map(|i| 2 * i + 1).collect())?;
        let target = Support::odd_prefix(d, diff)?;
        let powers: Vec<i64> = (0..d as i64).filter(|&m| from.rotate(m) == target).collect();
        let m = match powers.as_slice() {
            [m] => *m,
            _ => return Err(SupportError::Verification(format!("{} powers of t move {from} to {target}", powers.len()))),
        };
        let step = gw.push(
            format!("J_{diff} = t^{m} * (J_{x} o J_{y}^-1)"),
            Expr::tau_conj(m, Expr::after(vec![Expr::step(big.1), Expr::step(small.1).inv()])),
            Some(Expr::simple(&target)),
            format!("support {target}"),
        );
        *big = (diff, step);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(k: usize, l: usize, d: usize) -> GeneratorWord {
        let gw = euclid_word(k, l, d).unwrap();
        let v = gw.verify().unwrap();
        assert!(v.ok, "({k},{l},{d}) failed:\n{gw}\n{:?}", v.steps.iter().filter(|s| !s.ok).collect::<Vec<_>>());
        let q = k.lcm(&l);
        let last = gw.claim_word(gw.result().unwrap()).unwrap().unwrap();
        let expected = Expr::atom(q, 1);
        let mut no = |_| unreachable!();
        assert!(last.equal_annular(&expected.eval(d, &mut no).unwrap()).unwrap());
        gw
    }

    #[test]
    fn branches() {
        assert_eq!(euclid_branch(2, 4, 8).unwrap(), Branch::Divides);
        assert_eq!(euclid_branch(6, 9, 18).unwrap(), Branch::AtLeastThree);
        assert_eq!(euclid_branch(6, 10, 30).unwrap(), Branch::TwoWide);
        assert_eq!(euclid_branch(6, 4, 12).unwrap(), Branch::TwoNarrow);
        assert_eq!(euclid_branch(3, 4, 12).unwrap(), Branch::CoprimeWide);
        assert_eq!(euclid_branch(3, 2, 6).unwrap(), Branch::TwoThree);
        assert_eq!(euclid_branch(2, 5, 10).unwrap(), Branch::TwoOdd);
        assert!(euclid_branch(3, 3, 6).is_err());
        assert!(euclid_branch(4, 3, 6).is_err());
    }

    #[test]
    fn divisible_pair_is_one_atom() {
        let gw = check(2, 4, 8);
        assert_eq!(gw.steps.len(), 1);
        assert_eq!(gw.steps[0].expr, Expr::atom(4, 1));
    }

    #[test]
    fn three_two_six() {
        let gw = check(3, 2, 6);
        assert_eq!(gw.branch.as_deref(), Some("ℓ=2,k=3"));
    }

    #[test]
    fn two_five_ten() {
        let gw = check(5, 2, 10);
        let s5 = gw.steps.iter().position(|s| s.label == "sigma5").unwrap();
        let value = gw.evaluate_step(s5, usize::MAX).unwrap();
        let expected = crate::annular::AnnularWord::parse(10, "b2 b9").unwrap();
        assert!(value.equal_annular(&expected).unwrap());
    }

    #[test]
    fn one_instance_per_branch() {
        for (k, l, d) in [(6, 9, 18), (6, 10, 30), (6, 4, 12), (3, 4, 12), (4, 5, 20), (7, 2, 14)] {
            check(k, l, d);
        }
    }

    #[test]
    fn pulled_back_instance() {
        check(3, 2, 12);
        check(4, 6, 24);
    }
}
