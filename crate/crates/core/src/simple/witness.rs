//! Words showing that `b_j` lies in the subgroup generated by the families
//! `b_{k_p, j}`, `k_p = d / gcd(p, d)`, one family per inner exponent `p` of a
//! reduced support. Each family is the pullback of the generators realised by
//! the trinomial `{0, p/g, d/g}`, `g = gcd(p, d)`.

use num_integer::Integer;

use super::euclid::euclid_word;
use super::genword::{Expr, GeneratorWord, StepKind};
use crate::error::SupportError;

/// `d / gcd(p, d)` for every inner exponent, in the order of `a`.
pub fn atom_classes(a: &[usize]) -> Result<Vec<usize>, SupportError> {
    let d = check_support(a)?;
    Ok(a.iter().filter(|&&p| p != 0 && p != d).map(|&p| d / p.gcd(&d)).collect())
}

fn check_support(a: &[usize]) -> Result<usize, SupportError> {
    let d = a.iter().copied().max().unwrap_or(0);
    if !a.contains(&0) || a.len() < 3 || a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SupportError::Parameters(format!("{a:?} must be strictly increasing, contain 0 and have at least three elements")));
    }
    let g = a.iter().fold(0, |g, &p| g.gcd(&p));
    if g != 1 {
        return Err(SupportError::NonReduced(a.to_vec(), g));
    }
    Ok(d)
}

/// A word over the atoms `b_{k_p, i}` equal to `b_j`.
pub fn generation_witness(a: &[usize], j: usize) -> Result<GeneratorWord, SupportError> {
    let d = check_support(a)?;
    if j == 0 || j > d {
        return Err(SupportError::OutOfRange { element: j, d });
    }
    let mut classes = atom_classes(a)?;
    classes.sort_unstable();
    classes.dedup();
    let mut gw = GeneratorWord::new(d);
    let mut notes = Vec::new();

    // the family reached so far, and the step holding its first member
    let mut k = *classes.last().expect("at least one inner exponent");
    let mut first: Option<usize> = None;
    for &kp in classes.iter().rev().skip(1) {
        if k == d {
            break;
        }
        if k % kp == 0 {
            continue;
        }
        let sub = euclid_word(k, kp, d)?;
        notes.push(format!("euclid({k},{kp}) {}", sub.branch.clone().unwrap_or_default()));
        let (kk, prev) = (k, first);
        let result = splice(&mut gw, &sub, |kq, i| match prev {
            Some(step) if kq == kk => Some(Expr::tau_conj(i as i64 - 1, Expr::step(step))),
            _ => None,
        });
        k = k.lcm(&kp);
        first = Some(result);
    }
    if k != d {
        return Err(SupportError::Verification(format!("the classes {classes:?} only reach b_({k},j)")));
    }
    let b1 = match first {
        Some(step) => step,
        None => gw.push(format!("b({d},1)"), Expr::atom(d, 1), Some(Expr::atom(d, 1)), "a single trinomial realises b_j"),
    };
    if j != 1 || gw.steps.is_empty() {
        gw.push(format!("b{j}"), Expr::tau_conj(j as i64 - 1, Expr::step(b1)), Some(Expr::atom(d, j)), "");
    }
    gw.branch = Some(if notes.is_empty() { "direct".into() } else { notes.join("; ") });
    Ok(gw)
}

/// Appends the steps of `sub`, replacing atoms for which `bind` returns an
/// expression. Returns the index of the last appended step.
fn splice(gw: &mut GeneratorWord, sub: &GeneratorWord, bind: impl Fn(usize, usize) -> Option<Expr>) -> usize {
    fn rewrite(e: &Expr, offset: usize, bind: &dyn Fn(usize, usize) -> Option<Expr>) -> Expr {
        match e {
            Expr::Atom { k, j } => bind(*k, *j).unwrap_or_else(|| e.clone()),
            Expr::Ref { step } => Expr::step(step + offset),
            Expr::Inv { of } => rewrite(of, offset, bind).inv(),
            Expr::After { factors } => Expr::after(factors.iter().map(|f| rewrite(f, offset, bind)).collect()),
            Expr::Star { g, h } => Expr::star(rewrite(g, offset, bind), rewrite(h, offset, bind)),
            Expr::Bullet { x, y } => Expr::bullet(rewrite(x, offset, bind), rewrite(y, offset, bind)),
            Expr::TauConj { m, of } => Expr::tau_conj(*m, rewrite(of, offset, bind)),
        }
    }
    let offset = gw.steps.len();
    for s in &sub.steps {
        let expr = rewrite(&s.expr, offset, &bind);
        match s.kind {
            StepKind::Hypothesis => gw.hypothesis(s.label.clone(), expr, s.note.clone()),
            StepKind::Derived => gw.push(s.label.clone(), expr, s.claim.clone(), s.note.clone()),
        };
    }
    gw.steps.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[usize]) {
        let d = *a.last().unwrap();
        for j in 1..=d {
            let gw = generation_witness(a, j).unwrap();
            let v = gw.verify().unwrap();
            assert!(v.ok, "{a:?}, j = {j}:\n{gw}");
            let last = gw.claim_word(gw.result().unwrap()).unwrap().unwrap();
            assert_eq!(last.to_string(), format!("b{j}"));
            let classes = atom_classes(a).unwrap();
            for (k, _) in gw.atoms() {
                assert!(classes.contains(&k), "atom class {k} not in {classes:?}");
            }
        }
    }

    #[test]
    fn coprime_exponent_is_direct() {
        let gw = generation_witness(&[0, 1, 5], 3).unwrap();
        assert_eq!(gw.branch.as_deref(), Some("direct"));
        check(&[0, 1, 5]);
        check(&[0, 2, 3]);
        check(&[0, 3, 7]);
    }

    #[test]
    fn two_families_need_euclid() {
        // 6 = 2 * 3: p = 2 gives b_(3,j), p = 3 gives b_(2,j)
        assert_eq!(atom_classes(&[0, 2, 3, 6]).unwrap(), vec![3, 2]);
        check(&[0, 2, 3, 6]);
        check(&[0, 3, 4, 12]);
        check(&[0, 2, 3, 5]);
    }

    #[test]
    fn three_families() {
        // 30: p = 6, 10, 15 give b_(5,j), b_(3,j), b_(2,j)
        let gw = generation_witness(&[0, 6, 10, 15, 30], 7).unwrap();
        assert!(gw.verify().unwrap().ok, "{gw}");
    }

    #[test]
    fn rejects_non_reduced() {
        assert!(matches!(generation_witness(&[0, 4, 6], 1), Err(SupportError::NonReduced(_, 2))));
        assert!(generation_witness(&[0, 3], 1).is_err());
    }
}
