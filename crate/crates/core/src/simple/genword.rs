//! Words over the atoms `b_{k,j}`, with the macros `★` and `•`, organised
//! as a list of checkpointed steps.
//!
//! Each step may carry a claim: an atom-only expression the step is asserted
//! to equal. Verification checks the steps one at a time, substituting the
//! already verified claims for earlier steps, so the cost stays linear even
//! when the fully expanded word would be exponentially long.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::support::{b_kj, simple_braid, Support};
use crate::annular::AnnularWord;
use crate::error::SupportError;

/// Letters allowed in a fully expanded word before [`GeneratorWord::evaluate`] gives up.
pub const DEFAULT_EXPANSION_LIMIT: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    /// `b_{k,j}`; with `k = d` this is the single generator `b_j`.
    Atom {
        k: usize,
        j: usize,
    },
    /// The value of an earlier step.
    Ref {
        step: usize,
    },
    Inv {
        of: Box<Expr>,
    },
    /// `f_1 ∘ f_2 ∘ ⋯`, the rightmost factor happening first.
    After {
        factors: Vec<Expr>,
    },
    /// `g ★ h = g ∘ h ∘ g⁻¹`.
    Star {
        g: Box<Expr>,
        h: Box<Expr>,
    },
    /// `x • y = x⁻¹ ∘ y⁻¹ ∘ x ∘ y ∘ x`.
    Bullet {
        x: Box<Expr>,
        y: Box<Expr>,
    },
    /// `τ^m ★ of`.
    TauConj {
        m: i64,
        of: Box<Expr>,
    },
}

impl Expr {
    pub fn atom(k: usize, j: usize) -> Expr {
        let j = (j as i64 - 1).rem_euclid(k as i64) as usize + 1;
        Expr::Atom { k, j }
    }

    pub fn step(step: usize) -> Expr {
        Expr::Ref { step }
    }

    pub fn inv(self) -> Expr {
        match self {
            Expr::Inv { of } => *of,
            other => Expr::Inv { of: Box::new(other) },
        }
    }

    pub fn after(factors: Vec<Expr>) -> Expr {
        Expr::After { factors }
    }

    pub fn star(g: Expr, h: Expr) -> Expr {
        Expr::Star { g: Box::new(g), h: Box::new(h) }
    }

    pub fn bullet(x: Expr, y: Expr) -> Expr {
        Expr::Bullet { x: Box::new(x), y: Box::new(y) }
    }

    pub fn tau_conj(m: i64, of: Expr) -> Expr {
        if m == 0 {
            return of;
        }
        match of {
            Expr::TauConj { m: m2, of } => Expr::tau_conj(m + m2, *of),
            other => Expr::TauConj { m, of: Box::new(other) },
        }
    }

    /// `b_J` as a product of single-generator atoms.
    pub fn simple(support: &Support) -> Expr {
        let d = support.d();
        Expr::after(support.indices().iter().map(|&j| Expr::atom(d, j)).collect())
    }

    fn refs(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Atom { .. } => {}
            Expr::Ref { step } => out.push(*step),
            Expr::Inv { of } | Expr::TauConj { of, .. } => of.refs(out),
            Expr::After { factors } => factors.iter().for_each(|f| f.refs(out)),
            Expr::Star { g, h } => {
                g.refs(out);
                h.refs(out);
            }
            Expr::Bullet { x, y } => {
                x.refs(out);
                y.refs(out);
            }
        }
    }

    /// Pushes every `τ`-conjugation down to the atoms, using
    /// `τ^m ★ b_{k,j} = b_{k,j+m}`. Conjugations of step references stay.
    pub fn without_tau(&self) -> Expr {
        self.push_tau(0)
    }

    fn push_tau(&self, m: i64) -> Expr {
        match self {
            Expr::Atom { k, j } => Expr::atom(*k, (*j as i64 + m).rem_euclid(*k as i64) as usize),
            Expr::Ref { .. } => Expr::tau_conj(m, self.clone()),
            Expr::Inv { of } => of.push_tau(m).inv(),
            Expr::After { factors } => Expr::after(factors.iter().map(|f| f.push_tau(m)).collect()),
            Expr::Star { g, h } => Expr::star(g.push_tau(m), h.push_tau(m)),
            Expr::Bullet { x, y } => Expr::bullet(x.push_tau(m), y.push_tau(m)),
            Expr::TauConj { m: m2, of } => of.push_tau(m + m2),
        }
    }

    /// Evaluates in `B_d^★`, resolving step references through `lookup`.
    pub fn eval(&self, d: usize, lookup: &mut dyn FnMut(usize) -> Result<AnnularWord, SupportError>) -> Result<AnnularWord, SupportError> {
        let w = match self {
            Expr::Atom { k, j } => b_kj(*k, *j, d)?,
            Expr::Ref { step } => lookup(*step)?,
            Expr::Inv { of } => of.eval(d, lookup)?.invert(),
            Expr::After { factors } => {
                let mut out = AnnularWord::identity(d)?;
                for f in factors.iter().rev() {
                    out = out.compose(&f.eval(d, lookup)?)?;
                }
                out
            }
            Expr::Star { g, h } => {
                let g = g.eval(d, lookup)?;
                let h = h.eval(d, lookup)?;
                AnnularWord::star(&g, &h)?
            }
            Expr::Bullet { x, y } => {
                let x = x.eval(d, lookup)?;
                let y = y.eval(d, lookup)?;
                AnnularWord::bullet(&x, &y)?
            }
            Expr::TauConj { m, of } => {
                // τ^d is central, so only m mod d matters
                let dd = d as i64;
                let mut r = m.rem_euclid(dd);
                if r > dd / 2 {
                    r -= dd;
                }
                of.eval(d, lookup)?.tau_conjugate(r)
            }
        };
        Ok(w.free_reduce())
    }

    fn fmt_in(&self, d: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom { k, j } if *k == d => write!(f, "b{j}"),
            Expr::Atom { k, j } => write!(f, "b({k},{j})"),
            Expr::Ref { step } => write!(f, "s{step}"),
            Expr::Inv { of } => {
                of.fmt_paren(d, f)?;
                write!(f, "^-1")
            }
            Expr::After { factors } if factors.is_empty() => write!(f, "e"),
            Expr::After { factors } => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " o ")?;
                    }
                    x.fmt_paren(d, f)?;
                }
                Ok(())
            }
            Expr::Star { g, h } => {
                g.fmt_paren(d, f)?;
                write!(f, " * ")?;
                h.fmt_paren(d, f)
            }
            Expr::Bullet { x, y } => {
                x.fmt_paren(d, f)?;
                write!(f, " . ")?;
                y.fmt_paren(d, f)
            }
            Expr::TauConj { m, of } => {
                write!(f, "t^{m} * ")?;
                of.fmt_paren(d, f)
            }
        }
    }

    fn fmt_paren(&self, d: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atomic = match self {
            Expr::Atom { .. } | Expr::Ref { .. } | Expr::Inv { .. } => true,
            Expr::After { factors } => factors.len() <= 1,
            _ => false,
        };
        if atomic {
            self.fmt_in(d, f)
        } else {
            write!(f, "(")?;
            self.fmt_in(d, f)?;
            write!(f, ")")
        }
    }

    /// Renders with `b_j` for the single generators of `B_d^★`.
    pub fn display(&self, d: usize) -> ExprDisplay<'_> {
        ExprDisplay { expr: self, d }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    d: usize,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt_in(self.d, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// Assumed to lie in the subgroup; not derived from earlier steps.
    Hypothesis,
    /// Derived from atoms and earlier steps.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub kind: StepKind,
    pub expr: Expr,
    /// Atom-only expression the step equals.
    pub claim: Option<Expr>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub d: usize,
    pub steps: Vec<Step>,
    pub branch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub step: usize,
    pub label: String,
    pub ok: bool,
    pub letters: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub steps: Vec<StepCheck>,
}

impl GeneratorWord {
    pub fn new(d: usize) -> Self {
        Self { d, steps: Vec::new(), branch: None }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, label: impl Into<String>, expr: Expr, claim: Option<Expr>, note: impl Into<String>) -> usize {
        self.steps.push(Step { label: label.into(), kind: StepKind::Derived, expr, claim, note: note.into() });
        self.steps.len() - 1
    }

    pub fn hypothesis(&mut self, label: impl Into<String>, expr: Expr, note: impl Into<String>) -> usize {
        let claim = Some(expr.clone());
        self.steps.push(Step { label: label.into(), kind: StepKind::Hypothesis, expr, claim, note: note.into() });
        self.steps.len() - 1
    }

    pub fn result(&self) -> Option<usize> {
        self.steps.len().checked_sub(1)
    }

    /// The same word read in `B_{d'}^★` for a multiple `d'` of `d`, which is
    /// the pullback along `x ↦ x^{d'/d}`.
    pub fn rebind(&self, d: usize) -> Result<GeneratorWord, SupportError> {
        if !d.is_multiple_of(self.d) {
            return Err(SupportError::Parameters(format!("{d} is not a multiple of {}", self.d)));
        }
        Ok(Self { d, steps: self.steps.clone(), branch: self.branch.clone() })
    }

    /// The value of the final step, fully expanded.
    pub fn evaluate(&self) -> Result<AnnularWord, SupportError> {
        self.evaluate_with_limit(DEFAULT_EXPANSION_LIMIT)
    }

    pub fn evaluate_with_limit(&self, limit: usize) -> Result<AnnularWord, SupportError> {
        match self.result() {
            None => Ok(AnnularWord::identity(self.d)?),
            Some(last) => self.evaluate_step(last, limit),
        }
    }

    pub fn evaluate_step(&self, step: usize, limit: usize) -> Result<AnnularWord, SupportError> {
        let mut cache: Vec<Option<AnnularWord>> = vec![None; self.steps.len()];
        for i in 0..=step {
            let mut lookup = |r: usize| -> Result<AnnularWord, SupportError> {
                cache.get(r).cloned().flatten().ok_or_else(|| SupportError::Parameters(format!("step {i} refers to later step {r}")))
            };
            let w = self.steps[i].expr.eval(self.d, &mut lookup)?;
            if w.len() > limit {
                return Err(SupportError::Parameters(format!("expansion of step {i} has {} letters, above the limit {limit}", w.len())));
            }
            cache[i] = Some(w);
        }
        Ok(cache[step].take().expect("just computed"))
    }

    /// The claimed value of a step as a word.
    pub fn claim_word(&self, step: usize) -> Result<Option<AnnularWord>, SupportError> {
        match &self.steps[step].claim {
            None => Ok(None),
            Some(c) => {
                let mut no_refs = |_| Err(SupportError::Parameters("claims may not refer to steps".into()));
                Ok(Some(c.eval(self.d, &mut no_refs)?))
            }
        }
    }

    /// Checks every claim, each step evaluated with the claims of the steps
    /// it refers to. Steps without a claim are expanded in place.
    pub fn verify(&self) -> Result<Verification, SupportError> {
        let n = self.steps.len();
        let mut values: Vec<Option<AnnularWord>> = vec![None; n];
        let mut checks = Vec::new();
        let mut ok = true;
        for i in 0..n {
            let mut refs = Vec::new();
            self.steps[i].expr.refs(&mut refs);
            if refs.iter().any(|&r| r >= i) {
                return Err(SupportError::Parameters(format!("step {i} refers forward")));
            }
            let mut lookup = |r: usize| -> Result<AnnularWord, SupportError> { Ok(values[r].clone().expect("earlier step")) };
            let value = self.steps[i].expr.eval(self.d, &mut lookup)?;
            let letters = value.len();
            let claim = self.claim_word(i)?;
            let step_ok = match (&self.steps[i].kind, &claim) {
                (StepKind::Hypothesis, _) | (_, None) => true,
                (StepKind::Derived, Some(c)) => value.equal_annular(c)?,
            };
            ok &= step_ok;
            checks.push(StepCheck { step: i, label: self.steps[i].label.clone(), ok: step_ok, letters });
            values[i] = Some(claim.unwrap_or(value));
        }
        Ok(Verification { ok, steps: checks })
    }

    /// Atoms `(k, j)` used anywhere in the word, after pushing `τ` inwards.
    pub fn atoms(&self) -> Vec<(usize, usize)> {
        fn walk(e: &Expr, out: &mut Vec<(usize, usize)>) {
            match e {
                Expr::Atom { k, j } => out.push((*k, *j)),
                Expr::Ref { .. } => {}
                Expr::Inv { of } | Expr::TauConj { of, .. } => walk(of, out),
                Expr::After { factors } => factors.iter().for_each(|f| walk(f, out)),
                Expr::Star { g, h } => {
                    walk(g, out);
                    walk(h, out);
                }
                Expr::Bullet { x, y } => {
                    walk(x, out);
                    walk(y, out);
                }
            }
        }
        let mut out = Vec::new();
        for s in &self.steps {
            walk(&s.expr.without_tau(), &mut out);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// JSON with the atom table bound in the current degree.
    pub fn to_json(&self) -> Result<serde_json::Value, SupportError> {
        let atoms: Vec<serde_json::Value> = self
            .atoms()
            .into_iter()
            .map(|(k, j)| {
                let word = b_kj(k, j, self.d)?;
                Ok(serde_json::json!({
                    "name": if k == self.d { format!("b{j}") } else { format!("b({k},{j})") },
                    "k": k,
                    "j": j,
                    "word": word,
                }))
            })
            .collect::<Result<_, SupportError>>()?;
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                serde_json::json!({
                    "index": i,
                    "label": s.label,
                    "kind": s.kind,
                    "text": s.expr.display(self.d).to_string(),
                    "expr": s.expr,
                    "claim": s.claim.as_ref().map(|c| c.display(self.d).to_string()),
                    "note": s.note,
                })
            })
            .collect();
        Ok(serde_json::json!({
            "schema": "fewbraid.generator_word/1",
            "d": self.d,
            "branch": self.branch,
            "macros": { "star": "g * h = g o h o g^-1", "bullet": "x . y = x^-1 o y^-1 o x o y o x" },
            "atoms": atoms,
            "steps": steps,
        }))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = &self.branch {
            writeln!(f, "# branch: {b}")?;
        }
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "s{i} = {}", s.expr.display(self.d))?;
            if let Some(c) = &s.claim {
                if s.kind == StepKind::Derived {
                    write!(f, "  = {}", c.display(self.d))?;
                }
            }
            if s.kind == StepKind::Hypothesis {
                write!(f, "  (given)")?;
            }
            writeln!(f, "  [{}]", s.label)?;
        }
        Ok(())
    }
}

/// Word whose only step is the simple braid `b_J`, given.
pub fn given_simple(support: &Support) -> Result<GeneratorWord, SupportError> {
    simple_braid(support)?;
    let mut gw = GeneratorWord::new(support.d());
    gw.hypothesis(format!("b_J, J = {support}"), Expr::simple(support), "");
    Ok(gw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_identity() {
        let gw = GeneratorWord::new(4);
        assert!(gw.evaluate().unwrap().is_empty());
        assert!(gw.verify().unwrap().ok);
    }

    #[test]
    fn macros_expand_by_definition() {
        let d = 6;
        let x = Expr::atom(3, 1);
        let y = Expr::atom(2, 1);
        let mut gw = GeneratorWord::new(d);
        gw.push("bullet", Expr::bullet(x.clone(), y.clone()), None, "");
        let xw = b_kj(3, 1, d).unwrap();
        let yw = b_kj(2, 1, d).unwrap();
        let by_hand = xw.compose(&yw).unwrap().compose(&xw).unwrap().compose(&yw.invert()).unwrap().compose(&xw.invert()).unwrap();
        assert!(gw.evaluate().unwrap().equal_annular(&by_hand).unwrap());

        let mut gw = GeneratorWord::new(d);
        gw.push("star", Expr::star(x, y), None, "");
        let by_hand = xw.invert().compose(&yw).unwrap().compose(&xw).unwrap();
        assert!(gw.evaluate().unwrap().equal_annular(&by_hand).unwrap());
    }

    #[test]
    fn tau_conjugation_rotates_atoms() {
        let e = Expr::tau_conj(2, Expr::after(vec![Expr::atom(3, 1), Expr::atom(6, 5).inv()]));
        let pushed = e.without_tau();
        assert_eq!(pushed, Expr::after(vec![Expr::atom(3, 3), Expr::atom(6, 1).inv()]));
        let mut none = |_| unreachable!();
        let a = e.eval(6, &mut none).unwrap();
        let b = pushed.eval(6, &mut none).unwrap();
        assert!(a.equal_annular(&b).unwrap());
    }

    #[test]
    fn checkpoints_detect_false_claims() {
        let mut gw = GeneratorWord::new(5);
        let s = gw.hypothesis("b1", Expr::atom(5, 1), "");
        gw.push("conj", Expr::tau_conj(1, Expr::step(s)), Some(Expr::atom(5, 2)), "");
        assert!(gw.verify().unwrap().ok);
        gw.push("wrong", Expr::tau_conj(1, Expr::step(s)), Some(Expr::atom(5, 3)), "");
        let v = gw.verify().unwrap();
        assert!(!v.ok);
        assert!(v.steps[1].ok && !v.steps[2].ok);
    }

    #[test]
    fn rebinding_is_pullback() {
        let mut gw = GeneratorWord::new(3);
        gw.push("x", Expr::after(vec![Expr::atom(3, 1), Expr::tau_conj(1, Expr::atom(3, 1))]), None, "");
        let small = gw.evaluate().unwrap();
        let big = gw.rebind(6).unwrap().evaluate().unwrap();
        assert!(small.pullback(2).unwrap().equal_annular(&big).unwrap());
        assert!(gw.rebind(7).is_err());
    }

    #[test]
    fn json_has_atom_table() {
        let gw = given_simple(&Support::new(6, vec![1, 4]).unwrap()).unwrap();
        let j = gw.to_json().unwrap();
        assert_eq!(j["atoms"].as_array().unwrap().len(), 2);
        assert_eq!(j["steps"][0]["kind"], "Hypothesis");
    }
}
