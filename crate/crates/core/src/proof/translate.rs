//! Translation of LLm and LLi proofs into equational proofs: every axiom
//! instance becomes a chain ending in `0`, and every modus ponens step a
//! chain citing the chains of its premises.

use std::collections::BTreeMap;

use super::equational::{ChainBuilder, Dir, EqChain, EqRule, EquationalProof};
use super::hilbert::{HilbertProof, HilbertStep, ProofError, Subst};
use super::logic::{LogicId, Schema};
use crate::syntax::{formula_to_term, AlgTerm, Formula, Identity};

fn fresh(base: &str, used: &[String]) -> String {
    (0..).map(|k| if k == 0 { base.to_string() } else { format!("{base}{k}") }).find(|n| !used.contains(n)).unwrap()
}

struct Translator {
    one: Option<AlgTerm>,
    lemmas: Vec<EqChain>,
}

impl Translator {
    fn term(&self, f: &Formula) -> AlgTerm {
        let t = formula_to_term(f);
        match &self.one {
            Some(v) => replace_one(&t, v),
            None => t,
        }
    }

    fn axiom(&self, schema: Schema, sigma: &Subst) -> Result<EqChain, ProofError> {
        use Dir::*;
        use EqRule::*;
        let f = schema.instance(sigma).map_err(ProofError::Shape)?;
        let mut b = ChainBuilder::new(self.term(&f));
        let r = match schema {
            Schema::Comp => b
                .apply(Eq3, &[], Bwd, &[])
                .and_then(|b| b.apply(Eq3, &[], Bwd, &[]))
                .and_then(|b| b.apply(Comm, &[0], Fwd, &[]))
                .and_then(|b| b.apply(Assoc, &[0], Bwd, &[]))
                .and_then(|b| b.apply(Eq4, &[0, 0], Fwd, &[]))
                .and_then(|b| b.apply(Comm, &[0, 0], Fwd, &[]))
                .and_then(|b| b.apply(Assoc, &[0], Fwd, &[]))
                .and_then(|b| b.apply(Eq4, &[0, 1], Fwd, &[]))
                .and_then(|b| b.apply(Comm, &[0, 1], Fwd, &[]))
                .and_then(|b| b.apply(Assoc, &[0], Bwd, &[]))
                .and_then(|b| b.apply(Eq3, &[], Fwd, &[]))
                .and_then(|b| b.apply(Eq1, &[1], Fwd, &[]))
                .and_then(|b| b.apply(Eq2, &[], Fwd, &[])),
            Schema::Comm => b.apply(Comm, &[1], Fwd, &[]).and_then(|b| b.apply(Eq1, &[], Fwd, &[])),
            Schema::Curry => b.apply(Eq3, &[0], Fwd, &[]).and_then(|b| b.apply(Eq1, &[], Fwd, &[])),
            Schema::Uncurry => b.apply(Eq3, &[1], Fwd, &[]).and_then(|b| b.apply(Eq1, &[], Fwd, &[])),
            Schema::Wk => b
                .apply(Comm, &[0], Fwd, &[])
                .and_then(|b| b.apply(Eq3, &[], Fwd, &[]))
                .and_then(|b| b.apply(Eq1, &[1], Fwd, &[]))
                .and_then(|b| b.apply(Eq2, &[], Fwd, &[])),
            Schema::Efq => b.apply(Eq5, &[], Fwd, &[]),
            Schema::Cwc => b.apply(Eq4, &[0], Fwd, &[]).and_then(|b| b.apply(Eq1, &[], Fwd, &[])),
            Schema::Dne | Schema::Con => return Err(ProofError::Shape(format!("{schema} has no hoop translation"))),
        };
        r.map_err(ProofError::Shape)?;
        Ok(b.finish())
    }

    /// From lemmas `i: a = 0` and `j: a -> b = 0`, a chain `b = ... = 0`.
    fn mp(&self, i: usize, j: usize) -> Result<EqChain, ProofError> {
        use Dir::*;
        use EqRule::*;
        let a = self.lemmas[i].start().clone();
        let AlgTerm::Imp(a2, bt) = self.lemmas[j].start().clone() else {
            return Err(ProofError::Shape("major premise is not an implication".into()));
        };
        if *a2 != a {
            return Err(ProofError::Shape("premises do not match".into()));
        }
        let zero = AlgTerm::Zero;
        let mut b = ChainBuilder::new(*bt.clone());
        b.apply(Unit, &[], Bwd, &[])
            .and_then(|b| b.apply(Eq2, &[1], Bwd, &[("x", &bt)]))
            .and_then(|b| b.apply(Eq4, &[], Fwd, &[]))
            .and_then(|b| b.apply(Comm, &[], Fwd, &[]))
            .and_then(|b| b.apply(Unit, &[], Fwd, &[]))
            .and_then(|b| b.apply_ground(Lemma(i), &[0], Bwd, &a, &zero))
            .and_then(|b| b.apply_ground(Lemma(j), &[], Fwd, &AlgTerm::imp(a.clone(), (*bt).clone()), &zero))
            .map_err(ProofError::Shape)?;
        Ok(b.finish())
    }

    fn push(&mut self, c: EqChain) -> usize {
        self.lemmas.push(c);
        self.lemmas.len() - 1
    }
}

fn replace_one(t: &AlgTerm, v: &AlgTerm) -> AlgTerm {
    match t {
        AlgTerm::One => v.clone(),
        AlgTerm::Var(_) | AlgTerm::Zero => t.clone(),
        AlgTerm::Plus(a, b) => AlgTerm::plus(replace_one(a, v), replace_one(b, v)),
        AlgTerm::Imp(a, b) => AlgTerm::imp(replace_one(a, v), replace_one(b, v)),
    }
}

/// Translates a proof in LLm or LLi into an equational proof of
/// `formula_to_term(A) = 0`, one lemma per proof line. In LLm the constant
/// `1` is an arbitrary element and is renamed to a fresh variable.
pub fn translate_to_equational(p: &HilbertProof, logic: LogicId) -> Result<EquationalProof, ProofError> {
    if !matches!(logic, LogicId::LLm | LogicId::LLi) {
        return Err(ProofError::UnsupportedLogic(logic));
    }
    let formulas = p.formulas(logic)?;
    let bounded = logic.bounded();
    let one = if bounded {
        None
    } else {
        let mut used: Vec<String> = Vec::new();
        for f in &formulas {
            used.extend(f.vars());
        }
        Some(AlgTerm::Var(fresh("one", &used)))
    };
    let mut tr = Translator { one, lemmas: Vec::new() };
    let mut at_step: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, step) in p.steps.iter().enumerate() {
        let idx = match step {
            HilbertStep::Axiom { schema, subst } => {
                let c = tr.axiom(*schema, subst)?;
                tr.push(c)
            }
            HilbertStep::Mp { minor, major } => {
                let c = tr.mp(at_step[minor], at_step[major])?;
                tr.push(c)
            }
            HilbertStep::MpAxiom { minor, schema, subst } => {
                let c = tr.axiom(*schema, subst)?;
                let j = tr.push(c);
                let c = tr.mp(at_step[minor], j)?;
                tr.push(c)
            }
        };
        at_step.insert(k, idx);
    }
    let main = tr.lemmas.pop().ok_or(ProofError::Empty)?;
    let goal = Identity { lhs: main.start().clone(), rhs: AlgTerm::Zero, bounded };
    Ok(EquationalProof { goal, hypotheses: Vec::new(), lemmas: tr.lemmas, main })
}
