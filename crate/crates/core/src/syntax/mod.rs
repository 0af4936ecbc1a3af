//! Formulas of the substructural logics and terms of the pocrim signature.
//!
//! Formulas use `*` for fusion, `->` for implication, postfix `^` for
//! negation and the constants `1` (falsum) and `0` (sugar for `1 -> 1`).
//! Algebraic terms use `+`, `->`, postfix `^` (meaning `-> 1`), `0` and `1`.

mod parse;
mod print;

use std::collections::BTreeMap;

pub use parse::{parse_formula, parse_identity, parse_term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("constant 1 is not part of the unbounded signature")]
    OneInUnbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    One,
    Tensor(Box<Formula>, Box<Formula>),
    Limp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::Limp(Box::new(a), Box::new(b))
    }

    /// `A^`, i.e. `A -> 1`.
    pub fn neg(a: Formula) -> Formula {
        Formula::limp(a, Formula::One)
    }

    /// `0`, i.e. `1 -> 1`.
    pub fn zero() -> Formula {
        Formula::limp(Formula::One, Formula::One)
    }

    /// Variables in order of first appearance (left to right).
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Formula::One => {}
            Formula::Tensor(a, b) | Formula::Limp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::One => 0,
            Formula::Tensor(a, b) | Formula::Limp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::One => 1,
            Formula::Tensor(a, b) | Formula::Limp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Simultaneous substitution; variables not in `sigma` are left alone.
    pub fn substitute(&self, sigma: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::One => Formula::One,
            Formula::Tensor(a, b) => Formula::tensor(a.substitute(sigma), b.substitute(sigma)),
            Formula::Limp(a, b) => Formula::limp(a.substitute(sigma), b.substitute(sigma)),
        }
    }

    /// Renames variables to `v1, v2, ...` in order of first appearance.
    pub fn canonicalize(&self) -> Formula {
        let sigma = self
            .vars()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, Formula::Var(format!("v{}", i + 1))))
            .collect();
        self.substitute(&sigma)
    }
}

/// Translation of formulas into terms: fusion becomes `+`, implication
/// becomes `->`. The result lives in the bounded signature.
pub fn formula_to_term(f: &Formula) -> AlgTerm {
    match f {
        Formula::Var(v) => AlgTerm::Var(v.clone()),
        Formula::One => AlgTerm::One,
        Formula::Tensor(a, b) => AlgTerm::plus(formula_to_term(a), formula_to_term(b)),
        Formula::Limp(a, b) => AlgTerm::imp(formula_to_term(a), formula_to_term(b)),
    }
}

/// Inverse of [`formula_to_term`] where one exists; `0` maps to `1 -> 1`.
pub fn term_to_formula(t: &AlgTerm) -> Formula {
    match t {
        AlgTerm::Var(v) => Formula::Var(v.clone()),
        AlgTerm::Zero => Formula::zero(),
        AlgTerm::One => Formula::One,
        AlgTerm::Plus(a, b) => Formula::tensor(term_to_formula(a), term_to_formula(b)),
        AlgTerm::Imp(a, b) => Formula::limp(term_to_formula(a), term_to_formula(b)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgTerm {
    Var(String),
    Zero,
    One,
    Plus(Box<AlgTerm>, Box<AlgTerm>),
    Imp(Box<AlgTerm>, Box<AlgTerm>),
}

impl AlgTerm {
    pub fn var(name: &str) -> AlgTerm {
        AlgTerm::Var(name.to_string())
    }

    pub fn plus(a: AlgTerm, b: AlgTerm) -> AlgTerm {
        AlgTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn imp(a: AlgTerm, b: AlgTerm) -> AlgTerm {
        AlgTerm::Imp(Box::new(a), Box::new(b))
    }

    pub fn not(a: AlgTerm) -> AlgTerm {
        AlgTerm::imp(a, AlgTerm::One)
    }

    pub fn delta(a: AlgTerm) -> AlgTerm {
        AlgTerm::not(AlgTerm::not(a))
    }

    /// `k` copies of `a` summed left to right; `0` when `k == 0`.
    pub fn times(k: usize, a: &AlgTerm) -> AlgTerm {
        match k {
            0 => AlgTerm::Zero,
            _ => (1..k).fold(a.clone(), |acc, _| AlgTerm::plus(acc, a.clone())),
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            AlgTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            AlgTerm::Zero | AlgTerm::One => {}
            AlgTerm::Plus(a, b) | AlgTerm::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn contains_one(&self) -> bool {
        match self {
            AlgTerm::One => true,
            AlgTerm::Var(_) | AlgTerm::Zero => false,
            AlgTerm::Plus(a, b) | AlgTerm::Imp(a, b) => a.contains_one() || b.contains_one(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AlgTerm::Var(_) | AlgTerm::Zero | AlgTerm::One => 1,
            AlgTerm::Plus(a, b) | AlgTerm::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn children(&self) -> Vec<&AlgTerm> {
        match self {
            AlgTerm::Plus(a, b) | AlgTerm::Imp(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Subterm at a root-to-node path of child indices.
    pub fn at(&self, path: &[usize]) -> Option<&AlgTerm> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match (self, i) {
                (AlgTerm::Plus(a, _) | AlgTerm::Imp(a, _), 0) => a.at(rest),
                (AlgTerm::Plus(_, b) | AlgTerm::Imp(_, b), 1) => b.at(rest),
                _ => None,
            },
        }
    }

    /// Copy of `self` with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[usize], new: AlgTerm) -> Option<AlgTerm> {
        match path.split_first() {
            None => Some(new),
            Some((&i, rest)) => match (self, i) {
                (AlgTerm::Plus(a, b), 0) => Some(AlgTerm::plus(a.replace_at(rest, new)?, (**b).clone())),
                (AlgTerm::Plus(a, b), 1) => Some(AlgTerm::plus((**a).clone(), b.replace_at(rest, new)?)),
                (AlgTerm::Imp(a, b), 0) => Some(AlgTerm::imp(a.replace_at(rest, new)?, (**b).clone())),
                (AlgTerm::Imp(a, b), 1) => Some(AlgTerm::imp((**a).clone(), b.replace_at(rest, new)?)),
                _ => None,
            },
        }
    }

    pub fn substitute(&self, sigma: &BTreeMap<String, AlgTerm>) -> AlgTerm {
        match self {
            AlgTerm::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            AlgTerm::Zero | AlgTerm::One => self.clone(),
            AlgTerm::Plus(a, b) => AlgTerm::plus(a.substitute(sigma), b.substitute(sigma)),
            AlgTerm::Imp(a, b) => AlgTerm::imp(a.substitute(sigma), b.substitute(sigma)),
        }
    }

    /// Normal form modulo associativity and commutativity of `+`:
    /// sums are flattened, sorted and re-associated to the left.
    pub fn ac_normal(&self) -> AlgTerm {
        match self {
            AlgTerm::Plus(_, _) => {
                let mut summands = Vec::new();
                self.flatten_sum(&mut summands);
                summands.sort();
                let mut it = summands.into_iter();
                let first = it.next().expect("a sum has summands");
                it.fold(first, AlgTerm::plus)
            }
            AlgTerm::Imp(a, b) => AlgTerm::imp(a.ac_normal(), b.ac_normal()),
            _ => self.clone(),
        }
    }

    fn flatten_sum(&self, out: &mut Vec<AlgTerm>) {
        match self {
            AlgTerm::Plus(a, b) => {
                a.flatten_sum(out);
                b.flatten_sum(out);
            }
            other => out.push(other.ac_normal()),
        }
    }

    pub fn ac_eq(&self, other: &AlgTerm) -> bool {
        self == other || self.ac_normal() == other.ac_normal()
    }

    pub fn check_signature(&self, bounded: bool) -> Result<(), SyntaxError> {
        if !bounded && self.contains_one() {
            Err(SyntaxError::OneInUnbounded)
        } else {
            Ok(())
        }
    }
}

/// An equation `lhs = rhs`, tagged with its signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: AlgTerm,
    pub rhs: AlgTerm,
    pub bounded: bool,
}

impl Identity {
    pub fn new(lhs: AlgTerm, rhs: AlgTerm, bounded: bool) -> Result<Identity, SyntaxError> {
        lhs.check_signature(bounded)?;
        rhs.check_signature(bounded)?;
        Ok(Identity { lhs, rhs, bounded })
    }

    /// The identity `t = 0`.
    pub fn zero(t: AlgTerm, bounded: bool) -> Result<Identity, SyntaxError> {
        Identity::new(t, AlgTerm::Zero, bounded)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut vs = self.lhs.vars();
        for v in self.rhs.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs
    }

    pub fn substitute(&self, sigma: &BTreeMap<String, AlgTerm>) -> Identity {
        Identity {
            lhs: self.lhs.substitute(sigma),
            rhs: self.rhs.substitute(sigma),
            bounded: self.bounded,
        }
    }

    /// Same identity up to swapping sides and AC of `+`.
    pub fn ac_eq(&self, other: &Identity) -> bool {
        (self.lhs.ac_eq(&other.lhs) && self.rhs.ac_eq(&other.rhs))
            || (self.lhs.ac_eq(&other.rhs) && self.rhs.ac_eq(&other.lhs))
    }
}
