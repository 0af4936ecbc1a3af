//! Evaluation of terms in an ordinal sum `S ⌢ F` when each variable is known
//! to lie in `S` or in `F \ {0}`.
//!
//! Across the two summands the operations collapse: `s + f = f`,
//! `s -> f = f` and `f -> s = 0`. Inside a summand, the term is kept and
//! tidied with laws valid in every (bounded) hoop.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{AlgTerm, Identity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The lower summand `S`.
    Support,
    /// The upper summand `F`; variables here are nonzero.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermClass {
    /// Value in `S` (including `0`).
    Support,
    /// Value in `F \ {0}`.
    FixedNonzero,
    /// Value in `F`, possibly `0`.
    Fixed,
}

impl TermClass {
    fn in_fixed(self) -> bool {
        !matches!(self, TermClass::Support)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classified {
    pub class: TermClass,
    pub term: AlgTerm,
}

/// A subterm whose summand depends on whether some `F`-valued part is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocked {
    pub subterm: AlgTerm,
}

impl fmt::Display for Blocked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot place {} in either summand", self.subterm)
    }
}

fn support(term: AlgTerm) -> Classified {
    Classified { class: TermClass::Support, term }
}

fn zero() -> Classified {
    support(AlgTerm::Zero)
}

/// Closed terms over `{0, 1}` live in the two-element subalgebra.
fn closed_value(t: &AlgTerm) -> Option<bool> {
    match t {
        AlgTerm::Var(_) => None,
        AlgTerm::Zero => Some(false),
        AlgTerm::One => Some(true),
        AlgTerm::Plus(a, b) => Some(closed_value(a)? || closed_value(b)?),
        AlgTerm::Imp(a, b) => Some(!closed_value(a)? && closed_value(b)?),
    }
}

fn fixed(class: TermClass, term: AlgTerm) -> Classified {
    match closed_value(&term) {
        Some(false) => zero(),
        Some(true) => Classified { class: TermClass::FixedNonzero, term: AlgTerm::One },
        None => Classified { class, term },
    }
}

struct Ctx<'a> {
    classes: &'a BTreeMap<String, Side>,
    bounded: bool,
}

impl Ctx<'_> {
    fn eval(&self, t: &AlgTerm) -> Result<Classified, Blocked> {
        match t {
            AlgTerm::Var(v) => Ok(match self.classes.get(v) {
                Some(Side::Fixed) => Classified { class: TermClass::FixedNonzero, term: t.clone() },
                _ => support(t.clone()),
            }),
            AlgTerm::Zero => Ok(zero()),
            AlgTerm::One => Ok(Classified { class: TermClass::FixedNonzero, term: AlgTerm::One }),
            AlgTerm::Plus(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.plus(a, b, t)
            }
            AlgTerm::Imp(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.imp(a, b, t)
            }
        }
    }

    fn plus(&self, a: Classified, b: Classified, orig: &AlgTerm) -> Result<Classified, Blocked> {
        use TermClass::*;
        if a.term == AlgTerm::Zero {
            return Ok(b);
        }
        if b.term == AlgTerm::Zero {
            return Ok(a);
        }
        if self.bounded && (a.term == AlgTerm::One || b.term == AlgTerm::One) {
            return Ok(Classified { class: FixedNonzero, term: AlgTerm::One });
        }
        match (a.class, b.class) {
            (Support, Support) => Ok(support(AlgTerm::plus(a.term, b.term))),
            (Support, FixedNonzero) => Ok(b),
            (FixedNonzero, Support) => Ok(a),
            (Support, Fixed) | (Fixed, Support) => Err(Blocked { subterm: orig.clone() }),
            (x, y) => {
                let class = if x == FixedNonzero || y == FixedNonzero { FixedNonzero } else { Fixed };
                Ok(fixed(class, AlgTerm::plus(a.term, b.term)))
            }
        }
    }

    fn imp(&self, a: Classified, b: Classified, orig: &AlgTerm) -> Result<Classified, Blocked> {
        use TermClass::*;
        if b.term == AlgTerm::Zero || a.term.ac_eq(&b.term) || (self.bounded && a.term == AlgTerm::One) {
            return Ok(zero());
        }
        if a.term == AlgTerm::Zero {
            return Ok(b);
        }
        match (a.class, b.class) {
            (Support, Support) => Ok(support(AlgTerm::imp(a.term, b.term))),
            (Support, FixedNonzero) => Ok(b),
            (FixedNonzero, Support) => Ok(zero()),
            (Support, Fixed) | (Fixed, Support) => Err(Blocked { subterm: orig.clone() }),
            _ => Ok(fixed(Fixed, AlgTerm::imp(a.term, b.term))),
        }
    }
}

/// Normal form of `t` in `S ⌢ F` under the variable placement `classes`
/// (unlisted variables are taken to lie in `S`). In the bounded signature
/// `1` is the top of `F`.
pub fn simplify_ordinal(t: &AlgTerm, classes: &BTreeMap<String, Side>, bounded: bool) -> Result<Classified, Blocked> {
    Ctx { classes, bounded }.eval(t)
}

/// What an identity reduces to inside one ordinal-sum case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// Both sides have the same normal form.
    Trivial,
    /// The sides land in different summands for every assignment.
    Separated,
    /// Remaining obligations: an identity over `S` and/or one over `F`.
    Subgoals { support: Option<Identity>, fixed: Option<Identity> },
}

pub fn reduce(lhs: &Classified, rhs: &Classified, bounded: bool) -> Reduction {
    use TermClass::*;
    if lhs.term.ac_eq(&rhs.term) {
        return Reduction::Trivial;
    }
    let mk = |l: &AlgTerm, r: &AlgTerm, b: bool| Identity { lhs: l.clone(), rhs: r.clone(), bounded: b };
    match (lhs.class, rhs.class) {
        (Support, Support) => Reduction::Subgoals { support: Some(mk(&lhs.term, &rhs.term, false)), fixed: None },
        (l, r) if l.in_fixed() && r.in_fixed() => {
            Reduction::Subgoals { support: None, fixed: Some(mk(&lhs.term, &rhs.term, bounded)) }
        }
        (Support, FixedNonzero) | (FixedNonzero, Support) => Reduction::Separated,
        _ => {
            // One side in S, the other in F possibly zero: both must vanish.
            let (s, f) = if lhs.class == Support { (lhs, rhs) } else { (rhs, lhs) };
            let support = (s.term != AlgTerm::Zero).then(|| mk(&s.term, &AlgTerm::Zero, false));
            Reduction::Subgoals { support, fixed: Some(mk(&f.term, &AlgTerm::Zero, bounded)) }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn classes(s: &[&str], f: &[&str]) -> BTreeMap<String, Side> {
        s.iter()
            .map(|v| (v.to_string(), Side::Support))
            .chain(f.iter().map(|v| (v.to_string(), Side::Fixed)))
            .collect()
    }

    #[test]
    fn mixed_implication_collapses() {
        let c = classes(&["e"], &["x", "y"]);
        let r = simplify_ordinal(&parse_term("e -> x + y").unwrap(), &c, false).unwrap();
        assert_eq!(r.term, parse_term("x + y").unwrap());
        assert_eq!(r.class, TermClass::FixedNonzero);
        let z = simplify_ordinal(&parse_term("x -> e").unwrap(), &c, false).unwrap();
        assert_eq!(z.term, AlgTerm::Zero);
    }

    #[test]
    fn negation_of_support_is_one() {
        let c = classes(&["x"], &[]);
        let r = simplify_ordinal(&parse_term("x^").unwrap(), &c, true).unwrap();
        assert_eq!(r.term, AlgTerm::One);
        let dd = simplify_ordinal(&parse_term("x^^").unwrap(), &c, true).unwrap();
        assert_eq!(dd.term, AlgTerm::Zero);
    }

    #[test]
    fn undetermined_summand_blocks() {
        let c = classes(&["x"], &["y", "z"]);
        let r = simplify_ordinal(&parse_term("(y -> z) + x").unwrap(), &c, false);
        assert!(r.is_err());
    }
}
