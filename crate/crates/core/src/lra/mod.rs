//! Decision procedure for identities over the standard models `[0, 1]`
//! (involutive hoops) and `[0, ∞)` (Wajsberg hoops), by case splitting into
//! linear pieces and exact Fourier–Motzkin elimination.

mod fm;
mod linear;
mod pieces;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use fm::fm_feasible;
pub use linear::{q, qi, Constraint, LinExpr, Q};
pub use pieces::{case_split, Piece};

use crate::syntax::{AlgTerm, Identity};
use pieces::Splitter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `[0, 1]` with `x + y = min(x + y, 1)` and `x -> y = max(y - x, 0)`.
    UnitInterval,
    /// `[0, ∞)` with ordinary addition and `x -> y = max(y - x, 0)`.
    NonNegReals,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::UnitInterval => "unit",
            Domain::NonNegReals => "nonneg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LraError {
    #[error("constant 1 has no meaning over the nonnegative reals")]
    OneOverNonNeg,
    #[error("variable {0} is not assigned")]
    Unbound(String),
    #[error("value of {0} lies outside the domain")]
    OutOfDomain(String),
    #[error("internal error: witness failed certification")]
    Uncertified,
}

pub type RationalAssignment = BTreeMap<String, Q>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A point of the domain where the two sides differ, certified by
    /// [`interval_eval`].
    Invalid(RationalAssignment),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Exact value of `t` at a rational point of the domain.
pub fn interval_eval(t: &AlgTerm, alpha: &RationalAssignment, domain: Domain) -> Result<Q, LraError> {
    for (v, x) in alpha {
        if x.is_negative() || (domain == Domain::UnitInterval && *x > Q::one()) {
            return Err(LraError::OutOfDomain(v.clone()));
        }
    }
    eval(t, alpha, domain)
}

fn eval(t: &AlgTerm, alpha: &RationalAssignment, domain: Domain) -> Result<Q, LraError> {
    Ok(match t {
        AlgTerm::Var(v) => alpha.get(v).cloned().ok_or_else(|| LraError::Unbound(v.clone()))?,
        AlgTerm::Zero => Q::zero(),
        AlgTerm::One => match domain {
            Domain::UnitInterval => Q::one(),
            Domain::NonNegReals => return Err(LraError::OneOverNonNeg),
        },
        AlgTerm::Plus(a, b) => {
            let s = eval(a, alpha, domain)? + eval(b, alpha, domain)?;
            match domain {
                Domain::UnitInterval if s > Q::one() => Q::one(),
                _ => s,
            }
        }
        AlgTerm::Imp(a, b) => {
            let d = eval(b, alpha, domain)? - eval(a, alpha, domain)?;
            if d.is_negative() {
                Q::zero()
            } else {
                d
            }
        }
    })
}

/// Decides `lhs = rhs` over the domain. Invalid verdicts carry a witness
/// whose exact evaluation shows the two sides differ.
pub fn decide(id: &Identity, domain: Domain) -> Result<Verdict, LraError> {
    let vars = id.vars();
    let mut s = Splitter::new(&vars, domain);
    let left = s.split(&id.lhs)?;
    let right = s.split(&id.rhs)?;
    for l in left.iter() {
        for r in right.iter() {
            let diff = l.value.sub(&r.value);
            if diff.is_zero() {
                continue;
            }
            let mut region: Vec<Constraint> = l.constraints.iter().chain(&r.constraints).cloned().collect();
            for side in [diff.clone(), diff.scale(&-Q::one())] {
                region.push(Constraint::gt0(side));
                if let Some(point) = s.sample(&region) {
                    let alpha: RationalAssignment = vars.iter().cloned().zip(point).collect();
                    let lv = interval_eval(&id.lhs, &alpha, domain)?;
                    let rv = interval_eval(&id.rhs, &alpha, domain)?;
                    if lv == rv {
                        return Err(LraError::Uncertified);
                    }
                    return Ok(Verdict::Invalid(alpha));
                }
                region.pop();
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Validity in all involutive hoops, via `[0, 1]`.
pub fn decide_involutive(id: &Identity) -> Result<Verdict, LraError> {
    decide(id, Domain::UnitInterval)
}

/// Validity in all Wajsberg hoops, via `[0, ∞)`. The identity must not
/// mention `1`.
pub fn decide_wajsberg(id: &Identity) -> Result<Verdict, LraError> {
    if id.lhs.contains_one() || id.rhs.contains_one() {
        return Err(LraError::OneOverNonNeg);
    }
    decide(id, Domain::NonNegReals)
}

pub fn format_assignment(alpha: &RationalAssignment) -> String {
    alpha.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_identity;

    fn idb(s: &str) -> Identity {
        parse_identity(s, true).unwrap()
    }

    fn idu(s: &str) -> Identity {
        parse_identity(s, false).unwrap()
    }

    #[test]
    fn idempotence_fails_on_unit_interval() {
        let v = decide_involutive(&idb("x + x = x")).unwrap();
        let Verdict::Invalid(w) = v else { panic!("expected invalid") };
        let id = idb("x + x = x");
        assert_ne!(interval_eval(&id.lhs, &w, Domain::UnitInterval), interval_eval(&id.rhs, &w, Domain::UnitInterval));
    }

    #[test]
    fn doubling_fails_on_half_line() {
        let v = decide_wajsberg(&idu("x -> x + x")).unwrap();
        assert_eq!(v, Verdict::Invalid([("x".to_string(), qi(1))].into_iter().collect()));
    }

    #[test]
    fn residuation_laws_hold() {
        assert!(decide_wajsberg(&idu("x + y -> z = x -> y -> z")).unwrap().is_valid());
        assert!(decide_involutive(&idb("x^^ = x")).unwrap().is_valid());
        assert!(!decide_involutive(&idb("x^ = x")).unwrap().is_valid());
    }

    #[test]
    fn one_is_rejected_by_wajsberg_oracle() {
        assert_eq!(decide_wajsberg(&idb("x^ = x^")), Err(LraError::OneOverNonNeg));
    }

    #[test]
    fn out_of_domain_witness() {
        let t = crate::syntax::parse_term("x").unwrap();
        let a: RationalAssignment = [("x".to_string(), qi(2))].into_iter().collect();
        assert_eq!(interval_eval(&t, &a, Domain::UnitInterval), Err(LraError::OutOfDomain("x".into())));
        assert_eq!(interval_eval(&t, &a, Domain::NonNegReals), Ok(qi(2)));
    }
}
