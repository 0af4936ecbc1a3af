use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::fm::fm_feasible;
use super::linear::{Constraint, LinExpr, Q};
use super::{Domain, LraError};
use crate::syntax::AlgTerm;

/// A region (conjunction of constraints, domain bounds implicit) on which a
/// term agrees with one affine function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub constraints: Vec<Constraint>,
    pub value: LinExpr,
}

pub(crate) struct Splitter<'a> {
    vars: &'a [String],
    domain: Domain,
    bounds: Vec<Constraint>,
    memo: HashMap<AlgTerm, Rc<Vec<Piece>>>,
}

fn merge(a: &[Constraint], b: &[Constraint]) -> Vec<Constraint> {
    let set: BTreeSet<Constraint> = a.iter().chain(b).cloned().collect();
    set.into_iter().collect()
}

impl<'a> Splitter<'a> {
    pub(crate) fn new(vars: &'a [String], domain: Domain) -> Self {
        let n = vars.len();
        let mut bounds = Vec::new();
        for i in 0..n {
            bounds.push(Constraint::geq0(LinExpr::var(n, i)));
            if domain == Domain::UnitInterval {
                bounds.push(Constraint::geq0(LinExpr::constant(n, Q::one()).sub(&LinExpr::var(n, i))));
            }
        }
        Splitter { vars, domain, bounds, memo: HashMap::new() }
    }

    pub(crate) fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Feasibility of `cons` together with the domain bounds.
    pub(crate) fn sample(&self, cons: &[Constraint]) -> Option<Vec<Q>> {
        let all: Vec<Constraint> = self.bounds.iter().chain(cons).cloned().collect();
        fm_feasible(&all, self.nvars())
    }

    fn feasible_with(&self, cons: &[Constraint], extra: &Constraint) -> bool {
        match extra.constant_truth() {
            Some(false) => false,
            Some(true) => self.sample(cons).is_some(),
            None => {
                let mut all = cons.to_vec();
                all.push(extra.clone());
                self.sample(&all).is_some()
            }
        }
    }

    /// Splits `region` by `cond`, taking `yes` where it holds and `no` where
    /// its negation `not_cond` holds. A side whose condition is implied by the
    /// region is added without recording the redundant constraint.
    fn branch(
        &self,
        out: &mut Vec<Piece>,
        region: Vec<Constraint>,
        cond: Constraint,
        yes: LinExpr,
        not_cond: Constraint,
        no: LinExpr,
    ) {
        let t = self.feasible_with(&region, &cond);
        let f = self.feasible_with(&region, &not_cond);
        match (t, f) {
            (true, true) => {
                out.push(Piece { constraints: merge(&region, &[cond.normalized()]), value: yes });
                out.push(Piece { constraints: merge(&region, &[not_cond.normalized()]), value: no });
            }
            (true, false) => out.push(Piece { constraints: region, value: yes }),
            (false, true) => out.push(Piece { constraints: region, value: no }),
            (false, false) => {}
        }
    }

    pub(crate) fn split(&mut self, t: &AlgTerm) -> Result<Rc<Vec<Piece>>, LraError> {
        if let Some(hit) = self.memo.get(t) {
            return Ok(hit.clone());
        }
        let n = self.nvars();
        let pieces = match t {
            AlgTerm::Var(v) => {
                let i = self.vars.iter().position(|w| w == v).ok_or_else(|| LraError::Unbound(v.clone()))?;
                vec![Piece { constraints: vec![], value: LinExpr::var(n, i) }]
            }
            AlgTerm::Zero => vec![Piece { constraints: vec![], value: LinExpr::constant(n, Q::zero()) }],
            AlgTerm::One => match self.domain {
                Domain::UnitInterval => vec![Piece { constraints: vec![], value: LinExpr::constant(n, Q::one()) }],
                Domain::NonNegReals => return Err(LraError::OneOverNonNeg),
            },
            AlgTerm::Plus(a, b) => {
                let (pa, pb) = (self.split(a)?, self.split(b)?);
                let mut out = Vec::new();
                for x in pa.iter() {
                    for y in pb.iter() {
                        let region = merge(&x.constraints, &y.constraints);
                        let s = x.value.add(&y.value);
                        match self.domain {
                            Domain::UnitInterval => {
                                let one = LinExpr::constant(n, Q::one());
                                let le1 = Constraint::geq0(one.sub(&s));
                                let gt1 = Constraint::gt0(s.sub(&one));
                                self.branch(&mut out, region, le1, s, gt1, one);
                            }
                            Domain::NonNegReals => {
                                if self.sample(&region).is_some() {
                                    out.push(Piece { constraints: region, value: s });
                                }
                            }
                        }
                    }
                }
                out
            }
            AlgTerm::Imp(a, b) => {
                let (pa, pb) = (self.split(a)?, self.split(b)?);
                let mut out = Vec::new();
                for x in pa.iter() {
                    for y in pb.iter() {
                        let region = merge(&x.constraints, &y.constraints);
                        let d = y.value.sub(&x.value);
                        let ge = Constraint::geq0(d.clone());
                        let lt = Constraint::gt0(d.scale(&-Q::one()));
                        self.branch(&mut out, region, ge, d, lt, LinExpr::constant(n, Q::zero()));
                    }
                }
                out
            }
        };
        let pieces = Rc::new(pieces);
        self.memo.insert(t.clone(), pieces.clone());
        Ok(pieces)
    }
}

/// Pieces of the standard interpretation of `t` over the domain, with
/// variables indexed by their position in `vars`. Infeasible pieces are
/// dropped; the remaining regions cover the domain.
pub fn case_split(t: &AlgTerm, vars: &[String], domain: Domain) -> Result<Vec<Piece>, LraError> {
    let mut s = Splitter::new(vars, domain);
    let pieces = s.split(t)?;
    Ok((*pieces).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lra::linear::qi;
    use crate::syntax::parse_term;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn truncated_sum_has_two_pieces() {
        let vs = names(&["x", "y"]);
        let p = case_split(&parse_term("x + y").unwrap(), &vs, Domain::UnitInterval).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].value, LinExpr::var(2, 0).add(&LinExpr::var(2, 1)));
        assert_eq!(p[1].value, LinExpr::constant(2, qi(1)));
        assert_eq!(p[0].constraints[0].display(&vs).to_string(), "-x - y + 1 >= 0");
        assert_eq!(p[1].constraints[0].display(&vs).to_string(), "x + y - 1 > 0");
    }

    #[test]
    fn negation_in_unit_interval_is_one_piece() {
        let vs = names(&["x"]);
        let p = case_split(&parse_term("x^").unwrap(), &vs, Domain::UnitInterval).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].constraints.is_empty());
        assert_eq!(p[0].value, LinExpr::constant(1, qi(1)).sub(&LinExpr::var(1, 0)));
    }

    #[test]
    fn residuum_over_nonnegative_reals() {
        let vs = names(&["x", "y"]);
        let p = case_split(&parse_term("x -> y").unwrap(), &vs, Domain::NonNegReals).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].constraints[0].display(&vs).to_string(), "-x + y >= 0");
        assert_eq!(p[1].constraints[0].display(&vs).to_string(), "x - y > 0");
        assert!(p[1].value.is_zero());
    }

    #[test]
    fn one_is_rejected_over_nonnegative_reals() {
        let vs = names(&["x"]);
        assert_eq!(
            case_split(&parse_term("x^").unwrap(), &vs, Domain::NonNegReals),
            Err(LraError::OneOverNonNeg)
        );
    }
}
