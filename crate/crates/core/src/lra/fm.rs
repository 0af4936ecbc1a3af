use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::linear::{Constraint, Q};

/// Normalizes, drops constant truths and duplicates; `None` on a constant
/// falsehood.
fn tidy(cons: impl IntoIterator<Item = Constraint>) -> Option<Vec<Constraint>> {
    let mut set = BTreeSet::new();
    for c in cons {
        match c.constant_truth() {
            Some(true) => continue,
            Some(false) => return None,
            None => {
                set.insert(c.normalized());
            }
        }
    }
    Some(set.into_iter().collect())
}

fn eliminate(cons: &[Constraint], k: usize) -> Option<Vec<Constraint>> {
    let (mut lower, mut upper, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for c in cons {
        let a = &c.expr.coeffs[k];
        if a.is_positive() {
            lower.push(c);
        } else if a.is_negative() {
            upper.push(c);
        } else {
            keep.push(c.clone());
        }
    }
    for l in &lower {
        for u in &upper {
            let (a, b) = (&l.expr.coeffs[k], -u.expr.coeffs[k].clone());
            let expr = l.expr.scale(&b).add(&u.expr.scale(a));
            keep.push(Constraint { expr, strict: l.strict || u.strict });
        }
    }
    tidy(keep)
}

/// Exact feasibility of a conjunction of linear constraints over
/// `nvars` rational variables, by Fourier–Motzkin elimination. Returns a
/// satisfying point, preferring interior values along each coordinate.
pub fn fm_feasible(cons: &[Constraint], nvars: usize) -> Option<Vec<Q>> {
    let mut stages = vec![tidy(cons.iter().cloned())?];
    for k in 0..nvars {
        let next = eliminate(&stages[k], k)?;
        stages.push(next);
    }
    let mut point = vec![Q::zero(); nvars];
    for k in (0..nvars).rev() {
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for c in &stages[k] {
            let a = c.expr.coeffs[k].clone();
            if a.is_zero() {
                continue;
            }
            point[k] = Q::zero();
            let rest = c.expr.eval(&point);
            let bound = -rest / &a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(v, s)| bound > *v || (bound == *v && c.strict && !s)) {
                    lo = Some((bound, c.strict));
                }
            } else if hi.as_ref().is_none_or(|(v, s)| bound < *v || (bound == *v && c.strict && !s)) {
                hi = Some((bound, c.strict));
            }
        }
        let two = Q::one() + Q::one();
        point[k] = match (lo, hi) {
            (Some((l, _)), Some((h, _))) if l < h => (l + h) / two,
            (Some((l, _)), Some(_)) => l,
            (Some((l, _)), None) => l + Q::one(),
            (None, Some((h, _))) => h - Q::one(),
            (None, None) => Q::zero(),
        };
    }
    debug_assert!(cons.iter().all(|c| c.holds_at(&point)), "sample must satisfy the system");
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lra::linear::{q, qi, LinExpr};

    fn x(n: usize, i: usize) -> LinExpr {
        LinExpr::var(n, i)
    }

    fn k(n: usize, c: Q) -> LinExpr {
        LinExpr::constant(n, c)
    }

    #[test]
    fn interior_sample() {
        let cons = vec![
            Constraint::geq0(x(1, 0)),
            Constraint::geq0(k(1, qi(1)).sub(&x(1, 0))),
            Constraint::gt0(x(1, 0).sub(&k(1, q(1, 2)))),
        ];
        assert_eq!(fm_feasible(&cons, 1), Some(vec![q(3, 4)]));
    }

    #[test]
    fn strictness_matters() {
        let le = Constraint::geq0(k(1, qi(1)).sub(&x(1, 0)));
        let ge = Constraint::geq0(x(1, 0).sub(&k(1, qi(1))));
        assert_eq!(fm_feasible(&[le.clone(), ge], 1), Some(vec![qi(1)]));
        let gt = Constraint::gt0(x(1, 0).sub(&k(1, qi(1))));
        assert_eq!(fm_feasible(&[le, gt], 1), None);
    }

    #[test]
    fn two_variables() {
        // x + y > 1, x <= 1/2, y <= 1/2 is empty; relaxing y <= 1 is not.
        let n = 2;
        let sum = Constraint::gt0(x(n, 0).add(&x(n, 1)).sub(&k(n, qi(1))));
        let xb = Constraint::geq0(k(n, q(1, 2)).sub(&x(n, 0)));
        let yb = Constraint::geq0(k(n, q(1, 2)).sub(&x(n, 1)));
        assert!(fm_feasible(&[sum.clone(), xb.clone(), yb], n).is_none());
        let y1 = Constraint::geq0(k(n, qi(1)).sub(&x(n, 1)));
        let p = fm_feasible(&[sum.clone(), xb.clone(), y1.clone()], n).unwrap();
        assert!(sum.holds_at(&p) && xb.holds_at(&p) && y1.holds_at(&p));
    }
}
