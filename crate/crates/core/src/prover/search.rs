use crate::algebra::{enumerate_pocrims_cached, Assignment, ClassFilter, FiniteAlgebra};
use crate::syntax::Identity;

/// A finite algebra and assignment where the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub algebra: FiniteAlgebra,
    pub assignment: Assignment,
}

impl Refutation {
    /// Re-evaluates both sides; true when they differ.
    pub fn certify(&self, id: &Identity) -> bool {
        let l = self.algebra.eval_term(&id.lhs, &self.assignment);
        let r = self.algebra.eval_term(&id.rhs, &self.assignment);
        matches!((l, r), (Ok(a), Ok(b)) if a != b)
    }
}

pub const MAX_SEARCH_ORDER: usize = 7;

/// First counterexample in the enumerated algebras of order `<= max_order`
/// passing `filter`. Orders are scanned upwards, algebras in canonical
/// order and assignments lexicographically. `1` denotes the annihilator.
pub fn search_counterexample(id: &Identity, max_order: usize, filter: &ClassFilter) -> Option<Refutation> {
    let vars = id.vars();
    for n in 1..=max_order.min(MAX_SEARCH_ORDER) {
        for alg in enumerate_pocrims_cached(n).iter() {
            if !filter.accepts(alg) {
                continue;
            }
            let alg = if alg.one().is_none() { alg.clone().with_one_detected() } else { alg.clone() };
            for alpha in alg.assignments(&vars) {
                let l = alg.eval_term(&id.lhs, &alpha).ok()?;
                let r = alg.eval_term(&id.rhs, &alpha).ok()?;
                if l != r {
                    return Some(Refutation { algebra: alg.clone(), assignment: alpha });
                }
            }
        }
    }
    None
}
