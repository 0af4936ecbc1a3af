//! Indirect proofs of hoop identities. An identity holds in all (bounded)
//! hoops iff it holds in every ordinal sum `S ⌢ F` generated by the
//! variables with `S` subdirectly irreducible and Wajsberg. The prover walks
//! the resulting case template, discharging Wajsberg cases with the linear
//! arithmetic oracle and mixed cases by ordinal-sum rewriting.

mod certificate;
mod ordinal;
mod search;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{ClassFilter, Flag};
use crate::lra::{decide_involutive, decide_wajsberg, format_assignment, Verdict};
use crate::syntax::{AlgTerm, Identity};

pub use certificate::{check_certificate, CaseCertificate, CaseNode, CertificateError, Discharge};
pub use ordinal::{reduce, simplify_ordinal, Blocked, Classified, Reduction, Side, TermClass};
pub use search::{search_counterexample, Refutation, MAX_SEARCH_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    /// Largest order scanned for counterexamples.
    pub max_order: usize,
    /// Nesting limit for recursive `F` subgoals.
    pub depth: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig { max_order: 5, depth: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unknown {
    pub reason: String,
    /// The subgoal the prover could not discharge, when there is one.
    pub blocking: Option<Identity>,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)?;
        if let Some(b) = &self.blocking {
            write!(f, " (blocking subgoal: {b})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProverResult {
    Proved(CaseCertificate),
    Refuted(Refutation),
    Unknown(Unknown),
}

/// One entry of the case template: which variables lie in `S` and which in
/// `F \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSpec {
    pub label: String,
    pub support: Vec<String>,
    pub fixed: Vec<String>,
}

impl CaseSpec {
    pub fn classes(&self) -> BTreeMap<String, Side> {
        self.support
            .iter()
            .map(|v| (v.clone(), Side::Support))
            .chain(self.fixed.iter().map(|v| (v.clone(), Side::Fixed)))
            .collect()
    }

    fn is_rewritten(&self) -> bool {
        self.label != "i"
    }
}

fn letter(k: usize) -> String {
    let mut s = String::new();
    let mut k = k;
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

/// Transpositions of variables (by index) that map the identity to itself
/// up to AC and swapping sides.
pub fn symmetries(id: &Identity) -> Vec<(usize, usize)> {
    let vars = id.vars();
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let sigma: BTreeMap<String, AlgTerm> = [
                (vars[i].clone(), AlgTerm::var(&vars[j])),
                (vars[j].clone(), AlgTerm::var(&vars[i])),
            ]
            .into_iter()
            .collect();
            if id.substitute(&sigma).ac_eq(id) {
                out.push((i, j));
            }
        }
    }
    out
}

fn swap_bits(mask: u64, i: usize, j: usize) -> u64 {
    let (bi, bj) = ((mask >> i) & 1, (mask >> j) & 1);
    if bi == bj {
        mask
    } else {
        mask ^ (1 << i) ^ (1 << j)
    }
}

fn orbit_min(mask: u64, gens: &[(usize, usize)]) -> u64 {
    let mut seen = BTreeSet::from([mask]);
    let mut queue = VecDeque::from([mask]);
    while let Some(m) = queue.pop_front() {
        for &(i, j) in gens {
            let m2 = swap_bits(m, i, j);
            if seen.insert(m2) {
                queue.push_back(m2);
            }
        }
    }
    *seen.first().unwrap()
}

/// The cases to verify: `i`, one `ii(..)` per nonempty proper subset of
/// the variables placed in `S` (up to the identity's variable symmetries,
/// in increasing bitmask order with the first variable as bit 0), and `iii`
/// for bounded identities with at least one variable.
pub fn template(id: &Identity) -> Vec<CaseSpec> {
    let vars = id.vars();
    let n = vars.len();
    let mut cases = vec![CaseSpec { label: "i".into(), support: vars.clone(), fixed: vec![] }];
    if n == 0 {
        return cases;
    }
    let gens = symmetries(id);
    let mut k = 0;
    for mask in 1u64..(1u64 << n) - 1 {
        if orbit_min(mask, &gens) != mask {
            continue;
        }
        let (support, fixed): (Vec<_>, Vec<_>) =
            vars.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        cases.push(CaseSpec {
            label: format!("ii({})", letter(k)),
            support: support.into_iter().map(|(_, v)| v.clone()).collect(),
            fixed: fixed.into_iter().map(|(_, v)| v.clone()).collect(),
        });
        k += 1;
    }
    if id.bounded {
        cases.push(CaseSpec { label: "iii".into(), support: vars, fixed: vec![] });
    }
    cases
}

/// Does `t` contain a subterm `v -> v + v`?
pub fn has_doubling(t: &AlgTerm) -> bool {
    if let AlgTerm::Imp(a, b) = t {
        if let AlgTerm::Plus(c, d) = b.as_ref() {
            if a == c && a == d {
                return true;
            }
        }
    }
    t.children().into_iter().any(has_doubling)
}

/// Rewrites every `v -> v + v` to `v`, innermost first. Sound in unbounded
/// totally ordered Wajsberg hoops, where every element satisfies it.
pub fn collapse_doubling(t: &AlgTerm) -> AlgTerm {
    match t {
        AlgTerm::Plus(a, b) => AlgTerm::plus(collapse_doubling(a), collapse_doubling(b)),
        AlgTerm::Imp(a, b) => {
            let (a, b) = (collapse_doubling(a), collapse_doubling(b));
            match &b {
                AlgTerm::Plus(c, d) if **c == a && **d == a => a,
                _ => AlgTerm::imp(a, b),
            }
        }
        _ => t.clone(),
    }
}

pub fn collapse_identity(id: &Identity) -> Identity {
    Identity { lhs: collapse_doubling(&id.lhs), rhs: collapse_doubling(&id.rhs), bounded: false }
}

#[derive(Debug, Clone)]
struct Failure {
    reason: String,
    blocking: Option<Identity>,
}

fn fail(reason: impl Into<String>, blocking: &Identity) -> Failure {
    Failure { reason: reason.into(), blocking: Some(blocking.clone()) }
}

fn oracle_valid(v: Result<Verdict, crate::lra::LraError>, goal: &Identity, what: &str) -> Result<(), Failure> {
    match v {
        Ok(Verdict::Valid) => Ok(()),
        Ok(Verdict::Invalid(w)) => Err(fail(format!("{what} oracle rejects at {}", format_assignment(&w)), goal)),
        Err(e) => Err(fail(format!("{what} oracle: {e}"), goal)),
    }
}

/// Discharge of a goal over subdirectly irreducible Wajsberg hoops that may
/// or may not be bounded; the goal does not mention `1`.
fn discharge_wajsberg(goal: &Identity) -> Result<Discharge, Failure> {
    if goal.lhs.ac_eq(&goal.rhs) {
        return Ok(Discharge::Syntactic);
    }
    if has_doubling(&goal.lhs) || has_doubling(&goal.rhs) {
        let collapsed = collapse_identity(goal);
        if decide_wajsberg(&collapsed).is_ok_and(|v| v.is_valid()) && decide_involutive(goal).is_ok_and(|v| v.is_valid()) {
            return Ok(Discharge::Dichotomy { collapsed });
        }
    }
    oracle_valid(decide_wajsberg(goal), goal, "nonneg")?;
    Ok(Discharge::Oracle(crate::lra::Domain::NonNegReals))
}

fn discharge_case_i(id: &Identity) -> Result<Discharge, Failure> {
    if !id.bounded {
        return discharge_wajsberg(id);
    }
    if id.lhs.ac_eq(&id.rhs) {
        return Ok(Discharge::Syntactic);
    }
    oracle_valid(decide_involutive(id), id, "unit")?;
    Ok(Discharge::Oracle(crate::lra::Domain::UnitInterval))
}

fn rewrite_case(id: &Identity, spec: &CaseSpec) -> Result<(Classified, Classified), Failure> {
    let cls = spec.classes();
    let l = simplify_ordinal(&id.lhs, &cls, id.bounded);
    let r = simplify_ordinal(&id.rhs, &cls, id.bounded);
    match (l, r) {
        (Ok(l), Ok(r)) => Ok((l, r)),
        (Err(b), _) | (_, Err(b)) => Err(fail(format!("case {}: {b}", spec.label), id)),
    }
}

fn prove_case(id: &Identity, spec: &CaseSpec, depth: usize, limit: usize) -> Result<CaseNode, Failure> {
    let node = |goal: Identity, discharge: Discharge| CaseNode {
        label: spec.label.clone(),
        support: spec.support.clone(),
        fixed: spec.fixed.clone(),
        goal,
        discharge,
    };
    if !spec.is_rewritten() {
        return Ok(node(id.clone(), discharge_case_i(id)?));
    }
    if id.lhs.ac_eq(&id.rhs) {
        return Ok(node(id.clone(), Discharge::Syntactic));
    }
    let (l, r) = rewrite_case(id, spec)?;
    let goal = Identity { lhs: l.term.clone(), rhs: r.term.clone(), bounded: id.bounded };
    let discharge = match reduce(&l, &r, id.bounded) {
        Reduction::Trivial => Discharge::Syntactic,
        Reduction::Separated => {
            return Err(fail(format!("case {}: the two sides lie in different summands", spec.label), &goal))
        }
        Reduction::Subgoals { support, fixed } => {
            let support = match support {
                Some(g) => {
                    let d = discharge_wajsberg(&g)?;
                    Some((g, Box::new(d)))
                }
                None => None,
            };
            let fixed = match fixed {
                Some(g) => Some(Box::new(build(&g, depth + 1, limit)?)),
                None => None,
            };
            Discharge::Split { support, fixed }
        }
    };
    Ok(node(goal, discharge))
}

fn build(id: &Identity, depth: usize, limit: usize) -> Result<CaseCertificate, Failure> {
    if depth > limit {
        return Err(fail("depth budget exhausted", id));
    }
    let cases = template(id);
    let nodes: Vec<Result<CaseNode, Failure>> = cases.par_iter().map(|c| prove_case(id, c, depth, limit)).collect();
    let cases = nodes.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CaseCertificate { identity: id.clone(), cases })
}


/// Proves `id` in all hoops (all bounded hoops when `id.bounded`), or
/// refutes it in a finite hoop of order at most `cfg.max_order`.
pub fn prove(id: &Identity, cfg: &ProverConfig) -> ProverResult {
    prove_in(id, &ClassFilter::hoops(), cfg)
}

/// As [`prove`], with counterexamples drawn from the finite pocrims
/// accepted by `class`. The case template is used only when `class`
/// consists of hoops; otherwise only the search runs.
pub fn prove_in(id: &Identity, class: &ClassFilter, cfg: &ProverConfig) -> ProverResult {
    let hoops_only = [Flag::Hoop, Flag::Wajsberg].iter().any(|f| class.require.get(f) == Some(&true));
    let failure = if hoops_only {
        match build(id, 0, cfg.depth) {
            Ok(cert) => return ProverResult::Proved(cert),
            Err(f) => f,
        }
    } else {
        Failure { reason: "the case template applies only to hoops".into(), blocking: None }
    };
    match search_counterexample(id, cfg.max_order, class) {
        Some(r) => ProverResult::Refuted(r),
        None => ProverResult::Unknown(Unknown {
            reason: format!("{}; no counterexample up to order {}", failure.reason, cfg.max_order),
            blocking: failure.blocking,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_identity;

    fn labels(c: &CaseCertificate) -> Vec<&str> {
        c.cases.iter().map(|n| n.label.as_str()).collect()
    }

    #[test]
    fn de_morgan_dual_case_set() {
        let id = parse_identity("(x -> y)^ = x^^ + y^", true).unwrap();
        let ProverResult::Proved(c) = prove(&id, &ProverConfig::default()) else { panic!() };
        assert_eq!(labels(&c), ["i", "ii(a)", "ii(b)", "iii"]);
        assert_eq!(c.cases[1].support, ["x"]);
        assert_eq!(c.cases[2].support, ["y"]);
        check_certificate(&c, &id).unwrap();
    }

    #[test]
    fn fvs_uses_symmetry_and_dichotomy() {
        let id = parse_identity("(e -> e + e) -> (e -> x + y) -> (e -> x) + (e -> y)", false).unwrap();
        assert_eq!(symmetries(&id), vec![(1, 2)]);
        let ProverResult::Proved(c) = prove(&id, &ProverConfig::default()) else { panic!() };
        assert_eq!(labels(&c), ["i", "ii(a)", "ii(b)", "ii(c)", "ii(d)"]);
        assert!(matches!(c.cases[0].discharge, Discharge::Dichotomy { .. }));
        check_certificate(&c, &id).unwrap();
    }

    #[test]
    fn idempotence_is_refuted_in_l3() {
        let id = parse_identity("x + x = x", false).unwrap();
        let ProverResult::Refuted(r) = prove(&id, &ProverConfig::default()) else { panic!() };
        assert_eq!(r.algebra.size(), 3);
        assert!(r.certify(&id));
    }

    #[test]
    fn collapse_is_innermost() {
        let t = crate::syntax::parse_term("(x -> x + x) -> (x -> x + x) + (x -> x + x)").unwrap();
        assert_eq!(collapse_doubling(&t), AlgTerm::var("x"));
    }

    #[test]
    fn letters() {
        assert_eq!(letter(0), "a");
        assert_eq!(letter(25), "z");
        assert_eq!(letter(26), "aa");
    }
}
