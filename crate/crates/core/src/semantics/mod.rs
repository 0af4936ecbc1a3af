//! Standard, Kolmogorov, Gentzen and Glivenko semantics of formulas in
//! finite bounded pocrims, with finite tests of the double negation
//! semantics conditions DNS1 to DNS3.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Assignment, FiniteAlgebra};
use crate::syntax::Formula;

/// Largest number of variables `is_valid` sweeps over by default.
pub const MAX_VALIDITY_VARS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsKind {
    Standard,
    Kolmogorov,
    Gentzen,
    Glivenko,
}

pub const ALL_KINDS: [SemanticsKind; 4] =
    [SemanticsKind::Standard, SemanticsKind::Kolmogorov, SemanticsKind::Gentzen, SemanticsKind::Glivenko];

impl SemanticsKind {
    pub fn name(self) -> &'static str {
        match self {
            SemanticsKind::Standard => "standard",
            SemanticsKind::Kolmogorov => "kolmogorov",
            SemanticsKind::Gentzen => "gentzen",
            SemanticsKind::Glivenko => "glivenko",
        }
    }
}

impl FromStr for SemanticsKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_KINDS
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown semantics '{s}' (expected standard, kolmogorov, gentzen or glivenko)"))
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("variable {0} is not assigned")]
    Unbound(String),
    #[error("algebra has no interpretation for 1")]
    NotBounded,
    #[error("{vars} variables exceed the budget of {limit}")]
    Budget { vars: usize, limit: usize },
    #[error("element {0} is out of range")]
    Range(usize),
}

fn one_of(alg: &FiniteAlgebra) -> Result<usize, SemError> {
    alg.one().ok_or(SemError::NotBounded)
}

fn delta(alg: &FiniteAlgebra, one: usize, x: usize) -> usize {
    alg.imp(alg.imp(x, one), one)
}

fn standard(alg: &FiniteAlgebra, one: usize, alpha: &Assignment, f: &Formula) -> Result<usize, SemError> {
    match f {
        Formula::Var(v) => {
            let x = *alpha.get(v).ok_or_else(|| SemError::Unbound(v.clone()))?;
            if x >= alg.size() {
                return Err(SemError::Range(x));
            }
            Ok(x)
        }
        Formula::One => Ok(one),
        Formula::Tensor(a, b) => Ok(alg.add(standard(alg, one, alpha, a)?, standard(alg, one, alpha, b)?)),
        Formula::Limp(a, b) => Ok(alg.imp(standard(alg, one, alpha, a)?, standard(alg, one, alpha, b)?)),
    }
}

fn kolmogorov(alg: &FiniteAlgebra, one: usize, alpha: &Assignment, f: &Formula) -> Result<usize, SemError> {
    let d = |x| delta(alg, one, x);
    match f {
        Formula::Var(_) => Ok(d(standard(alg, one, alpha, f)?)),
        Formula::One => Ok(one),
        Formula::Tensor(a, b) => Ok(d(alg.add(kolmogorov(alg, one, alpha, a)?, kolmogorov(alg, one, alpha, b)?))),
        Formula::Limp(a, b) => Ok(d(alg.imp(kolmogorov(alg, one, alpha, a)?, kolmogorov(alg, one, alpha, b)?))),
    }
}

/// Value of `f` under `alpha`; `1` is the algebra's annihilator.
pub fn evaluate(kind: SemanticsKind, alg: &FiniteAlgebra, alpha: &Assignment, f: &Formula) -> Result<usize, SemError> {
    let one = one_of(alg)?;
    match kind {
        SemanticsKind::Standard => standard(alg, one, alpha, f),
        SemanticsKind::Kolmogorov => kolmogorov(alg, one, alpha, f),
        SemanticsKind::Gentzen => {
            let mut beta = alpha.clone();
            for x in beta.values_mut() {
                if *x >= alg.size() {
                    return Err(SemError::Range(*x));
                }
                *x = delta(alg, one, *x);
            }
            standard(alg, one, &beta, f)
        }
        SemanticsKind::Glivenko => Ok(delta(alg, one, standard(alg, one, alpha, f)?)),
    }
}

/// Standard semantics with `1` interpreted as the given element, for
/// algebras read in the unbounded signature.
pub fn evaluate_unbounded(alg: &FiniteAlgebra, alpha: &Assignment, one: usize, f: &Formula) -> Result<usize, SemError> {
    if one >= alg.size() {
        return Err(SemError::Range(one));
    }
    standard(alg, one, alpha, f)
}

/// `None` if `f` evaluates to `0` under every assignment, otherwise the
/// first failing assignment in lexicographic order.
pub fn is_valid(kind: SemanticsKind, alg: &FiniteAlgebra, f: &Formula) -> Result<Option<Assignment>, SemError> {
    is_valid_within(kind, alg, f, MAX_VALIDITY_VARS)
}

pub fn is_valid_within(
    kind: SemanticsKind,
    alg: &FiniteAlgebra,
    f: &Formula,
    max_vars: usize,
) -> Result<Option<Assignment>, SemError> {
    let vars = f.vars();
    if vars.len() > max_vars {
        return Err(SemError::Budget { vars: vars.len(), limit: max_vars });
    }
    for alpha in alg.assignments(&vars) {
        if evaluate(kind, alg, &alpha, f)? != 0 {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub formula: Formula,
    pub assignment: Assignment,
    /// `h` applied to the value in the source algebra.
    pub mapped: usize,
    /// The value in the target algebra under `h ∘ alpha`.
    pub direct: usize,
}

/// Checks `h(μ_A(α)(F)) = μ_B(h ∘ α)(F)` for every formula and assignment
/// supplied; returns the first failure.
pub fn check_naturality(
    kind: SemanticsKind,
    h: &[usize],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    formulas: &[Formula],
    assignments: &[Assignment],
) -> Result<Option<NaturalityFailure>, SemError> {
    for f in formulas {
        for alpha in assignments {
            let mapped = h[evaluate(kind, a, alpha, f)?];
            let pushed: Assignment = alpha.iter().map(|(v, &x)| (v.clone(), h[x])).collect();
            let direct = evaluate(kind, b, &pushed, f)?;
            if mapped != direct {
                return Ok(Some(NaturalityFailure { formula: f.clone(), assignment: alpha.clone(), mapped, direct }));
            }
        }
    }
    Ok(None)
}

/// A replayable counterexample: `kind` evaluates `formula` in class member
/// `algebra` under `assignment` to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnsWitness {
    pub formula: Formula,
    pub algebra: usize,
    pub assignment: Assignment,
    pub value: usize,
    /// The value the condition requires.
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DnsResult {
    Pass,
    Fail(DnsWitness),
}

impl DnsResult {
    pub fn passed(&self) -> bool {
        matches!(self, DnsResult::Pass)
    }

    pub fn witness(&self) -> Option<&DnsWitness> {
        match self {
            DnsResult::Pass => None,
            DnsResult::Fail(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnsReport {
    pub kind: SemanticsKind,
    pub dns1: DnsResult,
    pub dns2: DnsResult,
    pub dns3: DnsResult,
    pub formulas: usize,
    /// Formulas whose DNS2 premise held, so that the conclusion was tested.
    pub premises_held: usize,
}

impl DnsReport {
    pub fn passed(&self) -> bool {
        self.dns1.passed() && self.dns2.passed() && self.dns3.passed()
    }

    /// Text form; `names` labels the class members.
    pub fn render(&self, names: &[String], algs: &[FiniteAlgebra]) -> String {
        let mut s = format!("semantics {} over {} formulas\n", self.kind, self.formulas);
        for (label, r) in [("DNS1", &self.dns1), ("DNS2", &self.dns2), ("DNS3", &self.dns3)] {
            match r {
                DnsResult::Pass if label == "DNS2" => s.push_str(&format!(
                    "{label} pass (no counterexample found; premise held for {} formulas)\n",
                    self.premises_held
                )),
                DnsResult::Pass => s.push_str(&format!("{label} pass (no counterexample found)\n")),
                DnsResult::Fail(w) => {
                    let a = &algs[w.algebra];
                    let assign: Vec<String> = w.assignment.iter().map(|(v, &x)| format!("{v}={}", a.name(x))).collect();
                    s.push_str(&format!(
                        "{label} fail: {} in {} at {} has value {}, expected {}\n",
                        w.formula,
                        names[w.algebra],
                        if assign.is_empty() { "-".to_string() } else { assign.join(",") },
                        a.name(w.value),
                        a.name(w.expected)
                    ));
                    s.push_str(&format!(
                        "  replay: eval --alg {} --kind {} --assign {} \"{}\"\n",
                        names[w.algebra],
                        self.kind,
                        assign.join(","),
                        w.formula
                    ));
                }
            }
        }
        s
    }
}

fn is_involutive(a: &FiniteAlgebra) -> bool {
    match a.one() {
        Some(one) => (0..a.size()).all(|x| delta(a, one, x) == x),
        None => false,
    }
}

/// First assignment (lexicographic) at which `bad` reports a witness.
fn sweep(
    a: &FiniteAlgebra,
    f: &Formula,
    mut bad: impl FnMut(&Assignment) -> Result<Option<(usize, usize)>, SemError>,
) -> Result<Option<(Assignment, usize, usize)>, SemError> {
    let vars = f.vars();
    for alpha in a.assignments(&vars) {
        if let Some((v, e)) = bad(&alpha)? {
            return Ok(Some((alpha, v, e)));
        }
    }
    Ok(None)
}

fn first_fail(
    class: &[FiniteAlgebra],
    members: &[usize],
    formulas: &[Formula],
    check: impl Fn(&FiniteAlgebra, &Assignment, &Formula) -> Result<Option<(usize, usize)>, SemError> + Sync,
) -> Result<DnsResult, SemError> {
    let found = formulas
        .par_iter()
        .map(|f| -> Result<Option<DnsWitness>, SemError> {
            for &i in members {
                let a = &class[i];
                if let Some((assignment, value, expected)) = sweep(a, f, |al| check(a, al, f))? {
                    return Ok(Some(DnsWitness { formula: f.clone(), algebra: i, assignment, value, expected }));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(found.into_iter().flatten().next().map_or(DnsResult::Pass, DnsResult::Fail))
}

/// Tests DNS1 to DNS3 for `kind` over a finite class and a finite corpus
/// of formulas. Witnesses are the first failures in corpus order, then
/// class order, then assignment order.
pub fn check_dns(kind: SemanticsKind, class: &[FiniteAlgebra], formulas: &[Formula]) -> Result<DnsReport, SemError> {
    for a in class {
        one_of(a)?;
    }
    let all: Vec<usize> = (0..class.len()).collect();
    let involutive: Vec<usize> = all.iter().copied().filter(|&i| is_involutive(&class[i])).collect();
    let dns1 = first_fail(class, &involutive, formulas, |a, al, f| {
        let (v, s) = (evaluate(kind, a, al, f)?, evaluate(SemanticsKind::Standard, a, al, f)?);
        Ok((v != s).then_some((v, s)))
    })?;
    let premise: Vec<bool> = formulas
        .par_iter()
        .map(|f| -> Result<bool, SemError> {
            for &i in &involutive {
                if is_valid_within(SemanticsKind::Standard, &class[i], f, usize::MAX)?.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<_, _>>()?;
    let valid_corpus: Vec<Formula> = formulas.iter().zip(&premise).filter(|(_, p)| **p).map(|(f, _)| f.clone()).collect();
    let dns2 = first_fail(class, &all, &valid_corpus, |a, al, f| {
        let v = evaluate(kind, a, al, f)?;
        Ok((v != 0).then_some((v, 0)))
    })?;
    let dns3 = first_fail(class, &all, formulas, |a, al, f| {
        let v = evaluate(kind, a, al, f)?;
        let d = delta(a, a.one().unwrap(), v);
        Ok((d != v).then_some((v, d)))
    })?;
    Ok(DnsReport { kind, dns1, dns2, dns3, formulas: formulas.len(), premises_held: valid_corpus.len() })
}

fn gen(rng: &mut ChaCha8Rng, depth: usize, n_vars: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let k = rng.gen_range(0..=n_vars);
        return if k == n_vars { Formula::One } else { Formula::var(&format!("v{}", k + 1)) };
    }
    let a = gen(rng, depth - 1, n_vars);
    let b = gen(rng, depth - 1, n_vars);
    if rng.gen_bool(0.65) {
        Formula::limp(a, b)
    } else {
        Formula::tensor(a, b)
    }
}

/// Up to `count` distinct formulas of depth at most `depth` over
/// `v1..v{n_vars}` and `1`, favouring implications; fewer when the
/// universe is smaller. Deterministic in `seed`.
pub fn random_formulas(depth: usize, n_vars: usize, count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut misses = 0;
    while out.len() < count && misses < 200 + 20 * count {
        let f = gen(&mut rng, depth, n_vars);
        if seen.insert(f.clone()) {
            out.push(f);
        } else {
            misses += 1;
        }
    }
    out
}

/// `(W1^^ -> W1) * ... * (Wk^^ -> Wk)` over the variables of `f`, or `0`
/// when `f` is closed.
pub fn dne_guard(f: &Formula) -> Formula {
    let parts: Vec<Formula> = f
        .vars()
        .iter()
        .map(|v| {
            let w = Formula::var(v);
            Formula::limp(Formula::neg(Formula::neg(w.clone())), w)
        })
        .collect();
    parts.into_iter().reduce(Formula::tensor).unwrap_or_else(Formula::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::syntax::parse_formula;

    fn alpha(a: &FiniteAlgebra, pairs: &[(&str, &str)]) -> Assignment {
        pairs.iter().map(|(v, e)| (v.to_string(), a.element(e).unwrap())).collect()
    }

    #[test]
    fn glivenko_on_p4() {
        let p4 = catalog("P4").unwrap();
        let f = parse_formula("V^^ -> V").unwrap();
        let v = evaluate(SemanticsKind::Glivenko, &p4, &alpha(&p4, &[("V", "q")]), &f).unwrap();
        assert_eq!(p4.name(v), "p");
    }

    #[test]
    fn small_universe() {
        let fs = random_formulas(0, 1, 10, 3);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&Formula::One) && fs.contains(&Formula::var("v1")));
    }
}
