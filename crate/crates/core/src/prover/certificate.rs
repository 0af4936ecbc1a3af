use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{collapse_identity, reduce, simplify_ordinal, template, Reduction, Side};
use crate::algebra::{catalog, ordinal_sum, Assignment, FiniteAlgebra};
use crate::lra::{decide_involutive, decide_wajsberg, Domain};
use crate::syntax::Identity;

/// How a case goal was discharged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discharge {
    /// Both sides are equal up to AC of `+`.
    Syntactic,
    /// The oracle over the given domain reports the goal valid.
    Oracle(Domain),
    /// Unbounded Wajsberg subcase `(a)`: every `v -> v + v` collapses to `v`
    /// and `collapsed` holds over `[0, ∞)`; bounded subcase `(b)`: the goal
    /// holds over `[0, 1]`.
    Dichotomy { collapsed: Identity },
    /// The rewritten goal splits into an `S` identity and an `F` identity,
    /// each discharged separately.
    Split { support: Option<(Identity, Box<Discharge>)>, fixed: Option<Box<CaseCertificate>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseNode {
    pub label: String,
    pub support: Vec<String>,
    pub fixed: Vec<String>,
    /// The identity after ordinal-sum rewriting (unchanged in case `i`).
    pub goal: Identity,
    pub discharge: Discharge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseCertificate {
    pub identity: Identity,
    pub cases: Vec<CaseNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate is for {found}, expected {expected}")]
    WrongIdentity { expected: String, found: String },
    #[error("missing case ({0})")]
    MissingCase(String),
    #[error("unexpected case ({0})")]
    ExtraCase(String),
    #[error("case ({label}): wrong partition")]
    Partition { label: String },
    #[error("case ({label}): {msg}")]
    Step { label: String, msg: String },
}

fn set(vs: &[String]) -> String {
    format!("{{{}}}", vs.join(","))
}

fn sig(id: &Identity) -> &'static str {
    if id.bounded {
        "bounded"
    } else {
        "unbounded"
    }
}

impl CaseCertificate {
    fn write(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        for c in &self.cases {
            let _ = write!(out, "{pad}case {}  S={} F={}  {}", c.label, set(&c.support), set(&c.fixed), c.goal);
            c.discharge.write(out, indent, &c.label, &c.goal);
        }
    }
}

impl Discharge {
    fn write(&self, out: &mut String, indent: usize, label: &str, goal: &Identity) {
        let pad = "  ".repeat(indent + 1);
        match self {
            Discharge::Syntactic => out.push_str("  by syntactic\n"),
            Discharge::Oracle(d) => {
                let _ = writeln!(out, "  by oracle {d}");
            }
            Discharge::Dichotomy { collapsed } => {
                out.push_str("  by dichotomy\n");
                let _ = writeln!(out, "{pad}{label}(a)  {collapsed}  by oracle nonneg");
                let _ = writeln!(out, "{pad}{label}(b)  {goal}  by oracle unit");
            }
            Discharge::Split { support, fixed } => {
                out.push_str("  by split\n");
                if let Some((g, d)) = support {
                    let _ = write!(out, "{pad}S-goal  {g}");
                    d.write(out, indent + 1, "S", g);
                }
                if let Some(c) = fixed {
                    let _ = writeln!(out, "{pad}F-goal  {}  by recursion [{}]", c.identity, sig(&c.identity));
                    c.write(out, indent + 2);
                }
            }
        }
    }
}

impl fmt::Display for CaseCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "prove {}  [{}]", self.identity, sig(&self.identity));
        self.write(&mut s, 1);
        f.write_str(&s)
    }
}

fn step(label: &str, msg: impl Into<String>) -> CertificateError {
    CertificateError::Step { label: label.into(), msg: msg.into() }
}

fn check_oracle(goal: &Identity, domain: Domain, label: &str) -> Result<(), CertificateError> {
    let v = match domain {
        Domain::UnitInterval => decide_involutive(goal),
        Domain::NonNegReals => decide_wajsberg(goal),
    };
    match v {
        Ok(v) if v.is_valid() => Ok(()),
        Ok(_) => Err(step(label, format!("oracle over {domain} rejects {goal}"))),
        Err(e) => Err(step(label, format!("oracle over {domain}: {e}"))),
    }
}

/// Leaves of an `S` goal (no `1`, over subdirectly irreducible Wajsberg hoops).
fn check_wajsberg_leaf(goal: &Identity, d: &Discharge, label: &str) -> Result<(), CertificateError> {
    match d {
        Discharge::Syntactic if goal.lhs.ac_eq(&goal.rhs) => Ok(()),
        Discharge::Syntactic => Err(step(label, format!("{goal} is not a syntactic identity"))),
        Discharge::Oracle(Domain::NonNegReals) => check_oracle(goal, Domain::NonNegReals, label),
        Discharge::Oracle(Domain::UnitInterval) => {
            Err(step(label, "the unit interval oracle does not cover unbounded Wajsberg hoops"))
        }
        Discharge::Dichotomy { collapsed } => {
            if *collapsed != collapse_identity(goal) {
                return Err(step(label, "collapsed goal does not match"));
            }
            check_oracle(collapsed, Domain::NonNegReals, label)?;
            check_oracle(goal, Domain::UnitInterval, label)
        }
        Discharge::Split { .. } => Err(step(label, "Wajsberg goals are not split")),
    }
}

/// Small ordinal sums `S ⌢ F` on which rewritten goals are replayed.
fn sample_sums(case_iii: bool) -> Vec<(FiniteAlgebra, usize)> {
    let supports = ["B", "L3", "L4"];
    let fixeds: &[&str] = if case_iii { &["B"] } else { &["B", "L3", "G3"] };
    let mut out = Vec::new();
    for s in supports {
        for f in fixeds {
            let (s, f) = (catalog(s).unwrap(), catalog(f).unwrap());
            out.push((ordinal_sum(&s, &f), s.size()));
        }
    }
    out
}

/// Checks pointwise that the rewritten goal agrees with the original on
/// every placement of the variables into the two summands.
fn replay(id: &Identity, node: &CaseNode) -> Result<(), CertificateError> {
    let vars = id.vars();
    let classes: BTreeMap<String, Side> = node
        .support
        .iter()
        .map(|v| (v.clone(), Side::Support))
        .chain(node.fixed.iter().map(|v| (v.clone(), Side::Fixed)))
        .collect();
    for (h, ns) in sample_sums(node.label == "iii") {
        let ranges: Vec<Vec<usize>> = vars
            .iter()
            .map(|v| match classes[v] {
                Side::Support => (0..ns).collect(),
                Side::Fixed => (ns..h.size()).collect(),
            })
            .collect();
        let total: usize = ranges.iter().map(Vec::len).product();
        for mut code in 0..total {
            let mut alpha = Assignment::new();
            for (v, r) in vars.iter().zip(&ranges).rev() {
                alpha.insert(v.clone(), r[code % r.len()]);
                code /= r.len();
            }
            let ev = |t| h.eval_term(t, &alpha).map_err(|e| step(&node.label, e.to_string()));
            if ev(&id.lhs)? != ev(&node.goal.lhs)? || ev(&id.rhs)? != ev(&node.goal.rhs)? {
                return Err(step(&node.label, "rewriting changes the value on a sample ordinal sum"));
            }
        }
    }
    Ok(())
}

fn check_node(id: &Identity, node: &CaseNode) -> Result<(), CertificateError> {
    let label = node.label.as_str();
    if label == "i" {
        if node.goal != *id {
            return Err(step(label, "case (i) must keep the identity unchanged"));
        }
        if !id.bounded {
            return check_wajsberg_leaf(id, &node.discharge, label);
        }
        return match &node.discharge {
            Discharge::Syntactic if id.lhs.ac_eq(&id.rhs) => Ok(()),
            Discharge::Oracle(Domain::UnitInterval) => check_oracle(id, Domain::UnitInterval, label),
            _ => Err(step(label, "bounded Wajsberg case needs the unit interval oracle")),
        };
    }
    if node.goal == *id && node.discharge == Discharge::Syntactic && id.lhs.ac_eq(&id.rhs) {
        return Ok(());
    }
    let classes: BTreeMap<String, Side> = node
        .support
        .iter()
        .map(|v| (v.clone(), Side::Support))
        .chain(node.fixed.iter().map(|v| (v.clone(), Side::Fixed)))
        .collect();
    let l = simplify_ordinal(&id.lhs, &classes, id.bounded).map_err(|b| step(label, b.to_string()))?;
    let r = simplify_ordinal(&id.rhs, &classes, id.bounded).map_err(|b| step(label, b.to_string()))?;
    if node.goal.lhs != l.term || node.goal.rhs != r.term || node.goal.bounded != id.bounded {
        return Err(step(label, "recorded goal differs from the rewritten identity"));
    }
    replay(id, node)?;
    match (reduce(&l, &r, id.bounded), &node.discharge) {
        (Reduction::Trivial, Discharge::Syntactic) => Ok(()),
        (Reduction::Subgoals { support, fixed }, Discharge::Split { support: cs, fixed: cf }) => {
            match (&support, cs) {
                (None, None) => {}
                (Some(g), Some((cg, d))) if g == cg => check_wajsberg_leaf(g, d, label)?,
                _ => return Err(step(label, "S-goal does not match")),
            }
            match (&fixed, cf) {
                (None, None) => Ok(()),
                (Some(g), Some(c)) => check_certificate(c, g),
                _ => Err(step(label, "F-goal does not match")),
            }
        }
        (Reduction::Separated, _) => Err(step(label, "sides lie in different summands")),
        _ => Err(step(label, "discharge does not match the rewritten goal")),
    }
}

/// Replays a certificate: the case set must be exactly the template for
/// `id`, every rewrite is recomputed (and spot-checked on small ordinal
/// sums), and every oracle verdict is re-run.
pub fn check_certificate(cert: &CaseCertificate, id: &Identity) -> Result<(), CertificateError> {
    if cert.identity != *id {
        return Err(CertificateError::WrongIdentity { expected: id.to_string(), found: cert.identity.to_string() });
    }
    let expected = template(id);
    for spec in &expected {
        let Some(node) = cert.cases.iter().find(|c| c.label == spec.label) else {
            return Err(CertificateError::MissingCase(spec.label.clone()));
        };
        if node.support != spec.support || node.fixed != spec.fixed {
            return Err(CertificateError::Partition { label: spec.label.clone() });
        }
    }
    for c in &cert.cases {
        if !expected.iter().any(|s| s.label == c.label) {
            return Err(CertificateError::ExtraCase(c.label.clone()));
        }
    }
    if cert.cases.len() != expected.len() {
        return Err(CertificateError::ExtraCase("duplicate".into()));
    }
    for c in &cert.cases {
        check_node(id, c)?;
    }
    Ok(())
}
