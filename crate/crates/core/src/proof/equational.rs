//! Equational proofs over the theory of (bounded) hoops: commutative monoid
//! laws plus
//!
//! ```text
//! eq1  x -> x = 0
//! eq2  x -> 0 = 0
//! eq3  x + y -> z = x -> y -> z
//! eq4  x + (x -> y) = y + (y -> x)
//! eq5  1 -> x = 0          (bounded only)
//! ```
//!
//! A proof is a main chain of terms, each obtained from the previous one by
//! rewriting the subterm at a path with one rule instance. Ground
//! hypotheses and previously proved lemma chains may be used as rules.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use thiserror::Error;

use crate::syntax::{parse_term, AlgTerm, Identity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EqRule {
    Assoc,
    Comm,
    Unit,
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
    /// Ground hypothesis, 0-based.
    Hyp(usize),
    /// The equation proved by an earlier lemma chain, 0-based.
    Lemma(usize),
}

const SCHEMATIC: [EqRule; 8] =
    [EqRule::Assoc, EqRule::Comm, EqRule::Unit, EqRule::Eq1, EqRule::Eq2, EqRule::Eq3, EqRule::Eq4, EqRule::Eq5];

impl EqRule {
    fn source(self) -> Option<&'static str> {
        Some(match self {
            EqRule::Assoc => "(x + y) + z = x + (y + z)",
            EqRule::Comm => "x + y = y + x",
            EqRule::Unit => "x + 0 = x",
            EqRule::Eq1 => "x -> x = 0",
            EqRule::Eq2 => "x -> 0 = 0",
            EqRule::Eq3 => "x + y -> z = x -> y -> z",
            EqRule::Eq4 => "x + (x -> y) = y + (y -> x)",
            EqRule::Eq5 => "1 -> x = 0",
            EqRule::Hyp(_) | EqRule::Lemma(_) => return None,
        })
    }

    /// Both sides of a schematic rule over the pattern variables `x, y, z`.
    pub fn pattern(self) -> Option<&'static (AlgTerm, AlgTerm)> {
        static CACHE: OnceLock<Vec<(AlgTerm, AlgTerm)>> = OnceLock::new();
        let all = CACHE.get_or_init(|| {
            SCHEMATIC
                .iter()
                .map(|r| {
                    let (l, r) = r.source().unwrap().split_once(" = ").unwrap();
                    (parse_term(l).unwrap(), parse_term(r).unwrap())
                })
                .collect()
        });
        SCHEMATIC.iter().position(|r| *r == self).map(|i| &all[i])
    }

    fn parse(s: &str) -> Result<EqRule, String> {
        if let Some(k) = s.strip_prefix("hyp ") {
            return index(k).map(EqRule::Hyp);
        }
        if let Some(k) = s.strip_prefix("lemma ") {
            return index(k).map(EqRule::Lemma);
        }
        SCHEMATIC.iter().copied().find(|r| r.to_string() == s).ok_or_else(|| format!("unknown rule '{s}'"))
    }
}

fn index(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k - 1),
        _ => Err(format!("expected a positive index, found '{s}'")),
    }
}

impl fmt::Display for EqRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqRule::Assoc => f.write_str("assoc"),
            EqRule::Comm => f.write_str("comm"),
            EqRule::Unit => f.write_str("unit"),
            EqRule::Eq1 => f.write_str("eq1"),
            EqRule::Eq2 => f.write_str("eq2"),
            EqRule::Eq3 => f.write_str("eq3"),
            EqRule::Eq4 => f.write_str("eq4"),
            EqRule::Eq5 => f.write_str("eq5"),
            EqRule::Hyp(k) => write!(f, "hyp {}", k + 1),
            EqRule::Lemma(k) => write!(f, "lemma {}", k + 1),
        }
    }
}

/// `Fwd` rewrites an instance of the left side into the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EqStep {
    pub rule: EqRule,
    pub path: Vec<usize>,
    pub dir: Dir,
}

impl fmt::Display for EqStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = if self.dir == Dir::Fwd { "fwd" } else { "bwd" };
        write!(f, "{} at {} {dir}", self.rule, path_text(&self.path))
    }
}

fn path_text(p: &[usize]) -> String {
    if p.is_empty() {
        "root".into()
    } else {
        p.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

fn parse_path(s: &str) -> Result<Vec<usize>, String> {
    if s == "root" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|c| match c.parse::<usize>() {
            Ok(i @ (0 | 1)) => Ok(i),
            _ => Err(format!("bad path component '{c}'")),
        })
        .collect()
}

/// `terms[k + 1]` follows from `terms[k]` by `steps[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EqChain {
    pub terms: Vec<AlgTerm>,
    pub steps: Vec<EqStep>,
}

impl EqChain {
    pub fn start(&self) -> &AlgTerm {
        &self.terms[0]
    }

    pub fn end(&self) -> &AlgTerm {
        self.terms.last().expect("a chain has at least one term")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> EqChain {
        EqChain {
            terms: self.terms.iter().rev().cloned().collect(),
            steps: self.steps.iter().rev().map(|s| EqStep { dir: s.dir.flip(), ..s.clone() }).collect(),
        }
    }

    fn write(&self, out: &mut String) {
        for (k, t) in self.terms.iter().enumerate() {
            let _ = writeln!(out, "  {t}");
            if let Some(s) = self.steps.get(k) {
                let _ = writeln!(out, "    {s}");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationalProof {
    /// The claim `lhs = rhs`; its `bounded` flag selects the signature used
    /// by the text format.
    pub goal: Identity,
    pub hypotheses: Vec<Identity>,
    /// Each lemma proves `start = end` and may use hypotheses and earlier lemmas.
    pub lemmas: Vec<EqChain>,
    pub main: EqChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{chain}{}: {msg}", step.map(|k| format!(", step {k}")).unwrap_or_default())]
pub struct EqError {
    /// `main`, `lemma k` or `goal`.
    pub chain: String,
    /// 1-based step within the chain.
    pub step: Option<usize>,
    pub msg: String,
}

fn err(chain: &str, step: Option<usize>, msg: impl Into<String>) -> EqError {
    EqError { chain: chain.into(), step, msg: msg.into() }
}

type Bindings = BTreeMap<String, AlgTerm>;

fn matches(pat: &AlgTerm, t: &AlgTerm, b: &mut Bindings) -> bool {
    match (pat, t) {
        (AlgTerm::Var(v), _) => match b.get(v) {
            Some(bound) => bound == t,
            None => {
                b.insert(v.clone(), t.clone());
                true
            }
        },
        (AlgTerm::Zero, AlgTerm::Zero) | (AlgTerm::One, AlgTerm::One) => true,
        (AlgTerm::Plus(p1, p2), AlgTerm::Plus(t1, t2)) | (AlgTerm::Imp(p1, p2), AlgTerm::Imp(t1, t2)) => {
            matches(p1, t1, b) && matches(p2, t2, b)
        }
        _ => false,
    }
}

/// The ground equations available as `hyp k` and `lemma k`.
struct Ground<'a> {
    hyps: &'a [Identity],
    lemmas: &'a [(AlgTerm, AlgTerm)],
}

impl Ground<'_> {
    fn sides(&self, rule: EqRule) -> Result<(AlgTerm, AlgTerm), String> {
        match rule {
            EqRule::Hyp(k) => {
                self.hyps.get(k).map(|h| (h.lhs.clone(), h.rhs.clone())).ok_or(format!("no hypothesis {}", k + 1))
            }
            EqRule::Lemma(k) => self.lemmas.get(k).cloned().ok_or(format!("lemma {} is not available here", k + 1)),
            _ => Ok(rule.pattern().expect("schematic rule").clone()),
        }
    }
}

fn check_step(from: &AlgTerm, to: &AlgTerm, step: &EqStep, g: &Ground, bounded: bool) -> Result<(), String> {
    if step.rule == EqRule::Eq5 && !bounded {
        return Err("eq5 needs the bounded signature".into());
    }
    let (Some(s), Some(s2)) = (from.at(&step.path), to.at(&step.path)) else {
        return Err(format!("invalid position {}", path_text(&step.path)));
    };
    if from.replace_at(&step.path, s2.clone()).as_ref() != Some(to) {
        return Err(format!("terms differ outside position {}", path_text(&step.path)));
    }
    let (l, r) = g.sides(step.rule)?;
    let (a, b) = if step.dir == Dir::Fwd { (l, r) } else { (r, l) };
    let ok = match step.rule {
        EqRule::Hyp(_) | EqRule::Lemma(_) => *s == a && *s2 == b,
        _ => {
            let mut bind = Bindings::new();
            matches(&a, s, &mut bind) && matches(&b, s2, &mut bind)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{} does not rewrite {s} into {s2}", step.rule))
    }
}

fn check_chain(name: &str, c: &EqChain, g: &Ground, bounded: bool) -> Result<(), EqError> {
    if c.terms.len() != c.steps.len() + 1 {
        return Err(err(name, None, "chain must alternate terms and steps"));
    }
    if !bounded {
        if let Some(k) = c.terms.iter().position(AlgTerm::contains_one) {
            return Err(err(name, k.checked_sub(1).map(|k| k + 1), "constant 1 in the unbounded signature"));
        }
    }
    for (k, step) in c.steps.iter().enumerate() {
        check_step(&c.terms[k], &c.terms[k + 1], step, g, bounded).map_err(|m| err(name, Some(k + 1), m))?;
    }
    Ok(())
}

/// Replays every step and checks that the main chain runs from the goal's
/// left side to its right side.
pub fn check_equational(e: &EquationalProof, bounded: bool) -> Result<(), EqError> {
    if !bounded {
        let has_one = e.goal.lhs.contains_one()
            || e.goal.rhs.contains_one()
            || e.hypotheses.iter().any(|h| h.lhs.contains_one() || h.rhs.contains_one());
        if has_one {
            return Err(err("goal", None, "constant 1 in the unbounded signature"));
        }
    }
    let mut proved: Vec<(AlgTerm, AlgTerm)> = Vec::with_capacity(e.lemmas.len());
    for (k, lemma) in e.lemmas.iter().enumerate() {
        let g = Ground { hyps: &e.hypotheses, lemmas: &proved };
        check_chain(&format!("lemma {}", k + 1), lemma, &g, bounded)?;
        proved.push((lemma.start().clone(), lemma.end().clone()));
    }
    let g = Ground { hyps: &e.hypotheses, lemmas: &proved };
    check_chain("main", &e.main, &g, bounded)?;
    if *e.main.start() != e.goal.lhs {
        return Err(err("main", None, format!("chain starts at {}, not at {}", e.main.start(), e.goal.lhs)));
    }
    if *e.main.end() != e.goal.rhs {
        return Err(err("main", None, format!("goal not reached: chain ends at {}", e.main.end())));
    }
    Ok(())
}

/// Builds a chain step by step, computing each next term from the rule.
#[derive(Debug, Clone)]
pub struct ChainBuilder {
    chain: EqChain,
}

impl ChainBuilder {
    pub fn new(start: AlgTerm) -> ChainBuilder {
        ChainBuilder { chain: EqChain { terms: vec![start], steps: Vec::new() } }
    }

    pub fn current(&self) -> &AlgTerm {
        self.chain.end()
    }

    /// Applies a schematic rule at `path`. Pattern variables that occur only
    /// on the target side must be given in `inst`.
    pub fn apply(&mut self, rule: EqRule, path: &[usize], dir: Dir, inst: &[(&str, &AlgTerm)]) -> Result<&mut Self, String> {
        let (l, r) = rule.pattern().ok_or_else(|| format!("{rule} is not schematic"))?;
        let (a, b) = if dir == Dir::Fwd { (l, r) } else { (r, l) };
        let sub = self.current().at(path).ok_or_else(|| format!("invalid position {}", path_text(path)))?;
        let mut bind: Bindings = inst.iter().map(|(k, t)| (k.to_string(), (*t).clone())).collect();
        if !matches(a, sub, &mut bind) {
            return Err(format!("{rule} does not apply to {sub}"));
        }
        if let Some(v) = b.vars().into_iter().find(|v| !bind.contains_key(v)) {
            return Err(format!("{rule} needs an instance for {v}"));
        }
        let new = b.substitute(&bind);
        self.push(EqStep { rule, path: path.to_vec(), dir }, new)
    }

    /// Uses a ground equation `lhs = rhs` registered as `rule`.
    pub fn apply_ground(&mut self, rule: EqRule, path: &[usize], dir: Dir, lhs: &AlgTerm, rhs: &AlgTerm) -> Result<&mut Self, String> {
        let (a, b) = if dir == Dir::Fwd { (lhs, rhs) } else { (rhs, lhs) };
        let sub = self.current().at(path).ok_or_else(|| format!("invalid position {}", path_text(path)))?;
        if sub != a {
            return Err(format!("{rule} expects {a}, found {sub}"));
        }
        self.push(EqStep { rule, path: path.to_vec(), dir }, b.clone())
    }

    /// Replays `chain` on the subterm at `path`.
    pub fn splice(&mut self, chain: &EqChain, path: &[usize]) -> Result<&mut Self, String> {
        if self.current().at(path) != Some(chain.start()) {
            return Err(format!("spliced chain does not start at position {}", path_text(path)));
        }
        for (s, t) in chain.steps.iter().zip(&chain.terms[1..]) {
            let full: Vec<usize> = path.iter().chain(&s.path).copied().collect();
            let sub = t.at(&s.path).ok_or("invalid position in spliced chain")?.clone();
            self.push(EqStep { rule: s.rule, path: full, dir: s.dir }, sub)?;
        }
        Ok(self)
    }

    fn push(&mut self, step: EqStep, new_sub: AlgTerm) -> Result<&mut Self, String> {
        let next = self.current().replace_at(&step.path, new_sub).ok_or("invalid position")?;
        self.chain.steps.push(step);
        self.chain.terms.push(next);
        Ok(self)
    }

    pub fn finish(self) -> EqChain {
        self.chain
    }
}

fn inline_chain(c: &EqChain, done: &[EqChain]) -> EqChain {
    let mut b = ChainBuilder::new(c.start().clone());
    for (s, t) in c.steps.iter().zip(&c.terms[1..]) {
        match s.rule {
            EqRule::Lemma(k) => {
                let sub = if s.dir == Dir::Fwd { done[k].clone() } else { done[k].reversed() };
                b.splice(&sub, &s.path).expect("checked proofs inline cleanly");
            }
            _ => {
                b.chain.steps.push(s.clone());
                b.chain.terms.push(t.clone());
            }
        }
    }
    b.finish()
}

/// Replaces every lemma reference by the lemma's own chain, giving a
/// single chain from the goal's left side to its right side. The input
/// should already check.
pub fn inline(e: &EquationalProof) -> EquationalProof {
    let mut done: Vec<EqChain> = Vec::with_capacity(e.lemmas.len());
    for l in &e.lemmas {
        let c = inline_chain(l, &done);
        done.push(c);
    }
    EquationalProof { goal: e.goal.clone(), hypotheses: e.hypotheses.clone(), lemmas: Vec::new(), main: inline_chain(&e.main, &done) }
}

fn build(start: AlgTerm, f: impl FnOnce(&mut ChainBuilder) -> Result<(), String>) -> EqChain {
    let mut b = ChainBuilder::new(start);
    f(&mut b).expect("fixed derivation applies");
    b.finish()
}

/// A chain from `x -> 0` to `0` using only the monoid laws, eq1, eq3 and eq4.
pub fn eq2_chain(x: &AlgTerm) -> EqChain {
    use Dir::*;
    use EqRule::*;
    let z = AlgTerm::Zero;
    let u = AlgTerm::imp(x.clone(), z.clone());
    let zx = AlgTerm::imp(z.clone(), x.clone());
    let xu = AlgTerm::plus(x.clone(), u.clone());
    // x + u = 0 -> x
    let e0 = build(xu.clone(), |b| {
        b.apply(Eq4, &[], Fwd, &[])?.apply(Comm, &[], Fwd, &[])?.apply(Unit, &[], Fwd, &[])?;
        Ok(())
    });
    // u = 0 -> u, since u is an implication
    let f1 = build(u.clone(), |b| {
        b.apply(Unit, &[0], Bwd, &[])?.apply(Comm, &[0], Fwd, &[])?.apply(Eq3, &[], Fwd, &[])?;
        Ok(())
    });
    // x -> (0 -> x) = 0
    let ld = build(AlgTerm::imp(x.clone(), zx.clone()), |b| {
        b.apply(Eq3, &[], Bwd, &[])?.apply(Unit, &[0], Fwd, &[])?.apply(Eq1, &[], Fwd, &[])?;
        Ok(())
    });
    // x = x + u
    let l1 = build(x.clone(), |b| {
        b.apply(Unit, &[], Bwd, &[])?
            .splice(&ld.reversed(), &[1])?
            .splice(&e0.reversed(), &[1, 1])?
            .apply(Eq4, &[], Fwd, &[])?
            .apply(Comm, &[1, 0], Fwd, &[])?
            .apply(Eq3, &[1], Fwd, &[])?
            .apply(Eq1, &[1, 1], Fwd, &[])?
            .apply(Assoc, &[], Fwd, &[])?
            .apply(Eq4, &[1], Fwd, &[])?
            .apply(Comm, &[1], Fwd, &[])?
            .apply(Unit, &[1], Fwd, &[])?
            .splice(&f1.reversed(), &[1])?;
        Ok(())
    });
    debug_assert_eq!(*l1.end(), xu);
    build(u, |b| {
        b.splice(&l1, &[0])?.apply(Comm, &[0], Fwd, &[])?.apply(Eq3, &[], Fwd, &[])?.apply(Eq1, &[], Fwd, &[])?;
        Ok(())
    })
}

fn expand_chain(c: &EqChain) -> EqChain {
    let mut b = ChainBuilder::new(c.start().clone());
    for (k, s) in c.steps.iter().enumerate() {
        if s.rule == EqRule::Eq2 {
            let redex = if s.dir == Dir::Fwd { &c.terms[k] } else { &c.terms[k + 1] };
            let Some(AlgTerm::Imp(x, _)) = redex.at(&s.path) else { unreachable!("checked eq2 step") };
            let sub = eq2_chain(x);
            let sub = if s.dir == Dir::Fwd { sub } else { sub.reversed() };
            b.splice(&sub, &s.path).expect("eq2 expansion applies");
        } else {
            b.chain.steps.push(s.clone());
            b.chain.terms.push(c.terms[k + 1].clone());
        }
    }
    b.finish()
}

/// Replaces every eq2 step by its derivation from the other rules. The
/// input should already check.
pub fn expand_eq2(e: &EquationalProof) -> EquationalProof {
    EquationalProof {
        goal: e.goal.clone(),
        hypotheses: e.hypotheses.clone(),
        lemmas: e.lemmas.iter().map(expand_chain).collect(),
        main: expand_chain(&e.main),
    }
}

impl EquationalProof {
    /// Total number of rewrite steps.
    pub fn len(&self) -> usize {
        self.lemmas.iter().map(EqChain::len).sum::<usize>() + self.main.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn uses(&self, rule: EqRule) -> bool {
        self.lemmas.iter().chain([&self.main]).any(|c| c.steps.iter().any(|s| s.rule == rule))
    }

    /// Every term on every chain.
    pub fn terms(&self) -> impl Iterator<Item = &AlgTerm> {
        self.lemmas.iter().chain([&self.main]).flat_map(|c| c.terms.iter())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let sig = if self.goal.bounded { "bounded" } else { "unbounded" };
        let _ = writeln!(s, "equational {sig}");
        let _ = writeln!(s, "goal: {}", self.goal);
        for (k, h) in self.hypotheses.iter().enumerate() {
            let _ = writeln!(s, "hyp {}: {h}", k + 1);
        }
        for (k, l) in self.lemmas.iter().enumerate() {
            let _ = writeln!(s, "lemma {}:", k + 1);
            l.write(&mut s);
        }
        s.push_str("main:\n");
        self.main.write(&mut s);
        s
    }

    pub fn from_text(src: &str) -> Result<EquationalProof, EqError> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let perr = |line: usize, msg: String| err(&format!("line {line}"), None, msg);
        let (ln, head) = lines.next().ok_or_else(|| perr(0, "empty proof".into()))?;
        let bounded = match head {
            "equational bounded" => true,
            "equational unbounded" => false,
            _ => return Err(perr(ln, "expected 'equational bounded' or 'equational unbounded'".into())),
        };
        let ident = |ln: usize, s: &str| -> Result<Identity, EqError> {
            let (l, r) = s.split_once('=').ok_or_else(|| perr(ln, "expected 'lhs = rhs'".into()))?;
            let t = |x: &str| parse_term(x.trim()).map_err(|e| perr(ln, e.to_string()));
            Ok(Identity { lhs: t(l)?, rhs: t(r)?, bounded })
        };
        let (ln, g) = lines.next().ok_or_else(|| perr(ln, "missing goal".into()))?;
        let goal = ident(ln, g.strip_prefix("goal:").ok_or_else(|| perr(ln, "expected 'goal:'".into()))?)?;
        let mut hypotheses = Vec::new();
        let mut lemmas = Vec::new();
        let mut main = None;
        while let Some((ln, l)) = lines.next() {
            if let Some(rest) = l.strip_prefix("hyp ") {
                let (k, eq) = rest.split_once(':').ok_or_else(|| perr(ln, "expected 'hyp k: lhs = rhs'".into()))?;
                if index(k).map_err(|m| perr(ln, m))? != hypotheses.len() {
                    return Err(perr(ln, "hypotheses must be numbered in order".into()));
                }
                hypotheses.push(ident(ln, eq)?);
                continue;
            }
            let is_main = l == "main:";
            if !is_main {
                let k = l.strip_prefix("lemma ").and_then(|r| r.strip_suffix(':')).ok_or_else(|| perr(ln, format!("unexpected '{l}'")))?;
                if index(k).map_err(|m| perr(ln, m))? != lemmas.len() {
                    return Err(perr(ln, "lemmas must be numbered in order".into()));
                }
            }
            let mut terms = Vec::new();
            let mut steps = Vec::new();
            while let Some(&(ln, l)) = lines.peek() {
                if l == "main:" || l.starts_with("lemma ") && l.ends_with(':') || l.starts_with("hyp ") && l.contains(':') {
                    break;
                }
                lines.next();
                match parse_step_line(l) {
                    Some(step) => {
                        if terms.len() != steps.len() + 1 {
                            return Err(perr(ln, "a step must follow a term".into()));
                        }
                        steps.push(step.map_err(|m| perr(ln, m))?);
                    }
                    None => {
                        if terms.len() != steps.len() {
                            return Err(perr(ln, "two terms without a step between them".into()));
                        }
                        terms.push(parse_term(l).map_err(|e| perr(ln, e.to_string()))?);
                    }
                }
            }
            if terms.is_empty() || terms.len() != steps.len() + 1 {
                return Err(perr(ln, "a chain must start and end with a term".into()));
            }
            let c = EqChain { terms, steps };
            if is_main {
                if main.is_some() {
                    return Err(perr(ln, "two main chains".into()));
                }
                main = Some(c);
            } else {
                lemmas.push(c);
            }
        }
        let main = main.ok_or_else(|| perr(0, "missing main chain".into()))?;
        Ok(EquationalProof { goal, hypotheses, lemmas, main })
    }
}

/// `Some` if the line has the shape of a step line.
fn parse_step_line(l: &str) -> Option<Result<EqStep, String>> {
    let (head, dir) = l.rsplit_once(' ')?;
    let dir = match dir {
        "fwd" => Dir::Fwd,
        "bwd" => Dir::Bwd,
        _ => return None,
    };
    let (rule, path) = head.rsplit_once(" at ")?;
    Some((|| Ok(EqStep { rule: EqRule::parse(rule.trim())?, path: parse_path(path.trim())?, dir }))())
}

impl fmt::Display for EquationalProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AlgTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn eq2_is_derivable() {
        for x in ["x", "x + y", "x -> y", "0"] {
            let c = eq2_chain(&t(x));
            assert!(!c.steps.iter().any(|s| s.rule == EqRule::Eq2));
            let e = EquationalProof {
                goal: Identity { lhs: AlgTerm::imp(t(x), AlgTerm::Zero), rhs: AlgTerm::Zero, bounded: false },
                hypotheses: vec![],
                lemmas: vec![],
                main: c,
            };
            check_equational(&e, false).unwrap();
        }
    }

    #[test]
    fn matching_is_joint() {
        let g = Ground { hyps: &[], lemmas: &[] };
        let ok = EqStep { rule: EqRule::Comm, path: vec![], dir: Dir::Fwd };
        assert!(check_step(&t("x + y"), &t("y + x"), &ok, &g, false).is_ok());
        assert!(check_step(&t("x + y"), &t("y + z"), &ok, &g, false).is_err());
    }
}
