use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::logic::{LogicId, Schema};
use crate::syntax::{parse_formula, Formula};

pub type Subst = BTreeMap<String, Formula>;

/// One line of a Hilbert-style proof. Step indices are 0-based here and
/// 1-based in the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertStep {
    Axiom { schema: Schema, subst: Subst },
    /// Modus ponens from `minor` (proving `B`) and `major` (proving `B -> A`).
    Mp { minor: usize, major: usize },
    /// Modus ponens whose major premise is an axiom instance written inline,
    /// as in `[3, (Comp)]`.
    MpAxiom { minor: usize, schema: Schema, subst: Subst },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HilbertProof {
    pub steps: Vec<HilbertStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("line {line}: schema {schema} not in logic {logic}")]
    SchemaNotInLogic { line: usize, schema: Schema, logic: LogicId },
    #[error("line {line}: step {index} does not precede this line")]
    BadIndex { line: usize, index: usize },
    #[error("line {line}: modus ponens mismatch: {msg}")]
    MpMismatch { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Instance { line: usize, msg: String },
    #[error("empty proof")]
    Empty,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Shape(String),
    #[error("logic {0} is not supported here")]
    UnsupportedLogic(LogicId),
}

fn instance(line: usize, schema: Schema, subst: &Subst, logic: Option<LogicId>) -> Result<Formula, ProofError> {
    if let Some(logic) = logic.filter(|l| !l.has(schema)) {
        return Err(ProofError::SchemaNotInLogic { line, schema, logic });
    }
    schema.instance(subst).map_err(|msg| ProofError::Instance { line, msg })
}

fn modus_ponens(line: usize, minor: &Formula, major: &Formula) -> Result<Formula, ProofError> {
    match major {
        Formula::Limp(b, a) if **b == *minor => Ok((**a).clone()),
        Formula::Limp(b, _) => {
            Err(ProofError::MpMismatch { line, msg: format!("premise is {minor}, implication expects {b}") })
        }
        _ => Err(ProofError::MpMismatch { line, msg: format!("{major} is not an implication") }),
    }
}

impl HilbertProof {
    /// The formula proved at each step.
    pub fn formulas(&self, logic: LogicId) -> Result<Vec<Formula>, ProofError> {
        self.replay(Some(logic))
    }

    /// The formula proved at each step, allowing every schema.
    pub fn conclusions(&self) -> Result<Vec<Formula>, ProofError> {
        self.replay(None)
    }

    /// The final formula, allowing every schema.
    pub fn conclusion(&self) -> Result<Formula, ProofError> {
        self.conclusions()?.pop().ok_or(ProofError::Empty)
    }

    fn replay(&self, logic: Option<LogicId>) -> Result<Vec<Formula>, ProofError> {
        let mut out: Vec<Formula> = Vec::with_capacity(self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            let line = k + 1;
            let get = |i: usize| out.get(i).filter(|_| i < k).ok_or(ProofError::BadIndex { line, index: i + 1 });
            let f = match step {
                HilbertStep::Axiom { schema, subst } => instance(line, *schema, subst, logic)?,
                HilbertStep::Mp { minor, major } => modus_ponens(line, get(*minor)?, get(*major)?)?,
                HilbertStep::MpAxiom { minor, schema, subst } => {
                    let major = instance(line, *schema, subst, logic)?;
                    modus_ponens(line, get(*minor)?, &major)?
                }
            };
            out.push(f);
        }
        Ok(out)
    }

    /// The inline axiom instances, keyed by step.
    pub fn inline_axioms(&self, logic: LogicId) -> Result<BTreeMap<usize, Formula>, ProofError> {
        let mut out = BTreeMap::new();
        for (k, step) in self.steps.iter().enumerate() {
            if let HilbertStep::MpAxiom { schema, subst, .. } = step {
                out.insert(k, instance(k + 1, *schema, subst, Some(logic))?);
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends `other`, renumbering its references; returns the index of
    /// its last step.
    pub fn include(&mut self, other: &HilbertProof) -> usize {
        let off = self.steps.len();
        for s in &other.steps {
            self.steps.push(match s {
                HilbertStep::Axiom { .. } => s.clone(),
                HilbertStep::Mp { minor, major } => HilbertStep::Mp { minor: minor + off, major: major + off },
                HilbertStep::MpAxiom { minor, schema, subst } => {
                    HilbertStep::MpAxiom { minor: minor + off, schema: *schema, subst: subst.clone() }
                }
            });
        }
        self.steps.len() - 1
    }

    pub fn push(&mut self, step: HilbertStep) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            match step {
                HilbertStep::Axiom { schema, subst } => writeln!(s, "ax {schema} {}", subst_text(subst)),
                HilbertStep::Mp { minor, major } => writeln!(s, "mp {} {}", minor + 1, major + 1),
                HilbertStep::MpAxiom { minor, schema, subst } => {
                    writeln!(s, "mp {} ax {schema} {}", minor + 1, subst_text(subst))
                }
            }
            .unwrap();
        }
        s
    }

    /// Parses the text format: one step per line, `ax SCHEMA { A = ...; B = ... }`,
    /// `mp i j` or `mp i ax SCHEMA { ... }`. Blank lines, `#` comments and
    /// an optional `logic NAME` header are skipped; step numbers count
    /// steps, error positions count lines.
    pub fn from_text(src: &str) -> Result<(HilbertProof, Option<LogicId>), ProofError> {
        let mut steps = Vec::new();
        let mut logic = None;
        for (ln, raw) in src.lines().enumerate() {
            let line = ln + 1;
            let text = raw.split('#').next().unwrap().trim();
            if text.is_empty() {
                continue;
            }
            let perr = |msg: String| ProofError::Parse { line, msg };
            if let Some(rest) = text.strip_prefix("logic ") {
                if !steps.is_empty() {
                    return Err(perr("logic header must come first".into()));
                }
                logic = Some(rest.trim().parse::<LogicId>().map_err(perr)?);
                continue;
            }
            let step = parse_step(text, steps.len()).map_err(perr)?;
            steps.push(step);
        }
        if steps.is_empty() {
            return Err(ProofError::Empty);
        }
        Ok((HilbertProof { steps }, logic))
    }
}

fn subst_text(s: &Subst) -> String {
    let parts: Vec<String> = s.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    format!("{{ {} }}", parts.join("; "))
}

fn parse_index(tok: &str, here: usize) -> Result<usize, String> {
    let i: usize = tok.parse().map_err(|_| format!("expected a step number, found '{tok}'"))?;
    if i == 0 || i > here {
        return Err(format!("step {i} does not precede step {}", here + 1));
    }
    Ok(i - 1)
}

fn parse_axiom(text: &str) -> Result<(Schema, Subst), String> {
    let (name, rest) = text.split_once('{').ok_or("expected '{' after the schema name")?;
    let schema: Schema = name.trim().parse()?;
    let body = rest.trim_end().strip_suffix('}').ok_or("expected closing '}'")?;
    let mut subst = Subst::new();
    for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected 'X = formula' in '{part}'"))?;
        let f = parse_formula(v.trim()).map_err(|e| format!("in {}: {e}", k.trim()))?;
        if subst.insert(k.trim().to_string(), f).is_some() {
            return Err(format!("{} bound twice", k.trim()));
        }
    }
    Ok((schema, subst))
}

fn parse_step(text: &str, here: usize) -> Result<HilbertStep, String> {
    if let Some(rest) = text.strip_prefix("ax ") {
        let (schema, subst) = parse_axiom(rest)?;
        return Ok(HilbertStep::Axiom { schema, subst });
    }
    if let Some(rest) = text.strip_prefix("mp ") {
        let rest = rest.trim();
        let (first, tail) = rest.split_once(char::is_whitespace).ok_or("mp needs two premises")?;
        let minor = parse_index(first, here)?;
        let tail = tail.trim();
        if let Some(ax) = tail.strip_prefix("ax ") {
            let (schema, subst) = parse_axiom(ax)?;
            return Ok(HilbertStep::MpAxiom { minor, schema, subst });
        }
        let major = parse_index(tail, here)?;
        return Ok(HilbertStep::Mp { minor, major });
    }
    Err(format!("expected 'ax' or 'mp', found '{text}'"))
}

impl fmt::Display for HilbertProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checks every step against `logic` and returns the proved formula.
pub fn check_hilbert(p: &HilbertProof, logic: LogicId) -> Result<Formula, ProofError> {
    p.formulas(logic)?.pop().ok_or(ProofError::Empty)
}

/// Renders a checked proof with the formula proved on each line.
pub fn annotate(p: &HilbertProof, logic: LogicId) -> Result<String, ProofError> {
    let fs = p.formulas(logic)?;
    let mut s = String::new();
    for (k, (f, step)) in fs.iter().zip(&p.steps).enumerate() {
        let why = match step {
            HilbertStep::Axiom { schema, .. } => format!("[{schema}]"),
            HilbertStep::Mp { minor, major } => format!("[{}, {}]", minor + 1, major + 1),
            HilbertStep::MpAxiom { minor, schema, .. } => format!("[{}, {schema}]", minor + 1),
        };
        writeln!(s, "{:>3}: {f}  {why}", k + 1).unwrap();
    }
    Ok(s)
}
