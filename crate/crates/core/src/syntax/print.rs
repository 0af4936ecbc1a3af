use std::fmt;

use super::{AlgTerm, Formula};

// Binding levels: implication < fusion/sum < postfix negation < atoms.
const IMP: u8 = 0;
const BIN: u8 = 1;
const POST: u8 = 2;
const ATOM: u8 = 3;

fn formula_level(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::One => ATOM,
        Formula::Limp(a, b) if **a == Formula::One && **b == Formula::One => ATOM,
        Formula::Limp(_, b) if **b == Formula::One => POST,
        Formula::Tensor(_, _) => BIN,
        Formula::Limp(_, _) => IMP,
    }
}

fn write_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = formula_level(f);
    if level < min {
        out.write_str("(")?;
    }
    match f {
        Formula::Var(v) => out.write_str(v)?,
        Formula::One => out.write_str("1")?,
        _ if level == ATOM => out.write_str("0")?,
        Formula::Limp(a, _) if level == POST => {
            write_formula(a, POST, out)?;
            out.write_str("^")?;
        }
        Formula::Tensor(a, b) => {
            write_formula(a, BIN, out)?;
            out.write_str(" * ")?;
            write_formula(b, POST, out)?;
        }
        Formula::Limp(a, b) => {
            write_formula(a, BIN, out)?;
            out.write_str(" -> ")?;
            write_formula(b, IMP, out)?;
        }
    }
    if level < min {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, IMP, f)
    }
}

fn term_level(t: &AlgTerm) -> u8 {
    match t {
        AlgTerm::Var(_) | AlgTerm::Zero | AlgTerm::One => ATOM,
        AlgTerm::Imp(_, b) if **b == AlgTerm::One => POST,
        AlgTerm::Plus(_, _) => BIN,
        AlgTerm::Imp(_, _) => IMP,
    }
}

fn write_term(t: &AlgTerm, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = term_level(t);
    if level < min {
        out.write_str("(")?;
    }
    match t {
        AlgTerm::Var(v) => out.write_str(v)?,
        AlgTerm::Zero => out.write_str("0")?,
        AlgTerm::One => out.write_str("1")?,
        AlgTerm::Imp(a, _) if level == POST => {
            write_term(a, POST, out)?;
            out.write_str("^")?;
        }
        AlgTerm::Plus(a, b) => {
            write_term(a, BIN, out)?;
            out.write_str(" + ")?;
            write_term(b, POST, out)?;
        }
        AlgTerm::Imp(a, b) => {
            write_term(a, BIN, out)?;
            out.write_str(" -> ")?;
            write_term(b, IMP, out)?;
        }
    }
    if level < min {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for AlgTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, IMP, f)
    }
}

impl fmt::Display for super::Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
