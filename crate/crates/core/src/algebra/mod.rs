//! Finite pocrims given by Cayley tables.
//!
//! Elements are `0..n`; element `0` is the monoid identity (the top of the
//! logical order, written `0`), and `one` is the annihilator when known.
//! The order is read off the implication table: `x >= y` iff `imp[x][y] == 0`.

mod axioms;
mod catalog;
mod construct;
mod enumerate;
mod hom;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::syntax::AlgTerm;

pub use axioms::{check_pocrim, classify, Classification, Flag, Law, LawReport, PocrimReport, Witness};
pub use catalog::{catalog, CATALOG_NAMES};
pub use construct::{direct_product, ideal_generated, ideals, is_ideal, ordinal_sum, quotient, quotient_by_kernel};
pub use enumerate::{
    canonical_form, enumerate_pocrims, enumerate_pocrims_cached, find_isomorphism, is_isomorphic, ClassFilter,
    EnumOptions, Enumeration,
};
pub use hom::{double_negation, homomorphisms, is_homomorphism, DoubleNegation};

pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("table entry {value} out of range for order {n}")]
    OutOfRange { value: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("algebra is not a hoop: {0}")]
    NotHoop(String),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("algebra has no annihilator to interpret 1")]
    NoOne,
    #[error("variable {0} is not assigned")]
    Unbound(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("unknown catalog algebra {0}")]
    UnknownCatalog(String),
    #[error("order {0} is too large")]
    TooLarge(usize),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    n: usize,
    add: Vec<u8>,
    imp: Vec<u8>,
    one: Option<usize>,
    names: Option<Vec<String>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from square tables. Entries must be in range; no
    /// axioms are checked here (see [`check_pocrim`]).
    pub fn from_tables(add: &[Vec<usize>], imp: &[Vec<usize>], one: Option<usize>) -> Result<Self, AlgebraError> {
        let n = add.len();
        if n == 0 {
            return Err(AlgebraError::Shape("empty carrier".into()));
        }
        if n > 255 {
            return Err(AlgebraError::TooLarge(n));
        }
        if imp.len() != n || add.iter().chain(imp).any(|row| row.len() != n) {
            return Err(AlgebraError::Shape(format!("tables must be {n} x {n}")));
        }
        let mut flat_add = Vec::with_capacity(n * n);
        let mut flat_imp = Vec::with_capacity(n * n);
        for (src, dst) in [(add, &mut flat_add), (imp, &mut flat_imp)] {
            for row in src {
                for &v in row {
                    if v >= n {
                        return Err(AlgebraError::OutOfRange { value: v, n });
                    }
                    dst.push(v as u8);
                }
            }
        }
        if let Some(o) = one {
            if o >= n {
                return Err(AlgebraError::OutOfRange { value: o, n });
            }
        }
        Ok(FiniteAlgebra { n, add: flat_add, imp: flat_imp, one, names: None })
    }

    pub(crate) fn from_flat(n: usize, add: Vec<u8>, imp: Vec<u8>, one: Option<usize>) -> Self {
        debug_assert_eq!(add.len(), n * n);
        debug_assert_eq!(imp.len(), n * n);
        FiniteAlgebra { n, add, imp, one, names: None }
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.n, "one name per element");
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn set_names(&mut self, names: Option<Vec<String>>) {
        if let Some(ns) = &names {
            assert_eq!(ns.len(), self.n, "one name per element");
        }
        self.names = names;
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp[x * self.n + y] as usize
    }

    /// Logical order: `x >= y` iff `x -> y = 0`.
    #[inline]
    pub fn geq(&self, x: usize, y: usize) -> bool {
        self.imp(x, y) == 0
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    /// The annihilator if one exists: an element `a` with `x + a = a` for all `x`.
    pub fn annihilator(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|x| self.add(x, a) == a))
    }

    /// Records the annihilator as the interpretation of `1`.
    pub fn with_one_detected(mut self) -> Self {
        self.one = self.annihilator();
        self
    }

    pub fn neg(&self, x: usize) -> Result<usize, AlgebraError> {
        Ok(self.imp(x, self.one.ok_or(AlgebraError::NoOne)?))
    }

    pub fn delta(&self, x: usize) -> Result<usize, AlgebraError> {
        self.neg(self.neg(x)?)
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(ns) => ns[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks an element up by name, falling back to its index.
    pub fn element(&self, token: &str) -> Result<usize, AlgebraError> {
        if let Some(ns) = &self.names {
            if let Some(i) = ns.iter().position(|n| n == token) {
                return Ok(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.n => Ok(i),
            _ => Err(AlgebraError::UnknownElement(token.to_string())),
        }
    }

    pub fn add_row(&self, x: usize) -> &[u8] {
        &self.add[x * self.n..(x + 1) * self.n]
    }

    pub fn imp_row(&self, x: usize) -> &[u8] {
        &self.imp[x * self.n..(x + 1) * self.n]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.add_row(x).iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn imp_table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.imp_row(x).iter().map(|&v| v as usize).collect()).collect()
    }

    /// Same structure with elements renamed by `perm` (old index to new index).
    pub fn relabel(&self, perm: &[usize]) -> FiniteAlgebra {
        let n = self.n;
        let mut add = vec![0u8; n * n];
        let mut imp = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                add[perm[x] * n + perm[y]] = perm[self.add(x, y)] as u8;
                imp[perm[x] * n + perm[y]] = perm[self.imp(x, y)] as u8;
            }
        }
        let names = self.names.as_ref().map(|ns| {
            let mut out = vec![String::new(); n];
            for (x, name) in ns.iter().enumerate() {
                out[perm[x]] = name.clone();
            }
            out
        });
        FiniteAlgebra { n, add, imp, one: self.one.map(|o| perm[o]), names }
    }

    /// Evaluates a term; `1` is interpreted as the recorded annihilator.
    pub fn eval_term(&self, t: &AlgTerm, alpha: &Assignment) -> Result<usize, AlgebraError> {
        match t {
            AlgTerm::Var(v) => alpha.get(v).copied().ok_or_else(|| AlgebraError::Unbound(v.clone())),
            AlgTerm::Zero => Ok(0),
            AlgTerm::One => self.one.ok_or(AlgebraError::NoOne),
            AlgTerm::Plus(a, b) => Ok(self.add(self.eval_term(a, alpha)?, self.eval_term(b, alpha)?)),
            AlgTerm::Imp(a, b) => Ok(self.imp(self.eval_term(a, alpha)?, self.eval_term(b, alpha)?)),
        }
    }

    /// Text form: `pocrim <n>`, optional `one <i>`, optional `names ...`,
    /// then `add` and `imp` each followed by `n` rows.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "pocrim {}", self.n).unwrap();
        if let Some(o) = self.one {
            writeln!(s, "one {o}").unwrap();
        }
        if let Some(ns) = &self.names {
            writeln!(s, "names {}", ns.join(" ")).unwrap();
        }
        for (label, table) in [("add", &self.add), ("imp", &self.imp)] {
            writeln!(s, "{label}").unwrap();
            for row in table.chunks(self.n) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(s, "{}", cells.join(" ")).unwrap();
            }
        }
        s
    }

    pub fn from_text(src: &str) -> Result<FiniteAlgebra, AlgebraError> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let perr = |line: usize, msg: &str| AlgebraError::Parse { line, msg: msg.to_string() };

        let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        let n: usize = header
            .strip_prefix("pocrim ")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| perr(ln, "expected 'pocrim <n>'"))?;
        if n == 0 {
            return Err(perr(ln, "order must be positive"));
        }
        let mut one = None;
        let mut names = None;
        loop {
            let Some(&(ln, l)) = lines.peek() else {
                return Err(perr(ln, "missing 'add' section"));
            };
            if let Some(r) = l.strip_prefix("one ") {
                one = Some(r.trim().parse::<usize>().map_err(|_| perr(ln, "bad 'one' index"))?);
            } else if let Some(r) = l.strip_prefix("names ") {
                let ns: Vec<String> = r.split_whitespace().map(str::to_string).collect();
                if ns.len() != n {
                    return Err(perr(ln, "need one name per element"));
                }
                names = Some(ns);
            } else {
                break;
            }
            lines.next();
        }
        let mut tables = Vec::new();
        for label in ["add", "imp"] {
            let (ln, l) = lines.next().ok_or_else(|| perr(0, "truncated input"))?;
            if l != label {
                return Err(perr(ln, &format!("expected '{label}'")));
            }
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, l) = lines.next().ok_or_else(|| perr(0, "truncated table"))?;
                let row: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
                let row = row.map_err(|_| perr(ln, "bad table entry"))?;
                if row.len() != n {
                    return Err(perr(ln, &format!("expected {n} entries")));
                }
                rows.push(row);
            }
            tables.push(rows);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "trailing input"));
        }
        let mut alg = FiniteAlgebra::from_tables(&tables[0], &tables[1], one)?;
        alg.names = names;
        Ok(alg)
    }

    /// All assignments of `vars` in lexicographic order (first variable slowest).
    pub fn assignments<'a>(&'a self, vars: &'a [String]) -> impl Iterator<Item = Assignment> + 'a {
        let n = self.n;
        let k = vars.len();
        let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut vals = vec![0; k];
            for slot in (0..k).rev() {
                vals[slot] = code % n;
                code /= n;
            }
            vars.iter().cloned().zip(vals).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    #[test]
    fn text_round_trip() {
        let p4 = catalog("P4").unwrap();
        let back = FiniteAlgebra::from_text(&p4.to_text()).unwrap();
        assert_eq!(back, p4);
    }

    #[test]
    fn parse_errors() {
        assert!(FiniteAlgebra::from_text("pocrim 2\nadd\n0 1\n1 1\nimp\n0 1\n").is_err());
        assert!(FiniteAlgebra::from_text("pocrim 2\nadd\n0 1\n1 1\nimp\n0 1\n0 2\n").is_err());
        assert!(FiniteAlgebra::from_text("pocram 2").is_err());
    }

    #[test]
    fn eval_uses_annihilator_for_one() {
        let l3 = catalog("L3").unwrap();
        let mut a = Assignment::new();
        a.insert("x".into(), 1);
        assert_eq!(l3.eval_term(&parse_term("x + x").unwrap(), &a), Ok(2));
        assert_eq!(l3.eval_term(&parse_term("x^").unwrap(), &a), Ok(1));
        assert_eq!(l3.eval_term(&parse_term("y").unwrap(), &a), Err(AlgebraError::Unbound("y".into())));
    }

    #[test]
    fn assignments_are_lexicographic() {
        let b = catalog("B").unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        let seq: Vec<(usize, usize)> = b.assignments(&vars).map(|a| (a["x"], a["y"])).collect();
        assert_eq!(seq, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }
}
