use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{ClassFilter, Flag};
use crate::syntax::{parse_formula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    Comp,
    Comm,
    Curry,
    Uncurry,
    Wk,
    Efq,
    Dne,
    Cwc,
    Con,
}

pub const ALL_SCHEMAS: [Schema; 9] =
    [Schema::Comp, Schema::Comm, Schema::Curry, Schema::Uncurry, Schema::Wk, Schema::Efq, Schema::Dne, Schema::Cwc, Schema::Con];

impl Schema {
    pub fn tag(self) -> &'static str {
        match self {
            Schema::Comp => "COMP",
            Schema::Comm => "COMM",
            Schema::Curry => "CURRY",
            Schema::Uncurry => "UNCURRY",
            Schema::Wk => "WK",
            Schema::Efq => "EFQ",
            Schema::Dne => "DNE",
            Schema::Cwc => "CWC",
            Schema::Con => "CON",
        }
    }

    /// The schema over the metavariables `A`, `B`, `C`.
    pub fn source(self) -> &'static str {
        match self {
            Schema::Comp => "(A -> B) -> (B -> C) -> A -> C",
            Schema::Comm => "A * B -> B * A",
            Schema::Curry => "(A * B -> C) -> A -> B -> C",
            Schema::Uncurry => "(A -> B -> C) -> A * B -> C",
            Schema::Wk => "A * B -> A",
            Schema::Efq => "1 -> A",
            Schema::Dne => "A^^ -> A",
            Schema::Cwc => "A * (A -> B) -> B * (B -> A)",
            Schema::Con => "A -> A * A",
        }
    }

    pub fn pattern(self) -> &'static Formula {
        static CACHE: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = CACHE.get_or_init(|| ALL_SCHEMAS.iter().map(|s| parse_formula(s.source()).unwrap()).collect());
        &all[self as usize]
    }

    /// Metavariables in order of first appearance.
    pub fn metavars(self) -> Vec<String> {
        self.pattern().vars()
    }

    /// Instance under `sigma`, which must bind exactly the metavariables.
    pub fn instance(self, sigma: &BTreeMap<String, Formula>) -> Result<Formula, String> {
        let mv = self.metavars();
        for m in &mv {
            if !sigma.contains_key(m) {
                return Err(format!("{} instance leaves {m} unbound", self.tag()));
            }
        }
        if let Some(k) = sigma.keys().find(|k| !mv.contains(k)) {
            return Err(format!("{} has no metavariable {k}", self.tag()));
        }
        Ok(self.pattern().substitute(sigma))
    }
}

impl FromStr for Schema {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.to_ascii_uppercase();
        ALL_SCHEMAS.iter().copied().find(|x| x.tag() == up).ok_or_else(|| format!("unknown schema '{s}'"))
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogicId {
    ALm,
    ALi,
    ALc,
    LLm,
    LLi,
    LLc,
    ML,
    IL,
    BL,
}

pub const ALL_LOGICS: [LogicId; 9] =
    [LogicId::ALm, LogicId::ALi, LogicId::ALc, LogicId::LLm, LogicId::LLi, LogicId::LLc, LogicId::ML, LogicId::IL, LogicId::BL];

impl LogicId {
    pub fn name(self) -> &'static str {
        match self {
            LogicId::ALm => "ALm",
            LogicId::ALi => "ALi",
            LogicId::ALc => "ALc",
            LogicId::LLm => "LLm",
            LogicId::LLi => "LLi",
            LogicId::LLc => "LLc",
            LogicId::ML => "ML",
            LogicId::IL => "IL",
            LogicId::BL => "BL",
        }
    }

    pub fn schemas(self) -> Vec<Schema> {
        use Schema::*;
        let mut s = vec![Comp, Comm, Curry, Uncurry, Wk];
        let (extra, level) = match self {
            LogicId::ALm | LogicId::ALi | LogicId::ALc => (None, self as u8),
            LogicId::LLm | LogicId::LLi | LogicId::LLc => (Some(Cwc), self as u8 - LogicId::LLm as u8),
            LogicId::ML | LogicId::IL | LogicId::BL => (Some(Con), self as u8 - LogicId::ML as u8),
        };
        s.extend(extra);
        if level >= 1 {
            s.push(Efq);
        }
        if level >= 2 {
            s.push(Dne);
        }
        s
    }

    pub fn has(self, s: Schema) -> bool {
        self.schemas().contains(&s)
    }

    /// Whether `1` is read as the annihilator (intuitionistic and classical
    /// variants) rather than an arbitrary element.
    pub fn bounded(self) -> bool {
        !matches!(self, LogicId::ALm | LogicId::LLm | LogicId::ML)
    }

    /// The class of finite pocrims for which the logic is sound and complete.
    pub fn class(self) -> ClassFilter {
        let f = ClassFilter::pocrims();
        match self {
            LogicId::ALm | LogicId::ALi => f,
            LogicId::ALc => f.with(Flag::Involutive, true),
            LogicId::LLm | LogicId::LLi => f.with(Flag::Hoop, true),
            LogicId::LLc => f.with(Flag::Hoop, true).with(Flag::Involutive, true),
            LogicId::ML | LogicId::IL => f.with(Flag::Hoop, true).with(Flag::Idempotent, true),
            LogicId::BL => f.with(Flag::Hoop, true).with(Flag::Idempotent, true).with(Flag::Involutive, true),
        }
    }
}

impl FromStr for LogicId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('Ł', "L");
        ALL_LOGICS
            .iter()
            .copied()
            .find(|l| l.name().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| format!("unknown logic '{s}'"))
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_order() {
        use LogicId::*;
        let pairs = [(ALm, ALi), (ALi, ALc), (LLm, LLi), (LLi, LLc), (ML, IL), (IL, BL), (ALm, LLm), (ALi, LLi), (ALc, LLc)];
        for (a, b) in pairs {
            assert!(a.schemas().iter().all(|s| b.has(*s)), "{a} not included in {b}");
        }
        assert!(!ALm.has(Schema::Dne));
        assert_eq!(BL.schemas().len(), 8);
    }

    #[test]
    fn instances() {
        let sigma = [("A".to_string(), Formula::var("v1"))].into_iter().collect();
        assert_eq!(Schema::Dne.instance(&sigma).unwrap().to_string(), "v1^^ -> v1");
        assert!(Schema::Wk.instance(&sigma).is_err());
    }
}
