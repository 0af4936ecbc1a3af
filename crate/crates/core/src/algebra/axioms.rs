use std::collections::BTreeMap;
use std::fmt;

use super::{ideal_generated, FiniteAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    M1,
    M2,
    M3,
    O1,
    O2,
    O3,
    O4,
    B,
    R,
}

impl Law {
    pub const ALL: [Law; 9] = [Law::M1, Law::M2, Law::M3, Law::O1, Law::O2, Law::O3, Law::O4, Law::B, Law::R];

    pub fn tag(self) -> &'static str {
        match self {
            Law::M1 => "m1",
            Law::M2 => "m2",
            Law::M3 => "m3",
            Law::O1 => "o1",
            Law::O2 => "o2",
            Law::O3 => "o3",
            Law::O4 => "o4",
            Law::B => "b",
            Law::R => "r",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Law::M1 => "(x + y) + z = x + (y + z)",
            Law::M2 => "x + y = y + x",
            Law::M3 => "x + 0 = x",
            Law::O1 => "x >= x",
            Law::O2 => "x >= y and y >= z imply x >= z",
            Law::O3 => "x >= y and y >= x imply x = y",
            Law::O4 => "x >= y implies x + z >= y + z",
            Law::B => "x >= 0",
            Law::R => "x + y >= z iff x >= y -> z",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    /// First violating tuple in lexicographic order, if any.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PocrimReport {
    pub laws: Vec<LawReport>,
}

impl PocrimReport {
    pub fn holds(&self) -> bool {
        self.laws.iter().all(|l| l.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.witness.is_some())
    }
}

fn find1(n: usize, bad: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&x| bad(x)).map(|x| vec![x])
}

fn find2(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn find3(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Checks every pocrim law on the tables, reporting a witness for each failure.
pub fn check_pocrim(a: &FiniteAlgebra) -> PocrimReport {
    let n = a.size();
    let ge = |x, y| a.geq(x, y);
    let laws = Law::ALL
        .iter()
        .map(|&law| {
            let witness = match law {
                Law::M1 => find3(n, |x, y, z| a.add(a.add(x, y), z) != a.add(x, a.add(y, z))),
                Law::M2 => find2(n, |x, y| a.add(x, y) != a.add(y, x)),
                Law::M3 => find1(n, |x| a.add(x, 0) != x),
                Law::O1 => find1(n, |x| !ge(x, x)),
                Law::O2 => find3(n, |x, y, z| ge(x, y) && ge(y, z) && !ge(x, z)),
                Law::O3 => find2(n, |x, y| x != y && ge(x, y) && ge(y, x)),
                Law::O4 => find3(n, |x, y, z| ge(x, y) && !ge(a.add(x, z), a.add(y, z))),
                Law::B => find1(n, |x| !ge(x, 0)),
                Law::R => find3(n, |x, y, z| ge(a.add(x, y), z) != ge(x, a.imp(y, z))),
            };
            LawReport { law, witness }
        })
        .collect();
    PocrimReport { laws }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    Bounded,
    Involutive,
    Hoop,
    Wajsberg,
    Idempotent,
    NaturallyOrdered,
    Simple,
    SubdirectlyIrreducible,
}

impl Flag {
    pub const ALL: [Flag; 8] = [
        Flag::Bounded,
        Flag::Involutive,
        Flag::Hoop,
        Flag::Wajsberg,
        Flag::Idempotent,
        Flag::NaturallyOrdered,
        Flag::Simple,
        Flag::SubdirectlyIrreducible,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Flag::Bounded => "bounded",
            Flag::Involutive => "involutive",
            Flag::Hoop => "hoop",
            Flag::Wajsberg => "wajsberg",
            Flag::Idempotent => "idempotent",
            Flag::NaturallyOrdered => "naturally_ordered",
            Flag::Simple => "simple",
            Flag::SubdirectlyIrreducible => "subdirectly_irreducible",
        }
    }

    pub fn from_tag(s: &str) -> Option<Flag> {
        Flag::ALL.iter().copied().find(|f| f.tag() == s)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Elements violating a property, with the property they violate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub law: String,
    pub elements: Vec<usize>,
}

impl Witness {
    fn new(law: &str, elements: Vec<usize>) -> Witness {
        Witness { law: law.to_string(), elements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub flags: BTreeMap<Flag, bool>,
    pub witnesses: BTreeMap<Flag, Witness>,
}

impl Classification {
    pub fn get(&self, f: Flag) -> bool {
        self.flags[&f]
    }

    pub fn witness(&self, f: Flag) -> Option<&Witness> {
        self.witnesses.get(&f)
    }
}

pub const CWC: &str = "x + (x -> y) = y + (y -> x)";

/// Structural flags of a pocrim. Simplicity and subdirect irreducibility are
/// read off the lattice of ideals (downward closed submonoids).
pub fn classify(a: &FiniteAlgebra) -> Classification {
    let n = a.size();
    let mut flags = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut record = |flag: Flag, w: Option<Witness>| {
        flags.insert(flag, w.is_none());
        if let Some(w) = w {
            witnesses.insert(flag, w);
        }
    };

    let sum_all = (0..n).fold(0, |acc, x| a.add(acc, x));
    let annihilator = a.annihilator();
    let bounded_w = match annihilator {
        Some(_) => None,
        None => {
            let x = (0..n).find(|&x| a.add(x, sum_all) != sum_all).unwrap_or(0);
            Some(Witness::new("x + s = s where s is the sum of all elements", vec![x, sum_all]))
        }
    };
    record(Flag::Bounded, bounded_w.clone());

    let involutive_w = match annihilator {
        None => bounded_w,
        Some(one) => {
            let d = |x: usize| a.imp(a.imp(x, one), one);
            find1(n, |x| d(x) != x).map(|e| Witness::new("x^^ = x", e))
        }
    };
    record(Flag::Involutive, involutive_w);

    let hoop_w = find2(n, |x, y| a.add(x, a.imp(x, y)) != a.add(y, a.imp(y, x))).map(|e| Witness::new(CWC, e));
    record(Flag::Hoop, hoop_w.clone());

    let wajsberg_w = hoop_w.or_else(|| {
        find2(n, |x, y| a.imp(a.imp(x, y), y) != a.imp(a.imp(y, x), x))
            .map(|e| Witness::new("(x -> y) -> y = (y -> x) -> x", e))
    });
    record(Flag::Wajsberg, wajsberg_w);

    record(Flag::Idempotent, find1(n, |x| a.add(x, x) != x).map(|e| Witness::new("x + x = x", e)));

    let natural_w = find2(n, |x, y| a.geq(x, y) && !(0..n).any(|z| a.add(y, z) == x))
        .map(|e| Witness::new("x >= y implies x = y + z for some z", e));
    record(Flag::NaturallyOrdered, natural_w);

    let (simple_w, si_w) = ideal_flags(a);
    record(Flag::Simple, simple_w);
    record(Flag::SubdirectlyIrreducible, si_w);

    Classification { flags, witnesses }
}

fn ideal_flags(a: &FiniteAlgebra) -> (Option<Witness>, Option<Witness>) {
    let n = a.size();
    if n == 1 {
        let w = Witness::new("the trivial algebra is excluded", vec![]);
        return (Some(w.clone()), Some(w));
    }
    let principal: Vec<Vec<bool>> = (0..n).map(|x| ideal_generated(a, &[x])).collect();
    let simple_w = (1..n).find_map(|x| {
        principal[x]
            .iter()
            .position(|&inside| !inside)
            .map(|y| Witness::new("the ideal generated by x is proper: y lies outside", vec![x, y]))
    });

    // Minimal nonzero ideals are principal; a minimum exists iff the
    // principal ideals of nonzero elements have a nonzero common part.
    let common: Vec<bool> = (0..n).map(|z| (1..n).all(|x| principal[x][z])).collect();
    let si_w = if common[1..].iter().any(|&c| c) {
        None
    } else {
        let minimal: Vec<usize> = (1..n)
            .filter(|&x| (1..n).all(|y| !is_strict_subset(&principal[y], &principal[x])))
            .collect();
        let mut pair = None;
        'outer: for (i, &x) in minimal.iter().enumerate() {
            for &y in &minimal[i + 1..] {
                if principal[x] != principal[y] {
                    pair = Some(vec![x, y]);
                    break 'outer;
                }
            }
        }
        Some(Witness::new(
            "the ideals generated by x and y meet only in 0",
            pair.unwrap_or_default(),
        ))
    };
    (simple_w, si_w)
}

fn is_strict_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y) && a != b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn corrupted_table_fails_o1() {
        let l3 = catalog("L3").unwrap();
        let mut imp = l3.imp_table();
        imp[1][1] = 1;
        let bad = FiniteAlgebra::from_tables(&l3.add_table(), &imp, l3.one()).unwrap();
        let report = check_pocrim(&bad);
        let o1 = report.laws.iter().find(|l| l.law == Law::O1).unwrap();
        assert_eq!(o1.witness, Some(vec![1]));
    }

    #[test]
    fn flags_of_small_chains() {
        let l3 = classify(&catalog("L3").unwrap());
        assert!(l3.get(Flag::Hoop) && l3.get(Flag::Wajsberg) && l3.get(Flag::Involutive));
        assert!(l3.get(Flag::Simple) && l3.get(Flag::SubdirectlyIrreducible));
        assert!(!l3.get(Flag::Idempotent));
        let g3 = classify(&catalog("G3").unwrap());
        assert!(g3.get(Flag::Hoop) && g3.get(Flag::Idempotent));
        assert!(!g3.get(Flag::Involutive) && !g3.get(Flag::Wajsberg) && !g3.get(Flag::Simple));
        assert!(g3.get(Flag::SubdirectlyIrreducible));
    }

    #[test]
    fn witnesses_check_by_lookup() {
        let p4 = catalog("P4").unwrap();
        let c = classify(&p4);
        let w = c.witness(Flag::Hoop).unwrap();
        let (x, y) = (w.elements[0], w.elements[1]);
        assert_ne!(p4.add(x, p4.imp(x, y)), p4.add(y, p4.imp(y, x)));
        let nat = c.witness(Flag::NaturallyOrdered).unwrap();
        let (q, p) = (nat.elements[0], nat.elements[1]);
        assert_eq!((p4.name(q).as_str(), p4.name(p).as_str()), ("q", "p"));
    }
}
