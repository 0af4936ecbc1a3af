use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{classify, AlgebraError, FiniteAlgebra, Flag};

/// Required values of classification flags; empty means all pocrims.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassFilter {
    pub require: BTreeMap<Flag, bool>,
}

impl ClassFilter {
    pub fn pocrims() -> ClassFilter {
        ClassFilter::default()
    }

    pub fn hoops() -> ClassFilter {
        ClassFilter::default().with(Flag::Hoop, true)
    }

    pub fn with(mut self, flag: Flag, value: bool) -> ClassFilter {
        self.require.insert(flag, value);
        self
    }

    /// Comma separated flags, each optionally negated with `!`; the word
    /// `pocrim` adds no constraint.
    pub fn parse(spec: &str) -> Result<ClassFilter, String> {
        let mut f = ClassFilter::default();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (neg, name) = match tok.strip_prefix('!') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            if name == "pocrim" || name == "pocrims" {
                continue;
            }
            let name = name.trim_end_matches('s').replace('-', "_");
            let flag = Flag::from_tag(&name).ok_or_else(|| format!("unknown class flag '{tok}'"))?;
            f.require.insert(flag, !neg);
        }
        Ok(f)
    }

    pub fn accepts(&self, a: &FiniteAlgebra) -> bool {
        if self.require.is_empty() {
            return true;
        }
        let c = classify(a);
        self.require.iter().all(|(f, v)| c.get(*f) == *v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    /// Maximum number of search nodes; `None` means unlimited.
    pub budget: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Pairwise non-isomorphic, in canonical form, sorted by canonical code.
    pub algebras: Vec<FiniteAlgebra>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Lexicographically least table code over relabelings fixing `0` and sending
/// the annihilator (if any) to the last index. Returns the code and the
/// relabeling (old index to new index).
pub fn canonical_form(a: &FiniteAlgebra) -> (Vec<u8>, Vec<usize>) {
    let n = a.size();
    let ann = if n > 1 { a.annihilator() } else { None };
    let free: Vec<usize> = (1..n).filter(|&x| Some(x) != ann).collect();
    let slots: Vec<usize> = (1..=free.len()).collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    for order in permutations(&slots) {
        let mut perm = vec![0usize; n];
        for (k, &x) in free.iter().enumerate() {
            perm[x] = order[k];
        }
        if let Some(o) = ann {
            perm[o] = n - 1;
        }
        let mut inv = vec![0usize; n];
        for x in 0..n {
            inv[perm[x]] = x;
        }
        let mut code = Vec::with_capacity(2 * n * n);
        for x in 0..n {
            for y in 0..n {
                code.push(perm[a.add(inv[x], inv[y])] as u8);
            }
        }
        for x in 0..n {
            for y in 0..n {
                code.push(perm[a.imp(inv[x], inv[y])] as u8);
            }
        }
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm));
        }
    }
    best.expect("at least one relabeling")
}

pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let (ca, pa) = canonical_form(a);
    let (cb, pb) = canonical_form(b);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; b.size()];
    for (x, &px) in pb.iter().enumerate() {
        inv_b[px] = x;
    }
    Some(pa.iter().map(|&c| inv_b[c]).collect())
}

pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

fn canonical_algebra(a: &FiniteAlgebra) -> (Vec<u8>, FiniteAlgebra) {
    let (code, perm) = canonical_form(a);
    let mut c = a.relabel(&perm);
    c.set_names(None);
    let c = c.with_one_detected();
    (code, c)
}

/// Partial orders with `0` least and `n - 1` greatest whose index order is a
/// linear extension. `geq[x * n + y]` means `x >= y`.
fn posets(n: usize) -> Vec<Vec<bool>> {
    let middle: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = middle
        .iter()
        .flat_map(|&i| middle.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let mut geq = vec![false; n * n];
        for x in 0..n {
            geq[x * n + x] = true;
            geq[x * n] = true;
            geq[(n - 1) * n + x] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                geq[j * n + i] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(geq[x * n + y] && geq[y * n + z]) || geq[x * n + z]))
        });
        if transitive {
            out.push(geq);
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    geq: &'a [bool],
    add: Vec<Option<u8>>,
    cells: Vec<(usize, usize)>,
    nodes: &'a AtomicU64,
    budget: Option<u64>,
    exhausted: &'a AtomicBool,
    found: Vec<(Vec<u8>, FiniteAlgebra)>,
}

impl Search<'_> {
    fn ge(&self, x: usize, y: usize) -> bool {
        self.geq[x * self.n + y]
    }

    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.add[x * self.n + y].map(|v| v as usize)
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        let n = self.n;
        let v = self.get(x, y).expect("just assigned");
        // Monotonicity in the first argument, with `y` held fixed.
        for w in 0..n {
            if let Some(u) = self.get(w, y) {
                if self.ge(w, x) && !self.ge(u, v) || self.ge(x, w) && !self.ge(v, u) {
                    return false;
                }
            }
        }
        // Associativity wherever all entries are known.
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    let (Some(l), Some(bc)) = (self.get(ab, c), self.get(b, c)) else { continue };
                    if let Some(r) = self.get(a, bc) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if self.exhausted.load(Ordering::Relaxed) {
            return;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| count > b) {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        if k == self.cells.len() {
            self.finish();
            return;
        }
        let (i, j) = self.cells[k];
        let n = self.n;
        for z in 0..n {
            if !(self.ge(z, i) && self.ge(z, j)) {
                continue;
            }
            self.add[i * n + j] = Some(z as u8);
            self.add[j * n + i] = Some(z as u8);
            if self.consistent(i, j) && (i == j || self.consistent(j, i)) {
                self.run(k + 1);
            }
        }
        self.add[i * n + j] = None;
        self.add[j * n + i] = None;
    }

    /// Residuation fixes the implication: `y -> z` is the least `x` with
    /// `x + y >= z`, and must exist.
    fn finish(&mut self) {
        let n = self.n;
        let mut imp = vec![0u8; n * n];
        for y in 0..n {
            for z in 0..n {
                let set: Vec<usize> = (0..n).filter(|&x| self.ge(self.get(x, y).unwrap(), z)).collect();
                let Some(&least) = set.iter().find(|&&m| set.iter().all(|&x| self.ge(x, m))) else {
                    return;
                };
                imp[y * n + z] = least as u8;
            }
        }
        let add: Vec<u8> = self.add.iter().map(|v| v.unwrap()).collect();
        let alg = FiniteAlgebra::from_flat(n, add, imp, Some(n - 1));
        self.found.push(canonical_algebra(&alg));
    }
}

fn search_poset(n: usize, geq: &[bool], opts: &EnumOptions, nodes: &AtomicU64, exhausted: &AtomicBool) -> Vec<(Vec<u8>, FiniteAlgebra)> {
    let mut add = vec![None; n * n];
    for x in 0..n {
        add[x] = Some(x as u8);
        add[x * n] = Some(x as u8);
        add[(n - 1) * n + x] = Some((n - 1) as u8);
        add[x * n + n - 1] = Some((n - 1) as u8);
    }
    let cells = (1..n - 1).flat_map(|i| (i..n - 1).map(move |j| (i, j))).collect();
    let mut s = Search { n, geq, add, cells, nodes, budget: opts.budget, exhausted, found: Vec::new() };
    s.run(0);
    s.found
}

/// All pocrims of order `n` up to isomorphism that pass `filter`.
///
/// The search picks a partial order first (with `0` least and the annihilator
/// greatest), then fills the monoid table cell by cell under monotonicity and
/// associativity, and finally reads the implication off residuation.
pub fn enumerate_pocrims(n: usize, filter: &ClassFilter, opts: &EnumOptions) -> Result<Enumeration, AlgebraError> {
    if n == 0 {
        return Ok(Enumeration { algebras: Vec::new(), complete: true, nodes: 0 });
    }
    if n > 9 {
        return Err(AlgebraError::TooLarge(n));
    }
    if n == 1 {
        let triv = FiniteAlgebra::from_flat(1, vec![0], vec![0], Some(0));
        let algebras = if filter.accepts(&triv) { vec![triv] } else { vec![] };
        return Ok(Enumeration { algebras, complete: true, nodes: 1 });
    }
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let orders = posets(n);
    let work = || -> Vec<(Vec<u8>, FiniteAlgebra)> {
        orders
            .par_iter()
            .flat_map_iter(|geq| search_poset(n, geq, opts, &nodes, &exhausted))
            .collect()
    };
    let raw = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| AlgebraError::Shape(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut unique: BTreeMap<Vec<u8>, FiniteAlgebra> = BTreeMap::new();
    for (code, alg) in raw {
        unique.entry(code).or_insert(alg);
    }
    let algebras = unique.into_values().filter(|a| filter.accepts(a)).collect();
    Ok(Enumeration {
        algebras,
        complete: !exhausted.load(Ordering::Relaxed),
        nodes: nodes.load(Ordering::Relaxed),
    })
}

/// All pocrims of order `n`, computed once per process.
pub fn enumerate_pocrims_cached(n: usize) -> Arc<Vec<FiniteAlgebra>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<FiniteAlgebra>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache lock").get(&n) {
        return hit.clone();
    }
    let all = enumerate_pocrims(n, &ClassFilter::pocrims(), &EnumOptions::default())
        .map(|e| e.algebras)
        .unwrap_or_default();
    let all = Arc::new(all);
    cache.lock().expect("cache lock").insert(n, all.clone());
    all
}
