//! Acceptance criteria. Prints one PASS/FAIL line per criterion and one
//! indented line per sub-check, then asserts that every failure is a listed
//! known deviation.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use hoops::algebra::{
    catalog, check_pocrim, classify, double_negation, enumerate_pocrims, enumerate_pocrims_cached, find_isomorphism,
    is_isomorphic, ClassFilter, EnumOptions, FiniteAlgebra, Flag,
};
use hoops::lra::{decide_involutive, decide_wajsberg, fm_feasible, interval_eval, q, Constraint, Domain, LinExpr, Verdict};
use hoops::proof::{build_refl, check_equational, check_hilbert, random_proof, translate_to_equational, LogicId};
use hoops::prover::{check_certificate, prove, prove_in, search_counterexample, CaseCertificate, Discharge, ProverConfig, ProverResult};
use hoops::semantics::{check_dns, dne_guard, evaluate, is_valid, random_formulas, DnsResult, SemanticsKind};
use hoops::syntax::{parse_formula, parse_identity, AlgTerm, Formula, Identity};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use SemanticsKind::{Gentzen, Glivenko, Standard};

/// Seed of the formula corpus used by criteria 8 and 9.
const CORPUS_SEED: u64 = 20_141;
const CORPUS_SIZE: usize = 1000;
const CORPUS_DEPTH: usize = 6;
const CORPUS_VARS: usize = 3;

/// Seed for the hoops sampled in criterion 6.
const HOOP_SEED: u64 = 7;
const RANDOM_PROOFS: u64 = 100;
const HOOPS_PER_PROOF: usize = 5;

/// Sub-checks that fail for a documented reason. The computed value is still
/// pinned so that a regression in either direction is caught.
const KNOWN_DEVIATIONS: &[(&str, &str)] = &[
    (
        "3.dne_negated",
        "with 0 as truth and x^ = x -> 1, (x^^ -> x)^ = 0^ = 1 in every involutive hoop, so the identity \
         as written is refuted; its double negation and the inner identity x^^ -> x = 0 are checked valid instead",
    ),
    (
        "8.gentzen_q6_value",
        "the worked example ends with q -> r = s, but the Q6 implication table gives q -> r = p; \
         the evaluator follows the table",
    ),
];

struct Check {
    id: String,
    ok: bool,
    detail: String,
}

struct Criterion {
    num: usize,
    title: &'static str,
    limit: Duration,
    checks: Vec<Check>,
    elapsed: Duration,
}

impl Criterion {
    fn new(num: usize, title: &'static str, limit_secs: u64) -> Criterion {
        Criterion { num, title, limit: Duration::from_secs(limit_secs), checks: Vec::new(), elapsed: Duration::ZERO }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { id: format!("{}.{name}", self.num), ok, detail: detail.into() });
    }

    fn passed(&self) -> bool {
        self.elapsed <= self.limit && self.checks.iter().all(|c| c.ok)
    }

    fn report(&self) -> String {
        let mut s = format!(
            "{} [{}] {} ({:.2}s, limit {}s)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.num,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        for c in &self.checks {
            s.push_str(&format!("    {} {}: {}\n", if c.ok { "ok  " } else { "FAIL" }, c.id, c.detail));
        }
        s
    }
}

fn timed(mut c: Criterion, body: impl FnOnce(&mut Criterion)) -> Criterion {
    let t = Instant::now();
    body(&mut c);
    c.elapsed = t.elapsed();
    c
}

fn idb(s: &str) -> Identity {
    parse_identity(s, true).unwrap()
}

fn idu(s: &str) -> Identity {
    parse_identity(s, false).unwrap()
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("{name}.alg")].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn corpus() -> Vec<Formula> {
    random_formulas(CORPUS_DEPTH, CORPUS_VARS, CORPUS_SIZE, CORPUS_SEED)
}

fn cat(names: &[&str]) -> Vec<FiniteAlgebra> {
    names.iter().map(|n| catalog(n).unwrap()).collect()
}

fn bounded(a: &FiniteAlgebra) -> FiniteAlgebra {
    if a.one().is_some() {
        a.clone()
    } else {
        a.clone().with_one_detected()
    }
}

fn criterion_1() -> Criterion {
    timed(Criterion::new(1, "enumeration counts", 10), |c| {
        for (n, want) in [(2, 1), (3, 2), (4, 7)] {
            let e = enumerate_pocrims(n, &ClassFilter::pocrims(), &EnumOptions::default()).unwrap();
            c.check(&format!("order_{n}"), e.complete && e.algebras.len() == want, format!("{} pocrims, expected {want}", e.algebras.len()));
        }
        let non: Vec<FiniteAlgebra> =
            enumerate_pocrims_cached(4).iter().filter(|a| !classify(a).get(Flag::Hoop)).cloned().collect();
        c.check("order_4_non_hoops", non.len() == 2, format!("{} non-hoops, expected 2", non.len()));
        for name in ["P4", "Q4"] {
            let target = catalog(name).unwrap();
            let found = non.iter().any(|a| is_isomorphic(a, &target));
            c.check(&format!("non_hoop_{name}"), found, format!("isomorphic copy of {name} among them: {found}"));
        }
    })
}

fn criterion_2() -> Criterion {
    timed(Criterion::new(2, "catalog fidelity", 1), |c| {
        for name in ["P4", "Q4", "Q6", "U"] {
            let a = catalog(name).unwrap();
            let g = FiniteAlgebra::from_text(&golden(name)).unwrap();
            let same = a.add_table() == g.add_table() && a.imp_table() == g.imp_table() && a.names() == g.names();
            c.check(&format!("golden_{name}"), same, if same { "tables match cell for cell" } else { "tables differ" });
            let r = check_pocrim(&a);
            c.check(&format!("pocrim_{name}"), r.holds(), format!("first failing law: {:?}", r.first_failure().map(|l| l.law.tag())));
        }
        let p4 = classify(&catalog("P4").unwrap());
        c.check("p4_flags", !p4.get(Flag::Involutive) && !p4.get(Flag::Hoop), "P4 not involutive, not a hoop");
        let q4 = classify(&catalog("Q4").unwrap());
        c.check("q4_flags", q4.get(Flag::Involutive) && !q4.get(Flag::Hoop), "Q4 involutive, not a hoop");
        let g_ok = (3..=8).all(|n| !classify(&catalog(&format!("G{n}")).unwrap()).get(Flag::Involutive));
        c.check("goedel_flags", g_ok, "G3..G8 not involutive");
        let u = double_negation(&catalog("U").unwrap()).unwrap();
        c.check("u_image", !u.image_closed_under_add, format!("image of negation closed under +: {}", u.image_closed_under_add));
    })
}

fn witness_certifies(id: &Identity, v: &Verdict) -> bool {
    match v {
        Verdict::Valid => false,
        Verdict::Invalid(w) => {
            let l = interval_eval(&id.lhs, w, Domain::UnitInterval);
            let r = interval_eval(&id.rhs, w, Domain::UnitInterval);
            matches!((l, r), (Ok(a), Ok(b)) if a != b)
        }
    }
}

fn multiple(k: usize) -> String {
    vec!["x"; k].join(" + ")
}

fn criterion_3() -> Criterion {
    timed(Criterion::new(3, "oracle validity", 5), |c| {
        let mut inv = vec![
            ("dne_negated", "(x^^ -> x)^ = 0".to_string()),
            ("de_morgan", "(x + y)^ = x -> y^".to_string()),
            ("de_morgan_dual", "(x -> y)^ = x^^ + y^".to_string()),
        ];
        for (k, name) in [(1, "neg_1x"), (2, "neg_2x"), (3, "neg_3x")] {
            inv.push((name, format!("({})^ -> x^^ -> x = 0", multiple(k))));
        }
        inv.push(("dne_negated_reading", "(x^^ -> x)^^ = 0".to_string()));
        inv.push(("dne_inner", "x^^ -> x = 0".to_string()));
        inv.push(("dne_negated_is_top", "(x^^ -> x)^ = 1".to_string()));
        for (name, src) in &inv {
            let v = decide_involutive(&idb(src)).unwrap();
            c.check(name, v.is_valid(), format!("{src}: {v:?}"));
        }
        for (name, src) in [("wajsberg", "(x -> y) -> y = (y -> x) -> x"), ("cwc", "x + (x -> y) = y + (y -> x)")] {
            let v = decide_wajsberg(&idu(src)).unwrap();
            c.check(name, v.is_valid(), format!("{src}: {v:?}"));
        }
        let id = idb("x + x = x");
        let v = decide_involutive(&id).unwrap();
        let w = match &v {
            Verdict::Invalid(w) => hoops::lra::format_assignment(w),
            Verdict::Valid => "none".into(),
        };
        c.check("idempotence_invalid", witness_certifies(&id, &v), format!("witness {w}, sides differ under exact evaluation"));
    })
}

/// A case as the set of variables in S and in F \ {0}, with the variables
/// `swap` exchanged when that gives a smaller key.
fn case_key(support: &[String], fixed: &[String], swap: Option<(&str, &str)>) -> (Vec<String>, Vec<String>) {
    let norm = |s: &[String], sw: bool| -> Vec<String> {
        let mut v: Vec<String> = s
            .iter()
            .map(|x| match (sw, swap) {
                (true, Some((a, b))) if x == a => b.to_string(),
                (true, Some((a, b))) if x == b => a.to_string(),
                _ => x.clone(),
            })
            .collect();
        v.sort();
        v
    };
    let plain = (norm(support, false), norm(fixed, false));
    let swapped = (norm(support, true), norm(fixed, true));
    plain.min(swapped)
}

/// Case (iii) puts every variable in S with F the two-element hoop on {0, 1};
/// it is keyed with F = {1}.
fn cases(cert: &CaseCertificate, swap: Option<(&str, &str)>) -> BTreeSet<(Vec<String>, Vec<String>)> {
    let top = vec!["1".to_string()];
    cert.cases.iter().map(|n| case_key(&n.support, if n.label == "iii" { &top } else { &n.fixed }, swap)).collect()
}

fn expected(list: &[(&[&str], &[&str])], swap: Option<(&str, &str)>) -> BTreeSet<(Vec<String>, Vec<String>)> {
    let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    list.iter().map(|(s, fx)| case_key(&own(s), &own(fx), swap)).collect()
}

fn case_i_is_dichotomy(cert: &CaseCertificate) -> bool {
    cert.cases.iter().any(|n| n.label == "i" && matches!(n.discharge, Discharge::Dichotomy { .. }))
}

fn criterion_4() -> Criterion {
    timed(Criterion::new(4, "indirect prover", 30), |c| {
        let cfg = ProverConfig::default();
        let run = |c: &mut Criterion, name: &str, id: Identity, want: &[(&[&str], &[&str])], swap: Option<(&str, &str)>| {
            match prove(&id, &cfg) {
                ProverResult::Proved(cert) => {
                    let checked = check_certificate(&cert, &id).is_ok();
                    let got = cases(&cert, swap);
                    let exp = expected(want, swap);
                    let labels: Vec<&str> = cert.cases.iter().map(|n| n.label.as_str()).collect();
                    c.check(name, checked && got == exp, format!("certificate checked: {checked}, cases {labels:?} match: {}", got == exp));
                    Some(cert)
                }
                other => {
                    c.check(name, false, format!("{other:?}"));
                    None
                }
            }
        };
        run(
            c,
            "de_morgan_dual",
            idb("(x -> y)^ = x^^ + y^"),
            &[(&["x", "y"], &[]), (&["x"], &["y"]), (&["y"], &["x"]), (&["x", "y"], &["1"])],
            None,
        );
        let fvs = run(
            c,
            "ferreirim_veroff_spinks",
            idu("(e -> e + e) -> (e -> x + y) -> (e -> x) + (e -> y) = 0"),
            &[
                (&["e", "x", "y"], &[]),
                (&["e"], &["x", "y"]),
                (&["e", "x"], &["y"]),
                (&["y"], &["e", "x"]),
                (&["x", "y"], &["e"]),
            ],
            Some(("x", "y")),
        );
        if let Some(cert) = fvs {
            c.check("fvs_case_i_subcases", case_i_is_dichotomy(&cert), "case i splits into e -> e + e = e and e + e = 1");
        }
        let sub = run(
            c,
            "idempotent_subhoop",
            idu("(x -> x + x) -> (y -> y + y) -> ((x -> y) -> (x -> y) + (x -> y)) = 0"),
            &[(&["x", "y"], &[]), (&["x"], &["y"]), (&["y"], &["x"])],
            None,
        );
        if let Some(cert) = sub {
            c.check("subhoop_case_i_subcases", case_i_is_dichotomy(&cert), "case i splits on boundedness");
        }
        for k in 1..=3 {
            run(c, &format!("neg_{k}x"), idb(&format!("({})^ -> x^^ -> x = 0", multiple(k))), &[(&["x"], &[]), (&["x"], &["1"])], None);
        }
        c.check("eight_case_table", eight_case_table_ok(), "feasible rows and inequalities of the [0,1] case table");
    })
}

// Rows over x < y in [0,1] by the signs of x > 1/2, y > 1/2, y - x > 1/2.
// Feasible rows must satisfy i(x) + i(y) >= i(y - x) with i(t) = t below 1/2
// and 1 - t above.
fn eight_case_table_ok() -> bool {
    let var = |i| LinExpr::var(2, i);
    let k = |n, d| LinExpr::constant(2, q(n, d));
    let (x, y) = (var(0), var(1));
    let d = y.sub(&x);
    let half = k(1, 2);
    let one = k(1, 1);
    let i_of = |t: &LinExpr, big: bool| if big { one.sub(t) } else { t.clone() };
    let impossible = [true, false, true, true, false, false, true, false];
    let mut row = 0;
    for bx in [true, false] {
        for by in [true, false] {
            for bd in [true, false] {
                let mut cons = vec![Constraint::geq0(x.clone()), Constraint::geq0(one.sub(&y)), Constraint::gt0(d.clone())];
                for (t, big) in [(&x, bx), (&y, by), (&d, bd)] {
                    cons.push(if big { Constraint::gt0(t.sub(&half)) } else { Constraint::geq0(half.sub(t)) });
                }
                let feasible = fm_feasible(&cons, 2).is_some();
                if feasible == impossible[row] {
                    return false;
                }
                if feasible {
                    let lhs = i_of(&x, bx).add(&i_of(&y, by));
                    let mut neg = cons.clone();
                    neg.push(Constraint::gt0(i_of(&d, bd).sub(&lhs)));
                    if fm_feasible(&neg, 2).is_some() {
                        return false;
                    }
                }
                row += 1;
            }
        }
    }
    true
}

fn names_in(a: &FiniteAlgebra, target: &FiniteAlgebra, vals: &[usize]) -> Option<Vec<String>> {
    let iso = find_isomorphism(a, target)?;
    Some(vals.iter().map(|&v| target.name(iso[v])).collect())
}

fn criterion_5() -> Criterion {
    timed(Criterion::new(5, "counterexample search", 60), |c| {
        let id = idu("(x -> x + x) -> (y -> y + y) -> ((x -> y) -> (x -> y) + (x -> y)) = 0");
        let q4 = catalog("Q4").unwrap();
        match search_counterexample(&id, 4, &ClassFilter::pocrims()) {
            Some(r) => {
                let w = names_in(&r.algebra, &q4, &[r.assignment["x"], r.assignment["y"]]);
                let ok = r.certify(&id) && r.algebra.size() == 4 && w == Some(vec!["u".into(), "1".into()]);
                c.check("idempotent_closure", ok, format!("order {}, witness in Q4: {w:?}", r.algebra.size()));
            }
            None => c.check("idempotent_closure", false, "no counterexample at order 4"),
        }
        let none3 = search_counterexample(&id, 3, &ClassFilter::pocrims()).is_none();
        c.check("idempotent_closure_minimal", none3, "no counterexample below order 4");

        let id = idb("(x + y)^^ = x^^ + y^^");
        let u = catalog("U").unwrap();
        match prove_in(&id, &ClassFilter::pocrims(), &ProverConfig { max_order: 5, ..ProverConfig::default() }) {
            ProverResult::Refuted(r) => {
                let a = &r.algebra;
                let (x, y) = (r.assignment["x"], r.assignment["y"]);
                let dd = |v| a.delta(v).unwrap();
                let behaves = x == y && dd(a.add(x, x)) != a.add(dd(x), dd(x));
                let iso_u = is_isomorphic(a, &u);
                let w = names_in(a, &u, &[x, y]);
                c.check(
                    "delta_additivity",
                    r.certify(&id) && a.size() <= 5 && behaves && iso_u,
                    format!("order {}, isomorphic to U: {iso_u}, witness in U: {w:?}, delta(a+a) != delta(a)+delta(a): {behaves}", a.size()),
                );
            }
            other => c.check("delta_additivity", false, format!("{other:?}")),
        }
    })
}

fn random_hoops(rng: &mut ChaCha8Rng, k: usize) -> Vec<FiniteAlgebra> {
    let hoops = ClassFilter::hoops();
    let all: Vec<FiniteAlgebra> =
        (2..=5).flat_map(|n| enumerate_pocrims_cached(n).iter().filter(|a| hoops.accepts(a)).cloned().collect::<Vec<_>>()).collect();
    (0..k).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
}

fn criterion_6() -> Criterion {
    timed(Criterion::new(6, "proof kernel", 30), |c| {
        let refl = build_refl(&f("A"));
        let thm = check_hilbert(&refl, LogicId::ALm);
        c.check("refl_checks", refl.len() == 7 && thm.as_ref().ok() == Some(&f("A -> A")), format!("{} lines, conclusion {thm:?}", refl.len()));
        let e = translate_to_equational(&refl, LogicId::LLm).unwrap();
        let ok = check_equational(&e, false);
        c.check("refl_translation", ok.is_ok(), format!("{} steps, checker: {ok:?}", e.len()));

        let mut rng = ChaCha8Rng::seed_from_u64(HOOP_SEED);
        let (mut rejected, mut mismatched, mut terms) = (0, 0, 0usize);
        for seed in 0..RANDOM_PROOFS {
            let p = random_proof(LogicId::LLm, seed, 120);
            if check_hilbert(&p, LogicId::LLm).is_err() {
                rejected += 1;
                continue;
            }
            let e = match translate_to_equational(&p, LogicId::LLm) {
                Ok(e) if check_equational(&e, false).is_ok() => e,
                _ => {
                    rejected += 1;
                    continue;
                }
            };
            for a in random_hoops(&mut rng, HOOPS_PER_PROOF) {
                for chain in e.lemmas.iter().chain([&e.main]) {
                    let mut alpha = hoops::algebra::Assignment::new();
                    for v in chain.terms.iter().flat_map(AlgTerm::vars) {
                        alpha.entry(v).or_insert_with(|| rng.gen_range(0..a.size()));
                    }
                    let v0 = a.eval_term(chain.start(), &alpha).unwrap();
                    for t in &chain.terms {
                        terms += 1;
                        if a.eval_term(t, &alpha).unwrap() != v0 {
                            mismatched += 1;
                        }
                    }
                }
            }
        }
        c.check("random_translations", rejected == 0, format!("{RANDOM_PROOFS} proofs, {rejected} rejected"));
        c.check("intermediate_values", mismatched == 0 && terms > 0, format!("{terms} term evaluations, {mismatched} mismatches"));
    })
}

fn criterion_7() -> Criterion {
    timed(Criterion::new(7, "double negation theorems", 120), |c| {
        let (mut hoops_seen, mut bad_hom, mut pocrims_seen, mut bad_ineq, mut non_hom_pocrims) = (0, 0, 0, 0, 0);
        for n in 1..=5 {
            for a0 in enumerate_pocrims_cached(n).iter() {
                let a = bounded(a0);
                let d = |x| a.delta(x).unwrap();
                let is_hoop = classify(&a).get(Flag::Hoop);
                let one = a.one().unwrap();
                let mut hom = d(0) == 0 && d(one) == one;
                for x in 0..a.size() {
                    for y in 0..a.size() {
                        hom &= d(a.add(x, y)) == a.add(d(x), d(y)) && d(a.imp(x, y)) == a.imp(d(x), d(y));
                        if !a.geq(d(a.imp(x, y)), a.imp(d(x), d(y))) {
                            bad_ineq += 1;
                        }
                    }
                }
                pocrims_seen += 1;
                if is_hoop {
                    hoops_seen += 1;
                    bad_hom += usize::from(!hom);
                } else if !hom {
                    non_hom_pocrims += 1;
                }
            }
        }
        c.check("delta_homomorphism", bad_hom == 0, format!("{hoops_seen} bounded hoops, {bad_hom} where delta is not a homomorphism"));
        c.check("delta_imp_inequality", bad_ineq == 0, format!("{pocrims_seen} bounded pocrims, {bad_ineq} violating pairs"));
        c.check("non_vacuous", non_hom_pocrims > 0, format!("{non_hom_pocrims} non-hoop pocrims where delta is not a homomorphism"));
    })
}

fn dns_summary(r: &DnsResult, names: &[&str], algs: &[FiniteAlgebra]) -> String {
    match r {
        DnsResult::Pass => "pass".into(),
        DnsResult::Fail(w) => {
            let a = &algs[w.algebra];
            let al: Vec<String> = w.assignment.iter().map(|(v, &x)| format!("{v}={}", a.name(x))).collect();
            format!("fail: {} in {} at {} = {}", w.formula, names[w.algebra], al.join(","), a.name(w.value))
        }
    }
}

fn criterion_8() -> Criterion {
    timed(Criterion::new(8, "double negation semantics", 300), |c| {
        let q6 = catalog("Q6").unwrap();
        let p4 = catalog("P4").unwrap();
        let at = |a: &FiniteAlgebra, pairs: &[(&str, &str)]| -> hoops::algebra::Assignment {
            pairs.iter().map(|(v, e)| (v.to_string(), a.element(e).unwrap())).collect()
        };
        let gentzen_formula = f("(V * W)^^ -> V * W");
        let g = evaluate(Gentzen, &q6, &at(&q6, &[("V", "r"), ("W", "r")]), &gentzen_formula).unwrap();
        c.check("gentzen_q6_value", q6.name(g) == "s", format!("Gentzen value in Q6 at V=W=r is {}, expected s", q6.name(g)));
        c.check("gentzen_q6_nonzero", g != 0, format!("value {} is nonzero, so the formula is not Gentzen-valid in Q6", q6.name(g)));
        let l = evaluate(Glivenko, &p4, &at(&p4, &[("V", "q")]), &f("V^^ -> V")).unwrap();
        c.check("glivenko_p4_value", p4.name(l) == "p", format!("Glivenko value in P4 at V=q is {}", p4.name(l)));

        let fs = corpus();
        let shape_ok = fs.len() == CORPUS_SIZE
            && fs.iter().all(|x| x.depth() <= CORPUS_DEPTH && x.vars().len() <= CORPUS_VARS)
            && fs.iter().collect::<BTreeSet<_>>().len() == fs.len();
        c.check("corpus", shape_ok, format!("{} distinct formulas, seed {CORPUS_SEED}, depth <= {CORPUS_DEPTH}, <= {CORPUS_VARS} vars", fs.len()));

        let classes: [(&str, [&str; 2], SemanticsKind, SemanticsKind, &Formula); 2] = [
            ("c1", ["P4", "L3"], Gentzen, Glivenko, &f("V^^ -> V")),
            ("c2", ["Q6", "Q4"], Glivenko, Gentzen, &gentzen_formula),
        ];
        for (label, names, good, bad, paper_formula) in classes {
            let algs = cat(&names);
            let r = check_dns(good, &algs, &fs).unwrap();
            c.check(
                &format!("{label}_{good}_passes"),
                r.passed(),
                format!(
                    "DNS1 {}, DNS2 {}, DNS3 {}",
                    dns_summary(&r.dns1, &names, &algs),
                    dns_summary(&r.dns2, &names, &algs),
                    dns_summary(&r.dns3, &names, &algs)
                ),
            );
            let r = check_dns(bad, &algs, &fs).unwrap();
            c.check(&format!("{label}_{bad}_fails"), !r.passed(), format!("corpus DNS2 {}", dns_summary(&r.dns2, &names, &algs)));
            let r = check_dns(bad, &algs, std::slice::from_ref(paper_formula)).unwrap();
            let hit = matches!(&r.dns2, DnsResult::Fail(w) if &w.formula == paper_formula && w.algebra == 0);
            c.check(&format!("{label}_{bad}_witness"), hit, format!("DNS2 {}", dns_summary(&r.dns2, &names, &algs)));
        }
    })
}

fn criterion_9() -> Criterion {
    timed(Criterion::new(9, "theories of L3, P4, Q4, Q6", 120), |c| {
        let (l3, p4, q4, q6) = (catalog("L3").unwrap(), catalog("P4").unwrap(), catalog("Q4").unwrap(), catalog("Q6").unwrap());
        let small = [q6.element("0").unwrap(), q6.element("p").unwrap()];
        let (mut l3_valid, mut q4_valid, mut bad_p4, mut bad_q6, mut bad_dne) = (0, 0, 0, 0, 0);
        for a in corpus() {
            if is_valid(Standard, &l3, &a).unwrap().is_none() {
                l3_valid += 1;
                let b = dne_guard(&a);
                let guarded = Formula::limp(Formula::tensor(b.clone(), b), a.clone());
                bad_p4 += usize::from(is_valid(Standard, &p4, &guarded).unwrap().is_some());
            }
            if is_valid(Standard, &q4, &a).unwrap().is_none() {
                q4_valid += 1;
                let vars = a.vars();
                bad_q6 += q6.assignments(&vars).filter(|al| !small.contains(&evaluate(Standard, &q6, al, &a).unwrap())).count();
                let dne = Formula::limp(Formula::limp(Formula::neg(Formula::neg(a.clone())), a.clone()), a.clone());
                bad_dne += usize::from(is_valid(Standard, &q6, &dne).unwrap().is_some());
            }
        }
        c.check("l3_to_p4", bad_p4 == 0 && l3_valid > 0, format!("{l3_valid} formulas valid in L3, {bad_p4} guarded forms invalid in P4"));
        c.check("q4_to_q6", bad_q6 == 0 && q4_valid > 0, format!("{q4_valid} formulas valid in Q4, {bad_q6} Q6 values outside {{0, p}}"));
        c.check("q6_dne_form", bad_dne == 0, format!("{bad_dne} of them with (A^^ -> A) -> A invalid in Q6"));
    })
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut out = String::from("\n");
    for r in &results {
        out.push_str(&r.report());
    }
    let known: Vec<&str> = KNOWN_DEVIATIONS.iter().map(|(id, _)| *id).collect();
    for (id, why) in KNOWN_DEVIATIONS {
        out.push_str(&format!("known deviation {id}: {why}\n"));
    }
    println!("{out}");

    let mut unexpected = Vec::new();
    for r in &results {
        if r.elapsed > r.limit {
            unexpected.push(format!("criterion {} over time: {:.2}s", r.num, r.elapsed.as_secs_f64()));
        }
        for ch in &r.checks {
            let listed = known.contains(&ch.id.as_str());
            if ch.ok == listed {
                unexpected.push(format!("{} {} ({})", ch.id, if ch.ok { "passes but is listed as a deviation" } else { "failed" }, ch.detail));
            }
        }
    }
    assert!(unexpected.is_empty(), "unexpected acceptance results:\n{}", unexpected.join("\n"));
}
