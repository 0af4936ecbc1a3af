//! Command-line interface. [`run`] returns the exit code and the report so
//! that the binary and the tests share one code path.
//!
//! Exit codes: 0 holds / valid / proved, 1 refuted with a witness, 2 unknown,
//! 64 usage error, 65 malformed input, 66 unreadable file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{
    catalog, check_pocrim, classify, double_negation, enumerate_pocrims, ClassFilter, EnumOptions, FiniteAlgebra, Flag,
    CATALOG_NAMES,
};
use crate::lra::{decide, format_assignment, Domain, Verdict};
use crate::proof::{
    annotate, check_equational, check_hilbert, expand_eq2, inline, translate_to_equational, EquationalProof,
    HilbertProof, LogicId,
};
use crate::prover::{check_certificate, prove_in, search_counterexample, ProverConfig, ProverResult, MAX_SEARCH_ORDER};
use crate::semantics::{
    check_dns, evaluate, evaluate_unbounded, random_formulas, SemanticsKind, DnsResult,
};
use crate::syntax::{parse_formula, parse_identity, Identity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Parser, Debug)]
#[command(name = "hoops", version, about = "Pocrims, hoops and substructural logics")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// One record per line with a stable field order.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Worker threads for enumeration, proving and DNS sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Sig {
    /// Signature of the identity; by default bounded exactly when it mentions 1 or ^.
    #[arg(long, value_parser = ["bounded", "unbounded"])]
    signature: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pocrims of order n up to isomorphism.
    Enumerate {
        n: usize,
        /// Comma separated class flags, e.g. `hoop`, `pocrim,!involutive`.
        #[arg(long, default_value = "pocrim")]
        filter: String,
        /// Print only the number of algebras.
        #[arg(long)]
        count: bool,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check the pocrim laws for an algebra file or catalog name.
    CheckAlgebra { alg: String },
    /// Structural flags with witnesses.
    Classify { alg: String },
    /// Decide an identity over the unit interval or the nonnegative reals.
    Decide {
        #[arg(long, value_parser = ["unit", "nonneg"])]
        domain: String,
        #[command(flatten)]
        sig: Sig,
        identity: String,
    },
    /// Prove an identity for all hoops, or refute it.
    Prove {
        #[command(flatten)]
        sig: Sig,
        /// Class to refute in.
        #[arg(long, default_value = "hoop")]
        class: String,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        identity: String,
    },
    /// Search the enumerated finite algebras for a counterexample.
    SearchCex {
        #[command(flatten)]
        sig: Sig,
        #[arg(long, default_value = "hoop")]
        class: String,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        identity: String,
    },
    /// Check a Hilbert-style proof.
    CheckProof {
        file: PathBuf,
        /// Logic to check in; defaults to the file's `logic` header.
        #[arg(long)]
        logic: Option<String>,
    },
    /// Translate an LLm or LLi proof into an equational proof.
    TranslateProof {
        file: PathBuf,
        #[arg(long)]
        logic: Option<String>,
        /// Splice lemma chains into one chain.
        #[arg(long)]
        inline: bool,
        /// Replace eq2 steps by their derivation.
        #[arg(long)]
        expand_eq2: bool,
    },
    /// Check an equational proof.
    CheckEqProof {
        file: PathBuf,
        #[command(flatten)]
        sig: Sig,
    },
    /// Evaluate a formula in a finite algebra.
    Eval {
        #[arg(long)]
        alg: String,
        #[arg(long, default_value = "standard")]
        kind: String,
        /// Comma separated `var=element` pairs.
        #[arg(long, default_value = "")]
        assign: String,
        /// Interpret 1 as this element instead of the annihilator (standard only).
        #[arg(long)]
        one: Option<String>,
        formula: String,
    },
    /// Test the double negation semantics conditions over a finite class.
    DnsCheck {
        #[arg(long)]
        kind: String,
        /// File listing one algebra file or catalog name per line.
        #[arg(long)]
        class: PathBuf,
        /// File with one formula per line; otherwise a seeded random corpus.
        #[arg(long)]
        formulas: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
    /// List the catalog, or print one algebra.
    Catalog { name: Option<String> },
}

struct Fail(i32, String);

type Out = Result<(i32, String), Fail>;

fn data(e: impl std::fmt::Display) -> Fail {
    Fail(EXIT_DATA, format!("error: {e}\n"))
}

fn usage(e: impl std::fmt::Display) -> Fail {
    Fail(EXIT_USAGE, format!("error: {e}\n"))
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(EXIT_IO, format!("error: cannot read {}: {e}\n", path.display())))
}

/// A catalog name, or a path to an algebra file (relative to `base`).
fn load_algebra(spec: &str, base: Option<&Path>) -> Result<FiniteAlgebra, Fail> {
    if let Ok(a) = catalog(spec) {
        return Ok(a);
    }
    let path = match base {
        Some(b) if Path::new(spec).is_relative() => b.join(spec),
        _ => PathBuf::from(spec),
    };
    if !path.exists() {
        return Err(Fail(EXIT_IO, format!("error: {spec} is neither a catalog name nor a readable file\n")));
    }
    let text = read(&path)?;
    let a = FiniteAlgebra::from_text(&text).map_err(|e| data(format!("{}: {e}", path.display())))?;
    Ok(if a.one().is_none() { a.with_one_detected() } else { a })
}

fn identity(src: &str, sig: &Sig) -> Result<Identity, Fail> {
    let bounded = match sig.signature.as_deref() {
        Some(s) => s == "bounded",
        None => {
            let probe = parse_identity(src, true).map_err(data)?;
            probe.lhs.contains_one() || probe.rhs.contains_one()
        }
    };
    parse_identity(src, bounded).map_err(data)
}

fn logic_of(flag: &Option<String>, header: Option<LogicId>) -> Result<LogicId, Fail> {
    match (flag, header) {
        (Some(s), _) => s.parse().map_err(usage),
        (None, Some(l)) => Ok(l),
        (None, None) => Err(usage("no logic given: pass --logic or add a `logic` header")),
    }
}

fn flags_line(a: &FiniteAlgebra) -> String {
    let c = classify(a);
    Flag::ALL.iter().map(|f| format!("{f}={}", u8::from(c.get(*f)))).collect::<Vec<_>>().join(" ")
}

fn cmd_enumerate(cli: &Cli, n: usize, filter: &str, count: bool, budget: Option<u64>) -> Out {
    let filter = ClassFilter::parse(filter).map_err(usage)?;
    let opts = EnumOptions { budget, jobs: cli.jobs };
    let e = enumerate_pocrims(n, &filter, &opts).map_err(data)?;
    let mut s = String::new();
    if count {
        let _ = writeln!(s, "{}", e.algebras.len());
    } else {
        for (k, a) in e.algebras.iter().enumerate() {
            if cli.porcelain {
                let _ = writeln!(s, "{k}\t{}", flags_line(a));
            } else {
                let _ = writeln!(s, "# algebra {} of {}: {}", k + 1, e.algebras.len(), flags_line(a));
                s.push_str(&a.to_text());
                s.push('\n');
            }
        }
    }
    if !e.complete {
        let _ = writeln!(s, "incomplete: node budget exhausted after {} nodes", e.nodes);
        return Ok((EXIT_UNKNOWN, s));
    }
    Ok((EXIT_OK, s))
}

fn cmd_check_algebra(cli: &Cli, spec: &str) -> Out {
    let a = load_algebra(spec, None)?;
    let r = check_pocrim(&a);
    let mut s = String::new();
    for l in &r.laws {
        match (&l.witness, cli.porcelain) {
            (None, true) => {
                let _ = writeln!(s, "{}\tok", l.law.tag());
            }
            (None, false) => {
                let _ = writeln!(s, "{:<3} ok    {}", l.law.tag(), l.law.statement());
            }
            (Some(w), _) => {
                let names: Vec<String> = w.iter().map(|&x| a.name(x)).collect();
                if cli.porcelain {
                    let _ = writeln!(s, "{}\tfail\t{}", l.law.tag(), names.join(","));
                } else {
                    let _ = writeln!(s, "{:<3} FAIL  {}  at ({})", l.law.tag(), l.law.statement(), names.join(", "));
                }
            }
        }
    }
    Ok((if r.holds() { EXIT_OK } else { EXIT_REFUTED }, s))
}

fn cmd_classify(cli: &Cli, spec: &str) -> Out {
    let a = load_algebra(spec, None)?;
    if !check_pocrim(&a).holds() {
        return Err(data("not a pocrim; run check-algebra for details"));
    }
    let c = classify(&a);
    let mut s = String::new();
    for f in Flag::ALL {
        let v = c.get(f);
        if cli.porcelain {
            let _ = writeln!(s, "{f}\t{}", u8::from(v));
            continue;
        }
        let _ = write!(s, "{:<24} {}", f.tag(), if v { "yes" } else { "no" });
        if let Some(w) = c.witness(f) {
            let names: Vec<String> = w.elements.iter().map(|&x| a.name(x)).collect();
            let _ = write!(s, "  ({}: {})", w.law, names.join(", "));
        }
        s.push('\n');
    }
    if let (Ok(dn), false) = (double_negation(&a), cli.porcelain) {
        let image: Vec<String> = dn.image.iter().map(|&x| a.name(x)).collect();
        let _ = writeln!(s, "double negation image {{{}}}, closed under + : {}", image.join(", "), dn.image_closed_under_add);
    }
    Ok((EXIT_OK, s))
}

fn cmd_decide(cli: &Cli, domain: &str, sig: &Sig, src: &str) -> Out {
    let domain = if domain == "unit" { Domain::UnitInterval } else { Domain::NonNegReals };
    let id = identity(src, sig)?;
    let v = decide(&id, domain).map_err(data)?;
    Ok(match v {
        Verdict::Valid if cli.porcelain => (EXIT_OK, "valid\n".into()),
        Verdict::Valid => (EXIT_OK, format!("valid over {domain}: {id}\n")),
        Verdict::Invalid(w) if cli.porcelain => (EXIT_REFUTED, format!("invalid\t{}\n", format_assignment(&w))),
        Verdict::Invalid(w) => (EXIT_REFUTED, format!("invalid over {domain}: {id}\nwitness {}\n", format_assignment(&w))),
    })
}

fn refutation_text(cli: &Cli, r: &crate::prover::Refutation) -> String {
    let vals: Vec<String> = r.assignment.iter().map(|(v, &x)| format!("{v}={}", r.algebra.name(x))).collect();
    if cli.porcelain {
        format!("refuted\t{}\t{}\n", r.algebra.size(), vals.join(","))
    } else {
        format!(
            "refuted in an algebra of order {} at {} (elements by index, 0 is the unit)\n{}",
            r.algebra.size(),
            vals.join(","),
            r.algebra.to_text()
        )
    }
}

fn cmd_prove(cli: &Cli, sig: &Sig, class: &str, max_order: usize, src: &str) -> Out {
    let id = identity(src, sig)?;
    let class = ClassFilter::parse(class).map_err(usage)?;
    let cfg = ProverConfig { max_order: max_order.min(MAX_SEARCH_ORDER), ..ProverConfig::default() };
    Ok(match prove_in(&id, &class, &cfg) {
        ProverResult::Proved(c) => {
            check_certificate(&c, &id).map_err(|e| Fail(EXIT_DATA, format!("internal: certificate rejected: {e}\n")))?;
            if cli.porcelain {
                let labels: Vec<&str> = c.cases.iter().map(|n| n.label.as_str()).collect();
                (EXIT_OK, format!("proved\t{}\n", labels.join(",")))
            } else {
                (EXIT_OK, format!("{c}certificate checked\n"))
            }
        }
        ProverResult::Refuted(r) => (EXIT_REFUTED, refutation_text(cli, &r)),
        ProverResult::Unknown(u) if cli.porcelain => (EXIT_UNKNOWN, format!("unknown\t{u}\n")),
        ProverResult::Unknown(u) => (EXIT_UNKNOWN, format!("unknown: {u}\n")),
    })
}

fn cmd_search(cli: &Cli, sig: &Sig, class: &str, max_order: usize, src: &str) -> Out {
    let id = identity(src, sig)?;
    let class = ClassFilter::parse(class).map_err(usage)?;
    if max_order > MAX_SEARCH_ORDER {
        return Err(usage(format!("--max-order is capped at {MAX_SEARCH_ORDER}")));
    }
    Ok(match search_counterexample(&id, max_order, &class) {
        Some(r) => (EXIT_REFUTED, refutation_text(cli, &r)),
        None if cli.porcelain => (EXIT_UNKNOWN, format!("none\t{max_order}\n")),
        None => (EXIT_UNKNOWN, format!("no counterexample up to order {max_order}\n")),
    })
}

fn cmd_check_proof(cli: &Cli, file: &Path, logic: &Option<String>) -> Out {
    let (p, header) = HilbertProof::from_text(&read(file)?).map_err(data)?;
    let logic = logic_of(logic, header)?;
    match check_hilbert(&p, logic) {
        Ok(thm) if cli.porcelain => Ok((EXIT_OK, format!("ok\t{logic}\t{thm}\n"))),
        Ok(thm) => Ok((EXIT_OK, format!("{}checked in {logic}: {thm}\n", annotate(&p, logic).unwrap_or_default()))),
        Err(e) if cli.porcelain => Ok((EXIT_REFUTED, format!("fail\t{e}\n"))),
        Err(e) => Ok((EXIT_REFUTED, format!("rejected: {e}\n"))),
    }
}

fn cmd_translate(file: &Path, logic: &Option<String>, do_inline: bool, do_expand: bool) -> Out {
    let (p, header) = HilbertProof::from_text(&read(file)?).map_err(data)?;
    let logic = logic_of(logic, header)?;
    let mut e = translate_to_equational(&p, logic).map_err(data)?;
    if do_expand {
        e = expand_eq2(&e);
    }
    if do_inline {
        e = inline(&e);
    }
    check_equational(&e, logic.bounded()).map_err(|err| data(format!("internal: translation rejected: {err}")))?;
    Ok((EXIT_OK, e.to_text()))
}

fn cmd_check_eq(cli: &Cli, file: &Path, sig: &Sig) -> Out {
    let e = EquationalProof::from_text(&read(file)?).map_err(data)?;
    let bounded = match sig.signature.as_deref() {
        Some(s) => s == "bounded",
        None => e.goal.bounded,
    };
    Ok(match check_equational(&e, bounded) {
        Ok(()) if cli.porcelain => (EXIT_OK, format!("ok\t{}\n", e.len())),
        Ok(()) => (EXIT_OK, format!("checked: {} in {} steps\n", e.goal, e.len())),
        Err(err) if cli.porcelain => (EXIT_REFUTED, format!("fail\t{}\t{}\t{}\n", err.chain, err.step.unwrap_or(0), err.msg)),
        Err(err) => (EXIT_REFUTED, format!("rejected: {err}\n")),
    })
}

fn parse_assign(a: &FiniteAlgebra, s: &str) -> Result<crate::algebra::Assignment, Fail> {
    let mut out = crate::algebra::Assignment::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (v, e) = part.split_once('=').ok_or_else(|| usage(format!("expected var=element, found '{part}'")))?;
        out.insert(v.trim().to_string(), a.element(e.trim()).map_err(data)?);
    }
    Ok(out)
}

fn cmd_eval(alg: &str, kind: &str, assign: &str, one: &Option<String>, formula: &str) -> Out {
    let a = load_algebra(alg, None)?;
    let kind: SemanticsKind = kind.parse().map_err(usage)?;
    let f = parse_formula(formula).map_err(data)?;
    let alpha = parse_assign(&a, assign)?;
    let v = match one {
        Some(o) if kind == SemanticsKind::Standard => {
            let o = a.element(o).map_err(data)?;
            evaluate_unbounded(&a, &alpha, o, &f).map_err(data)?
        }
        Some(_) => return Err(usage("--one applies to the standard semantics only")),
        None => evaluate(kind, &a, &alpha, &f).map_err(data)?,
    };
    Ok((EXIT_OK, format!("{}\n", a.name(v))))
}

fn cmd_dns(cli: &Cli, kind: &str, class: &Path, formulas: &Option<PathBuf>, depth: usize, vars: usize, count: usize) -> Out {
    let kind: SemanticsKind = kind.parse().map_err(usage)?;
    let base = class.parent();
    let mut names = Vec::new();
    let mut algs = Vec::new();
    for line in read(class)?.lines() {
        let l = line.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        algs.push(load_algebra(l, base)?);
        names.push(l.to_string());
    }
    if algs.is_empty() {
        return Err(data("empty class file"));
    }
    let corpus = match formulas {
        Some(p) => {
            let mut fs = Vec::new();
            for (k, line) in read(p)?.lines().enumerate() {
                let l = line.split('#').next().unwrap().trim();
                if !l.is_empty() {
                    fs.push(parse_formula(l).map_err(|e| data(format!("line {}: {e}", k + 1)))?);
                }
            }
            fs
        }
        None => random_formulas(depth, vars, count, cli.seed),
    };
    let r = check_dns(kind, &algs, &corpus).map_err(data)?;
    let text = if cli.porcelain {
        let mut s = String::new();
        for (label, d) in [("dns1", &r.dns1), ("dns2", &r.dns2), ("dns3", &r.dns3)] {
            match d {
                DnsResult::Pass => {
                    let _ = writeln!(s, "{label}\tpass");
                }
                DnsResult::Fail(w) => {
                    let a = &algs[w.algebra];
                    let al: Vec<String> = w.assignment.iter().map(|(v, &x)| format!("{v}={}", a.name(x))).collect();
                    let _ = writeln!(s, "{label}\tfail\t{}\t{}\t{}\t{}", w.formula, names[w.algebra], al.join(","), a.name(w.value));
                }
            }
        }
        s
    } else {
        r.render(&names, &algs)
    };
    Ok((if r.passed() { EXIT_OK } else { EXIT_REFUTED }, text))
}

fn cmd_catalog(cli: &Cli, name: &Option<String>) -> Out {
    match name {
        None => {
            let mut s = String::new();
            for n in CATALOG_NAMES {
                let a = catalog(n).unwrap();
                if cli.porcelain {
                    let _ = writeln!(s, "{n}\t{}", a.size());
                } else {
                    let _ = writeln!(s, "{n:<4} order {}  {}", a.size(), flags_line(&a));
                }
            }
            s.push_str(if cli.porcelain { "" } else { "families: L<n> (Lukasiewicz chains), G<n> (Goedel chains)\n" });
            Ok((EXIT_OK, s))
        }
        Some(n) => Ok((EXIT_OK, catalog(n).map_err(usage)?.to_text())),
    }
}

fn dispatch(cli: &Cli) -> Out {
    match &cli.command {
        Command::Enumerate { n, filter, count, budget } => cmd_enumerate(cli, *n, filter, *count, *budget),
        Command::CheckAlgebra { alg } => cmd_check_algebra(cli, alg),
        Command::Classify { alg } => cmd_classify(cli, alg),
        Command::Decide { domain, sig, identity } => cmd_decide(cli, domain, sig, identity),
        Command::Prove { sig, class, max_order, identity } => cmd_prove(cli, sig, class, *max_order, identity),
        Command::SearchCex { sig, class, max_order, identity } => cmd_search(cli, sig, class, *max_order, identity),
        Command::CheckProof { file, logic } => cmd_check_proof(cli, file, logic),
        Command::TranslateProof { file, logic, inline, expand_eq2 } => cmd_translate(file, logic, *inline, *expand_eq2),
        Command::CheckEqProof { file, sig } => cmd_check_eq(cli, file, sig),
        Command::Eval { alg, kind, assign, one, formula } => cmd_eval(alg, kind, assign, one, formula),
        Command::DnsCheck { kind, class, formulas, depth, vars, count } => {
            cmd_dns(cli, kind, class, formulas, *depth, *vars, *count)
        }
        Command::Catalog { name } => cmd_catalog(cli, name),
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let go = || match dispatch(&cli) {
        Ok(r) => r,
        Err(Fail(code, msg)) => (code, msg),
    };
    match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(go),
            Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
        },
        None => go(),
    }
}
