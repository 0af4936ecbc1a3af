//! Python bindings: algebras, the oracle, the prover, proof checking and the
//! double negation semantics. Errors surface as `ValueError`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hoops::algebra::{self, check_pocrim, classify, enumerate_pocrims, Assignment, ClassFilter, EnumOptions, FiniteAlgebra, Flag};
use hoops::lra::{self, Domain, Verdict};
use hoops::proof::{check_equational, check_hilbert, translate_to_equational, EquationalProof, HilbertProof, LogicId};
use hoops::prover::{check_certificate, prove_in, ProverConfig, ProverResult};
use hoops::semantics::{self, DnsResult, SemanticsKind};
use hoops::syntax::{parse_formula, parse_identity, parse_term, Identity};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite pocrim given by its `+` and `->` tables.
#[pyclass(name = "Algebra", module = "hoops_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: FiniteAlgebra,
}

impl PyAlgebra {
    fn assignment(&self, values: BTreeMap<String, String>) -> PyResult<Assignment> {
        values.into_iter().map(|(v, e)| Ok((v, self.inner.element(&e).map_err(err)?))).collect()
    }
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: algebra::catalog(name).map_err(err)? })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let a = FiniteAlgebra::from_text(text).map_err(err)?;
        Ok(PyAlgebra { inner: if a.one().is_none() { a.with_one_detected() } else { a } })
    }

    #[staticmethod]
    #[pyo3(signature = (add, imp, one=None))]
    fn from_tables(add: Vec<Vec<usize>>, imp: Vec<Vec<usize>>, one: Option<usize>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: FiniteAlgebra::from_tables(&add, &imp, one).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        (0..self.inner.size()).map(|x| self.inner.name(x)).collect()
    }

    fn element(&self, name: &str) -> PyResult<usize> {
        self.inner.element(name).map_err(err)
    }

    fn name(&self, x: usize) -> PyResult<String> {
        if x < self.inner.size() {
            Ok(self.inner.name(x))
        } else {
            Err(err(format!("element {x} out of range")))
        }
    }

    fn add(&self, x: usize, y: usize) -> PyResult<usize> {
        self.name(x)?;
        self.name(y)?;
        Ok(self.inner.add(x, y))
    }

    fn imp(&self, x: usize, y: usize) -> PyResult<usize> {
        self.name(x)?;
        self.name(y)?;
        Ok(self.inner.imp(x, y))
    }

    fn delta(&self, x: usize) -> PyResult<usize> {
        self.name(x)?;
        self.inner.delta(x).map_err(err)
    }

    /// `(law, witness)` per pocrim law; the witness is `None` when it holds.
    fn check_pocrim(&self) -> Vec<(String, Option<Vec<String>>)> {
        check_pocrim(&self.inner)
            .laws
            .iter()
            .map(|l| (l.law.tag().to_string(), l.witness.as_ref().map(|w| w.iter().map(|&x| self.inner.name(x)).collect())))
            .collect()
    }

    fn is_pocrim(&self) -> bool {
        check_pocrim(&self.inner).holds()
    }

    fn classify(&self) -> BTreeMap<String, bool> {
        let c = classify(&self.inner);
        Flag::ALL.iter().map(|f| (f.tag().to_string(), c.get(*f))).collect()
    }

    fn is_isomorphic(&self, other: &PyAlgebra) -> bool {
        algebra::is_isomorphic(&self.inner, &other.inner)
    }

    /// Value of an algebraic term; `values` maps variables to element names.
    fn eval_term(&self, term: &str, values: BTreeMap<String, String>) -> PyResult<String> {
        let t = parse_term(term).map_err(err)?;
        let v = self.inner.eval_term(&t, &self.assignment(values)?).map_err(err)?;
        Ok(self.inner.name(v))
    }

    /// Value of a formula under `kind` (standard, kolmogorov, gentzen, glivenko).
    #[pyo3(signature = (formula, values, kind="standard"))]
    fn evaluate(&self, formula: &str, values: BTreeMap<String, String>, kind: &str) -> PyResult<String> {
        let kind: SemanticsKind = kind.parse().map_err(err)?;
        let f = parse_formula(formula).map_err(err)?;
        let v = semantics::evaluate(kind, &self.inner, &self.assignment(values)?, &f).map_err(err)?;
        Ok(self.inner.name(v))
    }

    /// A failing assignment, or `None` when the formula is valid.
    #[pyo3(signature = (formula, kind="standard"))]
    fn counterexample(&self, formula: &str, kind: &str) -> PyResult<Option<BTreeMap<String, String>>> {
        let kind: SemanticsKind = kind.parse().map_err(err)?;
        let f = parse_formula(formula).map_err(err)?;
        let r = semantics::is_valid(kind, &self.inner, &f).map_err(err)?;
        Ok(r.map(|al| al.into_iter().map(|(v, x)| (v, self.inner.name(x))).collect()))
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(order={}, names={:?})", self.inner.size(), self.names())
    }
}

fn identity(src: &str, bounded: Option<bool>) -> PyResult<Identity> {
    let bounded = match bounded {
        Some(b) => b,
        None => {
            let probe = parse_identity(src, true).map_err(err)?;
            probe.lhs.contains_one() || probe.rhs.contains_one()
        }
    };
    parse_identity(src, bounded).map_err(err)
}

/// Pocrims of order `n` up to isomorphism, filtered by class flags.
#[pyfunction]
#[pyo3(signature = (n, filter="pocrim"))]
fn enumerate(py: Python<'_>, n: usize, filter: &str) -> PyResult<Vec<PyAlgebra>> {
    let filter = ClassFilter::parse(filter).map_err(err)?;
    let e = py.detach(|| enumerate_pocrims(n, &filter, &EnumOptions::default())).map_err(err)?;
    Ok(e.algebras.into_iter().map(|inner| PyAlgebra { inner }).collect())
}

/// `(valid, witness)` over `[0,1]` (`unit`) or `[0,inf)` (`nonneg`).
#[pyfunction]
#[pyo3(signature = (identity_src, domain="unit", bounded=None))]
fn decide(identity_src: &str, domain: &str, bounded: Option<bool>) -> PyResult<(bool, Option<BTreeMap<String, String>>)> {
    let domain = match domain {
        "unit" => Domain::UnitInterval,
        "nonneg" => Domain::NonNegReals,
        other => return Err(err(format!("unknown domain {other}"))),
    };
    let id = identity(identity_src, bounded)?;
    match lra::decide(&id, domain).map_err(err)? {
        Verdict::Valid => Ok((true, None)),
        Verdict::Invalid(w) => Ok((false, Some(w.into_iter().map(|(v, q)| (v, q.to_string())).collect()))),
    }
}

/// `("proved", certificate)`, `("refuted", algebra text and assignment)` or
/// `("unknown", reason)`.
#[pyfunction]
#[pyo3(signature = (identity_src, class_filter="hoop", bounded=None, max_order=5))]
fn prove(py: Python<'_>, identity_src: &str, class_filter: &str, bounded: Option<bool>, max_order: usize) -> PyResult<(String, String)> {
    let id = identity(identity_src, bounded)?;
    let class = ClassFilter::parse(class_filter).map_err(err)?;
    let cfg = ProverConfig { max_order, ..ProverConfig::default() };
    Ok(match py.detach(|| prove_in(&id, &class, &cfg)) {
        ProverResult::Proved(c) => {
            check_certificate(&c, &id).map_err(err)?;
            ("proved".into(), c.to_string())
        }
        ProverResult::Refuted(r) => {
            let vals: Vec<String> = r.assignment.iter().map(|(v, &x)| format!("{v}={}", r.algebra.name(x))).collect();
            ("refuted".into(), format!("{}\n{}", vals.join(","), r.algebra.to_text()))
        }
        ProverResult::Unknown(u) => ("unknown".into(), u.to_string()),
    })
}

fn logic(text_logic: Option<LogicId>, logic: Option<&str>) -> PyResult<LogicId> {
    match (logic, text_logic) {
        (Some(l), _) => l.parse().map_err(err),
        (None, Some(l)) => Ok(l),
        (None, None) => Err(err("no logic given")),
    }
}

/// Checks a Hilbert proof and returns its conclusion.
#[pyfunction]
#[pyo3(signature = (text, logic_name=None))]
fn check_proof(text: &str, logic_name: Option<&str>) -> PyResult<String> {
    let (p, header) = HilbertProof::from_text(text).map_err(err)?;
    let l = logic(header, logic_name)?;
    Ok(check_hilbert(&p, l).map_err(err)?.to_string())
}

/// Translates an LLm or LLi proof into a checked equational proof.
#[pyfunction]
#[pyo3(signature = (text, logic_name=None))]
fn translate_proof(text: &str, logic_name: Option<&str>) -> PyResult<String> {
    let (p, header) = HilbertProof::from_text(text).map_err(err)?;
    let l = logic(header, logic_name)?;
    let e = translate_to_equational(&p, l).map_err(err)?;
    check_equational(&e, l.bounded()).map_err(err)?;
    Ok(e.to_text())
}

/// Checks an equational proof; returns its number of steps.
#[pyfunction]
fn check_eq_proof(text: &str) -> PyResult<usize> {
    let e = EquationalProof::from_text(text).map_err(err)?;
    check_equational(&e, e.goal.bounded).map_err(err)?;
    Ok(e.len())
}

/// Seeded random formulas.
#[pyfunction]
#[pyo3(signature = (depth, n_vars, count, seed=0))]
fn random_formulas(depth: usize, n_vars: usize, count: usize, seed: u64) -> Vec<String> {
    semantics::random_formulas(depth, n_vars, count, seed).iter().map(|f| f.to_string()).collect()
}

/// Maps `dns1`, `dns2`, `dns3` to `None` on pass or to
/// `(formula, algebra index, assignment, value)` on failure.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn dns_check(
    py: Python<'_>,
    kind: &str,
    class: Vec<PyAlgebra>,
    formulas: Vec<String>,
) -> PyResult<BTreeMap<String, Option<(String, usize, BTreeMap<String, String>, String)>>> {
    let kind: SemanticsKind = kind.parse().map_err(err)?;
    let algs: Vec<FiniteAlgebra> = class.into_iter().map(|a| a.inner).collect();
    let fs = formulas.iter().map(|s| parse_formula(s).map_err(err)).collect::<PyResult<Vec<_>>>()?;
    let r = py.detach(|| semantics::check_dns(kind, &algs, &fs)).map_err(err)?;
    let one = |d: &DnsResult| match d {
        DnsResult::Pass => None,
        DnsResult::Fail(w) => {
            let a = &algs[w.algebra];
            let al = w.assignment.iter().map(|(v, &x)| (v.clone(), a.name(x))).collect();
            Some((w.formula.to_string(), w.algebra, al, a.name(w.value)))
        }
    };
    Ok([("dns1", &r.dns1), ("dns2", &r.dns2), ("dns3", &r.dns3)].into_iter().map(|(k, d)| (k.to_string(), one(d))).collect())
}

/// Runs the command line with `args` (without the program name).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    py.detach(|| hoops::cli::run(std::iter::once("hoops".to_string()).chain(args)))
}

#[pymodule]
pub fn hoops_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add("CATALOG_NAMES", algebra::CATALOG_NAMES.to_vec())?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(check_proof, m)?)?;
    m.add_function(wrap_pyfunction!(translate_proof, m)?)?;
    m.add_function(wrap_pyfunction!(check_eq_proof, m)?)?;
    m.add_function(wrap_pyfunction!(random_formulas, m)?)?;
    m.add_function(wrap_pyfunction!(dns_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
