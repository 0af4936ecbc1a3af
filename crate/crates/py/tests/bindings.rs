use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = wrap_pymodule!(hoops_py::hoops_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("h", m).unwrap();
        let src = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&src, Some(&globals), None) {
            e.print(py);
            panic!("python code failed:\n{code}");
        }
    });
}

#[test]
fn catalog_values() {
    with_module(
        r#"
q6 = h.Algebra.catalog("Q6")
assert q6.evaluate("(V * W)^^ -> V * W", {"V": "r", "W": "r"}, kind="gentzen") == "p"
assert q6.classify()["bounded"]
assert len(h.enumerate(4)) == 7
"#,
    );
}

#[test]
fn errors_become_value_errors() {
    with_module(
        r#"
for bad in (lambda: h.Algebra.catalog("Z9"), lambda: h.decide("x + = x"), lambda: h.check_proof("ax NOPE {}", "ALm")):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("no error")
"#,
    );
}
