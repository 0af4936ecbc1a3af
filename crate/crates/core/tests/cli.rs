use std::path::PathBuf;

use hoops::cli::{run, EXIT_DATA, EXIT_IO, EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE};

fn hoops(args: &[&str]) -> (i32, String) {
    run(std::iter::once("hoops").chain(args.iter().copied()))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn enumerate_counts() {
    assert_eq!(hoops(&["enumerate", "4", "--filter", "pocrim", "--count"]), (EXIT_OK, "7\n".into()));
    assert_eq!(hoops(&["enumerate", "4", "--filter", "hoop", "--count"]), (EXIT_OK, "5\n".into()));
    assert_eq!(hoops(&["enumerate", "4", "--filter", "!hoop", "--count"]), (EXIT_OK, "2\n".into()));
    assert_eq!(hoops(&["--jobs", "2", "enumerate", "5", "--count"]), (EXIT_OK, "26\n".into()));
    let (code, out) = hoops(&["enumerate", "5", "--budget", "3", "--count"]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert!(out.contains("incomplete"));
}

#[test]
fn algebra_commands() {
    let (code, out) = hoops(&["check-algebra", &golden("Q6.alg")]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out) = hoops(&["--porcelain", "classify", "P4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("hoop\t0") && out.contains("involutive\t0") && out.contains("bounded\t1"), "{out}");
    let (code, out) = hoops(&["catalog", "Q4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("names 0 u v 1"));
    assert_eq!(hoops(&["catalog", "Z9"]).0, EXIT_USAGE);
}

#[test]
fn broken_algebra_reports_failing_law() {
    let dir = std::env::temp_dir().join(format!("hoops-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("broken.alg");
    std::fs::write(&f, "pocrim 2\nadd\n0 1\n1 0\nimp\n0 1\n0 0\n").unwrap();
    let (code, out) = hoops(&["--porcelain", "check-algebra", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.contains("\tfail\t"), "{out}");
    std::fs::write(&f, "pocrim 2\nadd\n0 1\n").unwrap();
    assert_eq!(hoops(&["check-algebra", f.to_str().unwrap()]).0, EXIT_DATA);
    assert_eq!(hoops(&["check-algebra", "/nonexistent/x.alg"]).0, EXIT_IO);
}

#[test]
fn decide_and_prove() {
    let (code, out) = hoops(&["--porcelain", "decide", "--domain", "unit", "x + x = x"]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.starts_with("invalid\tx="), "{out}");
    let (code, _) = hoops(&["decide", "--domain", "nonneg", "x + (x -> y) = y + (y -> x)"]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = hoops(&["prove", "x + (x -> y) = y + (y -> x)"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("certificate checked"));
    let (code, out) = hoops(&["--porcelain", "search-cex", "--class", "pocrim", "--max-order", "4", "x^^ = x"]);
    assert_eq!(code, EXIT_REFUTED, "{out}");
    assert!(out.starts_with("refuted\t3\t"), "{out}");
    assert_eq!(hoops(&["search-cex", "--max-order", "3", "x + y = y + x"]).0, EXIT_UNKNOWN);
    assert_eq!(hoops(&["decide", "--domain", "unit", "x + = x"]).0, EXIT_DATA);
    assert_eq!(hoops(&["decide", "--domain", "reals", "x = x"]).0, EXIT_USAGE);
}

#[test]
fn proof_commands() {
    let refl = data("refl.hil");
    let (code, out) = hoops(&["check-proof", &refl]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("  7: v1 -> v1  [1, 6]"), "{out}");
    let (code, out) = hoops(&["--porcelain", "check-proof", "--logic", "ALi", &refl]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "ok\tALi\tv1 -> v1\n"));

    let (code, text) = hoops(&["translate-proof", &refl, "--inline", "--expand-eq2"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(!text.contains("eq2 at"));
    let dir = std::env::temp_dir().join(format!("hoops-cli-eq-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("refl.eqp");
    std::fs::write(&f, &text).unwrap();
    let (code, out) = hoops(&["--porcelain", "check-eq-proof", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let tampered = text.replacen("comm at", "assoc at", 1);
    std::fs::write(&f, tampered).unwrap();
    let (code, out) = hoops(&["check-eq-proof", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_REFUTED, "{out}");
    assert!(out.starts_with("rejected: "), "{out}");
}

#[test]
fn eval_reproduces_table_values() {
    let gentzen = ["eval", "--alg", "Q6", "--kind", "gentzen", "--assign", "V=r,W=r", "(V * W)^^ -> V * W"];
    assert_eq!(hoops(&gentzen), (EXIT_OK, "p\n".into()));
    let glivenko = ["eval", "--alg", "P4", "--kind", "glivenko", "--assign", "V=q", "V^^ -> V"];
    assert_eq!(hoops(&glivenko), (EXIT_OK, "p\n".into()));
    let standard = ["eval", "--alg", &golden("Q6.alg"), "--assign", "a=q,b=r", "a -> b"];
    assert_eq!(hoops(&standard), (EXIT_OK, "p\n".into()));
    assert_eq!(hoops(&["eval", "--alg", "Q6", "a"]).0, EXIT_DATA);
    assert_eq!(hoops(&["eval", "--alg", "Q6", "--kind", "church", "0"]).0, EXIT_USAGE);
}

#[test]
fn dns_check_on_paper_classes() {
    let (code, out) = hoops(&["--porcelain", "dns-check", "--kind", "glivenko", "--class", &data("class_c1.txt"), "--formulas", &data("dne.fml")]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.contains("dns2\tfail\t"), "{out}");
    let (code, out) = hoops(&["--porcelain", "dns-check", "--kind", "gentzen", "--class", &data("class_c1.txt"), "--count", "200"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out) = hoops(&["dns-check", "--kind", "gentzen", "--class", &data("class_c2.txt"), "--formulas", &data("dne.fml")]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.contains("DNS2 fail: (V * W)^^ -> V * W in Q6"), "{out}");
    assert!(out.contains("replay: eval --alg Q6 --kind gentzen"), "{out}");
}

#[test]
fn seeded_corpus_is_deterministic() {
    let args = |s: &'static str| ["--seed", s, "--porcelain", "dns-check", "--kind", "kolmogorov", "--class", "", "--count", "50"];
    let class = data("class_c1.txt");
    let run_with = |s: &'static str| {
        let mut a = args(s);
        a[7] = &class;
        hoops(&a)
    };
    assert_eq!(run_with("3"), run_with("3"));
    assert_eq!(run_with("3").0, EXIT_OK);
}

#[test]
fn usage_errors() {
    assert_eq!(hoops(&[]).0, EXIT_USAGE);
    assert_eq!(hoops(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(hoops(&["--help"]).0, EXIT_OK);
    assert_eq!(hoops(&["check-proof", &data("refl.hil"), "--logic", "XYZ"]).0, EXIT_USAGE);
}
