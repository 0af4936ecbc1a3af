//! Concrete ALm proofs of the basic derived rules: reflexivity and
//! transitivity of `->`, monotonicity of `->` and `*`, and associativity of `*`.

use super::hilbert::{HilbertProof, HilbertStep, ProofError, Subst};
use super::logic::Schema;
use crate::syntax::Formula;

fn subst(pairs: &[(&str, &Formula)]) -> Subst {
    pairs.iter().map(|(k, f)| (k.to_string(), (*f).clone())).collect()
}

fn ax(schema: Schema, pairs: &[(&str, &Formula)]) -> HilbertStep {
    HilbertStep::Axiom { schema, subst: subst(pairs) }
}

fn mp_ax(minor: usize, schema: Schema, pairs: &[(&str, &Formula)]) -> HilbertStep {
    HilbertStep::MpAxiom { minor, schema, subst: subst(pairs) }
}

fn axiom_proof(schema: Schema, pairs: &[(&str, &Formula)]) -> HilbertProof {
    HilbertProof { steps: vec![ax(schema, pairs)] }
}

fn limp(a: &Formula, b: &Formula) -> Formula {
    Formula::limp(a.clone(), b.clone())
}

fn tensor(a: &Formula, b: &Formula) -> Formula {
    Formula::tensor(a.clone(), b.clone())
}

fn split_limp(f: &Formula) -> Result<(Formula, Formula), ProofError> {
    match f {
        Formula::Limp(a, b) => Ok(((**a).clone(), (**b).clone())),
        _ => Err(ProofError::Shape(format!("expected an implication, found {f}"))),
    }
}

/// `A -> A` in seven lines, with `D = v1 * v2 -> v1`.
pub fn build_refl(a: &Formula) -> HilbertProof {
    let (v1, v2) = (Formula::var("v1"), Formula::var("v2"));
    let d = limp(&tensor(&v1, &v2), &v1);
    let steps = vec![
        ax(Schema::Wk, &[("A", &v1), ("B", &v2)]),
        ax(Schema::Wk, &[("A", a), ("B", &d)]),
        ax(Schema::Comm, &[("A", &d), ("B", a)]),
        mp_ax(2, Schema::Comp, &[("A", &tensor(&d, a)), ("B", &tensor(a, &d)), ("C", a)]),
        HilbertStep::Mp { minor: 1, major: 3 },
        mp_ax(4, Schema::Curry, &[("A", &d), ("B", a), ("C", a)]),
        HilbertStep::Mp { minor: 0, major: 5 },
    ];
    HilbertProof { steps }
}

/// From proofs of `A -> B` and `B -> C`, a proof of `A -> C` by (Comp) and
/// two applications of modus ponens.
pub fn build_trans(p: &HilbertProof, q: &HilbertProof) -> Result<HilbertProof, ProofError> {
    let (a, b) = split_limp(&p.conclusion()?)?;
    let (b2, c) = split_limp(&q.conclusion()?)?;
    if b != b2 {
        return Err(ProofError::Shape(format!("cannot chain through {b} and {b2}")));
    }
    let mut out = HilbertProof::default();
    let pe = out.include(p);
    let qe = out.include(q);
    let comp = out.push(mp_ax(pe, Schema::Comp, &[("A", &a), ("B", &b), ("C", &c)]));
    out.push(HilbertStep::Mp { minor: qe, major: comp });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoSide {
    /// `A -> B` gives `(B -> C) -> (A -> C)`.
    FirstArg,
    /// `A -> B` gives `(C -> A) -> (C -> B)`.
    SecondArg,
    /// `A -> B` gives `A * C -> B * C`.
    TensorLeft,
    /// `A -> B` gives `C * A -> C * B`.
    TensorRight,
}

/// From a proof of `X -> Y -> Z`, a proof of `Y -> X -> Z`.
fn exchange(p: &HilbertProof) -> Result<HilbertProof, ProofError> {
    let (x, yz) = split_limp(&p.conclusion()?)?;
    let (y, z) = split_limp(&yz)?;
    let mut uncurried = p.clone();
    let e = uncurried.len() - 1;
    uncurried.push(mp_ax(e, Schema::Uncurry, &[("A", &x), ("B", &y), ("C", &z)]));
    let comm = axiom_proof(Schema::Comm, &[("A", &y), ("B", &x)]);
    let mut out = build_trans(&comm, &uncurried)?;
    let e = out.len() - 1;
    out.push(mp_ax(e, Schema::Curry, &[("A", &y), ("B", &x), ("C", &z)]));
    Ok(out)
}

/// Monotonicity of `->` (antitone in the first argument) and of `*`.
pub fn build_mono(side: MonoSide, p: &HilbertProof, c: &Formula) -> Result<HilbertProof, ProofError> {
    let (a, b) = split_limp(&p.conclusion()?)?;
    match side {
        MonoSide::FirstArg => {
            let mut out = p.clone();
            let e = out.len() - 1;
            out.push(mp_ax(e, Schema::Comp, &[("A", &a), ("B", &b), ("C", c)]));
            Ok(out)
        }
        MonoSide::SecondArg => {
            let comp = axiom_proof(Schema::Comp, &[("A", c), ("B", &a), ("C", &b)]);
            let mut out = exchange(&comp)?;
            let ex = out.len() - 1;
            let pe = out.include(p);
            out.push(HilbertStep::Mp { minor: pe, major: ex });
            Ok(out)
        }
        MonoSide::TensorLeft => {
            let bc = tensor(&b, c);
            let mut curried = build_refl(&bc);
            curried.push(mp_ax(6, Schema::Curry, &[("A", &b), ("B", c), ("C", &bc)]));
            let mut out = build_trans(p, &curried)?;
            let e = out.len() - 1;
            out.push(mp_ax(e, Schema::Uncurry, &[("A", &a), ("B", c), ("C", &bc)]));
            Ok(out)
        }
        MonoSide::TensorRight => {
            let left = build_mono(MonoSide::TensorLeft, p, c)?;
            let c1 = axiom_proof(Schema::Comm, &[("A", c), ("B", &a)]);
            let c2 = axiom_proof(Schema::Comm, &[("A", &b), ("B", c)]);
            build_trans(&build_trans(&c1, &left)?, &c2)
        }
    }
}

/// `(A * B) * C -> A * (B * C)`.
pub fn build_assoc(a: &Formula, b: &Formula, c: &Formula) -> HilbertProof {
    let bc = tensor(b, c);
    let d = tensor(a, &bc);
    let mut p = build_refl(&d);
    p.push(mp_ax(6, Schema::Curry, &[("A", a), ("B", &bc), ("C", &d)]));
    let curry = axiom_proof(Schema::Curry, &[("A", b), ("B", c), ("C", &d)]);
    let mut out = build_trans(&p, &curry).expect("shapes agree by construction");
    let cd = limp(c, &d);
    let e = out.len() - 1;
    let e = out.push(mp_ax(e, Schema::Uncurry, &[("A", a), ("B", b), ("C", &cd)]));
    out.push(mp_ax(e, Schema::Uncurry, &[("A", &tensor(a, b)), ("B", c), ("C", &d)]));
    out
}

/// `A * (B * C) -> (A * B) * C`.
pub fn build_assoc_rev(a: &Formula, b: &Formula, c: &Formula) -> HilbertProof {
    let ab = tensor(a, b);
    let d = tensor(&ab, c);
    let cd = limp(c, &d);
    let mut p = build_refl(&d);
    let e = p.push(mp_ax(6, Schema::Curry, &[("A", &ab), ("B", c), ("C", &d)]));
    p.push(mp_ax(e, Schema::Curry, &[("A", a), ("B", b), ("C", &cd)]));
    let uncurry = axiom_proof(Schema::Uncurry, &[("A", b), ("B", c), ("C", &d)]);
    let mut out = build_trans(&p, &uncurry).expect("shapes agree by construction");
    let e = out.len() - 1;
    out.push(mp_ax(e, Schema::Uncurry, &[("A", a), ("B", &tensor(b, c)), ("C", &d)]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check_hilbert, LogicId};
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn refl_is_seven_lines() {
        let p = build_refl(&f("v1 * v2"));
        assert_eq!(p.len(), 7);
        assert_eq!(check_hilbert(&p, LogicId::ALm).unwrap(), f("v1 * v2 -> v1 * v2"));
    }

    #[test]
    fn mono_all_sides() {
        let p = axiom_proof(Schema::Wk, &[("A", &f("x")), ("B", &f("y"))]);
        let c = f("z");
        let want = [
            (MonoSide::FirstArg, "(x -> z) -> x * y -> z"),
            (MonoSide::SecondArg, "(z -> x * y) -> z -> x"),
            (MonoSide::TensorLeft, "(x * y) * z -> x * z"),
            (MonoSide::TensorRight, "z * (x * y) -> z * x"),
        ];
        for (side, w) in want {
            let q = build_mono(side, &p, &c).unwrap();
            assert_eq!(check_hilbert(&q, LogicId::ALm).unwrap(), f(w), "{side:?}");
        }
    }

    #[test]
    fn assoc_both_ways() {
        let (a, b, c) = (f("x"), f("y ^"), f("z"));
        assert_eq!(check_hilbert(&build_assoc(&a, &b, &c), LogicId::ALm).unwrap(), f("(x * y^) * z -> x * (y^ * z)"));
        assert_eq!(check_hilbert(&build_assoc_rev(&a, &b, &c), LogicId::ALm).unwrap(), f("x * (y^ * z) -> (x * y^) * z"));
    }
}
