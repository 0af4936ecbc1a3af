//! Seeded random generation of checked Hilbert proofs, built by combining
//! axiom instances with the derived rules.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::derived::{build_mono, build_refl, build_trans, MonoSide};
use super::hilbert::{HilbertProof, HilbertStep};
use super::logic::{LogicId, Schema};
use crate::syntax::Formula;

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..7) {
            0 => Formula::One,
            k => Formula::var(&format!("v{}", 1 + k % 3)),
        };
    }
    let a = random_formula(rng, depth - 1);
    let b = random_formula(rng, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::tensor(a, b)
    } else {
        Formula::limp(a, b)
    }
}

fn random_axiom(rng: &mut ChaCha8Rng, logic: LogicId) -> HilbertProof {
    let schema = *logic.schemas().choose(rng).unwrap();
    let subst = schema.metavars().into_iter().map(|m| (m, random_formula(rng, 2))).collect();
    HilbertProof { steps: vec![HilbertStep::Axiom { schema, subst }] }
}

/// Curry or uncurry the conclusion when it has the right shape.
fn reshape(p: &HilbertProof) -> Option<HilbertProof> {
    let f = p.conclusion().ok()?;
    let Formula::Limp(l, r) = &f else { return None };
    let (schema, pairs) = match (&**l, &**r) {
        (Formula::Tensor(a, b), c) => (Schema::Curry, [a.as_ref(), b.as_ref(), c]),
        (a, Formula::Limp(b, c)) => (Schema::Uncurry, [a, b.as_ref(), c.as_ref()]),
        _ => return None,
    };
    let subst = ["A", "B", "C"].iter().zip(pairs).map(|(k, v)| (k.to_string(), v.clone())).collect();
    let mut out = p.clone();
    let e = out.len() - 1;
    out.push(HilbertStep::MpAxiom { minor: e, schema, subst });
    Some(out)
}

fn is_implication(p: &HilbertProof) -> bool {
    matches!(p.conclusion(), Ok(Formula::Limp(..)))
}

/// A proof in `logic` of at most roughly `max_steps` lines, deterministic in `seed`.
pub fn random_proof(logic: LogicId, seed: u64, max_steps: usize) -> HilbertProof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<HilbertProof> = vec![random_axiom(&mut rng, logic)];
    let rounds = rng.gen_range(2..8);
    for _ in 0..rounds {
        let base = pool.choose(&mut rng).unwrap().clone();
        let next = match rng.gen_range(0..6) {
            0 => Some(random_axiom(&mut rng, logic)),
            1 => Some(build_refl(&random_formula(&mut rng, 2))),
            2 if is_implication(&base) => {
                let side = *[MonoSide::FirstArg, MonoSide::SecondArg, MonoSide::TensorLeft, MonoSide::TensorRight]
                    .choose(&mut rng)
                    .unwrap();
                build_mono(side, &base, &random_formula(&mut rng, 1)).ok()
            }
            3 if is_implication(&base) => {
                let Ok(Formula::Limp(_, b)) = base.conclusion() else { unreachable!() };
                build_trans(&base, &build_refl(&b)).ok()
            }
            4 => pool.iter().find_map(|q| build_trans(&base, q).ok()),
            _ => reshape(&base),
        };
        if let Some(p) = next.filter(|p| p.len() <= max_steps) {
            pool.push(p);
        }
    }
    pool.pop().unwrap()
}
