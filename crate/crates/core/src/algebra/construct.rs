use std::collections::BTreeSet;

use super::{classify, AlgebraError, FiniteAlgebra, Flag};

/// `C ⌢ D`: `C` sits below `D` with the two zeros identified. Elements of
/// `C` keep their indices; nonzero elements of `D` follow.
pub fn ordinal_sum(c: &FiniteAlgebra, d: &FiniteAlgebra) -> FiniteAlgebra {
    let (nc, nd) = (c.size(), d.size());
    let n = nc + nd - 1;
    let from_d = |j: usize| if j == 0 { 0 } else { nc + j - 1 };
    let mut add = vec![0u8; n * n];
    let mut imp = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            let (s, i) = match (x < nc, y < nc) {
                (true, true) => (c.add(x, y), c.imp(x, y)),
                (true, false) => (y, y),
                (false, true) => (x, 0),
                (false, false) => {
                    let (dx, dy) = (x - nc + 1, y - nc + 1);
                    (from_d(d.add(dx, dy)), from_d(d.imp(dx, dy)))
                }
            };
            add[x * n + y] = s as u8;
            imp[x * n + y] = i as u8;
        }
    }
    let one = if nd > 1 { d.one().map(from_d) } else { c.one() };
    let mut out = FiniteAlgebra::from_flat(n, add, imp, one);
    if let (Some(cn), Some(dn)) = (c.names(), d.names()) {
        let names: Vec<String> = cn.iter().chain(dn.iter().skip(1)).cloned().collect();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() == n {
            out.set_names(Some(names));
        }
    }
    out
}

/// Componentwise product; `(a, b)` has index `a * |B| + b`.
pub fn direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    if n > 255 {
        return Err(AlgebraError::TooLarge(n));
    }
    let pair = |i: usize| (i / nb, i % nb);
    let mut add = vec![0u8; n * n];
    let mut imp = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            let ((xa, xb), (ya, yb)) = (pair(x), pair(y));
            add[x * n + y] = (a.add(xa, ya) * nb + b.add(xb, yb)) as u8;
            imp[x * n + y] = (a.imp(xa, ya) * nb + b.imp(xb, yb)) as u8;
        }
    }
    let one = match (a.one(), b.one()) {
        (Some(oa), Some(ob)) => Some(oa * nb + ob),
        _ => None,
    };
    let mut out = FiniteAlgebra::from_flat(n, add, imp, one);
    if let (Some(an), Some(bn)) = (a.names(), b.names()) {
        out.set_names(Some((0..n).map(|i| format!("({},{})", an[i / nb], bn[i % nb])).collect()));
    }
    Ok(out)
}

/// Membership vector of the smallest ideal containing `gens`.
pub fn ideal_generated(a: &FiniteAlgebra, gens: &[usize]) -> Vec<bool> {
    let n = a.size();
    let mut member = vec![false; n];
    member[0] = true;
    for &g in gens {
        member[g] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            if !member[x] {
                continue;
            }
            for y in 0..n {
                if member[y] && !member[a.add(x, y)] {
                    member[a.add(x, y)] = true;
                    changed = true;
                }
            }
            for z in 0..n {
                if !member[z] && a.geq(x, z) {
                    member[z] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return member;
        }
    }
}

/// Contains `0`, is closed under `+`, and is downward closed.
pub fn is_ideal(a: &FiniteAlgebra, set: &[usize]) -> bool {
    let n = a.size();
    let mut member = vec![false; n];
    for &x in set {
        if x >= n {
            return false;
        }
        member[x] = true;
    }
    member[0]
        && (0..n).all(|x| {
            !member[x] || (0..n).all(|y| (!member[y] || member[a.add(x, y)]) && (!a.geq(x, y) || member[y]))
        })
}

/// Every ideal, as a sorted element list, in order of discovery from `{0}`.
pub fn ideals(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let to_list = |m: &[bool]| (0..n).filter(|&i| m[i]).collect::<Vec<_>>();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = vec![to_list(&ideal_generated(a, &[]))];
    while let Some(ideal) = queue.pop() {
        if !seen.insert(ideal.clone()) {
            continue;
        }
        for x in 0..n {
            if !ideal.contains(&x) {
                let mut gens = ideal.clone();
                gens.push(x);
                queue.push(to_list(&ideal_generated(a, &gens)));
            }
        }
        out.push(ideal);
    }
    out.sort_by_key(|i| (i.len(), i.clone()));
    out
}

fn collapse(a: &FiniteAlgebra, class_of: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>), AlgebraError> {
    let n = a.size();
    let reps: Vec<usize> = (0..n).filter(|&x| class_of[x] == x).collect();
    let index = |x: usize| reps.iter().position(|&r| r == class_of[x]).expect("every class has a representative");
    let m = reps.len();
    let mut add = vec![0u8; m * m];
    let mut imp = vec![0u8; m * m];
    let mut filled = vec![false; m * m];
    for x in 0..n {
        for y in 0..n {
            let cell = index(x) * m + index(y);
            let (s, i) = (index(a.add(x, y)) as u8, index(a.imp(x, y)) as u8);
            if filled[cell] && (add[cell] != s || imp[cell] != i) {
                return Err(AlgebraError::NotHomomorphism(format!(
                    "classes of {} and {} do not determine the result",
                    a.name(x),
                    a.name(y)
                )));
            }
            add[cell] = s;
            imp[cell] = i;
            filled[cell] = true;
        }
    }
    let projection: Vec<usize> = (0..n).map(index).collect();
    let mut q = FiniteAlgebra::from_flat(m, add, imp, a.one().map(|o| projection[o]));
    if let Some(ns) = a.names() {
        q.set_names(Some(reps.iter().map(|&r| ns[r].clone()).collect()));
    }
    Ok((q, projection))
}

/// Quotient of a hoop by an ideal, with `x ~ y` iff `(x -> y) + (y -> x)` lies
/// in the ideal. Returns the quotient and the projection map.
pub fn quotient(h: &FiniteAlgebra, ideal: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>), AlgebraError> {
    let c = classify(h);
    if !c.get(Flag::Hoop) {
        let w = c.witness(Flag::Hoop).expect("false flags carry witnesses");
        return Err(AlgebraError::NotHoop(format!("{} fails at {:?}", w.law, w.elements)));
    }
    if !is_ideal(h, ideal) {
        return Err(AlgebraError::NotIdeal(format!("{ideal:?}")));
    }
    let n = h.size();
    let related = |x: usize, y: usize| ideal.contains(&h.add(h.imp(x, y), h.imp(y, x)));
    let class_of: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| related(x, y)).unwrap_or(x)).collect();
    collapse(h, &class_of)
}

/// Image of a homomorphism, computed as the quotient by its kernel. Works for
/// algebras that are not hoops.
pub fn quotient_by_kernel(a: &FiniteAlgebra, h: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>), AlgebraError> {
    if h.len() != a.size() {
        return Err(AlgebraError::Shape("map must cover the carrier".into()));
    }
    let n = a.size();
    let class_of: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| h[y] == h[x]).unwrap_or(x)).collect();
    collapse(a, &class_of)
}
