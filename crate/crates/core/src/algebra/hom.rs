use super::{AlgebraError, FiniteAlgebra};

/// Checks that `h` preserves `+`, `->`, `0`, and `1` when `preserve_one`.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[usize], preserve_one: bool) -> bool {
    let n = a.size();
    h.len() == n
        && h.iter().all(|&v| v < b.size())
        && h[0] == 0
        && (!preserve_one || matches!((a.one(), b.one()), (Some(oa), Some(ob)) if h[oa] == ob))
        && (0..n).all(|x| {
            (0..n).all(|y| h[a.add(x, y)] == b.add(h[x], h[y]) && h[a.imp(x, y)] == b.imp(h[x], h[y]))
        })
}

/// Every homomorphism from `a` to `b`, in lexicographic order of the maps.
pub fn homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra, preserve_one: bool) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let fixed_one = if preserve_one {
        match (a.one(), b.one()) {
            (Some(oa), Some(ob)) => Some((oa, ob)),
            _ => return Err(AlgebraError::NoOne),
        }
    } else {
        None
    };
    let mut out = Vec::new();
    let mut h: Vec<Option<usize>> = vec![None; a.size()];
    extend(a, b, fixed_one, &mut h, 0, &mut out);
    Ok(out)
}

fn partial_ok(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[Option<usize>], x: usize) -> bool {
    let hx = h[x].expect("assigned");
    (0..a.size()).all(|y| {
        let Some(hy) = h[y] else { return true };
        let pairs = [
            (a.add(x, y), b.add(hx, hy)),
            (a.imp(x, y), b.imp(hx, hy)),
            (a.imp(y, x), b.imp(hy, hx)),
        ];
        pairs.iter().all(|&(src, dst)| h[src].is_none_or(|v| v == dst))
    })
}

fn extend(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    fixed_one: Option<(usize, usize)>,
    h: &mut Vec<Option<usize>>,
    x: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if x == a.size() {
        let map: Vec<usize> = h.iter().map(|v| v.expect("complete")).collect();
        if is_homomorphism(a, b, &map, fixed_one.is_some()) {
            out.push(map);
        }
        return;
    }
    let choices: Vec<usize> = match (x, fixed_one) {
        (0, _) => vec![0],
        (_, Some((oa, ob))) if x == oa => vec![ob],
        _ => (0..b.size()).collect(),
    };
    for v in choices {
        h[x] = Some(v);
        if partial_ok(a, b, h, x) {
            extend(a, b, fixed_one, h, x + 1, out);
        }
    }
    h[x] = None;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleNegation {
    /// `map[x]` is `x^^`.
    pub map: Vec<usize>,
    /// Sorted image of the map.
    pub image: Vec<usize>,
    pub image_closed_under_add: bool,
    /// Two image elements whose sum leaves the image.
    pub witness: Option<(usize, usize)>,
}

pub fn double_negation(a: &FiniteAlgebra) -> Result<DoubleNegation, AlgebraError> {
    let map: Vec<usize> = (0..a.size()).map(|x| a.delta(x)).collect::<Result<_, _>>()?;
    let mut image = map.clone();
    image.sort_unstable();
    image.dedup();
    let witness = image
        .iter()
        .flat_map(|&x| image.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| !image.contains(&a.add(x, y)));
    Ok(DoubleNegation { map, image, image_closed_under_add: witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn boolean_into_l3() {
        let b = catalog("B").unwrap();
        let l3 = catalog("L3").unwrap();
        assert_eq!(homomorphisms(&b, &l3, true).unwrap(), vec![vec![0, 2]]);
        assert_eq!(homomorphisms(&b, &l3, false).unwrap(), vec![vec![0, 0], vec![0, 2]]);
    }

    #[test]
    fn p4_double_negation() {
        let d = double_negation(&catalog("P4").unwrap()).unwrap();
        assert_eq!(d.map, vec![0, 1, 1, 3]);
        assert!(d.image_closed_under_add);
    }
}
