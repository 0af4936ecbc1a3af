use super::{AlgebraError, FiniteAlgebra};

/// Names accepted by [`catalog`] besides the families `L<n>` and `G<n>`.
pub const CATALOG_NAMES: [&str; 9] = ["B", "L3", "L4", "G3", "G4", "P4", "Q4", "Q6", "U"];

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Łukasiewicz chain `{0, 1/(n-1), ..., 1}` with truncated addition.
fn lukasiewicz(n: usize) -> FiniteAlgebra {
    let top = n - 1;
    let add: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y).min(top)).collect()).collect();
    let imp: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| y.saturating_sub(x)).collect()).collect();
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "0".to_string(),
            k if k == top => "1".to_string(),
            k => {
                let g = gcd(k, top);
                format!("{}/{}", k / g, top / g)
            }
        })
        .collect();
    let mut a = FiniteAlgebra::from_tables(&add, &imp, Some(top)).expect("well formed");
    a.set_names(Some(names));
    a
}

/// Gödel chain: addition is the maximum.
fn goedel(n: usize) -> FiniteAlgebra {
    let add: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect();
    let imp: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| if y > x { y } else { 0 }).collect()).collect();
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "0".to_string(),
            k if k == n - 1 => "1".to_string(),
            k => format!("c{k}"),
        })
        .collect();
    let mut a = FiniteAlgebra::from_tables(&add, &imp, Some(n - 1)).expect("well formed");
    a.set_names(Some(names));
    a
}

fn table(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn p4() -> FiniteAlgebra {
    let add = table(&[&[0, 1, 2, 3], &[1, 3, 3, 3], &[2, 3, 3, 3], &[3, 3, 3, 3]]);
    let imp = table(&[&[0, 1, 2, 3], &[0, 0, 1, 1], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
    FiniteAlgebra::from_tables(&add, &imp, Some(3)).unwrap().with_names(&["0", "p", "q", "1"])
}

fn q4() -> FiniteAlgebra {
    let add = table(&[&[0, 1, 2, 3], &[1, 1, 3, 3], &[2, 3, 3, 3], &[3, 3, 3, 3]]);
    let imp = table(&[&[0, 1, 2, 3], &[0, 0, 2, 2], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
    FiniteAlgebra::from_tables(&add, &imp, Some(3)).unwrap().with_names(&["0", "u", "v", "1"])
}

fn u5() -> FiniteAlgebra {
    let add = table(&[
        &[0, 1, 2, 3, 4],
        &[1, 2, 2, 4, 4],
        &[2, 2, 2, 4, 4],
        &[3, 4, 4, 4, 4],
        &[4, 4, 4, 4, 4],
    ]);
    let imp = table(&[
        &[0, 1, 2, 3, 4],
        &[0, 0, 1, 3, 3],
        &[0, 0, 0, 3, 3],
        &[0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 0],
    ]);
    FiniteAlgebra::from_tables(&add, &imp, Some(4)).unwrap().with_names(&["0", "a", "b", "c", "1"])
}

fn q6() -> FiniteAlgebra {
    let add = table(&[
        &[0, 1, 2, 3, 4, 5],
        &[1, 1, 3, 3, 4, 5],
        &[2, 3, 3, 3, 5, 5],
        &[3, 3, 3, 3, 5, 5],
        &[4, 4, 5, 5, 5, 5],
        &[5, 5, 5, 5, 5, 5],
    ]);
    let imp = table(&[
        &[0, 1, 2, 3, 4, 5],
        &[0, 0, 2, 2, 4, 5],
        &[0, 0, 0, 1, 4, 4],
        &[0, 0, 0, 0, 4, 4],
        &[0, 0, 0, 0, 0, 2],
        &[0, 0, 0, 0, 0, 0],
    ]);
    FiniteAlgebra::from_tables(&add, &imp, Some(5)).unwrap().with_names(&["0", "p", "q", "r", "s", "1"])
}

/// Named algebras: `B`, `L<n>`, `G<n>` (n >= 2), `P4`, `Q4`, `Q6` and `U`.
pub fn catalog(name: &str) -> Result<FiniteAlgebra, AlgebraError> {
    let family = |prefix: char| -> Option<usize> {
        name.strip_prefix(prefix)
            .and_then(|r| r.parse::<usize>().ok())
            .filter(|&k| (2..=64).contains(&k))
    };
    match name {
        "B" => Ok(lukasiewicz(2)),
        "P4" => Ok(p4()),
        "Q4" => Ok(q4()),
        "Q6" => Ok(q6()),
        "U" => Ok(u5()),
        _ => {
            if let Some(k) = family('L') {
                Ok(lukasiewicz(k))
            } else if let Some(k) = family('G') {
                Ok(goedel(k))
            } else {
                Err(AlgebraError::UnknownCatalog(name.to_string()))
            }
        }
    }
}
