use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Affine form `c_0 x_0 + ... + c_{k-1} x_{k-1} + constant` over a fixed
/// number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinExpr {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl LinExpr {
    pub fn constant(nvars: usize, c: Q) -> LinExpr {
        LinExpr { coeffs: vec![Q::zero(); nvars], constant: c }
    }

    pub fn var(nvars: usize, i: usize) -> LinExpr {
        let mut e = LinExpr::constant(nvars, Q::zero());
        e.coeffs[i] = Q::one();
        e
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        LinExpr {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> LinExpr {
        LinExpr { coeffs: self.coeffs.iter().map(|c| c * k).collect(), constant: &self.constant * k }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        LinDisplay { e: self, names }
    }
}

struct LinDisplay<'a> {
    e: &'a LinExpr,
    names: &'a [String],
}

impl fmt::Display for LinDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.names.get(i).map(String::as_str).unwrap_or("?");
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{a}{name}")?;
            }
            first = false;
        }
        let k = &self.e.constant;
        if first {
            write!(f, "{k}")
        } else if k.is_zero() {
            Ok(())
        } else if k.is_negative() {
            write!(f, " - {}", k.abs())
        } else {
            write!(f, " + {k}")
        }
    }
}

/// `expr > 0` when strict, else `expr >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub expr: LinExpr,
    pub strict: bool,
}

impl Constraint {
    pub fn geq0(expr: LinExpr) -> Constraint {
        Constraint { expr, strict: false }
    }

    pub fn gt0(expr: LinExpr) -> Constraint {
        Constraint { expr, strict: true }
    }

    pub fn holds_at(&self, point: &[Q]) -> bool {
        let v = self.expr.eval(point);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// Truth value when the expression has no variables.
    pub fn constant_truth(&self) -> Option<bool> {
        if !self.expr.is_constant() {
            return None;
        }
        let c = &self.expr.constant;
        Some(if self.strict { c.is_positive() } else { !c.is_negative() })
    }

    /// Scales so the first nonzero coefficient (or the constant) has absolute
    /// value one. Positive scaling preserves the solution set.
    pub fn normalized(&self) -> Constraint {
        let lead = self
            .expr
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(|| self.expr.constant.clone());
        if lead.is_zero() {
            return self.clone();
        }
        Constraint { expr: self.expr.scale(&lead.abs().recip()), strict: self.strict }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ConsDisplay { c: self, names }
    }
}

struct ConsDisplay<'a> {
    c: &'a Constraint,
    names: &'a [String],
}

impl fmt::Display for ConsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.c.strict { ">" } else { ">=" };
        write!(f, "{} {op} 0", self.c.expr.display(self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = LinExpr::var(2, 0);
        let y = LinExpr::var(2, 1);
        let e = y.sub(&x).add(&LinExpr::constant(2, q(1, 2)));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(e.display(&names).to_string(), "-x + y + 1/2");
        assert_eq!(e.eval(&[qi(1), qi(3)]), q(5, 2));
    }

    #[test]
    fn normalization_keeps_direction() {
        let c = Constraint::gt0(LinExpr::var(1, 0).scale(&qi(-4)).add(&LinExpr::constant(1, qi(2))));
        let n = c.normalized();
        assert_eq!(n.expr.coeffs[0], qi(-1));
        assert_eq!(n.expr.constant, q(1, 2));
        assert!(n.strict);
    }
}
