use super::{AlgTerm, Formula, Identity, SyntaxError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Arrow,
    Star,
    Plus,
    Caret,
    LParen,
    RParen,
    Eq,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '^' => Tok::Caret,
            '=' => Tok::Eq,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    return Err(SyntaxError::Parse { col, msg: "expected '->'".into() });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            '0' | '1' => {
                if chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) {
                    return Err(SyntaxError::Parse { col, msg: "only the constants 0 and 1 are allowed".into() });
                }
                if c == '0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            other => {
                return Err(SyntaxError::Parse { col, msg: format!("unexpected character '{other}'") });
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Tree builder shared by the formula and term grammars.
trait Ast: Sized {
    const BINOP: Tok;
    fn var(name: String) -> Self;
    fn one() -> Self;
    fn zero() -> Self;
    fn bin(a: Self, b: Self) -> Self;
    fn imp(a: Self, b: Self) -> Self;
}

impl Ast for Formula {
    const BINOP: Tok = Tok::Star;
    fn var(name: String) -> Self {
        Formula::Var(name)
    }
    fn one() -> Self {
        Formula::One
    }
    fn zero() -> Self {
        Formula::zero()
    }
    fn bin(a: Self, b: Self) -> Self {
        Formula::tensor(a, b)
    }
    fn imp(a: Self, b: Self) -> Self {
        Formula::limp(a, b)
    }
}

impl Ast for AlgTerm {
    const BINOP: Tok = Tok::Plus;
    fn var(name: String) -> Self {
        AlgTerm::Var(name)
    }
    fn one() -> Self {
        AlgTerm::One
    }
    fn zero() -> Self {
        AlgTerm::Zero
    }
    fn bin(a: Self, b: Self) -> Self {
        AlgTerm::plus(a, b)
    }
    fn imp(a: Self, b: Self) -> Self {
        AlgTerm::imp(a, b)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { col: self.col(), msg: msg.to_string() })
    }

    fn imp<A: Ast>(&mut self) -> Result<A, SyntaxError> {
        let lhs = self.bin::<A>()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp::<A>()?;
            Ok(A::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn bin<A: Ast>(&mut self) -> Result<A, SyntaxError> {
        let mut acc = self.postfix::<A>()?;
        while *self.peek() == A::BINOP {
            self.bump();
            let rhs = self.postfix::<A>()?;
            acc = A::bin(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix<A: Ast>(&mut self) -> Result<A, SyntaxError> {
        let mut acc = self.atom::<A>()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            acc = A::imp(acc, A::one());
        }
        Ok(acc)
    }

    fn atom<A: Ast>(&mut self) -> Result<A, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(A::var(name))
            }
            Tok::One => {
                self.bump();
                Ok(A::one())
            }
            Tok::Zero => {
                self.bump();
                Ok(A::zero())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.imp::<A>()?;
                if self.bump() != Tok::RParen {
                    self.pos -= 1;
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Star | Tok::Plus => self.err("wrong binary operator for this grammar"),
            _ => self.err("expected a variable, constant or '('"),
        }
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::Star | Tok::Plus => self.err("wrong binary operator for this grammar"),
            _ => self.err("trailing input"),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let f = p.imp::<Formula>()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<AlgTerm, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.imp::<AlgTerm>()?;
    p.expect_end()?;
    Ok(t)
}

/// Parses `lhs = rhs`, or a bare term `t` read as `t = 0`.
pub fn parse_identity(src: &str, bounded: bool) -> Result<Identity, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let lhs = p.imp::<AlgTerm>()?;
    let rhs = if *p.peek() == Tok::Eq {
        p.bump();
        p.imp::<AlgTerm>()?
    } else {
        AlgTerm::Zero
    };
    p.expect_end()?;
    Identity::new(lhs, rhs, bounded)
}
