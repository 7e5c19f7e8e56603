//! Arithmetic in one parameter `n`: `+ - * /`, integer literals, parentheses.

use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("cannot parse expression {0:?} at byte {1}")]
    Syntax(String, usize),
    #[error("division by zero in {0:?}")]
    DivisionByZero(String),
    #[error("{0:?} uses n but no value was given")]
    Unbound(String),
    #[error("{0:?} is not a non-negative integer at this n")]
    NotNatural(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(BigInt),
    N,
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
}

/// A parsed expression, kept with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    src: String,
    root: Node,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Option<Node> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            lhs = Node::Bin(op as char, Box::new(lhs), Box::new(self.term()?));
        }
        Some(lhs)
    }

    fn term(&mut self) -> Option<Node> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            lhs = Node::Bin(op as char, Box::new(lhs), Box::new(self.unary()?));
        }
        Some(lhs)
    }

    fn unary(&mut self) -> Option<Node> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Some(Node::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Option<Node> {
        match self.peek()? {
            b'n' => {
                self.pos += 1;
                Some(Node::N)
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                (self.peek() == Some(b')')).then(|| self.pos += 1)?;
                Some(e)
            }
            c if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
                Some(Node::Num(text.parse().ok()?))
            }
            _ => None,
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { s: src.as_bytes(), pos: 0 };
        let root = p.expr();
        match root {
            Some(root) if p.peek().is_none() => Ok(Expr { src: src.to_string(), root }),
            _ => Err(ExprError::Syntax(src.to_string(), p.pos)),
        }
    }

    pub fn uses_n(&self) -> bool {
        fn go(n: &Node) -> bool {
            match n {
                Node::N => true,
                Node::Num(_) => false,
                Node::Neg(a) => go(a),
                Node::Bin(_, a, b) => go(a) || go(b),
            }
        }
        go(&self.root)
    }

    pub fn eval(&self, n: Option<i64>) -> Result<Q, ExprError> {
        self.go(&self.root, n)
    }

    fn go(&self, node: &Node, n: Option<i64>) -> Result<Q, ExprError> {
        Ok(match node {
            Node::Num(v) => Q::from_integer(v.clone()),
            Node::N => Q::from_integer(n.ok_or_else(|| ExprError::Unbound(self.src.clone()))?.into()),
            Node::Neg(a) => -self.go(a, n)?,
            Node::Bin(op, a, b) => {
                let (x, y) = (self.go(a, n)?, self.go(b, n)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ if y.is_zero() => return Err(ExprError::DivisionByZero(self.src.clone())),
                    _ => x / y,
                }
            }
        })
    }

    /// Value as a non-negative machine integer.
    pub fn eval_u64(&self, n: Option<i64>) -> Result<u64, ExprError> {
        let v = self.eval(n)?;
        v.is_integer()
            .then(|| v.to_integer().to_u64())
            .flatten()
            .ok_or_else(|| ExprError::NotNatural(self.src.clone()))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn precedence_and_parameter() {
        let e = Expr::parse("2/((2*n+1)*(4*n+1))").unwrap();
        assert_eq!(e.eval(Some(1)).unwrap(), q(2, 15));
        assert_eq!(Expr::parse("8*n+4").unwrap().eval(Some(3)).unwrap(), qi(28));
        assert_eq!(Expr::parse("1-2-3").unwrap().eval(None).unwrap(), qi(-4));
        assert_eq!(Expr::parse("-n*2").unwrap().eval(Some(2)).unwrap(), qi(-4));
    }

    #[test]
    fn errors() {
        assert!(matches!(Expr::parse("2*"), Err(ExprError::Syntax(..))));
        assert!(matches!(Expr::parse("(1"), Err(ExprError::Syntax(..))));
        assert!(matches!(Expr::parse("n").unwrap().eval(None), Err(ExprError::Unbound(_))));
        assert!(matches!(Expr::parse("1/(n-1)").unwrap().eval(Some(1)), Err(ExprError::DivisionByZero(_))));
        assert!(matches!(Expr::parse("n/2").unwrap().eval_u64(Some(1)), Err(ExprError::NotNatural(_))));
    }
}
