//! Expressions in `z` for sources and boundary data.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number ['i'] | 'i' | 'pi' | 'z' | 't' | '|' expr '|' | '(' expr ')'
//!        | ('conj' | 're' | 'im' | 'abs' | 'arg' | 'exp' | 'log' | 'sin' | 'cos' | 'sqrt') '(' expr ')'
//! ```
//!
//! `t` is `arg z`; on the circle it is the boundary parameter.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Conj,
    Re,
    Im,
    Abs,
    Arg,
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(C64),
    Z,
    T,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression, cheap to clone and shareable across threads.
#[derive(Debug, Clone)]
pub struct Expr {
    root: Arc<Node>,
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        let mut p = Parser {
            chars: src.char_indices().collect(),
            i: 0,
            len: src.len(),
        };
        let root = p.expr()?;
        p.skip_ws();
        if let Some(&(pos, c)) = p.chars.get(p.i) {
            return Err(ParseError {
                pos,
                message: format!("unexpected `{c}`"),
            });
        }
        Ok(Expr {
            root: Arc::new(root),
        })
    }

    pub fn eval(&self, z: C64) -> C64 {
        eval(&self.root, z, z.arg())
    }

    /// Value at `e^{it}` with the exact parameter `t`.
    pub fn eval_boundary(&self, t: f64) -> C64 {
        eval(&self.root, C64::from_polar(1.0, t), t)
    }

    /// Whether the expression mentions `z` or `t` at all.
    pub fn is_constant(&self) -> bool {
        fn walk(n: &Node) -> bool {
            match n {
                Node::Const(_) => true,
                Node::Z | Node::T => false,
                Node::Neg(a) | Node::Call(_, a) => walk(a),
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => walk(a) && walk(b),
            }
        }
        walk(&self.root)
    }
}

fn eval(n: &Node, z: C64, t: f64) -> C64 {
    match n {
        Node::Const(c) => *c,
        Node::Z => z,
        Node::T => C64::new(t, 0.0),
        Node::Neg(a) => -eval(a, z, t),
        Node::Add(a, b) => eval(a, z, t) + eval(b, z, t),
        Node::Sub(a, b) => eval(a, z, t) - eval(b, z, t),
        Node::Mul(a, b) => eval(a, z, t) * eval(b, z, t),
        Node::Div(a, b) => eval(a, z, t) / eval(b, z, t),
        Node::Pow(a, b) => {
            let (base, e) = (eval(a, z, t), eval(b, z, t));
            if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= 64.0 {
                base.powi(e.re as i32)
            } else {
                base.powc(e)
            }
        }
        Node::Call(f, a) => {
            let v = eval(a, z, t);
            match f {
                Func::Conj => v.conj(),
                Func::Re => C64::new(v.re, 0.0),
                Func::Im => C64::new(v.im, 0.0),
                Func::Abs => C64::new(v.norm(), 0.0),
                Func::Arg => C64::new(v.arg(), 0.0),
                Func::Exp => v.exp(),
                Func::Log => v.ln(),
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Sqrt => v.sqrt(),
            }
        }
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    i: usize,
    len: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |c| c.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Node::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            None => self.err("unexpected end of expression"),
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('|') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect('|')?;
                Ok(Node::Call(Func::Abs, Box::new(e)))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.word(),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.i;
        let mut end = self.i;
        while let Some(&(_, c)) = self.chars.get(end) {
            let exp_sign = (c == '-' || c == '+') && end > start && matches!(self.chars[end - 1].1, 'e' | 'E');
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                end += 1;
            } else {
                break;
            }
        }
        let text: String = self.chars[start..end].iter().map(|c| c.1).collect();
        let v: f64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err(format!("bad number `{text}`")),
        };
        self.i = end;
        if self.chars.get(self.i).is_some_and(|c| c.1 == 'i')
            && !self.chars.get(self.i + 1).is_some_and(|c| c.1.is_ascii_alphanumeric())
        {
            self.i += 1;
            return Ok(Node::Const(C64::new(0.0, v)));
        }
        Ok(Node::Const(C64::new(v, 0.0)))
    }

    fn word(&mut self) -> Result<Node, ParseError> {
        let start_pos = self.pos();
        let mut word = String::new();
        while let Some(&(_, c)) = self.chars.get(self.i) {
            if c.is_ascii_alphanumeric() || c == '_' {
                word.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        let func = match word.to_ascii_lowercase().as_str() {
            "z" => return Ok(Node::Z),
            "t" => return Ok(Node::T),
            "i" => return Ok(Node::Const(C64::new(0.0, 1.0))),
            "pi" => return Ok(Node::Const(C64::new(PI, 0.0))),
            "conj" => Func::Conj,
            "re" => Func::Re,
            "im" => Func::Im,
            "abs" => Func::Abs,
            "arg" => Func::Arg,
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => {
                return Err(ParseError {
                    pos: start_pos,
                    message: format!("unknown name `{word}`"),
                })
            }
        };
        self.expect('(')?;
        let arg = self.expr()?;
        self.expect(')')?;
        Ok(Node::Call(func, Box::new(arg)))
    }
}
