//! Recursive descent over the token stream.
//!
//! `;` both separates declarations and composes tapes. Inside a definition
//! a `;` continues the expression when the next token can start a tape,
//! and ends the declaration otherwise (a keyword or end of input).

use crate::ast::*;
use crate::diag::Diagnostic;
use crate::lexer::{lex, Pos, Tok, Token};

const DECL_KEYWORDS: &[&str] = &["sort", "gen", "theory", "interp", "def", "check"];

pub fn parse_module(src: &str) -> Result<Module, Diagnostic> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    while p.peek() != &Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(Module { decls })
}

/// An object expression on its own, e.g. `(A (+) 1) (x) (B (+) C)`.
pub fn parse_object(src: &str) -> Result<Obj, Diagnostic> {
    let mut p = Parser::new(src)?;
    let o = p.obj()?;
    p.expect(Tok::Eof, &["end of input"])?;
    Ok(o)
}

/// A tape expression on its own.
pub fn parse_tape(src: &str) -> Result<Tape, Diagnostic> {
    let mut p = Parser::new(src)?;
    let t = p.tape()?;
    p.expect(Tok::Eof, &["end of input"])?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

const TAPE_START: &[&str] = &[
    "`(`", "`[`", "`id@`", "`id0`", "`sym+@`", "`codiag@`", "`cobang@`", "`op<`", "`term<`",
    "`copier@`", "`discard@`", "`dl@`", "a definition name",
];

impl Parser {
    fn new(src: &str) -> Result<Self, Diagnostic> {
        Ok(Parser { toks: lex(src)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> Result<T, Diagnostic> {
        Err(Diagnostic::expected(self.pos(), self.peek(), expected))
    }

    fn expect(&mut self, t: Tok, expected: &[&str]) -> Result<Pos, Diagnostic> {
        if *self.peek() == t {
            Ok(self.bump().pos)
        } else {
            self.unexpected(expected)
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn name(&mut self, what: &str) -> Result<Name, Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().pos;
                Ok(Name { text, pos })
            }
            _ => self.unexpected(&[what]),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[&format!("`{kw}`")])
        }
    }

    fn decl(&mut self) -> Result<Decl, Diagnostic> {
        let kw = match self.peek() {
            Tok::Ident(s) if DECL_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return self.unexpected(&["`sort`", "`gen`", "`theory`", "`interp`", "`def`", "`check`"]),
        };
        self.bump();
        let semi = &["`;`"];
        let d = match kw.as_str() {
            "sort" => {
                let n = self.name("a sort name")?;
                self.expect(Tok::Semi, semi)?;
                Decl::Sort(n)
            }
            "gen" => {
                let name = self.name("a generator name")?;
                self.expect(Tok::Colon, &["`:`"])?;
                let ar = self.obj()?;
                self.expect(Tok::Arrow, &["`->`"])?;
                let coar = self.obj()?;
                self.expect(Tok::Semi, semi)?;
                Decl::Gen { name, ar, coar }
            }
            "theory" => {
                let name = self.name("a theory name")?;
                let (mut label, mut params) = (None, Vec::new());
                if self.is_kw("with") {
                    self.bump();
                    label = Some(self.name("a parameter name")?.text);
                    self.expect(Tok::Eq, &["`=`"])?;
                    params.push(self.rat()?);
                    while self.eat(&Tok::Comma) {
                        params.push(self.rat()?);
                    }
                }
                self.expect(Tok::Semi, &["`;`", "`with`"])?;
                Decl::Theory { name, label, params }
            }
            "interp" => self.interp()?,
            "def" => {
                let name = self.name("a definition name")?;
                self.expect(Tok::Eq, &["`=`"])?;
                let body = self.tape()?;
                self.expect(Tok::Semi, semi)?;
                Decl::Def { name, body }
            }
            _ => {
                let name = self.name("a definition name")?;
                match self.peek() {
                    Tok::Colon => {
                        self.bump();
                        let dom = self.obj()?;
                        self.expect(Tok::Arrow, &["`->`"])?;
                        let cod = self.obj()?;
                        self.expect(Tok::Semi, semi)?;
                        Decl::CheckType { name, dom, cod }
                    }
                    Tok::Eq => {
                        self.bump();
                        let right = self.name("a definition name")?;
                        self.keyword("in")?;
                        let interp = self.name("an interpretation name")?;
                        self.expect(Tok::Semi, semi)?;
                        Decl::CheckEq {
                            left: name,
                            right,
                            interp,
                        }
                    }
                    _ => return self.unexpected(&["`:`", "`=`"]),
                }
            }
        };
        Ok(d)
    }

    fn interp(&mut self) -> Result<Decl, Diagnostic> {
        let name = self.name("an interpretation name")?;
        self.expect(Tok::LBrace, &["`{`"])?;
        let mut items = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let key = self.name("a sort, generator, `model` or `}`")?;
            self.expect(Tok::Eq, &["`=`"])?;
            let item = if key.text == "model" {
                InterpItem::Model {
                    theory: self.name("a theory name")?,
                }
            } else {
                match self.peek() {
                    Tok::LBrace => {
                        self.bump();
                        let mut labels = Vec::new();
                        if !self.eat(&Tok::RBrace) {
                            loop {
                                labels.push(self.label()?);
                                if self.eat(&Tok::RBrace) {
                                    break;
                                }
                                self.expect(Tok::Comma, &["`,`", "`}`"])?;
                            }
                        }
                        InterpItem::Carrier { sort: key, labels }
                    }
                    Tok::LBracket => InterpItem::Matrix {
                        gen: key,
                        rows: self.matrix()?,
                    },
                    _ => return self.unexpected(&["`{`", "`[`"]),
                }
            };
            self.expect(Tok::Semi, &["`;`"])?;
            items.push(item);
        }
        Ok(Decl::Interp { name, items })
    }

    fn label(&mut self) -> Result<String, Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Number(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(&["an element label"]),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Rat>>, Diagnostic> {
        self.expect(Tok::LBracket, &["`[`"])?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(rows);
        }
        loop {
            self.expect(Tok::LBracket, &["`[`"])?;
            let mut row = Vec::new();
            if !self.eat(&Tok::RBracket) {
                loop {
                    row.push(self.rat()?);
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    self.expect(Tok::Comma, &["`,`", "`]`"])?;
                }
            }
            rows.push(row);
            if self.eat(&Tok::RBracket) {
                return Ok(rows);
            }
            self.expect(Tok::Comma, &["`,`", "`]`"])?;
        }
    }

    fn rat(&mut self) -> Result<Rat, Diagnostic> {
        let pos = self.pos();
        let num = match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                n
            }
            _ => return self.unexpected(&["a number"]),
        };
        let den = if self.eat(&Tok::Slash) {
            match self.peek().clone() {
                Tok::Number(d) => {
                    self.bump();
                    Some(d)
                }
                _ => return self.unexpected(&["a denominator"]),
            }
        } else {
            None
        };
        Ok(Rat { num, den, pos })
    }

    // objects

    fn obj(&mut self) -> Result<Obj, Diagnostic> {
        let mut lhs = self.obj_prod()?;
        while self.eat(&Tok::Plus2) {
            let rhs = self.obj_prod()?;
            lhs = Obj::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn obj_prod(&mut self) -> Result<Obj, Diagnostic> {
        let mut lhs = self.obj_atom()?;
        loop {
            if self.eat(&Tok::Tensor) {
                let rhs = self.obj_atom()?;
                lhs = Obj::Tensor(Box::new(lhs), Box::new(rhs), true);
            } else if self.obj_atom_start() {
                let rhs = self.obj_atom()?;
                lhs = Obj::Tensor(Box::new(lhs), Box::new(rhs), false);
            } else {
                return Ok(lhs);
            }
        }
    }

    /// Juxtaposed atoms, as after `@`.
    fn obj_arg(&mut self) -> Result<Obj, Diagnostic> {
        let mut lhs = self.obj_atom()?;
        while self.obj_atom_start() {
            let rhs = self.obj_atom()?;
            lhs = Obj::Tensor(Box::new(lhs), Box::new(rhs), false);
        }
        Ok(lhs)
    }

    fn obj_atom_start(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !DECL_KEYWORDS.contains(&s.as_str()) && s != "in",
            Tok::Number(n) => n == "0" || n == "1",
            Tok::LParen => true,
            _ => false,
        }
    }

    fn obj_atom(&mut self) -> Result<Obj, Diagnostic> {
        let expected = &["a sort", "`1`", "`0`", "`(`"];
        match self.peek().clone() {
            Tok::Ident(_) if self.obj_atom_start() => Ok(Obj::Sort(self.name("a sort")?)),
            Tok::Number(n) if n == "1" => {
                self.bump();
                Ok(Obj::One)
            }
            Tok::Number(n) if n == "0" => {
                self.bump();
                Ok(Obj::Zero)
            }
            Tok::LParen => {
                self.bump();
                let o = self.obj()?;
                self.expect(Tok::RParen, &["`)`", "`(+)`", "`(x)`"])?;
                Ok(Obj::Paren(Box::new(o)))
            }
            _ => self.unexpected(expected),
        }
    }

    // tapes

    fn tape_start(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Tok::Ident(s) => !DECL_KEYWORDS.contains(&s.as_str()),
            Tok::LParen | Tok::LBracket => true,
            _ => false,
        }
    }

    fn tape(&mut self) -> Result<Tape, Diagnostic> {
        let mut lhs = self.tape_tensor()?;
        while *self.peek() == Tok::Semi && self.tape_start(1) {
            self.bump();
            let rhs = self.tape_tensor()?;
            lhs = Tape::Seq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tape_tensor(&mut self) -> Result<Tape, Diagnostic> {
        let mut lhs = self.tape_sum()?;
        while self.eat(&Tok::Tensor) {
            let rhs = self.tape_sum()?;
            lhs = Tape::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tape_sum(&mut self) -> Result<Tape, Diagnostic> {
        let mut lhs = self.tape_atom()?;
        while self.eat(&Tok::Plus2) {
            let rhs = self.tape_atom()?;
            lhs = Tape::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn at(&mut self) -> Result<(), Diagnostic> {
        self.expect(Tok::At, &["`@`"]).map(|_| ())
    }

    fn args(&mut self, n: usize) -> Result<Vec<Obj>, Diagnostic> {
        self.at()?;
        let mut out = vec![self.obj_arg()?];
        for _ in 1..n {
            self.expect(Tok::Comma, &["`,`"])?;
            out.push(self.obj_arg()?);
        }
        Ok(out)
    }

    fn tape_atom(&mut self) -> Result<Tape, Diagnostic> {
        let pos = self.pos();
        let atom = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.tape()?;
                self.expect(Tok::RParen, &["`)`", "`;`", "`(x)`", "`(+)`"])?;
                return Ok(Tape::Paren(Box::new(t)));
            }
            Tok::LBracket => {
                self.bump();
                let c = self.circ()?;
                self.expect(Tok::RBracket, &["`]`", "`;`", "`(x)`"])?;
                TapeAtom::Circuit(c)
            }
            Tok::Ident(s) if !DECL_KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                let one = |p: &mut Self| p.args(1).map(|mut v| v.remove(0));
                match s.as_str() {
                    "id" => TapeAtom::Id(one(self)?),
                    "id0" => TapeAtom::IdZero,
                    "sym" => {
                        self.expect(Tok::Plus, &["`+`"])?;
                        let mut v = self.args(2)?;
                        let b = v.pop().expect("two");
                        TapeAtom::SymPlus(v.pop().expect("two"), b)
                    }
                    "codiag" => TapeAtom::Codiag(one(self)?),
                    "cobang" => TapeAtom::Cobang(one(self)?),
                    "copier" => TapeAtom::Copier(one(self)?),
                    "discard" => TapeAtom::Discard(one(self)?),
                    "dl" => {
                        let mut v = self.args(3)?;
                        let r = v.pop().expect("three");
                        let q = v.pop().expect("three");
                        TapeAtom::Dl(v.pop().expect("three"), q, r)
                    }
                    "op" => {
                        self.expect(Tok::Lt, &["`<`"])?;
                        let op = self.op_lit()?;
                        self.expect(Tok::Gt, &["`>`"])?;
                        TapeAtom::Op(op, one(self)?)
                    }
                    "term" => {
                        self.expect(Tok::Lt, &["`<`"])?;
                        let t = self.sigma()?;
                        self.expect(Tok::Gt, &["`>`", "an operation"])?;
                        TapeAtom::Term(t, one(self)?)
                    }
                    _ => TapeAtom::Ref(s),
                }
            }
            _ => return self.unexpected(TAPE_START),
        };
        Ok(Tape::Atom(atom, pos))
    }

    fn op_lit(&mut self) -> Result<OpLit, Diagnostic> {
        let name = match self.peek().clone() {
            Tok::Plus => "+".to_string(),
            Tok::Ident(s) => s,
            Tok::Number(n) if n == "0" => n,
            _ => return self.unexpected(&["an operation"]),
        };
        self.bump();
        let param = if self.eat(&Tok::Underscore) {
            Some(self.rat()?)
        } else {
            None
        };
        Ok(OpLit { name, param })
    }

    fn sigma(&mut self) -> Result<Sigma, Diagnostic> {
        let mut lhs = self.sigma_atom()?;
        while *self.peek() == Tok::Plus {
            let op = self.op_lit()?;
            let rhs = self.sigma_atom()?;
            lhs = Sigma::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn sigma_atom(&mut self) -> Result<Sigma, Diagnostic> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let s = self.sigma()?;
                self.expect(Tok::RParen, &["`)`", "an operation"])?;
                Ok(Sigma::Paren(Box::new(s)))
            }
            Tok::Ident(s) => {
                if let Some(k) = s.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    if k >= 1 {
                        self.bump();
                        return Ok(Sigma::Var(k));
                    }
                }
                Ok(Sigma::Const(self.op_lit()?))
            }
            Tok::Number(n) if n == "0" => Ok(Sigma::Const(self.op_lit()?)),
            _ => self.unexpected(&["a variable `x1`, `x2`, ...", "a constant", "`(`"]),
        }
    }

    // circuits

    fn circ(&mut self) -> Result<Circ, Diagnostic> {
        let mut lhs = self.circ_tensor()?;
        while self.eat(&Tok::Semi) {
            let rhs = self.circ_tensor()?;
            lhs = Circ::Seq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn circ_tensor(&mut self) -> Result<Circ, Diagnostic> {
        let mut lhs = self.circ_atom()?;
        while self.eat(&Tok::Tensor) {
            let rhs = self.circ_atom()?;
            lhs = Circ::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn circ_atom(&mut self) -> Result<Circ, Diagnostic> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let c = self.circ()?;
                self.expect(Tok::RParen, &["`)`", "`;`", "`(x)`"])?;
                Ok(Circ::Paren(Box::new(c)))
            }
            Tok::Ident(s) if *self.peek_at(1) == Tok::At => {
                let one = |p: &mut Self| p.args(1).map(|mut v| v.remove(0));
                match s.as_str() {
                    "id" => {
                        self.bump();
                        Ok(Circ::Id(one(self)?, pos))
                    }
                    "copy" => {
                        self.bump();
                        Ok(Circ::Copy(one(self)?, pos))
                    }
                    "del" => {
                        self.bump();
                        Ok(Circ::Del(one(self)?, pos))
                    }
                    "sym" => {
                        self.bump();
                        let mut v = self.args(2)?;
                        let b = v.pop().expect("two");
                        Ok(Circ::Sym(v.pop().expect("two"), b, pos))
                    }
                    _ => self.unexpected(&["`id@`", "`sym@`", "`copy@`", "`del@`"]),
                }
            }
            Tok::Ident(_) => Ok(Circ::Gen(self.name("a generator")?)),
            _ => self.unexpected(&["a generator", "`id@`", "`sym@`", "`copy@`", "`del@`", "`(`"]),
        }
    }
}
