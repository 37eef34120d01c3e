//! Surface syntax and its printer. Parentheses written in the source are
//! kept as nodes so printing reproduces them; the printer adds parentheses
//! only where a hand-built tree needs them.

use std::fmt;

use crate::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Sort(Name),
    Gen { name: Name, ar: Obj, coar: Obj },
    /// `theory PCA with p = 1/3, 2/5;`; `label` is the `p`.
    Theory { name: Name, label: Option<String>, params: Vec<Rat> },
    Interp { name: Name, items: Vec<InterpItem> },
    Def { name: Name, body: Tape },
    CheckType { name: Name, dom: Obj, cod: Obj },
    CheckEq { left: Name, right: Name, interp: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpItem {
    Carrier { sort: Name, labels: Vec<String> },
    Matrix { gen: Name, rows: Vec<Vec<Rat>> },
    Model { theory: Name },
}

/// A nonnegative rational literal as written: `2`, `1/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat {
    pub num: String,
    pub den: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obj {
    Sort(Name),
    One,
    Zero,
    /// `explicit` when written with `(x)`, otherwise juxtaposition.
    Tensor(Box<Obj>, Box<Obj>, bool),
    Sum(Box<Obj>, Box<Obj>),
    Paren(Box<Obj>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpLit {
    pub name: String,
    pub param: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sigma {
    Var(usize),
    Const(OpLit),
    Bin(OpLit, Box<Sigma>, Box<Sigma>),
    Paren(Box<Sigma>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tape {
    Seq(Box<Tape>, Box<Tape>),
    Tensor(Box<Tape>, Box<Tape>),
    Sum(Box<Tape>, Box<Tape>),
    Paren(Box<Tape>),
    Atom(TapeAtom, Pos),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TapeAtom {
    Id(Obj),
    IdZero,
    SymPlus(Obj, Obj),
    Codiag(Obj),
    Cobang(Obj),
    Op(OpLit, Obj),
    Term(Sigma, Obj),
    Copier(Obj),
    Discard(Obj),
    Dl(Obj, Obj, Obj),
    Circuit(Circ),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Circ {
    Seq(Box<Circ>, Box<Circ>),
    Tensor(Box<Circ>, Box<Circ>),
    Paren(Box<Circ>),
    Id(Obj, Pos),
    Gen(Name),
    Sym(Obj, Obj, Pos),
    Copy(Obj, Pos),
    Del(Obj, Pos),
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            Some(d) => write!(f, "{}/{d}", self.num),
            None => f.write_str(&self.num),
        }
    }
}

impl fmt::Display for OpLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if let Some(p) = &self.param {
            write!(f, "_{p}")?;
        }
        Ok(())
    }
}

/// Binding strength: sums bind tightest, then products.
fn obj_prec(o: &Obj) -> u8 {
    match o {
        Obj::Sum(..) => 1,
        Obj::Tensor(..) => 2,
        _ => 3,
    }
}

fn paren_if<T: fmt::Display>(f: &mut fmt::Formatter<'_>, cond: bool, x: &T) -> fmt::Result {
    if cond {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Sort(n) => f.write_str(&n.text),
            Obj::One => f.write_str("1"),
            Obj::Zero => f.write_str("0"),
            Obj::Tensor(a, b, explicit) => {
                paren_if(f, obj_prec(a) < 2, a)?;
                f.write_str(if *explicit { " (x) " } else { " " })?;
                paren_if(f, obj_prec(b) <= 2, b)
            }
            Obj::Sum(a, b) => {
                paren_if(f, obj_prec(a) < 1, a)?;
                f.write_str(" (+) ")?;
                paren_if(f, obj_prec(b) <= 1, b)
            }
            Obj::Paren(x) => write!(f, "({x})"),
        }
    }
}

/// An object in argument position after `@`: juxtaposed atoms only.
struct Arg<'a>(&'a Obj);

impl fmt::Display for Arg<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Obj::Tensor(_, _, true) | Obj::Sum(..) => write!(f, "({})", self.0),
            o => write!(f, "{o}"),
        }
    }
}

fn sigma_prec(s: &Sigma) -> u8 {
    match s {
        Sigma::Bin(..) => 1,
        _ => 2,
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Var(i) => write!(f, "x{i}"),
            Sigma::Const(op) => write!(f, "{op}"),
            Sigma::Bin(op, a, b) => {
                write!(f, "{a} {op} ")?;
                paren_if(f, sigma_prec(b) <= 1, b)
            }
            Sigma::Paren(x) => write!(f, "({x})"),
        }
    }
}

fn tape_prec(t: &Tape) -> u8 {
    match t {
        Tape::Seq(..) => 1,
        Tape::Tensor(..) => 2,
        Tape::Sum(..) => 3,
        _ => 4,
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Tape, b: &Tape, p: u8, op: &str| {
            paren_if(f, tape_prec(a) < p, a)?;
            f.write_str(op)?;
            paren_if(f, tape_prec(b) <= p, b)
        };
        match self {
            Tape::Seq(a, b) => bin(f, a, b, 1, " ; "),
            Tape::Tensor(a, b) => bin(f, a, b, 2, " (x) "),
            Tape::Sum(a, b) => bin(f, a, b, 3, " (+) "),
            Tape::Paren(x) => write!(f, "({x})"),
            Tape::Atom(a, _) => write!(f, "{a}"),
        }
    }
}

impl fmt::Display for TapeAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeAtom::Id(u) => write!(f, "id@{}", Arg(u)),
            TapeAtom::IdZero => f.write_str("id0"),
            TapeAtom::SymPlus(u, v) => write!(f, "sym+@{},{}", Arg(u), Arg(v)),
            TapeAtom::Codiag(u) => write!(f, "codiag@{}", Arg(u)),
            TapeAtom::Cobang(u) => write!(f, "cobang@{}", Arg(u)),
            TapeAtom::Op(op, u) => write!(f, "op<{op}>@{}", Arg(u)),
            TapeAtom::Term(t, u) => write!(f, "term<{t}>@{}", Arg(u)),
            TapeAtom::Copier(u) => write!(f, "copier@{}", Arg(u)),
            TapeAtom::Discard(u) => write!(f, "discard@{}", Arg(u)),
            TapeAtom::Dl(p, q, r) => write!(f, "dl@{},{},{}", Arg(p), Arg(q), Arg(r)),
            TapeAtom::Circuit(c) => write!(f, "[{c}]"),
            TapeAtom::Ref(n) => f.write_str(n),
        }
    }
}

fn circ_prec(c: &Circ) -> u8 {
    match c {
        Circ::Seq(..) => 1,
        Circ::Tensor(..) => 2,
        _ => 3,
    }
}

impl fmt::Display for Circ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Circ::Seq(a, b) => {
                paren_if(f, circ_prec(a) < 1, a)?;
                f.write_str(" ; ")?;
                paren_if(f, circ_prec(b) <= 1, b)
            }
            Circ::Tensor(a, b) => {
                paren_if(f, circ_prec(a) < 2, a)?;
                f.write_str(" (x) ")?;
                paren_if(f, circ_prec(b) <= 2, b)
            }
            Circ::Paren(x) => write!(f, "({x})"),
            Circ::Id(u, _) => write!(f, "id@{}", Arg(u)),
            Circ::Gen(n) => f.write_str(&n.text),
            Circ::Sym(u, v, _) => write!(f, "sym@{},{}", Arg(u), Arg(v)),
            Circ::Copy(u, _) => write!(f, "copy@{}", Arg(u)),
            Circ::Del(u, _) => write!(f, "del@{}", Arg(u)),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Sort(n) => write!(f, "sort {};", n.text),
            Decl::Gen { name, ar, coar } => write!(f, "gen {} : {ar} -> {coar};", name.text),
            Decl::Theory { name, label, params } => {
                write!(f, "theory {}", name.text)?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(ToString::to_string).collect();
                    write!(f, " with {} = {}", label.as_deref().unwrap_or("p"), ps.join(", "))?;
                }
                f.write_str(";")
            }
            Decl::Interp { name, items } => {
                writeln!(f, "interp {} {{", name.text)?;
                for item in items {
                    match item {
                        InterpItem::Carrier { sort, labels } => {
                            writeln!(f, "  {} = {{{}}};", sort.text, labels.join(", "))?
                        }
                        InterpItem::Matrix { gen, rows } => {
                            let rs: Vec<String> = rows
                                .iter()
                                .map(|r| {
                                    let es: Vec<String> = r.iter().map(ToString::to_string).collect();
                                    format!("[{}]", es.join(", "))
                                })
                                .collect();
                            writeln!(f, "  {} = [{}];", gen.text, rs.join(", "))?
                        }
                        InterpItem::Model { theory } => writeln!(f, "  model = {};", theory.text)?,
                    }
                }
                f.write_str("}")
            }
            Decl::Def { name, body } => write!(f, "def {} = {body};", name.text),
            Decl::CheckType { name, dom, cod } => write!(f, "check {} : {dom} -> {cod};", name.text),
            Decl::CheckEq { left, right, interp } => {
                write!(f, "check {} = {} in {};", left.text, right.text, interp.text)
            }
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Drops comments and collapses whitespace, for comparing sources with
/// printed modules.
pub fn normalize_whitespace(src: &str) -> String {
    let stripped: Vec<&str> = src
        .lines()
        .map(|l| match l.find("//") {
            Some(i) => &l[..i],
            None => l,
        })
        .collect();
    stripped.join(" ").split_whitespace().collect::<Vec<_>>().join(" ")
}
