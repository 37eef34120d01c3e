//! Tokens with positions. `(x)` and `(+)` are single tokens; `⊗` and `⊕`
//! lex to the same tokens.

use std::fmt;

use crate::diag::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    Tensor,
    Plus2,
    Arrow,
    At,
    Comma,
    Semi,
    Colon,
    Eq,
    Plus,
    Underscore,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Number(s) => return write!(f, "`{s}`"),
            Tok::Tensor => "`(x)`",
            Tok::Plus2 => "`(+)`",
            Tok::Arrow => "`->`",
            Tok::At => "`@`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Colon => "`:`",
            Tok::Eq => "`=`",
            Tok::Plus => "`+`",
            Tok::Underscore => "`_`",
            Tok::Slash => "`/`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let take = |n: usize, tok: Tok, out: &mut Vec<Token>| {
            out.push(Token { tok, pos });
            n
        };
        let n = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                let mut j = i;
                while j < chars.len() && chars[j] != '\n' {
                    j += 1;
                }
                j - i
            }
            '(' if matches!(chars.get(i + 1..i + 3), Some(['x', ')'])) => take(3, Tok::Tensor, &mut out),
            '(' if matches!(chars.get(i + 1..i + 3), Some(['+', ')'])) => take(3, Tok::Plus2, &mut out),
            '⊗' => take(1, Tok::Tensor, &mut out),
            '⊕' => take(1, Tok::Plus2, &mut out),
            '-' if chars.get(i + 1) == Some(&'>') => take(2, Tok::Arrow, &mut out),
            '→' => take(1, Tok::Arrow, &mut out),
            '@' => take(1, Tok::At, &mut out),
            ',' => take(1, Tok::Comma, &mut out),
            ';' => take(1, Tok::Semi, &mut out),
            ':' => take(1, Tok::Colon, &mut out),
            '=' => take(1, Tok::Eq, &mut out),
            '+' => take(1, Tok::Plus, &mut out),
            '/' => take(1, Tok::Slash, &mut out),
            '(' => take(1, Tok::LParen, &mut out),
            ')' => take(1, Tok::RParen, &mut out),
            '[' => take(1, Tok::LBracket, &mut out),
            ']' => take(1, Tok::RBracket, &mut out),
            '{' => take(1, Tok::LBrace, &mut out),
            '}' => take(1, Tok::RBrace, &mut out),
            '<' => take(1, Tok::Lt, &mut out),
            '>' => take(1, Tok::Gt, &mut out),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if chars.get(j) == Some(&'.') && chars.get(j + 1).is_some_and(char::is_ascii_digit) {
                    return Err(Diagnostic::new(
                        pos,
                        "decimal literals are not allowed; write a fraction such as 1/2",
                    ));
                }
                let text: String = chars[i..j].iter().collect();
                take(j - i, Tok::Number(text), &mut out)
            }
            '_' if !chars.get(i + 1).is_some_and(|c| c.is_alphabetic() || *c == '_') => {
                take(1, Tok::Underscore, &mut out)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                take(j - i, Tok::Ident(text), &mut out)
            }
            other => return Err(Diagnostic::new(pos, format!("unexpected character `{other}`"))),
        };
        i += n;
        col += n;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
