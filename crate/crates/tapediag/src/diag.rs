use std::fmt;

use crate::lexer::Pos;

/// An error located in the source, with the tokens that would have been
/// accepted there when the parser knows them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            pos,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn expected(pos: Pos, found: impl fmt::Display, expected: &[&str]) -> Self {
        let mut expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        expected.sort();
        expected.dedup();
        Diagnostic {
            pos,
            message: format!("unexpected {found}"),
            expected,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, "; expected {one}"),
            many => write!(f, "; expected one of {}", many.join(", ")),
        }
    }
}

impl std::error::Error for Diagnostic {}
