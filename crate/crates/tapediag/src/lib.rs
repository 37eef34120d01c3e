//! Text format, command line and SVG rendering for tape diagrams.

pub mod ast;
pub mod cli;
pub mod diag;
pub mod elab;
pub mod lexer;
pub mod parser;
pub mod render;
