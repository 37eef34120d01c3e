//! Command line. Exit codes: 0 success or equal, 1 unequal or a failing
//! suite, 2 usage, 3 parse or type error. Diagnostics go to the error
//! stream; on success only the requested artifact is written.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use tapediag_core::objects::normalize_unchecked;
use tapediag_core::suites::Bounds;

use crate::elab::{self, Comparison, Program, Semantics, Which};
use crate::parser::parse_object;
use crate::render::render_svg;

pub const OK: i32 = 0;
pub const UNEQUAL: i32 = 1;
pub const USAGE: i32 = 2;
pub const INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tapediag", version, about = "Tape diagrams: typing, exact semantics, law suites, SVG")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Type every definition and run the `check` directives.
    Check { file: PathBuf },
    /// Print the polynomial normal form of an object expression.
    Normalize { expr: String },
    /// Print the matrix of a definition, rows are outputs.
    Eval {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        interp: String,
    },
    /// Exit 0 when two definitions denote the same matrix, 1 with a witness otherwise.
    Eq {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        interp: String,
    },
    /// Run the law suites over the sorts and generators of a module.
    Suite {
        file: PathBuf,
        #[arg(long)]
        interp: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `sorts=N`, `len=N`, `poly=N` or `instances=N`; repeatable.
        #[arg(long = "bound", value_parser = parse_bound)]
        bounds: Vec<(String, usize)>,
        #[arg(long, value_enum, default_value_t = SuiteKind::All)]
        which: SuiteKind,
    },
    /// Write an SVG drawing of a definition.
    Render {
        file: PathBuf,
        #[arg(long)]
        term: String,
        /// Output file; standard output when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteKind {
    Axiom,
    Lemma,
    All,
}

fn parse_bound(s: &str) -> Result<(String, usize), String> {
    let (k, v) = s.split_once('=').ok_or("expected KEY=VALUE")?;
    if !matches!(k, "sorts" | "len" | "poly" | "instances") {
        return Err(format!("unknown bound `{k}`; use sorts, len, poly or instances"));
    }
    let v = v.parse().map_err(|_| format!("`{v}` is not a natural number"))?;
    Ok((k.to_string(), v))
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn load(file: &Path, io: &mut Io<'_>) -> Result<Program, i32> {
    let src = std::fs::read_to_string(file).map_err(|e| {
        let _ = writeln!(io.err, "{}: {e}", file.display());
        USAGE
    })?;
    elab::load(&src).map_err(|d| {
        let _ = writeln!(io.err, "{}:{d}", file.display());
        INVALID
    })
}

fn def<'p>(p: &'p Program, name: &str, io: &mut Io<'_>) -> Result<&'p elab::Def, i32> {
    p.def(name).ok_or_else(|| {
        let _ = writeln!(io.err, "no definition named `{name}`");
        USAGE
    })
}

fn interp<'p>(p: &'p Program, name: &str, io: &mut Io<'_>) -> Result<&'p Semantics, i32> {
    p.interps.get(name).ok_or_else(|| {
        let _ = writeln!(io.err, "no interpretation named `{name}`");
        USAGE
    })
}

fn report(c: &Comparison, what: &str, io: &mut Io<'_>) -> i32 {
    match c {
        Comparison::Equal => OK,
        Comparison::Unequal { row, col, lhs, rhs } => {
            let _ = writeln!(io.out, "{what}: differ at row {row}, column {col}: left {lhs}, right {rhs}");
            UNEQUAL
        }
        Comparison::TypeError(e) => {
            let _ = writeln!(io.err, "{what}: {e}");
            INVALID
        }
    }
}

fn run_cmd(cmd: Cmd, io: &mut Io<'_>) -> Result<i32, i32> {
    Ok(match cmd {
        Cmd::Check { file } => {
            let p = load(&file, io)?;
            let mut code = OK;
            for c in &p.checks {
                let sem = interp(&p, &c.interp, io)?;
                let (l, r) = (def(&p, &c.left, io)?, def(&p, &c.right, io)?);
                let cmp = sem.compare(&p.sig, &l.term, &r.term).map_err(|e| {
                    let _ = writeln!(io.err, "{}:{}: {e}", file.display(), c.pos);
                    INVALID
                })?;
                let what = format!("{}:{}: {} = {} in {}", file.display(), c.pos, c.left, c.right, c.interp);
                code = code.max(report(&cmp, &what, io));
            }
            code
        }
        Cmd::Normalize { expr } => {
            let o = parse_object(&expr).map_err(|d| {
                let _ = writeln!(io.err, "{d}");
                INVALID
            })?;
            let _ = writeln!(io.out, "{}", normalize_unchecked(&elab::obj_term(&o)));
            OK
        }
        Cmd::Eval { file, term, interp: i } => {
            let p = load(&file, io)?;
            let (d, sem) = (def(&p, &term, io)?, interp(&p, &i, io)?);
            let m = sem.eval(&d.term).map_err(|e| {
                let _ = writeln!(io.err, "{e}");
                INVALID
            })?;
            let _ = writeln!(io.out, "{m}");
            OK
        }
        Cmd::Eq { file, left, right, interp: i } => {
            let p = load(&file, io)?;
            let (l, r, sem) = (def(&p, &left, io)?, def(&p, &right, io)?, interp(&p, &i, io)?);
            let cmp = sem.compare(&p.sig, &l.term, &r.term).map_err(|e| {
                let _ = writeln!(io.err, "{e}");
                INVALID
            })?;
            report(&cmp, &format!("{left} = {right}"), io)
        }
        Cmd::Suite { file, interp: i, seed, bounds, which } => {
            let p = load(&file, io)?;
            let sem = interp(&p, &i, io)?;
            let mut b = Bounds { seed, ..Bounds::default() };
            for (k, v) in bounds {
                match k.as_str() {
                    "sorts" => b.sorts = v,
                    "len" => b.len = v,
                    "poly" => b.poly = v,
                    _ => b.instances = v,
                }
            }
            let which = match which {
                SuiteKind::Axiom => Which::Axiom,
                SuiteKind::Lemma => Which::Lemma,
                SuiteKind::All => Which::All,
            };
            let r = sem.suite(&p.sig, &b, which);
            let _ = write!(io.out, "{r}");
            if r.all_passed() {
                OK
            } else {
                UNEQUAL
            }
        }
        Cmd::Render { file, term, output } => {
            let p = load(&file, io)?;
            let d = def(&p, &term, io)?;
            let svg = render_svg(&d.term, &p.ctx()).map_err(|e| {
                let _ = writeln!(io.err, "{e}");
                INVALID
            })?;
            match output {
                Some(path) => std::fs::write(&path, svg).map_err(|e| {
                    let _ = writeln!(io.err, "{}: {e}", path.display());
                    USAGE
                })?,
                None => {
                    let _ = io.out.write_all(svg.as_bytes());
                }
            }
            OK
        }
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    run_cmd(cli.cmd, &mut io).unwrap_or_else(|code| code)
}
