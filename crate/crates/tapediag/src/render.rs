//! SVG output. Every monomial of a polynomial gets its own horizontal lane
//! (a tape); the wires of its sorts run inside the lane. Composites are laid
//! out with fixed sizes and nested `<g transform>` groups, so equal terms
//! give equal bytes.

use std::fmt::Write as _;

use tapediag_core::circuit::CircuitTerm;
use tapediag_core::objects::Monomial;
use tapediag_core::tape::{Ctx, TapeError, TapeTerm};

const LANE: i32 = 40;
const UNIT: i32 = 60;
const GAP: i32 = 30;
const MARGIN: i32 = 10;
const INSET: i32 = 4;

#[derive(Clone, Debug)]
struct Port {
    lane: i32,
    mono: Monomial,
}

struct Block {
    w: i32,
    lanes: i32,
    ins: Vec<Port>,
    outs: Vec<Port>,
    body: String,
}

fn esc(s: &str) -> String {
    let mut o = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => o.push_str("&amp;"),
            '<' => o.push_str("&lt;"),
            '>' => o.push_str("&gt;"),
            '"' => o.push_str("&quot;"),
            c => o.push(c),
        }
    }
    o
}

fn top(lane: i32) -> i32 {
    lane * LANE + INSET
}

fn bottom(lane: i32) -> i32 {
    (lane + 1) * LANE - INSET
}

/// Heights of the wires of `u` inside lane `lane`.
fn wire_ys(u: &Monomial, lane: i32) -> Vec<i32> {
    let k = u.len() as i32;
    (1..=k).map(|i| lane * LANE + LANE * i / (k + 1)).collect()
}

/// A straight stretch of tape with its wires, optionally labelled.
fn band(out: &mut String, x0: i32, x1: i32, lane: i32, u: &Monomial, labels: bool) {
    let _ = writeln!(
        out,
        r##"<rect class="tape" x="{x0}" y="{}" width="{}" height="{}" fill="#e8eef7" stroke="#5b7db1"/>"##,
        top(lane),
        x1 - x0,
        LANE - 2 * INSET
    );
    for (s, y) in u.sorts().iter().zip(wire_ys(u, lane)) {
        let _ = writeln!(out, r##"<line class="wire" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#222"/>"##);
        if labels {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="9" font-family="monospace">{}</text>"#,
                x0 + 3,
                y - 2,
                esc(s.name())
            );
        }
    }
}

fn curve(x0: i32, y0: i32, x1: i32, y1: i32) -> String {
    let m = (x0 + x1) / 2;
    format!("C {m} {y0} {m} {y1} {x1} {y1}")
}

/// A tape bending from lane `l0` at `x0` to lane `l1` at `x1`.
fn connector(out: &mut String, x0: i32, x1: i32, l0: i32, l1: i32, u: &Monomial) {
    if l0 == l1 {
        return band(out, x0, x1, l0, u, false);
    }
    let _ = writeln!(
        out,
        r##"<path class="tape" d="M {x0} {} {} L {x1} {} {} Z" fill="#e8eef7" stroke="#5b7db1"/>"##,
        top(l0),
        curve(x0, top(l0), x1, top(l1)),
        bottom(l1),
        curve(x1, bottom(l1), x0, bottom(l0)),
    );
    for (y0, y1) in wire_ys(u, l0).into_iter().zip(wire_ys(u, l1)) {
        let _ = writeln!(
            out,
            r##"<path class="wire" d="M {x0} {y0} {}" fill="none" stroke="#222"/>"##,
            curve(x0, y0, x1, y1)
        );
    }
}

fn group(class: &str, body: &str) -> String {
    format!("<g class=\"{class}\">\n{body}</g>\n")
}

fn translate(dx: i32, dy: i32, body: &str) -> String {
    if dx == 0 && dy == 0 {
        return body.to_string();
    }
    format!("<g transform=\"translate({dx},{dy})\">\n{body}</g>\n")
}

fn ports(lanes: impl IntoIterator<Item = i32>, u: &Monomial) -> Vec<Port> {
    lanes.into_iter().map(|lane| Port { lane, mono: u.clone() }).collect()
}

fn layout(t: &TapeTerm, ctx: &Ctx<'_>) -> Result<Block, TapeError> {
    let mut body = String::new();
    Ok(match t {
        TapeTerm::IdMon(u) => {
            band(&mut body, 0, UNIT, 0, u, true);
            Block {
                w: UNIT,
                lanes: 1,
                ins: ports([0], u),
                outs: ports([0], u),
                body: group("id", &body),
            }
        }
        TapeTerm::IdZero => Block {
            w: GAP,
            lanes: 0,
            ins: Vec::new(),
            outs: Vec::new(),
            body: String::new(),
        },
        TapeTerm::Circuit(c) => circuit_block(c, ctx)?,
        TapeTerm::SymPlus(u, v) => {
            connector(&mut body, 0, UNIT, 0, 1, u);
            connector(&mut body, 0, UNIT, 1, 0, v);
            Block {
                w: UNIT,
                lanes: 2,
                ins: vec![Port { lane: 0, mono: u.clone() }, Port { lane: 1, mono: v.clone() }],
                outs: vec![Port { lane: 0, mono: v.clone() }, Port { lane: 1, mono: u.clone() }],
                body: group("sym-plus", &body),
            }
        }
        TapeTerm::Codiag(u) => {
            connector(&mut body, 0, UNIT, 0, 0, u);
            connector(&mut body, 0, UNIT, 1, 0, u);
            Block {
                w: UNIT,
                lanes: 2,
                ins: ports([0, 1], u),
                outs: ports([0], u),
                body: group("codiag", &body),
            }
        }
        TapeTerm::Cobang(u) => {
            let (x, r) = (UNIT / 3, (LANE - 2 * INSET) / 2);
            let _ = writeln!(
                body,
                r##"<path class="tape" d="M {UNIT} {} L {x} {} A {r} {r} 0 0 0 {x} {} L {UNIT} {} Z" fill="#e8eef7" stroke="#5b7db1"/>"##,
                top(0),
                top(0),
                bottom(0),
                bottom(0)
            );
            for y in wire_ys(u, 0) {
                let _ = writeln!(body, r##"<line class="wire" x1="{x}" y1="{y}" x2="{UNIT}" y2="{y}" stroke="#222"/>"##);
            }
            Block {
                w: UNIT,
                lanes: 1,
                ins: Vec::new(),
                outs: ports([0], u),
                body: group("cobang", &body),
            }
        }
        TapeTerm::Op(f, u) => {
            let n = f.arity() as i32;
            if n == 0 {
                band(&mut body, 0, UNIT / 2, 0, u, false);
            }
            for i in 0..n {
                connector(&mut body, 0, UNIT, 0, i, u);
            }
            let _ = writeln!(
                body,
                r##"<circle class="op" cx="{}" cy="{}" r="9" fill="#fff" stroke="#5b7db1"/>"##,
                UNIT / 4,
                LANE / 2
            );
            let _ = writeln!(
                body,
                r#"<text x="{}" y="{}" font-size="9" font-family="monospace" text-anchor="middle">{}</text>"#,
                UNIT / 4,
                LANE / 2 - 12,
                esc(&f.to_string())
            );
            Block {
                w: UNIT,
                lanes: n.max(1),
                ins: ports([0], u),
                outs: ports(0..n, u),
                body: group("op", &body),
            }
        }
        TapeTerm::Sum(a, b) => {
            let (a, b) = (layout(a, ctx)?, layout(b, ctx)?);
            let w = a.w.max(b.w);
            let (a, b) = (pad(a, w), pad(b, w));
            let k = a.lanes;
            let shift = |ps: Vec<Port>| ps.into_iter().map(|p| Port { lane: p.lane + k, ..p });
            let mut ins = a.ins;
            ins.extend(shift(b.ins));
            let mut outs = a.outs;
            outs.extend(shift(b.outs));
            Block {
                w,
                lanes: k + b.lanes,
                ins,
                outs,
                body: format!("{}{}", a.body, translate(0, k * LANE, &b.body)),
            }
        }
        TapeTerm::Seq(a, b) => {
            let (a, b) = (layout(a, ctx)?, layout(b, ctx)?);
            let aligned = a.outs.iter().zip(&b.ins).all(|(p, q)| p.lane == q.lane);
            let gap = if aligned { 0 } else { GAP };
            for (p, q) in a.outs.iter().zip(&b.ins) {
                connector(&mut body, a.w, a.w + gap, p.lane, q.lane, &p.mono);
            }
            let x = a.w + gap;
            Block {
                w: x + b.w,
                lanes: a.lanes.max(b.lanes),
                ins: a.ins,
                outs: b.outs,
                body: format!("{}{}{}", a.body, if aligned { String::new() } else { body }, translate(x, 0, &b.body)),
            }
        }
    })
}

/// Extends the outputs of a block with straight tape up to width `w`.
fn pad(mut b: Block, w: i32) -> Block {
    if b.w < w {
        for p in &b.outs {
            band(&mut b.body, b.w, w, p.lane, &p.mono, false);
        }
        b.w = w;
    }
    b
}

fn circuit_block(c: &CircuitTerm, ctx: &Ctx<'_>) -> Result<Block, TapeError> {
    let (u, v) = c.type_of(ctx.sig)?;
    let label = c.to_string();
    let w = UNIT.max(8 * label.chars().count() as i32 + 20);
    let (bx0, bx1) = (10, w - 10);
    let mut body = String::new();
    let _ = writeln!(
        body,
        r##"<rect class="tape" x="0" y="{}" width="{w}" height="{}" fill="#e8eef7" stroke="#5b7db1"/>"##,
        top(0),
        LANE - 2 * INSET
    );
    for y in wire_ys(&u, 0) {
        let _ = writeln!(body, r##"<line class="wire" x1="0" y1="{y}" x2="{bx0}" y2="{y}" stroke="#222"/>"##);
    }
    for y in wire_ys(&v, 0) {
        let _ = writeln!(body, r##"<line class="wire" x1="{bx1}" y1="{y}" x2="{w}" y2="{y}" stroke="#222"/>"##);
    }
    let _ = writeln!(
        body,
        r##"<rect class="box" x="{bx0}" y="{}" width="{}" height="{}" fill="#fff" stroke="#222"/>"##,
        top(0) + 4,
        bx1 - bx0,
        LANE - 2 * INSET - 8
    );
    let _ = writeln!(
        body,
        r#"<text x="{}" y="{}" font-size="10" font-family="monospace" text-anchor="middle">{}</text>"#,
        w / 2,
        LANE / 2 + 3,
        esc(&label)
    );
    Ok(Block {
        w,
        lanes: 1,
        ins: ports([0], &u),
        outs: ports([0], &v),
        body: group("circuit", &body),
    })
}

/// Renders a typeable tape as a standalone SVG 1.1 document.
pub fn render_svg(t: &TapeTerm, ctx: &Ctx<'_>) -> Result<String, TapeError> {
    t.type_of(ctx)?;
    let b = layout(t, ctx)?;
    let (w, h) = (b.w + 2 * MARGIN, b.lanes.max(1) * LANE + 2 * MARGIN);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    out.push_str(&translate(MARGIN, MARGIN, &b.body));
    out.push_str("</svg>\n");
    Ok(out)
}
