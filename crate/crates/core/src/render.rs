//! Text, SVG and TikZ pictures of Tits indexes.
//!
//! Text grammar: a vertex is `o`, a distinguished vertex `(o)`. Chain edges are
//! `--` (simple), `=>=` or `=<=` (double, the arrow pointing at the short
//! root) and `≡` (triple; `###` in ASCII mode). Vertices off the main chain
//! sit on their own line above or below the vertex they attach to, joined by
//! a `|` line, with the `o` in the attach vertex's column:
//!
//! | type | chain      | above        | below     |
//! |------|------------|--------------|-----------|
//! | `D_n`| `1..n-2`   | `n-1` at `n-2` | `n` at `n-2` |
//! | `E_n`| `1..n-1`   | `n` at `n-3`   |           |
//!
//! When some orbit has two or more vertices a last line lists those orbits,
//! `orbits: {1,5}*{2,4}`, with `*` after each distinguished one. Lines carry
//! no trailing spaces and the text ends without a newline.
//!
//! SVG and TikZ share one integer layout: chain vertices at `x = 30 + 40k`,
//! `y = 50`. Outer forms are drawn folded so each orbit is a vertical stack.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::diagrams::{DynkinDiagram, TypeLabel, Vertex};
use crate::index::TitsIndex;

/// Chain vertices left to right, then `(vertex, attach, above)` extras.
fn text_layout(d: &DynkinDiagram) -> (Vec<Vertex>, Vec<(Vertex, Vertex, bool)>) {
    let n = d.rank();
    match d.type_label() {
        TypeLabel::D => ((1..=n - 2).collect(), alloc::vec![(n - 1, n - 2, true), (n, n - 2, false)]),
        TypeLabel::E => ((1..n).collect(), alloc::vec![(n, n - 3, true)]),
        _ => ((1..=n).collect(), Vec::new()),
    }
}

fn vertex_token(index: &TitsIndex, v: Vertex) -> &'static str {
    if index.is_distinguished(v) {
        "(o)"
    } else {
        "o"
    }
}

fn aux_line(out: &mut String, col: usize, token: &str) {
    let start = if token == "(o)" { col - 1 } else { col };
    out.extend(core::iter::repeat_n(' ', start));
    out.push_str(token);
}

fn render_text_impl(index: &TitsIndex, ascii_only: bool) -> String {
    let d = index.diagram();
    let (chain, extras) = text_layout(d);
    let mut line = String::new();
    let mut cols: Vec<(Vertex, usize)> = Vec::new();
    let mut width = 0usize;
    for (k, &v) in chain.iter().enumerate() {
        if k > 0 {
            let prev = chain[k - 1];
            let e = d.edge_between(prev, v).expect("chain vertices are adjacent");
            let token = match (e.multiplicity, e.short) {
                (1, _) => "--",
                (2, Some(s)) if s == v => "=>=",
                (2, _) => "=<=",
                _ if ascii_only => "###",
                _ => "≡",
            };
            line.push_str(token);
            width += token.chars().count();
        }
        let token = vertex_token(index, v);
        let o_col = if token == "o" { width } else { width + 1 };
        cols.push((v, o_col));
        line.push_str(token);
        width += token.chars().count();
    }
    let col_of = |v: Vertex| cols.iter().find(|(u, _)| *u == v).map(|(_, c)| *c).unwrap();

    let mut lines: Vec<String> = Vec::new();
    for &(v, at, _) in extras.iter().filter(|e| e.2) {
        let mut s = String::new();
        aux_line(&mut s, col_of(at), vertex_token(index, v));
        lines.push(s);
        let mut bar = String::new();
        aux_line(&mut bar, col_of(at), "|");
        lines.push(bar);
    }
    lines.push(line);
    for &(v, at, _) in extras.iter().filter(|e| !e.2) {
        let mut bar = String::new();
        aux_line(&mut bar, col_of(at), "|");
        lines.push(bar);
        let mut s = String::new();
        aux_line(&mut s, col_of(at), vertex_token(index, v));
        lines.push(s);
    }

    let big: Vec<&Vec<Vertex>> = index.action().orbits().iter().filter(|o| o.len() >= 2).collect();
    if !big.is_empty() {
        let mut s = String::from("orbits: ");
        for o in big {
            s.push('{');
            for (i, v) in o.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{v}");
            }
            s.push('}');
            if index.distinguished().contains(o) {
                s.push('*');
            }
        }
        lines.push(s);
    }
    let trimmed: Vec<&str> = lines.iter().map(|l| l.trim_end()).collect();
    trimmed.join("\n")
}

pub fn render_text(index: &TitsIndex) -> String {
    render_text_impl(index, false)
}

/// As [`render_text`], with `###` for the triple edge.
pub fn render_text_ascii(index: &TitsIndex) -> String {
    render_text_impl(index, true)
}

const X0: i32 = 30;
const DX: i32 = 40;

/// Integer drawing coordinates for every vertex, indexed by `v - 1`.
pub fn layout(index: &TitsIndex) -> Vec<(i32, i32)> {
    let d = index.diagram();
    let n = d.rank() as i32;
    let t = index.action().order();
    let x = |k: i32| X0 + DX * k;
    let mut pos = alloc::vec![(0, 0); n as usize];
    let mut set = |v: i32, p: (i32, i32)| pos[(v - 1) as usize] = p;
    match d.type_label() {
        TypeLabel::A if t > 1 => {
            for i in 1..=n {
                let j = n + 1 - i;
                let k = i.min(j) - 1;
                let y = match i.cmp(&j) {
                    core::cmp::Ordering::Less => 30,
                    core::cmp::Ordering::Equal => 50,
                    core::cmp::Ordering::Greater => 70,
                };
                set(i, (x(k), y));
            }
        }
        TypeLabel::D if t == 3 || t == 6 => {
            set(2, (x(0), 50));
            set(1, (x(1), 20));
            set(3, (x(1), 50));
            set(4, (x(1), 80));
        }
        TypeLabel::D => {
            for i in 1..=n - 2 {
                set(i, (x(i - 1), 50));
            }
            set(n - 1, (x(n - 2), 20));
            set(n, (x(n - 2), 80));
        }
        TypeLabel::E if t > 1 => {
            set(6, (x(0), 50));
            set(3, (x(1), 50));
            set(2, (x(2), 30));
            set(4, (x(2), 70));
            set(1, (x(3), 30));
            set(5, (x(3), 70));
        }
        TypeLabel::E => {
            for i in 1..n {
                set(i, (x(i - 1), 50));
            }
            set(n, (x(n - 4), 90));
        }
        _ => {
            for i in 1..=n {
                set(i, (x(i - 1), 50));
            }
        }
    }
    pos
}

/// One shape of a picture, in drawing order.
enum Shape {
    Line((i32, i32), (i32, i32)),
    Dot((i32, i32)),
    Ring((i32, i32)),
    Oval { cx: i32, cy: i32, rx: i32, ry: i32 },
    Label((i32, i32), Vertex),
}

fn shapes(index: &TitsIndex) -> Vec<Shape> {
    let d = index.diagram();
    let pos = layout(index);
    let at = |v: Vertex| pos[(v - 1) as usize];
    let mut out = Vec::new();
    for e in d.edges() {
        let (p, q) = (at(e.a), at(e.b));
        match e.multiplicity {
            1 => out.push(Shape::Line(p, q)),
            m => {
                // parallel strokes, then a chevron pointing at the short end
                let offsets: &[i32] = if m == 2 { &[-3, 3] } else { &[-4, 0, 4] };
                for &o in offsets {
                    out.push(Shape::Line((p.0, p.1 + o), (q.0, q.1 + o)));
                }
                let short = e.short.unwrap_or(e.b);
                let dir = if at(short).0 > at(e.other(short).unwrap()).0 { 1 } else { -1 };
                let mx = (p.0 + q.0) / 2;
                let my = (p.1 + q.1) / 2;
                out.push(Shape::Line((mx - 5 * dir, my - 7), (mx + 5 * dir, my)));
                out.push(Shape::Line((mx + 5 * dir, my), (mx - 5 * dir, my + 7)));
            }
        }
    }
    for v in d.vertices() {
        out.push(Shape::Dot(at(v)));
        let (x, y) = at(v);
        out.push(Shape::Label((x + 8, y - 8), v));
    }
    for orbit in index.distinguished() {
        if orbit.len() == 1 {
            out.push(Shape::Ring(at(orbit[0])));
        } else {
            let xs = orbit.iter().map(|&v| at(v).0);
            let ys = orbit.iter().map(|&v| at(v).1);
            let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
            let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
            out.push(Shape::Oval {
                cx: (x0 + x1) / 2,
                cy: (y0 + y1) / 2,
                rx: (x1 - x0) / 2 + 12,
                ry: (y1 - y0) / 2 + 12,
            });
        }
    }
    out
}

fn extent(index: &TitsIndex) -> (i32, i32) {
    let pos = layout(index);
    let w = pos.iter().map(|p| p.0).max().unwrap_or(0) + X0;
    let h = pos.iter().map(|p| p.1).max().unwrap_or(0).max(50) + 30;
    (w, h)
}

/// A standalone SVG 1.1 document.
pub fn render_svg(index: &TitsIndex) -> String {
    let (w, h) = extent(index);
    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<title>{}</title>", index.diagram().name());
    let _ = writeln!(s, "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">");
    for shape in shapes(index) {
        let _ = match shape {
            Shape::Line((x1, y1), (x2, y2)) => {
                writeln!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>")
            }
            Shape::Dot((x, y)) => writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>"),
            Shape::Ring((x, y)) => writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"10\"/>"),
            Shape::Oval { cx, cy, rx, ry } => {
                writeln!(s, "<ellipse cx=\"{cx}\" cy=\"{cy}\" rx=\"{rx}\" ry=\"{ry}\"/>")
            }
            Shape::Label((x, y), v) => writeln!(
                s,
                "<text x=\"{x}\" y=\"{y}\" font-size=\"9\" stroke=\"none\" fill=\"black\">{v}</text>"
            ),
        };
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// A TikZ fragment for use inside a `tikzpicture`.
pub fn render_tikz(index: &TitsIndex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "% {}", index.diagram().name());
    s.push_str("\\begin{scope}[x=0.025cm,y=-0.025cm]\n");
    for shape in shapes(index) {
        let _ = match shape {
            Shape::Line((x1, y1), (x2, y2)) => writeln!(s, "  \\draw ({x1},{y1}) -- ({x2},{y2});"),
            Shape::Dot((x, y)) => writeln!(s, "  \\fill ({x},{y}) circle (4);"),
            Shape::Ring((x, y)) => writeln!(s, "  \\draw ({x},{y}) circle (10);"),
            Shape::Oval { cx, cy, rx, ry } => {
                writeln!(s, "  \\draw ({cx},{cy}) ellipse ({rx} and {ry});")
            }
            Shape::Label((x, y), v) => writeln!(s, "  \\node[font=\\tiny] at ({x},{y}) {{{v}}};"),
        };
    }
    s.push_str("\\end{scope}\n");
    s
}
