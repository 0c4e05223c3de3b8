//! DOT and SVG output. Both are for viewing only and are never read back.

use std::fmt::Write;

use transfer_core::{Color, PosetRelation, StackedTriangulation, Vertex};

/// Cover relations of `poset`, bottom to top, with node `i` standing for the
/// `i`-th transfer system.
pub fn hasse_dot(name: &str, poset: &PosetRelation) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..poset.size() {
        writeln!(s, "  {i};").unwrap();
    }
    for (x, y) in poset.covers() {
        writeln!(s, "  {x} -> {y};").unwrap();
    }
    s.push_str("}\n");
    s
}

fn stroke(color: Option<Color>) -> &'static str {
    match color {
        None => "black",
        Some(Color::Red) => "#d62728",
        Some(Color::Blue) => "#1f77b4",
        Some(Color::Green) => "#2ca02c",
    }
}

/// Places each inserted vertex at the barycenter of the face it subdivides.
pub fn triangulation_svg(s: &StackedTriangulation) -> String {
    const SIZE: f64 = 600.0;
    let outer = |c: Color| match c {
        Color::Red => (SIZE / 2.0, 30.0),
        Color::Blue => (30.0, SIZE - 30.0),
        Color::Green => (SIZE - 30.0, SIZE - 30.0),
    };
    let mut inner: Vec<(f64, f64)> = Vec::with_capacity(s.len());
    let pos = |v: Vertex, inner: &[(f64, f64)]| match v {
        Vertex::Outer(c) => outer(c),
        Vertex::Inner(i) => inner[i],
    };
    for face in s.insertions() {
        let (mut x, mut y) = (0.0, 0.0);
        for &v in face {
            let (px, py) = pos(v, &inner);
            x += px / 3.0;
            y += py / 3.0;
        }
        inner.push((x, y));
    }

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    for (a, b, color) in s.edges() {
        let ((x1, y1), (x2, y2)) = (pos(a, &inner), pos(b, &inner));
        writeln!(
            out,
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            stroke(color)
        )
        .unwrap();
    }
    for c in Color::ALL {
        let (x, y) = outer(c);
        writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"{}\"/>", stroke(Some(c))).unwrap();
    }
    for (i, (x, y)) in inner.iter().enumerate() {
        writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>").unwrap();
        writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{i}</text>",
            x + 5.0,
            y - 5.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
