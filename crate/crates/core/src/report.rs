//! Text, JSON, DOT and SVG renderings of the analyses. Everything here is
//! deterministic: flats are listed in the order the library sorts them and
//! numbers in SVG output are printed with a fixed precision.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, LabeledSemilattice};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{format_rational, Rational, Vector};
use crate::gaingraph::GainGraph;
use crate::genericity::{BiasRestriction, FlatsLattice};
use crate::pointconfig::Configuration;

pub fn arrangement_text(a: &Arrangement) -> String {
    let mut out = String::new();
    if a.is_empty() {
        out.push_str("empty arrangement\n");
    }
    for h in a.hyperplanes() {
        let _ = writeln!(out, "{}: {}", h.label, h.equation());
    }
    out
}

pub fn arrangement_json(a: &Arrangement) -> Value {
    let hs: Vec<Value> = a
        .hyperplanes()
        .iter()
        .map(|h| {
            json!({
                "edge": h.label,
                "equation": h.equation(),
                "normal": h.normal.iter().map(format_rational).collect::<Vec<_>>(),
                "offset": format_rational(&h.offset),
            })
        })
        .collect();
    json!({ "dimension": a.dim(), "hyperplanes": hs })
}

fn flat_name(a: &Arrangement, s: BitSet) -> String {
    if s.is_empty() {
        "{}".to_string()
    } else {
        a.label(s)
    }
}

pub fn semilattice_text(a: &Arrangement, sl: &LabeledSemilattice) -> String {
    let mut out = String::new();
    let top = sl.flats.iter().map(|f| f.codim).max().unwrap_or(0);
    for k in 0..=top {
        let names: Vec<String> = sl.of_codim(k).map(|f| flat_name(a, f.labels)).collect();
        if !names.is_empty() {
            let _ = writeln!(out, "codim {k}: {}", names.join(" "));
        }
    }
    out
}

pub fn semilattice_json(a: &Arrangement, sl: &LabeledSemilattice) -> Value {
    let flats: Vec<Value> = sl
        .flats
        .iter()
        .map(|f| {
            json!({
                "edges": f.labels.iter().map(|i| a.hyperplanes()[i].label.clone()).collect::<Vec<_>>(),
                "codim": f.codim,
                "point": f.subspace.base().map(|b| b.iter().map(format_rational).collect::<Vec<_>>()),
            })
        })
        .collect();
    json!({ "flats": flats, "covers": sl.covers })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot(names: &[String], covers: &[(usize, usize)], highlight: &[bool]) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, n) in names.iter().enumerate() {
        let extra = if highlight.get(i).copied().unwrap_or(false) { ", color=red" } else { "" };
        let _ = writeln!(out, "  n{i} [label=\"{}\"{extra}];", dot_escape(n));
    }
    for (lo, hi) in covers {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

pub fn semilattice_dot(a: &Arrangement, sl: &LabeledSemilattice) -> String {
    let names: Vec<String> = sl.flats.iter().map(|f| flat_name(a, f.labels)).collect();
    dot(&names, &sl.covers, &[])
}

/// Name of a flat of the derived arrangement: its circuits, space separated.
pub fn flat_of_f_name(g: &GainGraph, lat: &FlatsLattice, i: usize) -> String {
    let cs = &lat.flats[i].circuits;
    if cs.is_empty() {
        "{}".to_string()
    } else {
        cs.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(" ")
    }
}

pub fn genericity_text(g: &GainGraph, lat_derived: &[(BitSet, crate::genericity::EdgeSpaceHyperplane)]) -> String {
    let gains = g.gains();
    let ids: Vec<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    let hit: Vec<_> = lat_derived.iter().filter(|(_, f)| f.contains(&gains)).collect();
    let mut out = String::new();
    if hit.is_empty() {
        out.push_str("generic\n");
    } else {
        let _ = writeln!(out, "non-generic: {} central circuits", hit.len());
        for (x, f) in hit {
            let _ = writeln!(out, "{}: {}", g.label(*x), f.display(&ids));
        }
    }
    out
}

pub fn flats_text(g: &GainGraph, lat: &FlatsLattice, bias: Option<&BiasRestriction>) -> String {
    let mut out = String::new();
    match bias {
        None => {
            let _ = writeln!(out, "{} flats", lat.flats.len());
            for i in 0..lat.flats.len() {
                let _ = writeln!(out, "codim {}: {}", lat.codim(i), flat_of_f_name(g, lat, i));
            }
        }
        Some(b) => {
            let _ = writeln!(out, "{} flats", b.flats.len());
            for bf in &b.flats {
                let flag = if bf.over_balanced { " (over-balanced)" } else { "" };
                let _ = writeln!(out, "codim {}: {}{flag}", lat.codim(bf.flat), flat_of_f_name(g, lat, bf.flat));
            }
        }
    }
    out
}

fn flat_json(g: &GainGraph, lat: &FlatsLattice, i: usize) -> Value {
    let ids: Vec<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    let f = &lat.flats[i];
    let equations: Vec<String> = f
        .circuits
        .iter()
        .map(|x| lat.derived[lat.circuit_index(*x).expect("circuit of the lattice")].1.display(&ids))
        .collect();
    json!({
        "circuits": f.circuits.iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
        "equations": equations,
        "dimension": f.dim(),
        "representative": f.representative().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn flats_json(g: &GainGraph, lat: &FlatsLattice, bias: Option<&BiasRestriction>) -> Value {
    match bias {
        None => json!({
            "flats": (0..lat.flats.len()).map(|i| flat_json(g, lat, i)).collect::<Vec<_>>(),
            "covers": lat.covers,
        }),
        Some(b) => json!({
            "flats": b.flats.iter().map(|bf| {
                let mut v = flat_json(g, lat, bf.flat);
                v["over_balanced"] = json!(bf.over_balanced);
                v["witness"] = json!(bf.witness.iter().map(format_rational).collect::<Vec<_>>());
                v
            }).collect::<Vec<_>>(),
        }),
    }
}

pub fn flats_dot(g: &GainGraph, lat: &FlatsLattice, bias: Option<&BiasRestriction>) -> String {
    match bias {
        None => {
            let names: Vec<String> = (0..lat.flats.len()).map(|i| flat_of_f_name(g, lat, i)).collect();
            dot(&names, &lat.covers, &[])
        }
        Some(b) => {
            // restrict to the kept flats, covering relation induced by
            // inclusion of circuit sets
            let kept: Vec<usize> = b.flats.iter().map(|f| f.flat).collect();
            let names: Vec<String> = kept.iter().map(|&i| flat_of_f_name(g, lat, i)).collect();
            let sets: Vec<BitSet> = kept
                .iter()
                .map(|&i| lat.flats[i].circuits.iter().map(|x| lat.circuit_index(*x).unwrap()).collect())
                .collect();
            let mut covers = Vec::new();
            for a in 0..kept.len() {
                for c in 0..kept.len() {
                    let below = a != c && sets[a].is_subset(sets[c]) && sets[a] != sets[c];
                    let between = (0..kept.len()).any(|m| {
                        m != a
                            && m != c
                            && sets[a].is_subset(sets[m])
                            && sets[m].is_subset(sets[c])
                            && sets[m] != sets[a]
                            && sets[m] != sets[c]
                    });
                    if below && !between {
                        covers.push((a, c));
                    }
                }
            }
            let red: Vec<bool> = b.flats.iter().map(|f| f.over_balanced).collect();
            dot(&names, &covers, &red)
        }
    }
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Plot of a planar arrangement. Lines carry `class="line"`, reference points
/// `class="point"` and points where three or more lines meet `class="multi"`.
pub fn plot_svg(c: &Configuration, a: &Arrangement) -> Result<String> {
    if a.dim() != 2 || c.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    let sl = a.intersection_semilattice();
    let mut marks: Vec<&Vector> = c.points().values().collect();
    let crossings: Vec<&Vector> = sl.of_codim(2).filter_map(|fl| fl.subspace.base()).collect();
    marks.extend(crossings.iter().copied());
    let coord = |i: usize| marks.iter().map(move |p| p.0[i].clone());
    let lo = |i: usize| coord(i).min().unwrap_or_else(Rational::zero);
    let hi = |i: usize| coord(i).max().unwrap_or_else(Rational::zero);
    let (mut x0, mut x1, mut y0, mut y1) = (lo(0), hi(0), lo(1), hi(1));
    let span = std::cmp::max(x1.clone() - x0.clone(), y1.clone() - y0.clone());
    let margin = std::cmp::max(span / Rational::from_integer(10.into()), Rational::from_integer(1.into()));
    x0 -= margin.clone();
    x1 += margin.clone();
    y0 -= margin.clone();
    y1 += margin;

    let size = 600.0;
    let sx = size / f(&(x1.clone() - x0.clone()));
    let sy = size / f(&(y1.clone() - y0.clone()));
    let px = |x: &Rational| (f(x) - f(&x0)) * sx;
    let py = |y: &Rational| size - (f(y) - f(&y0)) * sy;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(out, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>");
    for h in a.hyperplanes() {
        let seg = clip(&h.normal, &h.offset, (&x0, &x1, &y0, &y1));
        if let Some((p, q)) = seg {
            let _ = writeln!(
                out,
                "<line class=\"line\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\"/>",
                px(&p.0[0]),
                py(&p.0[1]),
                px(&q.0[0]),
                py(&q.0[1])
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\">{}</text>",
                px(&q.0[0]),
                py(&q.0[1]),
                h.label
            );
        }
    }
    for fl in sl.of_codim(2).filter(|fl| fl.labels.len() >= 3) {
        if let Some(p) = fl.subspace.base() {
            let _ = writeln!(
                out,
                "<circle class=\"multi\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"5\" fill=\"red\"><title>{}</title></circle>",
                px(&p.0[0]),
                py(&p.0[1]),
                a.label(fl.labels)
            );
        }
    }
    for (v, p) in c.points() {
        let _ = writeln!(
            out,
            "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"blue\"/>",
            px(&p.0[0]),
            py(&p.0[1])
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" fill=\"blue\">q{v}</text>",
            px(&p.0[0]) + 4.0,
            py(&p.0[1]) - 4.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The segment of `n·x = c` inside the box, if any.
fn clip(n: &Vector, c: &Rational, (x0, x1, y0, y1): (&Rational, &Rational, &Rational, &Rational)) -> Option<(Vector, Vector)> {
    let (a, b) = (&n.0[0], &n.0[1]);
    let mut pts: Vec<Vector> = Vec::new();
    if !b.is_zero() {
        for x in [x0, x1] {
            let y = (c - a * x) / b;
            if &y >= y0 && &y <= y1 {
                pts.push(Vector(vec![x.clone(), y]));
            }
        }
    }
    if !a.is_zero() {
        for y in [y0, y1] {
            let x = (c - b * y) / a;
            if &x >= x0 && &x <= x1 {
                pts.push(Vector(vec![x, y.clone()]));
            }
        }
    }
    pts.sort_by(|p, q| p.0.cmp(&q.0));
    pts.dedup();
    let first = pts.first()?.clone();
    let last = pts.last()?.clone();
    Some((first, last))
}
