//! SVG and TikZ drawings of nested bodies. Coordinates are multiplied by a
//! scale factor and rounded to four decimals; nothing here feeds back into
//! exact computation.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::rational::{format_rational, to_f64};
use crate::exactlin::Rational;
use crate::okounkov::polygon::{Point, Polygon};

pub const DEFAULT_SCALE: f64 = 10.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureFormat {
    Svg,
    Tikz,
}

impl FromStr for FigureFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Self::Svg),
            "tikz" => Ok(Self::Tikz),
            _ => Err(Error::parse(s, "expected svg or tikz")),
        }
    }
}

/// Exact content of a figure before it is rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureLayout {
    /// Right end of the bottom edge of every body, ascending.
    pub x_ticks: Vec<Rational>,
    /// Heights of vertices off both axes, plus the tops of the bodies.
    pub y_ticks: Vec<Rational>,
    /// Horizontal guides from the y-axis to a vertex.
    pub guides: Vec<Point>,
    /// Edges not lying on an axis; edges covered by a longer one are dropped.
    pub edges: Vec<(Point, Point)>,
}

fn on_axis(a: &Point, b: &Point) -> bool {
    (a.x.is_zero() && b.x.is_zero()) || (a.y.is_zero() && b.y.is_zero())
}

fn covers(long: &(Point, Point), short: &(Point, Point)) -> bool {
    let (a, b) = long;
    let inside = |p: &Point| {
        let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
        if !cross.is_zero() {
            return false;
        }
        let dot = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
        let len = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
        !dot.is_negative() && dot <= len
    };
    inside(&short.0) && inside(&short.1)
}

pub fn layout(bodies: &[(usize, Polygon)]) -> FigureLayout {
    let mut x_ticks = BTreeSet::new();
    let mut y_ticks = BTreeSet::new();
    let mut guides = BTreeSet::new();
    let mut edges: BTreeSet<(Point, Point)> = BTreeSet::new();
    for (_, body) in bodies {
        let vs = body.vertices();
        for v in vs {
            if v.y.is_zero() && v.x.is_positive() {
                x_ticks.insert(v.x.clone());
            }
            if v.y.is_positive() {
                y_ticks.insert(v.y.clone());
            }
            if v.x.is_positive() && v.y.is_positive() {
                guides.insert(v.clone());
            }
        }
        if vs.len() < 2 {
            continue;
        }
        for i in 0..vs.len() {
            let (a, b) = (&vs[i], &vs[(i + 1) % vs.len()]);
            if a == b || on_axis(a, b) {
                continue;
            }
            let e = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            edges.insert(e);
        }
    }
    let all: Vec<(Point, Point)> = edges.into_iter().collect();
    let edges = all
        .iter()
        .filter(|e| !all.iter().any(|o| o != *e && covers(o, e)))
        .cloned()
        .collect();
    FigureLayout {
        x_ticks: x_ticks.into_iter().collect(),
        y_ticks: y_ticks.into_iter().collect(),
        guides: guides.into_iter().collect(),
        edges,
    }
}

/// Rounds to four decimals and trims trailing zeros.
pub fn format_coord(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn tikz_label(r: &Rational) -> String {
    if r.is_integer() {
        format!("${}$", r.numer())
    } else {
        format!("$\\frac{{{}}}{{{}}}$", r.numer(), r.denom())
    }
}

pub fn emit_figure(bodies: &[(usize, Polygon)], format: FigureFormat, scale: f64) -> String {
    let lay = layout(bodies);
    let c = |r: &Rational| format_coord(to_f64(r) * scale);
    let extent = lay
        .x_ticks
        .iter()
        .chain(&lay.y_ticks)
        .max()
        .map(to_f64)
        .unwrap_or(1.0)
        .max(1.0)
        * scale;
    let ext = format_coord(extent);
    match format {
        FigureFormat::Tikz => {
            let mut out = String::from("\\begin{tikzpicture}\n");
            let _ = writeln!(out, "\\draw (0,0) -- ({ext},0);");
            for x in &lay.x_ticks {
                let _ = writeln!(out, "\\node [below] at ({},0) {{{}}};", c(x), tikz_label(x));
            }
            let _ = writeln!(out, "\\draw (0,0) -- (0,{ext});");
            for y in &lay.y_ticks {
                let _ = writeln!(out, "\\node [left] at (0,{}) {{{}}};", c(y), tikz_label(y));
            }
            for g in &lay.guides {
                let _ = writeln!(out, "\\draw [dashed] (0,{y}) -- ({},{y});", c(&g.x), y = c(&g.y));
            }
            for (a, b) in &lay.edges {
                let _ = writeln!(out, "\\draw ({},{}) -- ({},{});", c(&a.x), c(&a.y), c(&b.x), c(&b.y));
            }
            out.push_str("\\end{tikzpicture}\n");
            out
        }
        FigureFormat::Svg => {
            let pad = format_coord(extent * 0.15);
            let size = format_coord(extent * 1.3);
            let font = format_coord(extent * 0.03);
            let stroke = format_coord(extent * 0.003);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-{pad} -{ext_pad} {size} {size}\">",
                ext_pad = format_coord(extent * 1.15),
            );
            let _ = writeln!(out, "<g fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\" transform=\"scale(1,-1)\">");
            let _ = writeln!(out, "<line class=\"axis\" x1=\"0\" y1=\"0\" x2=\"{ext}\" y2=\"0\"/>");
            let _ = writeln!(out, "<line class=\"axis\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"{ext}\"/>");
            for g in &lay.guides {
                let _ = writeln!(
                    out,
                    "<line class=\"guide\" stroke-dasharray=\"{dash}\" x1=\"0\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>",
                    c(&g.x),
                    dash = format_coord(extent * 0.01),
                    y = c(&g.y)
                );
            }
            for (a, b) in &lay.edges {
                let _ = writeln!(
                    out,
                    "<line class=\"edge\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    c(&a.x),
                    c(&a.y),
                    c(&b.x),
                    c(&b.y)
                );
            }
            out.push_str("</g>\n");
            let _ = writeln!(out, "<g font-size=\"{font}\" font-family=\"serif\">");
            for x in &lay.x_ticks {
                let _ = writeln!(
                    out,
                    "<text class=\"xtick\" data-x=\"{x}\" x=\"{x}\" y=\"{dy}\" text-anchor=\"middle\">{}</text>",
                    format_rational(x),
                    x = c(x),
                    dy = format_coord(extent * 0.05)
                );
            }
            for y in &lay.y_ticks {
                let _ = writeln!(
                    out,
                    "<text class=\"ytick\" data-y=\"{y}\" x=\"-{dx}\" y=\"{neg}\" text-anchor=\"end\">{}</text>",
                    format_rational(y),
                    y = c(y),
                    neg = format_coord(-to_f64(y) * scale),
                    dx = format_coord(extent * 0.02)
                );
            }
            out.push_str("</g>\n</svg>\n");
            out
        }
    }
}
