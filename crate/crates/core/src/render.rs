//! SVG and TikZ drawings of diagrams: neon tubes are thick, lamp feet are
//! black, lit regions and grey cells are optional fills.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::diagram::RectDiagram;
use crate::error::{Error, Result};
use crate::lamps::{lamps, lit_region, neon_tubes, Lamp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

#[derive(Clone, Debug, Default)]
pub struct RenderStyle {
    pub labels: bool,
    /// Lamps (by foot) whose lit regions are shaded.
    pub lit: Vec<usize>,
    /// Tops of 4-cells to fill grey.
    pub grey_cells: Vec<usize>,
}

/// The lamp with foot `x`, else the internal lamp with peak `x`, else the
/// only lamp with peak `x`.
pub fn lamp_by_element(all: &[Lamp], x: usize) -> Option<&Lamp> {
    if let Some(l) = all.iter().find(|l| l.foot == x) {
        return Some(l);
    }
    if let Some(l) = all.iter().find(|l| l.is_internal() && l.peak == x) {
        return Some(l);
    }
    let mut peaks = all.iter().filter(|l| l.peak == x);
    match (peaks.next(), peaks.next()) {
        (Some(l), None) => Some(l),
        _ => None,
    }
}

// Points are kept doubled so that lit-region vertices stay integral.
type P2 = (i64, i64);

struct Scene {
    fills: Vec<(Vec<P2>, &'static str)>,
    thin: Vec<(P2, P2)>,
    thick: Vec<(P2, P2)>,
    nodes: Vec<(P2, bool, String)>,
}

fn scene(d: &RectDiagram, style: &RenderStyle) -> Result<Scene> {
    let l = d.lattice();
    let doubled = |x: usize| {
        let (px, py) = d.pos(x);
        (2 * px, 2 * py)
    };
    let all = lamps(d)?;
    let mut fills = Vec::new();
    for &x in &style.lit {
        let lamp = lamp_by_element(&all, x)
            .ok_or_else(|| Error::Invalid(format!("no lamp with foot or peak `{}`", l.name(x))))?;
        for poly in lit_region(d, lamp).parts() {
            if poly.is_degenerate() {
                continue;
            }
            // Light coordinates (λ, μ) = (x − y, x + y).
            let pts = poly
                .vertices()
                .iter()
                .map(|&(lam, mu)| (lam + mu, mu - lam))
                .collect();
            fills.push((pts, "lit"));
        }
    }
    for &top in &style.grey_cells {
        let c = d.distributive_cell(top).or_else(|_| {
            d.cells()
                .into_iter()
                .find(|c| c.top == top)
                .ok_or_else(|| Error::NotACell(l.name(top).to_string()))
        })?;
        let pts = [c.bottom, c.right, c.top, c.left]
            .iter()
            .map(|&x| doubled(x))
            .collect();
        fills.push((pts, "grey"));
    }
    let tubes: HashSet<(usize, usize)> = neon_tubes(d)?
        .into_iter()
        .map(|t| (t.foot, t.peak))
        .collect();
    let (mut thin, mut thick) = (Vec::new(), Vec::new());
    for (a, b) in l.edges() {
        let seg = (doubled(a), doubled(b));
        if tubes.contains(&(a, b)) {
            thick.push(seg);
        } else {
            thin.push(seg);
        }
    }
    let feet: HashSet<usize> = all.iter().map(|lamp| lamp.foot).collect();
    let nodes = (0..l.len())
        .map(|x| (doubled(x), feet.contains(&x), l.name(x).to_string()))
        .collect();
    Ok(Scene {
        fills,
        thin,
        thick,
        nodes,
    })
}

const UNIT: i64 = 20;
const MARGIN: i64 = 30;

fn svg(s: &Scene, labels: bool) -> String {
    let xs = s.nodes.iter().map(|n| n.0 .0);
    let ys = s.nodes.iter().map(|n| n.0 .1);
    let (min_x, max_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (min_y, max_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let px = |p: P2| ((p.0 - min_x) * UNIT + MARGIN, (max_y - p.1) * UNIT + MARGIN);
    let width = (max_x - min_x) * UNIT + 2 * MARGIN;
    let height = (max_y - min_y) * UNIT + 2 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (pts, kind) in &s.fills {
        let fill = if *kind == "lit" { "#fff2a8" } else { "#c8c8c8" };
        let list: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon class="{kind}" points="{}" fill="{fill}" stroke="none"/>"#,
            list.join(" ")
        );
    }
    for (segs, class, w) in [(&s.thin, "edge", 1), (&s.thick, "tube", 4)] {
        for &(a, b) in segs {
            let ((x1, y1), (x2, y2)) = (px(a), px(b));
            let _ = writeln!(
                out,
                r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="{w}"/>"#
            );
        }
    }
    for (p, foot, name) in &s.nodes {
        let (x, y) = px(*p);
        let fill = if *foot { "black" } else { "white" };
        let _ = writeln!(
            out,
            r#"  <circle cx="{x}" cy="{y}" r="5" fill="{fill}" stroke="black" stroke-width="1.5"/>"#
        );
        if labels {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="12" font-family="sans-serif">{}</text>"#,
                x + 8,
                y + 4,
                escape(name)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn half(v: i64) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{:.1}", v as f64 / 2.0)
    }
}

fn tikz(s: &Scene, labels: bool) -> String {
    let pt = |p: P2| format!("({},{})", half(p.0), half(p.1));
    let mut out = String::from("\\begin{tikzpicture}[x=0.5cm,y=0.5cm]\n");
    for (pts, kind) in &s.fills {
        let colour = if *kind == "lit" {
            "yellow!25"
        } else {
            "gray!35"
        };
        let path: Vec<String> = pts.iter().map(|&p| pt(p)).collect();
        let _ = writeln!(out, "  \\fill[{colour}] {} -- cycle;", path.join(" -- "));
    }
    for &(a, b) in &s.thin {
        let _ = writeln!(out, "  \\draw {} -- {};", pt(a), pt(b));
    }
    for &(a, b) in &s.thick {
        let _ = writeln!(out, "  \\draw[line width=2pt] {} -- {};", pt(a), pt(b));
    }
    for (p, foot, name) in &s.nodes {
        let fill = if *foot { "black" } else { "white" };
        let _ = writeln!(
            out,
            "  \\filldraw[fill={fill},draw=black] {} circle (2.5pt);",
            pt(*p)
        );
        if labels {
            let _ = writeln!(
                out,
                "  \\node[right=3pt] at {} {{${}$}};",
                pt(*p),
                name.replace('_', "\\_")
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn render(d: &RectDiagram, format: Format, style: &RenderStyle) -> Result<String> {
    let s = scene(d, style)?;
    Ok(match format {
        Format::Svg => svg(&s, style.labels),
        Format::Tikz => tikz(&s, style.labels),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid, s_lattice};

    #[test]
    fn s7_census() {
        let s7 = s_lattice(1).unwrap();
        let out = render(&s7, Format::Svg, &RenderStyle::default()).unwrap();
        assert_eq!(out.matches("<line").count(), s7.lattice().edges().len());
        assert_eq!(out.matches(r#"class="tube""#).count(), 3);
        assert_eq!(out.matches(r#"fill="black""#).count(), 3);
        let tex = render(&s7, Format::Tikz, &RenderStyle::default()).unwrap();
        assert_eq!(tex.matches("line width=2pt").count(), 3);
        assert_eq!(
            out,
            render(&s7, Format::Svg, &RenderStyle::default()).unwrap()
        );
    }

    #[test]
    fn lit_and_grey_fills() {
        let s7 = s_lattice(1).unwrap();
        let all = lamps(&s7).unwrap();
        let w = all.iter().find(|l| l.is_internal()).unwrap();
        let style = RenderStyle {
            labels: true,
            lit: vec![w.peak],
            grey_cells: Vec::new(),
        };
        let out = render(&s7, Format::Svg, &style).unwrap();
        assert!(out.contains(r#"class="lit""#));
        let g = grid(2, 2).unwrap();
        let style = RenderStyle {
            grey_cells: vec![g.lattice().top()],
            ..RenderStyle::default()
        };
        let out = render(&g, Format::Tikz, &style).unwrap();
        assert_eq!(out.matches("gray!35").count(), 1);
        let plain = render(&g, Format::Svg, &RenderStyle::default()).unwrap();
        assert_eq!(plain.matches("<line").count(), 12);
    }
}
