//! SVG rendering of a crosscut figure. Coordinates are converted to `f64` and
//! printed with six decimals; nothing here feeds back into the exact path.

use std::fmt::Write;

use crate::crosscut::CrosscutFigure;
use crate::geometry::Point;
use crate::rational::to_f64;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 0.08;

struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
    pad: f64,
}

impl Viewport {
    fn fit(points: &[&Point]) -> Self {
        let xs: Vec<f64> = points.iter().map(|p| to_f64(&p.x)).collect();
        let ys: Vec<f64> = points.iter().map(|p| to_f64(&p.y)).collect();
        let fold = |v: &[f64], init: f64, f: fn(f64, f64) -> f64| v.iter().copied().fold(init, f);
        let (min_x, max_x) = (
            fold(&xs, f64::INFINITY, f64::min),
            fold(&xs, f64::NEG_INFINITY, f64::max),
        );
        let (min_y, max_y) = (
            fold(&ys, f64::INFINITY, f64::min),
            fold(&ys, f64::NEG_INFINITY, f64::max),
        );
        let span = (max_x - min_x).max(max_y - min_y).max(f64::EPSILON);
        let pad = WIDTH * MARGIN;
        Viewport {
            min_x,
            max_y,
            scale: (WIDTH - 2.0 * pad) / span,
            pad,
        }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        (
            self.pad + (to_f64(&p.x) - self.min_x) * self.scale,
            self.pad + (self.max_y - to_f64(&p.y)) * self.scale,
        )
    }

    fn polygon(&self, points: &[&Point]) -> String {
        points
            .iter()
            .map(|p| {
                let (x, y) = self.map(p);
                format!("{x:.6},{y:.6}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `ABCD` outlined, the cevians drawn from each vertex through its division
/// point, and `KLMN` shaded.
pub fn render(figure: &CrosscutFigure) -> String {
    let v = figure.quad.vertices();
    let d = figure.division_points.as_array();
    let inner = [
        &figure.inner.k,
        &figure.inner.l,
        &figure.inner.m,
        &figure.inner.n,
    ];
    let mut all: Vec<&Point> = v.iter().collect();
    all.extend(d);
    all.extend(inner);
    let view = Viewport::fit(&all);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{WIDTH:.0}" viewBox="0 0 {WIDTH:.0} {WIDTH:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let outer: Vec<&Point> = v.iter().collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        view.polygon(&outer)
    );
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="1.5"/>"##,
        view.polygon(&inner)
    );
    // AB₁, BC₁, CD₁, DA₁: vertex i to division point i + 1
    for i in 0..4 {
        let (x1, y1) = view.map(&v[i]);
        let (x2, y2) = view.map(d[(i + 1) % 4]);
        let _ = writeln!(
            out,
            r##"<line x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="#d62728" stroke-width="1"/>"##
        );
    }
    let labels = [
        "A", "B", "C", "D", "A₁", "B₁", "C₁", "D₁", "K", "L", "M", "N",
    ];
    for (p, name) in all.iter().zip(labels) {
        let (x, y) = view.map(p);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.6}" cy="{y:.6}" r="2.5" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.6}" y="{:.6}" font-family="sans-serif" font-size="13">{name}</text>"#,
            x + 4.0,
            y - 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosscut::{crosscut_figure, KParam};
    use crate::geometry::CanonicalParams;
    use crate::rational::int;

    #[test]
    fn renders_all_parts_deterministically() {
        let quad = CanonicalParams::new(int(2), int(1))
            .unwrap()
            .quadrilateral();
        let fig = crosscut_figure(&quad, &KParam::from_any(int(1)).unwrap()).unwrap();
        let svg = render(&fig);
        assert_eq!(svg, render(&fig));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<line").count(), 4);
        assert!(svg.contains(">K</text>"));
        assert!(svg.contains("51.200000,"));
    }
}
