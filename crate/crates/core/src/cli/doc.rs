//! JSON documents read and written by the command line front end. Every
//! rational is a `"p/q"` string.

use serde::{Deserialize, Serialize};

use crate::crosscut::{sharp_bounds, CrosscutFigure};
use crate::geometry::{CanonicalFrame, Line, Point, Quadrilateral};
use crate::rational::{serde_str, Rational};
use crate::verify::{is_lower_equality_point, on_upper_locus};

/// `[x, y]`. Reading accepts integers, floats (taken at their exact binary
/// value), decimal strings and `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc(
    #[serde(with = "serde_str")] pub Rational,
    #[serde(with = "serde_str")] pub Rational,
);

impl From<&Point> for PointDoc {
    fn from(p: &Point) -> Self {
        PointDoc(p.x.clone(), p.y.clone())
    }
}

impl From<&PointDoc> for Point {
    fn from(p: &PointDoc) -> Self {
        Point::new(p.0.clone(), p.1.clone())
    }
}

/// Input quadrilateral `ABCD`. Unknown fields are ignored, so a
/// [`FigureDocument`] can be read back as input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadDocument {
    pub vertices: [PointDoc; 4],
}

impl QuadDocument {
    pub fn points(&self) -> [Point; 4] {
        std::array::from_fn(|i| Point::from(&self.vertices[i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDoc {
    #[serde(with = "serde_str")]
    pub a: Rational,
    #[serde(with = "serde_str")]
    pub b: Rational,
    /// Index of the input vertex used as `A`.
    pub rotation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct DivisionPointsDoc {
    pub A1: PointDoc,
    pub B1: PointDoc,
    pub C1: PointDoc,
    pub D1: PointDoc,
}

/// Integer coefficients `[p, q, r]` of `p·x + q·y + r = 0`.
pub type LineDoc = [String; 3];

fn line_doc(line: &Line) -> LineDoc {
    line.coefficients().map(|c| c.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct LinesDoc {
    pub AB1: LineDoc,
    pub BC1: LineDoc,
    pub CD1: LineDoc,
    pub DA1: LineDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct InnerDoc {
    pub K: PointDoc,
    pub L: PointDoc,
    pub M: PointDoc,
    pub N: PointDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDoc {
    #[serde(with = "serde_str")]
    pub lower: Rational,
    #[serde(with = "serde_str")]
    pub upper: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityDoc {
    pub lower: bool,
    pub upper: bool,
    /// Whether the configuration lies on the predicted locus of each bound.
    pub lower_locus: bool,
    pub upper_locus: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureDocument {
    pub vertices: [PointDoc; 4],
    #[serde(with = "serde_str")]
    pub k: Rational,
    pub canonical: CanonicalDoc,
    pub division_points: DivisionPointsDoc,
    pub lines: LinesDoc,
    pub inner: InnerDoc,
    #[serde(rename = "S", with = "serde_str")]
    pub outer_area: Rational,
    #[serde(rename = "s", with = "serde_str")]
    pub inner_area: Rational,
    #[serde(with = "serde_str")]
    pub ratio: Rational,
    pub bounds: Option<BoundsDoc>,
    pub equality: Option<EqualityDoc>,
    pub inner_inside: bool,
    pub inner_simple: bool,
}

impl FigureDocument {
    pub fn new(quad: &Quadrilateral, frame: &CanonicalFrame, figure: &CrosscutFigure) -> Self {
        let k = figure.k.value();
        let bounds = sharp_bounds(k).ok();
        let equality = bounds.as_ref().map(|(lower, upper)| EqualityDoc {
            lower: &figure.ratio == lower,
            upper: &figure.ratio == upper,
            lower_locus: is_lower_equality_point(&frame.params),
            upper_locus: on_upper_locus(&frame.params, k),
        });
        let d = &figure.division_points;
        let l = &figure.lines;
        let inner = &figure.inner;
        FigureDocument {
            vertices: std::array::from_fn(|i| PointDoc::from(quad.vertex(i))),
            k: k.clone(),
            canonical: CanonicalDoc {
                a: frame.params.a.clone(),
                b: frame.params.b.clone(),
                rotation: frame.rotation,
            },
            division_points: DivisionPointsDoc {
                A1: (&d.a1).into(),
                B1: (&d.b1).into(),
                C1: (&d.c1).into(),
                D1: (&d.d1).into(),
            },
            lines: LinesDoc {
                AB1: line_doc(&l.ab1),
                BC1: line_doc(&l.bc1),
                CD1: line_doc(&l.cd1),
                DA1: line_doc(&l.da1),
            },
            inner: InnerDoc {
                K: (&inner.k).into(),
                L: (&inner.l).into(),
                M: (&inner.m).into(),
                N: (&inner.n).into(),
            },
            outer_area: figure.outer_area.clone(),
            inner_area: figure.inner_area.clone(),
            ratio: figure.ratio.clone(),
            bounds: bounds.map(|(lower, upper)| BoundsDoc { lower, upper }),
            equality,
            inner_inside: figure.inner_inside,
            inner_simple: figure.inner_simple,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn reads_every_coordinate_form() {
        let doc: QuadDocument = serde_json::from_str(
            r#"{"vertices": [[0, "0"], ["1/2", 0.5], ["0.3", "-2"], [1e0, "7/7"]]}"#,
        )
        .unwrap();
        let p = doc.points();
        assert_eq!(p[0], Point::from_ints(0, 0));
        assert_eq!(p[1], Point::new(rat(1, 2), rat(1, 2)));
        assert_eq!(p[2], Point::new(rat(3, 10), int(-2)));
        assert_eq!(p[3], Point::from_ints(1, 1));
    }

    #[test]
    fn rejects_bad_coordinates() {
        assert!(
            serde_json::from_str::<QuadDocument>(r#"{"vertices": [[0,0],[1,0],[1,1]]}"#).is_err()
        );
        assert!(serde_json::from_str::<QuadDocument>(
            r#"{"vertices": [[0,"x"],[1,0],[1,1],[0,1]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<QuadDocument>(
            r#"{"vertices": [[0,"1/0"],[1,0],[1,1],[0,1]]}"#
        )
        .is_err());
    }

    #[test]
    fn points_serialize_as_fraction_strings() {
        let doc = PointDoc(rat(-3, 4), int(2));
        assert_eq!(serde_json::to_string(&doc).unwrap(), r#"["-3/4","2/1"]"#);
    }
}
