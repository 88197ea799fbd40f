//! The crosscut construction: division points `A₁..D₁`, the four cevian
//! lines `AB₁, BC₁, CD₁, DA₁`, the inner quadrilateral `KLMN` and the area
//! ratio `s/S`.
//!
//! Division points use the vector form `X₁ = X + k/(k+1)·(next(X) − X)`,
//! which agrees with the segment-ratio definition `|XX₁| : |X₁ next(X)| = k`
//! for `k > 0` and extends to every `k > −1`.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{
    intersect_lines, line_through, orientation, signed_area, CanonicalParams, GeometryError, Line,
    Point, Quadrilateral,
};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrosscutError {
    #[error("k = {0} is outside the admissible range {1}")]
    Domain(Rational, &'static str),
    #[error("vertex {0} coincides with its division point; cevian {0}{1}₁ is undefined")]
    CoincidentCevian(char, char),
    #[error("cevians {} and {} are parallel; vertex {} does not exist", .0.lines().0, .0.lines().1, .0.vertex())]
    ParallelPair(CevianPair),
    #[error("closed-form denominator of {0} vanishes")]
    ZeroDenominator(char),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Ratio parameter `k > −1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KParam(Rational);

impl KParam {
    /// Segment-ratio setup `|AA₁| / |A₁B| = k`, which needs `k > 0`.
    pub fn from_segment_ratio(k: Rational) -> Result<Self, CrosscutError> {
        if k.is_positive() {
            Ok(KParam(k))
        } else {
            Err(CrosscutError::Domain(k, "k > 0"))
        }
    }

    /// Vector setup, valid on `(−1, ∞)`.
    pub fn from_any(k: Rational) -> Result<Self, CrosscutError> {
        if k > int(-1) {
            Ok(KParam(k))
        } else {
            Err(CrosscutError::Domain(k, "k > -1"))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `t = k/(k+1)`, the fraction of each side before its division point.
    pub fn fraction(&self) -> Rational {
        &self.0 / (&self.0 + int(1))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionPoints {
    pub a1: Point,
    pub b1: Point,
    pub c1: Point,
    pub d1: Point,
}

impl DivisionPoints {
    pub fn as_array(&self) -> [&Point; 4] {
        [&self.a1, &self.b1, &self.c1, &self.d1]
    }
}

/// Lines `AB₁, BC₁, CD₁, DA₁`, in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cevians {
    pub ab1: Line,
    pub bc1: Line,
    pub cd1: Line,
    pub da1: Line,
}

impl Cevians {
    pub fn as_array(&self) -> [&Line; 4] {
        [&self.ab1, &self.bc1, &self.cd1, &self.da1]
    }
}

/// The cevian pair whose intersection defines one inner vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CevianPair {
    /// `K = AB₁ ∩ DA₁`
    AbDa,
    /// `L = AB₁ ∩ BC₁`
    AbBc,
    /// `M = BC₁ ∩ CD₁`
    BcCd,
    /// `N = CD₁ ∩ DA₁`
    CdDa,
}

impl CevianPair {
    pub const ALL: [CevianPair; 4] = [
        CevianPair::AbDa,
        CevianPair::AbBc,
        CevianPair::BcCd,
        CevianPair::CdDa,
    ];

    pub fn vertex(self) -> char {
        match self {
            CevianPair::AbDa => 'K',
            CevianPair::AbBc => 'L',
            CevianPair::BcCd => 'M',
            CevianPair::CdDa => 'N',
        }
    }

    pub fn lines(self) -> (&'static str, &'static str) {
        match self {
            CevianPair::AbDa => ("AB₁", "DA₁"),
            CevianPair::AbBc => ("AB₁", "BC₁"),
            CevianPair::BcCd => ("BC₁", "CD₁"),
            CevianPair::CdDa => ("CD₁", "DA₁"),
        }
    }

    fn select(self, c: &Cevians) -> (&Line, &Line) {
        match self {
            CevianPair::AbDa => (&c.ab1, &c.da1),
            CevianPair::AbBc => (&c.ab1, &c.bc1),
            CevianPair::BcCd => (&c.bc1, &c.cd1),
            CevianPair::CdDa => (&c.cd1, &c.da1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerVertices {
    pub k: Point,
    pub l: Point,
    pub m: Point,
    pub n: Point,
}

impl InnerVertices {
    pub fn to_array(&self) -> [Point; 4] {
        [
            self.k.clone(),
            self.l.clone(),
            self.m.clone(),
            self.n.clone(),
        ]
    }

    /// Unsigned shoelace area of `K, L, M, N` in that cyclic order.
    pub fn area(&self) -> Rational {
        signed_area(&self.to_array()).abs()
    }

    /// No pair of opposite edges (`KL`/`MN`, `LM`/`NK`) crosses properly.
    /// Repeated vertices, as in the `M = N` triangle case, count as simple.
    pub fn is_simple(&self) -> bool {
        !proper_crossing(&self.k, &self.l, &self.m, &self.n)
            && !proper_crossing(&self.l, &self.m, &self.n, &self.k)
    }
}

fn proper_crossing(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    let d1 = orientation(p1, p2, q1).sign();
    let d2 = orientation(p1, p2, q2).sign();
    let d3 = orientation(q1, q2, p1).sign();
    let d4 = orientation(q1, q2, p2).sign();
    d1 * d2 < 0 && d3 * d4 < 0
}

pub fn division_points(quad: &Quadrilateral, k: &KParam) -> DivisionPoints {
    let t = k.fraction();
    let v = quad.vertices();
    DivisionPoints {
        a1: v[0].lerp(&v[1], &t),
        b1: v[1].lerp(&v[2], &t),
        c1: v[2].lerp(&v[3], &t),
        d1: v[3].lerp(&v[0], &t),
    }
}

pub fn cevian_lines(quad: &Quadrilateral, k: &KParam) -> Result<Cevians, CrosscutError> {
    let d = division_points(quad, k);
    cevians_from(quad, &d)
}

fn cevians_from(quad: &Quadrilateral, d: &DivisionPoints) -> Result<Cevians, CrosscutError> {
    let v = quad.vertices();
    let through = |vertex: &Point, target: &Point, names: (char, char)| {
        line_through(vertex, target).map_err(|_| CrosscutError::CoincidentCevian(names.0, names.1))
    };
    Ok(Cevians {
        ab1: through(&v[0], &d.b1, ('A', 'B'))?,
        bc1: through(&v[1], &d.c1, ('B', 'C'))?,
        cd1: through(&v[2], &d.d1, ('C', 'D'))?,
        da1: through(&v[3], &d.a1, ('D', 'A'))?,
    })
}

/// `K = AB₁ ∩ DA₁, L = AB₁ ∩ BC₁, M = BC₁ ∩ CD₁, N = CD₁ ∩ DA₁`.
pub fn inner_vertices(lines: &Cevians) -> Result<InnerVertices, CrosscutError> {
    let meet = |pair: CevianPair| {
        let (l1, l2) = pair.select(lines);
        intersect_lines(l1, l2).map_err(|_| CrosscutError::ParallelPair(pair))
    };
    Ok(InnerVertices {
        k: meet(CevianPair::AbDa)?,
        l: meet(CevianPair::AbBc)?,
        m: meet(CevianPair::BcCd)?,
        n: meet(CevianPair::CdDa)?,
    })
}

/// Closed-form coordinates of `K, L, M, N` in the canonical frame, evaluated
/// directly from their rational expressions in `(a, b, k)`.
pub fn closed_form_inner_vertices(
    params: &CanonicalParams,
    k: &KParam,
) -> Result<InnerVertices, CrosscutError> {
    let a = &params.a;
    let b = &params.b;
    let k = k.value();
    let one = int(1);
    let k2 = k * k;
    let point = |name: char, x: Rational, y: Rational, den: Rational| {
        if den.is_zero() {
            Err(CrosscutError::ZeroDenominator(name))
        } else {
            Ok(Point::new(x / &den, y / &den))
        }
    };

    let bk1 = b * k + &one;
    let k_den = a * &k2 + b * &k2 + b * k + k + &one;
    let kv = point('K', a * &k2, k * &bk1, k_den)?;

    let l_den = a * &k2 + b * &k2 + a * k + k + a;
    let lv = point('L', a * k * (a + k), &bk1 * (a + k), l_den)?;

    let m_x = a * &k2 + a * a * k + a * k + b * k - k + a * a + a * b - a;
    let m_y = b * (&k2 + a * k + a + b - &one);
    let m_den = a * &k2 + b * &k2 + int(2) * a * k + b * k - k + a + b - &one;
    let mv = point('M', m_x, m_y, m_den)?;

    let n_x = a * &k2 + a * k + b * k - k + b;
    let n_den = a * &k2 + b * &k2 + a * k + int(2) * b * k - k + b;
    let nv = point('N', n_x, b * &k2, n_den)?;

    Ok(InnerVertices {
        k: kv,
        l: lv,
        m: mv,
        n: nv,
    })
}

/// `s` in the canonical frame via `2s = 2S_ΔANM + 2S_ΔAML − 2S_ΔANK` with
/// `A` at the origin.
pub fn decomposition_area(inner: &InnerVertices) -> Rational {
    let det = |p: &Point, q: &Point| &p.x * &q.y - &p.y * &q.x;
    let twice = det(&inner.n, &inner.m) + det(&inner.m, &inner.l) - det(&inner.n, &inner.k);
    twice / int(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscutFigure {
    pub quad: Quadrilateral,
    pub k: KParam,
    pub division_points: DivisionPoints,
    pub lines: Cevians,
    pub inner: InnerVertices,
    /// Area `S` of `ABCD`.
    pub outer_area: Rational,
    /// Area `s` of `KLMN`.
    pub inner_area: Rational,
    pub ratio: Rational,
    /// Every inner vertex lies in the closed quadrilateral `ABCD`.
    pub inner_inside: bool,
    pub inner_simple: bool,
}

pub fn crosscut_figure(quad: &Quadrilateral, k: &KParam) -> Result<CrosscutFigure, CrosscutError> {
    let division_points = division_points(quad, k);
    let lines = cevians_from(quad, &division_points)?;
    let inner = inner_vertices(&lines)?;
    let outer_area = quad.area();
    if outer_area.is_zero() {
        return Err(GeometryError::ZeroArea.into());
    }
    let inner_area = inner.area();
    let ratio = &inner_area / &outer_area;
    let inner_inside = [&inner.k, &inner.l, &inner.m, &inner.n]
        .into_iter()
        .all(|p| quad.contains(p));
    let inner_simple = inner.is_simple();
    Ok(CrosscutFigure {
        quad: quad.clone(),
        k: k.clone(),
        division_points,
        lines,
        inner,
        outer_area,
        inner_area,
        ratio,
        inner_inside,
        inner_simple,
    })
}

/// `s/S` for the canonical quadrilateral of `params`.
pub fn canonical_ratio(params: &CanonicalParams, k: &KParam) -> Result<Rational, CrosscutError> {
    Ok(crosscut_figure(&params.quadrilateral(), k)?.ratio)
}

/// Sharp bounds `(1/((k+1)(k²+k+1)), 1/(2k²+2k+1))` on `s/S` for `k > 0`.
pub fn sharp_bounds(k: &Rational) -> Result<(Rational, Rational), CrosscutError> {
    if !k.is_positive() {
        return Err(CrosscutError::Domain(k.clone(), "k > 0"));
    }
    let one = int(1);
    let k2 = k * k;
    let lower = &one / ((k + &one) * (&k2 + k + &one));
    let upper = &one / (int(2) * &k2 + int(2) * k + &one);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{canonicalize, AffineMap};
    use crate::rational::rat;

    fn k_of(n: i64, d: i64) -> KParam {
        KParam::from_any(rat(n, d)).unwrap()
    }

    fn canonical(a: (i64, i64), b: (i64, i64)) -> CanonicalParams {
        CanonicalParams::from_ratios(a, b).unwrap()
    }

    fn p(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    fn line(c: [i64; 3]) -> Line {
        Line::new(int(c[0]), int(c[1]), int(c[2])).unwrap()
    }

    #[test]
    fn kparam_domains() {
        assert!(KParam::from_segment_ratio(int(0)).is_err());
        assert!(KParam::from_segment_ratio(rat(1, 3)).is_ok());
        assert!(KParam::from_any(int(-1)).is_err());
        assert!(KParam::from_any(rat(-99, 100)).is_ok());
        assert!(KParam::from_any(int(0)).is_ok());
        assert_eq!(k_of(2, 1).fraction(), rat(2, 3));
    }

    #[test]
    fn division_points_square() {
        let q = canonical((1, 1), (1, 1)).quadrilateral();
        let d = division_points(&q, &k_of(1, 1));
        assert_eq!(d.a1, p((0, 1), (1, 2)));
        assert_eq!(d.b1, p((1, 2), (1, 1)));
        assert_eq!(d.c1, p((1, 1), (1, 2)));
        assert_eq!(d.d1, p((1, 2), (0, 1)));
    }

    #[test]
    fn division_points_match_canonical_forms() {
        let params = canonical((7, 3), (2, 5));
        let q = params.quadrilateral();
        let k = k_of(2, 1);
        let d = division_points(&q, &k);
        let kv = k.value();
        let k1 = kv + int(1);
        let (a, b) = (&params.a, &params.b);
        assert_eq!(d.a1, Point::new(int(0), kv / &k1));
        assert_eq!(d.a1, p((0, 1), (2, 3)));
        assert_eq!(d.b1, Point::new(a * kv / &k1, (int(1) + kv * b) / &k1));
        assert_eq!(d.c1, Point::new((a + kv) / &k1, b / &k1));
        assert_eq!(d.d1, Point::new(int(1) / &k1, int(0)));
    }

    #[test]
    fn k_zero_gives_vertices() {
        let q = canonical((2, 1), (1, 3)).quadrilateral();
        let d = division_points(&q, &k_of(0, 1));
        let v = q.vertices();
        assert_eq!(d.as_array(), [&v[0], &v[1], &v[2], &v[3]]);
        let lines = cevian_lines(&q, &k_of(0, 1)).unwrap();
        assert_eq!(lines.ab1, line_through(&v[0], &v[1]).unwrap());
        assert_eq!(lines.da1, line_through(&v[3], &v[0]).unwrap());
        let fig = crosscut_figure(&q, &k_of(0, 1)).unwrap();
        assert_eq!(fig.ratio, int(1));
        assert_eq!(fig.inner.to_array(), v.clone());
    }

    #[test]
    fn cevians_square() {
        let q = canonical((1, 1), (1, 1)).quadrilateral();
        let c = cevian_lines(&q, &k_of(1, 1)).unwrap();
        assert_eq!(c.ab1, line([2, -1, 0]));
        assert_eq!(c.da1, line([1, 2, -1]));
        assert_eq!(c.cd1, line([2, -1, -1]));
        assert_eq!(c.bc1, line([1, 2, -2]));
    }

    #[test]
    fn cevians_match_closed_form_coefficients() {
        let params = canonical((5, 2), (1, 3));
        let k = k_of(3, 2);
        let c = cevian_lines(&params.quadrilateral(), &k).unwrap();
        let (a, b, kv) = (&params.a, &params.b, k.value());
        let one = int(1);
        let k1 = kv + &one;
        let expect = |p: Rational, q: Rational, r: Rational| Line::new(p, q, r).unwrap();
        assert_eq!(c.da1, expect(kv.clone(), k1.clone(), -kv));
        assert_eq!(c.cd1, expect(&k1 * b, &one - a * &k1, -b));
        assert_eq!(c.ab1, expect(kv * b + &one, -(kv * a), int(0)));
        assert_eq!(c.bc1, expect(&k1 - b, a + kv, -(a + kv)));
    }

    #[test]
    fn cevian_degenerates_to_side() {
        let q = canonical((1, 1), (0, 1)).quadrilateral();
        let c = cevian_lines(&q, &k_of(1, 1)).unwrap();
        assert_eq!(c.cd1, line([0, 1, 0]));
    }

    #[test]
    fn coincident_cevian_is_reported() {
        // B between A and C; for k = -1/3 the point B₁ lands on A.
        let q = Quadrilateral::new([
            Point::from_ints(-1, 0),
            Point::from_ints(0, 0),
            Point::from_ints(2, 0),
            Point::from_ints(0, 2),
        ])
        .unwrap();
        assert_eq!(
            cevian_lines(&q, &k_of(-1, 3)),
            Err(CrosscutError::CoincidentCevian('A', 'B'))
        );
        assert!(cevian_lines(&q, &k_of(1, 1)).is_ok());
    }

    #[test]
    fn inner_vertices_examples() {
        let sq = canonical((1, 1), (1, 1)).quadrilateral();
        let iv = inner_vertices(&cevian_lines(&sq, &k_of(1, 1)).unwrap()).unwrap();
        assert_eq!(iv.k, p((1, 5), (2, 5)));
        assert_eq!(iv.l, p((2, 5), (4, 5)));
        assert_eq!(iv.m, p((4, 5), (3, 5)));
        assert_eq!(iv.n, p((3, 5), (1, 5)));

        let tri = canonical((1, 1), (0, 1)).quadrilateral();
        let iv = inner_vertices(&cevian_lines(&tri, &k_of(1, 1)).unwrap()).unwrap();
        assert_eq!(iv.k, p((1, 3), (1, 3)));
        assert_eq!(iv.l, p((1, 2), (1, 2)));
        assert_eq!(iv.m, Point::from_ints(1, 0));
        assert_eq!(iv.n, Point::from_ints(1, 0));

        let iv = inner_vertices(&cevian_lines(&sq, &k_of(-1, 2)).unwrap()).unwrap();
        assert_eq!(iv.k, p((1, 2), (-1, 2)));
        assert_eq!(iv.l, p((-1, 2), (1, 2)));
        assert_eq!(iv.m, p((1, 2), (3, 2)));
        assert_eq!(iv.n, p((3, 2), (1, 2)));
    }

    #[test]
    fn parallel_pair_is_identified() {
        let lines = Cevians {
            ab1: line([1, 0, 0]),
            bc1: line([0, 1, -1]),
            cd1: line([1, 0, -1]),
            da1: line([0, 1, 0]),
        };
        assert!(inner_vertices(&lines).is_ok());
        let lines = Cevians {
            bc1: line([1, 0, -3]),
            ..lines
        };
        assert_eq!(
            inner_vertices(&lines),
            Err(CrosscutError::ParallelPair(CevianPair::AbBc))
        );
    }

    #[test]
    fn closed_form_examples() {
        let iv = closed_form_inner_vertices(&canonical((1, 1), (1, 1)), &k_of(1, 1)).unwrap();
        assert_eq!(iv.k, p((1, 5), (2, 5)));
        assert_eq!(iv.l, p((2, 5), (4, 5)));
        let iv = closed_form_inner_vertices(&canonical((1, 1), (0, 1)), &k_of(1, 1)).unwrap();
        assert_eq!(iv.n, Point::from_ints(1, 0));
    }

    #[test]
    fn closed_form_zero_denominator() {
        // L's denominator ak² + bk² + ak + k + a vanishes at a = b = 0, k = 0
        // (outside Ω, but the evaluator itself only checks denominators).
        let params = CanonicalParams {
            a: int(0),
            b: int(0),
        };
        assert_eq!(
            closed_form_inner_vertices(&params, &k_of(0, 1)),
            Err(CrosscutError::ZeroDenominator('L'))
        );
    }

    #[test]
    fn figure_ratios() {
        let unit = Quadrilateral::new([
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(1, 1),
            Point::from_ints(0, 1),
        ])
        .unwrap();
        assert_eq!(
            crosscut_figure(&unit, &k_of(1, 1)).unwrap().ratio,
            rat(1, 5)
        );
        assert_eq!(
            crosscut_figure(&unit, &k_of(2, 1)).unwrap().ratio,
            rat(1, 13)
        );
        let neg = crosscut_figure(&unit, &k_of(-1, 2)).unwrap();
        assert_eq!(neg.ratio, int(2));
        assert!(!neg.inner_inside);
        assert!(neg.inner_simple);

        let fig = crosscut_figure(&canonical((1, 1), (0, 1)).quadrilateral(), &k_of(1, 1)).unwrap();
        assert_eq!(fig.ratio, rat(1, 6));
        assert!(fig.inner_inside && fig.inner_simple);
        assert_eq!(fig.inner.m, fig.inner.n);

        let fig = crosscut_figure(&canonical((2, 1), (1, 1)).quadrilateral(), &k_of(1, 1)).unwrap();
        assert_eq!(fig.ratio, rat(151, 756));
    }

    #[test]
    fn decomposition_matches_shoelace() {
        let params = canonical((2, 1), (1, 1));
        let fig = crosscut_figure(&params.quadrilateral(), &k_of(1, 1)).unwrap();
        assert_eq!(decomposition_area(&fig.inner), fig.inner_area);
    }

    #[test]
    fn bounds() {
        assert_eq!(sharp_bounds(&int(1)).unwrap(), (rat(1, 6), rat(1, 5)));
        assert_eq!(sharp_bounds(&int(2)).unwrap(), (rat(1, 21), rat(1, 13)));
        assert_eq!(sharp_bounds(&rat(1, 2)).unwrap(), (rat(8, 21), rat(2, 5)));
        assert!(matches!(
            sharp_bounds(&int(0)),
            Err(CrosscutError::Domain(..))
        ));
        assert!(sharp_bounds(&rat(-1, 2)).is_err());
    }

    #[test]
    fn figure_is_affine_invariant_under_reflection() {
        let q = canonical((3, 1), (1, 2)).quadrilateral();
        let map = AffineMap::new([[int(-2), int(1)], [int(3), rat(1, 2)]], [int(4), int(-7)]);
        let moved = q.transformed(&map).unwrap();
        let k = k_of(3, 4);
        assert_eq!(
            crosscut_figure(&q, &k).unwrap().ratio,
            crosscut_figure(&moved, &k).unwrap().ratio
        );
        assert_eq!(
            canonicalize(&moved).unwrap().params,
            canonical((3, 1), (1, 2))
        );
    }
}
