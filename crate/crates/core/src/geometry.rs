//! Exact planar primitives: points, lines, orientation, shoelace area,
//! weak convexity and the affine normalization that sends a quadrilateral
//! `ABCD` to `A(0,0), B(0,1), C(a,b), D(1,0)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("points coincide at {0}; a line needs two distinct points")]
    CoincidentPoints(Box<Point>),
    #[error("lines {} and {} are parallel", .0[0], .0[1])]
    ParallelLines(Box<[Line; 2]>),
    #[error("quadrilateral is not weakly convex")]
    NotConvex,
    #[error("quadrilateral has zero area")]
    ZeroArea,
    #[error("no cyclic relabeling gives A, B, D pairwise distinct and non-collinear")]
    DegenerateFrame,
    #[error("({}, {}) is outside Ω = {{a ≥ 0, b ≥ 0, a + b ≥ 1}}", .0[0], .0[1])]
    NotInOmega(Box<[Rational; 2]>),
    #[error("affine map is singular")]
    SingularMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    /// `self + t·(other − self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        let dx = &other.x - &self.x;
        let dy = &other.y - &self.y;
        &dx * &dx + &dy * &dy
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// `(q − p) × (r − p)`, twice the signed area of the triangle.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let c = cross(p, q, r);
    if c.is_zero() {
        Orientation::Collinear
    } else if c.is_positive() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Shoelace area, positive for counterclockwise order. Repeated vertices are
/// allowed and simply contribute nothing.
pub fn signed_area(polygon: &[Point]) -> Rational {
    assert!(polygon.len() >= 3, "polygon needs at least three vertices");
    let n = polygon.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let p = &polygon[i];
            let q = &polygon[(i + 1) % n];
            &p.x * &q.y - &q.x * &p.y
        })
        .sum();
    twice / int(2)
}

/// The locus `p·x + q·y + r = 0`, stored with integer coefficients of gcd 1
/// whose first nonzero entry is positive. Two lines are equal iff their
/// coefficient triples are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    p: Rational,
    q: Rational,
    r: Rational,
}

impl Line {
    /// Returns `None` when `(p, q) = (0, 0)`.
    pub fn new(p: Rational, q: Rational, r: Rational) -> Option<Line> {
        if p.is_zero() && q.is_zero() {
            return None;
        }
        let lcm = [&p, &q, &r]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = [&p, &q, &r]
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let leading = scaled
            .iter()
            .find(|c| !c.is_zero())
            .expect("p or q is nonzero");
        if leading.is_negative() {
            gcd = -gcd;
        }
        let mut coeffs = scaled.into_iter().map(|c| Rational::from_integer(c / &gcd));
        Some(Line {
            p: coeffs.next().unwrap(),
            q: coeffs.next().unwrap(),
            r: coeffs.next().unwrap(),
        })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn coefficients(&self) -> [&BigInt; 3] {
        [self.p.numer(), self.q.numer(), self.r.numer()]
    }

    /// `p·x + q·y + r`; zero exactly on the line.
    pub fn evaluate(&self, point: &Point) -> Rational {
        &self.p * &point.x + &self.q * &point.y + &self.r
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.evaluate(point).is_zero()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.p, self.q, self.r)
    }
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line, GeometryError> {
    if p == q {
        return Err(GeometryError::CoincidentPoints(Box::new(p.clone())));
    }
    let a = &p.y - &q.y;
    let b = &q.x - &p.x;
    let c = &p.x * &q.y - &q.x * &p.y;
    Ok(Line::new(a, b, c).expect("distinct points span a line"))
}

/// Unique common point of two non-parallel lines (Cramer's rule).
pub fn intersect_lines(l1: &Line, l2: &Line) -> Result<Point, GeometryError> {
    let det = &l1.p * &l2.q - &l2.p * &l1.q;
    if det.is_zero() {
        return Err(GeometryError::ParallelLines(Box::new([
            l1.clone(),
            l2.clone(),
        ])));
    }
    let x = (&l1.q * &l2.r - &l2.q * &l1.r) / &det;
    let y = (&l1.r * &l2.p - &l2.r * &l1.p) / &det;
    Ok(Point::new(x, y))
}

/// True iff the orientations of the four consecutive vertex triples never
/// take both signs. Collinear triples and repeated vertices are allowed.
pub fn is_weakly_convex(quad: &[Point; 4]) -> bool {
    let signs: Vec<i8> = (0..4)
        .map(|i| orientation(&quad[i], &quad[(i + 1) % 4], &quad[(i + 2) % 4]).sign())
        .collect();
    !(signs.contains(&1) && signs.contains(&-1))
}

/// Sign of the (nonzero) orientation of a weakly convex polygon, or 0.
fn winding_sign(polygon: &[Point; 4]) -> i8 {
    (0..4)
        .map(|i| orientation(&polygon[i], &polygon[(i + 1) % 4], &polygon[(i + 2) % 4]).sign())
        .find(|s| *s != 0)
        .unwrap_or(0)
}

/// `x ↦ M·x + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub matrix: [[Rational; 2]; 2],
    pub translation: [Rational; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            matrix: [[int(1), int(0)], [int(0), int(1)]],
            translation: [int(0), int(0)],
        }
    }

    pub fn new(matrix: [[Rational; 2]; 2], translation: [Rational; 2]) -> Self {
        AffineMap {
            matrix,
            translation,
        }
    }

    pub fn determinant(&self) -> Rational {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn apply(&self, point: &Point) -> Point {
        let m = &self.matrix;
        let t = &self.translation;
        Point::new(
            &m[0][0] * &point.x + &m[0][1] * &point.y + &t[0],
            &m[1][0] * &point.x + &m[1][1] * &point.y + &t[1],
        )
    }

    pub fn inverse(&self) -> Result<AffineMap, GeometryError> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(GeometryError::SingularMap);
        }
        let m = &self.matrix;
        let inv = [
            [&m[1][1] / &det, -(&m[0][1] / &det)],
            [-(&m[1][0] / &det), &m[0][0] / &det],
        ];
        let t = &self.translation;
        let translation = [
            -(&inv[0][0] * &t[0] + &inv[0][1] * &t[1]),
            -(&inv[1][0] * &t[0] + &inv[1][1] * &t[1]),
        ];
        Ok(AffineMap::new(inv, translation))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let a = &self.matrix;
        let b = &other.matrix;
        let mut matrix: [[Rational; 2]; 2] = Default::default();
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
            }
        }
        let moved = self.apply(&Point::new(
            other.translation[0].clone(),
            other.translation[1].clone(),
        ));
        AffineMap::new(matrix, [moved.x, moved.y])
    }
}

/// A point `(a, b)` of `Ω = {a ≥ 0, b ≥ 0, a + b ≥ 1}`: the canonical
/// position of vertex `C` once `A, B, D` sit at `(0,0), (0,1), (1,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct CanonicalParams {
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
}

impl CanonicalParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self, GeometryError> {
        if in_omega(&a, &b) {
            Ok(CanonicalParams { a, b })
        } else {
            Err(GeometryError::NotInOmega(Box::new([a, b])))
        }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self, GeometryError> {
        use crate::rational::rat;
        CanonicalParams::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    /// The canonical quadrilateral `A(0,0), B(0,1), C(a,b), D(1,0)`.
    pub fn quadrilateral(&self) -> Quadrilateral {
        Quadrilateral::new([
            Point::from_ints(0, 0),
            Point::from_ints(0, 1),
            Point::new(self.a.clone(), self.b.clone()),
            Point::from_ints(1, 0),
        ])
        .expect("every point of Ω gives a valid canonical quadrilateral")
    }
}

impl fmt::Display for CanonicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

pub fn in_omega(a: &Rational, b: &Rational) -> bool {
    !a.is_negative() && !b.is_negative() && a + b >= int(1)
}

/// Vertices `A, B, C, D` of a weakly convex quadrilateral with positive area.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadrilateral {
    vertices: [Point; 4],
}

/// Result of [`canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFrame {
    pub params: CanonicalParams,
    /// Sends the relabeled `A, B, D` to `(0,0), (0,1), (1,0)`.
    pub to_canonical: AffineMap,
    /// Inverse of `to_canonical`; pulls canonical figures back.
    pub from_canonical: AffineMap,
    /// Index of the input vertex used as `A`; labels are rotated cyclically.
    pub rotation: usize,
}

impl Quadrilateral {
    pub fn new(vertices: [Point; 4]) -> Result<Self, GeometryError> {
        if !is_weakly_convex(&vertices) {
            return Err(GeometryError::NotConvex);
        }
        if signed_area(&vertices).is_zero() {
            return Err(GeometryError::ZeroArea);
        }
        Ok(Quadrilateral { vertices })
    }

    pub fn vertices(&self) -> &[Point; 4] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % 4]
    }

    /// Unsigned area `S`.
    pub fn area(&self) -> Rational {
        signed_area(&self.vertices).abs()
    }

    /// The image of every vertex; `None` if the map is singular.
    pub fn transformed(&self, map: &AffineMap) -> Option<Quadrilateral> {
        if map.determinant().is_zero() {
            return None;
        }
        let v = &self.vertices;
        Some(Quadrilateral {
            vertices: [
                map.apply(&v[0]),
                map.apply(&v[1]),
                map.apply(&v[2]),
                map.apply(&v[3]),
            ],
        })
    }

    /// Weak containment: `point` is on the boundary or inside.
    pub fn contains(&self, point: &Point) -> bool {
        let winding = winding_sign(&self.vertices);
        (0..4).all(|i| {
            let s = orientation(self.vertex(i), self.vertex(i + 1), point).sign();
            s == 0 || s == winding
        })
    }
}

/// Finds the affine frame taking `A, B, D` to `(0,0), (0,1), (1,0)`.
///
/// Rotations `ABCD`, `BCDA`, `CDAB`, `DABC` are tried in order; the first
/// with `A, B, D` non-collinear wins. The map may reverse orientation.
pub fn canonicalize(quad: &Quadrilateral) -> Result<CanonicalFrame, GeometryError> {
    for rotation in 0..4 {
        let a = quad.vertex(rotation);
        let b = quad.vertex(rotation + 1);
        let c = quad.vertex(rotation + 2);
        let d = quad.vertex(rotation + 3);
        if orientation(a, b, d) == Orientation::Collinear {
            continue;
        }
        // canonical (x, y) ↦ A + x·(D − A) + y·(B − A)
        let from_canonical = AffineMap::new(
            [[&d.x - &a.x, &b.x - &a.x], [&d.y - &a.y, &b.y - &a.y]],
            [a.x.clone(), a.y.clone()],
        );
        let to_canonical = from_canonical.inverse()?;
        let image = to_canonical.apply(c);
        let params = CanonicalParams::new(image.x, image.y)?;
        return Ok(CanonicalFrame {
            params,
            to_canonical,
            from_canonical,
            rotation,
        });
    }
    Err(GeometryError::DegenerateFrame)
}
