//! Symbolic re-run of the crosscut construction over `ℚ[a, b, k]`.
//!
//! Points and lines are carried in homogeneous coordinates so that joins
//! and meets are plain cross products and no polynomial division is ever
//! needed. Affine coordinates only appear at the end, as [`RationalFn`]s.

use super::{MPoly, RationalFn};

/// `(x : y : w)` with polynomial entries; affine point `(x/w, y/w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoint {
    pub x: MPoly,
    pub y: MPoly,
    pub w: MPoly,
}

impl HomogeneousPoint {
    fn affine(x: MPoly, y: MPoly) -> Self {
        HomogeneousPoint {
            x,
            y,
            w: MPoly::one(),
        }
    }

    fn cross(&self, other: &Self) -> Self {
        HomogeneousPoint {
            x: &(&self.y * &other.w) - &(&self.w * &other.y),
            y: &(&self.w * &other.x) - &(&self.x * &other.w),
            w: &(&self.x * &other.y) - &(&self.y * &other.x),
        }
    }

    pub fn x_fn(&self) -> RationalFn {
        RationalFn::new(self.x.clone(), self.w.clone())
    }

    pub fn y_fn(&self) -> RationalFn {
        RationalFn::new(self.y.clone(), self.w.clone())
    }
}

/// Every intermediate object of the symbolic construction in the frame
/// `A(0,0), B(0,1), C(a,b), D(1,0)`.
#[derive(Debug, Clone)]
pub struct SymbolicFigure {
    /// `A₁, B₁, C₁, D₁`.
    pub division_points: [HomogeneousPoint; 4],
    /// `AB₁, BC₁, CD₁, DA₁` as coefficient triples `(p, q, r)`.
    pub lines: [HomogeneousPoint; 4],
    /// `K, L, M, N`.
    pub inner: [HomogeneousPoint; 4],
    /// `2S_ΔANM`, `2S_ΔAML`, `2S_ΔANK`.
    pub twice_triangles: [RationalFn; 3],
    /// `s/S`.
    pub ratio: RationalFn,
}

pub fn derive_symbolic_figure() -> SymbolicFigure {
    let (a, b, k) = (MPoly::a(), MPoly::b(), MPoly::k());
    let vertices = [
        HomogeneousPoint::affine(MPoly::zero(), MPoly::zero()),
        HomogeneousPoint::affine(MPoly::zero(), MPoly::one()),
        HomogeneousPoint::affine(a.clone(), b.clone()),
        HomogeneousPoint::affine(MPoly::one(), MPoly::zero()),
    ];
    let k_plus_1 = &k + &MPoly::one();
    // X₁ = (X + k·next(X)) / (k + 1)
    let division_points: [HomogeneousPoint; 4] = std::array::from_fn(|i| {
        let x = &vertices[i];
        let y = &vertices[(i + 1) % 4];
        HomogeneousPoint {
            x: &x.x + &(&k * &y.x),
            y: &x.y + &(&k * &y.y),
            w: k_plus_1.clone(),
        }
    });
    // AB₁, BC₁, CD₁, DA₁
    let lines: [HomogeneousPoint; 4] =
        std::array::from_fn(|i| vertices[i].cross(&division_points[(i + 1) % 4]));
    let [ab1, bc1, cd1, da1] = &lines;
    let inner = [
        ab1.cross(da1),
        ab1.cross(bc1),
        bc1.cross(cd1),
        cd1.cross(da1),
    ];
    let [kp, lp, mp, np] = &inner;

    // twice the signed area of the triangle (origin, p, q)
    let twice_triangle = |p: &HomogeneousPoint, q: &HomogeneousPoint| {
        RationalFn::new(&(&p.x * &q.y) - &(&p.y * &q.x), &p.w * &q.w)
    };
    let anm = twice_triangle(np, mp);
    let aml = twice_triangle(mp, lp);
    let ank = twice_triangle(np, kp);
    let twice_s = &(&anm + &aml) - &ank;
    let twice_outer = RationalFn::from_poly(&a + &b);
    let ratio = &twice_s / &twice_outer;

    SymbolicFigure {
        division_points,
        lines,
        inner,
        twice_triangles: [anm, aml, ank],
        ratio,
    }
}

/// `s/S` as a rational function of `(a, b, k)`, built from the construction
/// alone (it never consults `P` or `Q`).
pub fn derive_ratio_symbolic() -> RationalFn {
    derive_symbolic_figure().ratio
}
