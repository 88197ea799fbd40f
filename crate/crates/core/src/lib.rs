//! Exact rational construction of the crosscut quadrilateral of a convex
//! quadrilateral, its area ratio, and machine checks of the sharp bounds
//! `1/((k+1)(k²+k+1)) ≤ s/S ≤ 1/(2k²+2k+1)`.
//!
//! Every quantity is a [`Rational`]; nothing in the computational path is
//! ever rounded. Floating point only appears when rendering SVG figures.

pub mod cli;
pub mod crosscut;
pub mod geometry;
pub mod par;
pub mod poly;
pub mod rational;
pub mod verify;

pub use crosscut::{CrosscutFigure, KParam};
pub use geometry::{AffineMap, CanonicalParams, Line, Point, Quadrilateral};
pub use poly::{MPoly, Monomial, RationalFn};
pub use rational::Rational;
