//! Points, implicit lines, the separation function and convex windows.
//!
//! A line through `x_A` and `x_B` is kept in two forms at once: the implicit
//! form `F(x) = A·x + B·y + C` (whose sign says which side of the line a point
//! is on) and the parametric form `x(t) = x_A + t·(x_B − x_A)`. Clippers decide
//! with `F` and report results as `t` values.
//!
//! Orientation: `F > 0` on the left of the directed line `x_A → x_B`.

use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

/// Relative width of the band in which `F` is treated as zero.
///
/// The absolute band for a (line, window) pair is
/// `ZERO_BAND · √(A² + B²) · diameter`, i.e. a displacement of `1e-12` window
/// diameters.
pub const ZERO_BAND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("line endpoints coincide")]
    DegenerateLine,
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} repeats its predecessor")]
    DuplicateVertex { index: usize },
    #[error("polygon is not strictly convex and anti-clockwise at vertex {index}")]
    NotStrictlyConvex { index: usize },
    #[error("edge does not properly cross the line")]
    NonCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<S = f64> {
    pub x: S,
    pub y: S,
}

impl Point2<f64> {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline(always)]
    pub fn lift<S: Scalar>(self, ctx: S::Ctx) -> Point2<S> {
        Point2 {
            x: S::lift(ctx, self.x),
            y: S::lift(ctx, self.y),
        }
    }
}

impl<S: Scalar> Point2<S> {
    /// z-component of the 2D cross product.
    #[inline(always)]
    pub fn cross(self, o: Self) -> S {
        self.x * o.y - self.y * o.x
    }

    #[inline(always)]
    pub fn dot(self, o: Self) -> S {
        self.x * o.x + self.y * o.y
    }

    #[inline(always)]
    pub fn get(self) -> Point2 {
        Point2::new(self.x.get(), self.y.get())
    }
}

impl<S: Scalar> Add for Point2<S> {
    type Output = Self;
    #[inline(always)]
    fn add(self, o: Self) -> Self {
        Point2 {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl<S: Scalar> Sub for Point2<S> {
    type Output = Self;
    #[inline(always)]
    fn sub(self, o: Self) -> Self {
        Point2 {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
}

impl<S: Scalar> Mul<S> for Point2<S> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, s: S) -> Self {
        Point2 {
            x: self.x * s,
            y: self.y * s,
        }
    }
}

/// Orientation of `r` relative to the directed line `p → q`; positive when
/// `r` is on the left.
#[inline(always)]
pub fn orient<S: Scalar>(p: Point2<S>, q: Point2<S>, r: Point2<S>) -> S {
    (q - p).cross(r - p)
}

/// Three-way sign of a value after applying a zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignClass {
    Neg,
    Zero,
    Pos,
}

impl SignClass {
    /// True for `(Neg, Pos)` and `(Pos, Neg)`.
    #[inline(always)]
    pub fn opposite(self, other: SignClass) -> bool {
        matches!(
            (self, other),
            (SignClass::Neg, SignClass::Pos) | (SignClass::Pos, SignClass::Neg)
        )
    }
}

/// `Zero` iff `|value| ≤ eps_abs`, otherwise the sign of `value`.
pub fn classify_sign(value: f64, eps_abs: f64) -> SignClass {
    debug_assert!(eps_abs >= 0.0);
    if value > eps_abs {
        SignClass::Pos
    } else if value < -eps_abs {
        SignClass::Neg
    } else {
        SignClass::Zero
    }
}

/// Same test as [`classify_sign`] with the band pre-negated, so an
/// instrumented run pays at most two comparisons.
#[inline(always)]
pub(crate) fn classify_banded<S: Scalar>(value: S, eps: S, neg_eps: S) -> SignClass {
    if value > eps {
        SignClass::Pos
    } else if value < neg_eps {
        SignClass::Neg
    } else {
        SignClass::Zero
    }
}

/// A line in implicit form `A·x + B·y + C = 0` together with the parametric
/// frame `base + t·dir` used to report results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitLine<S = f64> {
    pub a: S,
    pub b: S,
    pub c: S,
    /// The point at `t = 0`.
    pub base: Point2<S>,
    /// Displacement from `t = 0` to `t = 1`.
    pub dir: Point2<S>,
}

impl ImplicitLine<f64> {
    /// The oriented line from `a` (`t = 0`) to `b` (`t = 1`).
    pub fn through(a: Point2, b: Point2) -> Result<Self, GeomError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if a == b {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Self::through_unchecked(a, b))
    }

    /// A line given by its coefficients. The parametric frame starts at the
    /// foot of the perpendicular from the origin and runs along `(B, −A)`.
    pub fn from_coefficients(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if a == 0.0 && b == 0.0 {
            return Err(GeomError::DegenerateLine);
        }
        let nn = a * a + b * b;
        Ok(Self {
            a,
            b,
            c,
            base: Point2::new(-c * a / nn, -c * b / nn),
            dir: Point2::new(b, -a),
        })
    }

    /// `√(A² + B²)`.
    pub fn normal_norm(&self) -> f64 {
        self.a.hypot(self.b)
    }

    /// Oriented Euclidean distance of `p` from the line.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.eval(p) / self.normal_norm()
    }

    /// Parameter `t` at which this line crosses the edge `xi → xj`.
    ///
    /// The edge must properly cross the line: `F(xi)·F(xj) < 0`.
    pub fn edge_intersection_param(&self, xi: Point2, xj: Point2) -> Result<f64, GeomError> {
        let fi = self.eval(xi);
        let fj = self.eval(xj);
        if fi * fj >= 0.0 || fi.is_nan() || fj.is_nan() {
            return Err(GeomError::NonCrossing);
        }
        Ok(self.crossing_param(xi, xj, fi, fj))
    }

    #[inline(always)]
    pub fn lift<S: Scalar>(&self, ctx: S::Ctx) -> ImplicitLine<S> {
        ImplicitLine {
            a: S::lift(ctx, self.a),
            b: S::lift(ctx, self.b),
            c: S::lift(ctx, self.c),
            base: self.base.lift(ctx),
            dir: self.dir.lift(ctx),
        }
    }
}

impl<S: Scalar> ImplicitLine<S> {
    /// `A := y₁ − y₂; B := x₂ − x₁; C := x₁·y₂ − x₂·y₁`. No validation.
    #[inline(always)]
    pub(crate) fn through_unchecked(p: Point2<S>, q: Point2<S>) -> Self {
        let a = (p.y - q.y).store();
        let b = (q.x - p.x).store();
        let c = (p.x * q.y - q.x * p.y).store();
        Self {
            a,
            b,
            c,
            base: p,
            dir: Point2 { x: b, y: -a },
        }
    }

    /// The separation function `F(p) = A·x + B·y + C`.
    #[inline(always)]
    pub fn eval(&self, p: Point2<S>) -> S {
        self.a * p.x + self.b * p.y + self.c
    }

    /// `base + t·dir`.
    #[inline(always)]
    pub fn point_at(&self, t: S) -> Point2<S> {
        self.base + self.dir * t
    }

    /// Crossing parameter on edge `xi → xj` given both separation values.
    ///
    /// The crossing point is `xi + s·(xj − xi)` with `s = −F(xi)/(F(xj) − F(xi))`;
    /// `t` is then read off along the dominant axis of `dir`.
    #[inline(always)]
    pub(crate) fn crossing_param(&self, xi: Point2<S>, xj: Point2<S>, fi: S, fj: S) -> S {
        let s = -fi / (fj - fi);
        let p = xi + (xj - xi) * s;
        if self.dir.x.abs() >= self.dir.y.abs() {
            (p.x - self.base.x) / self.dir.x
        } else {
            (p.y - self.base.y) / self.dir.y
        }
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    #[inline(always)]
    pub(crate) fn projection_param(&self, p: Point2<S>) -> S {
        (p - self.base).dot(self.dir) / self.dir.dot(self.dir)
    }
}

/// Strictly convex, anti-clockwise window.
///
/// Vertices are stored without the repeated closing vertex; every index is
/// taken modulo `len()`, so vertex `n` is vertex `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    diameter: f64,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        for i in 0..n {
            if vertices[(i + 1) % n] == vertices[i] {
                return Err(GeomError::DuplicateVertex { index: (i + 1) % n });
            }
        }
        // Every turn strictly left, and the turns add up to one revolution
        // (rules out self-overlapping stars, whose turns are all left too).
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vertices[(i + 1) % n] - vertices[i];
            let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let cr = e0.cross(e1);
            if cr <= 0.0 {
                return Err(GeomError::NotStrictlyConvex { index: (i + 1) % n });
            }
            turning += cr.atan2(e0.dot(e1));
        }
        if turning > 3.0 * std::f64::consts::PI {
            return Err(GeomError::NotStrictlyConvex { index: 0 });
        }
        let mut diameter: f64 = 0.0;
        for (i, &p) in vertices.iter().enumerate() {
            for &q in &vertices[i + 1..] {
                diameter = diameter.max((q - p).norm());
            }
        }
        Ok(Self { vertices, diameter })
    }

    #[allow(clippy::len_without_is_empty)]
    #[inline(always)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex `i mod n`.
    #[inline(always)]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Vertex `i mod n` without a division for the indices searches use
    /// (`i < 2n`).
    #[inline(always)]
    pub(crate) fn vertex_wrapped(&self, i: usize) -> Point2 {
        let n = self.vertices.len();
        if i < n {
            self.vertices[i]
        } else if i < 2 * n {
            self.vertices[i - n]
        } else {
            self.vertices[i % n]
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute zero band for `F` of `line` against this window.
    #[inline]
    pub fn zero_band(&self, line: &ImplicitLine) -> f64 {
        ZERO_BAND * line.normal_norm() * self.diameter
    }

    /// Zero band for an instrumented line. Tolerance bookkeeping is not part
    /// of the measured arithmetic, so it is computed on plain values.
    #[inline]
    pub(crate) fn zero_band_for<S: Scalar>(&self, line: &ImplicitLine<S>) -> (S, S) {
        let eps = ZERO_BAND * line.a.get().hypot(line.b.get()) * self.diameter;
        let ctx = line.a.ctx();
        (S::lift(ctx, eps), S::lift(ctx, -eps))
    }

    /// O(n) containment test with a band of `eps` window diameters; boundary
    /// points count as inside.
    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let a = self.vertex(i);
            let b = self.vertex(i + 1);
            orient(a, b, p) >= -eps * (b - a).norm() * self.diameter
        })
    }

    /// Applies `p ↦ R·p + t` to every vertex, with `R` the rotation by `angle`.
    pub fn rigid_motion(&self, angle: f64, t: Point2) -> Result<Self, GeomError> {
        Self::new(
            self.vertices
                .iter()
                .map(|&p| rotate(p, angle) + t)
                .collect(),
        )
    }
}

/// Rotation about the origin.
pub fn rotate(p: Point2, angle: f64) -> Point2 {
    let (s, c) = angle.sin_cos();
    Point2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap()
    }

    #[test]
    fn line_through_coefficients() {
        let l = ImplicitLine::through(p(0., 0.), p(1., 0.)).unwrap();
        assert_eq!((l.a, l.b, l.c), (0., 1., 0.));
        let l = ImplicitLine::through(p(-1., 0.5), p(2., 0.5)).unwrap();
        assert_eq!((l.a, l.b, l.c), (0., 3., -1.5));
        assert_eq!(l.dir, p(3., 0.));
        assert_eq!(
            ImplicitLine::through(p(0., 0.), p(0., 0.)),
            Err(GeomError::DegenerateLine)
        );
        assert_eq!(
            ImplicitLine::through(p(f64::NAN, 0.), p(0., 0.)),
            Err(GeomError::NonFinite)
        );
    }

    #[test]
    fn eval_separation_function() {
        let l = ImplicitLine::from_coefficients(0., 1., 0.).unwrap();
        assert_eq!(l.eval(p(3., 2.)), 2.);
        let l = ImplicitLine::from_coefficients(0., 3., -1.5).unwrap();
        assert_eq!(l.eval(p(1., 1.)), 1.5);
        let u = p(0., 0.);
        let v = p(0., 1.);
        let mid = u + (v - u) * 0.5;
        assert_eq!(l.eval(mid), 0.5 * (l.eval(v) - l.eval(u)) + l.eval(u));
        assert_eq!(l.eval(mid), 0.);
    }

    #[test]
    fn signed_distance_orientation() {
        let l = ImplicitLine::through(p(0., 0.), p(1., 0.)).unwrap();
        assert_eq!(l.signed_distance(p(0., 1.)), 1.0);
        let r = ImplicitLine::through(p(1., 0.), p(0., 0.)).unwrap();
        assert_eq!(r.signed_distance(p(0., 1.)), -1.0);
        let l = ImplicitLine::from_coefficients(3., 4., -5.).unwrap();
        assert_eq!(l.signed_distance(p(0., 0.)), -1.0);
    }

    #[test]
    fn sign_classes() {
        assert_eq!(classify_sign(1e-3, 1e-9), SignClass::Pos);
        assert_eq!(classify_sign(-1e-3, 1e-9), SignClass::Neg);
        assert_eq!(classify_sign(5e-10, 1e-9), SignClass::Zero);
        assert_eq!(classify_sign(-1e-9, 1e-9), SignClass::Zero);
        assert_eq!(classify_sign(0.0, 0.0), SignClass::Zero);
        assert!(SignClass::Neg.opposite(SignClass::Pos));
        assert!(!SignClass::Zero.opposite(SignClass::Pos));
    }

    #[test]
    fn edge_params() {
        let l = ImplicitLine::through(p(-1., 0.5), p(2., 0.5)).unwrap();
        let t = l.edge_intersection_param(p(1., 0.), p(1., 1.)).unwrap();
        assert!((t - 2. / 3.).abs() < 1e-15);
        let t = l.edge_intersection_param(p(0., 1.), p(0., 0.)).unwrap();
        assert!((t - 1. / 3.).abs() < 1e-15);
        let l = ImplicitLine::through(p(0., 0.), p(1., 0.)).unwrap();
        assert_eq!(
            l.edge_intersection_param(p(2., 1.), p(3., 1.)),
            Err(GeomError::NonCrossing)
        );
        // touching at an endpoint is not a proper crossing
        assert_eq!(
            l.edge_intersection_param(p(2., 0.), p(3., 1.)),
            Err(GeomError::NonCrossing)
        );
    }

    #[test]
    fn point_at_frame() {
        let l = ImplicitLine::through(p(-1., 0.5), p(2., 0.5)).unwrap();
        let q = l.point_at(1. / 3.);
        assert!((q.x - 0.).abs() < 1e-15 && q.y == 0.5);
        assert_eq!(l.point_at(0.), p(-1., 0.5));
        assert_eq!(l.point_at(1.), p(2., 0.5));
    }

    #[test]
    fn coefficient_frame_lies_on_line() {
        let l = ImplicitLine::from_coefficients(3., 4., -5.).unwrap();
        for t in [-2., 0., 0.5, 7.] {
            assert!(l.eval(l.point_at(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn polygon_validation() {
        let sq = unit_square();
        assert_eq!(sq.len(), 4);
        assert!((sq.diameter() - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(0., 1.), p(1., 1.), p(1., 0.)]),
            Err(GeomError::NotStrictlyConvex { .. })
        ));
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(2., 0.), p(1., 1.)]),
            Err(GeomError::NotStrictlyConvex { .. })
        ));
        assert_eq!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.)]),
            Err(GeomError::TooFewVertices(2))
        );
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 0.), p(0., 1.)]),
            Err(GeomError::DuplicateVertex { .. })
        ));
        assert_eq!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., f64::INFINITY), p(0., 1.)]),
            Err(GeomError::NonFinite)
        );
    }

    #[test]
    fn pentagram_rejected() {
        // {5/2} star: every turn is left but the boundary winds twice.
        let star: Vec<_> = (0..5)
            .map(|k| {
                let a = std::f64::consts::TAU * (2 * k) as f64 / 5.0;
                p(a.cos(), a.sin())
            })
            .collect();
        assert!(matches!(
            ConvexPolygon::new(star),
            Err(GeomError::NotStrictlyConvex { .. })
        ));
    }

    #[test]
    fn vertex_index_wraps() {
        let sq = unit_square();
        assert_eq!(sq.vertex(4), sq.vertex(0));
        assert_eq!(sq.vertex(9), sq.vertex(1));
    }

    #[test]
    fn containment() {
        let sq = unit_square();
        assert!(sq.contains(p(0.5, 0.5), 0.));
        assert!(sq.contains(p(1.0, 0.5), 0.));
        assert!(!sq.contains(p(1.5, 0.5), 1e-12));
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| p(x, y))
    }

    fn inscribed(n: usize, angles: &[f64], r: f64) -> Vec<Point2> {
        let mut a: Vec<f64> = angles[..n].to_vec();
        a.sort_by(f64::total_cmp);
        a.into_iter().map(|t| p(r * t.cos(), r * t.sin())).collect()
    }

    proptest! {
        #[test]
        fn f_is_affine(u in arb_point(), v in arb_point(), a in arb_point(), b in arb_point(), s in 0.0..=1.0f64) {
            prop_assume!(a != b);
            let l = ImplicitLine::through(a, b).unwrap();
            let w = u + (v - u) * s;
            let lhs = l.eval(w);
            let rhs = (1.0 - s) * l.eval(u) + s * l.eval(v);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (l.eval(u).abs() + l.eval(v).abs() + 1.0));
        }

        #[test]
        fn distance_matches_f(q in arb_point(), a in arb_point(), b in arb_point()) {
            prop_assume!(a != b);
            let l = ImplicitLine::through(a, b).unwrap();
            let lhs = l.signed_distance(q) * l.normal_norm();
            let f = l.eval(q);
            prop_assert!((lhs - f).abs() <= 1e-12 * f.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn endpoints_annihilate(a in arb_point(), b in arb_point()) {
            prop_assume!(a != b);
            let l = ImplicitLine::through(a, b).unwrap();
            let scale = (l.a.abs() + l.b.abs()) * (a.norm() + b.norm()) + l.c.abs();
            prop_assert!(l.eval(a).abs() <= 1e-12 * scale);
            prop_assert!(l.eval(b).abs() <= 1e-12 * scale);
        }

        #[test]
        fn crossing_round_trip(a in arb_point(), b in arb_point(), xi in arb_point(), xj in arb_point()) {
            prop_assume!(a != b);
            let l = ImplicitLine::through(a, b).unwrap();
            let (fi, fj) = (l.eval(xi), l.eval(xj));
            prop_assume!(fi * fj < 0.0);
            let t = l.edge_intersection_param(xi, xj).unwrap();
            let q = l.point_at(t);
            let scale = (l.a.abs() + l.b.abs()) * (q.norm() + xi.norm() + xj.norm() + 1.0) + l.c.abs();
            prop_assert!(l.eval(q).abs() <= 1e-9 * scale);
        }

        #[test]
        fn acceptance_invariant_under_rotation(
            n in 3usize..12,
            angles in prop::collection::vec(0.0..std::f64::consts::TAU, 12),
            shift in 0usize..12,
            flip in any::<bool>(),
        ) {
            let mut vs = inscribed(n, &angles, 1.0);
            if flip {
                vs.reverse();
            }
            let ok = ConvexPolygon::new(vs.clone()).is_ok();
            vs.rotate_left(shift % n);
            prop_assert_eq!(ConvexPolygon::new(vs).is_ok(), ok);
        }
    }
}
