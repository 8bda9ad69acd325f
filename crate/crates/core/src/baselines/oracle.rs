//! Linear scan over every vertex and edge.

use crate::clip::{clamp_unit, ClipResult, Mode};
use crate::geom::{classify_banded, ConvexPolygon, GeomError, ImplicitLine, Point2, SignClass};
use crate::scalar::Scalar;

/// Ground-truth clipper.
///
/// Every edge whose endpoints lie strictly on opposite sides contributes its
/// crossing parameter, every vertex inside the zero band contributes the
/// parameter of its projection onto the line. The result spans all
/// contributions, so a vertex contact becomes `Cross(t, t)` and a line
/// containing an edge reports that edge's span.
pub fn oracle_clip(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    mode: Mode,
) -> Result<ClipResult, GeomError> {
    ImplicitLine::through(a, b)?;
    Ok(clip_in(poly, a.lift::<f64>(()), b.lift::<f64>(()), mode))
}

/// True if some vertex lies within the zero band of `line`.
pub fn is_degenerate(poly: &ConvexPolygon, line: &ImplicitLine) -> bool {
    let eps = poly.zero_band(line);
    poly.vertices().iter().any(|&v| line.eval(v).abs() <= eps)
}

pub(crate) fn clip_in<S: Scalar>(
    poly: &ConvexPolygon,
    a: Point2<S>,
    b: Point2<S>,
    mode: Mode,
) -> ClipResult {
    let line = ImplicitLine::through_unchecked(a, b);
    let iv = line_core(poly, &line);
    ClipResult::from_interval(match mode {
        Mode::Line => iv,
        Mode::Segment => clamp_unit(iv),
    })
}

pub(crate) fn line_core<S: Scalar>(poly: &ConvexPolygon, line: &ImplicitLine<S>) -> Option<(S, S)> {
    let ctx = line.a.ctx();
    let (eps, neg_eps) = poly.zero_band_for(line);
    let n = poly.len();
    let eval = |v: Point2<S>| {
        let f = line.eval(v).store();
        (f, classify_banded(f, eps, neg_eps))
    };

    let mut span: Option<(S, S)> = None;
    let mut include = |t: S| {
        span = Some(match span {
            None => (t, t),
            Some((lo, hi)) => (if t < lo { t } else { lo }, if t > hi { t } else { hi }),
        });
    };

    let v0 = poly.vertex(0).lift(ctx);
    let (f0, c0) = eval(v0);
    let (mut vp, mut fp, mut cp) = (v0, f0, c0);
    for l in 0..n {
        if cp == SignClass::Zero {
            include(line.projection_param(vp));
        }
        let (vn, fnext, cn) = if l + 1 == n {
            (v0, f0, c0)
        } else {
            let v = poly.vertex(l + 1).lift(ctx);
            let (f, c) = eval(v);
            (v, f, c)
        };
        if cp.opposite(cn) {
            include(line.crossing_param(vp, vn, fp, fnext));
        }
        (vp, fp, cp) = (vn, fnext, cn);
    }
    span
}
