//! Classical parametric clipping against every edge.

use crate::clip::{ClipResult, Mode};
use crate::geom::{ConvexPolygon, GeomError, ImplicitLine, Point2};
use crate::scalar::Scalar;

/// Clips against each edge's inner half-plane in turn, narrowing
/// `[t_min, t_max]`. Linear in the number of edges.
pub fn cyrus_beck_clip(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    mode: Mode,
) -> Result<ClipResult, GeomError> {
    ImplicitLine::through(a, b)?;
    Ok(clip_in(poly, a.lift::<f64>(()), b.lift::<f64>(()), mode))
}

pub(crate) fn clip_in<S: Scalar>(
    poly: &ConvexPolygon,
    a: Point2<S>,
    b: Point2<S>,
    mode: Mode,
) -> ClipResult {
    let ctx = a.x.ctx();
    let zero = S::lift(ctx, 0.0);
    let dir = (b - a).store_point();
    let (mut t_min, mut t_max) = match mode {
        Mode::Line => (S::lift(ctx, f64::NEG_INFINITY), S::lift(ctx, f64::INFINITY)),
        Mode::Segment => (zero, S::lift(ctx, 1.0)),
    };
    let n = poly.len();
    let mut v0 = poly.vertex(0).lift(ctx);
    for i in 0..n {
        let v1 = poly.vertex(i + 1).lift(ctx);
        let e = v1 - v0;
        // inner normal is e rotated a quarter turn anticlockwise, so
        // n·w = e × w and the inside condition reads t·den ≥ num
        let den = e.cross(dir).store();
        let num = e.cross(v0 - a).store();
        if den > zero {
            let t = (num / den).store();
            if t > t_min {
                t_min = t;
            }
        } else if den < zero {
            let t = (num / den).store();
            if t < t_max {
                t_max = t;
            }
        } else if num > zero {
            return ClipResult::Miss;
        }
        v0 = v1;
    }
    if t_min <= t_max {
        ClipResult::Cross {
            t1: t_min.get(),
            t2: t_max.get(),
        }
    } else {
        ClipResult::Miss
    }
}

trait StorePoint {
    fn store_point(self) -> Self;
}

impl<S: Scalar> StorePoint for Point2<S> {
    #[inline(always)]
    fn store_point(self) -> Self {
        Point2 {
            x: self.x.store(),
            y: self.y.store(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::oracle::oracle_clip;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap()
    }

    #[test]
    fn square_examples() {
        let sq = unit_square();
        let (t1, t2) = cyrus_beck_clip(&sq, p(-1., 0.5), p(2., 0.5), Mode::Segment)
            .unwrap()
            .params()
            .unwrap();
        assert!((t1 - 1.0 / 3.0).abs() < 1e-15 && (t2 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            cyrus_beck_clip(&sq, p(0.4, 0.5), p(0.6, 0.5), Mode::Segment).unwrap(),
            ClipResult::Cross { t1: 0.0, t2: 1.0 }
        );
        assert_eq!(
            cyrus_beck_clip(&sq, p(-1., 2.), p(2., 2.), Mode::Line).unwrap(),
            ClipResult::Miss
        );
    }

    #[test]
    fn parallel_outside_edge_misses() {
        let sq = unit_square();
        assert_eq!(
            cyrus_beck_clip(&sq, p(0.2, -0.5), p(0.8, -0.5), Mode::Line).unwrap(),
            ClipResult::Miss
        );
        let (t1, t2) = cyrus_beck_clip(&sq, p(0.2, 0.5), p(0.8, 0.5), Mode::Line)
            .unwrap()
            .params()
            .unwrap();
        assert!((t1 + 1.0 / 3.0).abs() < 1e-12 && (t2 - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_oracle_on_random_instances() {
        let mut rng = rand_pcg::Pcg64::seed_from_u64(11);
        for _ in 0..10_000 {
            let n = rng.random_range(3..=100);
            let phase = rng.random_range(0.0..2.0 * PI);
            let poly = ConvexPolygon::new(
                (0..n)
                    .map(|k| {
                        let a = phase + 2.0 * PI * k as f64 / n as f64;
                        p(0.5 * a.cos(), 0.5 * a.sin())
                    })
                    .collect(),
            )
            .unwrap();
            let a = p(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let b = p(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let line = ImplicitLine::through(a, b).unwrap();
            if crate::baselines::is_degenerate(&poly, &line) {
                continue;
            }
            for mode in [Mode::Line, Mode::Segment] {
                let cb = cyrus_beck_clip(&poly, a, b, mode).unwrap();
                let or = oracle_clip(&poly, a, b, mode).unwrap();
                assert!(cb.approx_eq(&or, 1e-9), "{cb:?} vs {or:?}");
            }
        }
    }
}
