//! SVG picture of a window, its input segments and their clipped parts.
//!
//! Geometry is emitted in world coordinates inside one group whose affine
//! transform scales uniformly and flips the y axis, so coordinates in the
//! file can be compared directly with instance and result files.

use std::fmt::Write as _;

use lgclip::{ClipResult, ConvexPolygon, Point2};

const VIEW: f64 = 800.0;
const MARGIN: f64 = 20.0;

pub fn render_svg(
    poly: &ConvexPolygon,
    segments: &[(Point2, Point2)],
    results: Option<&[ClipResult]>,
) -> String {
    let pts = poly
        .vertices()
        .iter()
        .copied()
        .chain(segments.iter().flat_map(|&(a, b)| [a, b]));
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let s = (VIEW - 2.0 * MARGIN) / span;
    let width = (x1 - x0) * s + 2.0 * MARGIN;
    let height = (y1 - y0) * s + 2.0 * MARGIN;
    let tx = MARGIN - x0 * s;
    let ty = MARGIN + y1 * s;
    let marker_r = 3.0 / s;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g transform="matrix({s} 0 0 {} {tx} {ty})">"#, -s);

    let mut poly_pts = String::new();
    for (i, v) in poly.vertices().iter().enumerate() {
        if i > 0 {
            poly_pts.push(' ');
        }
        let _ = write!(poly_pts, "{},{}", v.x, v.y);
    }
    let _ = writeln!(
        out,
        r##"<polygon class="window" points="{poly_pts}" fill="#eef3fb" stroke="#1f3b73" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##
    );

    for (a, b) in segments {
        let _ = writeln!(
            out,
            r##"<line class="input" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
            a.x, a.y, b.x, b.y
        );
    }

    if let Some(results) = results {
        for ((a, b), r) in segments.iter().zip(results) {
            let Some((t1, t2)) = r.params() else { continue };
            let at = |t: f64| Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
            let (p, q) = (at(t1), at(t2));
            let _ = writeln!(
                out,
                r##"<line class="clipped" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d62728" stroke-width="2.5" vector-effect="non-scaling-stroke"/>"##,
                p.x, p.y, q.x, q.y
            );
            for m in [p, q] {
                let _ = writeln!(
                    out,
                    r##"<circle class="crossing" cx="{}" cy="{}" r="{marker_r}" fill="#d62728"/>"##,
                    m.x, m.y
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point2::new(0., 0.),
            Point2::new(1., 0.),
            Point2::new(1., 1.),
            Point2::new(0., 1.),
        ])
        .unwrap()
    }

    #[test]
    fn one_clipped_segment() {
        let segs = [(Point2::new(-1., 0.5), Point2::new(2., 0.5))];
        let res = [ClipResult::Cross {
            t1: 1. / 3.,
            t2: 2. / 3.,
        }];
        let svg = render_svg(&square(), &segs, Some(&res));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let named = |c: &str| {
            doc.descendants()
                .filter(|n| n.attribute("class") == Some(c))
                .collect::<Vec<_>>()
        };
        assert_eq!(named("window").len(), 1);
        assert_eq!(named("input").len(), 1);
        let clipped = named("clipped");
        assert_eq!(clipped.len(), 1);
        let attr = |k: &str| clipped[0].attribute(k).unwrap().parse::<f64>().unwrap();
        assert_eq!(
            (attr("x1"), attr("y1"), attr("x2"), attr("y2")),
            (0., 0.5, 1., 0.5)
        );
        assert_eq!(named("crossing").len(), 2);
    }

    #[test]
    fn misses_are_not_highlighted() {
        let segs = [(Point2::new(-1., 2.), Point2::new(2., 2.))];
        let svg = render_svg(&square(), &segs, Some(&[ClipResult::Miss]));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert!(doc
            .descendants()
            .all(|n| n.attribute("class") != Some("clipped")));
    }

    #[test]
    fn transform_is_isotropic() {
        let svg = render_svg(&square(), &[], None);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let g = doc.descendants().find(|n| n.has_tag_name("g")).unwrap();
        let m = g.attribute("transform").unwrap();
        let nums: Vec<f64> = m
            .trim_start_matches("matrix(")
            .trim_end_matches(')')
            .split_whitespace()
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(nums[0], -nums[3]);
        assert_eq!((nums[1], nums[2]), (0.0, 0.0));
    }
}
