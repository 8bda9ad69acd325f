//! Logarithmic line and segment clipping against a convex window.
//!
//! The vertex interval `[i, j]` (indices modulo `n`) is halved every pass.
//! If the midpoint `k` lies on the other side of the line than `x_i`, each of
//! the chains `x_i..x_k` and `x_k..x_j` holds exactly one crossing and a plain
//! bisection finds it. Otherwise one half provably holds no crossing and is
//! dropped; which half follows from whether the signed distance grows or
//! shrinks when stepping forward from `x_i` or `x_k`.

use std::fmt;

use arrayvec::ArrayVec;
use thiserror::Error;

use crate::baselines::oracle;
use crate::clip::{clamp_unit, ClipResult, Mode, Sides, ZeroContact};
use crate::geom::{ConvexPolygon, GeomError, ImplicitLine, Point2, SignClass};
use crate::scalar::Scalar;

/// Upper bound on recorded discard steps (⌈lg n⌉ never exceeds 64).
pub const MAX_DISCARDS: usize = 64;

/// The four ways a half-chain gets dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscardKind {
    /// `x_k` is farther than `x_i`, and the chain approaches the line right
    /// after `x_i`: keep `[i, k]`.
    A,
    /// `x_k` is farther than `x_i`, the chain moves away after `x_i`: keep `[k, j]`.
    B,
    /// `x_k` is not farther, and the chain moves away after `x_k`: keep `[i, k]`.
    C,
    /// `x_k` is not farther, and the chain approaches after `x_k`: keep `[k, j]`.
    D,
}

/// One discard step as recorded in a [`ClipTrace`]. `mirrored` is set when
/// the interval lies on the negative side of the line and the comparisons
/// were evaluated on `−F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscardCase {
    pub kind: DiscardKind,
    pub mirrored: bool,
}

impl fmt::Display for DiscardCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            DiscardKind::A => "a",
            DiscardKind::B => "b",
            DiscardKind::C => "c",
            DiscardKind::D => "d",
        };
        if self.mirrored {
            write!(f, "mirrored-{k}")
        } else {
            f.write_str(k)
        }
    }
}

/// What one query did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClipTrace {
    /// Passes of the main halving loop.
    pub iterations: u32,
    pub discard_cases: ArrayVec<DiscardCase, MAX_DISCARDS>,
    /// A vertex fell in the zero band and the query was answered by the
    /// linear scan instead.
    pub fallback_used: bool,
}

/// Outcome of a single [`discard_step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discard {
    pub i: usize,
    pub j: usize,
    pub case: DiscardCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search interval [{i}, {j}] is invalid for this step")]
    BadInterval { i: usize, j: usize },
    #[error("the chain endpoints do not satisfy the sign precondition")]
    SignPrecondition,
    #[error("a vertex lies on the line within the zero band")]
    ZeroContact,
}

impl From<ZeroContact> for SearchError {
    fn from(_: ZeroContact) -> Self {
        SearchError::ZeroContact
    }
}

/// Clips an infinite line.
pub fn clip_line(poly: &ConvexPolygon, line: &ImplicitLine) -> (ClipResult, ClipTrace) {
    let (iv, trace) = line_core(poly, line, false);
    (ClipResult::from_interval(iv), trace)
}

/// Clips the segment `a → b`; parameters refer to `a + t·(b − a)`.
pub fn clip_segment(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
) -> Result<(ClipResult, ClipTrace), GeomError> {
    ImplicitLine::through(a, b)?;
    Ok(clip_in(
        poly,
        a.lift::<f64>(()),
        b.lift::<f64>(()),
        Mode::Segment,
    ))
}

/// Bisects the chain `x_i..x_j`, which must contain exactly one sign
/// change, and returns the parameter of its crossing.
pub fn solve(
    poly: &ConvexPolygon,
    line: &ImplicitLine,
    i: usize,
    j: usize,
) -> Result<f64, SearchError> {
    if j <= i || j - i > poly.len() {
        return Err(SearchError::BadInterval { i, j });
    }
    let sides = Sides::new(poly, line);
    let end_i = sides.strict(i)?;
    let end_j = sides.strict(j)?;
    if !end_i.1.opposite(end_j.1) {
        return Err(SearchError::SignPrecondition);
    }
    Ok(solve_core(&sides, i, j, end_i, end_j)?)
}

/// One halving step when `x_i` and `x_k` are on the same side of the line.
pub fn discard_step(
    poly: &ConvexPolygon,
    line: &ImplicitLine,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Discard, SearchError> {
    if j < i + 2 || j - i > poly.len() || k != (i + j) / 2 {
        return Err(SearchError::BadInterval { i, j });
    }
    let sides = Sides::new(poly, line);
    let (fi, ci) = sides.strict(i)?;
    let (fk, ck) = sides.strict(k)?;
    if ci != ck {
        return Err(SearchError::SignPrecondition);
    }
    let (i, j, case) = discard_core(&sides, i, j, k, fi, fk, ci, false)?;
    Ok(Discard { i, j, case })
}

/// Answers a query by scanning every edge; used whenever a search meets a
/// vertex on the line.
pub fn degenerate_fallback(poly: &ConvexPolygon, line: &ImplicitLine) -> ClipResult {
    ClipResult::from_interval(oracle::line_core(poly, line))
}

pub(crate) fn clip_in<S: Scalar>(
    poly: &ConvexPolygon,
    a: Point2<S>,
    b: Point2<S>,
    mode: Mode,
) -> (ClipResult, ClipTrace) {
    clip_with(poly, a, b, mode, false)
}

fn clip_with<S: Scalar>(
    poly: &ConvexPolygon,
    a: Point2<S>,
    b: Point2<S>,
    mode: Mode,
    invert_discard: bool,
) -> (ClipResult, ClipTrace) {
    let line = ImplicitLine::through_unchecked(a, b);
    let (iv, trace) = line_core(poly, &line, invert_discard);
    let iv = match mode {
        Mode::Line => iv,
        Mode::Segment => clamp_unit(iv),
    };
    (ClipResult::from_interval(iv), trace)
}

/// The main loop. `invert_discard` flips the a/b criterion and exists only
/// to prove the differential checks notice a broken clipper.
pub(crate) fn line_core<S: Scalar>(
    poly: &ConvexPolygon,
    line: &ImplicitLine<S>,
    invert_discard: bool,
) -> (Option<(S, S)>, ClipTrace) {
    let mut trace = ClipTrace::default();
    let sides = Sides::new(poly, line);
    match search(&sides, &mut trace, invert_discard) {
        Ok(iv) => (iv, trace),
        Err(ZeroContact) => {
            trace.fallback_used = true;
            (oracle::line_core(poly, line), trace)
        }
    }
}

fn search<S: Scalar>(
    sides: &Sides<'_, S>,
    trace: &mut ClipTrace,
    invert_discard: bool,
) -> Result<Option<(S, S)>, ZeroContact> {
    let mut i = 0;
    let mut j = sides.poly().len();
    let (mut fi, mut ci) = sides.strict(i)?;
    // vertex j = n is vertex 0
    let mut end_j = (fi, ci);
    while j - i >= 2 {
        trace.iterations += 1;
        let k = (i + j) / 2;
        let (fk, ck) = sides.strict(k)?;
        if ci.opposite(ck) {
            let mut t1 = solve_core(sides, i, k, (fi, ci), (fk, ck))?.store();
            let mut t2 = solve_core(sides, k, j, (fk, ck), end_j)?.store();
            if t1 > t2 {
                std::mem::swap(&mut t1, &mut t2);
            }
            return Ok(Some((t1, t2)));
        }
        let (ni, nj, case) = discard_core(sides, i, j, k, fi, fk, ci, invert_discard)?;
        let _ = trace.discard_cases.try_push(case);
        if ni == k {
            (fi, ci) = (fk, ck);
        } else {
            end_j = (fk, ck);
        }
        (i, j) = (ni, nj);
    }
    Ok(None)
}

/// Bisection on a chain whose end values `end_i`, `end_j` have opposite
/// signs.
#[inline(always)]
fn solve_core<S: Scalar>(
    sides: &Sides<'_, S>,
    mut i: usize,
    mut j: usize,
    end_i: (S, SignClass),
    end_j: (S, SignClass),
) -> Result<S, ZeroContact> {
    let ((mut fi, ci), (mut fj, _)) = (end_i, end_j);
    while j - i >= 2 {
        let k = (i + j) / 2;
        let (fk, ck) = sides.strict(k)?;
        // both classes are nonzero, so "opposite" is just "different"
        if ck != ci {
            j = k;
            fj = fk;
        } else {
            i = k;
            fi = fk;
        }
    }
    let line = sides.line();
    Ok(line.crossing_param(sides.vertex(i), sides.vertex(j), fi, fj))
}

/// Cases a to d, evaluated on `G = F` when `x_i` is on the positive side and
/// on `G = −F` otherwise. Negating is folded into the comparison direction.
#[allow(clippy::too_many_arguments)]
#[inline(always)]
fn discard_core<S: Scalar>(
    sides: &Sides<'_, S>,
    i: usize,
    j: usize,
    k: usize,
    fi: S,
    fk: S,
    ci: SignClass,
    invert: bool,
) -> Result<(usize, usize, DiscardCase), ZeroContact> {
    let mirrored = ci == SignClass::Neg;
    // G(x) > G(y)
    let above = |x: S, y: S| if mirrored { x < y } else { x > y };
    let kind = if above(fk, fi) {
        let (fi1, _) = sides.strict(i + 1)?;
        if above(fi, fi1) != invert {
            DiscardKind::A
        } else {
            DiscardKind::B
        }
    } else {
        let (fk1, _) = sides.strict(k + 1)?;
        if above(fk1, fk) {
            DiscardKind::C
        } else {
            DiscardKind::D
        }
    };
    let (ni, nj) = match kind {
        DiscardKind::A | DiscardKind::C => (i, k),
        DiscardKind::B | DiscardKind::D => (k, j),
    };
    Ok((ni, nj, DiscardCase { kind, mirrored }))
}

/// Hooks for checking that test harnesses catch a broken clipper.
#[doc(hidden)]
pub mod mutant {
    use super::*;

    /// [`clip_segment`] with the a/b discard criterion negated.
    pub fn clip_segment_inverted_discard(
        poly: &ConvexPolygon,
        a: Point2,
        b: Point2,
    ) -> Result<ClipResult, GeomError> {
        ImplicitLine::through(a, b)?;
        Ok(clip_with(
            poly,
            a.lift::<f64>(()),
            b.lift::<f64>(()),
            Mode::Segment,
            true,
        )
        .0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costmodel::lg_steps;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap()
    }

    fn regular(n: usize, r: f64, phase: f64) -> ConvexPolygon {
        ConvexPolygon::new(
            (0..n)
                .map(|k| {
                    let a = phase + 2.0 * PI * k as f64 / n as f64;
                    p(r * a.cos(), r * a.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    fn cross(r: ClipResult) -> (f64, f64) {
        r.params().expect("expected a crossing")
    }

    #[test]
    fn solve_square_chains() {
        let sq = unit_square();
        let line = ImplicitLine::through(p(-1., 0.5), p(2., 0.5)).unwrap();
        assert!(close(solve(&sq, &line, 0, 2).unwrap(), 2.0 / 3.0));
        assert!(close(solve(&sq, &line, 2, 4).unwrap(), 1.0 / 3.0));
        assert_eq!(solve(&sq, &line, 0, 1), Err(SearchError::SignPrecondition));
        assert!(matches!(
            solve(&sq, &line, 2, 1),
            Err(SearchError::BadInterval { .. })
        ));
    }

    #[test]
    fn discard_on_hexagon_miss() {
        let hex = regular(6, 1.0, 0.0);
        let line = ImplicitLine::through(p(0., 2.), p(1., 2.)).unwrap();
        let d = discard_step(&hex, &line, 0, 6, 3).unwrap();
        assert!((d.i, d.j) == (0, 3) || (d.i, d.j) == (3, 6));
        let (r, trace) = clip_line(&hex, &line);
        assert_eq!(r, ClipResult::Miss);
        assert_eq!(r, degenerate_fallback(&hex, &line));
        assert!(!trace.fallback_used);
        assert_eq!(trace.discard_cases.len() as u32, trace.iterations);
    }

    #[test]
    fn discard_keeps_a_crossing() {
        // the window is shifted and rotated so vertex 2 sits on the same side as vertex 0
        let poly = unit_square().rigid_motion(0.3, p(0.2, 0.1)).unwrap();
        for y in [0.05, 0.3, 0.6, 0.9, 1.1] {
            let line = ImplicitLine::through(p(-3., y), p(3., y + 0.2)).unwrap();
            let sides = Sides::new(&poly, &line);
            let (_, c0) = sides.get(0);
            let (_, c2) = sides.get(2);
            if c0 != c2 || c0 == SignClass::Zero {
                continue;
            }
            let d = discard_step(&poly, &line, 0, 4, 2).unwrap();
            let crossings: Vec<usize> = (0..4)
                .filter(|&l| {
                    let (_, a) = sides.get(l);
                    let (_, b) = sides.get(l + 1);
                    a.opposite(b)
                })
                .collect();
            if crossings.is_empty() {
                continue;
            }
            assert!(
                crossings.iter().any(|&l| l >= d.i && l < d.j),
                "y = {y}: kept [{}, {}] but crossings on edges {crossings:?}",
                d.i,
                d.j
            );
        }
    }

    #[test]
    fn discard_is_orientation_invariant() {
        let poly = regular(13, 1.0, 0.2);
        let fwd = ImplicitLine::through(p(-2., 1.5), p(2., 1.2)).unwrap();
        let rev = ImplicitLine::through(p(2., 1.2), p(-2., 1.5)).unwrap();
        let (mut i, mut j) = (0, 13);
        while j - i >= 2 {
            let k = (i + j) / 2;
            let a = discard_step(&poly, &fwd, i, j, k).unwrap();
            let b = discard_step(&poly, &rev, i, j, k).unwrap();
            assert_eq!((a.i, a.j, a.case.kind), (b.i, b.j, b.case.kind));
            assert_ne!(a.case.mirrored, b.case.mirrored);
            (i, j) = (a.i, a.j);
        }
    }

    #[test]
    fn clip_line_square() {
        let sq = unit_square();
        let line = ImplicitLine::through(p(-1., 0.5), p(2., 0.5)).unwrap();
        let (t1, t2) = cross(clip_line(&sq, &line).0);
        assert!(close(t1, 1.0 / 3.0) && close(t2, 2.0 / 3.0));
        let miss = ImplicitLine::through(p(-1., 2.), p(2., 2.)).unwrap();
        assert_eq!(clip_line(&sq, &miss).0, ClipResult::Miss);
    }

    #[test]
    fn clip_segment_square() {
        let sq = unit_square();
        let (r, _) = clip_segment(&sq, p(0.4, 0.5), p(0.6, 0.5)).unwrap();
        assert_eq!(r, ClipResult::Cross { t1: 0.0, t2: 1.0 });
        let (t1, t2) = cross(clip_segment(&sq, p(-1., 0.5), p(2., 0.5)).unwrap().0);
        assert!(close(t1, 1.0 / 3.0) && close(t2, 2.0 / 3.0));
        let (r, _) = clip_segment(&sq, p(-1., 0.5), p(-0.5, 0.5)).unwrap();
        assert_eq!(r, ClipResult::Miss);
        assert_eq!(
            clip_segment(&sq, p(1., 1.), p(1., 1.)),
            Err(GeomError::DegenerateLine)
        );
    }

    #[test]
    fn fallback_cases() {
        let sq = unit_square();

        let edge = ImplicitLine::through(p(-1., 0.), p(3., 0.)).unwrap();
        let (r, trace) = clip_line(&sq, &edge);
        assert!(trace.fallback_used);
        let (t1, t2) = cross(r);
        assert!(close(t1, 0.25) && close(t2, 0.5));
        assert_eq!(r, degenerate_fallback(&sq, &edge));

        let corner = ImplicitLine::through(p(-1., 1.), p(1., -1.)).unwrap();
        let (r, trace) = clip_line(&sq, &corner);
        assert!(trace.fallback_used);
        let (t1, t2) = cross(r);
        assert_eq!(t1, t2);
        let q = corner.point_at(t1);
        assert!(q.norm() < 1e-12);

        let far = ImplicitLine::from_coefficients(1., 1., -2.).unwrap();
        let (t1, t2) = cross(clip_line(&sq, &far).0);
        assert_eq!(t1, t2);
        let q = far.point_at(t1);
        assert!((q - p(1., 1.)).norm() < 1e-12);
    }

    #[test]
    fn trace_labels() {
        let c = DiscardCase {
            kind: DiscardKind::C,
            mirrored: true,
        };
        assert_eq!(c.to_string(), "mirrored-c");
        let a = DiscardCase {
            kind: DiscardKind::A,
            mirrored: false,
        };
        assert_eq!(a.to_string(), "a");
    }

    #[test]
    fn mutant_disagrees_somewhere() {
        let poly = regular(37, 1.0, 0.1);
        let mut differ = 0;
        for s in 0..200 {
            let y = -1.3 + 2.6 * s as f64 / 200.0;
            let (a, b) = (p(-2., y), p(2., y * 0.7 + 0.05));
            let good = clip_segment(&poly, a, b).unwrap().0;
            let bad = mutant::clip_segment_inverted_discard(&poly, a, b).unwrap();
            if !good.approx_eq(&bad, 1e-9) {
                differ += 1;
            }
        }
        assert!(differ > 0);
    }

    fn random_line(seed: [f64; 4]) -> ImplicitLine {
        let a = p(seed[0], seed[1]);
        let mut b = p(seed[2], seed[3]);
        if a == b {
            b.x += 1.0;
        }
        ImplicitLine::through(a, b).unwrap()
    }

    #[test]
    fn hundred_gon_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let poly = regular(100, 1.0, 0.0);
        let mut rng = rand_pcg::Pcg64::seed_from_u64(7);
        for _ in 0..10_000 {
            let s: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.5..1.5));
            let line = random_line(s);
            let (r, trace) = clip_line(&poly, &line);
            let o = degenerate_fallback(&poly, &line);
            assert!(r.approx_eq(&o, 1e-9), "{r:?} vs {o:?}");
            if !trace.fallback_used {
                assert!(trace.iterations <= lg_steps(100) + 2);
            }
        }
    }

    proptest! {
        #[test]
        fn solve_matches_chain_scan(
            phase in 0.0..PI,
            s in proptest::array::uniform4(-1.2..1.2f64),
            n in 3usize..80,
        ) {
            let poly = regular(n, 1.0, phase);
            let line = random_line(s);
            let sides = Sides::new(&poly, &line);
            let classes: Vec<SignClass> = (0..n).map(|i| sides.get(i).1).collect();
            prop_assume!(!classes.contains(&SignClass::Zero));
            // pick a chain from a positive vertex to a negative one
            let pos = classes.iter().position(|&c| c == SignClass::Pos);
            let neg = classes.iter().position(|&c| c == SignClass::Neg);
            let (Some(i), Some(jn)) = (pos, neg) else { return Ok(()); };
            let j = if jn > i { jn } else { jn + n };
            let t = solve(&poly, &line, i, j).unwrap();
            let edge = (i..j).find(|&l| classes[l % n] != classes[(l + 1) % n]).unwrap();
            let expect = line
                .edge_intersection_param(poly.vertex(edge), poly.vertex(edge + 1))
                .unwrap();
            prop_assert!((t - expect).abs() <= 1e-9);
        }

        #[test]
        fn logarithmic_iterations(
            k in 2u32..11,
            phase in 0.0..PI,
            s in proptest::array::uniform4(-1.5..1.5f64),
        ) {
            let n = 1usize << k;
            let poly = regular(n, 1.0, phase);
            let line = random_line(s);
            let (_, trace) = clip_line(&poly, &line);
            if !trace.fallback_used {
                prop_assert!(trace.iterations <= lg_steps(n) + 2);
            }
        }
    }
}
