//! Logarithmic segment clipping assembled from binary searches on the
//! window's vertex sequence.
//!
//! A start point inside the window needs one search for the exit edge. A
//! start point outside first finds the two tangent vertices seen from it,
//! which split the boundary into a front chain facing the point and a back
//! chain; the entry edge is then searched on the front chain and the exit
//! edge on the back chain.

use thiserror::Error;

use crate::baselines::oracle;
use crate::clip::{clamp_unit, ClipResult, Sides, ZeroContact};
use crate::geom::{
    classify_banded, orient, ConvexPolygon, GeomError, ImplicitLine, Point2, SignClass, ZERO_BAND,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    In,
    Out,
}

/// Tangent vertices seen from an exterior point. Walking anticlockwise from
/// `left_sup` to `right_sup` traverses the front chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupportPair {
    pub left_sup: usize,
    pub right_sup: usize,
}

/// The edge `x_s → x_{s1}`, with `s1 = (s + 1) mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorPair {
    pub s: usize,
    pub s1: usize,
}

impl SectorPair {
    fn at(s: usize, n: usize) -> Self {
        let s = s % n;
        Self { s, s1: (s + 1) % n }
    }
}

/// Loop passes of every search a query ran (zero for searches it skipped).
/// Each search is logarithmic in the number of vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RappTrace {
    pub classify_steps: u32,
    pub sector_steps: u32,
    pub left_support_steps: u32,
    pub right_support_steps: u32,
    pub front_steps: u32,
    pub back_steps: u32,
    /// The query touched the boundary within the zero band and was answered
    /// by the linear scan.
    pub fallback_used: bool,
}

impl RappTrace {
    pub fn max_steps(&self) -> u32 {
        [
            self.classify_steps,
            self.sector_steps,
            self.left_support_steps,
            self.right_support_steps,
            self.front_steps,
            self.back_steps,
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RappError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("the start point is not inside the window")]
    NotInside,
    #[error("the start point is not outside the window")]
    NotOutside,
    #[error("the query touches the window boundary within the zero band")]
    ZeroContact,
}

impl From<ZeroContact> for RappError {
    fn from(_: ZeroContact) -> Self {
        RappError::ZeroContact
    }
}

/// Point location by bisecting the triangle fan at vertex 0. Points on the
/// boundary (within the zero band) are `In`.
pub fn rapp_classify(poly: &ConvexPolygon, p: Point2) -> PointClass {
    match Searcher::<f64>::new(poly, ()).locate(p) {
        Located::Exterior => PointClass::Out,
        Located::Interior | Located::Boundary => PointClass::In,
    }
}

/// The edge through which the ray from the interior point `a` towards `b`
/// leaves the window.
pub fn rapp_sector(poly: &ConvexPolygon, a: Point2, b: Point2) -> Result<SectorPair, RappError> {
    ImplicitLine::through(a, b)?;
    let mut s = Searcher::<f64>::new(poly, ());
    match s.locate(a) {
        Located::Exterior => Err(RappError::NotInside),
        Located::Boundary => Err(RappError::ZeroContact),
        Located::Interior => Ok(SectorPair::at(s.sector(a, b - a), poly.len())),
    }
}

/// Both tangent vertices seen from the exterior point `a`.
pub fn rapp_support_vertices(poly: &ConvexPolygon, a: Point2) -> Result<SupportPair, RappError> {
    let mut s = Searcher::<f64>::new(poly, ());
    match s.locate(a) {
        Located::Exterior => Ok(s.supports(a)?),
        _ => Err(RappError::NotOutside),
    }
}

/// The front-chain edge where the ray `a → b` enters the window, or `None`
/// if the ray passes beside it.
pub fn rapp_front_sector(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    supports: SupportPair,
) -> Result<Option<SectorPair>, RappError> {
    chain_sector(poly, a, b, supports, true)
}

/// The back-chain edge where the ray `a → b` leaves the window, or `None`
/// if the ray passes beside it.
pub fn rapp_back_sector(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    supports: SupportPair,
) -> Result<Option<SectorPair>, RappError> {
    chain_sector(poly, a, b, supports, false)
}

fn chain_sector(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    sup: SupportPair,
    front: bool,
) -> Result<Option<SectorPair>, RappError> {
    let line = ImplicitLine::through(a, b)?;
    let n = poly.len();
    if sup.left_sup >= n || sup.right_sup >= n || sup.left_sup == sup.right_sup {
        return Err(RappError::NotOutside);
    }
    let mut s = Searcher::<f64>::new(poly, ());
    let sides = Sides::new(poly, &line);
    let left = sides.strict(sup.left_sup)?;
    let right = sides.strict(sup.right_sup)?;
    if left.1 == SignClass::Neg || right.1 == SignClass::Pos {
        return Ok(None);
    }
    let e = if front {
        s.front(&sides, sup, left.0, right.0)?
    } else {
        s.back(&sides, sup, right.0, left.0)?
    };
    Ok(Some(SectorPair::at(e.edge, n)))
}

/// Clips the segment `a → b`.
pub fn rappaport_clip(poly: &ConvexPolygon, a: Point2, b: Point2) -> Result<ClipResult, GeomError> {
    Ok(rappaport_clip_traced(poly, a, b)?.0)
}

/// [`rappaport_clip`] together with the per-search step counts.
pub fn rappaport_clip_traced(
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
) -> Result<(ClipResult, RappTrace), GeomError> {
    ImplicitLine::through(a, b)?;
    Ok(clip_in(poly, a.lift::<f64>(()), b.lift::<f64>(())))
}

pub(crate) fn clip_in<S: Scalar>(
    poly: &ConvexPolygon,
    a: Point2<S>,
    b: Point2<S>,
) -> (ClipResult, RappTrace) {
    let line = ImplicitLine::through_unchecked(a, b);
    let mut s = Searcher::new(poly, a.x.ctx());
    let iv = match s.clip(&line, a, b) {
        Ok(iv) => iv,
        Err(ZeroContact) => {
            s.trace.fallback_used = true;
            clamp_unit(oracle::line_core(poly, &line))
        }
    };
    (ClipResult::from_interval(iv), s.trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Located {
    Interior,
    Boundary,
    Exterior,
}

struct Searcher<'a, S: Scalar> {
    poly: &'a ConvexPolygon,
    ctx: S::Ctx,
    trace: RappTrace,
}

impl<'a, S: Scalar> Searcher<'a, S> {
    fn new(poly: &'a ConvexPolygon, ctx: S::Ctx) -> Self {
        Self {
            poly,
            ctx,
            trace: RappTrace::default(),
        }
    }

    #[inline(always)]
    fn vert(&self, i: usize) -> Point2<S> {
        self.poly.vertex(i).lift(self.ctx)
    }

    fn zero(&self) -> S {
        S::lift(self.ctx, 0.0)
    }

    /// Side of `p` relative to the line of edge `i → i+1`, with the zero band
    /// scaled to that edge.
    fn edge_side(&self, i: usize, p: Point2<S>) -> SignClass {
        let len = (self.poly.vertex(i + 1) - self.poly.vertex(i)).norm();
        let eps = ZERO_BAND * len * self.poly.diameter();
        let v = orient(self.vert(i), self.vert(i + 1), p);
        classify_banded(v, S::lift(self.ctx, eps), S::lift(self.ctx, -eps))
    }

    fn locate(&mut self, p: Point2<S>) -> Located {
        let n = self.poly.len();
        let first = self.edge_side(0, p);
        let last = self.edge_side(n - 1, p);
        if first == SignClass::Neg || last == SignClass::Neg {
            self.trace.classify_steps = 1;
            return Located::Exterior;
        }
        let v0 = self.vert(0);
        let zero = self.zero();
        let (mut lo, mut hi) = (1, n - 1);
        let mut steps = 1;
        while hi - lo > 1 {
            steps += 1;
            let mid = (lo + hi) / 2;
            if orient(v0, self.vert(mid), p) >= zero {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.trace.classify_steps = steps;
        match self.edge_side(lo, p) {
            SignClass::Neg => Located::Exterior,
            SignClass::Zero => Located::Boundary,
            SignClass::Pos if first == SignClass::Zero || last == SignClass::Zero => {
                Located::Boundary
            }
            SignClass::Pos => Located::Interior,
        }
    }

    /// Exit edge for the ray from interior `a` along `d`: bisects the vertices
    /// by polar angle around `a`, measured from the direction of vertex 0.
    fn sector(&mut self, a: Point2<S>, d: Point2<S>) -> usize {
        let zero = self.zero();
        let w0 = self.vert(0) - a;
        // 0 for angles in [0, π), 1 for [π, 2π)
        let half = |u: Point2<S>| {
            let c = w0.cross(u);
            if c > zero {
                0
            } else if c < zero {
                1
            } else if w0.dot(u) > zero {
                0
            } else {
                1
            }
        };
        let hd = half(d);
        let (mut lo, mut hi) = (0, self.poly.len());
        let mut steps = 1;
        while hi - lo > 1 {
            steps += 1;
            let mid = (lo + hi) / 2;
            let w = self.vert(mid) - a;
            let hw = half(w);
            let not_past = if hw != hd {
                hw < hd
            } else {
                w.cross(d) >= zero
            };
            if not_past {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.trace.sector_steps = steps;
        lo
    }

    fn supports(&mut self, p: Point2<S>) -> Result<SupportPair, ZeroContact> {
        let n = self.poly.len();
        let left_sup = self.tangent(p, false)?;
        let right_sup = self.tangent(p, true)?;
        if left_sup == right_sup {
            return Err(ZeroContact);
        }
        // local tangency is global tangency on a convex polygon
        let zero = self.zero();
        let (pl, pr) = (self.vert(left_sup), self.vert(right_sup));
        let ok = orient(p, pl, self.vert(left_sup + n - 1)) <= zero
            && orient(p, pl, self.vert(left_sup + 1)) <= zero
            && orient(p, pr, self.vert(right_sup + n - 1)) >= zero
            && orient(p, pr, self.vert(right_sup + 1)) >= zero;
        if ok {
            Ok(SupportPair {
                left_sup,
                right_sup,
            })
        } else {
            Err(ZeroContact)
        }
    }

    /// Binary search for the vertex extremal in the `orient(p, ·, ·)` order:
    /// the maximum when `right`, the minimum otherwise.
    fn tangent(&mut self, p: Point2<S>, right: bool) -> Result<usize, ZeroContact> {
        let n = self.poly.len();
        let zero = self.zero();
        let v = |i: usize| self.vert(i);
        let above = |q: Point2<S>, r: Point2<S>| orient(p, q, r) > zero;
        let below = |q: Point2<S>, r: Point2<S>| orient(p, q, r) < zero;
        let limit = 2 * (usize::BITS - n.leading_zeros()) + 8;

        let mut steps = 1;
        let found = if right {
            if below(v(1), v(0)) && !above(v(n - 1), v(0)) {
                Some(0)
            } else {
                let (mut a, mut b) = (0, n);
                let mut found = None;
                while steps < limit && b - a >= 2 {
                    steps += 1;
                    let c = (a + b) / 2;
                    let dn_c = below(v(c + 1), v(c));
                    if dn_c && !above(v(c - 1), v(c)) {
                        found = Some(c % n);
                        break;
                    }
                    let up_a = above(v(a + 1), v(a));
                    let keep_low = if up_a {
                        dn_c || above(v(a), v(c))
                    } else {
                        dn_c && below(v(a), v(c))
                    };
                    if keep_low {
                        b = c;
                    } else {
                        a = c;
                    }
                }
                found
            }
        } else if above(v(n - 1), v(0)) && !below(v(1), v(0)) {
            Some(0)
        } else {
            let (mut a, mut b) = (0, n);
            let mut found = None;
            while steps < limit && b - a >= 2 {
                steps += 1;
                let c = (a + b) / 2;
                let dn_c = below(v(c + 1), v(c));
                if above(v(c - 1), v(c)) && !dn_c {
                    found = Some(c % n);
                    break;
                }
                let dn_a = below(v(a + 1), v(a));
                let keep_low = if dn_a {
                    !dn_c || below(v(a), v(c))
                } else {
                    !dn_c && above(v(a), v(c))
                };
                if keep_low {
                    b = c;
                } else {
                    a = c;
                }
            }
            found
        };
        if right {
            self.trace.right_support_steps = steps;
        } else {
            self.trace.left_support_steps = steps;
        }
        found.ok_or(ZeroContact)
    }

    /// Entry edge on the front chain; `F` runs from positive at `left_sup`
    /// (value `f_lo`) to negative at `right_sup` (value `f_hi`).
    fn front(
        &mut self,
        sides: &Sides<'_, S>,
        sup: SupportPair,
        f_lo: S,
        f_hi: S,
    ) -> Result<ChainEdge<S>, ZeroContact> {
        let hi = unwrap_after(sup.left_sup, sup.right_sup, self.poly.len());
        let (e, steps) = bisect_chain(sides, sup.left_sup, hi, f_lo, f_hi, SignClass::Pos)?;
        self.trace.front_steps = steps;
        Ok(e)
    }

    /// Exit edge on the back chain; `F` runs from negative at `right_sup`
    /// to positive at `left_sup`.
    fn back(
        &mut self,
        sides: &Sides<'_, S>,
        sup: SupportPair,
        f_lo: S,
        f_hi: S,
    ) -> Result<ChainEdge<S>, ZeroContact> {
        let hi = unwrap_after(sup.right_sup, sup.left_sup, self.poly.len());
        let (e, steps) = bisect_chain(sides, sup.right_sup, hi, f_lo, f_hi, SignClass::Neg)?;
        self.trace.back_steps = steps;
        Ok(e)
    }

    fn crossing(&self, line: &ImplicitLine<S>, e: ChainEdge<S>) -> S {
        line.crossing_param(self.vert(e.edge), self.vert(e.edge + 1), e.f0, e.f1)
            .store()
    }

    fn clip(
        &mut self,
        line: &ImplicitLine<S>,
        a: Point2<S>,
        b: Point2<S>,
    ) -> Result<Option<(S, S)>, ZeroContact> {
        let zero = self.zero();
        let one = S::lift(self.ctx, 1.0);
        let poly = self.poly;
        match self.locate(a) {
            Located::Boundary => Err(ZeroContact),
            Located::Interior => {
                let e = self.sector(a, line.dir);
                let sides = Sides::new(poly, line);
                let (f0, cs) = sides.strict(e)?;
                let (f1, cs1) = sides.strict(e + 1)?;
                if cs != SignClass::Neg || cs1 != SignClass::Pos {
                    return Err(ZeroContact);
                }
                match self.edge_side(e, b) {
                    SignClass::Pos => Ok(Some((zero, one))),
                    SignClass::Zero => Err(ZeroContact),
                    SignClass::Neg => Ok(Some((
                        zero,
                        self.crossing(line, ChainEdge { edge: e, f0, f1 }),
                    ))),
                }
            }
            Located::Exterior => {
                let sup = self.supports(a)?;
                let sides = Sides::new(poly, line);
                let (fl, cl) = sides.strict(sup.left_sup)?;
                let (fr, cr) = sides.strict(sup.right_sup)?;
                if cl == SignClass::Neg || cr == SignClass::Pos {
                    return Ok(None);
                }
                let e_in = self.front(&sides, sup, fl, fr)?;
                let t_in = match self.edge_side(e_in.edge, b) {
                    SignClass::Neg => return Ok(None),
                    SignClass::Zero => return Err(ZeroContact),
                    SignClass::Pos => self.crossing(line, e_in),
                };
                let e_out = self.back(&sides, sup, fr, fl)?;
                match self.edge_side(e_out.edge, b) {
                    SignClass::Pos => Ok(Some((t_in, one))),
                    SignClass::Zero => Err(ZeroContact),
                    SignClass::Neg => Ok(Some((t_in, self.crossing(line, e_out)))),
                }
            }
        }
    }
}

/// A chain edge `x_edge x_edge+1` together with `F` at both ends.
#[derive(Clone, Copy)]
struct ChainEdge<S> {
    edge: usize,
    f0: S,
    f1: S,
}

/// Finds the edge of the chain `lo..hi` (indices unwrapped) where the sign
/// leaves `keep`. Returns the edge and the number of loop passes.
fn bisect_chain<S: Scalar>(
    sides: &Sides<'_, S>,
    mut lo: usize,
    mut hi: usize,
    mut f_lo: S,
    mut f_hi: S,
    keep: SignClass,
) -> Result<(ChainEdge<S>, u32), ZeroContact> {
    let mut steps = 1;
    while hi - lo > 1 {
        steps += 1;
        let mid = (lo + hi) / 2;
        let (fm, cm) = sides.strict(mid)?;
        if cm == keep {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    let edge = lo % sides.poly().len();
    Ok((
        ChainEdge {
            edge,
            f0: f_lo,
            f1: f_hi,
        },
        steps,
    ))
}

/// `to` as an index in `(from, from + n]`.
fn unwrap_after(from: usize, to: usize, n: usize) -> usize {
    if to > from {
        to
    } else {
        to + n
    }
}
