//! Result contract shared by all clippers, plus a single dispatch point.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::baselines::{cyrus_beck, oracle, rappaport};
use crate::geom::{classify_banded, ConvexPolygon, GeomError, ImplicitLine, Point2, SignClass};
use crate::scalar::Scalar;
use crate::skala;

/// Outcome of clipping a line or segment `x(t) = x_A + t·(x_B − x_A)`.
///
/// `Cross` always has `t1 ≤ t2`; a zero-width contact (the line touches a
/// single vertex) is `Cross(t, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClipResult {
    Miss,
    Cross { t1: f64, t2: f64 },
}

impl ClipResult {
    pub fn is_hit(&self) -> bool {
        matches!(self, ClipResult::Cross { .. })
    }

    pub fn params(&self) -> Option<(f64, f64)> {
        match *self {
            ClipResult::Miss => None,
            ClipResult::Cross { t1, t2 } => Some((t1, t2)),
        }
    }

    /// The same visible set expressed for the reversed segment `x_B → x_A`.
    pub fn reversed(&self) -> Self {
        match *self {
            ClipResult::Miss => ClipResult::Miss,
            ClipResult::Cross { t1, t2 } => ClipResult::Cross {
                t1: 1.0 - t2,
                t2: 1.0 - t1,
            },
        }
    }

    /// Same classification and both parameters within `tol`.
    pub fn approx_eq(&self, other: &ClipResult, tol: f64) -> bool {
        match (self.params(), other.params()) {
            (None, None) => true,
            (Some((a1, a2)), Some((b1, b2))) => (a1 - b1).abs() <= tol && (a2 - b2).abs() <= tol,
            _ => false,
        }
    }

    pub(crate) fn from_interval<S: Scalar>(iv: Option<(S, S)>) -> Self {
        match iv {
            None => ClipResult::Miss,
            Some((t1, t2)) => ClipResult::Cross {
                t1: t1.get(),
                t2: t2.get(),
            },
        }
    }
}

/// Whether the input is an infinite line or the segment `[x_A, x_B]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Line,
    Segment,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Line => "line",
            Mode::Segment => "segment",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Logarithmic chain-discarding clipper.
    Skala,
    CyrusBeck,
    Rappaport,
    /// Brute-force all-edges scan.
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Skala,
        Algorithm::CyrusBeck,
        Algorithm::Rappaport,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Skala => "skala",
            Algorithm::CyrusBeck => "cyrus-beck",
            Algorithm::Rappaport => "rappaport",
            Algorithm::Oracle => "oracle",
        }
    }

    pub fn supports(&self, mode: Mode) -> bool {
        !(matches!(self, Algorithm::Rappaport) && mode == Mode::Line)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ClipError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ClipError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClipError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("{0} clips segments only")]
    SegmentOnly(Algorithm),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
}

/// Clips the line or segment through `a` and `b` with the chosen algorithm.
pub fn run(
    algorithm: Algorithm,
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    mode: Mode,
) -> Result<ClipResult, ClipError> {
    run_in::<f64>((), algorithm, poly, a, b, mode)
}

pub(crate) fn run_in<S: Scalar>(
    ctx: S::Ctx,
    algorithm: Algorithm,
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    mode: Mode,
) -> Result<ClipResult, ClipError> {
    // validation only; the instrumented path builds its own line
    ImplicitLine::through(a, b)?;
    if !algorithm.supports(mode) {
        return Err(ClipError::SegmentOnly(algorithm));
    }
    let (a, b) = (a.lift::<S>(ctx), b.lift::<S>(ctx));
    Ok(match algorithm {
        Algorithm::Skala => skala::clip_in(poly, a, b, mode).0,
        Algorithm::CyrusBeck => cyrus_beck::clip_in(poly, a, b, mode),
        Algorithm::Rappaport => rappaport::clip_in(poly, a, b).0,
        Algorithm::Oracle => oracle::clip_in(poly, a, b, mode),
    })
}

/// Intersects a line interval with `[0, 1]`.
#[inline(always)]
pub(crate) fn clamp_unit<S: Scalar>(iv: Option<(S, S)>) -> Option<(S, S)> {
    let (t1, t2) = iv?;
    let ctx = t1.ctx();
    let zero = S::lift(ctx, 0.0);
    let one = S::lift(ctx, 1.0);
    let lo = if t1 < zero { zero } else { t1 };
    let hi = if t2 > one { one } else { t2 };
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Raised inside a search when a vertex falls in the zero band; the caller
/// reroutes the whole query through the linear scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ZeroContact;

/// Separation values `F(x_i)` of one query, evaluated on demand.
///
/// Searches touch O(lg n) vertices and keep the values they reuse (the
/// interval ends and the midpoint) in local variables, so nothing is
/// evaluated up front.
pub(crate) struct Sides<'a, S: Scalar> {
    poly: &'a ConvexPolygon,
    line: &'a ImplicitLine<S>,
    eps: S,
    neg_eps: S,
}

impl<'a, S: Scalar> Sides<'a, S> {
    pub(crate) fn new(poly: &'a ConvexPolygon, line: &'a ImplicitLine<S>) -> Self {
        let (eps, neg_eps) = poly.zero_band_for(line);
        Self {
            poly,
            line,
            eps,
            neg_eps,
        }
    }

    pub(crate) fn poly(&self) -> &'a ConvexPolygon {
        self.poly
    }

    pub(crate) fn line(&self) -> &'a ImplicitLine<S> {
        self.line
    }

    #[inline(always)]
    pub(crate) fn vertex(&self, i: usize) -> Point2<S> {
        self.poly.vertex_wrapped(i).lift(self.line.a.ctx())
    }

    /// `F` of vertex `i mod n` and its sign class.
    #[inline(always)]
    pub(crate) fn get(&self, i: usize) -> (S, SignClass) {
        let f = self.line.eval(self.vertex(i)).store();
        (f, classify_banded(f, self.eps, self.neg_eps))
    }

    /// Like [`get`](Self::get) but refuses zero-band vertices.
    #[inline(always)]
    pub(crate) fn strict(&self, i: usize) -> Result<(S, SignClass), ZeroContact> {
        match self.get(i) {
            (_, SignClass::Zero) => Err(ZeroContact),
            v => Ok(v),
        }
    }
}
