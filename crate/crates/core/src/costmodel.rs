//! Floating-point operation accounting.
//!
//! Costs are 5-tuples over the operation classes `(:=, <, ±, *, /)`, weighted
//! by per-operation times of a 486-class FPU. [`AlgorithmProfile`] holds the
//! published complexity of each competitor; [`Counted`] measures the same
//! tuple empirically by running a clipper on an instrumented scalar.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::clip::{self, Algorithm, ClipError, ClipResult, Mode};
use crate::geom::{ConvexPolygon, Point2};
use crate::scalar::Scalar;

/// Counts of `(:=, <, ±, *, /)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OpTuple {
    pub assign: u64,
    pub cmp: u64,
    pub addsub: u64,
    pub mul: u64,
    pub div: u64,
}

/// Snapshot of an [`OpCounter`].
pub type OpCounts = OpTuple;

impl OpTuple {
    pub const fn new(assign: u64, cmp: u64, addsub: u64, mul: u64, div: u64) -> Self {
        Self {
            assign,
            cmp,
            addsub,
            mul,
            div,
        }
    }

    pub fn total(&self) -> u64 {
        self.assign + self.cmp + self.addsub + self.mul + self.div
    }

    pub fn as_array(&self) -> [u64; 5] {
        [self.assign, self.cmp, self.addsub, self.mul, self.div]
    }
}

impl Add for OpTuple {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.assign + o.assign,
            self.cmp + o.cmp,
            self.addsub + o.addsub,
            self.mul + o.mul,
            self.div + o.div,
        )
    }
}

impl AddAssign for OpTuple {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl fmt::Display for OpTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.assign, self.cmp, self.addsub, self.mul, self.div
        )
    }
}

/// Time units per operation class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub assign: f64,
    pub cmp: f64,
    pub addsub: f64,
    pub mul: f64,
    pub div: f64,
}

/// Operation timings of the reference PC 486 (float).
pub const FPU_WEIGHTS: Weights = Weights {
    assign: 33.0,
    cmp: 50.0,
    addsub: 16.0,
    mul: 20.0,
    div: 114.0,
};

/// Dot product of a tuple with the weights.
pub fn weighted_time(t: &OpTuple, w: &Weights) -> f64 {
    t.assign as f64 * w.assign
        + t.cmp as f64 * w.cmp
        + t.addsub as f64 * w.addsub
        + t.mul as f64 * w.mul
        + t.div as f64 * w.div
}

/// Weighted time of a mean (non-integer) count vector `[:=, <, ±, *, /]`.
pub fn weighted_mean_time(mean: [f64; 5], w: &Weights) -> f64 {
    mean[0] * w.assign + mean[1] * w.cmp + mean[2] * w.addsub + mean[3] * w.mul + mean[4] * w.div
}

/// `⌈lg(n + 1)⌉`, the number of halving steps for an `n`-vertex window.
///
/// The published linear-time formulas write the floor; only the ceiling
/// reproduces the published speed-up table.
pub fn lg_steps(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// One step per window vertex.
    PerVertex,
    /// `⌈lg(n + 1)⌉` steps.
    PerLg,
}

/// Published cost profile of a clipping algorithm: `fixed + per_step · steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmProfile {
    pub name: &'static str,
    pub fixed: OpTuple,
    pub per_step: OpTuple,
    pub step_kind: StepKind,
    pub published_fixed_time: f64,
    pub published_per_step_time: f64,
}

pub const CYRUS_BECK: AlgorithmProfile = AlgorithmProfile {
    name: "cyrus-beck",
    fixed: OpTuple::new(8, 3, 6, 4, 0),
    per_step: OpTuple::new(5, 3, 7, 4, 1),
    step_kind: StepKind::PerVertex,
    published_fixed_time: 590.0,
    published_per_step_time: 621.0,
};

/// Worst case of the efficient Cyrus-Beck variant. Only its costs are
/// modelled; there is no executable implementation.
pub const ECB: AlgorithmProfile = AlgorithmProfile {
    name: "ecb",
    fixed: OpTuple::new(15, 3, 11, 14, 2),
    per_step: OpTuple::new(3, 1, 1, 3, 0),
    step_kind: StepKind::PerVertex,
    published_fixed_time: 1329.0,
    published_per_step_time: 257.0,
};

pub const RAPPAPORT: AlgorithmProfile = AlgorithmProfile {
    name: "rappaport",
    fixed: OpTuple::new(4, 2, 12, 22, 2),
    per_step: OpTuple::new(0, 4, 14, 8, 0),
    step_kind: StepKind::PerLg,
    published_fixed_time: 1092.0,
    published_per_step_time: 584.0,
};

/// The logarithmic chain-discarding clipper.
pub const SKALA: AlgorithmProfile = AlgorithmProfile {
    name: "skala",
    fixed: OpTuple::new(14, 4, 11, 15, 2),
    per_step: OpTuple::new(2, 4, 6, 6, 0),
    step_kind: StepKind::PerLg,
    published_fixed_time: 1267.0,
    published_per_step_time: 376.0,
};

impl AlgorithmProfile {
    pub fn steps(&self, n: usize) -> u64 {
        match self.step_kind {
            StepKind::PerVertex => n as u64,
            StepKind::PerLg => lg_steps(n) as u64,
        }
    }

    /// Estimated time from the published linear constants.
    pub fn estimate_time(&self, n: usize) -> f64 {
        self.published_fixed_time + self.published_per_step_time * self.steps(n) as f64
    }

    /// Estimated time recomputed from the operation tuples. Differs from
    /// [`estimate_time`](Self::estimate_time) wherever the published
    /// constants disagree with their own tuples.
    pub fn tuple_time(&self, n: usize, w: &Weights) -> f64 {
        weighted_time(&self.fixed, w) + weighted_time(&self.per_step, w) * self.steps(n) as f64
    }
}

/// Effectivity coefficients: speed-up of the logarithmic clipper over
/// Cyrus-Beck (`nu1`), the efficient Cyrus-Beck variant (`nu2`) and
/// Rappaport's algorithm (`nu3`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effectivity {
    pub nu1: f64,
    pub nu2: f64,
    pub nu3: f64,
}

/// Worst-case theoretical effectivity for an `n`-vertex window.
pub fn theoretical_nu(n: usize) -> Effectivity {
    let t = SKALA.estimate_time(n);
    Effectivity {
        nu1: CYRUS_BECK.estimate_time(n) / t,
        nu2: ECB.estimate_time(n) / t,
        nu3: RAPPAPORT.estimate_time(n) / t,
    }
}

/// Per-invocation operation counters.
#[derive(Debug, Default)]
pub struct OpCounter {
    assign: Cell<u64>,
    cmp: Cell<u64>,
    addsub: Cell<u64>,
    mul: Cell<u64>,
    div: Cell<u64>,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self) -> OpCounts {
        OpTuple::new(
            self.assign.get(),
            self.cmp.get(),
            self.addsub.get(),
            self.mul.get(),
            self.div.get(),
        )
    }

    /// Creates an instrumented value bound to this counter.
    pub fn value(&self, v: f64) -> Counted<'_> {
        Counted { v, ctr: self }
    }
}

#[inline(always)]
fn bump(c: &Cell<u64>) {
    c.set(c.get() + 1);
}

/// An `f64` that records every tracked operation in the counter it carries.
#[derive(Clone, Copy)]
pub struct Counted<'c> {
    v: f64,
    ctr: &'c OpCounter,
}

impl fmt::Debug for Counted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.v.fmt(f)
    }
}

macro_rules! counted_binop {
    ($tr:ident, $method:ident, $field:ident, $op:tt) => {
        impl<'c> $tr for Counted<'c> {
            type Output = Self;
            #[inline(always)]
            fn $method(self, o: Self) -> Self {
                debug_assert!(std::ptr::eq(self.ctr, o.ctr), "mixed counting contexts");
                bump(&self.ctr.$field);
                Counted { v: self.v $op o.v, ctr: self.ctr }
            }
        }
    };
}

counted_binop!(Add, add, addsub, +);
counted_binop!(Sub, sub, addsub, -);
counted_binop!(Mul, mul, mul, *);
counted_binop!(Div, div, div, /);

impl Neg for Counted<'_> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        bump(&self.ctr.addsub);
        Counted {
            v: -self.v,
            ctr: self.ctr,
        }
    }
}

impl PartialEq for Counted<'_> {
    fn eq(&self, o: &Self) -> bool {
        bump(&self.ctr.cmp);
        self.v == o.v
    }
}

impl PartialOrd for Counted<'_> {
    #[inline(always)]
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        bump(&self.ctr.cmp);
        self.v.partial_cmp(&o.v)
    }
}

impl<'c> Scalar for Counted<'c> {
    type Ctx = &'c OpCounter;

    #[inline(always)]
    fn lift(ctx: &'c OpCounter, v: f64) -> Self {
        Counted { v, ctr: ctx }
    }

    #[inline(always)]
    fn get(self) -> f64 {
        self.v
    }

    #[inline(always)]
    fn ctx(self) -> &'c OpCounter {
        self.ctr
    }

    #[inline(always)]
    fn abs(self) -> Self {
        Counted {
            v: self.v.abs(),
            ctr: self.ctr,
        }
    }

    #[inline(always)]
    fn store(self) -> Self {
        bump(&self.ctr.assign);
        self
    }
}

/// Runs one clipping query on the instrumented scalar and returns its result
/// together with the operations it performed.
pub fn counting_run(
    algorithm: Algorithm,
    poly: &ConvexPolygon,
    a: Point2,
    b: Point2,
    mode: Mode,
) -> Result<(ClipResult, OpCounts), ClipError> {
    let counter = OpCounter::new();
    let result = clip::run_in::<Counted<'_>>(&counter, algorithm, poly, a, b, mode)?;
    Ok((result, counter.counts()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_time_reproduces_published_constants() {
        let w = &FPU_WEIGHTS;
        assert_eq!(weighted_time(&OpTuple::new(8, 3, 6, 4, 0), w), 590.0);
        assert_eq!(weighted_time(&OpTuple::new(5, 3, 7, 4, 1), w), 621.0);
        assert_eq!(weighted_time(&OpTuple::new(0, 4, 14, 8, 0), w), 584.0);
        assert_eq!(weighted_time(&OpTuple::default(), w), 0.0);
    }

    #[test]
    fn lg_steps_is_ceiling_of_lg_n_plus_1() {
        for n in 1..5000usize {
            let expect = ((n + 1) as f64).log2().ceil() as u32;
            assert_eq!(lg_steps(n), expect, "n = {n}");
        }
    }

    #[test]
    fn estimate_times() {
        assert_eq!(CYRUS_BECK.estimate_time(10), 6800.0);
        assert_eq!(RAPPAPORT.estimate_time(8), 3428.0);
        assert_eq!(SKALA.estimate_time(100), 3899.0);
    }

    #[test]
    fn theoretical_nu_spot_values() {
        let e = theoretical_nu(10);
        assert!((e.nu1 - 6800.0 / 2771.0).abs() < 1e-15);
        assert!((e.nu2 - 3899.0 / 2771.0).abs() < 1e-15);
        assert!((e.nu3 - 3428.0 / 2771.0).abs() < 1e-15);
        let r2 = |x: f64| (x * 100.0).round() / 100.0;
        let e = theoretical_nu(100);
        assert_eq!((r2(e.nu1), r2(e.nu2), r2(e.nu3)), (16.08, 6.93, 1.33));
        let e = theoretical_nu(4);
        assert_eq!((r2(e.nu1), r2(e.nu2), r2(e.nu3)), (1.28, 0.98, 1.19));
    }

    #[test]
    fn counted_tallies_each_class() {
        let c = OpCounter::new();
        let x = c.value(3.0);
        let y = c.value(2.0);
        let z = ((x + y) * (x - y) / y).store();
        assert!(z < x);
        assert!(-z < y);
        assert_eq!(c.counts(), OpTuple::new(1, 2, 3, 1, 1));
        assert_eq!(z.get(), 2.5);
    }

    #[test]
    fn separate_counters_do_not_interfere() {
        let c1 = OpCounter::new();
        let c2 = OpCounter::new();
        let _ = c1.value(1.0) + c1.value(2.0);
        let _ = c2.value(1.0) * c2.value(2.0);
        assert_eq!(c1.counts(), OpTuple::new(0, 0, 1, 0, 0));
        assert_eq!(c2.counts(), OpTuple::new(0, 0, 0, 1, 0));
    }
}
