//! Numeric abstraction shared by every clipper.
//!
//! All clipping code is written once over [`Scalar`]. With `f64` it runs at
//! full speed; with [`Counted`](crate::costmodel::Counted) every tracked
//! floating-point operation is tallied into an explicit per-query counter.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number type the clippers can run on.
///
/// Comparisons go through `PartialOrd`, arithmetic through the usual operator
/// traits. Assignments cannot be overloaded in Rust, so code that stores a
/// floating-point value into a named variable marks it with [`Scalar::store`].
pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whatever the type needs in order to create new values (a counter
    /// handle for instrumented scalars, nothing for `f64`).
    type Ctx: Copy;

    /// Wraps a plain value read from memory. Not counted.
    fn lift(ctx: Self::Ctx, v: f64) -> Self;

    /// The underlying value. Not counted.
    fn get(self) -> f64;

    /// The context this value belongs to.
    fn ctx(self) -> Self::Ctx;

    /// Magnitude. Sign manipulation is not one of the tracked operation
    /// classes, so this is never counted.
    fn abs(self) -> Self;

    /// Marks an assignment (`:=`) of this value to a variable.
    #[inline(always)]
    fn store(self) -> Self {
        self
    }
}

impl Scalar for f64 {
    type Ctx = ();

    #[inline(always)]
    fn lift(_: (), v: f64) -> f64 {
        v
    }

    #[inline(always)]
    fn get(self) -> f64 {
        self
    }

    #[inline(always)]
    fn ctx(self) {}

    #[inline(always)]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
}
