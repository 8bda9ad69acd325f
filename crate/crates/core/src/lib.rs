//! Clipping lines and segments against convex polygons.
//!
//! The main entry points are [`skala::clip_line`] and [`skala::clip_segment`],
//! a logarithmic-time clipper. [`baselines`] holds a classical linear clipper,
//! a second logarithmic clipper and a brute-force oracle; [`costmodel`] counts
//! floating-point operations, and [`datagen`] produces reproducible inputs.

pub mod baselines;
pub mod clip;
pub mod costmodel;
pub mod datagen;
pub mod geom;
pub mod scalar;
pub mod skala;

pub use clip::{run, Algorithm, ClipError, ClipResult, Mode};
pub use geom::{ConvexPolygon, GeomError, ImplicitLine, Point2, SignClass};
