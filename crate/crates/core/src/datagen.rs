//! Reproducible benchmark inputs: regular windows inscribed in a circle and
//! segments whose endpoints are uniform in a larger concentric disc.
//!
//! Everything is drawn from one PCG-64 stream seeded by [`GenConfig::seed`],
//! so an instance is a pure function of its configuration.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use thiserror::Error;

use crate::baselines::oracle;
use crate::clip::Mode;
use crate::geom::{ConvexPolygon, GeomError, Point2};

/// Name of the generator, as recorded in instance file headers.
pub const RNG_NAME: &str = "pcg64";

pub const DEFAULT_R_POINTS: f64 = 1.0;
pub const DEFAULT_R_POLY: f64 = 0.5;

/// Candidate segments allowed per requested segment before a hit-rate target
/// is declared infeasible.
const DRAWS_PER_SEGMENT: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    /// Circumradius of the window.
    pub r_poly: f64,
    /// Radius of the disc the endpoints are drawn from.
    pub r_points: f64,
    pub count: usize,
    pub seed: u64,
    /// Exact percentage of emitted segments that must intersect the window.
    pub target_hit_pct: Option<u32>,
    /// Window rotation; drawn from the stream when `None`.
    pub rotation: Option<f64>,
}

impl GenConfig {
    pub fn new(n: usize, count: usize, seed: u64) -> Self {
        Self {
            n,
            r_poly: DEFAULT_R_POLY,
            r_points: DEFAULT_R_POINTS,
            count,
            seed,
            target_hit_pct: None,
            rotation: None,
        }
    }

    pub fn with_hit_pct(mut self, pct: u32) -> Self {
        self.target_hit_pct = Some(pct);
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidConfig(m.to_string()));
        if self.n < 3 {
            return bad("n must be at least 3");
        }
        if !(self.r_poly > 0.0 && self.r_poly < self.r_points && self.r_points.is_finite()) {
            return bad("radii must satisfy 0 < r_poly < r_points");
        }
        if self.count == 0 {
            return bad("count must be at least 1");
        }
        if self.target_hit_pct.is_some_and(|p| p > 100) {
            return bad("hit percentage must be within 0..=100");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("could not reach {pct}% hits within {draws} candidate segments")]
    InfeasibleTarget { pct: u32, draws: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A window and a batch of segments to clip against it.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub polygon: ConvexPolygon,
    pub segments: Vec<(Point2, Point2)>,
    pub seed: u64,
}

pub fn rng_from_seed(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

/// Regular `n`-gon with vertex `k` at angle `rotation + 2πk/n` on the circle
/// of radius `r` about the origin.
pub fn gen_polygon(n: usize, r: f64, rotation: f64) -> Result<ConvexPolygon, GeomError> {
    ConvexPolygon::new(
        (0..n)
            .map(|k| {
                let a = rotation + 2.0 * PI * k as f64 / n as f64;
                Point2::new(r * a.cos(), r * a.sin())
            })
            .collect(),
    )
}

/// Convex `n`-gon with vertices at independent uniform angles on the circle
/// of radius `r`. Redraws in the (rare) event two angles nearly coincide.
pub fn random_inscribed_polygon<R: Rng>(
    rng: &mut R,
    n: usize,
    r: f64,
) -> Result<ConvexPolygon, GeomError> {
    let mut last = Err(GeomError::TooFewVertices(n));
    for _ in 0..64 {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        last = ConvexPolygon::new(
            angles
                .iter()
                .map(|a| Point2::new(r * a.cos(), r * a.sin()))
                .collect(),
        );
        if last.is_ok() {
            break;
        }
    }
    last
}

/// A point uniform in the disc of radius `r`, by rejection from the
/// bounding square.
pub fn uniform_in_disc<R: Rng>(rng: &mut R, r: f64) -> Point2 {
    loop {
        let x = rng.random_range(-r..=r);
        let y = rng.random_range(-r..=r);
        if x * x + y * y <= r * r {
            return Point2::new(x, y);
        }
    }
}

fn random_segment<R: Rng>(rng: &mut R, r: f64) -> (Point2, Point2) {
    loop {
        let a = uniform_in_disc(rng, r);
        let b = uniform_in_disc(rng, r);
        if a != b {
            return (a, b);
        }
    }
}

/// Window and segments for `config`.
pub fn gen_instance(config: &GenConfig) -> Result<Instance, GenError> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let rotation = match config.rotation {
        Some(r) => r,
        None => rng.random_range(0.0..2.0 * PI),
    };
    let polygon = gen_polygon(config.n, config.r_poly, rotation)?;
    let segments = fill_segments(
        &mut rng,
        &polygon,
        config.r_points,
        config.count,
        config.target_hit_pct,
    )?;
    Ok(Instance {
        polygon,
        segments,
        seed: config.seed,
    })
}

/// Just the segments of [`gen_instance`].
pub fn gen_segments(config: &GenConfig) -> Result<Vec<(Point2, Point2)>, GenError> {
    Ok(gen_instance(config)?.segments)
}

/// Number of hits a batch of `count` segments must contain at `pct`%.
pub fn hit_quota(count: usize, pct: u32) -> usize {
    (count * pct as usize + 50) / 100
}

/// `count` segments with endpoints uniform in the disc of radius `r_points`.
///
/// With `hit_pct` set, candidates are classified against `polygon` by the
/// oracle and accepted only while the hit or miss quota they belong to is
/// still open, so the batch contains exactly [`hit_quota`] hits.
pub fn fill_segments<R: Rng>(
    rng: &mut R,
    polygon: &ConvexPolygon,
    r_points: f64,
    count: usize,
    hit_pct: Option<u32>,
) -> Result<Vec<(Point2, Point2)>, GenError> {
    let Some(pct) = hit_pct else {
        return Ok((0..count).map(|_| random_segment(rng, r_points)).collect());
    };
    let want_hits = hit_quota(count, pct);
    let want_misses = count - want_hits;
    let (mut hits, mut misses) = (0, 0);
    let mut out = Vec::with_capacity(count);
    let max_draws = DRAWS_PER_SEGMENT.saturating_mul(count);
    for _ in 0..max_draws {
        if out.len() == count {
            break;
        }
        let (a, b) = random_segment(rng, r_points);
        let hit = oracle::oracle_clip(polygon, a, b, Mode::Segment)?.is_hit();
        if hit && hits < want_hits {
            hits += 1;
            out.push((a, b));
        } else if !hit && misses < want_misses {
            misses += 1;
            out.push((a, b));
        }
    }
    if out.len() == count {
        Ok(out)
    } else {
        Err(GenError::InfeasibleTarget {
            pct,
            draws: max_draws,
        })
    }
}
