//! Differential fuzzing of all clippers against the oracle.
//!
//! Trials are split into batches of up to [`BATCH`] segments. Each batch has
//! its own seed derived from the run seed, so batches can be checked in
//! parallel and any disagreement can be replayed from `(seed, batch, segment)`.

use std::fmt;

use lgclip::baselines::{is_degenerate, oracle_clip};
use lgclip::datagen::{fill_segments, gen_polygon, random_inscribed_polygon, rng_from_seed};
use lgclip::{run, Algorithm, ClipResult, ConvexPolygon, ImplicitLine, Mode, Point2};
use rand::Rng;
use rayon::prelude::*;

pub const BATCH: u64 = 100;
pub const TOLERANCE: f64 = 1e-9;
const HIT_PCTS: [u32; 6] = [0, 20, 40, 60, 80, 100];
const R_POLY: f64 = 0.5;
const R_POINTS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
}

/// A clipper under test, taking the segment endpoints and mode.
pub type Clipper = fn(&ConvexPolygon, Point2, Point2, Mode) -> ClipResult;

/// Where a batch came from; enough to rebuild it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchSpec {
    pub batch: u64,
    pub n: usize,
    pub hit_pct: u32,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub seed: u64,
    pub spec: BatchSpec,
    pub segment: usize,
    pub a: Point2,
    pub b: Point2,
    pub algorithm: String,
    pub mode: Mode,
    pub expected: ClipResult,
    pub got: ClipResult,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "reproduce: --seed {} batch {} segment {} (n {}, {}% hits, {} window) {} {}: \
             segment {} {} {} {}: expected {:?}, got {:?}",
            self.seed,
            self.spec.batch,
            self.segment,
            self.spec.n,
            self.spec.hit_pct,
            if self.spec.regular {
                "regular"
            } else {
                "random"
            },
            self.algorithm,
            self.mode,
            self.a.x,
            self.a.y,
            self.b.x,
            self.b.y,
            self.expected,
            self.got
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub trials: u64,
    /// Segments where some vertex lies in the zero band; checked against
    /// the oracle through the fallback only.
    pub degenerate: u64,
    pub disagreements: Vec<Disagreement>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Seed for batch `b`, decorrelated from neighbouring batches.
pub fn batch_seed(seed: u64, b: u64) -> u64 {
    let mut z = seed ^ b.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rebuilds batch `b` of a run: its description, window and segments.
pub fn build_batch(
    cfg: &VerifyConfig,
    b: u64,
) -> (BatchSpec, ConvexPolygon, Vec<(Point2, Point2)>) {
    let mut rng = rng_from_seed(batch_seed(cfg.seed, b));
    let n = rng.random_range(cfg.n_min..=cfg.n_max);
    let hit_pct = HIT_PCTS[(b % HIT_PCTS.len() as u64) as usize];
    let regular = b.is_multiple_of(2);
    let poly = if regular {
        gen_polygon(n, R_POLY, rng.random_range(0.0..std::f64::consts::TAU))
    } else {
        random_inscribed_polygon(&mut rng, n, R_POLY)
    }
    .expect("generated windows are valid");
    let count = BATCH.min(cfg.trials - b * BATCH) as usize;
    let segs = fill_segments(&mut rng, &poly, R_POINTS, count, Some(hit_pct))
        .expect("hit quotas are feasible for these radii");
    let spec = BatchSpec {
        batch: b,
        n,
        hit_pct,
        regular,
    };
    (spec, poly, segs)
}

fn skala(poly: &ConvexPolygon, a: Point2, b: Point2, mode: Mode) -> ClipResult {
    run(Algorithm::Skala, poly, a, b, mode).expect("valid segment")
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    run_verify_with(cfg, skala)
}

/// Like [`run_verify`] but with `skala` standing in for the logarithmic
/// clipper, to check that the harness notices a broken implementation.
pub fn run_verify_with(cfg: &VerifyConfig, skala: Clipper) -> VerifyReport {
    assert!(
        3 <= cfg.n_min && cfg.n_min <= cfg.n_max,
        "need 3 ≤ n_min ≤ n_max"
    );
    let batches = cfg.trials.div_ceil(BATCH);
    let mut per_batch: Vec<(u64, u64, Vec<Disagreement>)> = (0..batches)
        .into_par_iter()
        .map(|b| check_batch(cfg, b, skala))
        .collect();
    per_batch.sort_by_key(|x| x.0);
    let mut report = VerifyReport {
        trials: cfg.trials,
        ..Default::default()
    };
    for (_, degenerate, d) in per_batch {
        report.degenerate += degenerate;
        report.disagreements.extend(d);
    }
    report
}

fn check_batch(cfg: &VerifyConfig, b: u64, skala: Clipper) -> (u64, u64, Vec<Disagreement>) {
    let (spec, poly, segs) = build_batch(cfg, b);
    let mut degenerate = 0;
    let mut out = Vec::new();
    for (i, &(a, bp)) in segs.iter().enumerate() {
        let mut check = |name: &str, mode: Mode, got: ClipResult| {
            let expected = oracle_clip(&poly, a, bp, mode).expect("valid segment");
            if !got.approx_eq(&expected, TOLERANCE) {
                out.push(Disagreement {
                    seed: cfg.seed,
                    spec,
                    segment: i,
                    a,
                    b: bp,
                    algorithm: name.to_string(),
                    mode,
                    expected,
                    got,
                });
            }
        };
        let line = ImplicitLine::through(a, bp).expect("generated segments are proper");
        if is_degenerate(&poly, &line) {
            degenerate += 1;
            for mode in [Mode::Line, Mode::Segment] {
                check("skala", mode, skala(&poly, a, bp, mode));
            }
            continue;
        }
        for mode in [Mode::Line, Mode::Segment] {
            check("skala", mode, skala(&poly, a, bp, mode));
            for algo in [Algorithm::CyrusBeck, Algorithm::Rappaport] {
                if algo.supports(mode) {
                    let r = run(algo, &poly, a, bp, mode).expect("valid segment");
                    check(algo.name(), mode, r);
                }
            }
        }
    }
    (b, degenerate, out)
}
