//! Wall-clock and operation-count measurements over generated batches.

use std::hint::black_box;
use std::time::{Duration, Instant};

use lgclip::costmodel::{counting_run, theoretical_nu, weighted_mean_time, FPU_WEIGHTS};
use lgclip::datagen::{gen_instance, GenConfig, GenError};
use lgclip::{run, Algorithm, ConvexPolygon, Mode, Point2};

/// The clippers a benchmark compares. The first one is the reference `T`.
pub const BENCH_ALGOS: [Algorithm; 3] =
    [Algorithm::Skala, Algorithm::CyrusBeck, Algorithm::Rappaport];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Time,
    Ops,
    Both,
}

impl Measure {
    fn time(self) -> bool {
        matches!(self, Measure::Time | Measure::Both)
    }

    fn ops(self) -> bool {
        matches!(self, Measure::Ops | Measure::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub hit_pct_list: Vec<u32>,
    pub segments: usize,
    pub seed: u64,
    pub measure: Measure,
    pub warmup: usize,
    pub reps: usize,
}

impl BenchConfig {
    pub fn new(n_list: Vec<usize>, seed: u64) -> Self {
        Self {
            n_list,
            hit_pct_list: vec![50],
            segments: 1000,
            seed,
            measure: Measure::Both,
            warmup: 5,
            reps: 7,
        }
    }
}

/// One (N, hit percentage, algorithm) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub hit_pct: u32,
    pub algo: Algorithm,
    pub calls: usize,
    /// Median over repetitions of the mean time per call.
    pub mean_ns: Option<f64>,
    /// Mean operation counts per call: assign, cmp, addsub, mul, div.
    pub mean_ops: Option<[f64; 5]>,
    pub nu1: f64,
    pub nu2_analytic: f64,
    pub nu3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchMeta {
    pub host: String,
    pub timer_resolution_ns: f64,
    pub seed: u64,
    pub segments: usize,
    pub warmup: usize,
    pub reps: usize,
    /// What the ν columns are computed from: `time` or `ops`.
    pub nu_basis: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub meta: BenchMeta,
    pub rows: Vec<BenchRow>,
}

/// Seed of the batch for one (N, hit percentage) cell.
pub fn cell_seed(seed: u64, n: usize, hit_pct: u32) -> u64 {
    seed.wrapping_mul(1_000_003)
        .wrapping_add((n as u64) << 8)
        .wrapping_add(hit_pct as u64)
}

fn time_batch(algo: Algorithm, poly: &ConvexPolygon, segs: &[(Point2, Point2)]) -> Duration {
    let start = Instant::now();
    for &(a, b) in segs {
        black_box(
            run(
                algo,
                black_box(poly),
                black_box(a),
                black_box(b),
                Mode::Segment,
            )
            .ok(),
        );
    }
    start.elapsed()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Median-of-repetitions mean time per call, after warm-up batches.
pub fn measure_time(
    algo: Algorithm,
    poly: &ConvexPolygon,
    segs: &[(Point2, Point2)],
    warmup: usize,
    reps: usize,
) -> f64 {
    for _ in 0..warmup {
        time_batch(algo, poly, segs);
    }
    let per_call: Vec<f64> = (0..reps.max(1))
        .map(|_| time_batch(algo, poly, segs).as_nanos() as f64 / segs.len() as f64)
        .collect();
    median(per_call)
}

pub fn measure_ops(algo: Algorithm, poly: &ConvexPolygon, segs: &[(Point2, Point2)]) -> [f64; 5] {
    let mut sum = [0u64; 5];
    for &(a, b) in segs {
        let (_, c) = counting_run(algo, poly, a, b, Mode::Segment).expect("valid segment");
        for (s, v) in sum.iter_mut().zip(c.as_array()) {
            *s += v;
        }
    }
    sum.map(|s| s as f64 / segs.len() as f64)
}

/// Smallest positive step between consecutive clock readings.
pub fn timer_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..1000 {
        let t0 = Instant::now();
        let mut t1 = Instant::now();
        while t1 == t0 {
            t1 = Instant::now();
        }
        best = best.min(t1 - t0);
    }
    best
}

pub fn host_description() -> String {
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{}-{} {} cpus",
        std::env::consts::ARCH,
        std::env::consts::OS,
        cpus
    )
}

/// Cost of one algorithm's cell on the chosen basis.
fn cost(row: &BenchRow, basis_time: bool) -> f64 {
    if basis_time {
        row.mean_ns.unwrap_or(f64::NAN)
    } else {
        row.mean_ops
            .map_or(f64::NAN, |m| weighted_mean_time(m, &FPU_WEIGHTS))
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, GenError> {
    let basis_time = cfg.measure.time();
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        for &pct in &cfg.hit_pct_list {
            let gen =
                GenConfig::new(n, cfg.segments, cell_seed(cfg.seed, n, pct)).with_hit_pct(pct);
            let inst = gen_instance(&gen)?;
            let mut cell: Vec<BenchRow> = BENCH_ALGOS
                .iter()
                .map(|&algo| BenchRow {
                    n,
                    hit_pct: pct,
                    algo,
                    calls: inst.segments.len(),
                    mean_ns: cfg.measure.time().then(|| {
                        measure_time(algo, &inst.polygon, &inst.segments, cfg.warmup, cfg.reps)
                    }),
                    mean_ops: cfg
                        .measure
                        .ops()
                        .then(|| measure_ops(algo, &inst.polygon, &inst.segments)),
                    nu1: f64::NAN,
                    nu2_analytic: theoretical_nu(n).nu2,
                    nu3: f64::NAN,
                })
                .collect();
            let t = cost(&cell[0], basis_time);
            let (nu1, nu3) = (
                cost(&cell[1], basis_time) / t,
                cost(&cell[2], basis_time) / t,
            );
            for r in &mut cell {
                r.nu1 = nu1;
                r.nu3 = nu3;
            }
            rows.extend(cell);
        }
    }
    Ok(BenchReport {
        meta: BenchMeta {
            host: host_description(),
            timer_resolution_ns: timer_resolution().as_nanos() as f64,
            seed: cfg.seed,
            segments: cfg.segments,
            warmup: cfg.warmup,
            reps: cfg.reps,
            nu_basis: if basis_time { "time" } else { "ops" },
        },
        rows,
    })
}
