//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lgclip::datagen::{gen_instance, GenConfig, DEFAULT_R_POINTS, DEFAULT_R_POLY, RNG_NAME};
use lgclip::{run, Algorithm, ClipError, Mode};

use crate::bench::{run_bench, BenchConfig, Measure};
use crate::format::{
    read_instance, read_results, write_instance, write_results, InstanceFile, ResultRecord,
};
use crate::render::render_svg;
use crate::report::{write_csv, write_markdown};
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lgclip",
    version,
    about = "Line and segment clipping against convex polygons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgoArg {
    Skala,
    CyrusBeck,
    Rappaport,
    Oracle,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Skala => Algorithm::Skala,
            AlgoArg::CyrusBeck => Algorithm::CyrusBeck,
            AlgoArg::Rappaport => Algorithm::Rappaport,
            AlgoArg::Oracle => Algorithm::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Line,
    Segment,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Line => Mode::Line,
            ModeArg::Segment => Mode::Segment,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MeasureArg {
    Time,
    Ops,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportArg {
    Csv,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a window and a batch of random segments.
    Gen {
        /// Number of window vertices (at least 3).
        #[arg(long)]
        n: usize,
        /// Number of segments.
        #[arg(long, default_value_t = 1000)]
        segments: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Circumradius of the window.
        #[arg(long, default_value_t = DEFAULT_R_POLY)]
        r_poly: f64,
        /// Radius of the disc segment endpoints are drawn from.
        #[arg(long, default_value_t = DEFAULT_R_POINTS)]
        r_points: f64,
        /// Exact percentage of segments that intersect the window.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=100))]
        hit_pct: Option<u32>,
    },
    /// Clip every segment of an instance file.
    Clip {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, value_enum, default_value = "segment")]
        mode: ModeArg,
        /// Instance file.
        instance: PathBuf,
        /// Result file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare all clippers against the brute-force oracle on random inputs.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
    /// Time and count operations of the clippers.
    Bench {
        /// Comma-separated window sizes.
        #[arg(long, value_delimiter = ',', default_value = "10,30,50,100")]
        n_list: Vec<usize>,
        /// Segments per (N, hit %) cell.
        #[arg(long, default_value_t = 1000)]
        segments: usize,
        /// Comma-separated hit percentages.
        #[arg(long, value_delimiter = ',', default_value = "0,20,40,60,80,100")]
        hit_pct_list: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "both")]
        mode: MeasureArg,
        #[arg(long, value_enum, default_value = "md")]
        report: ReportArg,
        /// Report file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance and, optionally, its clipping results as SVG.
    Render {
        /// Instance file.
        instance: PathBuf,
        /// Result file produced by `clip`.
        #[arg(long)]
        results: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn load_instance(path: &Path) -> Result<InstanceFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Gen {
            n,
            segments,
            seed,
            out,
            r_poly,
            r_points,
            hit_pct,
        } => {
            let cfg = GenConfig {
                n,
                r_poly,
                r_points,
                count: segments,
                seed,
                target_hit_pct: hit_pct,
                rotation: None,
            };
            let inst = gen_instance(&cfg).map_err(|e| e.to_string())?;
            emit(out.as_deref(), &write_instance(&inst.into()))?;
            eprintln!(
                "generated n={n} segments={segments} seed={seed} rng={RNG_NAME} r_poly={r_poly} \
                 r_points={r_points} hit_pct={}",
                hit_pct.map_or("any".to_string(), |p| p.to_string())
            );
            Ok(EXIT_OK)
        }
        Command::Clip {
            algo,
            mode,
            instance,
            out,
        } => {
            let (algo, mode) = (Algorithm::from(algo), Mode::from(mode));
            if !algo.supports(mode) {
                return Err(ClipError::SegmentOnly(algo).to_string());
            }
            let inst = load_instance(&instance)?;
            let mut recs = Vec::with_capacity(inst.segments.len());
            for (id, &(a, b)) in inst.segments.iter().enumerate() {
                let r = run(algo, &inst.polygon, a, b, mode)
                    .map_err(|e| format!("segment {id}: {e}"))?;
                recs.push(ResultRecord::new(id, r, a, b));
            }
            emit(out.as_deref(), &write_results(&recs))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            trials,
            seed,
            n_min,
            n_max,
        } => {
            if n_min < 3 || n_min > n_max {
                return Err("need 3 ≤ --n-min ≤ --n-max".into());
            }
            let rep = run_verify(&VerifyConfig {
                trials,
                seed,
                n_min,
                n_max,
            });
            for d in &rep.disagreements {
                println!("{d}");
            }
            println!(
                "trials {} degenerate {} disagreements {}",
                rep.trials,
                rep.degenerate,
                rep.disagreements.len()
            );
            Ok(if rep.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Bench {
            n_list,
            segments,
            hit_pct_list,
            seed,
            mode,
            report,
            out,
        } => {
            if n_list.is_empty() || n_list.iter().any(|&n| n < 3) {
                return Err("--n-list needs window sizes of at least 3".into());
            }
            if hit_pct_list.is_empty() || hit_pct_list.iter().any(|&p| p > 100) {
                return Err("--hit-pct-list needs percentages within 0..=100".into());
            }
            if segments == 0 {
                return Err("--segments must be positive".into());
            }
            let mut cfg = BenchConfig::new(n_list, seed);
            cfg.segments = segments;
            cfg.hit_pct_list = hit_pct_list;
            cfg.measure = match mode {
                MeasureArg::Time => Measure::Time,
                MeasureArg::Ops => Measure::Ops,
                MeasureArg::Both => Measure::Both,
            };
            let rep = run_bench(&cfg).map_err(|e| e.to_string())?;
            let text = match report {
                ReportArg::Md => write_markdown(&rep),
                ReportArg::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&rep, &mut buf).map_err(|e| e.to_string())?;
                    String::from_utf8(buf).map_err(|e| e.to_string())?
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Render {
            instance,
            results,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let res = match results {
                None => None,
                Some(p) => {
                    let text =
                        fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    let recs = read_results(&text).map_err(|e| format!("{}: {e}", p.display()))?;
                    let mut by_id = vec![lgclip::ClipResult::Miss; inst.segments.len()];
                    for r in recs {
                        let slot = by_id.get_mut(r.id).ok_or_else(|| {
                            format!("{}: record id {} has no segment", p.display(), r.id)
                        })?;
                        *slot = r.result;
                    }
                    Some(by_id)
                }
            };
            let svg = render_svg(&inst.polygon, &inst.segments, res.as_deref());
            emit(Some(&out), &svg)?;
            Ok(EXIT_OK)
        }
    }
}
