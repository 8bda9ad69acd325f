//! CSV and Markdown renderings of a [`BenchReport`].

use std::fmt::Write as _;
use std::io;

use lgclip::costmodel::{theoretical_nu, weighted_mean_time, FPU_WEIGHTS};
use lgclip::Algorithm;

use crate::bench::{BenchReport, BenchRow};

pub const CSV_COLUMNS: [&str; 13] = [
    "n",
    "hit_pct",
    "algo",
    "calls",
    "mean_ns",
    "assign",
    "cmp",
    "addsub",
    "mul",
    "div",
    "nu1",
    "nu2_analytic",
    "nu3",
];

/// Window sizes of the worst-case estimate table.
pub const THEORY_NS: [usize; 11] = [4, 5, 6, 7, 8, 9, 10, 20, 30, 50, 100];

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// Metadata as `#` comment lines, then a header row and one row per cell.
pub fn write_csv<W: io::Write>(report: &BenchReport, mut out: W) -> io::Result<()> {
    let m = &report.meta;
    writeln!(out, "# host {}", m.host)?;
    writeln!(out, "# timer_resolution_ns {}", m.timer_resolution_ns)?;
    writeln!(out, "# seed {}", m.seed)?;
    writeln!(out, "# segments {}", m.segments)?;
    writeln!(out, "# warmup_batches {} repetitions {}", m.warmup, m.reps)?;
    writeln!(out, "# nu_basis {}", m.nu_basis)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in &report.rows {
        let ops = r.mean_ops.map(|o| o.map(|v| v.to_string()));
        let ops = ops.unwrap_or_default();
        let mut rec = vec![
            r.n.to_string(),
            r.hit_pct.to_string(),
            r.algo.name().to_string(),
            r.calls.to_string(),
            opt(r.mean_ns),
        ];
        rec.extend(ops);
        rec.extend([
            r.nu1.to_string(),
            r.nu2_analytic.to_string(),
            r.nu3.to_string(),
        ]);
        w.write_record(&rec)?;
    }
    w.flush()
}

/// Parses the rows written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<BenchRow>, String> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut rd = csv::Reader::from_reader(body.as_bytes());
    let header = rd.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(format!("unexpected header {header:?}"));
    }
    let num = |s: &str| -> Result<Option<f64>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse::<f64>().map(Some).map_err(|e| e.to_string())
        }
    };
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        let ops = (5..10).map(|i| num(f(i))).collect::<Result<Vec<_>, _>>()?;
        let mean_ops = if ops.iter().all(Option::is_some) {
            Some(std::array::from_fn(|i| ops[i].unwrap()))
        } else {
            None
        };
        rows.push(BenchRow {
            n: f(0).parse().map_err(|_| "bad n")?,
            hit_pct: f(1).parse().map_err(|_| "bad hit_pct")?,
            algo: f(2).parse::<Algorithm>().map_err(|e| e.to_string())?,
            calls: f(3).parse().map_err(|_| "bad calls")?,
            mean_ns: num(f(4))?,
            mean_ops,
            nu1: num(f(10))?.unwrap_or(f64::NAN),
            nu2_analytic: num(f(11))?.unwrap_or(f64::NAN),
            nu3: num(f(12))?.unwrap_or(f64::NAN),
        });
    }
    Ok(rows)
}

fn r2(x: f64) -> String {
    format!("{:.2}", (x * 100.0).round() / 100.0)
}

/// Human-readable tables: measured effectivity per (N, hit %) next to the
/// worst-case estimates, then the full theoretical table.
pub fn write_markdown(report: &BenchReport) -> String {
    let m = &report.meta;
    let mut s = String::new();
    let _ = writeln!(s, "# Clipping benchmark\n");
    let _ = writeln!(
        s,
        "host: {}; timer resolution: {} ns; seed: {}; {} segments per cell; \
         {} warm-up batches, median of {} repetitions; ν measured from {}.\n",
        m.host, m.timer_resolution_ns, m.seed, m.segments, m.warmup, m.reps, m.nu_basis
    );
    let _ = writeln!(s, "## Measured effectivity\n");
    let _ = writeln!(
        s,
        "| N | hit % | T skala | T cyrus-beck | T rappaport | ν1 | ν2 (analytic) | ν3 | ν1 est. | ν3 est. |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|");
    for cell in report.rows.chunks(3) {
        let first = &cell[0];
        let cost = |r: &BenchRow| match (m.nu_basis, r.mean_ns, r.mean_ops) {
            ("time", Some(t), _) => format!("{t:.1} ns"),
            (_, _, Some(o)) => format!("{:.0} u", weighted_mean_time(o, &FPU_WEIGHTS)),
            _ => "-".into(),
        };
        let th = theoretical_nu(first.n);
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            first.n,
            first.hit_pct,
            cost(&cell[0]),
            cost(&cell[1]),
            cost(&cell[2]),
            r2(first.nu1),
            r2(first.nu2_analytic),
            r2(first.nu3),
            r2(th.nu1),
            r2(th.nu3)
        );
    }
    s.push('\n');
    s.push_str(&theory_table());
    s
}

/// Worst-case effectivity from the published cost formulas.
pub fn theory_table() -> String {
    let mut s = String::from("## Worst-case estimates\n\n| N |");
    for n in THEORY_NS {
        let _ = write!(s, " {n} |");
    }
    s.push_str("\n|---|");
    s.push_str(&"---|".repeat(THEORY_NS.len()));
    s.push('\n');
    type Row = (&'static str, fn(usize) -> f64);
    let rows: [Row; 3] = [
        ("ν1", |n| theoretical_nu(n).nu1),
        ("ν2", |n| theoretical_nu(n).nu2),
        ("ν3", |n| theoretical_nu(n).nu3),
    ];
    for (name, f) in rows {
        let _ = write!(s, "| {name} |");
        for n in THEORY_NS {
            let _ = write!(s, " {} |", r2(f(n)));
        }
        s.push('\n');
    }
    s
}
