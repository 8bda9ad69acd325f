//! Text formats for instances and clipping results.
//!
//! Numbers are written with Rust's `Display` for `f64`, the shortest decimal
//! that parses back to the same bits, so files round-trip exactly.

use std::fmt::Write as _;

use lgclip::datagen::{Instance, RNG_NAME};
use lgclip::{ClipResult, ConvexPolygon, GeomError, Point2};
use thiserror::Error;

pub const INSTANCE_MAGIC: &str = "# algo-instance v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid window: {0}")]
    Window(#[from] GeomError),
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax {
        line,
        msg: msg.into(),
    })
}

/// Contents of an instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub seed: Option<u64>,
    pub polygon: ConvexPolygon,
    pub segments: Vec<(Point2, Point2)>,
}

impl From<Instance> for InstanceFile {
    fn from(i: Instance) -> Self {
        Self {
            seed: Some(i.seed),
            polygon: i.polygon,
            segments: i.segments,
        }
    }
}

pub fn write_instance(inst: &InstanceFile) -> String {
    let mut s = String::new();
    s.push_str(INSTANCE_MAGIC);
    s.push('\n');
    if let Some(seed) = inst.seed {
        let _ = writeln!(s, "# seed {seed}");
        let _ = writeln!(s, "# rng {RNG_NAME}");
    }
    let _ = writeln!(s, "# n {}", inst.polygon.len());
    s.push_str("poly\n");
    for v in inst.polygon.vertices() {
        let _ = writeln!(s, "{} {}", v.x, v.y);
    }
    let _ = writeln!(s, "segments {}", inst.segments.len());
    for (a, b) in &inst.segments {
        let _ = writeln!(s, "{} {} {} {}", a.x, a.y, b.x, b.y);
    }
    s
}

fn numbers<const K: usize>(lineno: usize, text: &str) -> Result<[f64; K], FormatError> {
    let mut out = [0.0; K];
    let mut it = text.split_whitespace();
    for slot in out.iter_mut() {
        let Some(tok) = it.next() else {
            return syntax(lineno, format!("expected {K} numbers"));
        };
        *slot = match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            _ => return syntax(lineno, format!("`{tok}` is not a finite number")),
        };
    }
    if it.next().is_some() {
        return syntax(lineno, format!("expected {K} numbers"));
    }
    Ok(out)
}

fn count_after(lineno: usize, line: &str, keyword: &str) -> Result<usize, FormatError> {
    line.strip_prefix(keyword)
        .and_then(|r| r.trim().parse::<usize>().ok())
        .map_or_else(
            || syntax(lineno, format!("expected `{keyword} <count>`")),
            Ok,
        )
}

pub fn read_instance(text: &str) -> Result<InstanceFile, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l == INSTANCE_MAGIC => {}
        Some((n, _)) => return syntax(n, format!("expected `{INSTANCE_MAGIC}`")),
        None => return syntax(0, "empty instance file"),
    }

    let mut seed = None;
    let mut declared_n = None;
    let mut body = Vec::new();
    for (n, l) in lines {
        if let Some(h) = l.strip_prefix('#') {
            let mut parts = h.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some("seed"), Some(v)) => {
                    seed = Some(v.parse::<u64>().or_else(|_| syntax(n, "bad seed"))?)
                }
                (Some("n"), Some(v)) => {
                    declared_n = Some(v.parse::<usize>().or_else(|_| syntax(n, "bad n"))?)
                }
                _ => {}
            }
        } else {
            body.push((n, l));
        }
    }

    let mut body = body.into_iter();
    match body.next() {
        Some((_, "poly")) => {}
        Some((n, _)) => return syntax(n, "expected `poly`"),
        None => return syntax(0, "missing `poly` section"),
    }
    let mut vertices = Vec::new();
    let mut segments = None;
    for (n, l) in body.by_ref() {
        if l.starts_with("segments") {
            segments = Some((n, count_after(n, l, "segments")?));
            break;
        }
        let [x, y] = numbers::<2>(n, l)?;
        vertices.push(Point2::new(x, y));
    }
    let Some((seg_line, count)) = segments else {
        return syntax(0, "missing `segments` section");
    };
    if let Some(d) = declared_n {
        if d != vertices.len() {
            return syntax(
                seg_line,
                format!("header says n = {d} but {} vertices follow", vertices.len()),
            );
        }
    }
    let mut segs = Vec::with_capacity(count);
    for (n, l) in body {
        let [x1, y1, x2, y2] = numbers::<4>(n, l)?;
        segs.push((Point2::new(x1, y1), Point2::new(x2, y2)));
    }
    if segs.len() != count {
        return syntax(
            seg_line,
            format!("declared {count} segments but found {}", segs.len()),
        );
    }
    Ok(InstanceFile {
        seed,
        polygon: ConvexPolygon::new(vertices)?,
        segments: segs,
    })
}

/// One line of a result file. `points` are the clipped endpoints
/// `a + t·(b − a)` for `t1` and `t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRecord {
    pub id: usize,
    pub result: ClipResult,
    pub points: Option<(Point2, Point2)>,
}

impl ResultRecord {
    pub fn new(id: usize, result: ClipResult, a: Point2, b: Point2) -> Self {
        let at = |t: f64| Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        let points = result.params().map(|(t1, t2)| (at(t1), at(t2)));
        Self { id, result, points }
    }
}

pub fn write_results(records: &[ResultRecord]) -> String {
    let mut s = String::new();
    for r in records {
        match (r.result, r.points) {
            (ClipResult::Cross { t1, t2 }, Some((p, q))) => {
                let _ = writeln!(s, "{} hit {t1} {t2} {} {} {} {}", r.id, p.x, p.y, q.x, q.y);
            }
            _ => {
                let _ = writeln!(s, "{} miss", r.id);
            }
        }
    }
    s
}

pub fn read_results(text: &str) -> Result<Vec<ResultRecord>, FormatError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let n = i + 1;
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (id, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let Ok(id) = id.parse::<usize>() else {
            return syntax(n, "expected a record id");
        };
        let rest = rest.trim();
        let rec = if rest == "miss" {
            ResultRecord {
                id,
                result: ClipResult::Miss,
                points: None,
            }
        } else if let Some(nums) = rest.strip_prefix("hit") {
            let [t1, t2, x1, y1, x2, y2] = numbers::<6>(n, nums)?;
            ResultRecord {
                id,
                result: ClipResult::Cross { t1, t2 },
                points: Some((Point2::new(x1, y1), Point2::new(x2, y2))),
            }
        } else {
            return syntax(n, "expected `miss` or `hit`");
        };
        out.push(rec);
    }
    Ok(out)
}
