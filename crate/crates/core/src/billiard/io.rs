//! Table files and billiard outputs.
//!
//! ```text
//! table 1
//! vertex 0 0
//! vertex 1 0
//! vertex 1 1
//! vertex 0 1
//! ```
//!
//! Coordinates are exact rationals; blank lines and `#` comments are
//! ignored. Either orientation is accepted.

use std::fmt::Write as _;

use crate::billiard::{BilliardTable, SingularSet};
use crate::error::BilliardError;
use crate::geom::ExactPoint;
use crate::rational::{format_rational, parse_rational};

pub const TABLE_HEADER: &str = "table 1";

fn err(line: usize, msg: impl Into<String>) -> BilliardError {
    BilliardError::Parse { line, msg: msg.into() }
}

pub fn parse_table(text: &str) -> Result<BilliardTable, BilliardError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == TABLE_HEADER => {}
        Some((n, l)) => return Err(err(n, format!("expected header '{TABLE_HEADER}', got '{l}'"))),
        None => return Err(err(0, "empty table file")),
    }
    let mut vertices = Vec::new();
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", x, y] => {
                let px = parse_rational(x).ok_or_else(|| err(n, format!("bad rational '{x}'")))?;
                let py = parse_rational(y).ok_or_else(|| err(n, format!("bad rational '{y}'")))?;
                vertices.push(ExactPoint::new(px, py));
            }
            ["vertex", ..] => return Err(err(n, "vertex takes two rationals")),
            [key, ..] => return Err(err(n, format!("unknown key '{key}'"))),
            [] => unreachable!("blank lines are skipped"),
        }
    }
    BilliardTable::new(vertices)
}

pub fn print_table(t: &BilliardTable) -> String {
    let mut s = format!("{TABLE_HEADER}\n");
    for v in t.vertices() {
        let _ = writeln!(s, "vertex {} {}", format_rational(&v.x), format_rational(&v.y));
    }
    s
}

pub fn singular_csv_header() -> &'static str {
    "n,cell_count,singular_length,length_lower_bound_flag"
}

/// One row per `n = 1..`: `|P_n|`, the Finsler length of `⋃_{k<n} T^{-k}∂P`
/// and whether that length is only a lower bound.
pub fn singular_csv(counts: &[usize], set: &SingularSet) -> String {
    let mut s = format!("{}\n", singular_csv_header());
    for (k, (c, l)) in counts.iter().zip(set.cumulative_lengths()).enumerate() {
        let _ = writeln!(s, "{},{},{:.12e},{}", k + 1, c, l, set.truncated);
    }
    s
}

pub fn curves_dump_header() -> &'static str {
    "curve_id,generation,side,vertex,s,theta"
}

/// Every sample of every curve, one per line.
pub fn curves_dump(set: &SingularSet) -> String {
    let mut s = format!("{}\n", curves_dump_header());
    for c in &set.curves {
        for p in &c.samples {
            let _ = writeln!(
                s,
                "{},{},{},{},{:e},{:e}",
                c.id, c.generation, c.side, c.vertex, p.s, p.theta
            );
        }
    }
    s
}
