//! Text description of a polygon exchange.
//!
//! ```text
//! gpe 1
//! flavor affine
//! space (0,0) (1,0) (1,1) (0,1)
//! atom (0,0) (1/2,0) (1/2,1) (0,1)
//! map 2 0 0 1/2 0 0
//! atom (1/2,0) (1,0) (1,1) (1/2,1)
//! map 2 0 0 1/2 -1 1/2
//! ```
//!
//! * line 1 is the versioned header `gpe 1`;
//! * `flavor` is `affine` or `euclidean`;
//! * `space` and `atom` list polygon vertices as `(x,y)` tokens;
//! * each `atom` is followed by exactly one `map a00 a01 a10 a11 t0 t1`
//!   giving `x ↦ [[a00,a01],[a10,a11]]·x + (t0,t1)`;
//! * numbers are exact rationals `p/q` or integers; blank lines and lines
//!   starting with `#` are ignored.
//!
//! [`print_description`] emits polygons in canonical vertex order, so
//! `parse(print(g)) == g` and printing is a fixed point on its own output.

use std::fmt::Write as _;

use crate::error::GpeError;
use crate::geom::{AffineMap2, ConvexPolygon, ExactPoint};
use crate::gpe::{Flavor, GpeSystem, PolygonPartition};
use crate::rational::{format_rational, parse_rational, ExactRational};

pub const HEADER: &str = "gpe 1";

pub fn print_description(g: &GpeSystem) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "flavor {}", g.flavor().as_str()).unwrap();
    writeln!(out, "space {}", g.space()).unwrap();
    for (atom, m) in g.source().atoms.iter().zip(g.maps()) {
        writeln!(out, "atom {atom}").unwrap();
        let l = &m.linear;
        writeln!(
            out,
            "map {} {} {} {} {} {}",
            format_rational(&l[0][0]),
            format_rational(&l[0][1]),
            format_rational(&l[1][0]),
            format_rational(&l[1][1]),
            format_rational(&m.translation[0]),
            format_rational(&m.translation[1])
        )
        .unwrap();
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> GpeError {
    GpeError::Parse { line, msg: msg.into() }
}

fn parse_point(tok: &str, line: usize) -> Result<ExactPoint, GpeError> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected (x,y), got '{tok}'")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| err(line, format!("expected (x,y), got '{tok}'")))?;
    let px = parse_rational(x).ok_or_else(|| err(line, format!("bad rational '{x}'")))?;
    let py = parse_rational(y).ok_or_else(|| err(line, format!("bad rational '{y}'")))?;
    Ok(ExactPoint::new(px, py))
}

fn parse_polygon(toks: &[&str], line: usize) -> Result<ConvexPolygon, GpeError> {
    let pts = toks
        .iter()
        .map(|t| parse_point(t, line))
        .collect::<Result<Vec<_>, _>>()?;
    ConvexPolygon::new(pts).map_err(|e| err(line, e.to_string()))
}

/// Parses a description and assembles the system. Partition invariants are
/// not checked here; call [`GpeSystem::validate`] on the result.
pub fn parse_description(text: &str) -> Result<GpeSystem, GpeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((n, l)) => return Err(err(n, format!("expected header '{HEADER}', got '{l}'"))),
        None => return Err(err(0, "empty description")),
    }
    let mut flavor = None;
    let mut space = None;
    let mut atoms = Vec::new();
    let mut maps = Vec::new();
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "flavor" => {
                if toks.len() != 2 {
                    return Err(err(n, "flavor takes one value"));
                }
                flavor = Some(Flavor::parse(toks[1]).ok_or_else(|| err(n, format!("unknown flavor '{}'", toks[1])))?);
            }
            "space" => {
                if space.is_some() {
                    return Err(err(n, "duplicate space"));
                }
                space = Some(parse_polygon(&toks[1..], n)?);
            }
            "atom" => {
                if atoms.len() != maps.len() {
                    return Err(err(n, "atom without a following map"));
                }
                atoms.push(parse_polygon(&toks[1..], n)?);
            }
            "map" => {
                if atoms.len() != maps.len() + 1 {
                    return Err(err(n, "map without a preceding atom"));
                }
                if toks.len() != 7 {
                    return Err(err(n, "map takes 6 rationals"));
                }
                let v = toks[1..]
                    .iter()
                    .map(|t| parse_rational(t).ok_or_else(|| err(n, format!("bad rational '{t}'"))))
                    .collect::<Result<Vec<ExactRational>, _>>()?;
                let mut it = v.into_iter();
                let mut next = || it.next().unwrap();
                let lin = [[next(), next()], [next(), next()]];
                maps.push(AffineMap2::new(lin, [next(), next()]));
            }
            other => return Err(err(n, format!("unknown key '{other}'"))),
        }
    }
    let flavor = flavor.ok_or_else(|| err(0, "missing flavor"))?;
    let space = space.ok_or_else(|| err(0, "missing space"))?;
    if atoms.is_empty() {
        return Err(err(0, "no atoms"));
    }
    if atoms.len() != maps.len() {
        return Err(err(0, "last atom has no map"));
    }
    GpeSystem::assemble(flavor, PolygonPartition::new(space, atoms), maps)
}
