use crate::join::JoinLevel;
use crate::rational::{decimal, Rounding};

pub const DIGITS: u32 = 12;

pub fn levels_csv_header() -> &'static str {
    "n,atom_count,skeleton_length_lo,skeleton_length_hi,b,max_diameter_hi"
}

/// Enclosure endpoints are rounded outward to 12 significant digits.
pub fn levels_csv_row(level: &JoinLevel) -> String {
    let s = &level.stats;
    format!(
        "{},{},{},{},{},{}",
        level.n,
        s.atom_count,
        decimal(&s.skeleton_length.lo, DIGITS, Rounding::Down),
        decimal(&s.skeleton_length.hi, DIGITS, Rounding::Up),
        s.multiplicity,
        decimal(&s.max_diameter.hi, DIGITS, Rounding::Up),
    )
}

pub fn levels_csv(levels: &[JoinLevel]) -> String {
    let mut out = String::from(levels_csv_header());
    out.push('\n');
    for l in levels {
        out.push_str(&levels_csv_row(l));
        out.push('\n');
    }
    out
}
