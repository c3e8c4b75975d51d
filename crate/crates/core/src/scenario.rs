//! Scenario files and the run / verify / describe pipelines.
//!
//! ```text
//! scenario 1
//! # the baker map up to level 10
//! system baker
//! max_level 10
//! out baker-out
//! ```
//!
//! Keys, one per line, each at most once:
//!
//! | key           | value                                        | default   |
//! |---------------|----------------------------------------------|-----------|
//! | `system`      | builtin name, then `key=value` parameters    |           |
//! | `system_file` | path to a `gpe 1` or `table 1` file          |           |
//! | `max_level`   | `N ≥ 1`                                      | required  |
//! | `window`      | tail fraction for growth estimates, `(0, 1]` | `0.25`    |
//! | `tol`         | bound-check tolerance                        | `1e-6`    |
//! | `cap_cells`   | cell cap per join level                      | `200000`  |
//! | `cap_bits`    | coordinate bit-length cap                    | `4096`    |
//! | `sample`      | regular points for Lyapunov sampling         | `32`      |
//! | `seed`        | sampling seed                                | `24301`   |
//! | `out`         | output directory                             | `out`     |
//! | `curve_tol`   | Finsler gap for singular-curve sampling      | `0.01`    |
//! | `node_budget` | itinerary enumeration budget                 | `5e7`     |
//!
//! Exactly one of `system` and `system_file` is required. Relative paths are
//! resolved against the scenario file's directory. Billiard tables are the
//! builtins `billiard-square` and `billiard-right-triangle` or a table file.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::billiard::{
    as_gpe_report, count_itinerary_cells_series, curves_dump, parse_table, print_table, singular_csv, singular_set,
    trace, BilliardTable, Direction, SingularConfig, SingularSet, DEFAULT_BUDGET, TABLE_HEADER,
};
use crate::entropy::{
    bounds_from_levels, growth_rate, power_law_fit, regular_sample, BoundConfig, BoundReport, GrowthSeries,
    DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_TOL, DEFAULT_WINDOW, MIN_LEN,
};
use crate::error::{BilliardError, JoinError};
use crate::gpe::{builtin, parse_description, print_description, GpeSystem, BUILTIN_SYSTEMS, DESCRIPTION_HEADER};
use crate::join::{is_nested, join_sequence, levels_csv, perimeter_identity_holds, JoinCaps, JoinLevel};
use crate::oracle::{billiard_grid_itinerary_count, corridor_singular_lengths, gpe_grid_itinerary_counts};

pub const SCENARIO_HEADER: &str = "scenario 1";

/// Builtin billiard tables accepted by `system`.
pub const BUILTIN_TABLES: &[(&str, &str)] = &[
    ("billiard-square", "billiard ball map of the unit square"),
    (
        "billiard-right-triangle",
        "billiard ball map of the right isosceles triangle with unit legs",
    ),
];

/// Grid used by the join-level oracle check in `verify`.
const GPE_ORACLE_GRID: usize = 128;
const BILLIARD_ORACLE_GRID: usize = 1000;
const REPORT_GRID: usize = 200;
/// Largest singular-length exponent accepted by `verify`.
pub const QUADRATIC_ALPHA_MAX: f64 = 2.1;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("resource cap hit: {0}")]
    Cap(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl ScenarioError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            ScenarioError::Io { .. } => 1,
            ScenarioError::Parse { .. } => 2,
            ScenarioError::Validation(_) => 3,
            ScenarioError::Cap(_) => 4,
            ScenarioError::Invariant(_) => 5,
            ScenarioError::VerifyFailed(_) => 6,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ScenarioError + '_ {
    move |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse { line, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SystemSource {
    Builtin {
        name: String,
        params: Vec<(String, String)>,
    },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub system: SystemSource,
    pub max_level: usize,
    pub window: f64,
    pub tol: f64,
    pub caps: JoinCaps,
    pub sample: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub curve_tol: f64,
    pub node_budget: usize,
}

/// A loaded system: a polygon exchange or a billiard table.
#[derive(Clone, Debug)]
pub enum System {
    Gpe(GpeSystem),
    Billiard(BilliardTable),
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(v: &str, line: usize, key: &str) -> Result<T, ScenarioError> {
    match v.parse::<T>() {
        Ok(x) if x > T::default() => Ok(x),
        _ => Err(parse_err(line, format!("{key} must be a positive number, got '{v}'"))),
    }
}

impl Scenario {
    /// Parses scenario text; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Scenario, ScenarioError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, l)) if l == SCENARIO_HEADER => {}
            Some((n, l)) => return Err(parse_err(n, format!("expected header '{SCENARIO_HEADER}', got '{l}'"))),
            None => return Err(parse_err(0, "empty scenario")),
        }
        let mut seen: Vec<&str> = Vec::new();
        let mut system = None;
        let mut max_level = None;
        let mut s = Scenario {
            system: SystemSource::File(PathBuf::new()),
            max_level: 0,
            window: DEFAULT_WINDOW,
            tol: DEFAULT_TOL,
            caps: JoinCaps::default(),
            sample: DEFAULT_SAMPLE,
            seed: DEFAULT_SEED,
            out: base.join("out"),
            curve_tol: SingularConfig::default().tol,
            node_budget: DEFAULT_BUDGET,
        };
        for (n, l) in lines {
            let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let rest = rest.trim();
            if seen.contains(&key) {
                return Err(parse_err(n, format!("duplicate key '{key}'")));
            }
            if rest.is_empty() {
                return Err(parse_err(n, format!("key '{key}' needs a value")));
            }
            let single = || {
                if rest.contains(char::is_whitespace) {
                    Err(parse_err(n, format!("key '{key}' takes one value")))
                } else {
                    Ok(rest)
                }
            };
            match key {
                "system" => {
                    if system.is_some() {
                        return Err(parse_err(n, "give only one of system and system_file"));
                    }
                    let mut toks = rest.split_whitespace();
                    let name = toks.next().unwrap().to_string();
                    let params = toks
                        .map(|t| {
                            t.split_once('=')
                                .map(|(k, v)| (k.to_string(), v.to_string()))
                                .ok_or_else(|| parse_err(n, format!("parameter '{t}' is not key=value")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    system = Some(SystemSource::Builtin { name, params });
                }
                "system_file" => {
                    if system.is_some() {
                        return Err(parse_err(n, "give only one of system and system_file"));
                    }
                    let p = base.join(single()?);
                    if !p.is_file() {
                        return Err(parse_err(n, format!("system file {} not found", p.display())));
                    }
                    system = Some(SystemSource::File(p));
                }
                "max_level" => max_level = Some(positive::<usize>(single()?, n, key)?),
                "window" => {
                    let w = positive::<f64>(single()?, n, key)?;
                    if w > 1.0 {
                        return Err(parse_err(n, "window must lie in (0, 1]"));
                    }
                    s.window = w;
                }
                "tol" => s.tol = positive(single()?, n, key)?,
                "cap_cells" => s.caps.max_cells = positive(single()?, n, key)?,
                "cap_bits" => s.caps.max_bits = positive(single()?, n, key)?,
                "sample" => s.sample = positive(single()?, n, key)?,
                "seed" => {
                    s.seed = single()?
                        .parse()
                        .map_err(|_| parse_err(n, format!("bad seed '{rest}'")))?
                }
                "out" => s.out = base.join(single()?),
                "curve_tol" => s.curve_tol = positive(single()?, n, key)?,
                "node_budget" => s.node_budget = positive::<f64>(single()?, n, key)? as usize,
                other => return Err(parse_err(n, format!("unknown key '{other}'"))),
            }
            seen.push(key);
        }
        s.system = system.ok_or_else(|| parse_err(0, "missing system or system_file"))?;
        s.max_level = max_level.ok_or_else(|| parse_err(0, "missing max_level"))?;
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Scenario, ScenarioError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Scenario::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn load_system(&self) -> Result<System, ScenarioError> {
        match &self.system {
            SystemSource::Builtin { name, params } => load_builtin(name, params),
            SystemSource::File(p) => {
                let text = fs::read_to_string(p).map_err(io_err(p))?;
                let header = text
                    .lines()
                    .map(str::trim)
                    .find(|l| !l.is_empty() && !l.starts_with('#'))
                    .unwrap_or("");
                if header == TABLE_HEADER {
                    parse_table(&text).map(System::Billiard).map_err(billiard_load_err)
                } else if header == DESCRIPTION_HEADER {
                    parse_description(&text).map(System::Gpe).map_err(|e| match e {
                        crate::GpeError::Parse { line, msg } => parse_err(line, format!("{}: {msg}", p.display())),
                        other => ScenarioError::Validation(other.to_string()),
                    })
                } else {
                    Err(parse_err(1, format!("{}: unknown file header '{header}'", p.display())))
                }
            }
        }
    }
}

fn billiard_load_err(e: BilliardError) -> ScenarioError {
    match e {
        BilliardError::Parse { line, msg } => parse_err(line, msg),
        other => ScenarioError::Validation(other.to_string()),
    }
}

fn load_builtin(name: &str, params: &[(String, String)]) -> Result<System, ScenarioError> {
    let table = match name {
        "billiard-square" => Some(BilliardTable::unit_square()),
        "billiard-right-triangle" => Some(BilliardTable::right_triangle()),
        _ => None,
    };
    if let Some(t) = table {
        if let Some((k, _)) = params.first() {
            return Err(ScenarioError::Validation(format!(
                "unknown parameter '{k}' for system '{name}'"
            )));
        }
        return Ok(System::Billiard(t));
    }
    builtin(name, params)
        .map(System::Gpe)
        .map_err(ScenarioError::Validation)
}

fn write(path: &Path, contents: &str) -> Result<(), ScenarioError> {
    fs::write(path, contents).map_err(io_err(path))
}

fn validated(g: &GpeSystem) -> Result<(), ScenarioError> {
    let r = g.validate();
    if r.is_valid() {
        Ok(())
    } else {
        Err(ScenarioError::Validation(r.to_string()))
    }
}

/// Join levels up to `N`; on a cap hit the completed levels are written to
/// `levels.csv` (when `out` is given) before the error is returned.
fn levels_or_cap(g: &GpeSystem, s: &Scenario, out: Option<&Path>) -> Result<Vec<JoinLevel>, ScenarioError> {
    match join_sequence(g, s.max_level, s.caps) {
        Ok(levels) => Ok(levels),
        Err(JoinError::CapExceeded {
            cap,
            attempted,
            completed,
        }) => {
            if let Some(dir) = out {
                write(&dir.join("levels.csv"), &levels_csv(&completed))?;
            }
            Err(ScenarioError::Cap(format!(
                "{cap} while computing level {attempted}; {} level(s) completed",
                completed.len()
            )))
        }
        Err(e) => Err(ScenarioError::Invariant(e.to_string())),
    }
}

fn conservation_failure(g: &GpeSystem, levels: &[JoinLevel]) -> Option<String> {
    let area = g.space().area();
    if let Some(l) = levels.iter().find(|l| l.total_area() != area) {
        return Some(format!("area conservation at level {}", l.n));
    }
    levels
        .windows(2)
        .find(|w| !is_nested(&w[0], &w[1]))
        .map(|w| format!("nesting between levels {} and {}", w[0].n, w[1].n))
}

fn gpe_bounds(g: &GpeSystem, levels: &[JoinLevel], s: &Scenario) -> Result<Option<BoundReport>, ScenarioError> {
    if levels.len() < MIN_LEN {
        return Ok(None);
    }
    let cfg = BoundConfig {
        window: s.window,
        tol: s.tol,
        caps: s.caps,
    };
    let sample = regular_sample(g, s.sample, levels.len(), s.seed);
    bounds_from_levels(g, levels, &sample, &cfg)
        .map(Some)
        .map_err(|e| ScenarioError::Invariant(e.to_string()))
}

fn insufficient(levels: usize) -> String {
    format!("levels={levels}\nestimates=unavailable\nmin_levels={MIN_LEN}\n")
}

/// Growth statistics of a billiard run, in the same `key=value` layout as
/// [`BoundReport::to_key_values`].
#[derive(Clone, Debug, PartialEq)]
pub struct BilliardBounds {
    pub counts: Vec<usize>,
    pub lengths: Vec<f64>,
    pub h_estimate: f64,
    pub h_slope: f64,
    pub theta_estimate: f64,
    pub theta_slope: f64,
    pub theta_loglog_slope: f64,
    pub theta_subexponential: bool,
    pub h_subexponential: bool,
    pub length_alpha: f64,
    pub length_alpha_residual: f64,
    pub truncated: bool,
    pub tol: f64,
}

impl BilliardBounds {
    pub fn new(counts: &[usize], set: &SingularSet, window: f64, tol: f64) -> Option<BilliardBounds> {
        let lengths = set.cumulative_lengths();
        let h = growth_rate(&GrowthSeries::from_counts(counts, window).ok()?);
        let th = growth_rate(&GrowthSeries::new(lengths.clone(), window).ok()?);
        let fit = power_law_fit(&lengths).ok()?;
        Some(BilliardBounds {
            counts: counts.to_vec(),
            lengths,
            h_estimate: h.theta_tail,
            h_slope: h.theta_slope,
            theta_estimate: th.theta_tail,
            theta_slope: th.theta_slope,
            theta_loglog_slope: th.loglog_slope,
            theta_subexponential: th.subexponential,
            h_subexponential: h.subexponential,
            length_alpha: fit.alpha,
            length_alpha_residual: fit.residual,
            truncated: set.truncated,
            tol,
        })
    }

    /// `(1/n)·log|P_n|` for `n = 1..`.
    pub fn count_rates(&self) -> Vec<f64> {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, c)| (*c as f64).ln() / (k + 1) as f64)
            .collect()
    }

    pub fn margin_entropy(&self) -> f64 {
        self.theta_estimate - self.h_estimate
    }

    /// Same rule as [`BoundReport::entropy_bound_holds`].
    pub fn entropy_bound_holds(&self) -> bool {
        self.h_subexponential || self.margin_entropy() >= -self.tol
    }

    pub fn to_key_values(&self) -> String {
        let f = |x: f64| format!("{x:.12e}");
        let rates = self.count_rates();
        let mut s = String::new();
        let _ = writeln!(s, "levels={}", self.counts.len());
        let _ = writeln!(s, "h_estimate={}", f(self.h_estimate));
        let _ = writeln!(s, "h_slope={}", f(self.h_slope));
        let _ = writeln!(s, "count_rate_final={}", f(*rates.last().unwrap()));
        let _ = writeln!(s, "count_rate_decreasing={}", rates.windows(2).all(|w| w[1] <= w[0]));
        let _ = writeln!(s, "theta_estimate={}", f(self.theta_estimate));
        let _ = writeln!(s, "theta_slope={}", f(self.theta_slope));
        let _ = writeln!(s, "theta_loglog_slope={}", f(self.theta_loglog_slope));
        let _ = writeln!(s, "theta_subexponential={}", self.theta_subexponential);
        let _ = writeln!(s, "length_alpha={}", f(self.length_alpha));
        let _ = writeln!(s, "length_alpha_residual={}", f(self.length_alpha_residual));
        let _ = writeln!(s, "singular_length_is_union=true");
        let _ = writeln!(s, "length_lower_bound={}", self.truncated);
        let _ = writeln!(s, "margin_entropy={}", f(self.margin_entropy()));
        let _ = writeln!(s, "h_subexponential={}", self.h_subexponential);
        let _ = writeln!(s, "entropy_bound_holds={}", self.entropy_bound_holds());
        let _ = writeln!(s, "tol={}", f(self.tol));
        let _ = writeln!(s, "violation={}", !self.entropy_bound_holds());
        s
    }
}

fn billiard_counts(t: &BilliardTable, s: &Scenario) -> Result<Vec<usize>, ScenarioError> {
    count_itinerary_cells_series(t, s.max_level, s.node_budget).map_err(|e| match e {
        BilliardError::Budget(b) => ScenarioError::Cap(format!("itinerary enumeration budget of {b} nodes")),
        other => ScenarioError::Validation(other.to_string()),
    })
}

fn curve_config(s: &Scenario) -> SingularConfig {
    SingularConfig {
        tol: s.curve_tol,
        ..SingularConfig::default()
    }
}

fn billiard_set(t: &BilliardTable, s: &Scenario) -> Result<SingularSet, ScenarioError> {
    singular_set(t, s.max_level, &curve_config(s)).map_err(|e| ScenarioError::Validation(e.to_string()))
}

/// Outcome of `run`: the files written and a few summary lines.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
}

/// Runs the scenario and writes its artifacts under `s.out`.
pub fn run(s: &Scenario) -> Result<RunSummary, ScenarioError> {
    let system = s.load_system()?;
    if let System::Gpe(g) = &system {
        validated(g)?;
    }
    fs::create_dir_all(&s.out).map_err(io_err(&s.out))?;
    let mut files = Vec::new();
    let mut lines = Vec::new();
    let put = |name: &str, body: &str, files: &mut Vec<PathBuf>| -> Result<(), ScenarioError> {
        let p = s.out.join(name);
        write(&p, body)?;
        files.push(p);
        Ok(())
    };
    match system {
        System::Gpe(g) => {
            let levels = levels_or_cap(&g, s, Some(&s.out))?;
            put("levels.csv", &levels_csv(&levels), &mut files)?;
            if let Some(msg) = conservation_failure(&g, &levels) {
                return Err(ScenarioError::Invariant(msg));
            }
            let counts: Vec<String> = levels.iter().map(|l| l.atom_count().to_string()).collect();
            lines.push(format!("atom_count={}", counts.join(",")));
            let body = match gpe_bounds(&g, &levels, s)? {
                Some(r) => {
                    lines.push(format!("h_estimate={:.12e}", r.h_estimate()));
                    lines.push(format!("theta_estimate={:.12e}", r.theta_estimate()));
                    lines.push(format!("violation={}", r.violation()));
                    r.to_key_values()
                }
                None => insufficient(levels.len()),
            };
            put("bounds.txt", &body, &mut files)?;
        }
        System::Billiard(t) => {
            let counts = billiard_counts(&t, s)?;
            let set = billiard_set(&t, s)?;
            put("singular.csv", &singular_csv(&counts, &set), &mut files)?;
            put("curves.dump", &curves_dump(&set), &mut files)?;
            let counts_s: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            lines.push(format!("cell_count={}", counts_s.join(",")));
            lines.push(format!("singular_length={:.12e}", set.total_length()));
            if set.truncated {
                lines.push("singular_length is a lower bound (sample budget exhausted)".into());
            }
            let body = match BilliardBounds::new(&counts, &set, s.window, s.tol) {
                Some(b) => b.to_key_values(),
                None => insufficient(counts.len()),
            };
            put("bounds.txt", &body, &mut files)?;
        }
    }
    for f in &files {
        lines.push(format!("wrote {}", f.display()));
    }
    Ok(RunSummary { files, lines })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }

    /// `PASS name detail` or `FAIL name detail`.
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{tag} {}", self.name)
        } else {
            format!("{tag} {} {}", self.name, self.detail)
        }
    }
}

/// Runs the invariant suite for the scenario's system. Validation failures
/// and cap hits are errors; everything else is reported as checks.
pub fn verify(s: &Scenario) -> Result<Vec<Check>, ScenarioError> {
    match s.load_system()? {
        System::Gpe(g) => verify_gpe(&g, s),
        System::Billiard(t) => verify_billiard(&t, s),
    }
}

fn verify_gpe(g: &GpeSystem, s: &Scenario) -> Result<Vec<Check>, ScenarioError> {
    let report = g.validate();
    if !report.is_valid() {
        return Err(ScenarioError::Validation(report.to_string()));
    }
    let mut out = vec![Check::new("validation", true, format!("atoms={}", g.atom_count()))];
    let levels = levels_or_cap(g, s, None)?;
    let area = g.space().area();
    let bad_area: Vec<usize> = levels.iter().filter(|l| l.total_area() != area).map(|l| l.n).collect();
    out.push(Check::new(
        "area_conservation",
        bad_area.is_empty(),
        format!("failing_levels={bad_area:?}"),
    ));
    let bad_nest: Vec<usize> = levels
        .windows(2)
        .filter(|w| !is_nested(&w[0], &w[1]))
        .map(|w| w[1].n)
        .collect();
    out.push(Check::new(
        "nesting",
        bad_nest.is_empty(),
        format!("failing_levels={bad_nest:?}"),
    ));
    let bad_perim: Vec<usize> = levels
        .iter()
        .filter(|l| !perimeter_identity_holds(l, g.space()))
        .map(|l| l.n)
        .collect();
    out.push(Check::new(
        "perimeter_skeleton_identity",
        bad_perim.is_empty(),
        format!("failing_levels={bad_perim:?}"),
    ));
    let m = levels.len().min(4);
    let oracle = gpe_grid_itinerary_counts(g, m, GPE_ORACLE_GRID);
    let mut mismatches = Vec::new();
    for (l, &oracle) in levels[..m].iter().zip(&oracle) {
        if oracle != l.atom_count() {
            mismatches.push(format!("n={}:{}!={}", l.n, l.atom_count(), oracle));
        }
    }
    out.push(Check::new(
        "grid_oracle_counts",
        mismatches.is_empty(),
        format!("levels=1..={m} mismatches={mismatches:?}"),
    ));
    match gpe_bounds(g, &levels, s)? {
        Some(r) => {
            out.push(Check::new(
                "entropy_le_theta",
                r.entropy_bound_holds(),
                format!(
                    "h={:.6e} theta={:.6e} margin={:.6e} h_subexponential={} theta_subexponential={}",
                    r.h_estimate(),
                    r.theta_estimate(),
                    r.margin_entropy(),
                    r.h.subexponential,
                    r.theta.subexponential
                ),
            ));
            out.push(Check::new(
                "lyapunov_le_theta",
                r.margin_lyapunov() >= -s.tol,
                format!("sup={:.6e} margin={:.6e}", r.lyapunov_sup, r.margin_lyapunov()),
            ));
            out.push(Check::new(
                "multiplicity_growth_le_theta",
                r.flags.b_growth_le_theta,
                format!("b_max={} b_growth={:.6e}", r.b_max, r.b_growth),
            ));
            out.push(Check::new("cells_convex", r.flags.cells_convex, ""));
        }
        None => out.push(Check::new(
            "bound_margins",
            true,
            format!("skipped: {} level(s), need {MIN_LEN}", levels.len()),
        )),
    }
    Ok(out)
}

fn verify_billiard(t: &BilliardTable, s: &Scenario) -> Result<Vec<Check>, ScenarioError> {
    let n = s.max_level;
    let mut out = Vec::new();
    let report = as_gpe_report(t, REPORT_GRID).map_err(billiard_load_err)?;
    out.push(Check::new(
        "gpe_structure",
        report.passes(),
        format!(
            "atoms={} connected={} simply_connected={} continuity_failures={} reversal_failures={}",
            report.atoms.len(),
            report.atoms_connected(),
            report.atoms_simply_connected(),
            report.continuity_failures,
            report.reversal_failures
        ),
    ));
    let counts = billiard_counts(t, s)?;
    out.push(Check::new(
        "cell_counts_monotone",
        counts.windows(2).all(|w| w[1] >= w[0]),
        format!("counts={counts:?}"),
    ));
    let m = n.min(3);
    let oracle: Vec<usize> = (1..=m)
        .map(|k| billiard_grid_itinerary_count(t, k, BILLIARD_ORACLE_GRID))
        .collect();
    out.push(Check::new(
        "grid_oracle_counts",
        oracle[..] == counts[..m],
        format!("levels=1..={m} oracle={oracle:?}"),
    ));
    let cfg = curve_config(s);
    let set = billiard_set(t, s)?;
    let cum = set.cumulative_lengths();
    out.push(Check::new(
        "singular_length_nondecreasing",
        cum.windows(2).all(|w| w[1] >= w[0]),
        format!("total={:.6e}", set.total_length()),
    ));
    out.push(Check::new(
        "singular_budget",
        !set.truncated,
        format!("truncated={}", set.truncated),
    ));
    let mc = n.min(8);
    let closed = corridor_singular_lengths(t, mc, s.node_budget).map_err(|e| ScenarioError::Cap(e.to_string()))?;
    let worst = closed
        .iter()
        .zip(&set.generation_lengths)
        .map(|(a, b)| (a - b).abs() / a.max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    out.push(Check::new(
        "singular_length_closed_form",
        worst < 1e-3,
        format!("generations=0..{mc} worst_relative_error={worst:.3e}"),
    ));
    let mr = n.min(4);
    let fwd = trace(t, mr, &cfg, Direction::Forward).map_err(billiard_load_err)?;
    let worst = fwd
        .generation_lengths
        .iter()
        .zip(&set.generation_lengths)
        .map(|(a, b)| (a - b).abs() / b.max(1.0))
        .fold(0.0, f64::max);
    out.push(Check::new(
        "time_reversal_symmetry",
        worst < 1e-9,
        format!("generations=0..{mr} worst_relative_error={worst:.3e}"),
    ));
    if let Some(b) = BilliardBounds::new(&counts, &set, s.window, s.tol) {
        out.push(Check::new(
            "singular_length_quadratic",
            b.length_alpha <= QUADRATIC_ALPHA_MAX,
            format!("alpha={:.6} residual={:.3e}", b.length_alpha, b.length_alpha_residual),
        ));
        let rates = b.count_rates();
        out.push(Check::new(
            "count_rate_decreasing",
            rates.windows(2).all(|w| w[1] <= w[0]),
            format!("final={:.6e}", rates.last().unwrap()),
        ));
        out.push(Check::new(
            "entropy_le_theta",
            b.entropy_bound_holds(),
            format!(
                "h={:.6e} theta={:.6e} h_subexponential={}",
                b.h_estimate, b.theta_estimate, b.h_subexponential
            ),
        ));
    }
    Ok(out)
}

/// Human-readable description of a builtin system.
pub fn describe(name: &str) -> Result<String, ScenarioError> {
    match load_builtin(name, &[]) {
        Ok(System::Gpe(g)) => {
            let mut s = String::new();
            let blurb = BUILTIN_SYSTEMS.iter().find(|(n, _)| *n == name).map_or("", |(_, d)| d);
            let _ = writeln!(s, "# {name}: {blurb}");
            let _ = writeln!(s, "# atoms={} valid={}", g.atom_count(), g.validate().is_valid());
            s.push_str(&print_description(&g));
            Ok(s)
        }
        Ok(System::Billiard(t)) => {
            let mut s = String::new();
            let blurb = BUILTIN_TABLES.iter().find(|(n, _)| *n == name).map_or("", |(_, d)| d);
            let _ = writeln!(s, "# {name}: {blurb}");
            let atoms = t.len() * (t.len() - 1);
            let _ = writeln!(
                s,
                "# sides={} perimeter={:.12e} first_return_atoms={atoms}",
                t.len(),
                t.length()
            );
            s.push_str(&print_table(&t));
            Ok(s)
        }
        Err(_) => {
            let mut names: Vec<&str> = BUILTIN_SYSTEMS.iter().map(|(n, _)| *n).collect();
            names.extend(BUILTIN_TABLES.iter().map(|(n, _)| *n));
            Err(ScenarioError::Validation(format!(
                "unknown system '{name}'; known systems: {}",
                names.join(", ")
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        Scenario::parse(text, Path::new("/base"))
    }

    #[test]
    fn parses_defaults() {
        let s = parse("scenario 1\nsystem baker\nmax_level 10\n").unwrap();
        assert_eq!(s.max_level, 10);
        assert_eq!(s.window, DEFAULT_WINDOW);
        assert_eq!(s.out, PathBuf::from("/base/out"));
        assert_eq!(
            s.system,
            SystemSource::Builtin {
                name: "baker".into(),
                params: vec![]
            }
        );
        let r = parse("scenario 1\nsystem rotation-exchange alpha=1/3\nmax_level 3\ncap_cells 50\n").unwrap();
        assert_eq!(r.caps.max_cells, 50);
        assert!(matches!(r.system, SystemSource::Builtin { ref params, .. } if params[0].1 == "1/3"));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("scenari 1\n", 1),
            ("scenario 1\nsystem baker\nmax_level 0\n", 3),
            ("scenario 1\nsystem baker\nmax_level 4\nmax_level 5\n", 4),
            ("scenario 1\nsystem baker\ncolour red\n", 3),
            ("scenario 1\nsystem baker\nwindow 2\n", 3),
            ("scenario 1\nsystem_file nowhere.gpe\n", 2),
            ("scenario 1\nmax_level 3\n", 0),
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(ScenarioError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn exit_codes_are_distinct() {
        let errs = [
            ScenarioError::Io {
                path: PathBuf::new(),
                source: std::io::Error::other("x"),
            },
            parse_err(1, "x"),
            ScenarioError::Validation("x".into()),
            ScenarioError::Cap("x".into()),
            ScenarioError::Invariant("x".into()),
            ScenarioError::VerifyFailed(1),
        ];
        let codes: Vec<u8> = errs.iter().map(|e| e.exit_code()).collect();
        assert_eq!(codes, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn describe_known_and_unknown() {
        assert!(describe("baker").unwrap().contains("gpe 1\nflavor affine\n"));
        assert!(describe("billiard-square").unwrap().contains("table 1\nvertex 0 0\n"));
        assert_eq!(describe("nope").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn unknown_builtin_parameter_is_a_validation_error() {
        let s = parse("scenario 1\nsystem baker speed=2\nmax_level 2\n").unwrap();
        assert_eq!(s.load_system().unwrap_err().exit_code(), 3);
    }
}
