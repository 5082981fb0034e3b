//! Command-line interface.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::parse_rational;
use crate::experiment::{cdf_rows, csv_document, json_document, length_dist, ratio_dist, ExperimentConfig};
use crate::measures::{lattice_count, pants_density, ratio_distribution, thurston_volume_lattice};
use crate::orbit::{count_growth, enumerate, OrbitQuery};
use crate::simplex::SimplexPoint;
use crate::torus::{KMulticurve, LengthFunctional};
use crate::verify::{run_all, Evidence};
use crate::{Rational, SurfaceType};

/// CSV schemas that `plot` understands.
pub const PLOTTABLE: [&str; 4] = ["ecdf", "ratio-law", "count-growth", "simplex-hist"];

#[derive(Debug, Parser)]
#[command(name = "orbitlaw", version, about = "Orbit counting and limit laws of multicurves on the once-holed torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

impl Emit {
    fn name(self) -> &'static str {
        match self {
            Emit::Csv => "csv",
            Emit::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Write files into this directory instead of printing to stdout
    #[arg(long, env = "ORBITLAW_OUT_DIR")]
    out: Option<PathBuf>,
    /// Seed for every randomized step (recorded in output headers)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the orbit elements below a length cutoff
    Enumerate {
        #[arg(long, default_value = "i:a+b", value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long = "L", value_parser = parse_positive)]
        cutoff: Rational,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        partitions: u64,
        /// Base multicurve, e.g. `1*(1,0);1*(0,1)`
        #[arg(long, value_parser = parse_multicurve)]
        basepoint: Option<KMulticurve>,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit counts and normalized counts over a grid of cutoffs
    CountGrowth {
        #[arg(long, default_value = "i:a+b", value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long = "L-grid", value_delimiter = ',', required = true, value_parser = parse_positive)]
        grid: Vec<Rational>,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        partitions: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Length fractions and total lengths against the limit laws
    LengthDist {
        #[arg(long, default_value = "i:a+b", value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long = "L-grid", value_delimiter = ',', default_value = "250,500,1000,2000", value_parser = parse_positive)]
        grid: Vec<Rational>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        bins: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        partitions: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Per-component length ratios against the ratio law
    RatioDist {
        #[arg(long, default_value = "i:a+b", value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long, default_value = "flat", value_parser = parse_functional)]
        psi: LengthFunctional,
        #[arg(long = "L-grid", value_delimiter = ',', default_value = "250,500,1000,2000", value_parser = parse_positive)]
        grid: Vec<Rational>,
        #[arg(long, default_value_t = 4096)]
        resolution: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        partitions: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the ratio law of psi/phi
    RatioLaw {
        #[arg(long, value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long, value_parser = parse_functional)]
        psi: LengthFunctional,
        #[arg(long, default_value_t = 4096)]
        resolution: usize,
        /// Number of table intervals
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        #[command(flatten)]
        common: Common,
    },
    /// Lattice estimate of the Thurston volume of {phi <= 1}
    Volume {
        #[arg(long, value_parser = parse_functional)]
        phi: LengthFunctional,
        #[arg(long = "L", value_parser = clap::value_parser!(u64).range(1..))]
        cutoff: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the pants-decomposition simplex density
    Density {
        /// Surface as `g,r`
        #[arg(long, value_parser = parse_surface)]
        pants: SurfaceType,
        /// Point of the simplex as `x1,...,xn`; repeatable
        #[arg(long, required = true)]
        at: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every acceptance gate; exit status 1 if any fails
    Verify,
    /// Render an SVG from a CSV written by this tool
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_functional(s: &str) -> std::result::Result<LengthFunctional, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_multicurve(s: &str) -> std::result::Result<KMulticurve, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_positive(s: &str) -> std::result::Result<Rational, String> {
    let q = parse_rational(s).map_err(|e| e.to_string())?;
    if q <= Rational::from_integer(0) {
        return Err(format!("{s} is not positive"));
    }
    Ok(q)
}

fn parse_surface(s: &str) -> std::result::Result<SurfaceType, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [g, r] = parts.as_slice() else {
        return Err(format!("expected g,r but got {s:?}"));
    };
    let g: u32 = g.parse().map_err(|_| format!("bad genus {g:?}"))?;
    let r: u32 = r.parse().map_err(|_| format!("bad boundary count {r:?}"))?;
    SurfaceType::new(g, r).map_err(|e| e.to_string())
}

/// A failure, with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::NotOnSimplex(_)
            | Error::NegativeCoordinate(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Where results go: stdout, or named files in a directory.
struct Sink<'a> {
    dir: Option<PathBuf>,
    stdout: &'a mut dyn Write,
}

impl Sink<'_> {
    /// Writes `body` to `dir/name`, or to stdout when no directory is set
    /// and `primary` is true. Secondary artifacts are dropped without a
    /// directory.
    fn emit(&mut self, name: &str, body: &str, primary: bool) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join(name), body)?;
                Ok(())
            }
            None if primary => Ok(self.stdout.write_all(body.as_bytes())?),
            None => Ok(()),
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    ExitCode::from(run(std::env::args_os(), &mut lock))
}

/// Runs the CLI on `args`, writing results to `stdout`; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code() as u8;
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> std::result::Result<u8, Failure> {
    match command {
        Command::Enumerate { phi, cutoff, emit, partitions, basepoint, common } => {
            let mut cfg = ExperimentConfig::new("enumerate", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.cutoff = Some(cutoff);
            cfg.emit = Some(emit.name().into());
            let base = basepoint.unwrap_or_else(KMulticurve::standard_pair);
            cfg.basepoint = Some(base.to_string());
            let stream = enumerate(OrbitQuery::new(base, phi.clone(), cutoff)?)?;
            let parts = stream.partitions(partitions as usize);
            let rows: Vec<Vec<EnumRow>> =
                parts.into_par_iter().map(|part| part.map(|g| EnumRow::new(&phi, &g)).collect()).collect();
            let rows = rows.into_iter().flatten();
            let k = stream.query().basepoint.k();
            let body = match emit {
                Emit::Csv => {
                    let mut cols = vec!["multicurve".to_string()];
                    cols.extend((1..=k).map(|i| format!("phi{i}")));
                    cols.push("total".into());
                    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
                    csv_document("enumerate", &cfg, &cols, rows.map(|r| r.csv()))
                }
                Emit::Json => json_document("enumerate", &cfg, &rows.collect::<Vec<_>>()),
            };
            let mut sink = Sink { dir: common.out, stdout };
            sink.emit(&format!("enumerate.{}", emit.name()), &body, true)?;
            Ok(0)
        }
        Command::CountGrowth { phi, grid, emit, partitions, common } => {
            let mut cfg = ExperimentConfig::new("count-growth", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.grid = grid.clone();
            cfg.emit = Some(emit.name().into());
            let query = OrbitQuery::standard(phi, grid[0])?;
            let rows = count_growth(&query, &grid, partitions as usize)?;
            let body = match emit {
                Emit::Csv => csv_document(
                    "count-growth",
                    &cfg,
                    &["L", "count", "normalized"],
                    rows.iter().map(|r| format!("{},{},{}", r.cutoff, r.count, r.normalized)),
                ),
                Emit::Json => json_document("count-growth", &cfg, &rows),
            };
            Sink { dir: common.out, stdout }.emit(&format!("count_growth.{}", emit.name()), &body, true)?;
            Ok(0)
        }
        Command::LengthDist { phi, grid, bins, partitions, common } => {
            let mut cfg = ExperimentConfig::new("length-dist", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.grid = grid.clone();
            cfg.bins = Some(bins);
            let d = length_dist(&phi, &grid, bins, partitions as usize)?;
            let mut sink = Sink { dir: common.out, stdout };
            sink.emit("length_dist.json", &json_document("length-dist", &cfg, &d.rows), true)?;
            let fraction = d.last.fraction.grid(0.0, 1.0, 1000);
            sink.emit("fraction_ecdf.csv", &csv_document("ecdf", &cfg, &["t", "cdf"], cdf_rows(&fraction)), false)?;
            let radius = d.last.radius.grid(0.0, 1.0, 1000);
            sink.emit("radius_ecdf.csv", &csv_document("ecdf", &cfg, &["t", "cdf"], cdf_rows(&radius)), false)?;
            let hist = d.last.directions.to_csv();
            let mut lines = hist.lines();
            let cols: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
            let body = csv_document("simplex-hist", &cfg, &cols, lines.map(str::to_string));
            sink.emit("simplex_hist.csv", &body, false)?;
            Ok(0)
        }
        Command::RatioDist { phi, psi, grid, resolution, partitions, common } => {
            let mut cfg = ExperimentConfig::new("ratio-dist", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.psi = Some(psi.to_string());
            cfg.grid = grid.clone();
            cfg.resolution = Some(resolution);
            let d = ratio_dist(&psi, &phi, &grid, resolution, partitions as usize)?;
            let mut sink = Sink { dir: common.out, stdout };
            sink.emit("ratio_dist.json", &json_document("ratio-dist", &cfg, &d.summary()), true)?;
            let (a, b) = d.law.support();
            let (lo, hi) = (a - 0.05 * (b - a).max(0.1), b + 0.05 * (b - a).max(0.1));
            if let Some(rec) = &d.last {
                for (i, m) in rec.marginals.iter().enumerate() {
                    let body = csv_document("ecdf", &cfg, &["t", "cdf"], cdf_rows(&m.grid(lo, hi, 1000)));
                    sink.emit(&format!("ratio{}_ecdf.csv", i + 1), &body, false)?;
                }
                let gmax = rec.gap.max().unwrap_or(0.0).max(1e-12);
                let body = csv_document("ecdf", &cfg, &["t", "cdf"], cdf_rows(&rec.gap.grid(0.0, gmax, 1000)));
                sink.emit("gap_ecdf.csv", &body, false)?;
            }
            let body = csv_document("ratio-law", &cfg, &["t", "cdf"], cdf_rows(&d.law.table(1000)));
            sink.emit("ratio_law.csv", &body, false)?;
            Ok(0)
        }
        Command::RatioLaw { phi, psi, resolution, points, emit, common } => {
            let mut cfg = ExperimentConfig::new("ratio-law", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.psi = Some(psi.to_string());
            cfg.resolution = Some(resolution);
            cfg.emit = Some(emit.name().into());
            cfg.extra.push(("points".into(), points.to_string()));
            let law = ratio_distribution(&psi, &phi, resolution);
            let table = law.table(points);
            let body = match emit {
                Emit::Csv => csv_document("ratio-law", &cfg, &["t", "cdf"], cdf_rows(&table)),
                Emit::Json => {
                    #[derive(Serialize)]
                    struct Law<'a> {
                        support: (f64, f64),
                        atoms: &'a [(f64, f64)],
                        table: &'a [(f64, f64)],
                    }
                    json_document("ratio-law", &cfg, &Law { support: law.support(), atoms: law.atoms(), table: &table })
                }
            };
            Sink { dir: common.out, stdout }.emit(&format!("ratio_law.{}", emit.name()), &body, true)?;
            Ok(0)
        }
        Command::Volume { phi, cutoff, common } => {
            let mut cfg = ExperimentConfig::new("volume", common.seed);
            cfg.phi = Some(phi.to_string());
            cfg.cutoff = Some(Rational::from_integer(cutoff as i64));
            let count = lattice_count(&phi, cutoff);
            let estimate = thurston_volume_lattice(&phi, cutoff);
            let body =
                csv_document("volume", &cfg, &["L", "count", "volume"], [format!("{cutoff},{count},{estimate}")]);
            Sink { dir: common.out, stdout }.emit("volume.csv", &body, true)?;
            Ok(0)
        }
        Command::Density { pants, at, common } => {
            let mut cfg = ExperimentConfig::new("density", common.seed);
            cfg.surface = format!("g{}r{}", pants.genus(), pants.boundary_count());
            cfg.extra = at.iter().map(|x| ("at".to_string(), x.clone())).collect();
            let n = pants.pants_count() as usize;
            let mut rows = Vec::new();
            for x in &at {
                let coords = x
                    .split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad coordinate in {x:?}"))))
                    .collect::<std::result::Result<Vec<f64>, Failure>>()?;
                let p = SimplexPoint::new(coords)?;
                let d = pants_density(pants, &p)?;
                let xs: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
                rows.push(format!("{},{}", xs.join(","), d));
            }
            let mut cols: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            cols.push("density".into());
            let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
            let body = csv_document("density", &cfg, &cols, rows);
            Sink { dir: common.out, stdout }.emit("density.csv", &body, true)?;
            Ok(0)
        }
        Command::Verify => {
            let ev = Evidence::new();
            let reports = run_all(&ev);
            for r in &reports {
                writeln!(stdout, "{r}").map_err(Error::from)?;
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            writeln!(stdout, "{passed}/{} gates passed", reports.len()).map_err(Error::from)?;
            Ok(if passed == reports.len() { 0 } else { 1 })
        }
        Command::Plot { input, output } => {
            let text = fs::read_to_string(&input).map_err(Error::from)?;
            let svg = plot_csv(&text).map_err(Failure::usage)?;
            let output = output.unwrap_or_else(|| input.with_extension("svg"));
            write_file(&output, &svg)?;
            Ok(0)
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(fs::write(path, body)?)
}

#[derive(Debug, Serialize)]
struct EnumRow {
    multicurve: String,
    lengths: Vec<f64>,
    total: f64,
}

impl EnumRow {
    fn new(phi: &LengthFunctional, g: &KMulticurve) -> Self {
        let lengths = phi.component_lengths_f64(g);
        let total = lengths.iter().sum();
        EnumRow { multicurve: g.to_string(), lengths, total }
    }

    fn csv(&self) -> String {
        let ls: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        format!("\"{}\",{},{}", self.multicurve, ls.join(","), self.total)
    }
}

/// Schema name, column names and numeric rows of a CSV.
type Table = (String, Vec<String>, Vec<Vec<f64>>);

/// Parses `# orbitlaw schema=<name> v<k> config=...` and the CSV body.
fn read_csv(text: &str) -> std::result::Result<Table, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let schema = header
        .strip_prefix("# orbitlaw schema=")
        .and_then(|rest| rest.split_whitespace().next())
        .ok_or("missing orbitlaw header line")?
        .to_string();
    let cols: Vec<String> = lines.next().ok_or("missing column line")?.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let row = line
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("non-numeric value in row {line:?}")))
            .collect::<std::result::Result<Vec<f64>, String>>()?;
        if row.len() != cols.len() {
            return Err(format!("row {line:?} has {} fields, expected {}", row.len(), cols.len()));
        }
        rows.push(row);
    }
    Ok((schema, cols, rows))
}

/// SVG 1.1 rendering of a CSV with one of the [`PLOTTABLE`] schemas.
pub fn plot_csv(text: &str) -> std::result::Result<String, String> {
    let (schema, cols, rows) = read_csv(text)?;
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    match schema.as_str() {
        "ecdf" | "ratio-law" => {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
            Ok(svg_line(&pts, &cols[0], &cols[1], &schema))
        }
        "count-growth" => {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[2])).collect();
            Ok(svg_line(&pts, "L", "count / L^2", &schema))
        }
        "simplex-hist" if cols.len() == 3 => {
            let bars: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[2])).collect();
            Ok(svg_bars(&bars, "x1", "count", &schema))
        }
        "simplex-hist" => Err("simplex-hist plots need k = 2".into()),
        other => Err(format!("schema {other:?} is not plottable; expected one of {PLOTTABLE:?}")),
    }
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const M: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(pts: &[(f64, f64)], y_from_zero: bool) -> Self {
        let fold = |f: fn(f64, f64) -> f64, init: f64, sel: fn(&(f64, f64)) -> f64| pts.iter().map(sel).fold(init, f);
        let (mut x0, mut x1) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
        let (mut y0, mut y1) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
        if y_from_zero {
            y0 = y0.min(0.0);
        }
        if x1 <= x0 {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if y1 <= y0 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        Frame { x0, x1, y0, y1 }
    }

    fn sx(&self, x: f64) -> f64 {
        M + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * M)
    }

    fn sy(&self, y: f64) -> f64 {
        H - M - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * M)
    }

    fn axes(&self, xlabel: &str, ylabel: &str, title: &str) -> String {
        format!(
            concat!(
                "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
                "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
                "<text x=\"{m}\" y=\"{tl}\" font-size=\"12\">{x0:.4}</text>\n",
                "<text x=\"{r}\" y=\"{tl}\" font-size=\"12\" text-anchor=\"end\">{x1:.4}</text>\n",
                "<text x=\"{ml}\" y=\"{b}\" font-size=\"12\" text-anchor=\"end\">{y0:.4}</text>\n",
                "<text x=\"{ml}\" y=\"{m}\" font-size=\"12\" text-anchor=\"end\">{y1:.4}</text>\n",
                "<text x=\"{cx}\" y=\"{xl}\" font-size=\"13\" text-anchor=\"middle\">{xlabel}</text>\n",
                "<text x=\"12\" y=\"{cy}\" font-size=\"13\" transform=\"rotate(-90 12 {cy})\" text-anchor=\"middle\">{ylabel}</text>\n",
                "<text x=\"{cx}\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
            ),
            m = M,
            b = H - M,
            r = W - M,
            tl = H - M + 16.0,
            ml = M - 4.0,
            xl = H - 10.0,
            cx = W / 2.0,
            cy = H / 2.0,
            x0 = self.x0,
            x1 = self.x1,
            y0 = self.y0,
            y1 = self.y1,
            xlabel = escape(xlabel),
            ylabel = escape(ylabel),
            title = escape(title),
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg_open() -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    )
}

fn svg_line(pts: &[(f64, f64)], xlabel: &str, ylabel: &str, title: &str) -> String {
    let f = Frame::new(pts, false);
    let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", f.sx(x), f.sy(y))).collect();
    let mut s = svg_open();
    s += &f.axes(xlabel, ylabel, title);
    s += &format!(
        "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"{}\"/>\n</svg>\n",
        path.join(" ")
    );
    s
}

fn svg_bars(bars: &[(f64, f64)], xlabel: &str, ylabel: &str, title: &str) -> String {
    let mut xs: Vec<f64> = bars.iter().map(|b| b.0).collect();
    xs.sort_by(f64::total_cmp);
    let width = xs.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).fold(f64::INFINITY, f64::min);
    let width = if width.is_finite() { width } else { 1.0 };
    let mut pts: Vec<(f64, f64)> = bars.to_vec();
    pts.extend(bars.iter().map(|b| (b.0 + width, 0.0)));
    let f = Frame::new(&pts, true);
    let mut s = svg_open();
    s += &f.axes(xlabel, ylabel, title);
    for &(x, c) in bars {
        let (left, right) = (f.sx(x), f.sx(x + width));
        let (top, base) = (f.sy(c), f.sy(0.0));
        s += &format!(
            "<rect x=\"{left:.2}\" y=\"{top:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#8fb3e0\" stroke=\"#1f4e9c\"/>\n",
            right - left,
            base - top
        );
    }
    s += "</svg>\n";
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("orbitlaw").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn count_growth_example() {
        let (code, out) = run_str(&["count-growth", "--phi", "i:a+b", "--L-grid", "2,3"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().skip(2).collect();
        assert_eq!(rows[0], "2,2,0.5");
        assert!(rows[1].starts_with("3,10,1.111"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["volume", "--phi", "nonsense", "--L", "10"]).0, 2);
        assert_eq!(run_str(&["enumerate", "--L", "0"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["density", "--pants", "1,2", "--at", "0.5,0.2"]).0, 2);
        assert_eq!(run_str(&["density", "--pants", "1,2", "--at", "0.5,0.3,0.2"]).0, 2);
    }

    #[test]
    fn plot_rejects_undeclared_schemas() {
        assert!(plot_csv("a,b\n1,2\n").is_err());
        assert!(plot_csv("# orbitlaw schema=volume v1 config={}\nL,count,volume\n10,110,1.1\n").is_err());
        let svg = plot_csv("# orbitlaw schema=ecdf v1 config={}\nt,cdf\n0,0\n0.5,0.4\n1,1\n").unwrap();
        assert!(svg.contains("version=\"1.1\"") && svg.contains("<polyline"));
    }
}
