//! Reproducible experiments shared by the command line and `verify`.
//!
//! Every output starts with a header that records the full configuration.
//! The partition count only changes how work is scheduled, never the result,
//! so it is not part of the configuration.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::measures::{p_measure_torus_pair, ratio_distribution, RadialLaw, RatioDistribution};
use crate::orbit::{enumerate, OrbitQuery};
use crate::stats::{ks_statistic, record_lengths, record_ratios, LengthRecord, RatioRecord};
use crate::torus::LengthFunctional;
use crate::Rational;

pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_rationals<S: serde::Serializer>(qs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(|q| q.to_string()))
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Everything that determines an experiment's output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub surface: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_rational")]
    pub cutoff: Option<Rational>,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "ser_rationals")]
    pub grid: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emit: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<(String, String)>,
}

impl ExperimentConfig {
    pub fn new(command: &str, seed: u64) -> Self {
        ExperimentConfig {
            command: command.to_string(),
            surface: "torus11".to_string(),
            phi: None,
            psi: None,
            basepoint: None,
            cutoff: None,
            grid: Vec::new(),
            bins: None,
            resolution: None,
            samples: None,
            seed,
            emit: None,
            extra: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// `# orbitlaw schema=<name> v1 config=<json>`
    pub fn header(&self, schema: &str) -> String {
        format!("# orbitlaw schema={schema} v{SCHEMA_VERSION} config={}\n", self.to_json())
    }
}

/// JSON document `{schema, version, config, data}` with a trailing newline.
pub fn json_document<T: Serialize>(schema: &str, config: &ExperimentConfig, data: &T) -> String {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        schema: &'a str,
        version: u32,
        config: &'a ExperimentConfig,
        data: &'a T,
    }
    let doc = Doc { schema, version: SCHEMA_VERSION, config, data };
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

/// CSV with the config header; `rows` are already comma-joined.
pub fn csv_document(
    schema: &str,
    config: &ExperimentConfig,
    columns: &[&str],
    rows: impl IntoIterator<Item = String>,
) -> String {
    let mut s = config.header(schema);
    s.push_str(&columns.join(","));
    s.push('\n');
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// `(t, F(t))` rows.
pub fn cdf_rows(points: &[(f64, f64)]) -> Vec<String> {
    points.iter().map(|(t, f)| format!("{t},{f}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthDistRow {
    #[serde(serialize_with = "ser_rational")]
    pub cutoff: Rational,
    pub count: u64,
    /// KS distance of the first length fraction to the limit law
    pub ks_fraction: f64,
    /// KS distance of `Σ φ(γ_i) / L` to the radial law `t²`
    pub ks_radius: f64,
    pub mean_fraction: f64,
    /// binned total variation of the direction histogram against the limit law
    pub direction_tv: f64,
}

#[derive(Debug, Clone)]
pub struct LengthDist {
    pub rows: Vec<LengthDistRow>,
    /// records at the largest cutoff
    pub last: LengthRecord,
}

/// Length fractions and normalized total lengths of the orbit of the standard
/// pair, compared with the uniform simplex law and the radial law.
pub fn length_dist(phi: &LengthFunctional, grid: &[Rational], bins: u32, partitions: usize) -> Result<LengthDist> {
    let law = p_measure_torus_pair();
    let radial = RadialLaw::new(2)?;
    let mut rows = Vec::new();
    let mut last = None;
    for &cutoff in grid {
        let stream = enumerate(OrbitQuery::standard(phi.clone(), cutoff)?)?;
        let rec = record_lengths(&stream, phi, bins, partitions)?;
        if rec.radius.is_empty() {
            rows.push(LengthDistRow {
                cutoff,
                count: 0,
                ks_fraction: f64::NAN,
                ks_radius: f64::NAN,
                mean_fraction: f64::NAN,
                direction_tv: f64::NAN,
            });
            continue;
        }
        let fraction_cdf = |t: f64| law.fraction_cdf(t).expect("k = 2");
        rows.push(LengthDistRow {
            cutoff,
            count: rec.radius.len(),
            ks_fraction: ks_statistic(&rec.fraction, &fraction_cdf),
            ks_radius: ks_statistic(&rec.radius, &radial),
            mean_fraction: rec.fraction.mean(),
            direction_tv: rec.directions.total_variation(|x| law.density(x).expect("k = 2")),
        });
        last = Some(rec);
    }
    let last = last.unwrap_or_else(|| LengthRecord {
        directions: crate::stats::SimplexHistogram::new(2, bins),
        radius: Default::default(),
        fraction: Default::default(),
    });
    Ok(LengthDist { rows, last })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioDistRow {
    #[serde(serialize_with = "ser_rational")]
    pub cutoff: Rational,
    pub count: u64,
    pub mean_gap: f64,
    pub max_gap: f64,
    /// KS distance of each ratio marginal to the limit ratio law
    pub ks_marginals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RatioDist {
    pub rows: Vec<RatioDistRow>,
    pub law: RatioDistribution,
    pub last: Option<RatioRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioDistSummary<'a> {
    pub rows: &'a [RatioDistRow],
    pub support: (f64, f64),
    pub atoms: &'a [(f64, f64)],
}

impl RatioDist {
    pub fn summary(&self) -> RatioDistSummary<'_> {
        RatioDistSummary { rows: &self.rows, support: self.law.support(), atoms: self.law.atoms() }
    }
}

/// Per-component ratios `ψ/φ` over the orbit of the standard pair with
/// cutoff in `φ`, compared with the ratio law.
pub fn ratio_dist(
    psi: &LengthFunctional,
    phi: &LengthFunctional,
    grid: &[Rational],
    resolution: usize,
    partitions: usize,
) -> Result<RatioDist> {
    let law = ratio_distribution(psi, phi, resolution);
    let mut rows = Vec::new();
    let mut last = None;
    for &cutoff in grid {
        let stream = enumerate(OrbitQuery::standard(phi.clone(), cutoff)?)?;
        let rec = record_ratios(&stream, psi, phi, partitions)?;
        if rec.gap.is_empty() {
            rows.push(RatioDistRow { cutoff, count: 0, mean_gap: f64::NAN, max_gap: f64::NAN, ks_marginals: vec![] });
            continue;
        }
        rows.push(RatioDistRow {
            cutoff,
            count: rec.gap.len(),
            mean_gap: rec.gap.mean(),
            max_gap: rec.gap.max().expect("nonempty"),
            ks_marginals: rec.marginals.iter().map(|m| ks_statistic(m, &law)).collect(),
        });
        last = Some(rec);
    }
    Ok(RatioDist { rows, law, last })
}

/// Plain-text table of rows for terminal output.
pub fn format_length_rows(rows: &[LengthDistRow]) -> String {
    let mut s = String::from("L\tcount\tks_fraction\tks_radius\tmean_fraction\tdirection_tv\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
            r.cutoff, r.count, r.ks_fraction, r.ks_radius, r.mean_fraction, r.direction_tv
        );
    }
    s
}
