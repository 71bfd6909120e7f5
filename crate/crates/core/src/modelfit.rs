//! Power-law performance model `T_tri = (Nₑ/N₁)^β`.
//!
//! `N₁` is the number of edges processed in one second; `β` sets how
//! execution time scales with graph size. Fits are ordinary least squares
//! in `(log₁₀ Nₑ, log₁₀ T)`, after which `β` is snapped to the nearest
//! value in [`BETA_CANDIDATES`] and `N₁` is re-estimated with `β` fixed.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::bench::BenchRecord;

#[derive(Debug, thiserror::Error)]
pub enum FitError {
    #[error("degenerate fit for `{group}`: {reason}")]
    Degenerate { group: String, reason: String },
    #[error("execution time {0} is not positive")]
    NonPositiveTime(f64),
    #[error("edge count {0} is not positive")]
    NonPositiveEdges(f64),
    #[error("no fits to tabulate")]
    Empty,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FitError {
    /// Attaches a group name to a degenerate-fit error.
    pub fn in_group(self, name: &str) -> Self {
        match self {
            Self::Degenerate { reason, .. } => Self::Degenerate {
                group: name.to_string(),
                reason,
            },
            other => other,
        }
    }
}

/// Exact rational exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Beta {
    num: u32,
    den: u32,
}

impl Beta {
    pub const HALF: Beta = Beta { num: 1, den: 2 };
    pub const TWO_THIRDS: Beta = Beta { num: 2, den: 3 };
    pub const ONE: Beta = Beta { num: 1, den: 1 };
    pub const FOUR_THIRDS: Beta = Beta { num: 4, den: 3 };
    pub const THREE_HALVES: Beta = Beta { num: 3, den: 2 };

    pub fn value(self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exponents that appear in published submission fits, ascending.
pub const BETA_CANDIDATES: [Beta; 5] = [
    Beta::HALF,
    Beta::TWO_THIRDS,
    Beta::ONE,
    Beta::FOUR_THIRDS,
    Beta::THREE_HALVES,
];

/// Nearest candidate; on an exact tie the smaller one wins.
pub fn snap_beta(raw: f64) -> Beta {
    let mut best = BETA_CANDIDATES[0];
    for c in &BETA_CANDIDATES[1..] {
        if (raw - c.value()).abs() < (raw - best.value()).abs() {
            best = *c;
        }
    }
    best
}

/// Anything of the form `T = (Nₑ/N₁)^β`.
pub trait PowerLaw {
    fn n1(&self) -> f64;
    fn beta(&self) -> f64;
}

/// Predicted seconds for `n_edges` edges.
pub fn evaluate_model<M: PowerLaw + ?Sized>(model: &M, n_edges: f64) -> f64 {
    (n_edges / model.n1()).powf(model.beta())
}

/// Community state-of-the-art reference lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SotaLine {
    /// `T ≈ (Nₑ/10⁸)^(4/3)`
    Sota2017,
    /// `T ≈ Nₑ/10⁹`, also representative of 2019.
    Sota2018,
}

impl SotaLine {
    pub fn label(self) -> &'static str {
        match self {
            Self::Sota2017 => "sota2017",
            Self::Sota2018 => "sota2018",
        }
    }

    pub fn exponent(self) -> Beta {
        match self {
            Self::Sota2017 => Beta::FOUR_THIRDS,
            Self::Sota2018 => Beta::ONE,
        }
    }
}

impl PowerLaw for SotaLine {
    fn n1(&self) -> f64 {
        match self {
            Self::Sota2017 => 1e8,
            Self::Sota2018 => 1e9,
        }
    }

    fn beta(&self) -> f64 {
        self.exponent().value()
    }
}

/// One `(Nₑ, T_tri)` observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    pub n_edges: f64,
    pub t_tri: f64,
}

impl FitPoint {
    pub fn new(n_edges: f64, t_tri: f64) -> Self {
        Self { n_edges, t_tri }
    }
}

impl From<&BenchRecord> for FitPoint {
    fn from(r: &BenchRecord) -> Self {
        Self::new(r.n_edges as f64, r.t_tri_seconds)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFit {
    /// Full-precision N₁ for the snapped exponent.
    pub n1: f64,
    /// Unsnapped least-squares slope.
    pub beta: f64,
    pub beta_snapped: Beta,
    /// N₁ implied by the unsnapped line.
    pub n1_raw: f64,
    pub fit_min_edges: f64,
    /// RMS of `log₁₀ T − log₁₀ T̂` under the snapped model.
    pub residual_rms: f64,
    pub n_points: usize,
    pub max_edges: f64,
}

impl PowerLaw for ModelFit {
    fn n1(&self) -> f64 {
        self.n1
    }

    fn beta(&self) -> f64 {
        self.beta_snapped.value()
    }
}

/// `max(10⁶, max Nₑ / 10)`: keep the top decade of the measured range.
pub fn default_min_edges(points: &[FitPoint]) -> f64 {
    let max = points.iter().map(|p| p.n_edges).fold(0.0, f64::max);
    (max / 10.0).max(1e6)
}

pub fn fit_loglog(points: &[FitPoint], min_edges: f64) -> Result<ModelFit, FitError> {
    for p in points {
        if !(p.t_tri > 0.0) {
            return Err(FitError::NonPositiveTime(p.t_tri));
        }
        if !(p.n_edges > 0.0) {
            return Err(FitError::NonPositiveEdges(p.n_edges));
        }
    }
    let kept: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.n_edges >= min_edges)
        .map(|p| (p.n_edges.log10(), p.t_tri.log10()))
        .collect();
    let degenerate = |reason: String| FitError::Degenerate {
        group: String::new(),
        reason,
    };
    if kept.len() < 2 {
        return Err(degenerate(format!(
            "{} point(s) with Nₑ ≥ {min_edges}, need at least 2",
            kept.len()
        )));
    }
    let n = kept.len() as f64;
    let mean_x = kept.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = kept.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = kept.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = kept.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(degenerate("all retained points have the same Nₑ".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let snapped = snap_beta(slope);
    let log_n1 = mean_x - mean_y / snapped.value();
    let residual_rms = (kept
        .iter()
        .map(|&(x, y)| (y - snapped.value() * (x - log_n1)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ModelFit {
        n1: 10f64.powf(log_n1),
        beta: slope,
        beta_snapped: snapped,
        n1_raw: 10f64.powf(-intercept / slope),
        fit_min_edges: min_edges,
        residual_rms,
        n_points: kept.len(),
        max_edges: points
            .iter()
            .filter(|p| p.n_edges >= min_edges)
            .map(|p| p.n_edges)
            .fold(0.0, f64::max),
    })
}

/// One fit, or two independent fits either side of `breakpoint`
/// (`[Nₑ < breakpoint, Nₑ ≥ breakpoint]`).
pub fn fit_piecewise(
    points: &[FitPoint],
    min_edges: f64,
    breakpoint: Option<f64>,
) -> Result<Vec<ModelFit>, FitError> {
    match breakpoint {
        None => Ok(vec![fit_loglog(points, min_edges)?]),
        Some(bp) => {
            let (below, above): (Vec<FitPoint>, Vec<FitPoint>) =
                points.iter().partition(|p| p.n_edges < bp);
            Ok(vec![
                fit_loglog(&below, min_edges)?,
                fit_loglog(&above, min_edges.max(bp))?,
            ])
        }
    }
}

/// Per-record comparison against both reference lines. Ratios above 1
/// mean the record beat that line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SotaComparison {
    pub graph_id: String,
    pub algorithm: String,
    pub n_edges: u64,
    pub t_tri_seconds: f64,
    pub ratio_2017: f64,
    pub ratio_2018: f64,
}

/// Sorted by Nₑ; records with equal Nₑ keep their input order.
pub fn compare_sota(records: &[BenchRecord]) -> Vec<SotaComparison> {
    let mut out: Vec<SotaComparison> = records
        .iter()
        .map(|r| {
            let ne = r.n_edges as f64;
            SotaComparison {
                graph_id: r.graph_id.clone(),
                algorithm: r.algorithm.to_string(),
                n_edges: r.n_edges,
                t_tri_seconds: r.t_tri_seconds,
                ratio_2017: evaluate_model(&SotaLine::Sota2017, ne) / r.t_tri_seconds,
                ratio_2018: evaluate_model(&SotaLine::Sota2018, ne) / r.t_tri_seconds,
            }
        })
        .collect();
    out.sort_by_key(|c| c.n_edges);
    out
}

pub fn write_comparison_csv<W: Write>(rows: &[SotaComparison], sink: W) -> Result<(), FitError> {
    let mut w = csv::Writer::from_writer(sink);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// How records are grouped into independently fitted series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroupBy {
    #[default]
    Algorithm,
    GraphId,
    AlgorithmWorkers,
}

impl GroupBy {
    pub fn key(self, r: &BenchRecord) -> String {
        match self {
            Self::Algorithm => r.algorithm.to_string(),
            Self::GraphId => r.graph_id.clone(),
            Self::AlgorithmWorkers => format!("{}-w{}", r.algorithm, r.workers),
        }
    }
}

pub fn points_by_group(records: &[BenchRecord], by: GroupBy) -> BTreeMap<String, Vec<FitPoint>> {
    let mut groups: BTreeMap<String, Vec<FitPoint>> = BTreeMap::new();
    for r in records {
        groups.entry(by.key(r)).or_default().push(r.into());
    }
    groups
}

/// Aligned plain-text table: submission, max Nₑ, N₁ at one significant
/// digit, β as a fraction.
pub fn emit_fit_table(fits: &[(String, ModelFit)]) -> Result<String, FitError> {
    if fits.is_empty() {
        return Err(FitError::Empty);
    }
    let header = ["submission", "max Ne", "N1", "beta"];
    let rows: Vec<[String; 4]> = fits
        .iter()
        .map(|(name, f)| {
            [
                name.clone(),
                format!("{:.1e}", f.max_edges),
                format!("{:.0e}", f.n1),
                f.beta_snapped.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut push = |cells: [&str; 4]| {
        let line = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push(header);
    for row in &rows {
        push([&row[0], &row[1], &row[2], &row[3]]);
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct FitCsvRow<'a> {
    submission: &'a str,
    max_edges: f64,
    n1: f64,
    beta: String,
    beta_raw: f64,
    n1_raw: f64,
    residual_rms: f64,
    n_points: usize,
    fit_min_edges: f64,
}

/// Full-precision fit table as CSV.
pub fn write_fit_csv<W: Write>(fits: &[(String, ModelFit)], sink: W) -> Result<(), FitError> {
    if fits.is_empty() {
        return Err(FitError::Empty);
    }
    let mut w = csv::Writer::from_writer(sink);
    for (name, f) in fits {
        w.serialize(FitCsvRow {
            submission: name,
            max_edges: f.max_edges,
            n1: f.n1,
            beta: f.beta_snapped.to_string(),
            beta_raw: f.beta,
            n1_raw: f.n1_raw,
            residual_rms: f.residual_rms,
            n_points: f.n_points,
            fit_min_edges: f.fit_min_edges,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Observed time alongside the fitted model and both reference lines.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRow {
    pub group: String,
    pub n_edges: f64,
    pub observed_t: f64,
    pub model_t: f64,
    pub sota2017_t: f64,
    pub sota2018_t: f64,
}

pub fn plot_rows(group: &str, points: &[FitPoint], fit: &ModelFit) -> Vec<PlotRow> {
    let mut rows: Vec<PlotRow> = points
        .iter()
        .map(|p| PlotRow {
            group: group.to_string(),
            n_edges: p.n_edges,
            observed_t: p.t_tri,
            model_t: evaluate_model(fit, p.n_edges),
            sota2017_t: evaluate_model(&SotaLine::Sota2017, p.n_edges),
            sota2018_t: evaluate_model(&SotaLine::Sota2018, p.n_edges),
        })
        .collect();
    rows.sort_by(|a, b| a.n_edges.total_cmp(&b.n_edges));
    rows
}

pub fn write_plot_csv<W: Write>(rows: &[PlotRow], sink: W) -> Result<(), FitError> {
    let mut w = csv::Writer::from_writer(sink);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
