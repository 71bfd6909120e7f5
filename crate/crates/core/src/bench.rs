//! Kernel timing and the benchmark records CSV.
//!
//! Only the counting kernel is inside the timed region. Parsing,
//! canonicalization and the split/incidence builds happen beforehand (see
//! [`KernelInputs::prepare`]), and every record says so in its
//! `timed_region` column.

use std::fs::OpenOptions;
use std::io::{Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::tricount::{Algorithm, CountError, KernelInputs};

/// Exact header line of the records CSV.
pub const CSV_HEADER: &str = "graph_id,n_edges,algorithm,t_tri_seconds,rate_eps,repetitions,\
triangle_count,timed_region,workers,timestamp";

pub const TIMED_REGION_KERNEL: &str = "kernel";

pub const DEFAULT_REPETITIONS: u32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("kernel returned {first} then {later} triangles on repeated runs")]
    Unstable { first: u64, later: u64 },
    #[error("no records to write")]
    NoRecords,
    #[error("unexpected records header `{0}`")]
    Header(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One timing measurement of one kernel on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub graph_id: String,
    /// Nₑ, undirected edges.
    pub n_edges: u64,
    pub algorithm: Algorithm,
    /// Median kernel wall-clock time, seconds.
    pub t_tri_seconds: f64,
    /// `n_edges / t_tri_seconds`.
    pub rate_eps: f64,
    pub repetitions: u32,
    pub triangle_count: u64,
    pub timed_region: String,
    pub workers: usize,
    /// RFC 3339 UTC wall-clock time, provenance only.
    pub timestamp: String,
}

impl BenchRecord {
    /// Builds a kernel-only record; `rate_eps` is derived from the inputs.
    pub fn new(
        graph_id: impl Into<String>,
        n_edges: u64,
        algorithm: Algorithm,
        t_tri_seconds: f64,
        repetitions: u32,
        triangle_count: u64,
        workers: usize,
    ) -> Self {
        Self {
            graph_id: graph_id.into(),
            n_edges,
            algorithm,
            t_tri_seconds,
            rate_eps: n_edges as f64 / t_tri_seconds,
            repetitions,
            triangle_count,
            timed_region: TIMED_REGION_KERNEL.to_string(),
            workers,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true),
        }
    }
}

/// A record plus the raw samples behind it.
#[derive(Debug, Clone)]
pub struct BenchRun {
    pub record: BenchRecord,
    pub samples: Vec<Duration>,
    /// Set when the clock's resolution exceeds 1% of the median, or when
    /// the kernel finished within one clock tick.
    pub coarse_timer: bool,
}

/// Median of the samples; the mean of the two middle values for even
/// lengths. Panics on an empty slice.
pub fn median(samples: &[Duration]) -> Duration {
    assert!(!samples.is_empty(), "median of no samples");
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2
    }
}

/// Smallest nonzero step observed on the monotonic clock.
pub fn timer_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..200 {
        let start = Instant::now();
        let mut now = Instant::now();
        while now == start {
            now = Instant::now();
        }
        best = best.min(now - start);
    }
    best
}

/// Calls `f` `repetitions` times and returns each call's duration with the
/// last result.
pub fn time_repetitions<T, E, F>(repetitions: u32, mut f: F) -> Result<(Vec<Duration>, T), E>
where
    F: FnMut() -> Result<T, E>,
{
    assert!(repetitions >= 1);
    let mut samples = Vec::with_capacity(repetitions as usize);
    let mut last = None;
    for _ in 0..repetitions {
        let start = Instant::now();
        let out = f()?;
        samples.push(start.elapsed());
        last = Some(out);
    }
    Ok((samples, last.expect("at least one repetition")))
}

/// Times `algorithm` on prepared inputs inside a pool of `workers` threads
/// (`0` for the rayon default) and reports the median.
pub fn run_benchmark(
    inputs: &KernelInputs<'_>,
    graph_id: &str,
    algorithm: Algorithm,
    repetitions: u32,
    workers: usize,
) -> Result<BenchRun, BenchError> {
    if repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CountError::Workers(e.to_string()))?;
    let mut first = None;
    let (samples, result) = time_repetitions(repetitions, || {
        let c = pool.install(|| inputs.count(algorithm))?;
        match first {
            None => first = Some(c.count),
            Some(f) if f != c.count => {
                return Err(BenchError::Unstable {
                    first: f,
                    later: c.count,
                })
            }
            Some(_) => {}
        }
        Ok::<_, BenchError>(c)
    })?;
    let resolution = timer_resolution();
    let mut t = median(&samples);
    let mut coarse = resolution.as_secs_f64() > 0.01 * t.as_secs_f64();
    if t.is_zero() {
        t = resolution;
        coarse = true;
    }
    let record = BenchRecord::new(
        graph_id,
        inputs.graph().n_edges(),
        algorithm,
        t.as_secs_f64(),
        repetitions,
        result.count,
        pool.current_num_threads(),
    );
    Ok(BenchRun {
        record,
        samples,
        coarse_timer: coarse,
    })
}

/// Writes records as CSV, with the header line when `write_header` is set,
/// and flushes. On a write error some rows may already be in the sink.
pub fn emit_records<W: Write>(
    records: &[BenchRecord],
    sink: W,
    write_header: bool,
) -> Result<(), BenchError> {
    if records.is_empty() {
        return Err(BenchError::NoRecords);
    }
    let mut writer = csv::WriterBuilder::new()
        .has_headers(write_header)
        .from_writer(sink);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

/// Appends to `path`, creating it; the header is written only when the
/// file is new or empty.
pub fn append_records(path: &Path, records: &[BenchRecord]) -> Result<(), BenchError> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    emit_records(records, file, fresh)
}

/// Parses a records CSV, requiring the exact header.
pub fn read_records<R: Read>(source: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(source);
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(BenchError::Header(header));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(BenchError::from))
        .collect()
}

pub fn read_records_file(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    read_records(std::fs::File::open(path)?)
}
