//! Probabilistic QUBO samplers: a uniform baseline, Metropolis simulated
//! annealing with an auto-calibrated geometric schedule, the separable
//! (sum x - k)^2 test problem, and text export/import of models.
//!
//! Annealing keeps a per-variable field h[v] = diag[v] + sum of pair weights
//! to currently set neighbors, so a flip proposal costs O(1) and only
//! accepted flips touch the neighbor lists. Read `j` draws from RNG stream
//! `(seed, j)`; results are identical for any worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::qubo::{BitString, QuboError, QuboModel};
use crate::seed::{stream_rng, CALIBRATION_STREAM};
use crate::{real, Scalar, DEFAULT_SEED};

/// One distinct sampled state with its energy and multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord<T: Scalar = f64> {
    pub bits: BitString,
    pub energy: T,
    pub occurrences: u64,
}

/// Aggregated sampler output: records sorted ascending by energy (ties by
/// bitstring), occurrences summing to `total_reads`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet<T: Scalar = f64> {
    pub records: Vec<SampleRecord<T>>,
    pub num_vars: usize,
    pub total_reads: u64,
    pub sampler_label: String,
    pub seed: u64,
}

impl<T: Scalar> SampleSet<T> {
    /// Minimum sampled energy; None for an empty set.
    pub fn min_energy(&self) -> Option<T> {
        self.records.first().map(|r| r.energy)
    }

    /// Reads that reached the minimum sampled energy (1e-9 relative slack).
    pub fn ground_hits(&self) -> Option<(T, u64)> {
        let min = self.min_energy()?;
        let tol = real::<T>(1e-9) * min.abs().max(T::one());
        let hits = self
            .records
            .iter()
            .take_while(|r| r.energy <= min + tol)
            .map(|r| r.occurrences)
            .sum();
        Some((min, hits))
    }

    /// `bitstring,energy,occurrences` rows; bit 0 is the leftmost character.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,energy,occurrences\n");
        for record in &self.records {
            let _ = writeln!(out, "{},{},{}", record.bits, record.energy, record.occurrences);
        }
        out
    }
}

/// Simulated-annealing knobs. The schedule is geometric between two
/// temperatures calibrated from 100 random single-flip probes: T_hot set so
/// a mean-magnitude uphill move is accepted with `hot_acceptance`, T_cold =
/// `cold_factor` times the smallest nonzero probe magnitude (clamped to
/// T_hot). When every probe is zero both default to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealParams {
    /// Independent reads (restarts).
    pub reads: u64,
    /// Metropolis sweeps per read; each sweep proposes `num_vars` flips.
    /// 0 skips annealing entirely, so every read reports its random start
    /// (the uniform sampler's distribution).
    pub sweeps: u32,
    /// Target initial acceptance probability, in (0, 1).
    pub hot_acceptance: f64,
    /// Cold endpoint as a fraction of the smallest nonzero probe |dE|.
    pub cold_factor: f64,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            reads: 10_000,
            sweeps: 1000,
            hot_acceptance: 0.8,
            cold_factor: 0.1,
            seed: DEFAULT_SEED,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.reads < 1 {
            return Err(SamplerError::NoReads);
        }
        if !(self.hot_acceptance > 0.0 && self.hot_acceptance < 1.0) {
            return Err(SamplerError::InvalidParams(format!(
                "hot_acceptance must lie strictly in (0, 1), got {}",
                self.hot_acceptance
            )));
        }
        if !(self.cold_factor > 0.0 && self.cold_factor.is_finite()) {
            return Err(SamplerError::InvalidParams(format!(
                "cold_factor must be positive and finite, got {}",
                self.cold_factor
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("reads must be >= 1")]
    NoReads,
    #[error("invalid annealing parameters: {0}")]
    InvalidParams(String),
    #[error("target ones k = {k} exceeds variable count n = {n}")]
    TargetExceedsVars { k: usize, n: usize },
    #[error("import line {line}: {msg}")]
    Import { line: usize, msg: String },
    #[error("import is missing the '# {0}' header")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Qubo(#[from] QuboError),
}

/// Per-variable view of the sparse table: diagonal weights plus adjacency
/// lists holding each pair weight from both endpoints.
struct FlipTable<T: Scalar> {
    diag: Vec<T>,
    neighbors: Vec<Vec<(u32, T)>>,
}

impl<T: Scalar> FlipTable<T> {
    fn build(model: &QuboModel<T>) -> Self {
        let nv = model.num_vars();
        let mut diag = vec![T::zero(); nv];
        let mut neighbors: Vec<Vec<(u32, T)>> = vec![Vec::new(); nv];
        for (&(a, b), &w) in model.coefficients() {
            if a == b {
                diag[a] = w;
            } else {
                neighbors[a].push((b as u32, w));
                neighbors[b].push((a as u32, w));
            }
        }
        FlipTable { diag, neighbors }
    }

    /// dE of flipping `v` out of `bits`, from scratch.
    fn flip_delta(&self, bits: &[bool], v: usize) -> T {
        let mut field = self.diag[v];
        for &(u, w) in &self.neighbors[v] {
            if bits[u as usize] {
                field += w;
            }
        }
        if bits[v] {
            -field
        } else {
            field
        }
    }
}

/// Draws every bit independently with probability 1/2 per read.
pub fn sample_uniform<T: Scalar>(
    model: &QuboModel<T>,
    reads: u64,
    seed: u64,
) -> Result<SampleSet<T>, SamplerError> {
    if reads < 1 {
        return Err(SamplerError::NoReads);
    }
    let nv = model.num_vars();
    let raw: Vec<(BitString, T)> = (0..reads)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(seed, j);
            let bits = BitString::new((0..nv).map(|_| rng.random()).collect());
            let energy = model.energy(&bits).expect("length matches by construction");
            (bits, energy)
        })
        .collect();
    Ok(aggregate(raw, nv, reads, "uniform", seed))
}

/// Metropolis single-bit-flip annealing; see [`AnnealParams`] for the
/// schedule. Final energies are recomputed from scratch per read, so
/// incremental bookkeeping cannot leak drift into reports.
pub fn simulated_anneal<T: Scalar>(
    model: &QuboModel<T>,
    params: &AnnealParams,
) -> Result<SampleSet<T>, SamplerError> {
    anneal_impl(model, params, false)
}

/// `audit` re-evaluates the full energy after every accepted flip and
/// asserts it matches the incrementally tracked value (test hook; far too
/// slow for production reads).
pub(crate) fn anneal_impl<T: Scalar>(
    model: &QuboModel<T>,
    params: &AnnealParams,
    audit: bool,
) -> Result<SampleSet<T>, SamplerError> {
    params.validate()?;
    let table = FlipTable::build(model);
    let (t_hot, t_cold) = calibrate(&table, params, model.num_vars());
    let schedule = geometric_schedule(t_hot, t_cold, params.sweeps);
    let raw: Vec<(BitString, T)> = (0..params.reads)
        .into_par_iter()
        .map(|j| anneal_read(model, &table, &schedule, params.seed, j, audit))
        .collect();
    Ok(aggregate(raw, model.num_vars(), params.reads, "anneal", params.seed))
}

fn calibrate<T: Scalar>(table: &FlipTable<T>, params: &AnnealParams, nv: usize) -> (f64, f64) {
    if nv == 0 {
        return (1.0, 1.0);
    }
    let mut rng = stream_rng(params.seed, CALIBRATION_STREAM);
    let mut magnitudes: Vec<f64> = Vec::with_capacity(100);
    for _ in 0..100 {
        let bits: Vec<bool> = (0..nv).map(|_| rng.random()).collect();
        let v = rng.random_range(0..nv);
        let mag = table
            .flip_delta(&bits, v)
            .to_f64()
            .expect("finite delta")
            .abs();
        if mag > 0.0 {
            magnitudes.push(mag);
        }
    }
    if magnitudes.is_empty() {
        return (1.0, 1.0);
    }
    let mean = magnitudes.iter().sum::<f64>() / magnitudes.len() as f64;
    let min = magnitudes.iter().copied().fold(f64::INFINITY, f64::min);
    let t_hot = mean / -params.hot_acceptance.ln();
    let t_cold = (params.cold_factor * min).min(t_hot);
    (t_hot, t_cold)
}

fn geometric_schedule(t_hot: f64, t_cold: f64, sweeps: u32) -> Vec<f64> {
    match sweeps {
        0 => Vec::new(),
        1 => vec![t_hot],
        s => {
            let ratio = t_cold / t_hot;
            (0..s)
                .map(|k| t_hot * ratio.powf(k as f64 / (s - 1) as f64))
                .collect()
        }
    }
}

fn anneal_read<T: Scalar>(
    model: &QuboModel<T>,
    table: &FlipTable<T>,
    schedule: &[f64],
    seed: u64,
    read_index: u64,
    audit: bool,
) -> (BitString, T) {
    let nv = model.num_vars();
    let mut rng = stream_rng(seed, read_index);
    let mut bits: Vec<bool> = (0..nv).map(|_| rng.random()).collect();

    if nv > 0 && !schedule.is_empty() {
        let mut fields = table.diag.clone();
        for (&on, neighbors) in bits.iter().zip(&table.neighbors) {
            if on {
                for &(u, w) in neighbors {
                    fields[u as usize] += w;
                }
            }
        }
        let mut tracked = if audit {
            model.energy(&BitString::new(bits.clone())).expect("length matches")
        } else {
            T::zero()
        };
        for &temp in schedule {
            for _ in 0..nv {
                let v = rng.random_range(0..nv);
                let delta = if bits[v] { -fields[v] } else { fields[v] };
                let accept = if delta <= T::zero() {
                    true
                } else {
                    // exp(-40) is below any f64 the uniform draw can beat;
                    // rejecting outright skips the draw and the exp.
                    let ratio = delta.to_f64().expect("finite delta") / temp;
                    ratio < 40.0 && rng.random::<f64>() < (-ratio).exp()
                };
                if accept {
                    let sign = if bits[v] {
                        bits[v] = false;
                        T::one().neg()
                    } else {
                        bits[v] = true;
                        T::one()
                    };
                    for &(u, w) in &table.neighbors[v] {
                        let nudge = sign * w;
                        fields[u as usize] += nudge;
                    }
                    if audit {
                        tracked += delta;
                        let full = model
                            .energy(&BitString::new(bits.clone()))
                            .expect("length matches");
                        let tol = real::<T>(1e-9) * full.abs().max(T::one());
                        assert!(
                            (tracked - full).abs() <= tol,
                            "incremental energy drifted: tracked {tracked} vs full {full}"
                        );
                    }
                }
            }
        }
    }

    let bits = BitString::new(bits);
    let energy = model.energy(&bits).expect("length matches by construction");
    (bits, energy)
}

fn aggregate<T: Scalar>(
    raw: Vec<(BitString, T)>,
    num_vars: usize,
    total_reads: u64,
    sampler_label: &str,
    seed: u64,
) -> SampleSet<T> {
    let mut counts: BTreeMap<BitString, (T, u64)> = BTreeMap::new();
    for (bits, energy) in raw {
        counts
            .entry(bits)
            .and_modify(|entry| entry.1 += 1)
            .or_insert((energy, 1));
    }
    let mut records: Vec<SampleRecord<T>> = counts
        .into_iter()
        .map(|(bits, (energy, occurrences))| SampleRecord {
            bits,
            energy,
            occurrences,
        })
        .collect();
    records.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .expect("finite energies")
            .then_with(|| a.bits.cmp(&b.bits))
    });
    SampleSet {
        records,
        num_vars,
        total_reads,
        sampler_label: sampler_label.to_string(),
        seed,
    }
}

/// QUBO of (sum x - k)^2: diagonal 1 - 2k, off-diagonal pairs +2, offset
/// k^2. Ground energy 0, attained exactly on weight-k bitstrings.
pub fn dummy_problem<T: Scalar>(n: usize, k: usize) -> Result<QuboModel<T>, SamplerError> {
    if k > n {
        return Err(SamplerError::TargetExceedsVars { k, n });
    }
    let diag = real::<T>(1.0 - 2.0 * k as f64);
    let two = real::<T>(2.0);
    let mut table = BTreeMap::new();
    for a in 0..n {
        table.insert((a, a), diag);
        for b in a + 1..n {
            table.insert((a, b), two);
        }
    }
    let offset = real::<T>((k as f64) * (k as f64));
    QuboModel::from_parts(n, table, offset).map_err(SamplerError::from)
}

/// Emits `# vars`, `# offset`, then one `a b coeff` line per stored pair in
/// (a, b) order. Numbers print in shortest round-trip form, so re-importing
/// reproduces the exact coefficients.
pub fn export_qubo<T: Scalar>(model: &QuboModel<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# vars {}", model.num_vars());
    let _ = writeln!(out, "# offset {}", model.offset());
    for (&(a, b), &w) in model.coefficients() {
        let _ = writeln!(out, "{a} {b} {w}");
    }
    out
}

/// Parses the [`export_qubo`] format. Unrecognized comment lines are
/// ignored; a missing offset header defaults to zero.
pub fn import_qubo<T: Scalar>(text: &str) -> Result<QuboModel<T>, SamplerError> {
    let mut num_vars: Option<usize> = None;
    let mut offset: Option<T> = None;
    let mut table: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stmt = raw.trim();
        if stmt.is_empty() {
            continue;
        }
        if let Some(comment) = stmt.strip_prefix('#') {
            let mut tokens = comment.split_whitespace();
            match tokens.next() {
                Some("vars") => {
                    let value = tokens.next().ok_or(SamplerError::Import {
                        line,
                        msg: "'# vars' needs a count".into(),
                    })?;
                    num_vars = Some(value.parse().map_err(|_| SamplerError::Import {
                        line,
                        msg: format!("bad variable count '{value}'"),
                    })?);
                }
                Some("offset") => {
                    let value = tokens.next().ok_or(SamplerError::Import {
                        line,
                        msg: "'# offset' needs a value".into(),
                    })?;
                    let parsed: f64 = value.parse().map_err(|_| SamplerError::Import {
                        line,
                        msg: format!("bad offset '{value}'"),
                    })?;
                    offset = Some(real(parsed));
                }
                _ => {}
            }
            continue;
        }
        let tokens: Vec<&str> = stmt.split_whitespace().collect();
        let [a, b, w] = tokens[..] else {
            return Err(SamplerError::Import {
                line,
                msg: format!("expected 'a b coeff', got '{stmt}'"),
            });
        };
        let a: usize = a.parse().map_err(|_| SamplerError::Import {
            line,
            msg: format!("bad index '{a}'"),
        })?;
        let b: usize = b.parse().map_err(|_| SamplerError::Import {
            line,
            msg: format!("bad index '{b}'"),
        })?;
        let w: f64 = w.parse().map_err(|_| SamplerError::Import {
            line,
            msg: format!("bad coefficient '{w}'"),
        })?;
        if table.insert((a, b), real(w)).is_some() {
            return Err(SamplerError::Import {
                line,
                msg: format!("duplicate entry for ({a}, {b})"),
            });
        }
    }
    let num_vars = num_vars.ok_or(SamplerError::MissingHeader("vars"))?;
    QuboModel::from_parts(num_vars, table, offset.unwrap_or_else(T::zero))
        .map_err(SamplerError::from)
}
