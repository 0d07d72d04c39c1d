//! Cross-checks between the route view and the QUBO view, plus the
//! end-to-end step-count sweep: ground-state confirmation, scatter and
//! histogram series, sample-set violation breakdowns, and winner selection.

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::classical::{
    self, exhaustive_search, greedy_guess, rank_routes, ClassicalError, Route,
};
use crate::model::{
    derive_coefficients, CoefficientSet, JspInstance, ModelError, DEFAULT_C_P,
    DEFAULT_OAM_MULTIPLIER, DEFAULT_OPS_MULTIPLIER, DEFAULT_P_GUESS,
};
use crate::qubo::{build_qubo, decode, QuboError};
use crate::sampler::{
    sample_uniform, simulated_anneal, AnnealParams, SampleSet, SamplerError,
};
use crate::{real, seed, Scalar};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Qubo(#[from] QuboError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("histogram needs at least one value")]
    EmptyHistogram,
    #[error("histogram needs at least one bin")]
    ZeroBins,
    #[error("invalid step range {lo}:{hi} for {n} places")]
    InvalidRange { lo: usize, hi: usize, n: usize },
}

fn h0_of<T: Scalar>(coeffs: &CoefficientSet<T>, priority: T, travel: T, visit: T) -> T {
    -coeffs.c_p * priority + coeffs.c_tt * travel + coeffs.c_vt * visit
}

/// Does the minimum-H0 feasible route set coincide with the maximum-priority
/// set? `energy_gap` is the minimum H0 outside the feasible optima minus the
/// feasible optima's minimum H0: positive iff the optima are the strict
/// route-level ground states.
#[derive(Clone, Debug)]
pub struct ConfirmationReport<T: Scalar = f64> {
    pub xi: usize,
    /// Feasible routes attaining the minimum H0 (1e-9 relative slack),
    /// paired with their H0, in enumeration order.
    pub min_energy_routes: Vec<(Route<T>, T)>,
    /// Exhaustive optima with their H0, sorted ascending by H0.
    pub max_priority_routes: Vec<(Route<T>, T)>,
    /// True iff every minimum-H0 feasible route attains the best priority
    /// (vacuously true when nothing is feasible).
    pub agrees: bool,
    pub energy_gap: Option<T>,
}

impl<T: Scalar> ConfirmationReport<T> {
    /// Human-readable summary ending in a machine-readable
    /// `agrees=<true|false>` line.
    pub fn to_text(&self, instance: &JspInstance<T>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ground-state confirmation at xi={}", self.xi);
        if self.min_energy_routes.is_empty() {
            let _ = writeln!(s, "no feasible routes");
        } else {
            let _ = writeln!(
                s,
                "minimum-H0 feasible routes ({} at H0={}):",
                self.min_energy_routes.len(),
                self.min_energy_routes[0].1
            );
            for (route, h0) in &self.min_energy_routes {
                let _ = writeln!(
                    s,
                    "  {}  p_tot={} t_tot={} h0={}",
                    route.label(instance),
                    route.p_tot,
                    route.t_tot,
                    h0
                );
            }
            let _ = writeln!(
                s,
                "maximum-priority feasible routes ({}):",
                self.max_priority_routes.len()
            );
            for (route, h0) in &self.max_priority_routes {
                let _ = writeln!(
                    s,
                    "  {}  p_tot={} t_tot={} h0={}",
                    route.label(instance),
                    route.p_tot,
                    route.t_tot,
                    h0
                );
            }
            if let Some(gap) = self.energy_gap {
                let _ = writeln!(s, "energy gap to best non-optimal route: {gap}");
            }
        }
        let _ = writeln!(s, "agrees={}", self.agrees);
        s
    }
}

/// Enumerates every xi-route, computes route-level H0, and checks that the
/// minimum-H0 feasible routes are exactly maximum-priority routes.
pub fn confirm_ground_state<T: Scalar>(
    instance: &JspInstance<T>,
    xi: usize,
    coeffs: &CoefficientSet<T>,
) -> Result<ConfirmationReport<T>, AnalysisError> {
    let exhaustive = exhaustive_search(instance, xi)?;
    let n = instance.num_places();
    let t_max = instance.t_max();
    let best_p = exhaustive.best_priority;
    let tol_for = |m: T| real::<T>(1e-9) * m.abs().max(T::one());

    // Pass 1: the three reference minima.
    let mut min_feasible: Option<T> = None;
    let mut min_optimal: Option<T> = None;
    let mut min_other: Option<T> = None;
    for first in 0..n {
        classical::visit_routes_from(n, xi, first, &mut |places| {
            let (p, travel, visit) = classical::totals_split(instance, places);
            let h = h0_of(coeffs, p, travel, visit);
            let feasible = travel + visit <= t_max;
            let fold = |slot: &mut Option<T>| {
                if slot.is_none_or(|m| h < m) {
                    *slot = Some(h);
                }
            };
            if feasible {
                fold(&mut min_feasible);
            }
            if feasible && Some(p) == best_p {
                fold(&mut min_optimal);
            } else {
                fold(&mut min_other);
            }
        });
    }

    // Pass 2: collect the minimum-H0 feasible routes.
    let mut min_energy_routes: Vec<(Route<T>, T)> = Vec::new();
    if let Some(min) = min_feasible {
        let cutoff = min + tol_for(min);
        for first in 0..n {
            classical::visit_routes_from(n, xi, first, &mut |places| {
                let (p, travel, visit) = classical::totals_split(instance, places);
                let t = travel + visit;
                if t > t_max {
                    return;
                }
                let h = h0_of(coeffs, p, travel, visit);
                if h <= cutoff {
                    min_energy_routes.push((
                        Route {
                            places: places.to_vec(),
                            p_tot: p,
                            t_tot: t,
                        },
                        h,
                    ));
                }
            });
        }
    }

    let mut max_priority_routes: Vec<(Route<T>, T)> = exhaustive
        .optima
        .into_iter()
        .map(|route| {
            let (p, travel, visit) = classical::totals_split(instance, &route.places);
            debug_assert_eq!(p, route.p_tot);
            let h = h0_of(coeffs, p, travel, visit);
            (route, h)
        })
        .collect();
    max_priority_routes.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .expect("finite energies")
            .then_with(|| a.0.places.cmp(&b.0.places))
    });

    let agrees = min_energy_routes
        .iter()
        .all(|(route, _)| Some(route.p_tot) == best_p);
    let energy_gap = match (min_other, min_optimal) {
        (Some(other), Some(optimal)) => Some(other - optimal),
        _ => None,
    };
    Ok(ConfirmationReport {
        xi,
        min_energy_routes,
        max_priority_routes,
        agrees,
        energy_gap,
    })
}

/// One (p_tot, t_tot, H0) point per route, plus the reference lines of the
/// priority-versus-time picture.
#[derive(Clone, Debug)]
pub struct ScatterData<T: Scalar = f64> {
    pub xi: usize,
    /// Points in lexicographic route order.
    pub points: Vec<(T, T, T)>,
    pub t_max: T,
    /// Slope of the H0 = 0 diagonal in (t, p) axes: c_tt/c_p, which is
    /// p_guess/t_max for derived coefficient sets (c_tt = c_vt).
    pub diagonal_slope: T,
}

impl<T: Scalar> ScatterData<T> {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# t_max {}", self.t_max);
        let _ = writeln!(out, "# diagonal_slope {}", self.diagonal_slope);
        out.push_str("p_tot,t_tot,h0\n");
        for &(p, t, h) in &self.points {
            let _ = writeln!(out, "{p},{t},{h}");
        }
        out
    }
}

/// Enumerates every xi-route into scatter points (no feasibility filter;
/// the t_max reference line is part of the output instead).
pub fn scatter_data<T: Scalar>(
    instance: &JspInstance<T>,
    xi: usize,
    coeffs: &CoefficientSet<T>,
) -> Result<ScatterData<T>, AnalysisError> {
    let n = instance.num_places();
    if xi < 1 || xi > n {
        return Err(ClassicalError::InvalidStepCount { xi, n }.into());
    }
    let mut points = Vec::new();
    for first in 0..n {
        classical::visit_routes_from(n, xi, first, &mut |places| {
            let (p, travel, visit) = classical::totals_split(instance, places);
            points.push((p, travel + visit, h0_of(coeffs, p, travel, visit)));
        });
    }
    Ok(ScatterData {
        xi,
        points,
        t_max: instance.t_max(),
        diagonal_slope: coeffs.c_tt / coeffs.c_p,
    })
}

/// Equal-width histogram; bins are right-open except the last, which is
/// closed so the maximum lands in-range.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram<T: Scalar = f64> {
    /// bins + 1 strictly increasing edges.
    pub edges: Vec<T>,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl<T: Scalar> Histogram<T> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count\n");
        for (i, &count) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", self.edges[i], self.edges[i + 1], count);
        }
        out
    }
}

/// Bins weighted values over [min, max]. A zero-width span falls back to a
/// unit-width bin; if the span is too small to split at this precision the
/// bin count collapses to one.
pub fn histogram<T: Scalar>(
    values: &[(T, u64)],
    bins: usize,
) -> Result<Histogram<T>, AnalysisError> {
    if bins == 0 {
        return Err(AnalysisError::ZeroBins);
    }
    if values.is_empty() {
        return Err(AnalysisError::EmptyHistogram);
    }
    let mut min = values[0].0;
    let mut max = values[0].0;
    for &(v, _) in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        max = min + T::one();
    }
    let span = max - min;
    let mut edges: Vec<T> = (0..=bins)
        .map(|k| min + span * real::<T>(k as f64 / bins as f64))
        .collect();
    edges[bins] = max;
    let strictly_increasing = edges.windows(2).all(|pair| pair[0] < pair[1]);
    let (edges, bins) = if strictly_increasing {
        (edges, bins)
    } else {
        (vec![min, max], 1)
    };

    let mut counts = vec![0u64; bins];
    let mut total = 0u64;
    let span_f = span.to_f64().expect("finite span");
    let min_f = min.to_f64().expect("finite min");
    for &(v, multiplicity) in values {
        let pos = ((v.to_f64().expect("finite value") - min_f) / span_f * bins as f64) as usize;
        counts[pos.min(bins - 1)] += multiplicity;
        total += multiplicity;
    }
    Ok(Histogram {
        edges,
        counts,
        total,
    })
}

/// Sampler used for each sweep leg; every leg re-seeds deterministically
/// from the sweep seed and its step count.
#[derive(Clone, Copy, Debug)]
pub enum SolverConfig {
    Uniform {
        reads: u64,
    },
    Anneal {
        reads: u64,
        sweeps: u32,
        hot_acceptance: f64,
        cold_factor: f64,
    },
}

impl SolverConfig {
    /// Annealing with default schedule parameters at the given read count.
    pub fn anneal_with_reads(reads: u64) -> Self {
        let defaults = AnnealParams::default();
        SolverConfig::Anneal {
            reads,
            sweeps: defaults.sweeps,
            hot_acceptance: defaults.hot_acceptance,
            cold_factor: defaults.cold_factor,
        }
    }
}

/// Coefficient-derivation inputs carried by sweep pipelines; `t_max` always
/// comes from the instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffInputs {
    pub c_p: f64,
    pub p_guess: f64,
    pub ops_multiplier: f64,
    pub oam_multiplier: f64,
}

impl Default for CoeffInputs {
    fn default() -> Self {
        CoeffInputs {
            c_p: DEFAULT_C_P,
            p_guess: DEFAULT_P_GUESS,
            ops_multiplier: DEFAULT_OPS_MULTIPLIER,
            oam_multiplier: DEFAULT_OAM_MULTIPLIER,
        }
    }
}

impl CoeffInputs {
    pub fn derive<T: Scalar>(
        &self,
        instance: &JspInstance<T>,
    ) -> Result<CoefficientSet<T>, ModelError> {
        derive_coefficients(
            real(self.c_p),
            real(self.p_guess),
            instance.t_max(),
            real(self.ops_multiplier),
            real(self.oam_multiplier),
        )
    }
}

/// Outcome of sampling one step count.
#[derive(Clone, Debug)]
pub struct XiOutcome<T: Scalar = f64> {
    pub xi: usize,
    pub reads: u64,
    /// Reads decoding to a well-formed route.
    pub valid: u64,
    /// Valid reads whose route fits the time budget.
    pub feasible: u64,
    pub best: Option<Route<T>>,
    /// Occurrences of the best route's encoding.
    pub best_occurrences: u64,
}

/// Sweep over an explicit step range.
#[derive(Clone, Debug)]
pub struct RangeSweep<T: Scalar = f64> {
    pub per_xi: Vec<XiOutcome<T>>,
    /// Best feasible decoded route across all legs, by (max p_tot, min
    /// t_tot, lexicographic places); None means no solution found.
    pub winner: Option<Route<T>>,
}

/// Sweep centered on the greedy guess: ξ from max(1, s_cl - delta) to
/// min(N, s_cl + delta).
#[derive(Clone, Debug)]
pub struct SweepResult<T: Scalar = f64> {
    pub s_cl: usize,
    pub delta: usize,
    pub per_xi: Vec<XiOutcome<T>>,
    pub winner: Option<Route<T>>,
}

const SWEEP_CSV_HEADER: &str =
    "xi,reads,valid,feasible,best_priority,best_t_tot,best_occurrences,best_route\n";

fn write_sweep_rows<T: Scalar>(
    per_xi: &[XiOutcome<T>],
    winner: &Option<Route<T>>,
    instance: &JspInstance<T>,
    out: &mut String,
) {
    for outcome in per_xi {
        let (p, t, label) = match &outcome.best {
            Some(route) => (
                route.p_tot.to_string(),
                route.t_tot.to_string(),
                route.label(instance),
            ),
            None => ("none".into(), "none".into(), "none".into()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            outcome.xi,
            outcome.reads,
            outcome.valid,
            outcome.feasible,
            p,
            t,
            outcome.best_occurrences,
            label
        );
    }
    let (p, t, label) = match winner {
        Some(route) => (
            route.p_tot.to_string(),
            route.t_tot.to_string(),
            route.label(instance),
        ),
        None => ("none".into(), "none".into(), "none".into()),
    };
    let _ = writeln!(out, "winner,,,,{p},{t},,{label}");
}

impl<T: Scalar> RangeSweep<T> {
    pub fn to_csv(&self, instance: &JspInstance<T>) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        write_sweep_rows(&self.per_xi, &self.winner, instance, &mut out);
        out
    }
}

impl<T: Scalar> SweepResult<T> {
    pub fn to_csv(&self, instance: &JspInstance<T>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# s_cl {}", self.s_cl);
        let _ = writeln!(out, "# delta {}", self.delta);
        out.push_str(SWEEP_CSV_HEADER);
        write_sweep_rows(&self.per_xi, &self.winner, instance, &mut out);
        out
    }
}

/// Samples each step count in [lo, hi], decodes every record, discards
/// malformed encodings and over-budget routes, and picks the winner. An
/// empty range (lo > hi) yields an empty result rather than an error.
pub fn sweep_range<T: Scalar>(
    instance: &JspInstance<T>,
    lo: usize,
    hi: usize,
    solver: &SolverConfig,
    inputs: &CoeffInputs,
    seed: u64,
) -> Result<RangeSweep<T>, AnalysisError> {
    if lo > hi {
        return Ok(RangeSweep {
            per_xi: Vec::new(),
            winner: None,
        });
    }
    let n = instance.num_places();
    if lo < 1 || hi > n {
        return Err(AnalysisError::InvalidRange { lo, hi, n });
    }
    let t_max = instance.t_max();
    let coeffs = inputs.derive(instance)?;
    let mut per_xi = Vec::with_capacity(hi - lo + 1);
    for xi in lo..=hi {
        let model = build_qubo(instance, xi, &coeffs)?;
        let leg_seed = seed::derive(seed, xi as u64);
        let samples = match *solver {
            SolverConfig::Uniform { reads } => sample_uniform(&model, reads, leg_seed)?,
            SolverConfig::Anneal {
                reads,
                sweeps,
                hot_acceptance,
                cold_factor,
            } => simulated_anneal(
                &model,
                &AnnealParams {
                    reads,
                    sweeps,
                    hot_acceptance,
                    cold_factor,
                    seed: leg_seed,
                },
            )?,
        };
        per_xi.push(decode_leg(instance, &samples, xi, t_max));
    }
    let mut winner: Option<Route<T>> = None;
    for outcome in &per_xi {
        if let Some(candidate) = &outcome.best {
            let better = winner
                .as_ref()
                .is_none_or(|w| rank_routes(candidate, w) == Ordering::Less);
            if better {
                winner = Some(candidate.clone());
            }
        }
    }
    Ok(RangeSweep { per_xi, winner })
}

fn decode_leg<T: Scalar>(
    instance: &JspInstance<T>,
    samples: &SampleSet<T>,
    xi: usize,
    t_max: T,
) -> XiOutcome<T> {
    let n = instance.num_places();
    let mut valid = 0u64;
    let mut feasible = 0u64;
    let mut best: Option<Route<T>> = None;
    let mut best_occurrences = 0u64;
    for record in &samples.records {
        let decoded = decode(&record.bits, n, xi);
        let Some(places) = decoded.route else {
            continue;
        };
        valid += record.occurrences;
        let (p, t) = classical::totals(instance, &places);
        if t <= t_max {
            feasible += record.occurrences;
            let candidate = Route {
                places,
                p_tot: p,
                t_tot: t,
            };
            let better = best
                .as_ref()
                .is_none_or(|cur| rank_routes(&candidate, cur) == Ordering::Less);
            if better {
                best = Some(candidate);
                best_occurrences = record.occurrences;
            }
        }
    }
    XiOutcome {
        xi,
        reads: samples.total_reads,
        valid,
        feasible,
        best,
        best_occurrences,
    }
}

/// Full pipeline: greedy guess for s_cl, then [`sweep_range`] over the
/// clipped window around it.
pub fn sweep<T: Scalar>(
    instance: &JspInstance<T>,
    delta: usize,
    solver: &SolverConfig,
    inputs: &CoeffInputs,
    seed: u64,
) -> Result<SweepResult<T>, AnalysisError> {
    let s_cl = greedy_guess(instance).places.len();
    let n = instance.num_places();
    let lo = s_cl.saturating_sub(delta).max(1);
    let hi = (s_cl + delta).min(n);
    let range = sweep_range(instance, lo, hi, solver, inputs, seed)?;
    Ok(SweepResult {
        s_cl,
        delta,
        per_xi: range.per_xi,
        winner: range.winner,
    })
}

/// Partition of a sample set by constraint-violation class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ViolationBreakdown {
    pub valid: u64,
    pub ops_only: u64,
    pub oam_only: u64,
    pub both: u64,
}

impl ViolationBreakdown {
    pub fn total(&self) -> u64 {
        self.valid + self.ops_only + self.oam_only + self.both
    }
}

/// Decodes every record of a sample set drawn from an (n, xi) route model.
/// The set's variable count must equal n * xi.
pub fn violation_breakdown<T: Scalar>(
    samples: &SampleSet<T>,
    n: usize,
    xi: usize,
) -> ViolationBreakdown {
    assert_eq!(
        samples.num_vars,
        n * xi,
        "sample set has {} variables, expected n*xi = {}",
        samples.num_vars,
        n * xi
    );
    let mut breakdown = ViolationBreakdown::default();
    for record in &samples.records {
        let decoded = decode(&record.bits, n, xi);
        let slot = match (decoded.step_violations > 0, decoded.place_violations > 0) {
            (false, false) => &mut breakdown.valid,
            (true, false) => &mut breakdown.ops_only,
            (false, true) => &mut breakdown.oam_only,
            (true, true) => &mut breakdown.both,
        };
        *slot += record.occurrences;
    }
    breakdown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::qubo::encode_route;
    use crate::sampler::SampleRecord;

    #[test]
    fn histogram_matches_worked_example() {
        let values = [(0.0, 1), (0.0, 1), (1.0, 1), (1.0, 1)];
        let hist: Histogram = histogram(&values, 2).unwrap();
        assert_eq!(hist.counts, vec![2, 2]);
        assert_eq!(hist.edges, vec![0.0, 0.5, 1.0]);
        assert_eq!(hist.total, 4);
    }

    #[test]
    fn histogram_is_permutation_invariant() {
        let forward = [(1.0, 2), (3.5, 1), (2.0, 4), (9.0, 1)];
        let mut backward = forward;
        backward.reverse();
        let a: Histogram = histogram(&forward, 4).unwrap();
        let b: Histogram = histogram(&backward, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn histogram_handles_degenerate_span() {
        let hist: Histogram = histogram(&[(2.0, 3)], 4).unwrap();
        assert_eq!(hist.counts.iter().sum::<u64>(), 3);
        assert_eq!(hist.edges.first(), Some(&2.0));
        assert_eq!(hist.edges.last(), Some(&3.0));
    }

    #[test]
    fn histogram_rejects_bad_input() {
        assert!(matches!(
            histogram::<f64>(&[], 3),
            Err(AnalysisError::EmptyHistogram)
        ));
        assert!(matches!(
            histogram(&[(1.0, 1)], 0),
            Err(AnalysisError::ZeroBins)
        ));
    }

    #[test]
    fn breakdown_classifies_hand_built_records() {
        let instance = fixtures::middle_earth::<f64>();
        let coeffs = CoefficientSet::default_for(&instance);
        let model = build_qubo(&instance, 3, &coeffs).unwrap();
        let valid_bits = encode_route(&[0, 1, 2], 9, 3).unwrap();
        let zeros = crate::qubo::BitString::zeros(27);
        let samples = SampleSet {
            records: vec![
                SampleRecord {
                    energy: model.energy(&valid_bits).unwrap(),
                    bits: valid_bits,
                    occurrences: 4,
                },
                SampleRecord {
                    energy: model.energy(&zeros).unwrap(),
                    bits: zeros,
                    occurrences: 3,
                },
            ],
            num_vars: 27,
            total_reads: 7,
            sampler_label: "test".into(),
            seed: 0,
        };
        let breakdown = violation_breakdown(&samples, 9, 3);
        assert_eq!(breakdown.valid, 4);
        assert_eq!(breakdown.ops_only, 3);
        assert_eq!(breakdown.oam_only, 0);
        assert_eq!(breakdown.both, 0);
        assert_eq!(breakdown.total(), 7);
    }

    #[test]
    fn uniform_sweep_with_few_reads_finds_nothing() {
        // Valid encodings are ~6e4 of 2^54 states; ten uniform reads cannot
        // realistically hit one, and with this seed they do not.
        let instance = fixtures::middle_earth::<f64>();
        let result = sweep_range(
            &instance,
            6,
            6,
            &SolverConfig::Uniform { reads: 10 },
            &CoeffInputs::default(),
            1,
        )
        .unwrap();
        assert!(result.winner.is_none());
        assert_eq!(result.per_xi[0].valid, 0);
    }

    #[test]
    fn empty_window_yields_empty_result() {
        let instance = fixtures::middle_earth::<f64>();
        let result = sweep_range(
            &instance,
            3,
            2,
            &SolverConfig::Uniform { reads: 5 },
            &CoeffInputs::default(),
            1,
        )
        .unwrap();
        assert!(result.per_xi.is_empty());
        assert!(result.winner.is_none());
    }

    #[test]
    fn out_of_bounds_range_is_rejected() {
        let instance = fixtures::middle_earth::<f64>();
        let result = sweep_range(
            &instance,
            1,
            10,
            &SolverConfig::Uniform { reads: 5 },
            &CoeffInputs::default(),
            1,
        );
        assert!(matches!(
            result,
            Err(AnalysisError::InvalidRange { lo: 1, hi: 10, n: 9 })
        ));
    }
}
