//! Classical baselines: exhaustive enumeration over ordered xi-subsets,
//! uniform random-route search, the counting formulas behind both, and the
//! greedy insertion guess that seeds the step-count sweep.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::model::JspInstance;
use crate::seed::stream_rng;
use crate::Scalar;

/// Ordered visit of distinct places with its derived totals. Home is
/// implicit at both ends; `t_tot` counts travel plus visit days.
#[derive(Clone, Debug, PartialEq)]
pub struct Route<T: Scalar = f64> {
    pub places: Vec<usize>,
    pub p_tot: T,
    pub t_tot: T,
}

impl<T: Scalar> Route<T> {
    /// Place ids joined with '>' in visit order.
    pub fn label(&self, instance: &JspInstance<T>) -> String {
        self.places
            .iter()
            .map(|&i| instance.place(i).id.as_str())
            .collect::<Vec<_>>()
            .join(">")
    }
}

/// Result of enumerating every route at one step count.
#[derive(Clone, Debug)]
pub struct ExhaustiveReport<T: Scalar = f64> {
    pub xi: usize,
    /// None when no route fits the time budget.
    pub best_priority: Option<T>,
    /// Every feasible route attaining `best_priority`, in enumeration order.
    pub optima: Vec<Route<T>>,
    pub routes_checked: u128,
    pub runtime_s: f64,
}

impl<T: Scalar> ExhaustiveReport<T> {
    pub fn optima_count(&self) -> usize {
        self.optima.len()
    }

    pub fn to_csv(&self, instance: &JspInstance<T>) -> String {
        let mut out = String::from(CSV_EXHAUSTIVE_HEADER);
        self.write_csv_body(instance, &mut out);
        out
    }

    fn write_csv_body(&self, instance: &JspInstance<T>, out: &mut String) {
        let best = match self.best_priority {
            Some(p) => p.to_string(),
            None => "none".to_string(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6}",
            self.xi,
            best,
            self.optima.len(),
            self.routes_checked,
            self.runtime_s
        );
        for route in &self.optima {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                self.xi,
                route.p_tot,
                route.t_tot,
                route.label(instance)
            );
        }
    }
}

const CSV_EXHAUSTIVE_HEADER: &str = "xi,best_priority,optima_count,routes_checked,runtime_s\n";

/// One CSV with a summary row per report, each followed by its optima rows
/// (`xi,p_tot,t_tot,place1>place2>...`).
pub fn exhaustive_csv<T: Scalar>(
    reports: &[ExhaustiveReport<T>],
    instance: &JspInstance<T>,
) -> String {
    let mut out = String::from(CSV_EXHAUSTIVE_HEADER);
    for report in reports {
        report.write_csv_body(instance, &mut out);
    }
    out
}

/// Result of sampling routes uniformly and counting optimal hits.
#[derive(Clone, Debug)]
pub struct RandomReport<T: Scalar = f64> {
    pub xi: usize,
    pub reads: u64,
    /// Draws that were feasible and attained the exhaustive optimum.
    pub found_optimal: u64,
    /// Expected hit count r * n_o / f(xi) for this instance.
    pub expected: f64,
    pub best_found: Option<Route<T>>,
    pub seed: u64,
}

impl<T: Scalar> RandomReport<T> {
    pub fn to_csv(&self, instance: &JspInstance<T>) -> String {
        let mut out = String::from(CSV_RANDOM_HEADER);
        self.write_csv_body(instance, &mut out);
        out
    }

    fn write_csv_body(&self, instance: &JspInstance<T>, out: &mut String) {
        let (best_p, best_t, label) = match &self.best_found {
            Some(route) => (
                route.p_tot.to_string(),
                route.t_tot.to_string(),
                route.label(instance),
            ),
            None => ("none".to_string(), "none".to_string(), "none".to_string()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.xi, self.reads, self.found_optimal, self.expected, best_p, best_t, label, self.seed
        );
    }
}

const CSV_RANDOM_HEADER: &str =
    "xi,reads,found_optimal,expected,best_priority,best_t_tot,best_route,seed\n";

/// One CSV row per report under a single header.
pub fn random_csv<T: Scalar>(reports: &[RandomReport<T>], instance: &JspInstance<T>) -> String {
    let mut out = String::from(CSV_RANDOM_HEADER);
    for report in reports {
        report.write_csv_body(instance, &mut out);
    }
    out
}

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("xi = {xi} exceeds the number of places n = {n}")]
    StepsExceedPlaces { xi: usize, n: usize },
    #[error("route count n!/(n-xi)! overflows for n = {n}, xi = {xi}")]
    CountOverflow { n: usize, xi: usize },
    #[error("invalid step count: xi = {xi} must satisfy 1 <= xi <= {n}")]
    InvalidStepCount { xi: usize, n: usize },
    #[error("place {place} repeats in route")]
    DuplicatePlace { place: usize },
    #[error("place {place} out of range for {n} places")]
    PlaceOutOfRange { place: usize, n: usize },
    #[error("route must be nonempty")]
    EmptyRoute,
    #[error("reads must be >= 1")]
    NoReads,
}

/// Priority, travel-day and visit-day totals for a route known to be
/// distinct and in range. Leagues are summed before the single division by
/// speed, so the result does not depend on how legs group.
pub(crate) fn totals_split<T: Scalar>(
    instance: &JspInstance<T>,
    places: &[usize],
) -> (T, T, T) {
    let mut leagues = instance.dist_home(places[0]);
    for leg in places.windows(2) {
        leagues += instance.dist_between(leg[0], leg[1]);
    }
    leagues += instance.dist_home(*places.last().expect("nonempty"));
    let mut priority = T::zero();
    let mut visit = T::zero();
    for &i in places {
        priority += instance.place(i).priority;
        visit += instance.place(i).visit_days;
    }
    (priority, instance.travel_days(leagues), visit)
}

/// Priority and total-day figures for a route known to be distinct and in
/// range.
pub(crate) fn totals<T: Scalar>(instance: &JspInstance<T>, places: &[usize]) -> (T, T) {
    let (priority, travel, visit) = totals_split(instance, places);
    (priority, travel + visit)
}

/// Validates the place sequence and computes its totals.
pub fn route_stats<T: Scalar>(
    instance: &JspInstance<T>,
    places: &[usize],
) -> Result<Route<T>, ClassicalError> {
    if places.is_empty() {
        return Err(ClassicalError::EmptyRoute);
    }
    let n = instance.num_places();
    let mut seen = vec![false; n];
    for &i in places {
        if i >= n {
            return Err(ClassicalError::PlaceOutOfRange { place: i, n });
        }
        if seen[i] {
            return Err(ClassicalError::DuplicatePlace { place: i });
        }
        seen[i] = true;
    }
    let (p_tot, t_tot) = totals(instance, places);
    Ok(Route {
        places: places.to_vec(),
        p_tot,
        t_tot,
    })
}

/// Exact number of ordered xi-subsets of n places: n!/(n-xi)!.
pub fn count_routes(n: usize, xi: usize) -> Result<u128, ClassicalError> {
    if xi > n {
        return Err(ClassicalError::StepsExceedPlaces { xi, n });
    }
    let mut f: u128 = 1;
    for k in (n - xi + 1)..=n {
        f = f
            .checked_mul(k as u128)
            .ok_or(ClassicalError::CountOverflow { n, xi })?;
    }
    Ok(f)
}

/// Expected optimal hits when drawing `reads` routes uniformly from the
/// f(xi) possibilities: reads * optima / f(xi).
pub fn expected_hits(reads: u64, optima: u64, n: usize, xi: usize) -> Result<f64, ClassicalError> {
    let f = count_routes(n, xi)?;
    Ok(reads as f64 * optima as f64 / f as f64)
}

/// Calls `f` with every ordered xi-subset starting at `first`, in
/// lexicographic order. Partitioning by first place lets callers fan the
/// full enumeration across workers and merge partials in place order.
pub(crate) fn visit_routes_from<F: FnMut(&[usize])>(n: usize, xi: usize, first: usize, f: &mut F) {
    fn extend<F: FnMut(&[usize])>(
        n: usize,
        xi: usize,
        route: &mut Vec<usize>,
        used: &mut [bool],
        f: &mut F,
    ) {
        if route.len() == xi {
            f(route);
            return;
        }
        for next in 0..n {
            if !used[next] {
                used[next] = true;
                route.push(next);
                extend(n, xi, route, used, f);
                route.pop();
                used[next] = false;
            }
        }
    }
    let mut route = Vec::with_capacity(xi);
    let mut used = vec![false; n];
    route.push(first);
    used[first] = true;
    extend(n, xi, &mut route, &mut used, f);
}

/// Enumerates all f(xi) routes, filters by the time budget, and reports the
/// maximum-priority survivors. Partitioned by first place across workers;
/// the merged result is identical for any worker count.
pub fn exhaustive_search<T: Scalar>(
    instance: &JspInstance<T>,
    xi: usize,
) -> Result<ExhaustiveReport<T>, ClassicalError> {
    let n = instance.num_places();
    if xi < 1 || xi > n {
        return Err(ClassicalError::InvalidStepCount { xi, n });
    }
    let start = Instant::now();
    let t_max = instance.t_max();

    struct Partial<T: Scalar> {
        best: Option<T>,
        optima: Vec<Route<T>>,
        checked: u128,
    }

    let partials: Vec<Partial<T>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<T> = None;
            let mut optima: Vec<Route<T>> = Vec::new();
            let mut checked: u128 = 0;
            visit_routes_from(n, xi, first, &mut |places| {
                checked += 1;
                let (p, t) = totals(instance, places);
                if t <= t_max {
                    match best {
                        Some(b) if p < b => {}
                        Some(b) if p == b => optima.push(Route {
                            places: places.to_vec(),
                            p_tot: p,
                            t_tot: t,
                        }),
                        _ => {
                            best = Some(p);
                            optima.clear();
                            optima.push(Route {
                                places: places.to_vec(),
                                p_tot: p,
                                t_tot: t,
                            });
                        }
                    }
                }
            });
            Partial {
                best,
                optima,
                checked,
            }
        })
        .collect();

    let mut best: Option<T> = None;
    for partial in &partials {
        if let Some(b) = partial.best {
            if best.is_none_or(|g| b > g) {
                best = Some(b);
            }
        }
    }
    let mut optima = Vec::new();
    let mut checked: u128 = 0;
    for partial in partials {
        checked += partial.checked;
        if partial.best == best && best.is_some() {
            optima.extend(partial.optima);
        }
    }
    Ok(ExhaustiveReport {
        xi,
        best_priority: best,
        optima,
        routes_checked: checked,
        runtime_s: start.elapsed().as_secs_f64(),
    })
}

/// Preference order for winner selection: higher priority, then lower time,
/// then lexicographically smaller place sequence. `Less` means preferred.
pub(crate) fn rank_routes<T: Scalar>(a: &Route<T>, b: &Route<T>) -> Ordering {
    b.p_tot
        .partial_cmp(&a.p_tot)
        .expect("finite priorities")
        .then(
            a.t_tot
                .partial_cmp(&b.t_tot)
                .expect("finite times"),
        )
        .then_with(|| a.places.cmp(&b.places))
}

/// Draws `reads` routes uniformly (with replacement) from the f(xi)
/// possibilities via Fisher-Yates prefixes, counts how many feasible draws
/// attain the exhaustive optimum, and keeps the best feasible draw. Read `j`
/// uses RNG stream `(seed, j)`, so results do not depend on worker count.
pub fn random_sample_search<T: Scalar>(
    instance: &JspInstance<T>,
    xi: usize,
    reads: u64,
    seed: u64,
) -> Result<RandomReport<T>, ClassicalError> {
    if reads < 1 {
        return Err(ClassicalError::NoReads);
    }
    let n = instance.num_places();
    let exhaustive = exhaustive_search(instance, xi)?;
    let expected = expected_hits(reads, exhaustive.optima.len() as u64, n, xi)?;
    let target = exhaustive.best_priority;
    let t_max = instance.t_max();

    let draws: Vec<(bool, Option<Route<T>>)> = (0..reads)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(seed, j);
            let mut idx: Vec<usize> = (0..n).collect();
            for k in 0..xi {
                let pick = rng.random_range(k..n);
                idx.swap(k, pick);
            }
            let places = &idx[..xi];
            let (p, t) = totals(instance, places);
            if t <= t_max {
                let hit = target == Some(p);
                (
                    hit,
                    Some(Route {
                        places: places.to_vec(),
                        p_tot: p,
                        t_tot: t,
                    }),
                )
            } else {
                (false, None)
            }
        })
        .collect();

    let mut found = 0u64;
    let mut best: Option<Route<T>> = None;
    for (hit, candidate) in draws {
        if hit {
            found += 1;
        }
        if let Some(route) = candidate {
            best = Some(match best {
                None => route,
                Some(current) => {
                    if rank_routes(&route, &current) == Ordering::Less {
                        route
                    } else {
                        current
                    }
                }
            });
        }
    }
    Ok(RandomReport {
        xi,
        reads,
        found_optimal: found,
        expected,
        best_found: best,
        seed,
    })
}

/// Feasible route built by repeated best insertion, maximizing priority
/// gained per day added; stops when no insertion stays within the budget.
/// Its length supplies the sweep center s_cl. Deterministic: ties keep the
/// first candidate in (place, position) order.
pub fn greedy_guess<T: Scalar>(instance: &JspInstance<T>) -> Route<T> {
    let n = instance.num_places();
    let t_max = instance.t_max();
    let mut current: Vec<usize> = Vec::new();
    let mut in_route = vec![false; n];
    let mut current_t = T::zero();

    loop {
        let mut best: Option<(T, usize, usize, T)> = None; // (score, place, position, new_t)
        for (q, _) in in_route.iter().enumerate().filter(|&(_, &used)| !used) {
            for pos in 0..=current.len() {
                let prev = if pos == 0 { 0 } else { current[pos - 1] + 1 };
                let next = if pos == current.len() { 0 } else { current[pos] + 1 };
                let delta_leagues = instance.distance(prev, q + 1) + instance.distance(q + 1, next)
                    - instance.distance(prev, next);
                let delta_t =
                    instance.travel_days(delta_leagues) + instance.place(q).visit_days;
                let new_t = current_t + delta_t;
                if new_t > t_max {
                    continue;
                }
                let score = instance.place(q).priority / delta_t;
                if best.is_none_or(|(s, _, _, _)| score > s) {
                    best = Some((score, q, pos, new_t));
                }
            }
        }
        match best {
            Some((_, q, pos, new_t)) => {
                current.insert(pos, q);
                in_route[q] = true;
                current_t = new_t;
            }
            None => break,
        }
    }

    if current.is_empty() {
        Route {
            places: Vec::new(),
            p_tot: T::zero(),
            t_tot: T::zero(),
        }
    } else {
        let (p_tot, t_tot) = totals(instance, &current);
        Route {
            places: current,
            p_tot,
            t_tot,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn count_matches_worked_examples() {
        assert_eq!(count_routes(9, 6).unwrap(), 60480);
        assert_eq!(count_routes(9, 0).unwrap(), 1);
        assert_eq!(count_routes(9, 4).unwrap(), 3024);
        assert!(matches!(
            count_routes(3, 4),
            Err(ClassicalError::StepsExceedPlaces { xi: 4, n: 3 })
        ));
        assert!(matches!(
            count_routes(60, 40),
            Err(ClassicalError::CountOverflow { .. })
        ));
    }

    #[test]
    fn expected_hits_matches_worked_examples() {
        assert!((expected_hits(10_000, 8, 9, 4).unwrap() - 26.455).abs() < 5e-4);
        assert!((expected_hits(10_000, 12, 9, 6).unwrap() - 1.984).abs() < 5e-4);
        assert_eq!(expected_hits(10_000, 0, 9, 8).unwrap(), 0.0);
    }

    #[test]
    fn route_stats_matches_worked_examples() {
        let instance: crate::JspInstance = fixtures::middle_earth();
        // Lorien, Pelargir, Minas_Tirith, Edoras, Isengard.
        let route = route_stats(&instance, &[3, 5, 4, 1, 2]).unwrap();
        assert_eq!(route.p_tot, 480.0);
        // Bree, Lorien, Minas_Tirith, Pelargir, Edoras.
        let route = route_stats(&instance, &[0, 3, 4, 5, 1]).unwrap();
        assert_eq!(route.p_tot, 460.0);
        assert!((route.t_tot - 97.3125).abs() < 1e-12);
        // Tharbad alone: (90+90)/9.6 + 2.
        let route = route_stats(&instance, &[7]).unwrap();
        assert_eq!(route.p_tot, 5.0);
        assert!((route.t_tot - 20.75).abs() < 1e-12);
    }

    #[test]
    fn route_stats_rejects_bad_input() {
        let instance: crate::JspInstance = fixtures::middle_earth();
        assert!(matches!(
            route_stats(&instance, &[]),
            Err(ClassicalError::EmptyRoute)
        ));
        assert!(matches!(
            route_stats(&instance, &[1, 1]),
            Err(ClassicalError::DuplicatePlace { place: 1 })
        ));
        assert!(matches!(
            route_stats(&instance, &[9]),
            Err(ClassicalError::PlaceOutOfRange { place: 9, n: 9 })
        ));
    }

    #[test]
    fn exhaustive_rejects_bad_step_counts() {
        let instance: crate::JspInstance = fixtures::middle_earth();
        assert!(matches!(
            exhaustive_search(&instance, 0),
            Err(ClassicalError::InvalidStepCount { xi: 0, n: 9 })
        ));
        assert!(matches!(
            exhaustive_search(&instance, 10),
            Err(ClassicalError::InvalidStepCount { xi: 10, n: 9 })
        ));
    }

    #[test]
    fn rank_prefers_priority_then_time_then_label() {
        let hi = Route { places: vec![2], p_tot: 10.0, t_tot: 5.0 };
        let lo = Route { places: vec![1], p_tot: 8.0, t_tot: 1.0 };
        assert_eq!(rank_routes(&hi, &lo), Ordering::Less);
        let fast = Route { places: vec![2], p_tot: 10.0, t_tot: 4.0 };
        assert_eq!(rank_routes(&fast, &hi), Ordering::Less);
        let lex = Route { places: vec![1, 2], p_tot: 10.0, t_tot: 4.0 };
        let lex2 = Route { places: vec![2, 1], p_tot: 10.0, t_tot: 4.0 };
        assert_eq!(rank_routes(&lex, &lex2), Ordering::Less);
    }
}
