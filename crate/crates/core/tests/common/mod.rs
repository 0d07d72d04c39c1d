//! Shared helpers for the integration suites.
//!
//! `hamiltonian_by_terms` and `penalty_terms` evaluate the objective straight
//! from its closed-form sums, independently of the coefficient-table builder,
//! so table bugs cannot hide behind a matching implementation.

#![allow(dead_code)]

use jsp_core::{BitString, CoefficientSet, JspInstance, Place};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture() -> JspInstance {
    jsp_core::fixtures::middle_earth::<f64>()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Sum of the cost and both penalty terms, computed from the per-step and
/// per-place counting sums rather than from any coefficient table.
pub fn hamiltonian_by_terms(
    instance: &JspInstance,
    coeffs: &CoefficientSet<f64>,
    xi: usize,
    bits: &BitString,
) -> f64 {
    let n = instance.num_places();
    assert_eq!(bits.len(), n * xi);
    let x = |place: usize, step: usize| bits.get(step * n + place);

    let mut cost = 0.0;
    for s in 0..xi {
        for i in 0..n {
            if !x(i, s) {
                continue;
            }
            let place = instance.place(i);
            cost += -coeffs.c_p * place.priority + coeffs.c_vt * place.visit_days;
            if s == 0 {
                cost += coeffs.c_tt * instance.travel_days(instance.dist_home(i));
            }
            if s == xi - 1 {
                cost += coeffs.c_tt * instance.travel_days(instance.dist_home(i));
            }
        }
    }
    for s in 0..xi.saturating_sub(1) {
        for i in 0..n {
            for j in 0..n {
                if i != j && x(i, s) && x(j, s + 1) {
                    cost += coeffs.c_tt * instance.travel_days(instance.dist_between(i, j));
                }
            }
        }
    }

    let (ops, oam) = penalty_terms(bits, n, xi, coeffs.lambda_ops, coeffs.lambda_oam);
    cost + ops + oam
}

/// The two penalty sums: `lambda_ops * sum_s (z_s - 1)^2` over per-step bit
/// counts and `lambda_oam * sum_i (y_i - 1/2)^2` over per-place bit counts.
pub fn penalty_terms(
    bits: &BitString,
    n: usize,
    xi: usize,
    lambda_ops: f64,
    lambda_oam: f64,
) -> (f64, f64) {
    assert_eq!(bits.len(), n * xi);
    let mut ops = 0.0;
    for s in 0..xi {
        let z = (0..n).filter(|&i| bits.get(s * n + i)).count() as f64;
        ops += lambda_ops * (z - 1.0) * (z - 1.0);
    }
    let mut oam = 0.0;
    for i in 0..n {
        let y = (0..xi).filter(|&s| bits.get(s * n + i)).count() as f64;
        oam += lambda_oam * (y - 0.5) * (y - 0.5);
    }
    (ops, oam)
}

/// Random valid instance: `n` places, symmetric positive distances, generous
/// day budget so a mix of feasible and infeasible routes exists.
pub fn random_instance(seed: u64, n: usize) -> JspInstance {
    let mut rng = StdRng::seed_from_u64(seed);
    let places: Vec<Place<f64>> = (0..n)
        .map(|i| Place {
            id: format!("p{i}"),
            priority: f64::from(rng.random_range(1..=40)) * 5.0,
            visit_days: f64::from(rng.random_range(1..=7)),
        })
        .collect();
    let nodes = n + 1;
    let mut distances = vec![vec![0.0; nodes]; nodes];
    // Symmetric fill writes both orientations, so plain indices it is.
    #[allow(clippy::needless_range_loop)]
    for a in 0..nodes {
        for b in (a + 1)..nodes {
            let d = f64::from(rng.random_range(20..=400));
            distances[a][b] = d;
            distances[b][a] = d;
        }
    }
    JspInstance::new(
        format!("random-{seed}"),
        "home",
        places,
        distances,
        120.0,
        9.6,
    )
    .expect("generated instance is valid")
}

/// Uniformly random bitstring of the given length.
pub fn random_bits(rng: &mut StdRng, len: usize) -> BitString {
    BitString::new((0..len).map(|_| rng.random::<bool>()).collect())
}

/// Route totals (priority, travel days, visit days) summed directly from
/// the instance tables.
pub fn totals(instance: &JspInstance, route: &[usize]) -> (f64, f64, f64) {
    assert!(!route.is_empty());
    let mut leagues = instance.dist_home(route[0]) + instance.dist_home(route[route.len() - 1]);
    for w in route.windows(2) {
        leagues += instance.dist_between(w[0], w[1]);
    }
    let priority: f64 = route.iter().map(|&i| instance.place(i).priority).sum();
    let visit: f64 = route.iter().map(|&i| instance.place(i).visit_days).sum();
    (priority, instance.travel_days(leagues), visit)
}

/// Calls `f` with every ordered route of `xi` distinct places out of `n`.
/// Deliberately not the library's enumerator.
pub fn for_each_route(n: usize, xi: usize, f: &mut impl FnMut(&[usize])) {
    let mut route = Vec::with_capacity(xi);
    let mut used = vec![false; n];
    walk(n, xi, &mut route, &mut used, f);
}

fn walk(
    n: usize,
    xi: usize,
    route: &mut Vec<usize>,
    used: &mut [bool],
    f: &mut impl FnMut(&[usize]),
) {
    if route.len() == xi {
        f(route);
        return;
    }
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        route.push(i);
        walk(n, xi, route, used, f);
        route.pop();
        used[i] = false;
    }
}
