//! QUBO lowering: N*xi binary variables x[i,s] ("place i visited at step s"),
//! a sparse upper-triangular coefficient table, energy evaluation, and
//! decoding of bitstrings back into routes.
//!
//! The full energy splits as H = H0 + HR. H0 is the route objective
//! (-priority + travel days + visit days); HR penalizes broken constraints:
//! (sum_i x[i,s] - 1)^2 per step and (sum_s x[i,s] - 1/2)^2 per place. The
//! quadratic expansion of those squares is what `build_qubo` stores; their
//! constant parts land in the model offset, so reported energies equal the
//! full Hamiltonian.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::model::{CoefficientSet, JspInstance};
use crate::{real, Scalar};

/// Variable identity: place `i` visited at step `s`, flattened step-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarIndex {
    pub place: usize,
    pub step: usize,
}

impl VarIndex {
    /// Flat index `s * n + i`; fixed so exports are reproducible.
    pub fn flat(self, n: usize) -> usize {
        self.step * n + self.place
    }

    pub fn from_flat(v: usize, n: usize) -> Self {
        VarIndex {
            place: v % n,
            step: v / n,
        }
    }
}

/// Bit vector of length `num_vars`; index 0 is the leftmost character in the
/// text form. Ordering is lexicographic, used for canonical report sorting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    /// Parses a 0/1 text string.
    pub fn from_01(text: &str) -> Result<Self, QuboError> {
        text.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(QuboError::BadBitChar { ch: other }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.0 {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Route-shape metadata for models built from an instance; absent on
/// imported or synthetic models.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteEncoding<T: Scalar = f64> {
    pub n: usize,
    pub xi: usize,
    pub coeffs: CoefficientSet<T>,
}

/// Sparse quadratic form: `energy(x) = offset + sum Q[a,b] * x_a * x_b` over
/// stored keys with `a <= b`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct QuboModel<T: Scalar = f64> {
    num_vars: usize,
    coefficients: BTreeMap<(usize, usize), T>,
    offset: T,
    encoding: Option<RouteEncoding<T>>,
}

#[derive(Debug, Error)]
pub enum QuboError {
    #[error("invalid step count: xi = {xi} must satisfy 1 <= xi <= {n}")]
    InvalidStepCount { xi: usize, n: usize },
    #[error("bitstring length {got} does not match num_vars = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("route length {got} does not match xi = {expected}")]
    RouteLength { expected: usize, got: usize },
    #[error("place {place} repeats in route")]
    RepeatedPlace { place: usize },
    #[error("place {place} out of range for {n} places")]
    PlaceOutOfRange { place: usize, n: usize },
    #[error("coefficient key ({a}, {b}) out of range for {num_vars} variables")]
    KeyOutOfRange { a: usize, b: usize, num_vars: usize },
    #[error("coefficient key ({a}, {b}) is not upper-triangular")]
    KeyUnordered { a: usize, b: usize },
    #[error("invalid bit character '{ch}' (want 0 or 1)")]
    BadBitChar { ch: char },
}

impl<T: Scalar> QuboModel<T> {
    /// Assembles a model from raw parts, pruning explicit zeros and checking
    /// key invariants. Prefer [`build_qubo`] for instance-derived models.
    pub fn from_parts(
        num_vars: usize,
        coefficients: BTreeMap<(usize, usize), T>,
        offset: T,
    ) -> Result<Self, QuboError> {
        for &(a, b) in coefficients.keys() {
            if a > b {
                return Err(QuboError::KeyUnordered { a, b });
            }
            if b >= num_vars {
                return Err(QuboError::KeyOutOfRange { a, b, num_vars });
            }
        }
        let mut coefficients = coefficients;
        coefficients.retain(|_, w| *w != T::zero());
        Ok(QuboModel {
            num_vars,
            coefficients,
            offset,
            encoding: None,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), T> {
        &self.coefficients
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    /// Route-shape metadata when the model came from [`build_qubo`].
    pub fn encoding(&self) -> Option<&RouteEncoding<T>> {
        self.encoding.as_ref()
    }

    /// Full energy `offset + sum Q[a,b] x_a x_b`.
    pub fn energy(&self, x: &BitString) -> Result<T, QuboError> {
        if x.len() != self.num_vars {
            return Err(QuboError::LengthMismatch {
                expected: self.num_vars,
                got: x.len(),
            });
        }
        Ok(self.energy_of_bits(x.bits()))
    }

    pub(crate) fn energy_of_bits(&self, x: &[bool]) -> T {
        let mut e = self.offset;
        for (&(a, b), &w) in &self.coefficients {
            if x[a] && x[b] {
                e += w;
            }
        }
        e
    }
}

/// Builds the coefficient table for an instance at step count `xi`.
///
/// Contributions, summed where keys collide:
/// diagonal (i,s): `-c_p*p_i + c_vt*t_i - lambda_ops`, plus the home leg
/// `c_tt*d(home,i)/v` when s = 0 and again when s = xi-1;
/// same step, places i < j: `+2*lambda_ops`;
/// same place, steps s < s': `+2*lambda_oam`;
/// consecutive steps (i,s) -> (j,s+1) with i != j: `+c_tt*d_ij/v`.
/// Offset: `xi*lambda_ops + 0.25*n*lambda_oam`.
pub fn build_qubo<T: Scalar>(
    instance: &JspInstance<T>,
    xi: usize,
    coeffs: &CoefficientSet<T>,
) -> Result<QuboModel<T>, QuboError> {
    let n = instance.num_places();
    if xi < 1 || xi > n {
        return Err(QuboError::InvalidStepCount { xi, n });
    }
    let flat = |place: usize, step: usize| VarIndex { place, step }.flat(n);
    let mut table: BTreeMap<(usize, usize), T> = BTreeMap::new();
    let add = |table: &mut BTreeMap<(usize, usize), T>, a: usize, b: usize, w: T| {
        let key = if a <= b { (a, b) } else { (b, a) };
        *table.entry(key).or_insert_with(T::zero) += w;
    };

    let two = real::<T>(2.0);
    for s in 0..xi {
        for i in 0..n {
            let place = instance.place(i);
            let mut w = -coeffs.c_p * place.priority + coeffs.c_vt * place.visit_days
                - coeffs.lambda_ops;
            if s == 0 {
                w += coeffs.c_tt * instance.travel_days(instance.dist_home(i));
            }
            if s == xi - 1 {
                w += coeffs.c_tt * instance.travel_days(instance.dist_home(i));
            }
            add(&mut table, flat(i, s), flat(i, s), w);
        }
    }
    for s in 0..xi {
        for i in 0..n {
            for j in i + 1..n {
                add(&mut table, flat(i, s), flat(j, s), two * coeffs.lambda_ops);
            }
        }
    }
    for i in 0..n {
        for s in 0..xi {
            for s2 in s + 1..xi {
                add(&mut table, flat(i, s), flat(i, s2), two * coeffs.lambda_oam);
            }
        }
    }
    for s in 0..xi.saturating_sub(1) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let w = coeffs.c_tt * instance.travel_days(instance.dist_between(i, j));
                    add(&mut table, flat(i, s), flat(j, s + 1), w);
                }
            }
        }
    }
    table.retain(|_, w| *w != T::zero());

    let offset = real::<T>(xi as f64) * coeffs.lambda_ops
        + real::<T>(0.25) * real::<T>(n as f64) * coeffs.lambda_oam;
    Ok(QuboModel {
        num_vars: n * xi,
        coefficients: table,
        offset,
        encoding: Some(RouteEncoding {
            n,
            xi,
            coeffs: *coeffs,
        }),
    })
}

/// Decode result: either a route or the counted constraint violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedAssignment {
    /// Present iff both violation counts are zero.
    pub route: Option<Vec<usize>>,
    /// Steps whose set-bit count differs from one.
    pub step_violations: usize,
    /// Places set at more than one step.
    pub place_violations: usize,
    pub raw: BitString,
}

/// Reads the unique set bit per step in step order; counts violations
/// otherwise. The bitstring length must equal `n * xi`.
pub fn decode(x: &BitString, n: usize, xi: usize) -> DecodedAssignment {
    assert_eq!(
        x.len(),
        n * xi,
        "bitstring length {} does not match n*xi = {}",
        x.len(),
        n * xi
    );
    let mut route = Vec::with_capacity(xi);
    let mut step_violations = 0;
    for s in 0..xi {
        let mut found: Option<usize> = None;
        let mut count = 0;
        for i in 0..n {
            if x.get(s * n + i) {
                count += 1;
                found = Some(i);
            }
        }
        if count == 1 {
            route.push(found.expect("count == 1"));
        } else {
            step_violations += 1;
        }
    }
    let mut place_violations = 0;
    for i in 0..n {
        let visits = (0..xi).filter(|&s| x.get(s * n + i)).count();
        if visits > 1 {
            place_violations += 1;
        }
    }
    let valid = step_violations == 0 && place_violations == 0;
    DecodedAssignment {
        route: valid.then_some(route),
        step_violations,
        place_violations,
        raw: x.clone(),
    }
}

/// One-hot encoding of a route: bit (i, s) set iff `places[s] == i`.
pub fn encode_route(places: &[usize], n: usize, xi: usize) -> Result<BitString, QuboError> {
    if places.len() != xi {
        return Err(QuboError::RouteLength {
            expected: xi,
            got: places.len(),
        });
    }
    let mut bits = vec![false; n * xi];
    let mut seen = vec![false; n];
    for (s, &i) in places.iter().enumerate() {
        if i >= n {
            return Err(QuboError::PlaceOutOfRange { place: i, n });
        }
        if seen[i] {
            return Err(QuboError::RepeatedPlace { place: i });
        }
        seen[i] = true;
        bits[s * n + i] = true;
    }
    Ok(BitString(bits))
}

/// Route-level objective H0 = -c_p*sum(p) + c_tt*(total leagues)/v +
/// c_vt*sum(t), travel including both home legs. Empty routes score zero.
pub fn natural_energy<T: Scalar>(
    instance: &JspInstance<T>,
    places: &[usize],
    coeffs: &CoefficientSet<T>,
) -> Result<T, QuboError> {
    let n = instance.num_places();
    let mut seen = vec![false; n];
    for &i in places {
        if i >= n {
            return Err(QuboError::PlaceOutOfRange { place: i, n });
        }
        if seen[i] {
            return Err(QuboError::RepeatedPlace { place: i });
        }
        seen[i] = true;
    }
    let Some((&first, rest)) = places.split_first() else {
        return Ok(T::zero());
    };
    let mut leagues = instance.dist_home(first);
    let mut prev = first;
    for &next in rest {
        leagues += instance.dist_between(prev, next);
        prev = next;
    }
    leagues += instance.dist_home(prev);
    let mut priority = T::zero();
    let mut visit = T::zero();
    for &i in places {
        priority += instance.place(i).priority;
        visit += instance.place(i).visit_days;
    }
    Ok(-coeffs.c_p * priority + coeffs.c_tt * instance.travel_days(leagues) + coeffs.c_vt * visit)
}
