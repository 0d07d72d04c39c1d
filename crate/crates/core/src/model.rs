//! Domain types, instance-file parsing and validation, and derivation of the
//! five Hamiltonian weights from their two inputs.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::{real, Scalar};

/// Default priority weight `c_p`.
pub const DEFAULT_C_P: f64 = 0.1;
/// Default priority-scale estimate deriving the time weights.
pub const DEFAULT_P_GUESS: f64 = 500.0;
/// Default one-place-per-step penalty, as a multiple of `c_p`.
pub const DEFAULT_OPS_MULTIPLIER: f64 = 300.0;
/// Default visit-at-most-once penalty, as a multiple of `c_p`.
pub const DEFAULT_OAM_MULTIPLIER: f64 = 200.0;

/// One candidate stop.
#[derive(Clone, Debug, PartialEq)]
pub struct Place<T: Scalar = f64> {
    pub id: String,
    /// Reward collected by visiting this place; nonnegative.
    pub priority: T,
    /// Days spent on site; nonnegative.
    pub visit_days: T,
}

/// A route-selection instance: N places, a home depot, and a symmetric
/// distance matrix over home plus places.
///
/// Node indexing for [`distance`](Self::distance): node 0 is home, node
/// `i + 1` is `places()[i]`. Home is the fixed start and end of every route
/// and deliberately has no priority or visit time.
#[derive(Clone, Debug, PartialEq)]
pub struct JspInstance<T: Scalar = f64> {
    name: String,
    home_id: String,
    places: Vec<Place<T>>,
    /// (N+1) x (N+1) leagues, row-major by node index.
    distances: Vec<Vec<T>>,
    t_max: T,
    speed: T,
}

/// One failed instance invariant; `field` names the datum, `rule` the check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid instance: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("coefficient inputs must be positive and finite: {what}")]
    NonpositiveInput { what: &'static str },
    #[error("penalty dominance violated: {which} = {lambda} must exceed c_p * max priority = {bound}")]
    PenaltyDominance {
        which: &'static str,
        lambda: f64,
        bound: f64,
    },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown place id '{id}'")]
    UnknownId { line: usize, id: String },
    #[error("missing '{0}' declaration")]
    MissingField(&'static str),
    #[error("missing distance for pair {a} {b}")]
    MissingDistance { a: String, b: String },
    #[error("line {line}: conflicting distance for pair {a} {b} ({first} vs {second})")]
    ConflictingDistance {
        line: usize,
        a: String,
        b: String,
        first: f64,
        second: f64,
    },
    #[error("invalid instance: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

impl<T: Scalar> JspInstance<T> {
    /// Builds a validated instance; any violated invariant is an error.
    pub fn new(
        name: impl Into<String>,
        home_id: impl Into<String>,
        places: Vec<Place<T>>,
        distances: Vec<Vec<T>>,
        t_max: T,
        speed: T,
    ) -> Result<Self, ModelError> {
        let instance = Self::from_parts(name, home_id, places, distances, t_max, speed);
        let violations = instance.validate();
        if violations.is_empty() {
            Ok(instance)
        } else {
            Err(ModelError::Invalid(violations))
        }
    }

    /// Builds without validation so callers can inspect a bad instance via
    /// [`validate`](Self::validate). Solvers assume a validated instance.
    pub fn from_parts(
        name: impl Into<String>,
        home_id: impl Into<String>,
        places: Vec<Place<T>>,
        distances: Vec<Vec<T>>,
        t_max: T,
        speed: T,
    ) -> Self {
        Self {
            name: name.into(),
            home_id: home_id.into(),
            places,
            distances,
            t_max,
            speed,
        }
    }

    /// Checks every invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |field: &str, rule: String| {
            out.push(Violation {
                field: field.to_string(),
                rule,
            });
        };

        let n = self.places.len();
        if n == 0 {
            push("places", "instance needs at least one place".into());
        }
        for (i, place) in self.places.iter().enumerate() {
            let field = format!("places[{i}]");
            if place.id.is_empty() {
                push(&field, "empty id".into());
            } else if place.id.contains(char::is_whitespace) || place.id.contains('#') {
                push(&field, format!("id '{}' contains whitespace or '#'", place.id));
            }
            if self.places[..i].iter().any(|other| other.id == place.id) {
                push(&field, format!("duplicate id '{}'", place.id));
            }
            if place.id == self.home_id {
                push(&field, format!("id '{}' collides with home", place.id));
            }
            if place.priority < T::zero() || place.priority.is_nan() {
                push(
                    &format!("{field}.priority"),
                    format!("negative priority ({})", place.priority),
                );
            }
            if place.visit_days < T::zero() || place.visit_days.is_nan() {
                push(
                    &format!("{field}.visit_days"),
                    format!("negative visit time ({})", place.visit_days),
                );
            }
        }
        if self.home_id.is_empty() {
            push("home_id", "empty id".into());
        }

        if self.t_max <= T::zero() || !self.t_max.is_finite() {
            push("t_max", format!("must be positive and finite ({})", self.t_max));
        }
        if self.speed <= T::zero() || !self.speed.is_finite() {
            push("speed", format!("must be positive and finite ({})", self.speed));
        }

        let dim = n + 1;
        let square =
            self.distances.len() == dim && self.distances.iter().all(|row| row.len() == dim);
        if !square {
            push(
                "distances",
                format!("expected a {dim}x{dim} matrix over home plus places"),
            );
            return out;
        }
        for a in 0..dim {
            if self.distances[a][a] != T::zero() {
                push(
                    &format!("distances[{a}][{a}]"),
                    format!("nonzero self-distance ({})", self.distances[a][a]),
                );
            }
            for b in a + 1..dim {
                let ab = self.distances[a][b];
                let ba = self.distances[b][a];
                if ab != ba {
                    push(
                        &format!("distances[{a}][{b}]"),
                        format!("asymmetric ({ab} vs {ba})"),
                    );
                }
                if ab <= T::zero() || !ab.is_finite() {
                    push(
                        &format!("distances[{a}][{b}]"),
                        format!("off-diagonal distance must be positive and finite ({ab})"),
                    );
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn home_id(&self) -> &str {
        &self.home_id
    }

    pub fn places(&self) -> &[Place<T>] {
        &self.places
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn place(&self, i: usize) -> &Place<T> {
        &self.places[i]
    }

    /// Resolves a place id to its index.
    pub fn place_index(&self, id: &str) -> Option<usize> {
        self.places.iter().position(|p| p.id == id)
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    pub fn speed(&self) -> T {
        self.speed
    }

    /// Leagues between two nodes; node 0 is home, node i+1 is place i.
    pub fn distance(&self, a: usize, b: usize) -> T {
        self.distances[a][b]
    }

    /// Leagues between home and place `i`.
    pub fn dist_home(&self, i: usize) -> T {
        self.distances[0][i + 1]
    }

    /// Leagues between places `i` and `j`.
    pub fn dist_between(&self, i: usize, j: usize) -> T {
        self.distances[i + 1][j + 1]
    }

    /// Days needed to cover `leagues` at this instance's speed.
    pub fn travel_days(&self, leagues: T) -> T {
        leagues / self.speed
    }

    pub fn max_priority(&self) -> T {
        self.places
            .iter()
            .map(|p| p.priority)
            .fold(T::zero(), T::max)
    }

    fn node_label(&self, node: usize) -> &str {
        if node == 0 {
            &self.home_id
        } else {
            &self.places[node - 1].id
        }
    }

    /// Serializes back to the instance file format; `parse_instance` of the
    /// result reproduces this instance exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name = {}", self.name);
        let _ = writeln!(s, "t_max_days = {}", self.t_max);
        let _ = writeln!(s, "speed_leagues_per_day = {}", self.speed);
        let _ = writeln!(s, "home = {}", self.home_id);
        let _ = writeln!(s);
        for place in &self.places {
            let _ = writeln!(
                s,
                "place {} priority={} visit_days={}",
                place.id, place.priority, place.visit_days
            );
        }
        let _ = writeln!(s);
        let dim = self.places.len() + 1;
        for a in 0..dim {
            for b in a + 1..dim {
                let _ = writeln!(
                    s,
                    "dist {} {} {}",
                    self.node_label(a),
                    self.node_label(b),
                    self.distances[a][b]
                );
            }
        }
        s
    }
}

/// The five Hamiltonian weights plus the inputs that derived them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet<T: Scalar = f64> {
    pub c_p: T,
    pub c_tt: T,
    pub c_vt: T,
    pub lambda_ops: T,
    pub lambda_oam: T,
    /// Priority-scale estimate used to derive `c_tt` and `c_vt`.
    pub p_guess: T,
    /// Time budget used to derive `c_tt` and `c_vt`.
    pub t_max: T,
}

impl<T: Scalar> CoefficientSet<T> {
    /// Derives the default weight set for an instance: `c_p` = 0.1,
    /// `p_guess` = 500, multipliers 300 and 200.
    pub fn default_for(instance: &JspInstance<T>) -> Self {
        derive_coefficients(
            real(DEFAULT_C_P),
            real(DEFAULT_P_GUESS),
            instance.t_max(),
            real(DEFAULT_OPS_MULTIPLIER),
            real(DEFAULT_OAM_MULTIPLIER),
        )
        .expect("default inputs are positive")
    }

    /// Both penalties must strictly exceed `c_p * max(p_i)`, otherwise a
    /// constraint violation can pay for itself.
    pub fn check_penalty_dominance(&self, instance: &JspInstance<T>) -> Result<(), ModelError> {
        let bound = self.c_p * instance.max_priority();
        for (which, lambda) in [("lambda_ops", self.lambda_ops), ("lambda_oam", self.lambda_oam)]
        {
            if lambda <= bound || lambda.is_nan() {
                return Err(ModelError::PenaltyDominance {
                    which,
                    lambda: lambda.to_f64().unwrap_or(f64::NAN),
                    bound: bound.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}

/// Computes the weight set: `c_tt = c_vt = c_p * p_guess / t_max`,
/// `lambda_ops = ops_multiplier * c_p`, `lambda_oam = oam_multiplier * c_p`.
pub fn derive_coefficients<T: Scalar>(
    c_p: T,
    p_guess: T,
    t_max: T,
    ops_multiplier: T,
    oam_multiplier: T,
) -> Result<CoefficientSet<T>, ModelError> {
    for (what, value) in [
        ("c_p", c_p),
        ("p_guess", p_guess),
        ("t_max", t_max),
        ("ops_multiplier", ops_multiplier),
        ("oam_multiplier", oam_multiplier),
    ] {
        if value <= T::zero() || !value.is_finite() {
            return Err(ModelError::NonpositiveInput { what });
        }
    }
    let c_tt = c_p * p_guess / t_max;
    Ok(CoefficientSet {
        c_p,
        c_tt,
        c_vt: c_tt,
        lambda_ops: ops_multiplier * c_p,
        lambda_oam: oam_multiplier * c_p,
        p_guess,
        t_max,
    })
}

/// Parses the line-oriented instance format (see repository README or the
/// bundled `middle_earth.jsp` for the grammar).
pub fn parse_instance<T: Scalar>(text: &str) -> Result<JspInstance<T>, ParseError> {
    struct RawPair {
        a: String,
        b: String,
        leagues: f64,
        line: usize,
    }

    fn parse_number(token: &str, line: usize, what: &str) -> Result<f64, ParseError> {
        token.parse().map_err(|_| ParseError::Syntax {
            line,
            msg: format!("{what} is not a number: '{token}'"),
        })
    }

    fn set_once<V>(slot: &mut Option<V>, value: V, key: &str, line: usize) -> Result<(), ParseError> {
        if slot.is_some() {
            return Err(ParseError::Syntax {
                line,
                msg: format!("duplicate '{key}'"),
            });
        }
        *slot = Some(value);
        Ok(())
    }

    let mut name: Option<String> = None;
    let mut t_max: Option<f64> = None;
    let mut speed: Option<f64> = None;
    let mut home: Option<String> = None;
    let mut places: Vec<Place<T>> = Vec::new();
    let mut pairs: Vec<RawPair> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stmt = raw.split('#').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let mut tokens = stmt.split_whitespace();
        match tokens.next().expect("statement is nonempty") {
            "place" => {
                let id = tokens
                    .next()
                    .ok_or_else(|| ParseError::Syntax {
                        line,
                        msg: "expected 'place <id> priority=<n> visit_days=<n>'".into(),
                    })?
                    .to_string();
                let mut priority: Option<f64> = None;
                let mut visit: Option<f64> = None;
                for token in tokens {
                    let Some((key, value)) = token.split_once('=') else {
                        return Err(ParseError::Syntax {
                            line,
                            msg: format!("expected key=value attribute, got '{token}'"),
                        });
                    };
                    match key {
                        "priority" => {
                            set_once(&mut priority, parse_number(value, line, "priority")?, "priority", line)?;
                        }
                        "visit_days" => {
                            set_once(&mut visit, parse_number(value, line, "visit_days")?, "visit_days", line)?;
                        }
                        other => {
                            return Err(ParseError::Syntax {
                                line,
                                msg: format!("unknown place attribute '{other}'"),
                            });
                        }
                    }
                }
                let priority = priority.ok_or(ParseError::Syntax {
                    line,
                    msg: "place line missing priority=".into(),
                })?;
                let visit = visit.ok_or(ParseError::Syntax {
                    line,
                    msg: "place line missing visit_days=".into(),
                })?;
                if places.iter().any(|p| p.id == id) {
                    return Err(ParseError::Syntax {
                        line,
                        msg: format!("duplicate place '{id}'"),
                    });
                }
                places.push(Place {
                    id,
                    priority: real(priority),
                    visit_days: real(visit),
                });
            }
            "dist" => {
                let mut next = |what: &str| {
                    tokens.next().map(str::to_string).ok_or_else(|| ParseError::Syntax {
                        line,
                        msg: format!("expected 'dist <a> <b> <leagues>', missing {what}"),
                    })
                };
                let a = next("first id")?;
                let b = next("second id")?;
                let leagues = parse_number(&next("leagues")?, line, "leagues")?;
                if tokens.next().is_some() {
                    return Err(ParseError::Syntax {
                        line,
                        msg: "trailing tokens after 'dist <a> <b> <leagues>'".into(),
                    });
                }
                pairs.push(RawPair { a, b, leagues, line });
            }
            _ => {
                let Some((key, value)) = stmt.split_once('=') else {
                    return Err(ParseError::Syntax {
                        line,
                        msg: "expected 'key = value', 'place ...' or 'dist ...'".into(),
                    });
                };
                let (key, value) = (key.trim(), value.trim());
                if value.is_empty() {
                    return Err(ParseError::Syntax {
                        line,
                        msg: format!("missing value for '{key}'"),
                    });
                }
                match key {
                    "name" => set_once(&mut name, value.to_string(), "name", line)?,
                    "t_max_days" => {
                        set_once(&mut t_max, parse_number(value, line, "t_max_days")?, "t_max_days", line)?;
                    }
                    "speed_leagues_per_day" => {
                        set_once(
                            &mut speed,
                            parse_number(value, line, "speed_leagues_per_day")?,
                            "speed_leagues_per_day",
                            line,
                        )?;
                    }
                    "home" => {
                        if value.split_whitespace().count() != 1 {
                            return Err(ParseError::Syntax {
                                line,
                                msg: "home id must be a single token".into(),
                            });
                        }
                        set_once(&mut home, value.to_string(), "home", line)?;
                    }
                    other => {
                        return Err(ParseError::Syntax {
                            line,
                            msg: format!("unknown key '{other}'"),
                        });
                    }
                }
            }
        }
    }

    let name = name.ok_or(ParseError::MissingField("name"))?;
    let t_max = t_max.ok_or(ParseError::MissingField("t_max_days"))?;
    let speed = speed.ok_or(ParseError::MissingField("speed_leagues_per_day"))?;
    let home = home.ok_or(ParseError::MissingField("home"))?;
    if places.is_empty() {
        return Err(ParseError::MissingField("place"));
    }

    let n = places.len();
    let mut node_of: HashMap<&str, usize> = HashMap::with_capacity(n + 1);
    node_of.insert(home.as_str(), 0);
    for (i, place) in places.iter().enumerate() {
        if node_of.insert(place.id.as_str(), i + 1).is_some() {
            // Only possible for a place shadowing home; duplicates among
            // places were rejected line by line.
            return Err(ParseError::Invalid(vec![Violation {
                field: format!("places[{i}]"),
                rule: format!("id '{}' collides with home", place.id),
            }]));
        }
    }

    let dim = n + 1;
    let mut matrix = vec![vec![T::zero(); dim]; dim];
    let mut seen: Vec<Vec<Option<f64>>> = vec![vec![None; dim]; dim];
    let node_label = |node: usize| -> &str {
        if node == 0 {
            home.as_str()
        } else {
            places[node - 1].id.as_str()
        }
    };
    for pair in &pairs {
        let a = *node_of.get(pair.a.as_str()).ok_or_else(|| ParseError::UnknownId {
            line: pair.line,
            id: pair.a.clone(),
        })?;
        let b = *node_of.get(pair.b.as_str()).ok_or_else(|| ParseError::UnknownId {
            line: pair.line,
            id: pair.b.clone(),
        })?;
        if a == b {
            return Err(ParseError::Syntax {
                line: pair.line,
                msg: format!("self-distance for '{}'", pair.a),
            });
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match seen[lo][hi] {
            Some(prev) if prev == pair.leagues => {}
            Some(prev) => {
                return Err(ParseError::ConflictingDistance {
                    line: pair.line,
                    a: node_label(lo).to_string(),
                    b: node_label(hi).to_string(),
                    first: prev,
                    second: pair.leagues,
                });
            }
            None => {
                seen[lo][hi] = Some(pair.leagues);
                matrix[lo][hi] = real(pair.leagues);
                matrix[hi][lo] = real(pair.leagues);
            }
        }
    }
    for (lo, row) in seen.iter().enumerate() {
        for (hi, cell) in row.iter().enumerate().skip(lo + 1) {
            if cell.is_none() {
                return Err(ParseError::MissingDistance {
                    a: node_label(lo).to_string(),
                    b: node_label(hi).to_string(),
                });
            }
        }
    }

    JspInstance::new(name, home, places, matrix, real(t_max), real(speed)).map_err(|err| {
        match err {
            ModelError::Invalid(violations) => ParseError::Invalid(violations),
            other => unreachable!("constructor only reports violations: {other}"),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_parses_to_expected_shape() {
        let instance: JspInstance = fixtures::middle_earth();
        assert_eq!(instance.num_places(), 9);
        assert_eq!(instance.home_id(), "Hobbiton");
        assert_eq!(instance.t_max(), 100.0);
        assert_eq!(instance.speed(), 9.6);
        assert_eq!(instance.place_index("Bree"), Some(0));
        assert_eq!(instance.dist_home(0), 40.0);
        assert_eq!(instance.dist_between(0, 1), 200.0);
        assert!(instance.validate().is_empty());
    }

    #[test]
    fn duplicate_equal_distance_is_tolerated() {
        let text = "\
name = two\nt_max_days = 10\nspeed_leagues_per_day = 1\nhome = H\n\
place A priority=1 visit_days=1\nplace B priority=2 visit_days=1\n\
dist H A 3\ndist H B 4\ndist A B 5\ndist B A 5\n";
        let instance: JspInstance = parse_instance(text).unwrap();
        assert_eq!(instance.dist_between(0, 1), 5.0);
    }

    #[test]
    fn conflicting_distance_is_rejected() {
        let text = "\
name = two\nt_max_days = 10\nspeed_leagues_per_day = 1\nhome = H\n\
place A priority=1 visit_days=1\nplace B priority=2 visit_days=1\n\
dist H A 3\ndist H B 4\ndist A B 5\ndist B A 6\n";
        match parse_instance::<f64>(text) {
            Err(ParseError::ConflictingDistance { first, second, .. }) => {
                assert_eq!((first, second), (5.0, 6.0));
            }
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn missing_pair_is_rejected() {
        let text = "\
name = two\nt_max_days = 10\nspeed_leagues_per_day = 1\nhome = H\n\
place A priority=1 visit_days=1\nplace B priority=2 visit_days=1\n\
dist H A 3\ndist A B 5\n";
        match parse_instance::<f64>(text) {
            Err(ParseError::MissingDistance { a, b }) => {
                assert_eq!((a.as_str(), b.as_str()), ("H", "B"));
            }
            other => panic!("expected missing distance, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "name = x\nbogus line here\n";
        match parse_instance::<f64>(text) {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_dist_id_is_rejected() {
        let text = "\
name = one\nt_max_days = 10\nspeed_leagues_per_day = 1\nhome = H\n\
place A priority=1 visit_days=1\ndist H Q 3\n";
        match parse_instance::<f64>(text) {
            Err(ParseError::UnknownId { id, line }) => {
                assert_eq!(id, "Q");
                assert_eq!(line, 6);
            }
            other => panic!("expected unknown id, got {other:?}"),
        }
    }

    #[test]
    fn nonpositive_budget_is_invalid() {
        let text = "\
name = one\nt_max_days = 0\nspeed_leagues_per_day = 1\nhome = H\n\
place A priority=1 visit_days=1\ndist H A 3\n";
        match parse_instance::<f64>(text) {
            Err(ParseError::Invalid(violations)) => {
                assert!(violations.iter().any(|v| v.field == "t_max"), "{violations:?}");
            }
            other => panic!("expected invalid instance, got {other:?}"),
        }
    }

    #[test]
    fn asymmetry_is_one_violation() {
        let mut matrix = vec![vec![0.0; 3]; 3];
        matrix[0][1] = 7.0;
        matrix[1][0] = 7.0;
        matrix[0][2] = 9.0;
        matrix[2][0] = 9.0;
        matrix[1][2] = 48.0;
        matrix[2][1] = 50.0;
        let places = vec![
            Place { id: "A".into(), priority: 1.0, visit_days: 1.0 },
            Place { id: "B".into(), priority: 1.0, visit_days: 1.0 },
        ];
        let instance = JspInstance::from_parts("t", "H", places, matrix, 10.0, 1.0);
        let violations = instance.validate();
        assert_eq!(violations.len(), 1, "{violations:?}");
        assert!(violations[0].rule.contains("asymmetric"));
    }

    #[test]
    fn negative_priority_is_one_violation() {
        let mut matrix = vec![vec![0.0; 2]; 2];
        matrix[0][1] = 7.0;
        matrix[1][0] = 7.0;
        let places = vec![Place { id: "A".into(), priority: -5.0, visit_days: 1.0 }];
        let instance = JspInstance::from_parts("t", "H", places, matrix, 10.0, 1.0);
        let violations = instance.validate();
        assert_eq!(violations.len(), 1, "{violations:?}");
        assert!(violations[0].rule.contains("negative priority"));
    }

    #[test]
    fn round_trip_is_identity() {
        let first: JspInstance = fixtures::middle_earth();
        let second: JspInstance = parse_instance(&first.to_text()).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn derive_matches_worked_examples() {
        let c: CoefficientSet = derive_coefficients(0.1, 500.0, 100.0, 300.0, 200.0).unwrap();
        assert_eq!(c.c_p, 0.1);
        assert_eq!(c.c_tt, 0.5);
        assert_eq!(c.c_vt, 0.5);
        assert_eq!(c.lambda_ops, 30.0);
        assert_eq!(c.lambda_oam, 20.0);

        let narrower: CoefficientSet = derive_coefficients(0.1, 400.0, 100.0, 300.0, 200.0).unwrap();
        assert_eq!(narrower.c_tt, 0.4);
        assert_eq!(narrower.c_vt, 0.4);
        assert_eq!(narrower.lambda_ops, c.lambda_ops);
    }

    #[test]
    fn dominance_holds_for_fixture_defaults() {
        let instance: JspInstance = fixtures::middle_earth();
        let coeffs = CoefficientSet::default_for(&instance);
        assert!(coeffs.check_penalty_dominance(&instance).is_ok());
        assert_eq!(instance.max_priority(), 170.0);
    }

    #[test]
    fn dominance_rejects_weak_penalty() {
        let instance: JspInstance = fixtures::middle_earth();
        let weak = derive_coefficients(0.1, 500.0, 100.0, 170.0, 200.0).unwrap();
        match weak.check_penalty_dominance(&instance) {
            Err(ModelError::PenaltyDominance { which, .. }) => assert_eq!(which, "lambda_ops"),
            other => panic!("expected dominance failure, got {other:?}"),
        }
    }

    #[test]
    fn nonpositive_derivation_input_is_rejected() {
        match derive_coefficients::<f64>(0.0, 500.0, 100.0, 300.0, 200.0) {
            Err(ModelError::NonpositiveInput { what }) => assert_eq!(what, "c_p"),
            other => panic!("expected input rejection, got {other:?}"),
        }
    }
}
