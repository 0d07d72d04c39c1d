//! Properties of the coefficient-table builder checked against a term-wise
//! evaluator that never touches the table.

mod common;

use approx::assert_relative_eq;
use common::{fixture, hamiltonian_by_terms, random_bits, rel_close};
use jsp_core::{build_qubo, decode, encode_route, BitString, CoefficientSet, VarIndex};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn table_energy_matches_term_evaluation_on_random_bitstrings() {
    let instance = fixture();
    let coeffs = CoefficientSet::default_for(&instance);
    let mut rng = StdRng::seed_from_u64(17);
    for xi in [2usize, 6] {
        let model = build_qubo(&instance, xi, &coeffs).expect("build");
        for _ in 0..250 {
            let bits = random_bits(&mut rng, model.num_vars());
            let energy = model.energy(&bits).expect("energy");
            let by_terms = hamiltonian_by_terms(&instance, &coeffs, xi, &bits);
            assert!(
                rel_close(energy, by_terms, 1e-9),
                "table {energy} vs terms {by_terms} at xi={xi}"
            );
        }
    }
}

#[test]
fn single_flip_deltas_match_the_coefficient_table() {
    let instance = fixture();
    let coeffs = CoefficientSet::default_for(&instance);
    let model = build_qubo(&instance, 5, &coeffs).expect("build");
    let nv = model.num_vars();
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..1000 {
        let mut bits = random_bits(&mut rng, nv);
        let v = rng.random_range(0..nv);
        let before = model.energy(&bits).expect("energy");

        // Field of v: diagonal plus the weights to every set neighbor.
        let mut field = 0.0;
        for (&(a, b), &w) in model.coefficients() {
            let touches = (a == v && b == v)
                || (a == v && bits.get(b))
                || (b == v && bits.get(a));
            if touches {
                field += w;
            }
        }
        let expected = if bits.get(v) { -field } else { field };

        bits.set(v, !bits.get(v));
        let after = model.energy(&bits).expect("energy");
        assert!(
            rel_close(after - before, expected, 1e-9),
            "flip delta {} vs field prediction {expected}",
            after - before
        );
    }
}

#[test]
fn entry_count_matches_the_closed_form() {
    let instance = fixture();
    let coeffs = CoefficientSet::default_for(&instance);
    let n = 9usize;
    for xi in 1..=n {
        let model = build_qubo(&instance, xi, &coeffs).expect("build");
        let pairs = n * (n - 1) / 2;
        let steps_pairs = xi * (xi - 1) / 2;
        let want = n * xi + xi * pairs + n * steps_pairs + (xi.saturating_sub(1)) * n * (n - 1);
        assert_eq!(model.coefficients().len(), want, "entries at xi={xi}");
        assert_eq!(model.num_vars(), n * xi);
    }
}

#[test]
fn building_twice_yields_identical_tables() {
    let instance = fixture();
    let coeffs = CoefficientSet::default_for(&instance);
    let a = build_qubo(&instance, 6, &coeffs).expect("build");
    let b = build_qubo(&instance, 6, &coeffs).expect("build");
    assert_eq!(a.num_vars(), b.num_vars());
    assert_eq!(a.offset(), b.offset());
    assert_eq!(a.coefficients(), b.coefficients());
}

#[test]
fn var_index_round_trips_across_the_grid() {
    for n in 1..=9 {
        for xi in 1..=n {
            for place in 0..n {
                for step in 0..xi {
                    let v = VarIndex { place, step }.flat(n);
                    assert_eq!(VarIndex::from_flat(v, n), VarIndex { place, step });
                }
            }
        }
    }
}

#[test]
fn doubled_step_bit_raises_energy_by_the_pair_penalty() {
    let instance = fixture();
    let coeffs = CoefficientSet::default_for(&instance);
    let model = build_qubo(&instance, 4, &coeffs).expect("build");
    let route = [0usize, 3, 4, 1];
    let bits = encode_route(&route, 9, 4).expect("encode");
    let clean = model.energy(&bits).expect("energy");

    // Set a second place at step 2 (place 6 is unused by the route).
    let mut doubled = bits.clone();
    let extra = VarIndex { place: 6, step: 2 }.flat(9);
    doubled.set(extra, true);
    let dirty = model.energy(&doubled).expect("energy");
    let decoded = decode(&doubled, 9, 4);
    assert_eq!(decoded.step_violations, 1);
    assert_eq!(decoded.place_violations, 0);
    assert!(decoded.route.is_none());

    // Net change: the extra diagonal plus one step-pair term plus the two
    // travel legs into and out of the extra place.
    let terms_clean = hamiltonian_by_terms(&instance, &coeffs, 4, &bits);
    let terms_dirty = hamiltonian_by_terms(&instance, &coeffs, 4, &doubled);
    assert!(rel_close(dirty - clean, terms_dirty - terms_clean, 1e-9));
    assert!(dirty > clean, "violations must cost energy");
}

#[test]
fn single_precision_build_tracks_double_precision() {
    let text = fixture().to_text();
    let instance32: jsp_core::JspInstance<f32> =
        jsp_core::parse_instance(&text).expect("parse f32");
    let instance64 = fixture();
    let coeffs32 = CoefficientSet::default_for(&instance32);
    let coeffs64 = CoefficientSet::default_for(&instance64);
    let model32 = build_qubo(&instance32, 3, &coeffs32).expect("build");
    let model64 = build_qubo(&instance64, 3, &coeffs64).expect("build");
    assert_eq!(model32.num_vars(), model64.num_vars());
    assert_eq!(model32.coefficients().len(), model64.coefficients().len());
    assert_relative_eq!(f64::from(model32.offset()), model64.offset(), max_relative = 1e-6);

    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..50 {
        let bits = random_bits(&mut rng, model64.num_vars());
        let e32 = f64::from(model32.energy(&bits).expect("energy"));
        let e64 = model64.energy(&bits).expect("energy");
        assert_relative_eq!(e32, e64, max_relative = 1e-3, epsilon = 1e-3);
    }
}

proptest! {
    // Scaling every weight by k scales every energy by k: the table is
    // linear in the coefficient set.
    #[test]
    fn energies_are_homogeneous_in_the_coefficients(
        k in 0.1f64..10.0,
        seed in 0u64..1000,
    ) {
        let instance = fixture();
        let base = CoefficientSet::default_for(&instance);
        let scaled = CoefficientSet::<f64> {
            c_p: base.c_p * k,
            c_tt: base.c_tt * k,
            c_vt: base.c_vt * k,
            lambda_ops: base.lambda_ops * k,
            lambda_oam: base.lambda_oam * k,
            p_guess: base.p_guess,
            t_max: base.t_max,
        };
        let model = build_qubo(&instance, 3, &base).expect("build");
        let model_k = build_qubo(&instance, 3, &scaled).expect("build");
        let mut rng = StdRng::seed_from_u64(seed);
        let bits = random_bits(&mut rng, model.num_vars());
        let e = model.energy(&bits).expect("energy");
        let ek = model_k.energy(&bits).expect("energy");
        prop_assert!(rel_close(ek, k * e, 1e-9), "{ek} vs {}", k * e);
    }

    // Any 0/1 string round-trips through the text form.
    #[test]
    fn bitstring_text_round_trips(bits in proptest::collection::vec(any::<bool>(), 0..64)) {
        let original = BitString::new(bits);
        let reparsed = BitString::from_01(&original.to_string()).expect("parse");
        prop_assert_eq!(original, reparsed);
    }
}
