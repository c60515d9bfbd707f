//! Property tests for the structural invariants: incidence bookkeeping,
//! map linearity, the state-space correspondence, residual linearity, and
//! text round-trips.

mod common;

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_filter, random_signal};
use sheafilt::cli::formats;
use sheafilt::engine::run_filter;
use sheafilt::sheaf::{section_from_states, verify_section, GluingSide, LinearMap};
use sheafilt::{LineComplex, Signal};

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    let scale = x.abs().max(y.abs());
    (x - y).abs() <= tol * scale.max(1.0)
}

proptest! {
    /// Every boundary vertex of an edge lists that edge among its faces,
    /// and the face-degree sum counts each edge twice.
    #[test]
    fn boundary_face_adjunction(n in 1usize..60) {
        let c = LineComplex::new(n, None).unwrap();
        for e in c.edges() {
            for v in c.boundary(e).unwrap() {
                prop_assert!(c.face(v).unwrap().contains(&e));
                prop_assert!(c.directly_connected(v, e).unwrap());
            }
        }
        let degree_sum: usize = c.vertices().map(|v| c.face(v).unwrap().len()).sum();
        prop_assert_eq!(degree_sum, 2 * c.edge_count());
    }

    /// Matrix application is linear: m(alpha*u + v) = alpha*m(u) + m(v)
    /// up to rounding.
    #[test]
    fn apply_map_linearity(
        (rows, cols, entries, u, v, alpha) in (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            let len = r * c;
            (
                Just(r),
                Just(c),
                prop::collection::vec(-10.0..10.0f64, len..=len),
                prop::collection::vec(-10.0..10.0f64, c..=c),
                prop::collection::vec(-10.0..10.0f64, c..=c),
                -4.0..4.0f64,
            )
        })
    ) {
        let m = LinearMap::new(rows, cols, entries).unwrap();
        let mixed: Vec<f64> = u.iter().zip(&v).map(|(a, b)| alpha * a + b).collect();
        let lhs = m.apply(&mixed).unwrap();
        let mu = m.apply(&u).unwrap();
        let mv = m.apply(&v).unwrap();
        for k in 0..rows {
            prop_assert!(rel_close(lhs[k], alpha * mu[k] + mv[k], 1e-12));
        }
    }

    /// Signal CSV serialization round-trips every finite f64 bit-exactly.
    #[test]
    fn signal_csv_round_trip(samples in prop::collection::vec(
        prop_oneof![
            Just(0.0f64),
            Just(-0.0f64),
            -1.0..1.0f64,
            -1e300..1e300f64,
            Just(f64::MIN_POSITIVE),
            Just(5e-324),
        ],
        0..40,
    )) {
        let sig = Signal::new(samples).unwrap();
        let text = formats::write_signal(&sig);
        let back = formats::parse_signal("<prop>", &text).unwrap();
        prop_assert!(sig.bitwise_eq(&back));
    }

    /// Coefficient padding: b has length N + 1 and a length N, with the
    /// shorter raw list zero-extended.
    #[test]
    fn coefficient_padding(
        b in prop::collection::vec(-5.0..5.0f64, 1..9),
        a in prop::collection::vec(-0.9..0.9f64, 0..8),
    ) {
        let c = sheafilt::FilterCoefficients::new(&b, &a).unwrap();
        let n = (b.len() - 1).max(a.len());
        prop_assert_eq!(c.order(), n);
        prop_assert_eq!(c.b().len(), n + 1);
        prop_assert_eq!(c.a().len(), n);
        prop_assert_eq!(&c.b()[..b.len()], &b[..]);
        prop_assert!(c.b()[b.len()..].iter().all(|&x| x == 0.0));
    }
}

/// The zero section is always a global section.
#[test]
fn zero_section_is_global() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let n = rng.random_range(0..=8);
        let coeffs = random_filter(&mut rng, n, 0.0, 0.95);
        let d = coeffs.polezero_maps();
        let len = rng.random_range(1..=20);
        let c = LineComplex::new(len, None).unwrap();
        let sec = section_from_states(&c, &d, vec![vec![0.0; d.state_dim()]; len]).unwrap();
        assert!(verify_section(&c, &d, &sec, 0.0).unwrap().is_consistent());
    }
}

/// The memory half of the sheaf update (s(state) with the input appended)
/// reproduces the action of A plus B on the classical state: 1000 random
/// states across orders 1..=8, to 1e-12 relative.
#[test]
fn sheaf_update_matches_state_space_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..1000 {
        let n = rng.random_range(1..=8);
        let coeffs = random_filter(&mut rng, n, 0.0, 0.95);
        let d = coeffs.polezero_maps();
        let model = coeffs.state_space().unwrap();

        let memory: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let input: f64 = rng.random_range(-10.0..10.0);
        let mut state = memory.clone();
        state.push(input);

        let sheaf_next = d.map_s().apply(&state).unwrap();
        let ax = model.a().apply(&memory).unwrap();
        let b_col = model.b().entries();
        for k in 0..n {
            let classical = ax[k] + b_col[k] * input;
            assert!(
                rel_close(sheaf_next[k], classical, 1e-12),
                "component {k}: {} vs {classical}",
                sheaf_next[k]
            );
        }
    }
}

/// Perturbing one vertex-state entry by delta changes each incident
/// residual by exactly delta times the corresponding map column, up to
/// 1e-12 relative rounding.
#[test]
fn residuals_are_linear_in_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let coeffs = random_filter(&mut rng, n, 0.0, 0.95);
        let d = coeffs.polezero_maps();
        let len = rng.random_range(3..=12);
        let input = random_signal(&mut rng, len);
        let mut result = run_filter(&d, &input, None).unwrap();

        let vertex = rng.random_range(0..len);
        let component = rng.random_range(0..=n);
        let delta: f64 = rng.random_range(0.5..2.0) * 1e-3;
        result.section.vertex_states_mut()[vertex][component] += delta;

        let complex = LineComplex::new(len, None).unwrap();
        let report = verify_section(&complex, &d, &result.section, 0.0).unwrap();

        for violation in report.violations() {
            // Identify which map produced this residual and from which
            // vertex; the expected residual is delta times that map's
            // perturbed column.
            let (map, from_vertex) = match violation.side {
                GluingSide::Left => (d.map_s(), violation.edge),
                GluingSide::Right => (d.map_r(), violation.edge + 1),
            };
            if from_vertex != vertex {
                continue;
            }
            for (k, &res) in violation.residual.iter().enumerate() {
                let expected = delta * map.get(k, component);
                assert!(
                    rel_close(res, expected, 1e-12),
                    "edge {} {:?} row {k}: residual {res} vs {expected}",
                    violation.edge,
                    violation.side
                );
            }
        }
    }
}

/// Stalk dimensions reported by a run depend on the filter order, never on
/// the signal length.
#[test]
fn run_dimensions_track_order_only() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for n in 0..=6 {
        let coeffs = random_filter(&mut rng, n, 0.0, 0.9);
        let d = coeffs.polezero_maps();
        for len in [1usize, 17, 230] {
            let result = run_filter(&d, &random_signal(&mut rng, len), None).unwrap();
            assert_eq!(result.diagram_order, n);
            assert!(result.section.vertex_states().iter().all(|s| s.len() == n + 1));
        }
    }
}
