//! The dense simplex against an exact rational reference on small random
//! instances.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symlife_core::{build_energy_matrix, solve_max_lifetime, EnergyModel, NetworkInstance, Point};
use symlife_oracle::min_max_energy_exact;

/// Coordinates on a quarter-unit grid so no two nodes coincide silently
/// and rational pivoting stays cheap.
fn random_grid_instance(rng: &mut ChaCha8Rng, k: usize, n: usize) -> NetworkInstance<f64> {
    let mut points: Vec<Point<f64>> = Vec::new();
    while points.len() < k + n {
        let p = Point::new(
            rng.gen_range(-8..=8i32) as f64 * 0.25,
            rng.gen_range(-8..=8i32) as f64 * 0.25,
        );
        if points.iter().all(|q| (q.x, q.y) != (p.x, p.y)) {
            points.push(p);
        }
    }
    let sensors = points.split_off(k);
    NetworkInstance {
        collectors: points,
        sensors,
        data: (0..n).map(|_| rng.gen_range(1..=8) as f64 * 0.25).collect(),
        energy_model: EnergyModel::power(1.0, 2.0),
    }
}

#[test]
fn objective_matches_exact_rational_simplex() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut checked = 0;
    for case in 0.. {
        if checked == 15 {
            break;
        }
        let k = 1 + (case % 2);
        let n = 2 + (case % 3);
        let inst = random_grid_instance(&mut rng, k, n);
        let e = build_energy_matrix(&inst).unwrap();
        let sol = solve_max_lifetime(&inst, &e).unwrap();

        let exact = min_max_energy_exact(inst.k(), &e.entries, &inst.data);
        let expect = exact.to_f64().unwrap();
        assert!(
            (sol.objective - expect).abs() <= 1e-6 * (1.0 + expect),
            "case {case}: solver {} vs exact {expect}",
            sol.objective
        );
        checked += 1;
    }
}

#[test]
fn solver_is_bitwise_deterministic_across_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let inst = random_grid_instance(&mut rng, 2, 4);
    let e = build_energy_matrix(&inst).unwrap();
    let a = solve_max_lifetime(&inst, &e).unwrap();
    let b = solve_max_lifetime(&inst, &e).unwrap();
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    for (ra, rb) in a.flow.entries.iter().zip(&b.flow.entries) {
        for (va, vb) in ra.iter().zip(rb) {
            assert_eq!(va.to_bits(), vb.to_bits());
        }
    }
}
