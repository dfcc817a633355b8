use std::f64::consts::{FRAC_PI_2, PI};

use qgame::search::{
    best_response, entanglement_sweep, find_quantum_ne, find_quantum_ne_with, write_sweep_csv,
    GridPoint, GridSpec, Role, SearchOptions, SWEEP_CSV_HEADER,
};
use qgame::{
    build_unitary, classical_nash, EntanglementParam, GameMatrix, Unitary2,
};

fn pd() -> GameMatrix {
    GameMatrix::prisoners_dilemma()
}

fn gamma(v: f64) -> EntanglementParam {
    EntanglementParam::new(v).unwrap()
}

#[test]
fn best_response_to_q_hat_is_q_hat() {
    let grid = GridSpec::default();
    for role in [Role::Alice, Role::Bob] {
        let br = best_response(&pd(), &Unitary2::q_hat(), EntanglementParam::maximal(), &grid, role);
        assert!(br.payoff <= 3.0 + 1e-9);
        assert!((br.payoff - 3.0).abs() < 1e-9);
        let q_pt = GridPoint {
            theta_idx: 0,
            phi_idx: 50,
        };
        assert!(br.ties.contains(&q_pt), "{:?}", br.ties);
    }
}

#[test]
fn unentangled_best_response_to_defection_is_defection() {
    let grid = GridSpec::new(21, 11).unwrap();
    let defect = build_unitary(PI, 0.0).unwrap();
    let br = best_response(&pd(), &defect, gamma(0.0), &grid, Role::Alice);
    assert_eq!(br.strategy.theta(), PI);
    assert_eq!(br.point.theta_idx, 20);
    // phi is irrelevant without entanglement, so every phi ties.
    assert_eq!(br.ties.len(), 11);
    assert_eq!(br.point.phi_idx, 0);
}

#[test]
fn constant_game_everything_ties() {
    let flat = GameMatrix::new(2.0, 2.0, 2.0, 2.0).unwrap();
    let grid = GridSpec::new(9, 5).unwrap();
    let br = best_response(&flat, &Unitary2::q_hat(), gamma(0.7), &grid, Role::Bob);
    assert_eq!(br.ties.len(), grid.len());
    assert_eq!(br.point, GridPoint { theta_idx: 0, phi_idx: 0 });

    let found = find_quantum_ne(&flat, gamma(0.7), &grid, 1e-6);
    assert_eq!(found.len(), 1, "all pairs form one cluster");
    // 45 symmetric pairs plus every ordered pair of distinct coarse points.
    let coarse = 5 * 3;
    assert_eq!(found[0].cluster_size, grid.len() + coarse * (coarse - 1));
}

#[test]
fn q_hat_pair_is_found_at_maximal_entanglement() {
    let grid = GridSpec::default();
    let found = find_quantum_ne(&pd(), EntanglementParam::maximal(), &grid, 1e-6);
    let q = found
        .iter()
        .find(|ne| {
            ne.point_a == GridPoint { theta_idx: 0, phi_idx: 50 }
                && ne.point_b == GridPoint { theta_idx: 0, phi_idx: 50 }
        })
        .expect("(Q, Q) reported");
    assert!((q.payoffs.pi_a - 3.0).abs() < 1e-9);
    assert!((q.payoffs.pi_b - 3.0).abs() < 1e-9);
    assert!(q.max_improvement <= 1e-6);
}

#[test]
fn unentangled_real_grid_matches_classical_defection() {
    let grid = GridSpec::new(41, 1).unwrap();
    let found = find_quantum_ne(&pd(), gamma(0.0), &grid, 1e-6);
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].point_a.theta_idx, 40);
    assert_eq!(found[0].point_b.theta_idx, 40);
    assert!((found[0].payoffs.pi_a - 1.0).abs() < 1e-12);

    // Agreement with the classical solver under p = cos²(θ/2).
    let classical = classical_nash(&pd()).points();
    assert_eq!(classical.len(), 1);
    let p = (found[0].strategy_a.theta() / 2.0).cos().powi(2);
    assert!((p - classical[0].p).abs() <= grid.theta_pitch());
}

// Every reported equilibrium must survive a fresh best-response pass.
#[test]
fn reported_equilibria_reverify() {
    let grid = GridSpec::new(31, 16).unwrap();
    for g in [0.0, 0.4, FRAC_PI_2] {
        for game in [pd(), GameMatrix::new(2.0, 0.0, 0.0, 1.0).unwrap()] {
            let tol = 1e-6;
            for ne in find_quantum_ne(&game, gamma(g), &grid, tol) {
                let here = qgame::quantum::Protocol::new(gamma(g)).payoffs(
                    &game,
                    &ne.strategy_a,
                    &ne.strategy_b,
                );
                let ba = best_response(&game, &ne.strategy_b, gamma(g), &grid, Role::Alice);
                let bb = best_response(&game, &ne.strategy_a, gamma(g), &grid, Role::Bob);
                assert!(ba.payoff - here.pi_a <= tol);
                assert!(bb.payoff - here.pi_b <= tol);
            }
        }
    }
}

#[test]
fn refinement_does_not_blow_up_improvement() {
    let game = pd();
    let g = gamma(1.0);
    let coarse = GridSpec::new(13, 7).unwrap();
    let fine = coarse.refined();
    // Payoff derivatives: |dΠ/dθ| ≤ max|w|, |dΠ/dφ| ≤ 2 max|w|.
    let lipschitz = 2.0 * game.scale();
    let pitch = coarse.theta_pitch().max(coarse.phi_pitch());
    for ne in find_quantum_ne(&game, g, &coarse, 1e-6) {
        let here = qgame::quantum::Protocol::new(g).payoffs(&game, &ne.strategy_a, &ne.strategy_b);
        let ba = best_response(&game, &ne.strategy_b, g, &fine, Role::Alice);
        let bb = best_response(&game, &ne.strategy_a, g, &fine, Role::Bob);
        let refined = (ba.payoff - here.pi_a).max(bb.payoff - here.pi_b);
        assert!(refined <= ne.max_improvement + lipschitz * pitch);
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let grid = GridSpec::new(21, 11).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| find_quantum_ne(&pd(), gamma(1.2), &grid, 1e-6))
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn sweep_endpoints_match_single_runs() {
    let grid = GridSpec::new(21, 11).unwrap();
    let gammas: Vec<_> = qgame::search::linspace(0.0, FRAC_PI_2, 5)
        .unwrap()
        .into_iter()
        .map(gamma)
        .collect();
    let rows = entanglement_sweep(&pd(), &gammas, &grid, 1e-6).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.windows(2).all(|w| w[0].gamma_ent < w[1].gamma_ent));
    assert_eq!(rows[0].equilibria, find_quantum_ne(&pd(), gamma(0.0), &grid, 1e-6));
    assert_eq!(
        rows[4].equilibria,
        find_quantum_ne(&pd(), EntanglementParam::maximal(), &grid, 1e-6)
    );

    let single = entanglement_sweep(&pd(), &[EntanglementParam::maximal()], &grid, 1e-6).unwrap();
    assert_eq!(single[0].equilibria, rows[4].equilibria);

    assert!(entanglement_sweep(&pd(), &[], &grid, 1e-6).is_err());

    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
    let total: usize = rows.iter().map(|r| r.equilibria.len()).sum();
    assert_eq!(lines.count(), total);
}

#[test]
fn audit_stride_one_examines_all_pairs() {
    let grid = GridSpec::new(7, 3).unwrap();
    let flat = GameMatrix::new(1.0, 1.0, 1.0, 1.0).unwrap();
    let opts = SearchOptions {
        tol: 1e-9,
        audit_stride: 1,
    };
    let found = find_quantum_ne_with(&flat, gamma(0.3), &grid, &opts);
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].cluster_size, grid.len() * grid.len());
}
