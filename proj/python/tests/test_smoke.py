"""End-to-end smoke tests for the python bindings."""

import pytest

import drmcts


def test_game_basics():
    state = drmcts.GameState()
    assert not drmcts.is_terminal(state)
    assert drmcts.legal_actions(state) == list(range(9))
    state = drmcts.apply_move(state, 4)
    assert state.to_move == drmcts.Player.O
    assert 4 not in drmcts.legal_actions(state)
    assert isinstance(drmcts.render(state), str)


def test_minimax_empty_board_is_a_draw():
    result = drmcts.minimax_value(drmcts.GameState())
    assert result.value == 0.5
    assert len(result.optimal_actions) == 9


def test_estimator_collapse_on_policy():
    traj = drmcts.Trajectory()
    for reward in (0.0, 0.5, 1.0):
        step = drmcts.TrajectoryStep()
        step.reward = reward
        step.pi_e = 0.25
        step.pi_b = 0.25
        traj.steps = traj.steps + [step]
    ret = sum(0.9**t * r for t, r in enumerate((0.0, 0.5, 1.0)))
    assert drmcts.v_is(traj, 0.9) == pytest.approx(ret, abs=1e-12)
    assert drmcts.v_step_is(traj, 0.9) == pytest.approx(ret, abs=1e-12)


def test_hybrid_endpoints():
    assert drmcts.v_hybrid(0.8, 0.2, 1.0) == 0.8
    assert drmcts.v_hybrid(0.8, 0.2, 0.0) == 0.2


def test_run_search_finds_the_winning_move():
    state = drmcts.GameState()
    # X: 0, 1 with 2 open on the top row; O elsewhere.
    for move in (0, 4, 1, 5):
        state = drmcts.apply_move(state, move)
    config = drmcts.EstimatorConfig()
    config.kind = drmcts.EstimatorKind.DR
    budget = drmcts.SearchBudget()
    budget.iterations = 100
    result = drmcts.run_search(state, config, budget, seed=3)
    assert result.best_action == 2
    assert result.iterations_run == 100


def test_play_game_is_deterministic():
    a = drmcts.play_game("dr", "mcts", rollouts=30, seed=11)
    b = drmcts.play_game("dr", "mcts", rollouts=30, seed=11)
    assert a.moves == b.moves
    assert a.outcome == b.outcome


def test_validation_collapse_suite_passes():
    report = drmcts.run_validation("collapse", samples=500, seed=7)
    assert report.all_pass()
    assert all(line.pass_ for line in report.lines)


def test_small_tournament_accounting():
    rows = drmcts.run_tournament("dr", "mcts", rollouts=[10], games=4, seed=9)
    assert len(rows) == 1
    row = rows[0]
    assert row.wins_a + row.wins_b + row.draws == 4
    assert row.win_rate_a == pytest.approx(row.wins_a / 4)
