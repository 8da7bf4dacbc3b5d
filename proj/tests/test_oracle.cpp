#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "drmcts/oracle.hpp"
#include "drmcts/rng.hpp"

using namespace drmcts;

namespace {

GameState board_from(const char* cells, Player to_move) {
    GameState s;
    for (int i = 0; i < 9; ++i) {
        s.cells[static_cast<std::size_t>(i)] =
            cells[i] == 'X' ? Cell::X : (cells[i] == 'O' ? Cell::O : Cell::Empty);
    }
    s.to_move = to_move;
    return s;
}

}  // namespace

TEST_CASE("minimax: the empty board is a draw under perfect play") {
    const MinimaxResult r = minimax_value(GameState{});
    CHECK(r.value == 0.5);
    CHECK(!r.optimal_actions.empty());
}

TEST_CASE("minimax spots an immediate win and the forced block") {
    // X to move with two in a row: completing at 2 wins outright.
    const GameState win_now = board_from("XX..OO...", Player::X);
    // Winning at 2 and the double-threat move 3 both force the win.
    const MinimaxResult w = minimax_value(win_now);
    CHECK(w.value == 1.0);
    CHECK(std::find(w.optimal_actions.begin(), w.optimal_actions.end(), 2) !=
          w.optimal_actions.end());

    // O threatens 3-4-5; X must block at 5 to save the draw.
    const GameState must_block = board_from("X..OO.X..", Player::X);
    const MinimaxResult b = minimax_value(must_block);
    CHECK(std::find(b.optimal_actions.begin(), b.optimal_actions.end(), 5) !=
          b.optimal_actions.end());
    CHECK(b.value >= 0.5);
}

TEST_CASE("minimax agrees with terminal_value on terminal states") {
    const GameState x_won = board_from("XXXOO....", Player::O);
    CHECK(minimax_value(x_won).value == 0.0);  // O to move, X already won
    CHECK(minimax_value(x_won).optimal_actions.empty());

    const GameState drawn = board_from("XOXXOOOXX", Player::X);
    CHECK(minimax_value(drawn).value == 0.5);
}

TEST_CASE("minimax values are consistent across one ply") {
    // v(s) = max over children of (1 - v(child)) for non-terminal s.
    Rng rng = make_rng(41);
    std::uniform_int_distribution<std::size_t> pick;
    for (int trial = 0; trial < 30; ++trial) {
        GameState state;
        std::uniform_int_distribution<int> depth_dist(0, 5);
        const int depth = depth_dist(rng);
        for (int d = 0; d < depth && !is_terminal(state); ++d) {
            const auto legal = legal_actions(state);
            pick.param(std::uniform_int_distribution<std::size_t>::param_type(0, legal.size() - 1));
            state = apply(state, legal[pick(rng)]);
        }
        if (is_terminal(state)) continue;
        double best = 0.0;
        for (ActionId a : legal_actions(state))
            best = std::max(best, 1.0 - minimax_value(apply(state, a)).value);
        CHECK(minimax_value(state).value == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("dp_evaluate hand examples") {
    FiniteMdp mdp;
    mdp.n_states = 2;
    mdp.n_actions = 2;
    mdp.horizon = 3;
    mdp.initial_state = 0;
    mdp.transition = {1, 0, 0, 1, 0, 1, 1, 0};
    mdp.rewards = {0, 0, 0, 0};
    PolicyTable uniform{2, 2, {0.5, 0.5, 0.5, 0.5}};

    SUBCASE("zero rewards give zero values everywhere") {
        const DpValueTable table = dp_evaluate(mdp, uniform, 0.9);
        for (int t = 0; t <= mdp.horizon; ++t)
            for (int s = 0; s < 2; ++s) CHECK(table.v(s, t) == 0.0);
    }

    SUBCASE("horizon one reduces to expected immediate reward") {
        mdp.horizon = 1;
        mdp.rewards = {0.2, 0.8, 0.0, 0.0};
        const DpValueTable table = dp_evaluate(mdp, uniform, 1.0);
        CHECK(table.v(0, 0) == doctest::Approx(0.5));
        CHECK(table.q(0, 0, 0) == doctest::Approx(0.2));
        CHECK(table.q(0, 1, 0) == doctest::Approx(0.8));
        CHECK(table.v(0, 1) == 0.0);
    }

    SUBCASE("deterministic chain accumulates discounted rewards") {
        mdp.rewards = {1.0, 1.0, 1.0, 1.0};
        PolicyTable stay{2, 2, {1.0, 0.0, 1.0, 0.0}};
        const DpValueTable table = dp_evaluate(mdp, stay, 0.5);
        CHECK(table.v(0, 0) == doctest::Approx(1.0 + 0.5 + 0.25));
    }
}

TEST_CASE("dp values satisfy the Bellman recursion on the default instance") {
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const double gamma = 0.95;
    const DpValueTable table = dp_evaluate(mdp, pi_e, gamma);
    for (int t = 0; t < mdp.horizon; ++t) {
        for (int s = 0; s < mdp.n_states; ++s) {
            double v = 0.0;
            for (int a = 0; a < mdp.n_actions; ++a) {
                double q = mdp.reward(s, a);
                for (int s2 = 0; s2 < mdp.n_states; ++s2)
                    q += gamma * mdp.trans(s, a, s2) * table.v(s2, t + 1);
                CHECK(std::abs(table.q(s, a, t) - q) <= 1e-12);
                v += pi_e.prob(s, a) * q;
            }
            CHECK(std::abs(table.v(s, t) - v) <= 1e-12);
        }
    }
    for (int s = 0; s < mdp.n_states; ++s) CHECK(table.v(s, mdp.horizon) == 0.0);
}

TEST_CASE("measure_estimator: on-policy return concentrates on the DP value") {
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const PolicyTable pi_b = default_behavior_policy(mdp);
    const DpValueTable table = dp_evaluate(mdp, pi_e, 1.0);

    BenchConfig config;
    config.estimator = BenchEstimator::OnPolicyReturn;
    const EstimatorStats stats = measure_estimator(mdp, pi_e, pi_b, config, 4000, 101);
    CHECK(stats.n == 4000);
    CHECK(stats.std_error > 0.0);
    CHECK(std::abs(stats.mean - table.v(mdp.initial_state, 0)) <= 4.0 * stats.std_error);
}

TEST_CASE("measure_estimator: exact-model DR is unbiased and beats step-IS variance") {
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const PolicyTable pi_b = default_behavior_policy(mdp);
    const DpValueTable table = dp_evaluate(mdp, pi_e, 1.0);

    BenchConfig dr;
    dr.estimator = BenchEstimator::Dr;
    dr.regime = QhatRegime::Exact;
    const EstimatorStats dr_stats = measure_estimator(mdp, pi_e, pi_b, dr, 20000, 55);
    CHECK(std::abs(dr_stats.mean - table.v(mdp.initial_state, 0)) <= 4.0 * dr_stats.std_error);

    BenchConfig is;
    is.estimator = BenchEstimator::StepIs;
    const EstimatorStats is_stats = measure_estimator(mdp, pi_e, pi_b, is, 20000, 55);
    CHECK(dr_stats.variance < is_stats.variance);
}

TEST_CASE("measure_estimator is deterministic in the seed and parallel-safe") {
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const PolicyTable pi_b = default_behavior_policy(mdp);
    BenchConfig config;
    config.estimator = BenchEstimator::StepIs;
    const EstimatorStats a = measure_estimator(mdp, pi_e, pi_b, config, 3000, 77);
    const EstimatorStats b = measure_estimator(mdp, pi_e, pi_b, config, 3000, 77);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    const EstimatorStats c = measure_estimator(mdp, pi_e, pi_b, config, 3000, 78);
    CHECK(a.mean != c.mean);
}
