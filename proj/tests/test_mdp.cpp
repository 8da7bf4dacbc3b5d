#include <doctest.h>

#include <cmath>
#include <sstream>

#include "drmcts/mdp.hpp"

using namespace drmcts;

namespace {

// Two-state chain: action 0 stays, action 1 flips; reward 1 only for (s=0, a=1).
FiniteMdp tiny_mdp() {
    FiniteMdp mdp;
    mdp.n_states = 2;
    mdp.n_actions = 2;
    mdp.horizon = 2;
    mdp.initial_state = 0;
    mdp.transition = {
        1.0, 0.0,  // s=0, a=0
        0.0, 1.0,  // s=0, a=1
        0.0, 1.0,  // s=1, a=0
        1.0, 0.0,  // s=1, a=1
    };
    mdp.rewards = {0.0, 1.0, 0.0, 0.0};
    return mdp;
}

}  // namespace

TEST_CASE("check validates row sums and horizon") {
    FiniteMdp mdp = tiny_mdp();
    mdp.check();

    FiniteMdp bad_rows = tiny_mdp();
    bad_rows.transition[0] = 0.9;
    CHECK_THROWS_AS(bad_rows.check(), std::invalid_argument);

    FiniteMdp bad_horizon = tiny_mdp();
    bad_horizon.horizon = 0;
    CHECK_THROWS_AS(bad_horizon.check(), std::invalid_argument);

    FiniteMdp negative = tiny_mdp();
    negative.transition[0] = -0.5;
    negative.transition[1] = 1.5;
    CHECK_THROWS_AS(negative.check(), std::invalid_argument);
}

TEST_CASE("mdp_step is deterministic on degenerate rows and matches frequencies otherwise") {
    const FiniteMdp mdp = tiny_mdp();
    Rng rng = make_rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto [s2, r] = mdp_step(mdp, 0, 1, rng);
        CHECK(s2 == 1);
        CHECK(r == 1.0);
    }

    FiniteMdp stochastic = tiny_mdp();
    stochastic.transition = {
        0.3, 0.7,
        0.5, 0.5,
        1.0, 0.0,
        1.0, 0.0,
    };
    stochastic.check();
    int hits = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) hits += mdp_step(stochastic, 0, 0, rng).first == 1;
    CHECK(static_cast<double>(hits) / n == doctest::Approx(0.7).epsilon(0.02 / 0.7));

    CHECK_THROWS_AS(mdp_step(mdp, 5, 0, rng), std::out_of_range);
    CHECK_THROWS_AS(mdp_step(mdp, 0, 3, rng), std::out_of_range);
}

TEST_CASE("save/load round-trips bit-for-bit behavior") {
    const FiniteMdp mdp = default_validation_mdp();
    std::istringstream in(mdp.save());
    const FiniteMdp back = FiniteMdp::load(in);
    CHECK(back.n_states == mdp.n_states);
    CHECK(back.n_actions == mdp.n_actions);
    CHECK(back.horizon == mdp.horizon);
    CHECK(back.initial_state == mdp.initial_state);
    REQUIRE(back.transition.size() == mdp.transition.size());
    for (std::size_t i = 0; i < mdp.transition.size(); ++i)
        CHECK(back.transition[i] == doctest::Approx(mdp.transition[i]).epsilon(1e-15));
    for (std::size_t i = 0; i < mdp.rewards.size(); ++i)
        CHECK(back.rewards[i] == doctest::Approx(mdp.rewards[i]).epsilon(1e-15));
    back.check();

    std::istringstream garbage("not_a_key 3\n");
    CHECK_THROWS_AS(FiniteMdp::load(garbage), std::invalid_argument);
}

TEST_CASE("default validation instance is well formed") {
    const FiniteMdp mdp = default_validation_mdp();
    CHECK(mdp.n_states == 4);
    CHECK(mdp.n_actions == 2);
    CHECK(mdp.horizon == 3);
    mdp.check();
    for (int s = 0; s < mdp.n_states; ++s) {
        for (int a = 0; a < mdp.n_actions; ++a) {
            double row = 0.0;
            for (int s2 = 0; s2 < mdp.n_states; ++s2) row += mdp.trans(s, a, s2);
            CHECK(std::abs(row - 1.0) <= 1e-12);
        }
    }

    const PolicyTable pi_b = default_behavior_policy(mdp);
    const PolicyTable pi_e = default_target_policy(mdp);
    pi_b.check();
    pi_e.check();
    for (int s = 0; s < mdp.n_states; ++s) {
        for (int a = 0; a < mdp.n_actions; ++a) {
            CHECK(pi_b.prob(s, a) > 0.0);
            CHECK(pi_e.prob(s, a) > 0.0);
        }
    }
}

TEST_CASE("simulate runs the full horizon with on-policy ratios") {
    const FiniteMdp mdp = tiny_mdp();
    PolicyTable always_flip{2, 2, {0.0, 1.0, 0.0, 1.0}};
    Rng rng = make_rng(7);
    const auto [ret, traj] = simulate(mdp, always_flip, 0.5, rng);
    // s0 --a1--> s1 (r=1), s1 --a1--> s0 (r=0): return = 1 + 0.5*0 = 1.
    CHECK(ret == doctest::Approx(1.0));
    REQUIRE(traj.horizon() == 2);
    for (const auto& s : traj.steps) {
        CHECK(s.pi_e == s.pi_b);
        CHECK(s.q_hat == 0.0);
        CHECK(s.v_hat_next == 0.0);
    }
}

TEST_CASE("simulate_off_policy records states, actions, and both probabilities") {
    const FiniteMdp mdp = tiny_mdp();
    PolicyTable pi_b{2, 2, {0.5, 0.5, 0.5, 0.5}};
    PolicyTable pi_e{2, 2, {0.2, 0.8, 0.9, 0.1}};
    Rng rng = make_rng(13);
    std::vector<int> states;
    std::vector<int> actions;
    const auto [ret, traj] = simulate_off_policy(mdp, pi_b, pi_e, 1.0, rng, &states, &actions);
    (void)ret;
    REQUIRE(states.size() == 3);   // s_0..s_H
    REQUIRE(actions.size() == 2);  // a_0..a_{H-1}
    CHECK(states[0] == 0);
    REQUIRE(traj.horizon() == 2);
    for (int t = 0; t < 2; ++t) {
        CHECK(traj.steps[static_cast<std::size_t>(t)].pi_b == 0.5);
        CHECK(traj.steps[static_cast<std::size_t>(t)].pi_e ==
              doctest::Approx(pi_e.prob(states[static_cast<std::size_t>(t)],
                                        actions[static_cast<std::size_t>(t)])));
    }
}
