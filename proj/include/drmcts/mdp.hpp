#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "drmcts/estimators.hpp"
#include "drmcts/rng.hpp"

namespace drmcts {

// Time-invariant stochastic policy over a finite state/action space,
// stored as a dense row-per-state table.
struct PolicyTable {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> probs;  // n_states * n_actions, rows sum to 1

    double prob(int s, int a) const {
        return probs[static_cast<std::size_t>(s * n_actions + a)];
    }
    int sample(int s, Rng& rng) const;
    void check() const;
};

// Enumerable finite-horizon MDP. Transitions are dense rows over successor
// states; rewards are deterministic per (state, action).
struct FiniteMdp {
    int n_states = 0;
    int n_actions = 0;
    int horizon = 0;
    int initial_state = 0;
    std::vector<double> transition;  // n_states * n_actions * n_states
    std::vector<double> rewards;     // n_states * n_actions

    double trans(int s, int a, int s2) const {
        return transition[static_cast<std::size_t>((s * n_actions + a) * n_states + s2)];
    }
    double reward(int s, int a) const {
        return rewards[static_cast<std::size_t>(s * n_actions + a)];
    }

    // Throws if rows do not sum to 1 within 1e-12, probabilities leave [0,1],
    // or the horizon is not positive.
    void check() const;

    // Key-value text schema: n_states, n_actions, horizon, initial_state,
    // transition (flattened row-major), rewards (flattened).
    static FiniteMdp load(std::istream& in);
    static FiniteMdp load_file(const std::string& path);
    std::string save() const;
};

// Samples the successor from transition[s][a]; the reward is deterministic.
std::pair<int, double> mdp_step(const FiniteMdp& mdp, int s, int a, Rng& rng);

// Rolls out one episode from the initial state under `behavior` for the full
// horizon; returns the discounted return and the trajectory with pi_e = pi_b
// (model fields left at zero).
std::pair<double, Trajectory> simulate(const FiniteMdp& mdp, const PolicyTable& behavior,
                                       double gamma, Rng& rng);

// As above but records target-policy probabilities for off-policy evaluation.
// When given, `states` receives s_0..s_H (horizon + 1 entries) and `actions`
// receives a_0..a_{H-1}.
std::pair<double, Trajectory> simulate_off_policy(const FiniteMdp& mdp,
                                                  const PolicyTable& behavior,
                                                  const PolicyTable& target, double gamma,
                                                  Rng& rng, std::vector<int>* states = nullptr,
                                                  std::vector<int>* actions = nullptr);

// The default theorem-validation instance: 4 states, 2 actions, horizon 3,
// randomized but fixed-seed transitions and rewards.
FiniteMdp default_validation_mdp();
PolicyTable default_behavior_policy(const FiniteMdp& mdp);
PolicyTable default_target_policy(const FiniteMdp& mdp);

}  // namespace drmcts
