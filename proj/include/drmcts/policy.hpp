#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "drmcts/rng.hpp"
#include "drmcts/tictactoe.hpp"

namespace drmcts {

struct NoLegalAction : std::logic_error {
    using std::logic_error::logic_error;
};

struct InvalidTemperature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Discrete distribution over the legal actions of one state. Probabilities
// sum to 1 and are non-negative; the support is ordered.
struct PolicyDistribution {
    std::vector<ActionId> support;
    std::vector<double> probs;

    // 0 for actions outside the support.
    double prob_of(ActionId a) const;
    ActionId sample(Rng& rng) const;
};

// Deterministic rollout policy: center, corners, then the remaining squares,
// first available wins. An RNG may be supplied for the fallback branch
// (unreachable on a 3x3 board, where the preference list covers every cell).
ActionId heuristic_action(const GameState& state, Rng* rng = nullptr);

// One-hot distribution on heuristic_action over the legal support.
PolicyDistribution heuristic_distribution(const GameState& state);

// result(a) = lambda/|A| + (1-lambda) * base(a).
PolicyDistribution mix_with_uniform(const PolicyDistribution& base, double lambda);

// Softmax over Q-values at temperature tau, with max-subtraction.
PolicyDistribution target_policy(const std::vector<std::pair<ActionId, double>>& q_values,
                                 double tau);

// The effective behavior policy for rollouts and importance ratios:
// the one-hot heuristic smoothed with a lambda-uniform mixture, which keeps
// every legal action's probability at least lambda/|A|.
PolicyDistribution smoothed_behavior(const GameState& state, double lambda);

}  // namespace drmcts
