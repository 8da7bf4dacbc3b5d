#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drmcts/estimators.hpp"
#include "drmcts/mdp.hpp"
#include "drmcts/tictactoe.hpp"

namespace drmcts {

struct MinimaxResult {
    double value = 0.0;  // game-theoretic value for the player to move
    std::vector<ActionId> optimal_actions;
};

// Exact value by full enumeration with memoization. The value is from the
// perspective of the player to move; terminal states report terminal_value.
MinimaxResult minimax_value(const GameState& state);

// Exact finite-horizon policy evaluation tables: v(s,t) for t = 0..H and
// q(s,a,t) for t = 0..H-1, with v(s,H) = 0.
struct DpValueTable {
    int n_states = 0;
    int n_actions = 0;
    int horizon = 0;
    std::vector<double> v_table;  // (horizon + 1) * n_states
    std::vector<double> q_table;  // horizon * n_states * n_actions

    double v(int s, int t) const {
        return v_table[static_cast<std::size_t>(t * n_states + s)];
    }
    double q(int s, int a, int t) const {
        return q_table[static_cast<std::size_t>((t * n_states + s) * n_actions + a)];
    }
};

DpValueTable dp_evaluate(const FiniteMdp& mdp, const PolicyTable& pi_e, double gamma);

struct EstimatorStats {
    long long n = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased sample variance
    double std_error = 0.0;  // sqrt(variance / n)
};

enum class BenchEstimator { OnPolicyReturn, StepIs, Dr, Hybrid };

// How the plug-in model fed to the DR estimator is produced:
//   Exact  — the true DP values.
//   Noisy  — DP Q perturbed by additive uniform noise of magnitude epsilon,
//            with V kept pi_e-consistent with the perturbed Q.
//   Zero   — Q-hat and V-hat identically zero (fully wrong direct model).
enum class QhatRegime { Exact, Noisy, Zero };

struct BenchConfig {
    BenchEstimator estimator = BenchEstimator::Dr;
    QhatRegime regime = QhatRegime::Exact;
    double epsilon = 0.0;
    double beta = 0.5;
    double gamma = 1.0;
    std::optional<double> rho_clip;  // off by default: unbiasedness benches
};

// Samples n trajectories (under pi_b for the off-policy estimators, under
// pi_e for the on-policy return and the rollout half of the hybrid) and
// returns sample statistics of the per-trajectory estimate.
EstimatorStats measure_estimator(const FiniteMdp& mdp, const PolicyTable& pi_e,
                                 const PolicyTable& pi_b, const BenchConfig& config,
                                 int n_samples, std::uint64_t seed);

}  // namespace drmcts
