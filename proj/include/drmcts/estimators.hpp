#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace drmcts {

struct ZeroBehaviorProbability : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptySample : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BetaOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidK : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One step of an evaluation trajectory. Rewards and the plug-in model values
// (v_hat_next = V-hat of the next history, q_hat = Q-hat of the taken action)
// are all expressed in one fixed perspective chosen by the caller.
struct TrajectoryStep {
    double reward = 0.0;      // r_t
    double pi_e = 0.0;        // target policy probability of a_t
    double pi_b = 1.0;        // behavior policy probability of a_t; must be > 0
    double v_hat_next = 0.0;  // V-hat(h_{t+1}); 0 at terminal or unexpanded children
    double q_hat = 0.0;       // Q-hat(h_t, a_t); 0 for unseen edges
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    double v_hat_root = 0.0;  // V-hat(h_0)

    int horizon() const { return static_cast<int>(steps.size()); }
};

enum class EstimatorKind { Mcts, StepIs, Dr };

// Every tunable in one place. Defaults are the game-search defaults; the
// estimator benches construct their own configs with rho_clip disabled.
struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::Dr;
    double beta = 0.5;    // hybrid weight on the rollout estimate
    double tau = 1.0;     // softmax temperature of the target policy
    double gamma = 1.0;   // discount
    double c = 1.4142135623730951;  // PUCT exploration constant
    int k_folds = 3;      // folds for Q-hat
    double lambda = 0.1;  // uniform smoothing of the behavior policy
    std::optional<double> rho_clip = 10.0;  // cap on cumulative ratios; nullopt = off

    void validate() const;
};

// Running products rho_{1:t} of pi_e/pi_b, one entry per step; the entry at
// position t includes the ratio of the action taken at step t. When a clip is
// given the running product is clamped to [0, clip] as it accumulates.
std::vector<double> cumulative_ratios(const Trajectory& traj,
                                      std::optional<double> rho_clip = std::nullopt);

// Plain arithmetic mean of rollout rewards.
double v_mcts(std::span<const double> reward_samples);

// Trajectory-wise IS: full cumulative ratio times the discounted return.
double v_is(const Trajectory& traj, double gamma,
            std::optional<double> rho_clip = std::nullopt);

// Step-wise IS: each reward weighted only by the ratio product up to its step.
double v_step_is(const Trajectory& traj, double gamma,
                 std::optional<double> rho_clip = std::nullopt);

// Doubly robust: V-hat(h_0) plus importance-weighted model-correction terms.
double v_dr(const Trajectory& traj, double gamma,
            std::optional<double> rho_clip = std::nullopt);

// beta * v_mcts + (1 - beta) * v_dr.
double v_hybrid(double v_mcts_val, double v_dr_val, double beta);

// Target-policy-weighted average of per-action reward means; actions with no
// samples contribute zero.
double v_hat(const std::vector<std::pair<double, std::span<const double>>>& edges);

// k-fold estimate: mean of per-fold means over contiguous folds in arrival
// order. Falls back to the plain mean when fewer than k samples exist, and to
// 0 on an empty list.
double q_hat_kfold(std::span<const double> rewards, int k);

}  // namespace drmcts
