#include "drmcts/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace drmcts {

void EstimatorConfig::validate() const {
    if (beta < 0.0 || beta > 1.0) throw BetaOutOfRange("beta must lie in [0,1]");
    if (tau <= 0.0) throw std::invalid_argument("tau must be positive");
    if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in (0,1]");
    if (c < 0.0) throw std::invalid_argument("c must be non-negative");
    if (k_folds < 2) throw InvalidK("k_folds must be at least 2");
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0,1]");
    if (rho_clip && *rho_clip <= 0.0) throw std::invalid_argument("rho_clip must be positive");
}

std::vector<double> cumulative_ratios(const Trajectory& traj, std::optional<double> rho_clip) {
    std::vector<double> out;
    out.reserve(traj.steps.size());
    double rho = 1.0;
    for (const TrajectoryStep& step : traj.steps) {
        if (step.pi_b <= 0.0) {
            throw ZeroBehaviorProbability("behavior probability must be positive");
        }
        rho *= step.pi_e / step.pi_b;
        if (rho_clip) rho = std::clamp(rho, 0.0, *rho_clip);
        out.push_back(rho);
    }
    return out;
}

double v_mcts(std::span<const double> reward_samples) {
    if (reward_samples.empty()) throw EmptySample("v_mcts on an empty sample");
    const double total = std::accumulate(reward_samples.begin(), reward_samples.end(), 0.0);
    return total / static_cast<double>(reward_samples.size());
}

double v_is(const Trajectory& traj, double gamma, std::optional<double> rho_clip) {
    const auto ratios = cumulative_ratios(traj, rho_clip);
    double ret = 0.0;
    double disc = 1.0;
    for (const TrajectoryStep& step : traj.steps) {
        ret += disc * step.reward;
        disc *= gamma;
    }
    const double rho_full = ratios.empty() ? 1.0 : ratios.back();
    return rho_full * ret;
}

double v_step_is(const Trajectory& traj, double gamma, std::optional<double> rho_clip) {
    const auto ratios = cumulative_ratios(traj, rho_clip);
    double out = 0.0;
    double disc = 1.0;
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
        out += disc * ratios[t] * traj.steps[t].reward;
        disc *= gamma;
    }
    return out;
}

double v_dr(const Trajectory& traj, double gamma, std::optional<double> rho_clip) {
    const auto ratios = cumulative_ratios(traj, rho_clip);
    double out = traj.v_hat_root;
    double disc = 1.0;
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
        const TrajectoryStep& step = traj.steps[t];
        out += disc * ratios[t] * (step.reward + gamma * step.v_hat_next - step.q_hat);
        disc *= gamma;
    }
    return out;
}

double v_hybrid(double v_mcts_val, double v_dr_val, double beta) {
    if (beta < 0.0 || beta > 1.0) throw BetaOutOfRange("beta must lie in [0,1]");
    return beta * v_mcts_val + (1.0 - beta) * v_dr_val;
}

double v_hat(const std::vector<std::pair<double, std::span<const double>>>& edges) {
    double out = 0.0;
    for (const auto& [prob, samples] : edges) {
        if (samples.empty()) continue;  // weight times 0
        out += prob * v_mcts(samples);
    }
    return out;
}

double q_hat_kfold(std::span<const double> rewards, int k) {
    if (k < 2) throw InvalidK("k must be at least 2");
    if (rewards.empty()) return 0.0;
    const int n = static_cast<int>(rewards.size());
    if (n < k) return v_mcts(rewards);

    // Contiguous folds in arrival order; the first n % k folds are one longer.
    const int base = n / k;
    const int extra = n % k;
    double fold_mean_sum = 0.0;
    int pos = 0;
    for (int fold = 0; fold < k; ++fold) {
        const int size = base + (fold < extra ? 1 : 0);
        fold_mean_sum += v_mcts(rewards.subspan(static_cast<std::size_t>(pos),
                                                static_cast<std::size_t>(size)));
        pos += size;
    }
    return fold_mean_sum / static_cast<double>(k);
}

}  // namespace drmcts
