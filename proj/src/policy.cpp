#include "drmcts/policy.hpp"

#include <algorithm>
#include <cmath>

namespace drmcts {

double PolicyDistribution::prob_of(ActionId a) const {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] == a) return probs[i];
    }
    return 0.0;
}

ActionId PolicyDistribution::sample(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    for (std::size_t i = 0; i < support.size(); ++i) {
        u -= probs[i];
        if (u <= 0.0) return support[i];
    }
    return support.back();
}

ActionId heuristic_action(const GameState& state, Rng* rng) {
    static constexpr std::array<ActionId, 9> kPreferred{4, 0, 2, 6, 8, 1, 3, 5, 7};
    const auto legal = legal_actions(state);
    if (legal.empty()) throw NoLegalAction("heuristic_action on a terminal state");
    for (ActionId a : kPreferred) {
        if (std::find(legal.begin(), legal.end(), a) != legal.end()) return a;
    }
    // Fallback guard: uniform-random legal move.
    if (rng != nullptr) {
        std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
        return legal[pick(*rng)];
    }
    return legal.front();
}

PolicyDistribution heuristic_distribution(const GameState& state) {
    const auto legal = legal_actions(state);
    if (legal.empty()) throw NoLegalAction("heuristic_distribution on a terminal state");
    const ActionId chosen = heuristic_action(state);
    PolicyDistribution dist;
    dist.support = legal;
    dist.probs.assign(legal.size(), 0.0);
    for (std::size_t i = 0; i < legal.size(); ++i) {
        if (legal[i] == chosen) dist.probs[i] = 1.0;
    }
    return dist;
}

PolicyDistribution mix_with_uniform(const PolicyDistribution& base, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) {
        throw std::invalid_argument("mixture lambda must lie in [0,1]");
    }
    PolicyDistribution out;
    out.support = base.support;
    out.probs.resize(base.probs.size());
    const double uniform = lambda / static_cast<double>(base.support.size());
    for (std::size_t i = 0; i < base.probs.size(); ++i) {
        out.probs[i] = uniform + (1.0 - lambda) * base.probs[i];
    }
    return out;
}

PolicyDistribution target_policy(const std::vector<std::pair<ActionId, double>>& q_values,
                                 double tau) {
    if (tau <= 0.0) throw InvalidTemperature("softmax temperature must be positive");
    if (q_values.empty()) throw std::invalid_argument("target_policy needs at least one action");
    double max_q = q_values.front().second;
    for (const auto& [a, q] : q_values) max_q = std::max(max_q, q);

    PolicyDistribution out;
    out.support.reserve(q_values.size());
    out.probs.reserve(q_values.size());
    double total = 0.0;
    for (const auto& [a, q] : q_values) {
        const double w = std::exp((q - max_q) / tau);
        out.support.push_back(a);
        out.probs.push_back(w);
        total += w;
    }
    for (double& p : out.probs) p /= total;
    return out;
}

PolicyDistribution smoothed_behavior(const GameState& state, double lambda) {
    return mix_with_uniform(heuristic_distribution(state), lambda);
}

}  // namespace drmcts
