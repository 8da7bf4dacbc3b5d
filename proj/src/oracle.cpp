#include "drmcts/oracle.hpp"

#include <cmath>
#include <future>
#include <thread>
#include <unordered_map>

namespace drmcts {

namespace {

class MinimaxSolver {
public:
    // Value from `perspective` on the 1/0.5/0 scale.
    double value_for(const GameState& state, Player perspective) {
        if (const auto tv = terminal_value(state, perspective)) return *tv;
        const std::uint64_t key =
            (static_cast<std::uint64_t>(encode(state)) << 1) |
            (perspective == Player::X ? 0u : 1u);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const bool maximizing = state.to_move == perspective;
        double best = maximizing ? -1.0 : 2.0;
        for (ActionId a : legal_actions(state)) {
            const double v = value_for(apply(state, a), perspective);
            best = maximizing ? std::max(best, v) : std::min(best, v);
        }
        memo_.emplace(key, best);
        return best;
    }

private:
    std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

MinimaxResult minimax_value(const GameState& state) {
    MinimaxSolver solver;
    MinimaxResult out;
    out.value = solver.value_for(state, state.to_move);
    if (const auto tv = terminal_value(state, state.to_move)) {
        out.value = *tv;
        return out;  // terminal: no actions
    }
    for (ActionId a : legal_actions(state)) {
        if (std::abs(solver.value_for(apply(state, a), state.to_move) - out.value) < 1e-12) {
            out.optimal_actions.push_back(a);
        }
    }
    return out;
}

DpValueTable dp_evaluate(const FiniteMdp& mdp, const PolicyTable& pi_e, double gamma) {
    DpValueTable dp;
    dp.n_states = mdp.n_states;
    dp.n_actions = mdp.n_actions;
    dp.horizon = mdp.horizon;
    dp.v_table.assign(static_cast<std::size_t>((mdp.horizon + 1) * mdp.n_states), 0.0);
    dp.q_table.assign(static_cast<std::size_t>(mdp.horizon * mdp.n_states * mdp.n_actions), 0.0);

    for (int t = mdp.horizon - 1; t >= 0; --t) {
        for (int s = 0; s < mdp.n_states; ++s) {
            double v = 0.0;
            for (int a = 0; a < mdp.n_actions; ++a) {
                double expected_next = 0.0;
                for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                    expected_next += mdp.trans(s, a, s2) * dp.v(s2, t + 1);
                }
                const double q = mdp.reward(s, a) + gamma * expected_next;
                dp.q_table[static_cast<std::size_t>((t * mdp.n_states + s) * mdp.n_actions + a)] =
                    q;
                v += pi_e.prob(s, a) * q;
            }
            dp.v_table[static_cast<std::size_t>(t * mdp.n_states + s)] = v;
        }
    }
    return dp;
}

namespace {

// Plug-in model fed to the DR estimator, indexed by time step.
struct PlugInModel {
    int n_states = 0;
    int n_actions = 0;
    int horizon = 0;
    std::vector<double> q;  // horizon * n_states * n_actions
    std::vector<double> v;  // (horizon + 1) * n_states, zero at t = horizon

    double q_at(int s, int a, int t) const {
        return q[static_cast<std::size_t>((t * n_states + s) * n_actions + a)];
    }
    double v_at(int s, int t) const {
        return v[static_cast<std::size_t>(t * n_states + s)];
    }
};

PlugInModel build_model(const FiniteMdp& mdp, const PolicyTable& pi_e, const DpValueTable& dp,
                        const BenchConfig& config) {
    PlugInModel model;
    model.n_states = mdp.n_states;
    model.n_actions = mdp.n_actions;
    model.horizon = mdp.horizon;
    model.q.assign(dp.q_table.size(), 0.0);
    model.v.assign(dp.v_table.size(), 0.0);
    if (config.regime == QhatRegime::Zero) return model;

    model.q = dp.q_table;
    // V-hat is kept pi_e-consistent with Q-hat (exact Q reproduces the DP V).
    for (int t = 0; t < mdp.horizon; ++t) {
        for (int s = 0; s < mdp.n_states; ++s) {
            double v = 0.0;
            for (int a = 0; a < mdp.n_actions; ++a) {
                v += pi_e.prob(s, a) * model.q_at(s, a, t);
            }
            model.v[static_cast<std::size_t>(t * mdp.n_states + s)] = v;
        }
    }
    return model;
}

double dr_sample(const FiniteMdp& mdp, const PolicyTable& pi_e, const PolicyTable& pi_b,
                 const PlugInModel& model, const BenchConfig& config, Rng& rng,
                 Rng& noise_rng) {
    std::vector<int> states;
    std::vector<int> actions;
    auto [ret, traj] =
        simulate_off_policy(mdp, pi_b, pi_e, config.gamma, rng, &states, &actions);
    (void)ret;
    // Zero-mean model error, drawn fresh per sample from a stream independent
    // of the trajectory. Scaling a fixed unit draw by epsilon keeps the same
    // underlying randomness across epsilon settings, so the measured variance
    // is exactly Var(base) + O(eps^2) under a shared seed.
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto noise = [&]() {
        return config.regime == QhatRegime::Noisy ? config.epsilon * unit(noise_rng) : 0.0;
    };
    for (int t = 0; t < traj.horizon(); ++t) {
        auto& step = traj.steps[static_cast<std::size_t>(t)];
        step.q_hat = model.q_at(states[static_cast<std::size_t>(t)],
                                actions[static_cast<std::size_t>(t)], t) +
                     noise();
        step.v_hat_next = model.v_at(states[static_cast<std::size_t>(t + 1)], t + 1) + noise();
    }
    traj.v_hat_root = model.v_at(states.front(), 0) + noise();
    return v_dr(traj, config.gamma, config.rho_clip);
}

struct Welford {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Welford& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double d = other.mean - mean;
        const long long total = n + other.n;
        mean += d * static_cast<double>(other.n) / static_cast<double>(total);
        m2 += other.m2 +
              d * d * static_cast<double>(n) * static_cast<double>(other.n) /
                  static_cast<double>(total);
        n = total;
    }
};

}  // namespace

EstimatorStats measure_estimator(const FiniteMdp& mdp, const PolicyTable& pi_e,
                                 const PolicyTable& pi_b, const BenchConfig& config,
                                 int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be positive");
    pi_b.check();
    for (double p : pi_b.probs) {
        if (p <= 0.0) throw ZeroBehaviorProbability("behavior policy must be strictly positive");
    }
    const DpValueTable dp = dp_evaluate(mdp, pi_e, config.gamma);
    const PlugInModel model = build_model(mdp, pi_e, dp, config);

    const auto sample_one = [&](int i) -> double {
        switch (config.estimator) {
            case BenchEstimator::OnPolicyReturn: {
                Rng rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
                return simulate(mdp, pi_e, config.gamma, rng).first;
            }
            case BenchEstimator::StepIs: {
                Rng rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
                auto [ret, traj] = simulate_off_policy(mdp, pi_b, pi_e, config.gamma, rng);
                (void)ret;
                return v_step_is(traj, config.gamma, config.rho_clip);
            }
            case BenchEstimator::Dr: {
                const std::uint64_t base = mix_seed(seed, static_cast<std::uint64_t>(i));
                Rng rng = make_rng(base);
                Rng noise_rng = make_rng(mix_seed(base, 3));
                return dr_sample(mdp, pi_e, pi_b, model, config, rng, noise_rng);
            }
            case BenchEstimator::Hybrid: {
                // Independent streams: an on-policy rollout and a DR sample.
                const std::uint64_t base = mix_seed(seed, static_cast<std::uint64_t>(i));
                Rng rng_mc = make_rng(mix_seed(base, 1));
                Rng rng_dr = make_rng(mix_seed(base, 2));
                Rng noise_rng = make_rng(mix_seed(base, 3));
                const double mc = simulate(mdp, pi_e, config.gamma, rng_mc).first;
                const double dr = dr_sample(mdp, pi_e, pi_b, model, config, rng_dr, noise_rng);
                return v_hybrid(mc, dr, config.beta);
            }
        }
        return 0.0;
    };

    // Fan out across workers; per-sample seeding makes the partition
    // order-independent and the merge exact.
    const unsigned n_workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    std::vector<std::future<Welford>> futures;
    const int chunk = (n_samples + static_cast<int>(n_workers) - 1) / static_cast<int>(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        const int lo = static_cast<int>(w) * chunk;
        const int hi = std::min(n_samples, lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&, lo, hi]() {
            Welford acc;
            for (int i = lo; i < hi; ++i) acc.add(sample_one(i));
            return acc;
        }));
    }
    Welford acc;
    for (auto& f : futures) acc.merge(f.get());

    EstimatorStats stats;
    stats.n = acc.n;
    stats.mean = acc.mean;
    stats.variance = acc.n > 1 ? acc.m2 / static_cast<double>(acc.n - 1) : 0.0;
    stats.std_error = std::sqrt(stats.variance / static_cast<double>(acc.n));
    return stats;
}

}  // namespace drmcts
