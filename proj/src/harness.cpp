#include "drmcts/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "drmcts/oracle.hpp"

namespace drmcts {

namespace {

const char* kind_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Mcts: return "mcts";
        case EstimatorKind::StepIs: return "is";
        case EstimatorKind::Dr: return "dr";
    }
    return "?";
}

nlohmann::json estimator_to_json(const EstimatorConfig& config) {
    nlohmann::json j{
        {"kind", kind_name(config.kind)}, {"beta", config.beta},   {"tau", config.tau},
        {"gamma", config.gamma},          {"c", config.c},         {"k_folds", config.k_folds},
        {"lambda", config.lambda},
    };
    if (config.rho_clip) {
        j["rho_clip"] = *config.rho_clip;
    } else {
        j["rho_clip"] = nullptr;
    }
    return j;
}

std::uint64_t game_seed(const TournamentConfig& config, int rollouts, int index) {
    return config.base_seed ^ mix_seed(static_cast<std::uint64_t>(rollouts),
                                       static_cast<std::uint64_t>(index));
}

}  // namespace

TournamentResult run_tournament(const TournamentConfig& config) {
    config.algo_a.validate();
    config.algo_b.validate();
    if (config.games_per_setting < 1) {
        throw std::invalid_argument("games_per_setting must be at least 1");
    }
    if (config.rollout_counts.empty()) {
        throw std::invalid_argument("rollout_counts must be non-empty");
    }
    for (int r : config.rollout_counts) {
        if (r < 1) throw std::invalid_argument("rollout counts must be at least 1");
    }

    const int n_threads =
        config.threads > 0 ? config.threads
                           : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    TournamentResult result;
    for (const int rollouts : config.rollout_counts) {
        std::vector<GameSummary> games(static_cast<std::size_t>(config.games_per_setting));
        std::atomic<int> next{0};
        const auto worker = [&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= config.games_per_setting) return;
                const bool a_played_x = i % 2 == 0;
                const SearchBudget budget{rollouts, config.max_rollout_depth};
                const ConfiguredSearcher a{config.algo_a, budget};
                const ConfiguredSearcher b{config.algo_b, budget};
                const std::uint64_t seed = game_seed(config, rollouts, i);
                const GameRecord record =
                    a_played_x ? play_game(a, b, seed) : play_game(b, a, seed);
                games[static_cast<std::size_t>(i)] = {rollouts, i, a_played_x, record.outcome};
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();

        TournamentRow row;
        row.rollouts = rollouts;
        row.base_seed = config.base_seed;
        for (const GameSummary& g : games) {
            if (g.outcome == GameOutcome::Draw) {
                row.draws += 1;
            } else {
                const bool x_won = g.outcome == GameOutcome::XWins;
                if (x_won == g.a_played_x) {
                    row.wins_a += 1;
                } else {
                    row.wins_b += 1;
                }
            }
        }
        row.win_rate_a = static_cast<double>(row.wins_a) / config.games_per_setting;
        row.win_rate_b = static_cast<double>(row.wins_b) / config.games_per_setting;
        result.rows.push_back(row);
        result.games.insert(result.games.end(), games.begin(), games.end());

        // Emit rows as settings complete so partial runs leave usable output.
        if (!config.output_path.empty()) {
            write_results(result.rows, config, config.output_path);
        }
    }
    return result;
}

std::string rows_to_csv(const std::vector<TournamentRow>& rows, const TournamentConfig& config) {
    std::string out =
        "rollouts,algo_a,algo_b,wins_a,wins_b,draws,win_rate_a,win_rate_b,seed\n";
    char buf[256];
    for (const TournamentRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%s,%d,%d,%d,%.4f,%.4f,%llu\n", row.rollouts,
                      config.name_a.c_str(), config.name_b.c_str(), row.wins_a, row.wins_b,
                      row.draws, row.win_rate_a, row.win_rate_b,
                      static_cast<unsigned long long>(row.base_seed));
        out += buf;
    }
    return out;
}

std::string config_to_json(const TournamentConfig& config) {
    nlohmann::json j{
        {"algo_a", estimator_to_json(config.algo_a)},
        {"algo_b", estimator_to_json(config.algo_b)},
        {"name_a", config.name_a},
        {"name_b", config.name_b},
        {"rollout_counts", config.rollout_counts},
        {"games_per_setting", config.games_per_setting},
        {"base_seed", config.base_seed},
        {"output_path", config.output_path},
        {"max_rollout_depth", config.max_rollout_depth},
    };
    return j.dump(2) + "\n";
}

void write_results(const std::vector<TournamentRow>& rows, const TournamentConfig& config,
                   const std::string& path) {
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw IoError("cannot open output file: " + path);
        out << rows_to_csv(rows, config);
        if (!out) throw IoError("failed writing output file: " + path);
    }
    {
        const std::string json_path = path + ".json";
        std::ofstream out(json_path, std::ios::trunc);
        if (!out) throw IoError("cannot open output file: " + json_path);
        out << config_to_json(config);
        if (!out) throw IoError("failed writing output file: " + json_path);
    }
}

bool ValidationReport::all_pass() const {
    for (const ValidationLine& line : lines) {
        if (!line.pass) return false;
    }
    return true;
}

std::string ValidationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = all_pass();
    j["assertions"] = nlohmann::json::array();
    for (const ValidationLine& line : lines) {
        j["assertions"].push_back({{"name", line.name},
                                   {"measured", line.measured},
                                   {"relation", line.relation},
                                   {"threshold", line.threshold},
                                   {"pass", line.pass}});
    }
    return j.dump(2) + "\n";
}

namespace {

void assert_le(ValidationReport& report, const std::string& name, double measured,
               double threshold) {
    report.lines.push_back({name, measured, threshold, "<=", measured <= threshold});
}

void assert_lt(ValidationReport& report, const std::string& name, double measured,
               double threshold) {
    report.lines.push_back({name, measured, threshold, "<", measured < threshold});
}

ValidationReport collapse_suite(std::uint64_t seed) {
    ValidationReport report;
    report.suite = "collapse";
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> prob(0.1, 0.9);
    const double gamma = 0.9;

    // On-policy collapse: both IS forms equal the plain discounted return.
    {
        Trajectory traj;
        double ret = 0.0;
        double disc = 1.0;
        for (int t = 0; t < 6; ++t) {
            TrajectoryStep step;
            step.reward = unit(rng);
            step.pi_b = prob(rng);
            step.pi_e = step.pi_b;
            traj.steps.push_back(step);
            ret += disc * step.reward;
            disc *= gamma;
        }
        assert_le(report, "on-policy v_is equals discounted return",
                  std::abs(v_is(traj, gamma) - ret), 1e-12);
        assert_le(report, "on-policy v_step_is equals discounted return",
                  std::abs(v_step_is(traj, gamma) - ret), 1e-12);
    }

    // Perfect-model collapse: the DR correction telescopes away.
    {
        Trajectory traj;
        traj.v_hat_root = unit(rng);
        for (int t = 0; t < 6; ++t) {
            TrajectoryStep step;
            step.reward = unit(rng);
            step.pi_b = prob(rng);
            step.pi_e = prob(rng);  // arbitrary ratios
            step.v_hat_next = t + 1 < 6 ? unit(rng) : 0.0;
            step.q_hat = step.reward + gamma * step.v_hat_next;
            traj.steps.push_back(step);
        }
        assert_le(report, "perfect-model v_dr equals v_hat_root",
                  std::abs(v_dr(traj, gamma) - traj.v_hat_root), 1e-12);
    }

    // Hybrid endpoints.
    {
        const double x = unit(rng);
        const double y = unit(rng);
        assert_le(report, "v_hybrid at beta=1 equals v_mcts",
                  std::abs(v_hybrid(x, y, 1.0) - x), 1e-12);
        assert_le(report, "v_hybrid at beta=0 equals v_dr",
                  std::abs(v_hybrid(x, y, 0.0) - y), 1e-12);
    }

    // Softmax shift invariance.
    {
        std::vector<std::pair<ActionId, double>> q;
        for (int a = 0; a < 5; ++a) q.emplace_back(a, unit(rng));
        const double shift = 3.7;
        auto shifted = q;
        for (auto& [a, v] : shifted) v += shift;
        const PolicyDistribution p1 = target_policy(q, 0.7);
        const PolicyDistribution p2 = target_policy(shifted, 0.7);
        double max_gap = 0.0;
        for (std::size_t i = 0; i < p1.probs.size(); ++i) {
            max_gap = std::max(max_gap, std::abs(p1.probs[i] - p2.probs[i]));
        }
        assert_le(report, "target_policy invariant to constant Q shift", max_gap, 1e-12);
    }

    // Equal-size folds reproduce the plain mean.
    {
        std::vector<double> rewards;
        for (int i = 0; i < 12; ++i) rewards.push_back(unit(rng));
        assert_le(report, "equal-fold q_hat_kfold equals plain mean",
                  std::abs(q_hat_kfold(rewards, 3) - v_mcts(rewards)), 1e-12);
    }
    return report;
}

ValidationReport unbiasedness_suite(int n_samples, std::uint64_t seed) {
    ValidationReport report;
    report.suite = "unbiasedness";
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const PolicyTable pi_b = default_behavior_policy(mdp);
    const DpValueTable dp = dp_evaluate(mdp, pi_e, 1.0);
    const double truth = dp.v(mdp.initial_state, 0);

    const auto check = [&](const std::string& name, BenchConfig config) {
        const EstimatorStats stats = measure_estimator(mdp, pi_e, pi_b, config, n_samples, seed);
        assert_le(report, name, std::abs(stats.mean - truth), 4.0 * stats.std_error);
    };
    check("step-IS mean matches DP value",
          {BenchEstimator::StepIs, QhatRegime::Zero, 0.0, 0.5, 1.0, std::nullopt});
    check("DR mean matches DP value (exact model)",
          {BenchEstimator::Dr, QhatRegime::Exact, 0.0, 0.5, 1.0, std::nullopt});
    check("DR mean matches DP value (noisy model, eps=0.01)",
          {BenchEstimator::Dr, QhatRegime::Noisy, 0.01, 0.5, 1.0, std::nullopt});
    check("DR mean matches DP value (all-zero model)",
          {BenchEstimator::Dr, QhatRegime::Zero, 0.0, 0.5, 1.0, std::nullopt});
    check("hybrid mean matches DP value (exact model)",
          {BenchEstimator::Hybrid, QhatRegime::Exact, 0.0, 0.5, 1.0, std::nullopt});
    return report;
}

ValidationReport variance_suite(int n_samples, std::uint64_t seed) {
    ValidationReport report;
    report.suite = "variance";
    const FiniteMdp mdp = default_validation_mdp();
    const PolicyTable pi_e = default_target_policy(mdp);
    const PolicyTable pi_b = default_behavior_policy(mdp);

    const EstimatorStats mc = measure_estimator(
        mdp, pi_e, pi_b,
        {BenchEstimator::OnPolicyReturn, QhatRegime::Exact, 0.0, 0.5, 1.0, std::nullopt},
        n_samples, seed);

    const auto hybrid_var = [&](double epsilon) {
        const QhatRegime regime = epsilon == 0.0 ? QhatRegime::Exact : QhatRegime::Noisy;
        return measure_estimator(
                   mdp, pi_e, pi_b,
                   {BenchEstimator::Hybrid, regime, epsilon, 0.5, 1.0, std::nullopt}, n_samples,
                   seed)
            .variance;
    };
    const double var0 = hybrid_var(0.0);
    const double var1 = hybrid_var(0.005);
    const double var2 = hybrid_var(0.01);

    assert_lt(report, "Var(hybrid, exact model) below Var(on-policy MC return)", var0,
              mc.variance);
    assert_le(report, "Var(hybrid) non-decreasing from eps=0 to eps=0.005", var0, var1);
    assert_le(report, "Var(hybrid) non-decreasing from eps=0.005 to eps=0.01", var1, var2);
    return report;
}

}  // namespace

ValidationReport run_validation(const std::string& suite, int n_samples, std::uint64_t seed) {
    if (suite == "collapse") return collapse_suite(seed);
    if (suite == "unbiasedness") return unbiasedness_suite(n_samples, seed);
    if (suite == "variance") return variance_suite(n_samples, seed);
    throw UnknownSuite("unknown validation suite: " + suite);
}

}  // namespace drmcts
