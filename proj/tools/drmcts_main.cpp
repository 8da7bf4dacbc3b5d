#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drmcts/harness.hpp"

namespace {

drmcts::EstimatorKind parse_kind(const std::string& name) {
    if (name == "mcts") return drmcts::EstimatorKind::Mcts;
    if (name == "is") return drmcts::EstimatorKind::StepIs;
    if (name == "dr") return drmcts::EstimatorKind::Dr;
    throw CLI::ValidationError("algo must be one of mcts|is|dr, got '" + name + "'");
}

void print_report(const drmcts::ValidationReport& report) {
    for (const auto& line : report.lines) {
        std::printf("[%s] %s: measured %.6g %s %.6g\n", line.pass ? "PASS" : "FAIL",
                    line.name.c_str(), line.measured, line.relation.c_str(), line.threshold);
    }
    std::fputs(report.to_json().c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doubly robust Monte Carlo tree search: tournaments and estimator validation"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    // tournament
    auto* tournament = app.add_subcommand(
        "tournament", "Play seeded head-to-head games between two estimator kinds");
    std::string algo_a = "dr";
    std::string algo_b = "mcts";
    std::vector<int> rollouts{20, 40, 60, 80, 100};
    int games = 100;
    drmcts::EstimatorConfig shared;
    double rho_clip = 10.0;
    std::uint64_t seed = 42;
    std::string out_path = "results.csv";
    int threads = 0;
    tournament->add_option("--algo-a", algo_a, "First algorithm: mcts|is|dr")
        ->capture_default_str();
    tournament->add_option("--algo-b", algo_b, "Second algorithm: mcts|is|dr")
        ->capture_default_str();
    tournament->add_option("--rollouts", rollouts, "Search iterations per move, one cell each")
        ->delimiter(',')
        ->capture_default_str();
    tournament->add_option("--games", games, "Games per rollout setting")->capture_default_str();
    tournament->add_option("--beta", shared.beta, "Hybrid weight on the rollout estimate")
        ->capture_default_str();
    tournament->add_option("--tau", shared.tau, "Target-policy softmax temperature")
        ->capture_default_str();
    tournament->add_option("--gamma", shared.gamma, "Discount factor")->capture_default_str();
    tournament->add_option("--c", shared.c, "PUCT exploration constant")->capture_default_str();
    tournament->add_option("--lambda", shared.lambda, "Uniform smoothing of the behavior policy")
        ->capture_default_str();
    tournament->add_option("--kfolds", shared.k_folds, "Folds for the Q-hat estimate")
        ->capture_default_str();
    tournament->add_option("--rho-clip", rho_clip, "Cap on cumulative importance ratios (0: off)")
        ->capture_default_str();
    tournament->add_option("--seed", seed, "Base seed")->capture_default_str();
    tournament->add_option("--out", out_path, "CSV output path")->capture_default_str();
    tournament->add_option("--threads", threads, "Worker threads (0: hardware)")
        ->capture_default_str();

    // validate
    auto* validate = app.add_subcommand(
        "validate", "Run the estimator validation benches against exact oracles");
    std::string suite = "collapse";
    int samples = 20000;
    std::uint64_t validate_seed = 7;
    validate->add_option("--suite", suite, "unbiasedness|variance|collapse")
        ->capture_default_str();
    validate->add_option("--samples", samples, "Trajectories per bench")->capture_default_str();
    validate->add_option("--seed", validate_seed, "Bench seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tournament->parsed()) {
            drmcts::TournamentConfig config;
            config.algo_a = shared;
            config.algo_a.kind = parse_kind(algo_a);
            config.algo_b = shared;
            config.algo_b.kind = parse_kind(algo_b);
            config.algo_a.rho_clip = config.algo_b.rho_clip =
                rho_clip > 0.0 ? std::optional<double>(rho_clip) : std::nullopt;
            config.name_a = algo_a;
            config.name_b = algo_b;
            config.rollout_counts = rollouts;
            config.games_per_setting = games;
            config.base_seed = seed;
            config.output_path = out_path;
            config.threads = threads;

            const drmcts::TournamentResult result = drmcts::run_tournament(config);
            std::fputs(drmcts::rows_to_csv(result.rows, config).c_str(), stdout);
            std::printf("wrote %s and %s.json\n", out_path.c_str(), out_path.c_str());
            return 0;
        }
        const drmcts::ValidationReport report =
            drmcts::run_validation(suite, samples, validate_seed);
        print_report(report);
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
