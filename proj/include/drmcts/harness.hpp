#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drmcts/search.hpp"

namespace drmcts {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownSuite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TournamentConfig {
    EstimatorConfig algo_a;
    EstimatorConfig algo_b;
    std::string name_a = "dr";
    std::string name_b = "mcts";
    std::vector<int> rollout_counts{20, 40, 60, 80, 100};
    int games_per_setting = 100;
    std::uint64_t base_seed = 42;
    std::string output_path;  // empty: no files written
    int max_rollout_depth = 9;
    int threads = 0;  // 0: hardware concurrency
};

struct TournamentRow {
    int rollouts = 0;
    int wins_a = 0;
    int wins_b = 0;
    int draws = 0;
    double win_rate_a = 0.0;
    double win_rate_b = 0.0;
    std::uint64_t base_seed = 0;
};

struct GameSummary {
    int rollouts = 0;
    int index = 0;
    bool a_played_x = false;
    GameOutcome outcome = GameOutcome::Draw;
};

struct TournamentResult {
    std::vector<TournamentRow> rows;
    std::vector<GameSummary> games;  // in (rollouts, index) order
};

// Per-game seed derived from the base seed and a stable hash of the rollout
// count and the game index; algo_a takes X on even indices. Games within one
// setting run concurrently; rows come out in rollout-count order regardless.
TournamentResult run_tournament(const TournamentConfig& config);

// CSV with header rollouts,algo_a,algo_b,wins_a,wins_b,draws,win_rate_a,
// win_rate_b,seed (rates at 4 decimals) plus an adjacent <path>.json with the
// full configuration.
void write_results(const std::vector<TournamentRow>& rows, const TournamentConfig& config,
                   const std::string& path);

std::string rows_to_csv(const std::vector<TournamentRow>& rows, const TournamentConfig& config);
std::string config_to_json(const TournamentConfig& config);

struct ValidationLine {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  // e.g. "<=", "<", ">="
    bool pass = false;
};

struct ValidationReport {
    std::string suite;
    std::vector<ValidationLine> lines;

    bool all_pass() const;
    std::string to_json() const;
};

// suite is one of "unbiasedness", "variance", "collapse".
ValidationReport run_validation(const std::string& suite, int n_samples, std::uint64_t seed);

}  // namespace drmcts
