#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "drmcts/estimators.hpp"
#include "drmcts/rng.hpp"
#include "drmcts/tictactoe.hpp"
#include "drmcts/tree.hpp"

namespace drmcts {

struct TerminalRoot : std::logic_error {
    using std::logic_error::logic_error;
};

struct SearchBudget {
    int iterations = 100;
    int max_rollout_depth = 9;  // board size; rollouts terminate naturally
};

struct SearchResult {
    ActionId best_action = -1;
    std::vector<std::pair<ActionId, double>> root_q;
    int iterations_run = 0;

    // Fixed-format serialization, for reproducibility checks.
    std::string to_string() const;
};

struct RolloutResult {
    double value = 0.0;            // discounted return from `perspective`
    Trajectory traj;               // rollout steps with pi_e = pi_b and zero model fields
    std::vector<ActionId> actions; // one per step, for model lookups at the start
};

// Rolls out with the lambda-smoothed heuristic until terminal or max_depth.
// A terminal start returns its terminal value with an empty trajectory; a
// depth cutoff contributes value 0.
RolloutResult simulate(const GameState& start, double lambda, double gamma, int max_depth,
                       Player perspective, Rng& rng);

// One full search: per iteration PUCT selection, single-node expansion,
// heuristic rollout, estimator evaluation, and backpropagation. The backed-up
// value per iteration is the rollout return (Mcts), the step-wise IS estimate
// (StepIs), or the beta-weighted hybrid of rollout and DR estimates (Dr). The
// IS/DR trajectory is the rollout from the expanded node; where tree
// statistics exist along it (the expanded node itself) the target policy is
// the softmax over child Q-values, and off-tree steps are on-policy.
SearchResult run_search(const GameState& root, const EstimatorConfig& config,
                        const SearchBudget& budget, std::uint64_t seed);

enum class GameOutcome { XWins, OWins, Draw };

struct GameRecord {
    GameOutcome outcome = GameOutcome::Draw;
    std::vector<ActionId> moves;
};

struct ConfiguredSearcher {
    EstimatorConfig config;
    SearchBudget budget;
};

// Pluggable mover: state plus a per-move seed.
using MovePicker = std::function<ActionId(const GameState&, std::uint64_t)>;

GameRecord play_game_with(const MovePicker& mover_x, const MovePicker& mover_o,
                          std::uint64_t seed);

// Alternates run_search per move from the empty board; deterministic given
// the seed.
GameRecord play_game(const ConfiguredSearcher& algo_x, const ConfiguredSearcher& algo_o,
                     std::uint64_t seed);

}  // namespace drmcts
