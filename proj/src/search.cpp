#include "drmcts/search.hpp"

#include <algorithm>
#include <cstdio>

namespace drmcts {

namespace {

// Eq-8 style weighted value of a node's children under its current target
// policy. Sampled edge means live in the node's own player-to-move
// perspective; `flip` converts them to the opposite one. Edges without
// samples contribute zero either way (no estimate, not a zero-value claim).
double node_v_hat(const TreeNode& node, const std::vector<ActionId>& legal, double tau,
                  bool flip = false) {
    const PolicyDistribution pi_e = target_policy(q_table(node, legal), tau);
    double total = 0.0;
    for (std::size_t i = 0; i < pi_e.support.size(); ++i) {
        const auto it = node.edges.find(pi_e.support[i]);
        if (it == node.edges.end() || it->second.reward_samples.empty()) continue;
        const double mean = it->second.q();
        total += pi_e.probs[i] * (flip ? 1.0 - mean : mean);
    }
    return total;
}

// Uniform-mixture weight for the PUCT selection prior. Kept lower than the
// rollout smoothing so the prior stays close to the near-deterministic
// heuristic, but nonzero so every legal action keeps an exploration bonus.
constexpr double kPriorMix = 0.05;

}  // namespace

std::string SearchResult::to_string() const {
    std::string out = "best=" + std::to_string(best_action) +
                      " iters=" + std::to_string(iterations_run);
    char buf[64];
    for (const auto& [a, q] : root_q) {
        std::snprintf(buf, sizeof(buf), " q[%d]=%.17g", a, q);
        out += buf;
    }
    return out;
}

RolloutResult simulate(const GameState& start, double lambda, double gamma, int max_depth,
                       Player perspective, Rng& rng) {
    RolloutResult out;
    if (const auto tv = terminal_value(start, perspective)) {
        out.value = *tv;
        return out;
    }
    GameState state = start;
    double disc = 1.0;
    for (int depth = 0; depth < max_depth; ++depth) {
        const PolicyDistribution behavior = smoothed_behavior(state, lambda);
        const ActionId a = behavior.sample(rng);
        TrajectoryStep step;
        step.pi_b = behavior.prob_of(a);
        step.pi_e = step.pi_b;  // off-tree: on-policy, ratio 1
        out.actions.push_back(a);
        const GameState next = apply(state, a);
        if (const auto tv = terminal_value(next, perspective)) {
            step.reward = *tv;
            out.traj.steps.push_back(step);
            out.value += disc * step.reward;
            return out;
        }
        out.traj.steps.push_back(step);
        disc *= gamma;
        state = next;
    }
    return out;  // depth cutoff: no value model, 0
}

SearchResult run_search(const GameState& root, const EstimatorConfig& config,
                        const SearchBudget& budget, std::uint64_t seed) {
    config.validate();
    if (budget.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (is_terminal(root)) throw TerminalRoot("run_search on a terminal state");

    TreeNode root_node;

    for (int iter = 0; iter < budget.iterations; ++iter) {
        Rng rollout_rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(iter)));
        GameState state = root;
        TreeNode* node = &root_node;
        std::vector<BackpropStep> path;
        double v_leaf = 0.0;

        // Selection: walk in-tree PUCT choices until an off-tree or terminal
        // state.
        while (true) {
            const PolicyDistribution prior = smoothed_behavior(state, kPriorMix);
            const ActionId a = puct_select(*node, prior, config.c);
            path.push_back({node, a});

            const GameState next = apply(state, a);
            if (const auto tv = terminal_value(next, next.to_move)) {
                v_leaf = *tv;
                break;
            }

            TreeNode* child = node->child(a);
            if (child == nullptr) {
                // Expansion: exactly one new node per iteration. The IS/DR
                // trajectory is the rollout from this node, in the expanded
                // player's perspective; its first action is the only one with
                // tree statistics (the freshly added node's, i.e. all zero).
                child = node->add_child(a);
                const Player leaf_player = next.to_move;
                const std::vector<ActionId> leaf_legal = legal_actions(next);

                RolloutResult rollout =
                    simulate(next, config.lambda, config.gamma, budget.max_rollout_depth,
                             leaf_player, rollout_rng);
                Trajectory& traj = rollout.traj;
                if (!traj.steps.empty()) {
                    const ActionId first = rollout.actions.front();
                    TrajectoryStep& head = traj.steps.front();
                    head.pi_e =
                        target_policy(q_table(*child, leaf_legal), config.tau).prob_of(first);
                    if (auto it = child->edges.find(first);
                        it != child->edges.end() && !it->second.reward_samples.empty()) {
                        head.q_hat = q_hat_kfold(it->second.reward_samples, config.k_folds);
                    }
                    if (const TreeNode* grandchild = child->child(first)) {
                        const GameState after = apply(next, first);
                        if (!is_terminal(after)) {
                            head.v_hat_next = node_v_hat(*grandchild, legal_actions(after),
                                                         config.tau, /*flip=*/true);
                        }
                    }
                }

                v_leaf = rollout.value;
                if (config.kind == EstimatorKind::StepIs) {
                    v_leaf = v_step_is(traj, config.gamma, config.rho_clip);
                } else if (config.kind == EstimatorKind::Dr) {
                    traj.v_hat_root = node_v_hat(*child, leaf_legal, config.tau);
                    const double dr = v_dr(traj, config.gamma, config.rho_clip);
                    v_leaf = v_hybrid(rollout.value, dr, config.beta);
                }
                // Importance weighting can push a single backup far outside
                // the reward scale; clamp so one spike cannot freeze an edge.
                // Identity for plain rollout returns (beta = 1 stays MCTS).
                v_leaf = std::clamp(v_leaf, 0.0, 1.0);
                break;
            }

            state = next;
            node = child;
        }

        record_and_backpropagate(path, v_leaf, /*two_player=*/true);
    }

    SearchResult result;
    result.root_q = q_table(root_node, legal_actions(root));
    result.iterations_run = budget.iterations;
    result.best_action = result.root_q.front().first;
    double best_q = result.root_q.front().second;
    for (const auto& [a, q] : result.root_q) {
        if (q > best_q) {  // strict: ties break to the lowest action index
            best_q = q;
            result.best_action = a;
        }
    }
    return result;
}

GameRecord play_game_with(const MovePicker& mover_x, const MovePicker& mover_o,
                          std::uint64_t seed) {
    GameState state;
    GameRecord record;
    int move_index = 0;
    while (!is_terminal(state)) {
        const std::uint64_t move_seed = mix_seed(seed, static_cast<std::uint64_t>(move_index));
        const ActionId a =
            (state.to_move == Player::X ? mover_x : mover_o)(state, move_seed);
        state = apply(state, a);
        record.moves.push_back(a);
        ++move_index;
    }
    if (const auto winner = winning_player(state)) {
        record.outcome = *winner == Player::X ? GameOutcome::XWins : GameOutcome::OWins;
    } else {
        record.outcome = GameOutcome::Draw;
    }
    return record;
}

GameRecord play_game(const ConfiguredSearcher& algo_x, const ConfiguredSearcher& algo_o,
                     std::uint64_t seed) {
    const auto mover = [](const ConfiguredSearcher& algo) -> MovePicker {
        return [algo](const GameState& state, std::uint64_t move_seed) {
            return run_search(state, algo.config, algo.budget, move_seed).best_action;
        };
    };
    return play_game_with(mover(algo_x), mover(algo_o), seed);
}

}  // namespace drmcts
