#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "drmcts/policy.hpp"

namespace drmcts {

// Action sequence from the root; the root itself is the empty list.
using HistoryKey = std::vector<ActionId>;

struct EdgeStats {
    int visit_count = 0;        // N(h,a)
    double total_value = 0.0;   // sum of backed-up values
    std::vector<double> reward_samples;  // individual R_i(h,a), kept for k-fold Q-hat

    double q() const { return visit_count > 0 ? total_value / visit_count : 0.0; }
};

struct TreeNode {
    HistoryKey key;
    int visit_count = 0;  // N(h), incremented per backpropagation through the node
    std::map<ActionId, EdgeStats> edges;
    std::map<ActionId, std::unique_ptr<TreeNode>> children;

    TreeNode* child(ActionId a) const {
        auto it = children.find(a);
        return it == children.end() ? nullptr : it->second.get();
    }

    TreeNode* add_child(ActionId a) {
        auto node = std::make_unique<TreeNode>();
        node->key = key;
        node->key.push_back(a);
        TreeNode* raw = node.get();
        children.emplace(a, std::move(node));
        return raw;
    }
};

// argmax over the behavior support of Q(h,a) + c * pi_b(a|h) * sqrt(N(h)) / (1 + N(h,a)).
// Unvisited actions score with Q = 0; ties break to the lowest action index.
ActionId puct_select(const TreeNode& node, const PolicyDistribution& behavior, double c);

struct BackpropStep {
    TreeNode* node;
    ActionId action;
};

// Updates every edge on a root-to-leaf path with value v, where v is given
// from the perspective of the player to move *below* the last edge. In the
// two-player game the value flips to 1 - v at each step up the path so that
// each node's Q stays in its own player-to-move perspective; single-agent
// paths back up v unchanged.
void record_and_backpropagate(const std::vector<BackpropStep>& path, double v, bool two_player);

// (a, Q(h,a)) over the legal actions; unvisited actions report Q = 0 so the
// softmax support matches the legal support.
std::vector<std::pair<ActionId, double>> q_table(const TreeNode& node,
                                                 const std::vector<ActionId>& legal);

// One line per root child: action, N, Q.
std::string dump_children(const TreeNode& node, const std::vector<ActionId>& legal);

}  // namespace drmcts
