#include "drmcts/tree.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace drmcts {

ActionId puct_select(const TreeNode& node, const PolicyDistribution& behavior, double c) {
    if (behavior.support.empty()) throw NoLegalAction("puct_select with empty support");
    const double sqrt_n = std::sqrt(static_cast<double>(node.visit_count));
    ActionId best = behavior.support.front();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < behavior.support.size(); ++i) {
        const ActionId a = behavior.support[i];
        double q = 0.0;
        int n_a = 0;
        if (auto it = node.edges.find(a); it != node.edges.end()) {
            q = it->second.q();
            n_a = it->second.visit_count;
        }
        const double score = q + c * behavior.probs[i] * sqrt_n / (1.0 + n_a);
        if (score > best_score) {  // strict: ties keep the lowest action index
            best_score = score;
            best = a;
        }
    }
    return best;
}

void record_and_backpropagate(const std::vector<BackpropStep>& path, double v, bool two_player) {
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (two_player) v = 1.0 - v;
        EdgeStats& edge = it->node->edges[it->action];
        edge.visit_count += 1;
        edge.total_value += v;
        edge.reward_samples.push_back(v);
        it->node->visit_count += 1;
    }
}

std::vector<std::pair<ActionId, double>> q_table(const TreeNode& node,
                                                 const std::vector<ActionId>& legal) {
    std::vector<std::pair<ActionId, double>> out;
    out.reserve(legal.size());
    for (ActionId a : legal) {
        auto it = node.edges.find(a);
        out.emplace_back(a, it == node.edges.end() ? 0.0 : it->second.q());
    }
    return out;
}

std::string dump_children(const TreeNode& node, const std::vector<ActionId>& legal) {
    std::string out;
    char buf[64];
    for (ActionId a : legal) {
        auto it = node.edges.find(a);
        const int n = it == node.edges.end() ? 0 : it->second.visit_count;
        const double q = it == node.edges.end() ? 0.0 : it->second.q();
        std::snprintf(buf, sizeof(buf), "a=%d N=%d Q=%.4f\n", a, n, q);
        out += buf;
    }
    return out;
}

}  // namespace drmcts
