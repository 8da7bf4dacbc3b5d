#include "drmcts/mdp.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drmcts {

int PolicyTable::sample(int s, Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    for (int a = 0; a < n_actions; ++a) {
        u -= prob(s, a);
        if (u <= 0.0) return a;
    }
    return n_actions - 1;
}

void PolicyTable::check() const {
    if (probs.size() != static_cast<std::size_t>(n_states * n_actions)) {
        throw std::invalid_argument("policy table size mismatch");
    }
    for (int s = 0; s < n_states; ++s) {
        double total = 0.0;
        for (int a = 0; a < n_actions; ++a) {
            const double p = prob(s, a);
            if (p < 0.0 || p > 1.0) throw std::invalid_argument("policy probability out of range");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("policy row does not sum to 1");
        }
    }
}

void FiniteMdp::check() const {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (n_states < 1 || n_actions < 1) throw std::invalid_argument("empty state or action space");
    if (initial_state < 0 || initial_state >= n_states) {
        throw std::out_of_range("initial state out of range");
    }
    if (transition.size() != static_cast<std::size_t>(n_states * n_actions * n_states) ||
        rewards.size() != static_cast<std::size_t>(n_states * n_actions)) {
        throw std::invalid_argument("table size mismatch");
    }
    for (int s = 0; s < n_states; ++s) {
        for (int a = 0; a < n_actions; ++a) {
            double total = 0.0;
            for (int s2 = 0; s2 < n_states; ++s2) {
                const double p = trans(s, a, s2);
                if (p < 0.0 || p > 1.0) {
                    throw std::invalid_argument("transition probability out of range");
                }
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-12) {
                throw std::invalid_argument("transition row does not sum to 1");
            }
        }
    }
}

namespace {

std::vector<double> parse_doubles(std::istringstream& line, std::size_t expected,
                                  const std::string& key) {
    std::vector<double> out;
    double v;
    while (line >> v) out.push_back(v);
    if (out.size() != expected) {
        throw std::invalid_argument("wrong number of values for key '" + key + "'");
    }
    return out;
}

}  // namespace

FiniteMdp FiniteMdp::load(std::istream& in) {
    FiniteMdp mdp;
    bool have_transition = false;
    bool have_rewards = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "n_states") {
            ls >> mdp.n_states;
        } else if (key == "n_actions") {
            ls >> mdp.n_actions;
        } else if (key == "horizon") {
            ls >> mdp.horizon;
        } else if (key == "initial_state") {
            ls >> mdp.initial_state;
        } else if (key == "transition") {
            mdp.transition = parse_doubles(
                ls, static_cast<std::size_t>(mdp.n_states * mdp.n_actions * mdp.n_states), key);
            have_transition = true;
        } else if (key == "rewards") {
            mdp.rewards =
                parse_doubles(ls, static_cast<std::size_t>(mdp.n_states * mdp.n_actions), key);
            have_rewards = true;
        } else {
            throw std::invalid_argument("unknown key '" + key + "' in MDP file");
        }
    }
    if (!have_transition || !have_rewards) {
        throw std::invalid_argument("MDP file missing transition or rewards");
    }
    mdp.check();
    return mdp;
}

FiniteMdp FiniteMdp::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MDP file: " + path);
    return load(in);
}

std::string FiniteMdp::save() const {
    std::ostringstream out;
    out.precision(17);
    out << "n_states " << n_states << "\n";
    out << "n_actions " << n_actions << "\n";
    out << "horizon " << horizon << "\n";
    out << "initial_state " << initial_state << "\n";
    out << "transition";
    for (double p : transition) out << ' ' << p;
    out << "\nrewards";
    for (double r : rewards) out << ' ' << r;
    out << "\n";
    return out.str();
}

std::pair<int, double> mdp_step(const FiniteMdp& mdp, int s, int a, Rng& rng) {
    if (s < 0 || s >= mdp.n_states || a < 0 || a >= mdp.n_actions) {
        throw std::out_of_range("mdp_step index out of range");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    int next = mdp.n_states - 1;
    for (int s2 = 0; s2 < mdp.n_states; ++s2) {
        u -= mdp.trans(s, a, s2);
        if (u <= 0.0) {
            next = s2;
            break;
        }
    }
    return {next, mdp.reward(s, a)};
}

std::pair<double, Trajectory> simulate(const FiniteMdp& mdp, const PolicyTable& behavior,
                                       double gamma, Rng& rng) {
    return simulate_off_policy(mdp, behavior, behavior, gamma, rng);
}

std::pair<double, Trajectory> simulate_off_policy(const FiniteMdp& mdp,
                                                  const PolicyTable& behavior,
                                                  const PolicyTable& target, double gamma,
                                                  Rng& rng, std::vector<int>* states,
                                                  std::vector<int>* actions) {
    Trajectory traj;
    double ret = 0.0;
    double disc = 1.0;
    int s = mdp.initial_state;
    if (states != nullptr) states->push_back(s);
    for (int t = 0; t < mdp.horizon; ++t) {
        const int a = behavior.sample(s, rng);
        const auto [next, r] = mdp_step(mdp, s, a, rng);
        TrajectoryStep step;
        step.reward = r;
        step.pi_b = behavior.prob(s, a);
        step.pi_e = target.prob(s, a);
        traj.steps.push_back(step);
        if (states != nullptr) states->push_back(next);
        if (actions != nullptr) actions->push_back(a);
        ret += disc * r;
        disc *= gamma;
        s = next;
    }
    return {ret, traj};
}

FiniteMdp default_validation_mdp() {
    FiniteMdp mdp;
    mdp.n_states = 4;
    mdp.n_actions = 2;
    mdp.horizon = 3;
    mdp.initial_state = 0;
    mdp.transition.resize(static_cast<std::size_t>(4 * 2 * 4));
    mdp.rewards.resize(static_cast<std::size_t>(4 * 2));

    // Randomized but fixed: regenerating from this seed always yields the
    // same instance.
    Rng rng = make_rng(0xd2bc75u);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (int s = 0; s < mdp.n_states; ++s) {
        for (int a = 0; a < mdp.n_actions; ++a) {
            double total = 0.0;
            std::array<double, 4> row{};
            for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                row[static_cast<std::size_t>(s2)] = unit(rng);
                total += row[static_cast<std::size_t>(s2)];
            }
            for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                mdp.transition[static_cast<std::size_t>((s * 2 + a) * 4 + s2)] =
                    row[static_cast<std::size_t>(s2)] / total;
            }
            mdp.rewards[static_cast<std::size_t>(s * 2 + a)] = unit(rng);
        }
    }
    // Renormalize exactly so check() passes at 1e-12.
    for (int row = 0; row < mdp.n_states * mdp.n_actions; ++row) {
        double total = 0.0;
        for (int s2 = 0; s2 < mdp.n_states; ++s2) {
            total += mdp.transition[static_cast<std::size_t>(row * 4 + s2)];
        }
        double running = 0.0;
        for (int s2 = 0; s2 < mdp.n_states - 1; ++s2) {
            auto& p = mdp.transition[static_cast<std::size_t>(row * 4 + s2)];
            p /= total;
            running += p;
        }
        mdp.transition[static_cast<std::size_t>(row * 4 + 3)] = 1.0 - running;
    }
    mdp.check();
    return mdp;
}

namespace {

PolicyTable make_policy(const FiniteMdp& mdp, std::uint64_t seed) {
    PolicyTable pi;
    pi.n_states = mdp.n_states;
    pi.n_actions = mdp.n_actions;
    pi.probs.resize(static_cast<std::size_t>(mdp.n_states * mdp.n_actions));
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unit(0.2, 1.0);  // strictly positive rows
    for (int s = 0; s < mdp.n_states; ++s) {
        double total = 0.0;
        for (int a = 0; a < mdp.n_actions; ++a) {
            pi.probs[static_cast<std::size_t>(s * mdp.n_actions + a)] = unit(rng);
            total += pi.probs[static_cast<std::size_t>(s * mdp.n_actions + a)];
        }
        double running = 0.0;
        for (int a = 0; a < mdp.n_actions - 1; ++a) {
            auto& p = pi.probs[static_cast<std::size_t>(s * mdp.n_actions + a)];
            p /= total;
            running += p;
        }
        pi.probs[static_cast<std::size_t>(s * mdp.n_actions + mdp.n_actions - 1)] = 1.0 - running;
    }
    pi.check();
    return pi;
}

}  // namespace

PolicyTable default_behavior_policy(const FiniteMdp& mdp) { return make_policy(mdp, 0xbeaf01u); }

PolicyTable default_target_policy(const FiniteMdp& mdp) { return make_policy(mdp, 0x7a4e7u); }

}  // namespace drmcts
