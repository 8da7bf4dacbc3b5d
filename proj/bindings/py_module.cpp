#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "drmcts/estimators.hpp"
#include "drmcts/harness.hpp"
#include "drmcts/oracle.hpp"
#include "drmcts/search.hpp"
#include "drmcts/tictactoe.hpp"

namespace py = pybind11;
using namespace drmcts;

namespace {

EstimatorKind kind_from_name(const std::string& name) {
    if (name == "mcts") return EstimatorKind::Mcts;
    if (name == "is") return EstimatorKind::StepIs;
    if (name == "dr") return EstimatorKind::Dr;
    throw std::invalid_argument("unknown estimator kind: " + name);
}

// Python-friendly v_hat: plain nested lists instead of spans.
double v_hat_py(const std::vector<std::pair<double, std::vector<double>>>& edges) {
    std::vector<std::pair<double, std::span<const double>>> views;
    views.reserve(edges.size());
    for (const auto& [w, samples] : edges) views.emplace_back(w, samples);
    return v_hat(views);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Doubly robust Monte Carlo tree search core";

    py::enum_<Player>(m, "Player").value("X", Player::X).value("O", Player::O);
    py::enum_<Cell>(m, "Cell")
        .value("EMPTY", Cell::Empty)
        .value("X", Cell::X)
        .value("O", Cell::O);
    py::enum_<EstimatorKind>(m, "EstimatorKind")
        .value("MCTS", EstimatorKind::Mcts)
        .value("STEP_IS", EstimatorKind::StepIs)
        .value("DR", EstimatorKind::Dr);
    py::enum_<GameOutcome>(m, "GameOutcome")
        .value("X_WINS", GameOutcome::XWins)
        .value("O_WINS", GameOutcome::OWins)
        .value("DRAW", GameOutcome::Draw);

    py::class_<GameState>(m, "GameState")
        .def(py::init<>())
        .def_readwrite("to_move", &GameState::to_move)
        .def("__eq__", [](const GameState& a, const GameState& b) { return a == b; })
        .def("__repr__", [](const GameState& s) { return render(s); });

    m.def("legal_actions", &legal_actions);
    m.def("apply_move", &apply, py::arg("state"), py::arg("action"));
    m.def("is_terminal", &is_terminal);
    m.def("terminal_value", &terminal_value, py::arg("state"), py::arg("perspective"));
    m.def("render", &render);

    py::class_<TrajectoryStep>(m, "TrajectoryStep")
        .def(py::init<>())
        .def(py::init<double, double, double, double, double>(), py::arg("reward"),
             py::arg("pi_e"), py::arg("pi_b"), py::arg("v_hat_next") = 0.0,
             py::arg("q_hat") = 0.0)
        .def_readwrite("reward", &TrajectoryStep::reward)
        .def_readwrite("pi_e", &TrajectoryStep::pi_e)
        .def_readwrite("pi_b", &TrajectoryStep::pi_b)
        .def_readwrite("v_hat_next", &TrajectoryStep::v_hat_next)
        .def_readwrite("q_hat", &TrajectoryStep::q_hat);

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init<>())
        .def_readwrite("steps", &Trajectory::steps)
        .def_readwrite("v_hat_root", &Trajectory::v_hat_root)
        .def("horizon", &Trajectory::horizon);

    py::class_<EstimatorConfig>(m, "EstimatorConfig")
        .def(py::init<>())
        .def_readwrite("kind", &EstimatorConfig::kind)
        .def_readwrite("beta", &EstimatorConfig::beta)
        .def_readwrite("tau", &EstimatorConfig::tau)
        .def_readwrite("gamma", &EstimatorConfig::gamma)
        .def_readwrite("c", &EstimatorConfig::c)
        .def_readwrite("k_folds", &EstimatorConfig::k_folds)
        .def_readwrite("lambda_", &EstimatorConfig::lambda)
        .def_readwrite("rho_clip", &EstimatorConfig::rho_clip)
        .def("validate", &EstimatorConfig::validate);

    m.def("cumulative_ratios", &cumulative_ratios, py::arg("traj"),
          py::arg("rho_clip") = std::nullopt);
    m.def(
        "v_mcts",
        [](const std::vector<double>& samples) { return v_mcts(samples); },
        py::arg("reward_samples"));
    m.def("v_is", &v_is, py::arg("traj"), py::arg("gamma"), py::arg("rho_clip") = std::nullopt);
    m.def("v_step_is", &v_step_is, py::arg("traj"), py::arg("gamma"),
          py::arg("rho_clip") = std::nullopt);
    m.def("v_dr", &v_dr, py::arg("traj"), py::arg("gamma"), py::arg("rho_clip") = std::nullopt);
    m.def("v_hybrid", &v_hybrid, py::arg("v_mcts"), py::arg("v_dr"), py::arg("beta"));
    m.def("v_hat", &v_hat_py, py::arg("edges"));
    m.def(
        "q_hat_kfold",
        [](const std::vector<double>& rewards, int k) { return q_hat_kfold(rewards, k); },
        py::arg("rewards"), py::arg("k"));

    py::class_<SearchBudget>(m, "SearchBudget")
        .def(py::init<>())
        .def_readwrite("iterations", &SearchBudget::iterations)
        .def_readwrite("max_rollout_depth", &SearchBudget::max_rollout_depth);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best_action", &SearchResult::best_action)
        .def_readonly("root_q", &SearchResult::root_q)
        .def_readonly("iterations_run", &SearchResult::iterations_run)
        .def("__repr__", &SearchResult::to_string);

    m.def("run_search", &run_search, py::arg("root"), py::arg("config"), py::arg("budget"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());

    py::class_<GameRecord>(m, "GameRecord")
        .def_readonly("outcome", &GameRecord::outcome)
        .def_readonly("moves", &GameRecord::moves);

    m.def(
        "play_game",
        [](const std::string& algo_x, const std::string& algo_o, int rollouts,
           std::uint64_t seed) {
            ConfiguredSearcher x;
            x.config.kind = kind_from_name(algo_x);
            x.budget.iterations = rollouts;
            ConfiguredSearcher o;
            o.config.kind = kind_from_name(algo_o);
            o.budget.iterations = rollouts;
            return play_game(x, o, seed);
        },
        py::arg("algo_x"), py::arg("algo_o"), py::arg("rollouts") = 100, py::arg("seed") = 42,
        py::call_guard<py::gil_scoped_release>());

    py::class_<MinimaxResult>(m, "MinimaxResult")
        .def_readonly("value", &MinimaxResult::value)
        .def_readonly("optimal_actions", &MinimaxResult::optimal_actions);
    m.def("minimax_value", &minimax_value);

    py::class_<ValidationLine>(m, "ValidationLine")
        .def_readonly("name", &ValidationLine::name)
        .def_readonly("measured", &ValidationLine::measured)
        .def_readonly("threshold", &ValidationLine::threshold)
        .def_readonly("relation", &ValidationLine::relation)
        .def_readonly("pass_", &ValidationLine::pass);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("suite", &ValidationReport::suite)
        .def_readonly("lines", &ValidationReport::lines)
        .def("all_pass", &ValidationReport::all_pass)
        .def("to_json", &ValidationReport::to_json);

    m.def("run_validation", &run_validation, py::arg("suite"), py::arg("samples") = 20000,
          py::arg("seed") = 7, py::call_guard<py::gil_scoped_release>());

    py::class_<TournamentRow>(m, "TournamentRow")
        .def_readonly("rollouts", &TournamentRow::rollouts)
        .def_readonly("wins_a", &TournamentRow::wins_a)
        .def_readonly("wins_b", &TournamentRow::wins_b)
        .def_readonly("draws", &TournamentRow::draws)
        .def_readonly("win_rate_a", &TournamentRow::win_rate_a)
        .def_readonly("win_rate_b", &TournamentRow::win_rate_b);

    m.def(
        "run_tournament",
        [](const std::string& algo_a, const std::string& algo_b, std::vector<int> rollouts,
           int games, std::uint64_t seed) {
            TournamentConfig config;
            config.algo_a.kind = kind_from_name(algo_a);
            config.algo_b.kind = kind_from_name(algo_b);
            config.name_a = algo_a;
            config.name_b = algo_b;
            config.rollout_counts = std::move(rollouts);
            config.games_per_setting = games;
            config.base_seed = seed;
            return run_tournament(config).rows;
        },
        py::arg("algo_a") = "dr", py::arg("algo_b") = "mcts",
        py::arg("rollouts") = std::vector<int>{20, 40, 60, 80, 100}, py::arg("games") = 100,
        py::arg("seed") = 42, py::call_guard<py::gil_scoped_release>());
}
