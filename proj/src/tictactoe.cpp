#include "drmcts/tictactoe.hpp"

#include <algorithm>

namespace drmcts {

namespace {

constexpr std::array<std::array<int, 3>, 8> kLines{{
    {0, 1, 2},
    {3, 4, 5},
    {6, 7, 8},
    {0, 3, 6},
    {1, 4, 7},
    {2, 5, 8},
    {0, 4, 8},
    {2, 4, 6},
}};

}  // namespace

std::vector<ActionId> legal_actions(const GameState& state) {
    std::vector<ActionId> out;
    if (winning_player(state).has_value()) return out;
    for (int i = 0; i < 9; ++i) {
        if (state.cells[static_cast<std::size_t>(i)] == Cell::Empty) out.push_back(i);
    }
    return out;
}

GameState apply(const GameState& state, ActionId a) {
    if (a < 0 || a > 8) throw IllegalMove("action index out of range");
    if (is_terminal(state)) throw IllegalMove("move applied to a terminal state");
    if (state.cells[static_cast<std::size_t>(a)] != Cell::Empty) {
        throw IllegalMove("cell " + std::to_string(a) + " is occupied");
    }
    GameState next = state;
    next.cells[static_cast<std::size_t>(a)] = cell_of(state.to_move);
    next.to_move = opponent(state.to_move);
    return next;
}

std::optional<Player> winning_player(const GameState& state) {
    for (const auto& line : kLines) {
        const Cell c = state.cells[static_cast<std::size_t>(line[0])];
        if (c == Cell::Empty) continue;
        if (state.cells[static_cast<std::size_t>(line[1])] == c &&
            state.cells[static_cast<std::size_t>(line[2])] == c) {
            return c == Cell::X ? Player::X : Player::O;
        }
    }
    return std::nullopt;
}

bool is_terminal(const GameState& state) {
    if (winning_player(state).has_value()) return true;
    return std::none_of(state.cells.begin(), state.cells.end(),
                        [](Cell c) { return c == Cell::Empty; });
}

std::optional<double> terminal_value(const GameState& state, Player perspective) {
    if (const auto winner = winning_player(state)) {
        return *winner == perspective ? 1.0 : 0.0;
    }
    const bool full = std::none_of(state.cells.begin(), state.cells.end(),
                                   [](Cell c) { return c == Cell::Empty; });
    if (full) return 0.5;
    return std::nullopt;
}

std::string render(const GameState& state) {
    std::string out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const Cell cell = state.cells[static_cast<std::size_t>(3 * r + c)];
            out += cell == Cell::Empty ? '.' : (cell == Cell::X ? 'X' : 'O');
            if (c < 2) out += '|';
        }
        if (r < 2) out += '\n';
    }
    return out;
}

std::uint32_t encode(const GameState& state) {
    std::uint32_t key = 0;
    for (int i = 8; i >= 0; --i) {
        key = key * 3 + static_cast<std::uint32_t>(state.cells[static_cast<std::size_t>(i)]);
    }
    return key * 2 + (state.to_move == Player::X ? 0u : 1u);
}

}  // namespace drmcts
