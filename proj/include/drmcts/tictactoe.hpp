#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drmcts {

// Cell index 0..8, row-major.
using ActionId = int;

enum class Player : std::uint8_t { X, O };
enum class Cell : std::uint8_t { Empty, X, O };

inline Player opponent(Player p) { return p == Player::X ? Player::O : Player::X; }
inline Cell cell_of(Player p) { return p == Player::X ? Cell::X : Cell::O; }

// Playing an occupied cell or moving in a terminal state is a caller bug,
// not a game outcome.
struct IllegalMove : std::logic_error {
    using std::logic_error::logic_error;
};

// 3x3 board plus the player to move. Value semantics throughout: apply()
// returns a fresh state and never mutates its input.
struct GameState {
    std::array<Cell, 9> cells{};  // all Empty
    Player to_move = Player::X;

    bool operator==(const GameState&) const = default;
};

// Empty cells in ascending index order; empty iff the board is full.
std::vector<ActionId> legal_actions(const GameState& state);

GameState apply(const GameState& state, ActionId a);

// The player holding a completed line, if any.
std::optional<Player> winning_player(const GameState& state);

bool is_terminal(const GameState& state);

// 1.0 win / 0.5 draw / 0.0 loss for `perspective`; nullopt if non-terminal.
std::optional<double> terminal_value(const GameState& state, Player perspective);

// Three rows of "X|O|." for logs.
std::string render(const GameState& state);

// Base-3 packing of the board plus the side to move; key for memo tables.
std::uint32_t encode(const GameState& state);

}  // namespace drmcts
