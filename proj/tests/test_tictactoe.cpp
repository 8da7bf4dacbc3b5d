#include <doctest.h>

#include "drmcts/rng.hpp"
#include "drmcts/tictactoe.hpp"

using namespace drmcts;

namespace {

GameState board_from(const char* cells, Player to_move) {
    GameState s;
    for (int i = 0; i < 9; ++i) {
        s.cells[static_cast<std::size_t>(i)] =
            cells[i] == 'X' ? Cell::X : (cells[i] == 'O' ? Cell::O : Cell::Empty);
    }
    s.to_move = to_move;
    return s;
}

}  // namespace

TEST_CASE("legal_actions enumerates empty cells in order") {
    GameState empty;
    CHECK(legal_actions(empty) == std::vector<ActionId>{0, 1, 2, 3, 4, 5, 6, 7, 8});

    const GameState mid = apply(empty, 4);
    CHECK(legal_actions(mid) == std::vector<ActionId>{0, 1, 2, 3, 5, 6, 7, 8});

    const GameState full = board_from("XOXXOXOXO", Player::X);
    CHECK(legal_actions(full).empty());
}

TEST_CASE("apply places the mover's symbol and flips the turn") {
    GameState empty;
    const GameState next = apply(empty, 4);
    CHECK(next.cells[4] == Cell::X);
    CHECK(next.to_move == Player::O);
    CHECK(empty.cells[4] == Cell::Empty);  // input untouched

    CHECK_THROWS_AS(apply(next, 4), IllegalMove);
    const GameState won = board_from("XXX.OO...", Player::O);
    CHECK_THROWS_AS(apply(won, 3), IllegalMove);
}

TEST_CASE("terminal_value covers win, loss, and draw") {
    const GameState x_row = board_from("XXX.OO...", Player::O);
    CHECK(terminal_value(x_row, Player::X) == 1.0);
    CHECK(terminal_value(x_row, Player::O) == 0.0);

    const GameState drawn = board_from("XOXXOOOXX", Player::O);
    CHECK(!winning_player(drawn).has_value());
    CHECK(terminal_value(drawn, Player::X) == 0.5);

    GameState open;
    CHECK(!terminal_value(open, Player::X).has_value());
}

TEST_CASE("random playouts preserve the state invariants") {
    Rng rng = make_rng(99);
    for (int game = 0; game < 200; ++game) {
        GameState state;
        while (!is_terminal(state)) {
            int x_count = 0;
            int o_count = 0;
            for (Cell c : state.cells) {
                x_count += c == Cell::X;
                o_count += c == Cell::O;
            }
            const int diff = x_count - o_count;
            CHECK((diff == 0 || diff == 1));
            CHECK((state.to_move == Player::X) == (diff == 0));

            const auto legal = legal_actions(state);
            REQUIRE(!legal.empty());
            std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
            state = apply(state, legal[pick(rng)]);
        }
        // Terminal payoffs are zero-sum on the [0,1] scale.
        CHECK(*terminal_value(state, Player::X) + *terminal_value(state, Player::O) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(legal_actions(state).empty());
    }
}

TEST_CASE("render emits three rows") {
    const GameState s = board_from("X...O...X", Player::O);
    CHECK(render(s) == "X|.|.\n.|O|.\n.|.|X");
}

TEST_CASE("encode distinguishes board and side to move") {
    GameState a;
    GameState b;
    b.to_move = Player::O;
    CHECK(encode(a) != encode(b));
    CHECK(encode(a) != encode(apply(a, 0)));
}
