#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gamedecomp/gamedecomp.hpp"

namespace gamedecomp::testing {

/// Deterministic source of small integers in [−9, 9].
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}

  long next() { return dist_(engine_); }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = next();
    return m;
  }

  Game game(const GameSpace& space) {
    std::vector<std::vector<Rational>> rows(space.players());
    for (auto& row : rows)
      for (std::size_t j = 0; j < space.profiles(); ++j) row.push_back(next());
    return Game(space, std::move(rows));
  }

  /// B_P·w for a random integer w.
  Game potential_game(const GameSpace& space) {
    const Matrix bp = build_B_P(space);
    return Game::from_structure_vector(space, bp * matrix(bp.cols(), 1));
  }

  /// P_{𝒢_H}·u for a random integer u.
  Game harmonic_game(const GameSpace& space) { return project(game(space), SubspaceKind::Harmonic); }

  /// A random game whose pure harmonic component is nonzero.
  Game non_potential_game(const GameSpace& space) {
    for (;;) {
      Game g = game(space);
      if (!project(g, SubspaceKind::PureHarmonic).is_zero()) return g;
    }
  }

 private:
  std::mt19937 engine_;
  std::uniform_int_distribution<long> dist_{-9, 9};
};

inline Game make_game(std::vector<std::size_t> counts, const std::vector<long>& flat) {
  const GameSpace space(std::move(counts));
  std::vector<std::vector<Rational>> rows(space.players());
  for (std::size_t i = 0; i < flat.size(); ++i) rows[i / space.profiles()].push_back(flat[i]);
  return Game(space, std::move(rows));
}

inline Game rock_paper_scissors() {
  return make_game({3, 3}, {0, -1, 1, 1, 0, -1, -1, 1, 0, 0, 1, -1, -1, 0, 1, 1, -1, 0});
}

inline Game matching_pennies() { return make_game({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1}); }

inline Game coordination_game() { return make_game({2, 2}, {1, 0, 0, 1, 1, 0, 0, 1}); }

/// Symmetric [3;2,2,2] game (a,b,b,d,c,e,e,f, a,b,c,e,b,d,e,f, a,c,b,e,b,e,d,f).
inline Game symmetric_three_player(const std::vector<Rational>& p) {
  const auto& [a, b, c, d, e, f] = std::tuple{p[0], p[1], p[2], p[3], p[4], p[5]};
  return Game(GameSpace({2, 2, 2}), {{a, b, b, d, c, e, e, f}, {a, b, c, e, b, d, e, f}, {a, c, b, e, b, e, d, f}});
}

/// Symmetric [2;3,3] game (a..i, a,d,g,b,e,h,c,f,i).
inline Game symmetric_two_player(const std::vector<Rational>& p) {
  return Game(GameSpace({3, 3}), {{p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8]},
                                  {p[0], p[3], p[6], p[1], p[4], p[7], p[2], p[5], p[8]}});
}

/// 1-based index of the single 1 in δ_{k_1}^{s_1} ⊗ … ⊗ δ_{k_n}^{s_n}.
inline std::size_t kron_profile_index(const GameSpace& space, const StrategyProfile& s) {
  Matrix v = Matrix::identity(1);
  for (std::size_t i = 1; i <= space.players(); ++i) v = kron(v, Matrix::basis(space.strategies(i), s.choices[i - 1]));
  for (std::size_t r = 0; r < v.rows(); ++r)
    if (v(r, 0) == 1) return r + 1;
  return 0;
}

inline std::vector<GameSpace> small_spaces() {
  return {GameSpace({2, 2}), GameSpace({2, 3}), GameSpace({3, 3}), GameSpace({2, 2, 2}), GameSpace({3, 2}),
          GameSpace({1, 3}), GameSpace({4}),    GameSpace({2, 3, 2})};
}

}  // namespace gamedecomp::testing
