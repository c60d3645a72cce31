#pragma once

#include <optional>
#include <vector>

#include "gamedecomp/projectors.hpp"

namespace gamedecomp {

/// u = u_P + u_N + u_H with components in the pure-potential, nonstrategic
/// and pure-harmonic subspaces.
struct Decomposition {
  Game pure_potential;
  Game nonstrategic;
  Game pure_harmonic;

  Game sum() const { return pure_potential + nonstrategic + pure_harmonic; }
};

/// Structure vector of a potential function: φ(s) = values[profile_index(s) − 1].
/// Potentials are determined up to an additive constant.
struct PotentialFunction {
  std::vector<Rational> values;

  PotentialFunction shifted(const Rational& constant) const {
    PotentialFunction out = *this;
    for (auto& v : out.values) v += constant;
    return out;
  }

  /// True when this − other is a constant vector.
  bool equal_up_to_constant(const PotentialFunction& other) const {
    if (values.size() != other.values.size()) return false;
    if (values.empty()) return true;
    const Rational offset = values[0] - other.values[0];
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] - other.values[i] != offset) return false;
    return true;
  }

  bool is_constant() const {
    for (const auto& v : values)
      if (v != values.front()) return false;
    return true;
  }

  friend bool operator==(const PotentialFunction&, const PotentialFunction&) = default;
};

inline Game project(const Game& g, SubspaceKind kind) {
  const auto ps = projectors_for(g.space());
  return Game::from_structure_vector(g.space(), ps->projection(kind) * g.structure_vector());
}

inline Decomposition decompose(const Game& g) {
  const auto ps = projectors_for(g.space());
  const Matrix u = g.structure_vector();
  return Decomposition{Game::from_structure_vector(g.space(), ps->pure_potential * u),
                       Game::from_structure_vector(g.space(), ps->nonstrategic * u),
                       Game::from_structure_vector(g.space(), ps->pure_harmonic * u)};
}

/// P_kind·u = u.
inline bool is_member(const Game& g, SubspaceKind kind) {
  const auto ps = projectors_for(g.space());
  const Matrix u = g.structure_vector();
  return ps->projection(kind) * u == u;
}

/// The full vector L·[P_N†; B_N†]·G of length k + Σ k/k_i (constant c = 0).
/// Its first k entries are a potential when g is potential. For other games
/// the entries carry no established meaning.
inline std::vector<Rational> potential_expression(const Game& g) {
  const auto ps = projectors_for(g.space());
  const Matrix v = ps->potential_map * g.structure_vector();
  return {v.entries().begin(), v.entries().end()};
}

/// Canonical potential (c = 0) of a potential game, nullopt otherwise.
inline std::optional<PotentialFunction> potential_function(const Game& g) {
  if (!is_member(g, SubspaceKind::Potential)) return std::nullopt;
  auto full = potential_expression(g);
  full.resize(g.space().profiles());
  return PotentialFunction{std::move(full)};
}

/// Potential through the block system
///   [−E_1 E_2 0 …; −E_1 0 E_3 …; …]·(ξ_1; …; ξ_n) = (V_2 − V_1; …; V_n − V_1),
/// returning V_1 − ξ_1ᵀE_1ᵀ when the system is consistent.
inline std::optional<PotentialFunction> solve_potential_equation(const Game& g) {
  const GameSpace& space = g.space();
  const std::size_t n = space.players();
  const std::size_t k = space.profiles();
  const auto& v1 = g.payoffs(1);
  if (n == 1) return PotentialFunction{v1};

  std::vector<Matrix> e;
  std::vector<std::size_t> offset{0};
  for (std::size_t i = 1; i <= n; ++i) {
    e.push_back(build_E(space, i));
    offset.push_back(offset.back() + e.back().cols());
  }
  Matrix system((n - 1) * k, offset.back());
  Matrix rhs((n - 1) * k, 1);
  const Matrix minus_e1 = -e[0];
  for (std::size_t i = 2; i <= n; ++i) {
    const std::size_t row = (i - 2) * k;
    system.set_block(row, 0, minus_e1);
    system.set_block(row, offset[i - 1], e[i - 1]);
    const auto& vi = g.payoffs(i);
    for (std::size_t j = 0; j < k; ++j) rhs(row + j, 0) = vi[j] - v1[j];
  }
  const auto xi = solve_linear(system, rhs);
  if (!xi) return std::nullopt;

  const Matrix correction = e[0] * xi->block(0, 0, e[0].cols(), 1);
  PotentialFunction phi{v1};
  for (std::size_t j = 0; j < k; ++j) phi.values[j] -= correction(j, 0);
  return phi;
}

/// c_i'(x, y) = (1/k_i)·Σ_{z∈S^i} c_i(z, y): each payoff averaged over the
/// player's own strategies.
inline Game nonstrategic_component_direct(const Game& g) {
  const GameSpace& space = g.space();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const std::size_t ki = space.strategies(i);
    const std::size_t stride = space.block(i + 1, space.players());
    const Rational inv(1, static_cast<long>(ki));
    const auto& row = g.payoffs(i);
    std::vector<Rational> out(row.size());
    for (std::size_t idx = 0; idx < row.size(); ++idx) {
      // index with player i's digit cleared
      const std::size_t base = idx - ((idx / stride) % ki) * stride;
      Rational total;
      for (std::size_t z = 0; z < ki; ++z) total += row[base + z * stride];
      out[idx] = total * inv;
    }
    rows.push_back(std::move(out));
  }
  return Game(space, std::move(rows));
}

}  // namespace gamedecomp
