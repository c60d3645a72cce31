#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "gamedecomp/decomposer.hpp"

namespace gamedecomp {

// Definition-level checks. None of these touch the projection matrices;
// they read payoffs directly so they can be compared against projection
// membership.

namespace detail {

/// Calls fn(base, stride, k_i) once per line of profiles along which only
/// player i's strategy varies; the profiles on the line are base + z·stride.
template <typename Fn>
void for_each_deviation_line(const GameSpace& space, std::size_t player, Fn&& fn) {
  const std::size_t ki = space.strategies(player);
  const std::size_t stride = space.block(player + 1, space.players());
  const std::size_t outer = space.block(1, player - 1);
  for (std::size_t hi = 0; hi < outer; ++hi)
    for (std::size_t lo = 0; lo < stride; ++lo) fn(hi * ki * stride + lo, stride, ki);
}

}  // namespace detail

/// (1/k_i)·Σ_x c_i(x, s) = c_i(y, s) for every i, y and s ∈ S^{−i}.
inline bool check_nonstrategic_defn(const Game& g) {
  const GameSpace& space = g.space();
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const auto& row = g.payoffs(i);
    bool ok = true;
    detail::for_each_deviation_line(space, i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      if (!ok) return;
      Rational total;
      for (std::size_t z = 0; z < ki; ++z) total += row[base + z * stride];
      const Rational mean = total / Rational(static_cast<long>(ki));
      for (std::size_t y = 0; y < ki; ++y)
        if (row[base + y * stride] != mean) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Σ_i c_i(s) = 0 for every s, and Σ_{x∈S^i} c_i(x, y) = 0 for every i and y.
inline bool check_pure_harmonic_defn(const Game& g) {
  const GameSpace& space = g.space();
  for (std::size_t idx = 1; idx <= space.profiles(); ++idx) {
    Rational total;
    for (std::size_t i = 1; i <= space.players(); ++i) total += g.at(i, idx);
    if (!total.is_zero()) return false;
  }
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const auto& row = g.payoffs(i);
    bool ok = true;
    detail::for_each_deviation_line(space, i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      Rational total;
      for (std::size_t z = 0; z < ki; ++z) total += row[base + z * stride];
      if (!total.is_zero()) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Σ_i [(1/k_i)·Σ_{x∈S^i} c_i(x, s^{−i}) − c_i(s)] = 0 for every s.
inline bool check_harmonic_defn(const Game& g) {
  const GameSpace& space = g.space();
  std::vector<Rational> residual(space.profiles());
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const auto& row = g.payoffs(i);
    detail::for_each_deviation_line(space, i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      Rational total;
      for (std::size_t z = 0; z < ki; ++z) total += row[base + z * stride];
      const Rational mean = total / Rational(static_cast<long>(ki));
      for (std::size_t z = 0; z < ki; ++z) residual[base + z * stride] += mean - row[base + z * stride];
    });
  }
  for (const auto& r : residual)
    if (!r.is_zero()) return false;
  return true;
}

/// c_i(x, z) − c_i(y, z) = φ(x, z) − φ(y, z) for all i, x, y ∈ S^i, z ∈ S^{−i}.
inline bool check_potential_defn(const Game& g, const PotentialFunction& phi) {
  const GameSpace& space = g.space();
  if (phi.values.size() != space.profiles())
    throw DimensionError("potential has " + std::to_string(phi.values.size()) + " values, expected " +
                         std::to_string(space.profiles()));
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const auto& row = g.payoffs(i);
    bool ok = true;
    detail::for_each_deviation_line(space, i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      for (std::size_t x = 0; x < ki && ok; ++x)
        for (std::size_t y = 0; y < ki && ok; ++y) {
          const std::size_t px = base + x * stride, py = base + y * stride;
          if (row[px] - row[py] != phi.values[px] - phi.values[py]) ok = false;
        }
    });
    if (!ok) return false;
  }
  return true;
}

// Nash equilibria

struct NashReport {
  std::vector<StrategyProfile> pure_equilibria;
  bool uniform_mixed_is_nash = false;
};

/// Profiles s* with c_i(s*_{−i}, s_i) ≤ c_i(s*) for every i and s_i, in
/// index order.
inline std::vector<StrategyProfile> pure_nash(const Game& g) {
  const GameSpace& space = g.space();
  std::vector<bool> stable(space.profiles(), true);
  for (std::size_t i = 1; i <= space.players(); ++i) {
    const auto& row = g.payoffs(i);
    detail::for_each_deviation_line(space, i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      const Rational* best = &row[base];
      for (std::size_t z = 1; z < ki; ++z)
        if (row[base + z * stride] > *best) best = &row[base + z * stride];
      for (std::size_t z = 0; z < ki; ++z)
        if (row[base + z * stride] < *best) stable[base + z * stride] = false;
    });
  }
  std::vector<StrategyProfile> out;
  for (std::size_t idx = 0; idx < stable.size(); ++idx)
    if (stable[idx]) out.push_back(index_profile(space, idx + 1));
  return out;
}

/// Whether the uniformly mixed profile is a mixed Nash equilibrium. Pure
/// deviations suffice: no player j can gain by switching to any r ∈ S^j.
inline bool uniform_mixed_nash_check(const Game& g) {
  const GameSpace& space = g.space();
  const MixedProfile uniform = MixedProfile::uniform(space);
  for (std::size_t j = 1; j <= space.players(); ++j) {
    const Rational value = expected_payoff(g, j, uniform);
    for (std::size_t r = 0; r < space.strategies(j); ++r) {
      MixedProfile deviation = uniform;
      auto& xj = deviation.probabilities[j - 1];
      std::fill(xj.begin(), xj.end(), Rational(0));
      xj[r] = 1;
      if (expected_payoff(g, j, deviation) > value) return false;
    }
  }
  return true;
}

inline NashReport nash_report(const Game& g) { return NashReport{pure_nash(g), uniform_mixed_nash_check(g)}; }

/// For a pure harmonic game: s is a pure Nash equilibrium iff
/// c_i(s_{−i}, x) = 0 for every player i and every x ∈ S^i.
inline bool harmonic_pure_nash_zero_check(const Game& g, const StrategyProfile& s) {
  if (!check_pure_harmonic_defn(g))
    throw std::invalid_argument("harmonic_pure_nash_zero_check requires a pure harmonic game");
  const GameSpace& space = g.space();
  validate_profile(space, s);
  for (std::size_t i = 1; i <= space.players(); ++i) {
    StrategyProfile t = s;
    for (std::size_t x = 1; x <= space.strategies(i); ++x) {
      t.choices[i - 1] = x;
      if (!g.payoff(i, t).is_zero()) return false;
    }
  }
  return true;
}

/// Dimension of the pure harmonic games that have s as a pure Nash
/// equilibrium: nk − rank of
///   [ 1_nᵀ ⊗ I_k ; E_1ᵀ ⊕ … ⊕ E_nᵀ ; F_1ᵀ ⊕ … ⊕ F_nᵀ ]
/// with F_iᵀ = (δ^{a_i})ᵀ ⊗ I_{k_i} ⊗ (δ^{b_i})ᵀ selecting the profiles where
/// only player i departs from s (a_i, b_i index s's choices before and
/// after player i).
inline std::size_t harmonic_nash_kernel_dim(const GameSpace& space, const StrategyProfile& s) {
  validate_profile(space, s);
  const std::size_t n = space.players();
  const std::size_t k = space.profiles();

  std::vector<Matrix> et, ft;
  for (std::size_t i = 1; i <= n; ++i) {
    et.push_back(build_E(space, i).transpose());
    std::size_t before = 0, after = 0;
    for (std::size_t j = 1; j < i; ++j) before = before * space.strategies(j) + (s.choices[j - 1] - 1);
    for (std::size_t j = i + 1; j <= n; ++j) after = after * space.strategies(j) + (s.choices[j - 1] - 1);
    const Matrix left = Matrix::basis(space.block(1, i - 1), before + 1).transpose();
    const Matrix right = Matrix::basis(space.block(i + 1, n), after + 1).transpose();
    ft.push_back(kron(kron(left, Matrix::identity(space.strategies(i))), right));
  }
  const Matrix stacked =
      vstack(vstack(kron(Matrix::ones(1, n), Matrix::identity(k)), direct_sum(et)), direct_sum(ft));
  return space.dimension() - rank(stacked);
}

}  // namespace gamedecomp
