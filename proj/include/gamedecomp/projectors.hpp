#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "gamedecomp/game.hpp"
#include "gamedecomp/linalg.hpp"

namespace gamedecomp {

/// The five canonical subspaces. Potential = PurePotential ⊕ Nonstrategic
/// and Harmonic = PureHarmonic ⊕ Nonstrategic.
enum class SubspaceKind { PurePotential, Nonstrategic, PureHarmonic, Potential, Harmonic };

inline constexpr std::array<SubspaceKind, 5> kAllSubspaceKinds = {
    SubspaceKind::PurePotential, SubspaceKind::Nonstrategic, SubspaceKind::PureHarmonic, SubspaceKind::Potential,
    SubspaceKind::Harmonic};

inline constexpr std::string_view to_string(SubspaceKind kind) {
  switch (kind) {
    case SubspaceKind::PurePotential: return "pure-potential";
    case SubspaceKind::Nonstrategic: return "nonstrategic";
    case SubspaceKind::PureHarmonic: return "pure-harmonic";
    case SubspaceKind::Potential: return "potential";
    case SubspaceKind::Harmonic: return "harmonic";
  }
  return "";
}

inline std::optional<SubspaceKind> subspace_from_string(std::string_view name) {
  for (auto kind : kAllSubspaceKinds)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

/// Dimension of each subspace as a function of the signature.
inline std::size_t subspace_dimension(const GameSpace& space, SubspaceKind kind) {
  const std::size_t n = space.players(), k = space.profiles(), ns = space.nonstrategic_dimension();
  switch (kind) {
    case SubspaceKind::PurePotential: return k - 1;
    case SubspaceKind::Nonstrategic: return ns;
    case SubspaceKind::PureHarmonic: return (n - 1) * k - ns + 1;
    case SubspaceKind::Potential: return k + ns - 1;
    case SubspaceKind::Harmonic: return (n - 1) * k + 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Structural matrices

/// E_i = I_{k[1,i-1]} ⊗ 1_{k_i} ⊗ I_{k[i+1,n]}, of shape k × k/k_i.
inline Matrix build_E(const GameSpace& space, std::size_t player) {
  space.check_player(player);
  const std::size_t n = space.players();
  return kron(kron(Matrix::identity(space.block(1, player - 1)), Matrix::ones(space.strategies(player), 1)),
              Matrix::identity(space.block(player + 1, n)));
}

/// 𝐞_i = E_i E_iᵀ = I ⊗ 1_{k_i×k_i} ⊗ I.
inline Matrix build_e(const GameSpace& space, std::size_t player) {
  space.check_player(player);
  const std::size_t n = space.players();
  const std::size_t ki = space.strategies(player);
  return kron(kron(Matrix::identity(space.block(1, player - 1)), Matrix::ones(ki, ki)),
              Matrix::identity(space.block(player + 1, n)));
}

/// 𝐞_{N_s} = Π_{i∈N_s} 𝐞_i, built as A_1 ⊗ … ⊗ A_n with A_i = 1_{k_i×k_i}
/// for members and I_{k_i} otherwise. The empty set gives I_k.
inline Matrix build_e_set(const GameSpace& space, const std::vector<std::size_t>& members) {
  std::vector<bool> in(space.players(), false);
  for (std::size_t i : members) {
    space.check_player(i);
    in[i - 1] = true;
  }
  Matrix out = Matrix::identity(1);
  for (std::size_t i = 0; i < space.players(); ++i) {
    const std::size_t ki = space.strategy_counts()[i];
    out = kron(out, in[i] ? Matrix::ones(ki, ki) : Matrix::identity(ki));
  }
  return out;
}

/// B_N = E_1 ⊕ … ⊕ E_n.
inline Matrix build_B_N(const GameSpace& space) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 1; i <= space.players(); ++i) blocks.push_back(build_E(space, i));
  return direct_sum(blocks);
}

/// B_P = [1_n ⊗ I_k | B_N], of shape nk × (k + Σ k/k_i).
inline Matrix build_B_P(const GameSpace& space) {
  const std::size_t k = space.profiles();
  return hstack(kron(Matrix::ones(space.players(), 1), Matrix::identity(k)), build_B_N(space));
}

/// P_N: the nk × k stack of blocks I_k − 𝐞_i/k_i.
inline Matrix build_P_N(const GameSpace& space) {
  const std::size_t k = space.profiles();
  Matrix out(space.dimension(), k);
  for (std::size_t i = 1; i <= space.players(); ++i) {
    Matrix block = Matrix::identity(k) - build_e(space, i) * Rational(1, static_cast<long>(space.strategies(i)));
    out.set_block((i - 1) * k, 0, block);
  }
  return out;
}

/// Σ_i (I_k − 𝐞_i/k_i), the matrix whose group inverse drives the
/// pure-potential projection.
inline Matrix pure_potential_gram(const GameSpace& space) {
  const std::size_t k = space.profiles();
  Matrix out(k, k);
  for (std::size_t i = 1; i <= space.players(); ++i)
    out += Matrix::identity(k) - build_e(space, i) * Rational(1, static_cast<long>(space.strategies(i)));
  return out;
}

/// (1/k_1)𝐞_1 ⊕ … ⊕ (1/k_n)𝐞_n.
inline Matrix nonstrategic_projection(const GameSpace& space) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 1; i <= space.players(); ++i)
    blocks.push_back(build_e(space, i) * Rational(1, static_cast<long>(space.strategies(i))));
  return direct_sum(blocks);
}

// ---------------------------------------------------------------------------
// Polynomials in the commuting idempotents f_i = 𝐞_i / k_i

/// Player subsets as bitmasks (bit i-1 for player i), ordered by
/// cardinality and then lexicographically.
inline std::vector<std::uint32_t> subsets_by_cardinality(std::size_t n) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> combo;
  for (std::size_t m = 0; m <= n; ++m) {
    combo.resize(m);
    for (std::size_t t = 0; t < m; ++t) combo[t] = t;
    while (true) {
      std::uint32_t mask = 0;
      for (std::size_t t : combo) mask |= 1u << t;
      out.push_back(mask);
      std::size_t t = m;
      while (t > 0 && combo[t - 1] == n - m + t - 1) --t;
      if (t == 0) break;
      ++combo[t - 1];
      for (std::size_t u = t; u < m; ++u) combo[u] = combo[u - 1] + 1;
    }
  }
  return out;
}

/// Element of the commutative algebra spanned by f_S = Π_{i∈S} 𝐞_i/k_i.
/// Since each f_i is idempotent, f_S·f_T = f_{S∪T}; a polynomial is a
/// coefficient per subset of players.
class IdempotentPolynomial {
 public:
  static constexpr std::size_t kMaxPlayers = 16;

  explicit IdempotentPolynomial(std::size_t players) : players_(players) {
    if (players > kMaxPlayers)
      throw std::domain_error("polynomial representation supports at most " + std::to_string(kMaxPlayers) +
                              " players");
    coeffs_.resize(std::size_t{1} << players);
  }

  static IdempotentPolynomial identity(std::size_t players) {
    IdempotentPolynomial p(players);
    p.coeffs_[0] = 1;
    return p;
  }

  /// f_i for a one-based player.
  static IdempotentPolynomial generator(std::size_t players, std::size_t player) {
    IdempotentPolynomial p(players);
    p.coeffs_[std::size_t{1} << (player - 1)] = 1;
    return p;
  }

  std::size_t players() const { return players_; }
  const Rational& coefficient(std::uint32_t mask) const { return coeffs_[mask]; }
  Rational& coefficient(std::uint32_t mask) { return coeffs_[mask]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  IdempotentPolynomial& operator+=(const IdempotentPolynomial& o) {
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += o.coeffs_[s];
    return *this;
  }
  IdempotentPolynomial& operator-=(const IdempotentPolynomial& o) {
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= o.coeffs_[s];
    return *this;
  }
  IdempotentPolynomial& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  friend IdempotentPolynomial operator+(IdempotentPolynomial a, const IdempotentPolynomial& b) { return a += b; }
  friend IdempotentPolynomial operator-(IdempotentPolynomial a, const IdempotentPolynomial& b) { return a -= b; }
  friend IdempotentPolynomial operator*(IdempotentPolynomial a, const Rational& c) { return a *= c; }

  friend IdempotentPolynomial operator*(const IdempotentPolynomial& a, const IdempotentPolynomial& b) {
    IdempotentPolynomial out(a.players_);
    for (std::size_t s = 0; s < a.coeffs_.size(); ++s) {
      if (a.coeffs_[s].is_zero()) continue;
      for (std::size_t t = 0; t < b.coeffs_.size(); ++t) {
        if (b.coeffs_[t].is_zero()) continue;
        out.coeffs_[s | t] += a.coeffs_[s] * b.coeffs_[t];
      }
    }
    return out;
  }

  friend bool operator==(const IdempotentPolynomial&, const IdempotentPolynomial&) = default;

  /// The k×k matrix Σ_S c_S Π_{i∈S} 𝐞_i/k_i.
  Matrix materialize(const GameSpace& space) const {
    if (space.players() != players_) throw DimensionError("polynomial and space disagree on player count");
    const std::size_t k = space.profiles();
    const auto& counts = space.strategy_counts();
    const std::uint32_t full = (std::uint32_t{1} << players_) - 1;

    // Entry (r,c) of f_S is Π_{i∈S} 1/k_i when r and c agree on every
    // player outside S, and 0 otherwise.
    std::vector<Rational> by_difference(std::size_t{1} << players_);
    std::vector<bool> known(by_difference.size(), false);
    auto value_for = [&](std::uint32_t diff) -> const Rational& {
      if (!known[diff]) {
        Rational v;
        const std::uint32_t free = full & ~diff;
        for (std::uint32_t extra = free;; extra = (extra - 1) & free) {
          const std::uint32_t s = diff | extra;
          if (!coeffs_[s].is_zero()) {
            Rational term = coeffs_[s];
            for (std::size_t i = 0; i < players_; ++i)
              if (s & (1u << i)) term /= Rational(static_cast<long>(counts[i]));
            v += term;
          }
          if (extra == 0) break;
        }
        by_difference[diff] = std::move(v);
        known[diff] = true;
      }
      return by_difference[diff];
    };

    Matrix out(k, k);
    std::vector<std::size_t> rd(players_), cd(players_);
    for (std::size_t r = 0; r < k; ++r) {
      digits(space, r, rd);
      for (std::size_t c = 0; c < k; ++c) {
        digits(space, c, cd);
        std::uint32_t diff = 0;
        for (std::size_t i = 0; i < players_; ++i)
          if (rd[i] != cd[i]) diff |= 1u << i;
        out(r, c) = value_for(diff);
      }
    }
    return out;
  }

 private:
  static void digits(const GameSpace& space, std::size_t index, std::vector<std::size_t>& out) {
    const auto& counts = space.strategy_counts();
    for (std::size_t i = counts.size(); i-- > 0;) {
      out[i] = index % counts[i];
      index /= counts[i];
    }
  }

  std::size_t players_;
  std::vector<Rational> coeffs_;
};

/// Σ_i (1 − f_i) in the polynomial algebra.
inline IdempotentPolynomial pure_potential_gram_polynomial(std::size_t players) {
  IdempotentPolynomial a = IdempotentPolynomial::identity(players) * Rational(static_cast<long>(players));
  for (std::size_t i = 1; i <= players; ++i) a -= IdempotentPolynomial::generator(players, i);
  return a;
}

namespace detail {

inline Rational binomial(std::size_t n, std::size_t j) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, j);
  return Rational(c);
}

inline Rational harmonic_number(std::size_t n) {
  Rational h;
  for (std::size_t i = 1; i <= n; ++i) h += Rational(1, static_cast<long>(i));
  return h;
}

}  // namespace detail

/// Coefficient of every f_S with |S| = j in the closed-form group inverse:
/// 1/((n−j)·C(n,j)) for j < n, and −(1 + 1/2 + … + 1/n) for j = n.
inline Rational closed_form_weight(std::size_t players, std::size_t cardinality) {
  if (cardinality == players) return -detail::harmonic_number(players);
  return Rational(1) /
         (Rational(static_cast<long>(players - cardinality)) * detail::binomial(players, cardinality));
}

inline IdempotentPolynomial group_inverse_closed_form_polynomial(std::size_t players) {
  IdempotentPolynomial x(players);
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << players); ++s)
    x.coefficient(s) = closed_form_weight(players, static_cast<std::size_t>(std::popcount(s)));
  return x;
}

/// Solves (Σ(1 − f_i))²·Y = Σ(1 − f_i) for Y in the 2^n-dimensional
/// coefficient space and returns A·Y², the group inverse of A = Σ(1 − f_i).
inline IdempotentPolynomial group_inverse_algorithm1_polynomial(std::size_t players) {
  const IdempotentPolynomial a = pure_potential_gram_polynomial(players);
  const IdempotentPolynomial a2 = a * a;
  const std::size_t dim = std::size_t{1} << players;

  // (A²·Y)[U] = Σ_{S ∪ T = U} A²[S]·d[T], linear in the unknowns d[T].
  Matrix system(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    if (a2.coefficient(static_cast<std::uint32_t>(s)).is_zero()) continue;
    for (std::size_t t = 0; t < dim; ++t) system(s | t, t) += a2.coefficient(static_cast<std::uint32_t>(s));
  }
  Matrix rhs(dim, 1);
  for (std::size_t u = 0; u < dim; ++u) rhs(u, 0) = a.coefficient(static_cast<std::uint32_t>(u));

  const auto d = solve_linear(system, rhs);
  if (!d) throw std::logic_error("internal error: group-inverse coefficient system is inconsistent");
  IdempotentPolynomial y(players);
  for (std::size_t t = 0; t < dim; ++t) y.coefficient(static_cast<std::uint32_t>(t)) = (*d)(t, 0);
  return a * (y * y);
}

/// Closed-form group inverse X of Σ(I_k − 𝐞_i/k_i), as a k×k matrix.
///
/// The weights depend only on |S|, so entry (r,c) collapses to
/// Π_{i∈D} 1/k_i · Σ_m w(|D|+m)·σ_m({1/k_i : i ∉ D}), with D the players on
/// which r and c differ and σ_m the elementary symmetric polynomials. This
/// avoids enumerating all 2^n subsets.
inline Matrix group_inverse_closed_form(const GameSpace& space) {
  const std::size_t n = space.players();
  const std::size_t k = space.profiles();
  const auto& counts = space.strategy_counts();
  std::vector<Rational> weights(n + 1);
  for (std::size_t j = 0; j <= n; ++j) weights[j] = closed_form_weight(n, j);

  std::map<std::vector<bool>, Rational> memo;
  auto entry_for = [&](const std::vector<bool>& differ) -> const Rational& {
    auto it = memo.find(differ);
    if (it != memo.end()) return it->second;
    Rational prefix = 1;
    std::size_t d = 0;
    std::vector<Rational> sigma{Rational(1)};  // elementary symmetric polynomials of the free players
    for (std::size_t i = 0; i < n; ++i) {
      const Rational inv(1, static_cast<long>(counts[i]));
      if (differ[i]) {
        prefix *= inv;
        ++d;
      } else {
        sigma.emplace_back();
        for (std::size_t m = sigma.size() - 1; m > 0; --m) sigma[m] += sigma[m - 1] * inv;
      }
    }
    Rational v;
    for (std::size_t m = 0; m < sigma.size(); ++m) v += weights[d + m] * sigma[m];
    return memo.emplace(differ, prefix * v).first->second;
  };

  Matrix out(k, k);
  std::vector<bool> differ(n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t rr = r, cc = c;
      for (std::size_t i = n; i-- > 0;) {
        differ[i] = (rr % counts[i]) != (cc % counts[i]);
        rr /= counts[i];
        cc /= counts[i];
      }
      out(r, c) = entry_for(differ);
    }
  }
  return out;
}

/// The same group inverse reached by solving for the coefficients
/// exactly in the f_S basis and materializing.
inline Matrix group_inverse_algorithm1(const GameSpace& space) {
  return group_inverse_algorithm1_polynomial(space.players()).materialize(space);
}

/// Lower block-triangular factor L with [P_N, B_N] = B_P·L: first block
/// column (I_k; −E_1ᵀ/k_1; …; −E_nᵀ/k_n), identity on the diagonal.
inline Matrix potential_factor(const GameSpace& space) {
  const std::size_t k = space.profiles();
  const std::size_t size = k + space.nonstrategic_dimension();
  Matrix l = Matrix::identity(size);
  std::size_t row = k;
  for (std::size_t i = 1; i <= space.players(); ++i) {
    Matrix et = build_E(space, i).transpose() * Rational(-1, static_cast<long>(space.strategies(i)));
    l.set_block(row, 0, et);
    row += et.rows();
  }
  return l;
}

/// B_N† = E_1ᵀ/k_1 ⊕ … ⊕ E_nᵀ/k_n.
inline Matrix nonstrategic_pseudoinverse(const GameSpace& space) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 1; i <= space.players(); ++i)
    blocks.push_back(build_E(space, i).transpose() * Rational(1, static_cast<long>(space.strategies(i))));
  return direct_sum(blocks);
}

// ---------------------------------------------------------------------------
// Projections

/// Orthogonal projections onto the five subspaces of one game space, plus
/// the matrices used to read off potential functions.
struct ProjectorSet {
  GameSpace space;
  Matrix pure_potential;  // P_N X P_Nᵀ
  Matrix nonstrategic;    // ⊕ 𝐞_i/k_i
  Matrix pure_harmonic;   // I − pure_potential − nonstrategic
  Matrix potential;       // pure_potential + nonstrategic
  Matrix harmonic;        // I − pure_potential
  Matrix group_inverse;   // X, k×k
  Matrix pn_pseudoinverse;  // P_N† = X P_Nᵀ, k×nk
  Matrix potential_map;     // L·[P_N†; B_N†], (k + Σk/k_i)×nk

  const Matrix& projection(SubspaceKind kind) const {
    switch (kind) {
      case SubspaceKind::PurePotential: return pure_potential;
      case SubspaceKind::Nonstrategic: return nonstrategic;
      case SubspaceKind::PureHarmonic: return pure_harmonic;
      case SubspaceKind::Potential: return potential;
      case SubspaceKind::Harmonic: return harmonic;
    }
    throw std::invalid_argument("unknown subspace kind");
  }
};

inline ProjectorSet build_projectors(const GameSpace& space) {
  const std::size_t nk = space.dimension();
  const Matrix identity = Matrix::identity(nk);
  Matrix x = group_inverse_closed_form(space);
  const Matrix pn = build_P_N(space);

  // Both products keep the sparse P_N on the left; X is symmetric.
  Matrix pn_dagger = (pn * x).transpose();
  Matrix pure_potential = pn * pn_dagger;
  Matrix nonstrategic = nonstrategic_projection(space);

  Matrix potential_map = potential_factor(space) * vstack(pn_dagger, nonstrategic_pseudoinverse(space));

  Matrix pure_harmonic = identity - pure_potential - nonstrategic;
  Matrix potential = pure_potential + nonstrategic;
  Matrix harmonic = identity - pure_potential;
  return ProjectorSet{space,
                      std::move(pure_potential),
                      std::move(nonstrategic),
                      std::move(pure_harmonic),
                      std::move(potential),
                      std::move(harmonic),
                      std::move(x),
                      std::move(pn_dagger),
                      std::move(potential_map)};
}

/// Shared, lazily built ProjectorSet for a signature. Each signature is
/// built at most once; concurrent callers wait for the first build.
inline std::shared_ptr<const ProjectorSet> projectors_for(const GameSpace& space) {
  struct Slot {
    std::once_flag once;
    std::shared_ptr<const ProjectorSet> value;
  };
  static std::mutex mutex;
  static std::map<std::vector<std::size_t>, std::shared_ptr<Slot>> cache;

  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mutex);
    auto& entry = cache[space.strategy_counts()];
    if (!entry) entry = std::make_shared<Slot>();
    slot = entry;
  }
  std::call_once(slot->once, [&] { slot->value = std::make_shared<const ProjectorSet>(build_projectors(space)); });
  return slot->value;
}

}  // namespace gamedecomp
