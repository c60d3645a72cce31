#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamedecomp/matrix.hpp"

namespace gamedecomp {

/// Default bound on n·k, the dimension of the game space.
inline constexpr std::size_t kDefaultSpaceCap = 4096;

class SpaceCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Signature [n; k_1, …, k_n] of a finite game space.
///
/// Players and strategies are numbered from one, matching the usual
/// notation for strategy profiles. Profiles are indexed with player 1 as
/// the most significant digit, which is the ordering produced by the
/// semitensor product δ_{k_1}^{s_1} ⋉ … ⋉ δ_{k_n}^{s_n}.
class GameSpace {
 public:
  explicit GameSpace(std::vector<std::size_t> strategy_counts, std::size_t cap = kDefaultSpaceCap)
      : counts_(std::move(strategy_counts)) {
    if (counts_.empty()) throw std::invalid_argument("a game space needs at least one player");
    profiles_ = 1;
    for (std::size_t k : counts_) {
      if (k == 0) throw std::invalid_argument("every player needs at least one strategy");
      if (profiles_ > cap / k) throw SpaceCapExceeded(cap_message(cap));
      profiles_ *= k;
    }
    if (profiles_ > cap / counts_.size()) throw SpaceCapExceeded(cap_message(cap));
  }

  std::size_t players() const { return counts_.size(); }
  const std::vector<std::size_t>& strategy_counts() const { return counts_; }

  /// k_i for a one-based player index.
  std::size_t strategies(std::size_t player) const {
    check_player(player);
    return counts_[player - 1];
  }

  /// k = Π k_i.
  std::size_t profiles() const { return profiles_; }

  /// n·k, the length of a structure vector.
  std::size_t dimension() const { return players() * profiles_; }

  /// k^{[p,q]} = Π_{j=p..q} k_j, and 1 when q < p. One-based, inclusive.
  std::size_t block(std::size_t p, std::size_t q) const {
    std::size_t out = 1;
    for (std::size_t j = p; j <= q && j <= counts_.size(); ++j) out *= counts_[j - 1];
    return out;
  }

  /// Σ k/k_i, the dimension of the nonstrategic subspace.
  std::size_t nonstrategic_dimension() const {
    std::size_t out = 0;
    for (std::size_t k : counts_) out += profiles_ / k;
    return out;
  }

  bool has_degenerate_player() const {
    for (std::size_t k : counts_)
      if (k == 1) return true;
    return false;
  }

  void check_player(std::size_t player) const {
    if (player == 0 || player > counts_.size())
      throw std::out_of_range("player index " + std::to_string(player) + " outside [1," +
                              std::to_string(counts_.size()) + "]");
  }

  /// "[n;k1,k2,...]"
  std::string str() const {
    std::string s = "[" + std::to_string(players()) + ";";
    for (std::size_t i = 0; i < counts_.size(); ++i) s += (i ? "," : "") + std::to_string(counts_[i]);
    return s + "]";
  }

  friend bool operator==(const GameSpace& a, const GameSpace& b) { return a.counts_ == b.counts_; }
  friend auto operator<=>(const GameSpace& a, const GameSpace& b) { return a.counts_ <=> b.counts_; }

 private:
  std::string cap_message(std::size_t cap) const {
    std::string s = "space cap exceeded: n*k for [" + std::to_string(counts_.size()) + ";";
    for (std::size_t i = 0; i < counts_.size(); ++i) s += (i ? "," : "") + std::to_string(counts_[i]);
    return s + "] is larger than " + std::to_string(cap);
  }

  std::vector<std::size_t> counts_;
  std::size_t profiles_ = 1;
};

/// A pure strategy profile (s_1, …, s_n) with 1 ≤ s_i ≤ k_i.
struct StrategyProfile {
  std::vector<std::size_t> choices;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

inline void validate_profile(const GameSpace& space, const StrategyProfile& s) {
  if (s.choices.size() != space.players())
    throw std::out_of_range("profile has " + std::to_string(s.choices.size()) + " choices for " +
                            std::to_string(space.players()) + " players");
  for (std::size_t i = 0; i < s.choices.size(); ++i) {
    if (s.choices[i] == 0 || s.choices[i] > space.strategy_counts()[i])
      throw std::out_of_range("strategy " + std::to_string(s.choices[i]) + " of player " + std::to_string(i + 1) +
                              " outside [1," + std::to_string(space.strategy_counts()[i]) + "]");
  }
}

/// 1 + Σ (s_i − 1)·k^{[i+1,n]}, in [1, k].
inline std::size_t profile_index(const GameSpace& space, const StrategyProfile& s) {
  validate_profile(space, s);
  std::size_t index = 0;
  for (std::size_t i = 0; i < s.choices.size(); ++i) index = index * space.strategy_counts()[i] + (s.choices[i] - 1);
  return index + 1;
}

/// Inverse of profile_index.
inline StrategyProfile index_profile(const GameSpace& space, std::size_t index) {
  if (index == 0 || index > space.profiles())
    throw std::out_of_range("profile index " + std::to_string(index) + " outside [1," +
                            std::to_string(space.profiles()) + "]");
  StrategyProfile s{std::vector<std::size_t>(space.players())};
  std::size_t rest = index - 1;
  for (std::size_t i = space.players(); i-- > 0;) {
    const std::size_t k = space.strategy_counts()[i];
    s.choices[i] = rest % k + 1;
    rest /= k;
  }
  return s;
}

/// Every profile of the space in index order.
inline std::vector<StrategyProfile> all_profiles(const GameSpace& space) {
  std::vector<StrategyProfile> out;
  out.reserve(space.profiles());
  for (std::size_t idx = 1; idx <= space.profiles(); ++idx) out.push_back(index_profile(space, idx));
  return out;
}

/// A finite normal-form game: one structure vector V_i^c per player.
class Game {
 public:
  Game(GameSpace space, std::vector<std::vector<Rational>> payoff_rows, std::optional<std::string> name = {})
      : space_(std::move(space)), rows_(std::move(payoff_rows)), name_(std::move(name)) {
    if (rows_.size() != space_.players())
      throw DimensionError("payoff count mismatch: " + std::to_string(rows_.size()) + " payoff rows for " +
                           std::to_string(space_.players()) + " players");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].size() != space_.profiles())
        throw DimensionError("payoff count mismatch: player " + std::to_string(i + 1) + " has " +
                             std::to_string(rows_[i].size()) + " payoffs, expected " +
                             std::to_string(space_.profiles()));
    }
  }

  static Game zero(const GameSpace& space) {
    return Game(space, std::vector<std::vector<Rational>>(space.players(), std::vector<Rational>(space.profiles())));
  }

  /// Splits a structure vector (V_1^c, …, V_n^c)ᵀ of length n·k into rows.
  static Game from_structure_vector(const GameSpace& space, const Matrix& v) {
    if (v.cols() != 1 || v.rows() != space.dimension())
      throw DimensionError("structure vector of shape " + v.shape() + " for a space of dimension " +
                           std::to_string(space.dimension()));
    std::vector<std::vector<Rational>> rows(space.players(), std::vector<Rational>(space.profiles()));
    for (std::size_t i = 0; i < space.players(); ++i)
      for (std::size_t j = 0; j < space.profiles(); ++j) rows[i][j] = v(i * space.profiles() + j, 0);
    return Game(space, std::move(rows));
  }

  const GameSpace& space() const { return space_; }
  const std::vector<std::vector<Rational>>& payoff_rows() const { return rows_; }
  const std::optional<std::string>& name() const { return name_; }
  void set_name(std::optional<std::string> name) { name_ = std::move(name); }

  /// Row V_i^c of a one-based player.
  const std::vector<Rational>& payoffs(std::size_t player) const {
    space_.check_player(player);
    return rows_[player - 1];
  }

  /// c_i(s).
  const Rational& payoff(std::size_t player, const StrategyProfile& s) const {
    space_.check_player(player);
    return rows_[player - 1][profile_index(space_, s) - 1];
  }

  /// Payoff by one-based player and one-based profile index.
  const Rational& at(std::size_t player, std::size_t index) const { return rows_[player - 1][index - 1]; }

  /// (V_1^c, …, V_n^c)ᵀ as an nk×1 column.
  Matrix structure_vector() const {
    Matrix v(space_.dimension(), 1);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < rows_[i].size(); ++j) v(i * space_.profiles() + j, 0) = rows_[i][j];
    return v;
  }

  bool is_zero() const {
    for (const auto& row : rows_)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
    return true;
  }

  Game& operator+=(const Game& o) { return combine(o, 1); }
  Game& operator-=(const Game& o) { return combine(o, -1); }
  friend Game operator+(Game a, const Game& b) { return a += b; }
  friend Game operator-(Game a, const Game& b) { return a -= b; }

  /// Exact entrywise equality; the name does not take part.
  friend bool operator==(const Game& a, const Game& b) { return a.space_ == b.space_ && a.rows_ == b.rows_; }

  friend std::ostream& operator<<(std::ostream& os, const Game& g) {
    os << g.space_.str();
    for (const auto& row : g.rows_) {
      os << " [";
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
      os << "]";
    }
    return os;
  }

 private:
  Game& combine(const Game& o, int sign) {
    if (!(space_ == o.space_)) throw DimensionError("games from different spaces " + space_.str() + " and " + o.space_.str());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (sign > 0)
          rows_[i][j] += o.rows_[i][j];
        else
          rows_[i][j] -= o.rows_[i][j];
      }
    return *this;
  }

  GameSpace space_;
  std::vector<std::vector<Rational>> rows_;
  std::optional<std::string> name_;
};

/// Per-player probability vectors x_1, …, x_n.
struct MixedProfile {
  std::vector<std::vector<Rational>> probabilities;

  static MixedProfile uniform(const GameSpace& space) {
    MixedProfile x;
    for (std::size_t k : space.strategy_counts())
      x.probabilities.emplace_back(k, Rational(1, static_cast<long>(k)));
    return x;
  }

  /// All mass on the pure profile s.
  static MixedProfile degenerate(const GameSpace& space, const StrategyProfile& s) {
    validate_profile(space, s);
    MixedProfile x;
    for (std::size_t i = 0; i < space.players(); ++i) {
      x.probabilities.emplace_back(space.strategy_counts()[i]);
      x.probabilities.back()[s.choices[i] - 1] = 1;
    }
    return x;
  }

  void validate(const GameSpace& space) const {
    if (probabilities.size() != space.players()) throw std::invalid_argument("mixed profile has wrong player count");
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
      const auto& xi = probabilities[i];
      if (xi.size() != space.strategy_counts()[i])
        throw std::invalid_argument("mixed strategy of player " + std::to_string(i + 1) + " has wrong length");
      Rational total;
      for (const auto& p : xi) {
        if (p.sign() < 0) throw std::invalid_argument("negative probability");
        total += p;
      }
      if (total != Rational(1)) throw std::invalid_argument("mixed strategy does not sum to one");
    }
  }
};

/// Σ_s c_i(s)·Π_j x_j(s_j).
inline Rational expected_payoff(const Game& g, std::size_t player, const MixedProfile& x) {
  const GameSpace& space = g.space();
  space.check_player(player);
  x.validate(space);
  const auto& row = g.payoffs(player);
  Rational total;
  std::vector<std::size_t> digits(space.players(), 0);
  for (std::size_t idx = 0; idx < space.profiles(); ++idx) {
    if (!row[idx].is_zero()) {
      Rational weight = 1;
      for (std::size_t j = 0; j < digits.size() && !weight.is_zero(); ++j) weight *= x.probabilities[j][digits[j]];
      if (!weight.is_zero()) total += row[idx] * weight;
    }
    for (std::size_t j = digits.size(); j-- > 0;) {
      if (++digits[j] < space.strategy_counts()[j]) break;
      digits[j] = 0;
    }
  }
  return total;
}

}  // namespace gamedecomp
