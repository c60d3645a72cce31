#include <gtest/gtest.h>

#include "support.hpp"

namespace gamedecomp {
namespace {

using testing::Rng;

TEST(Definitions, Examples) {
  const Game zero = Game::zero(GameSpace({2, 3}));
  const Game rps = testing::rock_paper_scissors();
  EXPECT_TRUE(check_nonstrategic_defn(zero));
  EXPECT_FALSE(check_nonstrategic_defn(rps));
  EXPECT_TRUE(check_pure_harmonic_defn(rps));
  EXPECT_TRUE(check_harmonic_defn(rps));
  EXPECT_FALSE(check_potential_defn(rps, PotentialFunction{std::vector<Rational>(9)}));
  EXPECT_THROW(check_potential_defn(rps, PotentialFunction{std::vector<Rational>(4)}), DimensionError);
}

TEST(Definitions, NonstrategicGamesAreHarmonic) {
  Rng rng(41);
  for (const auto& space : testing::small_spaces()) {
    const Game g = project(rng.game(space), SubspaceKind::Nonstrategic);
    EXPECT_TRUE(check_nonstrategic_defn(g));
    EXPECT_TRUE(check_harmonic_defn(g));
  }
}

TEST(Definitions, SymmetricTwoPlayerPureHarmonicCondition) {
  Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    std::vector<Rational> p;
    for (int j = 0; j < 9; ++j) p.push_back(rng.next());
    if (t % 3 == 0) {
      const Rational b = p[1];
      p = {0, b, -b, -b, 0, b, b, -b, 0};
      if (t % 6 == 0) p[4] = 1;
    }
    const bool condition = p[0].is_zero() && p[4].is_zero() && p[8].is_zero() && p[1] == p[6] && p[1] == -p[2] &&
                           p[1] == -p[3] && p[1] == -p[7] && p[1] == p[5];
    const Game g = testing::symmetric_two_player(p);
    EXPECT_EQ(check_pure_harmonic_defn(g), condition);
    EXPECT_EQ(is_member(g, SubspaceKind::PureHarmonic), condition);
  }
}

TEST(Definitions, AgreeWithProjectionMembership) {
  Rng rng(43);
  for (const auto& space : testing::small_spaces()) {
    SCOPED_TRACE(space.str());
    for (int t = 0; t < 40; ++t) {
      Game g = rng.game(space);
      switch (t % 4) {
        case 1: g = project(g, SubspaceKind::Nonstrategic); break;
        case 2: g = project(g, SubspaceKind::PureHarmonic); break;
        case 3: g = project(g, SubspaceKind::Harmonic); break;
        default: break;
      }
      EXPECT_EQ(check_nonstrategic_defn(g), is_member(g, SubspaceKind::Nonstrategic));
      EXPECT_EQ(check_pure_harmonic_defn(g), is_member(g, SubspaceKind::PureHarmonic));
      EXPECT_EQ(check_harmonic_defn(g), is_member(g, SubspaceKind::Harmonic));
    }
  }
}

TEST(Definitions, PotentialCheckIgnoresConstants) {
  Rng rng(44);
  const Game g = testing::symmetric_three_player({3, -2, 5, 1, 0, 4});
  const auto phi = potential_function(g);
  ASSERT_TRUE(phi.has_value());
  EXPECT_TRUE(check_potential_defn(g, *phi));
  EXPECT_TRUE(check_potential_defn(g, phi->shifted(Rational(7, 3))));
  const Game other = rng.non_potential_game(GameSpace({2, 2, 2}));
  EXPECT_FALSE(check_potential_defn(other, *phi));
  EXPECT_FALSE(check_potential_defn(other, phi->shifted(-1)));
}

TEST(PureNash, Examples) {
  EXPECT_TRUE(pure_nash(testing::matching_pennies()).empty());
  EXPECT_TRUE(pure_nash(testing::rock_paper_scissors()).empty());
  EXPECT_EQ(pure_nash(testing::coordination_game()), (std::vector<StrategyProfile>{{{1, 1}}, {{2, 2}}}));
  EXPECT_FALSE(pure_nash(testing::symmetric_three_player({1, 1, 2, -1, 1, -1})).empty());
}

bool is_pure_nash_brute_force(const Game& g, const StrategyProfile& s) {
  for (std::size_t i = 1; i <= g.space().players(); ++i) {
    StrategyProfile t = s;
    for (std::size_t x = 1; x <= g.space().strategies(i); ++x) {
      t.choices[i - 1] = x;
      if (g.payoff(i, t) > g.payoff(i, s)) return false;
    }
  }
  return true;
}

TEST(PureNash, MatchesBruteForce) {
  Rng rng(45);
  for (const auto& space : testing::small_spaces()) {
    for (int t = 0; t < 10; ++t) {
      const Game g = rng.game(space);
      std::vector<StrategyProfile> expected;
      for (const auto& s : all_profiles(space))
        if (is_pure_nash_brute_force(g, s)) expected.push_back(s);
      EXPECT_EQ(pure_nash(g), expected);
    }
  }
}

TEST(PureNash, NonstrategicGamesMakeEveryProfileAnEquilibrium) {
  Rng rng(46);
  for (const auto& space : testing::small_spaces()) {
    const Game g = project(rng.game(space), SubspaceKind::Nonstrategic);
    EXPECT_EQ(pure_nash(g), all_profiles(space));
  }
}

TEST(PureNash, PotentialGamesHaveAnEquilibrium) {
  Rng rng(47);
  for (const auto& space : testing::small_spaces())
    for (int t = 0; t < 5; ++t) EXPECT_FALSE(pure_nash(rng.potential_game(space)).empty());
}

TEST(UniformMixed, Examples) {
  EXPECT_TRUE(uniform_mixed_nash_check(testing::rock_paper_scissors()));
  EXPECT_TRUE(uniform_mixed_nash_check(testing::matching_pennies()));
  // Both players get 1/2 under uniform play and 1/2 after any pure deviation.
  EXPECT_TRUE(uniform_mixed_nash_check(testing::coordination_game()));
  EXPECT_FALSE(uniform_mixed_nash_check(testing::make_game({2, 2}, {2, 0, 0, 1, 2, 0, 0, 1})));
  const NashReport report = nash_report(testing::rock_paper_scissors());
  EXPECT_TRUE(report.pure_equilibria.empty());
  EXPECT_TRUE(report.uniform_mixed_is_nash);
}

bool uniform_mixed_brute_force(const Game& g) {
  const GameSpace& space = g.space();
  for (std::size_t j = 1; j <= space.players(); ++j) {
    std::vector<Rational> by_choice(space.strategies(j));
    for (const auto& s : all_profiles(space)) {
      Rational weight = 1;
      for (std::size_t i = 1; i <= space.players(); ++i)
        if (i != j) weight *= Rational(1, static_cast<long>(space.strategies(i)));
      by_choice[s.choices[j - 1] - 1] += g.payoff(j, s) * weight;
    }
    Rational mean;
    for (const auto& v : by_choice) mean += v;
    mean /= Rational(static_cast<long>(by_choice.size()));
    for (const auto& v : by_choice)
      if (v > mean) return false;
  }
  return true;
}

TEST(UniformMixed, MatchesBruteForce) {
  Rng rng(50);
  EXPECT_TRUE(uniform_mixed_brute_force(testing::coordination_game()));
  for (const auto& space : testing::small_spaces())
    for (int t = 0; t < 10; ++t) {
      const Game g = t % 2 ? rng.game(space) : rng.harmonic_game(space);
      EXPECT_EQ(uniform_mixed_nash_check(g), uniform_mixed_brute_force(g));
    }
}

TEST(UniformMixed, HarmonicGamesPass) {
  Rng rng(48);
  for (const auto& space : testing::small_spaces())
    for (int t = 0; t < 10; ++t) EXPECT_TRUE(uniform_mixed_nash_check(rng.harmonic_game(space)));
}

TEST(HarmonicZeroCheck, Examples) {
  const Game zero = Game::zero(GameSpace({2, 3}));
  for (const auto& s : all_profiles(zero.space())) EXPECT_TRUE(harmonic_pure_nash_zero_check(zero, s));
  const Game rps = testing::rock_paper_scissors();
  for (const auto& s : all_profiles(rps.space())) EXPECT_FALSE(harmonic_pure_nash_zero_check(rps, s));
  EXPECT_THROW(harmonic_pure_nash_zero_check(testing::coordination_game(), {{1, 1}}), std::invalid_argument);
}

TEST(HarmonicZeroCheck, AgreesWithPureNash) {
  Rng rng(49);
  const GameSpace space({2, 3});
  for (int t = 0; t < 30; ++t) {
    Game g = project(rng.game(space), SubspaceKind::PureHarmonic);
    if (t % 3 == 0) g = Game::zero(space);
    const auto equilibria = pure_nash(g);
    for (const auto& s : all_profiles(space)) {
      const bool listed = std::find(equilibria.begin(), equilibria.end(), s) != equilibria.end();
      EXPECT_EQ(harmonic_pure_nash_zero_check(g, s), listed);
    }
  }
}

TEST(HarmonicKernel, TwoByTwoIsTrivial) {
  const GameSpace space({2, 2});
  for (const auto& s : all_profiles(space)) EXPECT_EQ(harmonic_nash_kernel_dim(space, s), 0u);
}

TEST(HarmonicKernel, IndependentOfProfile) {
  for (const auto& space : {GameSpace({3, 3}), GameSpace({2, 3}), GameSpace({2, 2, 2}), GameSpace({3, 2, 2})}) {
    const auto profiles = all_profiles(space);
    const std::size_t first = harmonic_nash_kernel_dim(space, profiles.front());
    for (const auto& s : profiles) EXPECT_EQ(harmonic_nash_kernel_dim(space, s), first);
    EXPECT_LT(first, subspace_dimension(space, SubspaceKind::PureHarmonic));
  }
}

TEST(HarmonicKernel, MatchesDirectConstraintCount) {
  for (const auto& space : {GameSpace({3, 3}), GameSpace({2, 2, 2}), GameSpace({2, 3, 2})}) {
    const StrategyProfile s = all_profiles(space).back();
    const std::size_t nk = space.dimension();
    Matrix constraints(0, nk);
    // Pure harmonic equations and zero payoffs on every unilateral deviation from s.
    const Matrix ph = Matrix::identity(nk) - projectors_for(space)->pure_harmonic;
    constraints = vstack(constraints, ph);
    for (std::size_t i = 1; i <= space.players(); ++i) {
      StrategyProfile t = s;
      for (std::size_t x = 1; x <= space.strategies(i); ++x) {
        t.choices[i - 1] = x;
        Matrix row(1, nk);
        row(0, (i - 1) * space.profiles() + profile_index(space, t) - 1) = 1;
        constraints = vstack(constraints, row);
      }
    }
    EXPECT_EQ(harmonic_nash_kernel_dim(space, s), nk - rank(constraints)) << space.str();
  }
}

}  // namespace
}  // namespace gamedecomp
