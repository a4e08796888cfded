#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <unordered_set>

#include "evlab/coloured.hpp"
#include "evlab/experiments.hpp"
#include "evlab/lyapunov.hpp"

using namespace evlab;

namespace {

const Configuration kD1 = Configuration::from_blocks({1, 1});
const Configuration kExample = Configuration::from_blocks({8, 3, 4, 1, 2, 1, 2, 1, 8, 4});

constexpr Particle u0{0, false}, u1{1, false}, c0{0, true}, c1{1, true};

std::int64_t count(const ColouredConfiguration& x, std::uint8_t type) {
  std::int64_t n = 0;
  for (const auto& p : x.window()) n += p.coloured && p.type == type;
  return n;
}

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Coloured, InitialColouringExamples) {
  const auto d1 = initial_colouring(kD1);
  EXPECT_EQ(d1.window(), (std::vector<Particle>{c0, c1}));
  EXPECT_EQ(d1.chi(), 2);
  EXPECT_EQ(d1.key(), "1|ab|0");

  const auto s23 = initial_colouring(Configuration::from_blocks({2, 3}));
  EXPECT_EQ(count(s23, 0), 2);
  EXPECT_EQ(count(s23, 1), 3);
  EXPECT_EQ(s23.chi(), 5);

  const auto fig = initial_colouring(kExample);
  EXPECT_EQ(count(fig, 0), 24);
  EXPECT_EQ(count(fig, 1), 4);
  EXPECT_EQ(fig.chi(), 28);
  EXPECT_EQ(fig.base(), kExample);

  EXPECT_THROW(initial_colouring(Configuration{}), std::domain_error);
}

TEST(Coloured, InitialColouringCountsMatchRectangle) {
  for (const auto& s : enumerate_configurations(12)) {
    if (s.is_ground()) continue;
    const auto x = initial_colouring(s);
    const auto rect = g_rect(s);
    ASSERT_EQ(count(x, 0), rect.X);
    ASSERT_EQ(count(x, 1), rect.Y);
    ASSERT_EQ(x.base(), s);
    ASSERT_EQ(x.mask().size(), static_cast<std::size_t>(s.size()));
    ASSERT_TRUE(zeta(x).holding);
    ASSERT_TRUE(ordering_holds(x));
    ASSERT_TRUE(ground_state_obstruction(x));
  }
}

TEST(Coloured, ExclusionCarriesColours) {
  const auto x = initial_colouring(kD1);
  // TenPair 0 swaps the left context 1 with the coloured 0.
  const auto y = apply_event(x, Event{MoveKind::kExclusion, PairIndex::ten(0), 0.0}, Params{0.0, 0.0});
  EXPECT_EQ(y.base(), apply_exclusion(kD1, PairIndex::ten(0)));
  EXPECT_EQ(y.window(), (std::vector<Particle>{c0, u1, c1}));
  EXPECT_EQ(y.chi(), 2);
  // A rejected proposal leaves everything in place.
  const auto z = apply_event(x, Event{MoveKind::kExclusion, PairIndex::ten(0), 0.99}, Params{0.0, 0.5});
  EXPECT_EQ(z, x);
}

TEST(Coloured, VoterFourCases) {
  const ColouredConfiguration one_coloured({u0, c1}, Frame{});
  const auto up = apply_event(one_coloured, Event{MoveKind::kVoter, PairIndex::ten(1), 0.9}, Params{1.0, 0.5});
  EXPECT_EQ(up.window(), (std::vector<Particle>{u0, c1, c1}));
  EXPECT_EQ(up.chi(), 2);
  const auto down = apply_event(one_coloured, Event{MoveKind::kVoter, PairIndex::ten(1), 0.1}, Params{1.0, 0.5});
  EXPECT_TRUE(down.base().is_ground());
  EXPECT_EQ(down.chi(), 0);

  const ColouredConfiguration zero_coloured({c0, u1}, Frame{});
  const auto spread = apply_event(zero_coloured, Event{MoveKind::kVoter, PairIndex::oh_one(1), 0.1}, Params{1.0, 0.5});
  EXPECT_TRUE(spread.base().is_ground());
  EXPECT_EQ(spread.chi(), 2);
  EXPECT_EQ(spread.window(), (std::vector<Particle>{c0, c0}));
  const auto lost = apply_event(zero_coloured, Event{MoveKind::kVoter, PairIndex::oh_one(1), 0.9}, Params{1.0, 0.5});
  EXPECT_EQ(lost.chi(), 0);

  const auto both = initial_colouring(kD1);
  const auto same = apply_event(both, Event{MoveKind::kVoter, PairIndex::oh_one(1), 0.9}, Params{1.0, 0.5});
  EXPECT_EQ(same.chi(), 2);
}

TEST(Coloured, ZetaAndObstructionExamples) {
  EXPECT_TRUE(zeta(initial_colouring(kExample)).holding);
  EXPECT_TRUE(zeta(ColouredConfiguration({c0, u1, c0, u1}, Frame{})).holding);
  const ColouredConfiguration segment({c1, u0, c0}, Frame{});
  const auto z = zeta(segment);
  EXPECT_FALSE(z.holding);
  EXPECT_EQ(z.word, "100");
  EXPECT_EQ(z.length(), 3);

  EXPECT_TRUE(ground_state_obstruction(initial_colouring(kD1)));
  EXPECT_FALSE(ground_state_obstruction(ColouredConfiguration::uncoloured(kD1)));
  EXPECT_FALSE(ground_state_obstruction(ColouredConfiguration({c1, c0}, Frame{})));
}

TEST(Coloured, PrimedGroundState) {
  const auto x = ColouredConfiguration::primed_ground_state();
  EXPECT_TRUE(x.window().empty());
  EXPECT_FALSE(x.standard_frame());
  EXPECT_TRUE(zeta(x).holding);
  EXPECT_EQ(x.pair_count(), 1);
  EXPECT_THROW(x.base(), std::logic_error);
}

TEST(Coloured, BaseTracksUncolouredChain) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    auto x = initial_colouring(kExample);
    Configuration s = kExample;
    const Params params{0.4, 0.35};
    for (int t = 0; t < 2000; ++t) {
      x = coloured_step(x, params, a);
      s = sample_step(s, params, b);
      ASSERT_EQ(x.base(), s);
    }
  }
}

TEST(Coloured, ObservationsAlongTrajectories) {
  for (const Params params : {Params{0.5, 0.5}, Params{1.0, 0.5}, Params{0.1, 0.8}, Params{0.9, 0.2}}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      auto x = initial_colouring(Configuration::from_blocks({2, 1, 1, 3}));
      for (int t = 0; t < 3000; ++t) {
        const auto before = x.chi();
        x = coloured_step(x, params, rng);
        ASSERT_LE(std::abs(x.chi() - before), 1);
        ASSERT_TRUE(ordering_holds(x)) << x.key();
        if (x.base().is_ground()) ASSERT_FALSE(ground_state_obstruction(x)) << x.key();
      }
    }
  }
}

TEST(Coloured, ChiMartingaleNearInitialStates) {
  // Reachable set within 3 steps using every move type, then the exact law at a few parameter points.
  std::vector<ColouredConfiguration> states;
  std::unordered_set<std::string> seen;
  for (const auto& s0 : enumerate_configurations(6)) {
    if (s0.is_ground()) continue;
    std::unordered_set<std::string> local;  // depth is measured from this s0
    std::vector<ColouredConfiguration> frontier{initial_colouring(s0)};
    for (int depth = 0; depth <= 3; ++depth) {
      std::vector<ColouredConfiguration> next;
      for (const auto& x : frontier) {
        if (!local.insert(x.key()).second) continue;
        if (seen.insert(x.key()).second) states.push_back(x);
        if (depth == 3) continue;
        for (const auto& [y, prob] : coloured_step_law(x, ExactParams{q(1, 2), q(1, 2)})) next.push_back(y);
      }
      frontier = std::move(next);
    }
  }
  ASSERT_GT(states.size(), 100u);
  for (const auto& beta : {q(0, 1), q(2, 7), q(1, 1)}) {
    for (const auto& p : {q(0, 1), q(3, 7), q(1, 1)}) {
      for (const auto& x : states) {
        Rational mean = 0, mass = 0;
        for (const auto& [y, prob] : coloured_step_law(x, ExactParams{beta, p})) {
          mean += prob * y.chi();
          mass += prob;
          ASSERT_LE(std::abs(y.chi() - x.chi()), 1);
        }
        ASSERT_EQ(mass, 1);
        ASSERT_EQ(mean, x.chi()) << x.key();
      }
    }
  }
}

TEST(Coloured, StepLawMatchesUncolouredLaw) {
  const ExactParams params{q(2, 7), q(3, 7)};
  for (const auto& s : enumerate_configurations(8)) {
    if (s.is_ground()) continue;
    std::map<Configuration, Rational> projected;
    for (const auto& [y, prob] : coloured_step_law(initial_colouring(s), params)) projected[y.base()] += prob;
    const auto law = step_distribution(s, params);
    ASSERT_EQ(projected.size(), law.entries.size());
    for (const auto& e : law.entries) ASSERT_EQ(projected[e.successor], e.probability);
  }
}

TEST(Coloured, ReflectionMatchesInDistribution) {
  const std::vector<std::int64_t> checkpoints{10, 100, 1000};
  const auto points = reflection_comparison(Params{0.3, 0.7}, checkpoints, 2000, 17, 0);
  ASSERT_EQ(points.size(), checkpoints.size());
  for (const auto& pt : points) {
    EXPECT_LT(std::abs(pt.z), 4.0) << "t=" << pt.t;
    EXPECT_GT(pt.overlap_mean, 0.0);
  }
}
