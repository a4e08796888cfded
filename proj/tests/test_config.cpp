#include <gtest/gtest.h>

#include "evlab/config.hpp"
#include "evlab/lyapunov.hpp"
#include "oracle/word_oracle.hpp"

using namespace evlab;

namespace {

const Configuration kExample = Configuration::from_blocks({8, 3, 4, 1, 2, 1, 2, 1, 8, 4});
const Configuration kD1 = Configuration::from_blocks({1, 1});

std::vector<std::int64_t> blocks_of(const Configuration& s) { return {s.blocks().begin(), s.blocks().end()}; }

}  // namespace

TEST(Config, FromBlocks) {
  EXPECT_EQ(kExample.block_pairs(), 5);
  EXPECT_EQ(kExample.size(), 34);
  const auto ground = Configuration::from_blocks({});
  EXPECT_TRUE(ground.is_ground());
  EXPECT_EQ(ground.size(), 0);
  EXPECT_EQ(ground.block_pairs(), 0);
  EXPECT_EQ(kD1.block_pairs(), 1);
  EXPECT_EQ(kD1.size(), 2);
}

TEST(Config, FromBlocksRejectsBadInput) {
  EXPECT_THROW(Configuration::from_blocks({1, 2, 3}), ParseError);
  try {
    Configuration::from_blocks({1, 0, 2, 1});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(Configuration::from_blocks({-1, 1}), ParseError);
}

TEST(Config, FromString) {
  EXPECT_EQ(Configuration::from_string("01"), kD1);
  EXPECT_TRUE(Configuration::from_string("111000").is_ground());
  EXPECT_TRUE(Configuration::from_string("").is_ground());
  EXPECT_EQ(blocks_of(Configuration::from_string("0010011")), (std::vector<std::int64_t>{2, 1, 2, 2}));
  EXPECT_EQ(blocks_of(Configuration::from_string("11001000")), (std::vector<std::int64_t>{2, 1}));
  try {
    Configuration::from_string("01x1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Config, RenderRoundTrip) {
  EXPECT_EQ(kD1.render(), "...11101000...");
  for (const auto& s : enumerate_configurations(12)) {
    EXPECT_EQ(Configuration::from_string(s.render().substr(3, s.render().size() - 6)), s);
    EXPECT_EQ(Configuration::from_string(s.word()), s);
  }
}

TEST(Config, PrefixSums) {
  const auto [R, T] = prefix_sums(kExample);
  EXPECT_EQ(R, (std::vector<std::int64_t>{8, 12, 14, 16, 24}));
  EXPECT_EQ(T, (std::vector<std::int64_t>{10, 7, 6, 5, 4}));
  EXPECT_EQ(R.back() + T.front(), kExample.size());
  const auto d1 = prefix_sums(kD1);
  EXPECT_EQ(d1.R, std::vector<std::int64_t>{1});
  EXPECT_EQ(d1.T, std::vector<std::int64_t>{1});
  const auto g = prefix_sums(Configuration{});
  EXPECT_TRUE(g.R.empty() && g.T.empty());
}

TEST(Config, StaircasePath) {
  EXPECT_EQ(staircase_path(kD1), (StaircasePath{{0, 1}, {1, 1}, {1, 0}}));
  EXPECT_EQ(staircase_path(Configuration::from_blocks({2, 1})), (StaircasePath{{0, 1}, {1, 1}, {2, 1}, {2, 0}}));
  EXPECT_TRUE(staircase_path(Configuration{}).empty());
  EXPECT_EQ(staircase_path(kExample).size(), 35u);
}

TEST(Config, StaircaseAreaIsF1) {
  for (const auto& s : enumerate_configurations(12)) {
    const auto path = staircase_path(s);
    std::int64_t area = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i].x == path[i - 1].x + 1) area += path[i].y;  // right step: column of height y
      ASSERT_TRUE((path[i].x == path[i - 1].x + 1 && path[i].y == path[i - 1].y) ||
                  (path[i].x == path[i - 1].x && path[i].y == path[i - 1].y - 1));
    }
    ASSERT_EQ(area, f1(s)) << s.render();
  }
}

TEST(Config, VoterExamples) {
  EXPECT_TRUE(apply_voter(kD1, PairIndex::oh_one(1), VoterTarget::kZeros).is_ground());
  EXPECT_TRUE(apply_voter(Configuration{}, PairIndex::ten(0), VoterTarget::kOnes).is_ground());
  EXPECT_TRUE(apply_voter(Configuration{}, PairIndex::ten(0), VoterTarget::kZeros).is_ground());
  EXPECT_EQ(apply_voter(kD1, PairIndex::ten(0), VoterTarget::kZeros), Configuration::from_blocks({2, 1}));
}

TEST(Config, ExclusionExamples) {
  EXPECT_EQ(apply_exclusion(Configuration{}, PairIndex::ten(0)), kD1);
  EXPECT_EQ(apply_exclusion(kD1, PairIndex::ten(1)), Configuration::from_blocks({2, 1}));
  EXPECT_TRUE(apply_exclusion(kD1, PairIndex::oh_one(1)).is_ground());
}

TEST(Config, InvalidPairThrows) {
  EXPECT_THROW(apply_voter(kD1, PairIndex::ten(2), VoterTarget::kZeros), std::out_of_range);
  EXPECT_THROW(apply_exclusion(kD1, PairIndex::oh_one(0)), std::out_of_range);
  EXPECT_THROW(apply_exclusion(Configuration{}, PairIndex::oh_one(1)), std::out_of_range);
}

TEST(Config, EnumeratePairs) {
  const auto g = enumerate_pairs(Configuration{});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].pair, PairIndex::ten(0));
  const auto d1 = enumerate_pairs(kD1);
  ASSERT_EQ(d1.size(), 3u);
  EXPECT_EQ(d1[0].pair, PairIndex::ten(0));
  EXPECT_EQ(d1[1].pair, PairIndex::oh_one(1));
  EXPECT_EQ(d1[2].pair, PairIndex::ten(1));
  EXPECT_EQ(enumerate_pairs(kExample).size(), 11u);

  for (const auto& s : enumerate_configurations(12)) {
    const auto ps = enumerate_pairs(s);
    ASSERT_EQ(static_cast<std::int64_t>(ps.size()), 2 * s.block_pairs() + 1);
    const auto [R, T] = prefix_sums(s);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      EXPECT_EQ(ps[k].pair.kind, k % 2 == 0 ? PairKind::kTen : PairKind::kOhOne);
      EXPECT_EQ(ps[k].pair.flat(), static_cast<std::int64_t>(k));
      const auto j = ps[k].pair.j;
      const std::int64_t r = j == 0 ? 0 : R[static_cast<std::size_t>(j - 1)];
      std::int64_t t = 0;
      if (ps[k].pair.kind == PairKind::kTen) t = j < s.block_pairs() ? T[static_cast<std::size_t>(j)] : 0;
      else t = T[static_cast<std::size_t>(j - 1)];
      EXPECT_EQ(ps[k].corner, (LatticePoint{r, t}));
    }
  }
}

TEST(Config, MovesAgreeWithWordOracle) {
  for (const auto& s : enumerate_configurations(12)) {
    const auto w = s.word();
    const auto positions = oracle::pairs(w);
    ASSERT_EQ(static_cast<std::int64_t>(positions.size()), s.pair_count());
    for (std::int64_t k = 0; k < s.pair_count(); ++k) {
      const auto pair = PairIndex::from_flat(k);
      const auto i = positions[static_cast<std::size_t>(k)];
      const auto ex = apply_exclusion(s, pair);
      ASSERT_EQ(ex.word(), oracle::swap(w, i));
      ASSERT_LE(std::abs(ex.size() - s.size()), 2);
      ASSERT_EQ(apply_voter(s, pair, VoterTarget::kZeros).word(), oracle::voter(w, i, '0'));
      const auto v1 = apply_voter(s, pair, VoterTarget::kOnes);
      ASSERT_EQ(v1.word(), oracle::voter(w, i, '1'));
      for (auto b : ex.blocks()) ASSERT_GE(b, 1);
    }
  }
}

TEST(Config, ExclusionSizeChangeByPairPosition) {
  for (const auto& s : enumerate_configurations(10)) {
    if (s.is_ground()) continue;
    const auto n = s.block_pairs();
    for (std::int64_t k = 0; k < s.pair_count(); ++k) {
      const auto pair = PairIndex::from_flat(k);
      const auto delta = apply_exclusion(s, pair).size() - s.size();
      if (pair.kind == PairKind::kTen) {
        EXPECT_EQ(delta, (pair.j == 0 || pair.j == n) ? 1 : 0);
      } else {
        const bool thin = (pair.j == 1 && s.n(1) == 1) || (pair.j == n && s.m(n) == 1);
        EXPECT_EQ(delta, -((pair.j == 1 && s.n(1) == 1) + (pair.j == n && s.m(n) == 1))) << s.render();
        EXPECT_EQ(delta < 0, thin);
      }
    }
  }
}

TEST(Config, EnumerateCount) {
  const auto all = enumerate_configurations(12);
  EXPECT_EQ(all.size(), 2048u);
  EXPECT_TRUE(all.front().is_ground());
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LE(all[i - 1].size(), all[i].size());
}

TEST(Config, RectangleConfiguration) {
  const auto s = rectangle_configuration(3, 5);
  EXPECT_EQ(s, Configuration::from_blocks({3, 5}));
  EXPECT_THROW(rectangle_configuration(0, 2), std::invalid_argument);
}
