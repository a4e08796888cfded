// Self-checks of the brute-force word oracle against hand-computed values.
#include <gtest/gtest.h>

#include "oracle/word_oracle.hpp"

using namespace oracle;

TEST(Oracle, Canonical) {
  EXPECT_EQ(canon("1101000"), "01");
  EXPECT_EQ(canon("111000"), "");
  EXPECT_EQ(canon("0110"), "011");
}

TEST(Oracle, PairsOfSmallWords) {
  EXPECT_EQ(pairs(""), (std::vector<std::size_t>{0}));
  EXPECT_EQ(pairs("01"), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Oracle, HandValues) {
  const Word fig = std::string(8, '0') + "111" + "0000" + "1" + "00" + "1" + "00" + "1" + std::string(8, '0') + "1111";
  EXPECT_EQ(f1(fig), 162);
  EXPECT_EQ(f2(fig), 2169);
  EXPECT_EQ(rho2(fig), 180);
  EXPECT_EQ(blocks(fig), 5);
  EXPECT_EQ(phi_exact("01", 1), Q(1, 2));
  EXPECT_EQ(phi_exact("001", 1), Q(5, 6));
}

TEST(Oracle, LawOfGround) {
  const auto l = law("", Q(0), Q(1, 3));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l.at("01"), Q(2, 3));
  EXPECT_EQ(l.at(""), Q(1, 3));
}

TEST(Oracle, LawSumsToOne) {
  for (const auto& w : all_words(9)) {
    Q total = 0;
    for (const auto& [next, prob] : law(w, Q(2, 7), Q(3, 5))) total += prob;
    EXPECT_EQ(total, 1);
  }
}

TEST(Oracle, WordCount) { EXPECT_EQ(all_words(12).size(), 2048u); }

TEST(Oracle, SpotDrift) {
  EXPECT_EQ(drift("01", Q(4, 7), Q(0), [](const Word& w) { return phi_exact(w, 1); }), Q(-2, 63));
  EXPECT_EQ(drift("01", Q(0), Q(1, 2), [](const Word& w) { return Q(f1(w)); }), Q(1, 6));
}
