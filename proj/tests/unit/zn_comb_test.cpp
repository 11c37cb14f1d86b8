#include "rtcomb/zn_comb.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"

namespace rtcomb {
namespace {

using testing::comb_oracle;
using testing::Rng;

Word s2(std::string_view text) { return Word::parse(sigma(2), text); }

TEST(Comb, FigureOnePath) {
  EXPECT_EQ(comb({4, 3}).to_string(), "a1 a2 a1 a2 a1 a2 a1");
}

TEST(Comb, ZeroVector) { EXPECT_TRUE(comb({0, 0, 0}).empty()); }

TEST(Comb, MatchesEventSortOracle) {
  EXPECT_EQ(comb({2, 5}), comb_oracle({2, 5}));
  EXPECT_EQ(comb({1, 1}).to_string(), "a2 a1");
  for (std::int64_t p = -9; p <= 9; ++p) {
    for (std::int64_t q = -9; q <= 9; ++q) {
      for (std::int64_t r = -4; r <= 4; ++r) {
        EXPECT_EQ(comb({p, q, r}), comb_oracle({p, q, r})) << p << "," << q << "," << r;
      }
    }
  }
}

TEST(Comb, EventOrder) {
  const CrossingEvent half_of_two{0, 1, 2};
  const CrossingEvent half_of_four{1, 2, 4};
  EXPECT_TRUE(event_precedes(half_of_four, half_of_two));
  EXPECT_FALSE(event_precedes(half_of_two, half_of_four));
  EXPECT_TRUE(event_precedes(CrossingEvent{0, 1, 3}, CrossingEvent{1, 1, 2}));
}

TEST(Endpoint, Examples) {
  EXPECT_EQ(endpoint(s2("")), (LatticePoint{0, 0}));
  EXPECT_EQ(endpoint(s2("a1 a2 a1 a2 a1 a2 a1")), (LatticePoint{4, 3}));
  EXPECT_EQ(endpoint(s2("a1 a1^-1 a2^-1")), (LatticePoint{0, -1}));
}

TEST(Membership, DirectExamples) {
  EXPECT_TRUE(is_member_direct(s2("a1 a2 a1 a2 a1 a2 a1")));
  EXPECT_TRUE(is_member_direct(s2("a2 a1")));
  EXPECT_FALSE(is_member_direct(s2("a1 a2")));
  EXPECT_TRUE(is_member_direct(s2("")));
  EXPECT_FALSE(is_member_direct(s2("a1 a1^-1")));
}

TEST(Membership, ReductionExamples) {
  EXPECT_FALSE(is_member_reduction(s2("a1 a2 a1^-1")));
  const Word w = comb({3, 2, 6});
  EXPECT_TRUE(is_member_reduction(w));
  EXPECT_EQ(apply_hom(MonoidHom::projection(3, 0, 1), w), comb({3, 2}));
  EXPECT_EQ(apply_hom(MonoidHom::projection(3, 0, 2), w), comb({3, 6}));
  EXPECT_EQ(apply_hom(MonoidHom::projection(3, 1, 2), w), comb({2, 6}));
}

// The acceptance suite repeats this with length <= 10.
TEST(Membership, ReductionEqualsDirectOnShortWords) {
  for (std::size_t length = 0; length <= 6; ++length) {
    testing::for_each_word(3, true, length, [&](LetterSpan w) {
      ASSERT_EQ(is_member_reduction(w, 3), is_member_direct(w, 3)) << Word(sigma(3), {w.begin(), w.end()}).to_string();
    });
  }
}

TEST(Deviation, Examples) {
  EXPECT_EQ(deviation({5, 0}), Rational(0));
  EXPECT_EQ(deviation({0, -3}), Rational(0));
  // comb(1,1) = a2 a1: after one step (0,1) against (1/2,1/2).
  EXPECT_EQ(deviation({1, 1}), Rational(1, 2));
  EXPECT_THROW(deviation({0, 0}), std::invalid_argument);
}

Rational deviation_oracle(const LatticePoint& p) {
  const auto letters = testing::comb_by_event_sort(p);
  const auto l = static_cast<std::int64_t>(letters.size());
  std::vector<Rational> at(p.size(), 0);
  Rational worst = 0;
  for (std::int64_t t = 0; t <= l; ++t) {
    if (t > 0) at[letters[t - 1].symbol] += letters[t - 1].sign;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Rational gap = at[i] - Rational(t * p[i], l);
      if (gap < 0) gap = -gap;
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

TEST(Deviation, MatchesRationalOracle) {
  for (std::int64_t p = -12; p <= 12; ++p) {
    for (std::int64_t q = -12; q <= 12; ++q) {
      if (p == 0 && q == 0) continue;
      EXPECT_EQ(deviation({p, q}), deviation_oracle({p, q}));
    }
  }
}

TEST(CombProperty, GeodesicAndEndpoint) {
  Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const LatticePoint p = rng.point(n, 40);
    const Word w = comb(p);
    std::int64_t total = 0;
    for (auto v : p) total += v < 0 ? -v : v;
    EXPECT_EQ(static_cast<std::int64_t>(w.length()), total);
    EXPECT_EQ(endpoint(w), p);
    EXPECT_TRUE(is_member_direct(w));
    EXPECT_TRUE(n < 2 || is_member_reduction(w));
  }
}

TEST(CombProperty, SignFlipEquivariance) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const LatticePoint p = rng.point(3, 25);
    for (unsigned mask = 0; mask < 8; ++mask) {
      std::set<std::size_t> flipped;
      LatticePoint q = p;
      for (std::size_t i = 0; i < 3; ++i) {
        if (mask & (1u << i)) {
          flipped.insert(i);
          q[i] = -q[i];
        }
      }
      EXPECT_EQ(apply_hom(MonoidHom::sign_flip(sigma(3), flipped), comb(p)), comb(q));
    }
  }
}

TEST(CombProperty, ProjectionIdentity) {
  for (std::int64_t a = 0; a <= 7; ++a) {
    for (std::int64_t b = 0; b <= 7; ++b) {
      for (std::int64_t c = 0; c <= 7; ++c) {
        for (std::int64_t d = 0; d <= 3; ++d) {
          const LatticePoint p{a, b, c, d};
          for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
              EXPECT_EQ(apply_hom(MonoidHom::projection(4, i, j), comb(p)), comb({p[i], p[j]}));
            }
          }
        }
      }
    }
  }
}

TEST(CombProperty, Injective) {
  std::set<std::string> seen;
  for (std::int64_t p = -15; p <= 15; ++p) {
    for (std::int64_t q = -15; q <= 15; ++q) {
      EXPECT_TRUE(seen.insert(comb({p, q}).to_string()).second);
    }
  }
}

// Two positive-orthant members with the same projections are equal.
TEST(CombProperty, ProjectionsSeparateMembers) {
  std::map<std::vector<std::string>, std::string> by_projections;
  for (std::size_t length = 0; length <= 7; ++length) {
    testing::for_each_word(3, false, length, [&](LetterSpan w) {
      if (!is_member_direct(w, 3)) return;
      const Word word(sigma(3), {w.begin(), w.end()});
      std::vector<std::string> key;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) key.push_back(apply_hom(MonoidHom::projection(3, i, j), word).to_string());
      }
      auto [it, inserted] = by_projections.emplace(key, word.to_string());
      EXPECT_TRUE(inserted || it->second == word.to_string());
    });
  }
}

}  // namespace
}  // namespace rtcomb
