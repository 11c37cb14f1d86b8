#include "rtcomb/rt_machine.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rtcomb/lsharp.hpp"
#include "rtcomb/zn_comb.hpp"

namespace rtcomb {
namespace {

using testing::ab;

std::vector<Letter> letters_of(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

std::vector<Letter> comb_ab(std::int64_t p, std::int64_t q) { return letters_of(comb({p, q})); }

void expect_real_time(const Recognition& r, std::size_t tapes) {
  EXPECT_LE(r.summary.max_moves_per_tape, 1);
  EXPECT_LE(r.summary.max_writes_per_tape, 1);
  EXPECT_EQ(r.summary.work_tapes, tapes);
}

TEST(Tape, BudgetIsEnforced) {
  Tape t;
  t.begin_step();
  t.write(Cell{1, 0});
  t.move(+1);
  EXPECT_THROW(t.move(+1), RealTimeViolation);
  EXPECT_THROW(t.write(Cell{2, 0}), RealTimeViolation);
  t.begin_step();
  EXPECT_THROW(t.move(2), RealTimeViolation);
  t.move(-1);
  EXPECT_EQ(t.read().symbol, 1);
}

TEST(Tape, GrowsInBothDirections) {
  Tape t;
  for (int i = 0; i < 100; ++i) {
    t.begin_step();
    t.write(Cell{1, 0});
    t.move(-1);
  }
  std::int64_t first = 0;
  EXPECT_EQ(t.contents(&first).size(), 100u);
  EXPECT_EQ(first, -99);
  for (int i = 0; i < 300; ++i) {
    t.begin_step();
    t.move(+1);
  }
  t.begin_step();
  t.write(Cell{2, kTemp});
  EXPECT_EQ(t.contents().size(), 300u);
  EXPECT_EQ(t.at(200).flags, kTemp);
}

TEST(LsharpMachine, InitialConfiguration) {
  LsharpMachine m;
  EXPECT_FALSE(m.accepting());
  EXPECT_FALSE(m.dead());
  EXPECT_EQ(m.consumed(), 0u);
  EXPECT_FALSE(m.config().has_value());
}

TEST(LsharpMachine, FirstDistinguishedConfiguration) {
  LsharpMachine m;
  const auto w = ab("abababa");
  for (std::size_t i = 0; i < 3; ++i) m.feed(w[i]);
  const auto cfg = m.config();
  ASSERT_TRUE(cfg.has_value());
  EXPECT_EQ(cfg->level, 1u);
  EXPECT_EQ(cfg->wprev, (std::vector<std::uint8_t>{0}));
  EXPECT_EQ(cfg->wj, (std::vector<std::uint8_t>{0, 1}));
  EXPECT_NE(cfg->wj_tape, cfg->wprev_tape);
  for (std::size_t i = 3; i < w.length(); ++i) m.feed(w[i]);
  EXPECT_TRUE(m.accepting());
}

TEST(LsharpMachine, Examples) {
  EXPECT_TRUE(recognize_lsharp(letters_of(ab("abababa"))).accepted);
  EXPECT_TRUE(recognize_lsharp(letters_of(ab("aab"))).accepted == false);
  EXPECT_FALSE(recognize_lsharp(letters_of(ab("ab"))).accepted);
  EXPECT_TRUE(recognize_lsharp(letters_of(ab("ba"))).accepted);
  EXPECT_FALSE(recognize_lsharp(letters_of(ab(""))).accepted);
  EXPECT_FALSE(recognize_lsharp(letters_of(ab("bbbb"))).accepted);
  EXPECT_TRUE(recognize_lsharp(letters_of(ab("aaaa"))).accepted);
  const auto r = recognize_lsharp(letters_of(ab("abbab")));
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.reject_position, 2u);
}

TEST(LsharpMachine, RejectsInverseLetters) {
  const auto w = Word::parse(sigma(2), "a1 a2^-1 a1");
  EXPECT_FALSE(recognize_lsharp(letters_of(w)).accepted);
}

TEST(LsharpMachine, RejectsForeignSymbols) {
  LsharpMachine m;
  EXPECT_THROW(m.feed(Letter{2, 1}), std::invalid_argument);
}

// The acceptance suite covers length <= 16.
TEST(LsharpMachine, AgreesWithParserOnShortWords) {
  for (std::size_t length = 0; length <= 12; ++length) {
    testing::for_each_word(2, false, length, [&](LetterSpan w) {
      const auto r = recognize_lsharp(w);
      ASSERT_EQ(r.accepted, parse(w).accepted) << Word(ab_alphabet(), {w.begin(), w.end()}).to_string();
      expect_real_time(r, 2);
    });
  }
}

TEST(LsharpMachine, DistinguishedConfigurationsAlongCombs) {
  for (std::int64_t p = 1; p <= 45; ++p) {
    for (std::int64_t q = 1; q <= 45; ++q) {
      const auto word = comb_ab(p, q);
      const auto params = parse(word).params;
      const auto levels = generate_levels(params);
      LsharpMachine m;
      std::size_t entries = 0;
      for (Letter l : word) {
        m.feed(l);
        if (!m.at_level_entry()) continue;
        const auto cfg = m.config();
        ASSERT_TRUE(cfg.has_value());
        const std::size_t j = cfg->level;
        ASSERT_LT(j, levels.size() + 1);
        ++entries;
        // Levels past k appear only as the final w_{k+1} = w consumed in full.
        if (j >= levels.size()) continue;
        EXPECT_EQ(cfg->wj, levels[j]) << p << "," << q << " level " << j;
        EXPECT_EQ(cfg->wprev, levels[j - 1]) << p << "," << q << " level " << j;
        if (j >= 2) {
          const std::size_t expected = levels[j - 1].size() - 2;
          EXPECT_EQ(cfg->mark_from_left, expected) << p << "," << q << " level " << j;
          EXPECT_EQ(cfg->mark_from_right, expected) << p << "," << q << " level " << j;
        }
      }
      EXPECT_TRUE(m.accepting()) << p << "," << q;
      EXPECT_LE(m.trace().summary.max_moves_per_tape, 1);
      EXPECT_GE(entries + 1, params.k);
    }
  }
}

TEST(LsharpMachine, TraceRecordsEveryStep) {
  LsharpMachine m;
  m.record_steps(true);
  const auto word = letters_of(ab("aabaaba"));
  LetterStream input(word);
  const auto r = run(m, input);
  EXPECT_TRUE(r.accepted);
  ASSERT_EQ(m.trace().steps.size(), 7u);
  for (const auto& step : m.trace().steps) {
    EXPECT_EQ(step.moves.size(), 2u);
    EXPECT_FALSE(step.control_state.empty());
  }
  EXPECT_EQ(input.requests(), 8u);
}

TEST(L2Plus, PowersOfB) {
  for (int m = 0; m <= 20; ++m) {
    std::vector<Letter> w(static_cast<std::size_t>(m), Letter{1, 1});
    EXPECT_TRUE(recognize_l2plus(w).accepted);
  }
  EXPECT_FALSE(recognize_l2plus(letters_of(ab("bab"))).accepted);
}

TEST(L2, AgreesWithDirectMembership) {
  for (std::size_t length = 0; length <= 8; ++length) {
    testing::for_each_word(2, true, length, [&](LetterSpan w) {
      const auto r = recognize_l2(w);
      ASSERT_EQ(r.accepted, is_member_direct(w, 2));
      expect_real_time(r, 8);
    });
  }
}

TEST(Ln, CombAndMutations) {
  const auto w = letters_of(comb({3, 2, 6}));
  EXPECT_TRUE(recognize_ln(w, 3).accepted);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::uint16_t s = 0; s < 3; ++s) {
      for (std::int8_t sign : {1, -1}) {
        auto mutated = w;
        mutated[i] = Letter{s, sign};
        if (mutated[i] == w[i]) continue;
        EXPECT_EQ(recognize_ln(mutated, 3).accepted, is_member_direct(mutated, 3));
        EXPECT_FALSE(recognize_ln(mutated, 3).accepted);
      }
    }
  }
}

TEST(Ln, MixedSignsReject) {
  const auto w = Word::parse(sigma(3), "a1 a2 a1^-1");
  EXPECT_FALSE(recognize_ln(letters_of(w), 3).accepted);
}

TEST(Ln, AgreesWithDirectMembership) {
  for (std::size_t n : {1u, 3u}) {
    for (std::size_t length = 0; length <= (n == 1 ? 6u : 5u); ++length) {
      testing::for_each_word(n, true, length, [&](LetterSpan w) {
        const auto r = recognize_ln(w, n);
        ASSERT_EQ(r.accepted, is_member_direct(w, n));
        expect_real_time(r, n * (n - 1));
      });
    }
  }
}

TEST(Ln, SweepOfCombs) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = rng.point(4, 20);
    const auto r = recognize_ln(letters_of(comb(p)), 4);
    EXPECT_TRUE(r.accepted);
    expect_real_time(r, 12);
  }
}

}  // namespace
}  // namespace rtcomb
