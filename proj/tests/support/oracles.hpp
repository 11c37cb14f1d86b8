#pragma once

// Independent reference implementations used to check the library. They are
// deliberately naive and share no code paths with the production routines.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rtcomb/words.hpp"
#include "rtcomb/zn_comb.hpp"

namespace rtcomb::testing {

// Materializes every crossing event (i, m) with time m/|p_i| as an exact
// rational and sorts them, breaking ties by decreasing i.
std::vector<Letter> comb_by_event_sort(const LatticePoint& p);
Word comb_oracle(const LatticePoint& p);

bool member_by_oracle(const Word& w);

// Visits every word over `symbols` (each with sign +1, and also sign -1 when
// `with_inverses`) of exactly `length` letters, in lexicographic order.
void for_each_word(std::size_t symbols, bool with_inverses, std::size_t length,
                   const std::function<void(LetterSpan)>& visit);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  Word word(const AlphabetPtr& alphabet, std::size_t max_length, bool with_inverses = true);
  LatticePoint point(std::size_t n, std::int64_t bound);

 private:
  std::mt19937_64 engine_;
};

Word ab(std::string_view text);

}  // namespace rtcomb::testing
