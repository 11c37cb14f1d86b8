#pragma once

// Words of the positive-quadrant combing of Z^2 that are not powers of b,
// described by the recursion
//
//   w = w_k^n,  w_j = w_{j-1}^{i_j} w_{j-2}  (j >= 2),
//   w_0 = a, w_1 = a^{i_1} b   when k is even,
//   w_0 = b, w_1 = b^{i_1} a   when k is odd.
//
// Letters are read positionally: symbol 0 is a, symbol 1 is b. Any two-letter
// alphabet works (Sigma_2 reads a1 as a and a2 as b).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rtcomb/words.hpp"

namespace rtcomb {

struct LsharpParams {
  std::size_t k = 0;
  std::vector<std::uint64_t> exponents;  // i_1 .. i_k
  std::uint64_t n = 1;
  // Whether the word starts with a. Forced by k: true for even k, false for
  // odd k.
  bool leading_a = true;

  // Throws std::invalid_argument when an invariant fails.
  void validate() const;
  std::string to_string() const;

  friend bool operator==(const LsharpParams&, const LsharpParams&) = default;
};

// Builds parameters and sets leading_a from the parity of k.
LsharpParams make_params(std::vector<std::uint64_t> exponents, std::uint64_t n);

// w_0 .. w_k as byte strings over {0 = a, 1 = b}.
std::vector<std::vector<std::uint8_t>> generate_levels(const LsharpParams& params);

Word generate(const LsharpParams& params, AlphabetPtr alphabet = ab_alphabet());

// p = number of a's, q = number of b's. n = gcd(p, q) and the exponents come
// from the continued fraction of the reduced ratio, with the last partial
// quotient split as (t - 1, 1) when needed to reach the parity of k.
// Throws std::invalid_argument when p == 0.
LsharpParams params_from_point(std::uint64_t p, std::uint64_t q);

// Which continuation the parser took at a recursion level j >= 1, given that
// w_j w_{j-1} is a prefix of the input.
enum class ParseCase : std::uint8_t {
  kDeeper = 1,     // w_{j+1} w_j is a prefix; recursion continues
  kWhole = 2,      // the input is w_{j+1}
  kTruncated = 3,  // the input is w_j^n
};

struct ParseResult {
  bool accepted = false;
  LsharpParams params;
  // First position that cannot be extended to a member; the input length for
  // rejections decided at end of input.
  std::size_t reject_position = 0;
  std::vector<ParseCase> cases;  // one entry per level j >= 1 that was entered

  explicit operator bool() const noexcept { return accepted; }
};

ParseResult parse(const Word& w);
ParseResult parse(LetterSpan w);

}  // namespace rtcomb
