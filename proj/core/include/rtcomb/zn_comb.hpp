#pragma once

// The digitized straight-line combing of Z^n.
//
// The segment from 0 to p is parameterized as x_i = p_i t, 0 <= t <= 1. Each
// time some |x_i| reaches a positive integer the letter a_i (or a_i^-1 when
// p_i < 0) is written; simultaneous crossings are written in order of
// decreasing i.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rtcomb/integer.hpp"
#include "rtcomb/words.hpp"

namespace rtcomb {

// Coordinates are 64-bit; every crossing comparison widens to 128 bits, so
// all |p_i| < 2^62 are handled exactly.
using LatticePoint = std::vector<std::int64_t>;
using PointSpan = std::span<const std::int64_t>;

// Crossing number `ordinal` of coordinate `coord` (zero-based) happens at
// time ordinal / denominator, where denominator = |p_coord|.
struct CrossingEvent {
  std::size_t coord = 0;
  std::int64_t ordinal = 0;
  std::int64_t denominator = 1;
};

// Strict order in which events are written: earlier time first, and on equal
// times the larger coordinate index first.
bool event_precedes(const CrossingEvent& lhs, const CrossingEvent& rhs) noexcept;

Word comb(const LatticePoint& p);
// Appends comb(p) to `out` without allocating a Word.
void comb_into(PointSpan p, std::vector<Letter>& out);

// Signed letter counts. The span form writes into `out` (size n).
LatticePoint endpoint(const Word& w);
void endpoint_into(LetterSpan w, std::span<std::int64_t> out);

// comb(endpoint(w)) == w, checked letter by letter with early exit.
bool is_member_direct(const Word& w);
bool is_member_direct(LetterSpan w, std::size_t n);

// Membership predicate for the positive-quadrant language over Sigma_2
// (a1 = a, a2 = b). The default uses the lsharp parser.
using QuadrantMembership = std::function<bool(LetterSpan)>;
bool quadrant_member_by_parser(LetterSpan w);

// Membership through the orthant and projection reductions: w must use a
// single sign per coordinate, and after normalizing signs every projection
// f_{i,j}(w) must lie in the positive-quadrant language.
bool is_member_reduction(const Word& w, const QuadrantMembership& quadrant = {});
bool is_member_reduction(LetterSpan w, std::size_t n, const QuadrantMembership& quadrant = {});

// Largest sup-norm distance, over the integer steps t = 0..l of comb(p),
// between the lattice point after t letters and the segment point (t/l) p.
// Throws std::invalid_argument for p = 0.
Rational deviation(const LatticePoint& p);

}  // namespace rtcomb
