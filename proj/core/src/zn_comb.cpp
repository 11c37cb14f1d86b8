#include "rtcomb/zn_comb.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtcomb/lsharp.hpp"

namespace rtcomb {

namespace {

__extension__ using Wide = __int128;
__extension__ using UWide = unsigned __int128;

std::int64_t magnitude(std::int64_t v) { return v < 0 ? -v : v; }

Integer to_integer(Wide v) {
  const bool negative = v < 0;
  const UWide m = negative ? -static_cast<UWide>(v) : static_cast<UWide>(v);
  Integer out = static_cast<std::uint64_t>(m >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(m);
  return negative ? Integer(-out) : out;
}

// Streams comb(p) one letter at a time by merging the per-coordinate event
// sequences. The next event of coordinate i is next_[i] / |p_i|.
class CombCursor {
 public:
  explicit CombCursor(PointSpan p) : p_(p), next_(p.size(), 1) {
    for (auto v : p) remaining_ += static_cast<std::size_t>(magnitude(v));
  }

  std::size_t remaining() const noexcept { return remaining_; }

  Letter next() {
    std::size_t best = p_.size();
    for (std::size_t i = p_.size(); i-- > 0;) {
      const std::int64_t den = magnitude(p_[i]);
      if (den == 0 || next_[i] > den) continue;
      // Scanning from high to low index keeps the larger index on ties.
      if (best == p_.size() ||
          static_cast<Wide>(next_[i]) * magnitude(p_[best]) <
              static_cast<Wide>(next_[best]) * den) {
        best = i;
      }
    }
    ++next_[best];
    --remaining_;
    return Letter{static_cast<std::uint16_t>(best), static_cast<std::int8_t>(p_[best] < 0 ? -1 : 1)};
  }

 private:
  PointSpan p_;
  std::vector<std::int64_t> next_;
  std::size_t remaining_ = 0;
};

}  // namespace

bool event_precedes(const CrossingEvent& lhs, const CrossingEvent& rhs) noexcept {
  const Wide l = static_cast<Wide>(lhs.ordinal) * rhs.denominator;
  const Wide r = static_cast<Wide>(rhs.ordinal) * lhs.denominator;
  if (l != r) return l < r;
  return lhs.coord > rhs.coord;
}

void comb_into(PointSpan p, std::vector<Letter>& out) {
  CombCursor cursor(p);
  out.reserve(out.size() + cursor.remaining());
  while (cursor.remaining() > 0) out.push_back(cursor.next());
}

Word comb(const LatticePoint& p) {
  if (p.empty()) throw std::invalid_argument("comb: dimension must be at least 1");
  std::vector<Letter> letters;
  comb_into(p, letters);
  return Word(sigma(p.size()), std::move(letters));
}

void endpoint_into(LetterSpan w, std::span<std::int64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (Letter l : w) {
    if (l.symbol >= out.size()) throw std::invalid_argument("endpoint: letter outside Sigma_n");
    out[l.symbol] += l.sign;
  }
}

LatticePoint endpoint(const Word& w) {
  LatticePoint p(w.alphabet()->size(), 0);
  endpoint_into(w.letters(), p);
  return p;
}

bool is_member_direct(LetterSpan w, std::size_t n) {
  LatticePoint p(n, 0);
  endpoint_into(w, p);
  CombCursor cursor(p);
  if (cursor.remaining() != w.size()) return false;
  for (Letter l : w) {
    if (cursor.next() != l) return false;
  }
  return true;
}

bool is_member_direct(const Word& w) { return is_member_direct(w.letters(), w.alphabet()->size()); }

bool quadrant_member_by_parser(LetterSpan w) {
  bool only_b = true;
  for (Letter l : w) {
    if (l.sign != 1 || l.symbol > 1) return false;
    only_b = only_b && l.symbol == 1;
  }
  return only_b || parse(w).accepted;
}

bool is_member_reduction(LetterSpan w, std::size_t n, const QuadrantMembership& quadrant) {
  // Orthant reduction: one sign per coordinate, then flip to the positive orthant.
  std::vector<std::int8_t> sign(n, 0);
  for (Letter l : w) {
    if (l.symbol >= n) return false;
    if (sign[l.symbol] == 0) sign[l.symbol] = l.sign;
    if (sign[l.symbol] != l.sign) return false;
  }
  if (n < 2) return true;

  // Projection reduction: f_{i,j}(w) in the positive quadrant for all i < j.
  std::vector<Letter> projected;
  projected.reserve(w.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      projected.clear();
      for (Letter l : w) {
        if (l.symbol == i) projected.push_back(Letter{0, 1});
        else if (l.symbol == j) projected.push_back(Letter{1, 1});
      }
      const bool member = quadrant ? quadrant(projected) : quadrant_member_by_parser(projected);
      if (!member) return false;
    }
  }
  return true;
}

bool is_member_reduction(const Word& w, const QuadrantMembership& quadrant) {
  return is_member_reduction(w.letters(), w.alphabet()->size(), quadrant);
}

Rational deviation(const LatticePoint& p) {
  bool zero = true;
  for (auto v : p) zero = zero && v == 0;
  if (zero) throw std::invalid_argument("deviation: undefined at the origin");

  CombCursor cursor(p);
  const std::int64_t length = static_cast<std::int64_t>(cursor.remaining());
  LatticePoint at(p.size(), 0);
  // |at_i - (t/l) p_i| = |at_i l - t p_i| / l; track the largest numerator.
  Wide worst = 0;
  for (std::int64_t t = 1; t <= length; ++t) {
    const Letter l = cursor.next();
    at[l.symbol] += l.sign;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Wide gap = static_cast<Wide>(at[i]) * length - static_cast<Wide>(t) * p[i];
      if (gap < 0) gap = -gap;
      if (gap > worst) worst = gap;
    }
  }
  return Rational(to_integer(worst), Integer(length));
}

}  // namespace rtcomb
