#include "rtcomb/lsharp.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtcomb {

namespace {

constexpr std::uint8_t kA = 0;
constexpr std::uint8_t kB = 1;

// Partial quotients of num/den (den > 0) by Euclid; the last one is >= 2
// unless num/den == 1.
std::vector<std::uint64_t> continued_fraction(std::uint64_t num, std::uint64_t den) {
  std::vector<std::uint64_t> out;
  while (den != 0) {
    out.push_back(num / den);
    num %= den;
    std::swap(num, den);
  }
  return out;
}

}  // namespace

void LsharpParams::validate() const {
  if (exponents.size() != k) throw std::invalid_argument("lsharp: need exactly k exponents");
  if (n < 1) throw std::invalid_argument("lsharp: n must be at least 1");
  for (auto e : exponents) {
    if (e < 1) throw std::invalid_argument("lsharp: exponents must be at least 1");
  }
  if (leading_a != (k % 2 == 0)) {
    throw std::invalid_argument("lsharp: leading letter does not match the parity of k");
  }
}

std::string LsharpParams::to_string() const {
  std::ostringstream out;
  out << "k=" << k << " i=";
  for (std::size_t j = 0; j < exponents.size(); ++j) out << (j ? "," : "") << exponents[j];
  out << " n=" << n << " leading=" << (leading_a ? 'a' : 'b');
  return out.str();
}

LsharpParams make_params(std::vector<std::uint64_t> exponents, std::uint64_t n) {
  LsharpParams params;
  params.k = exponents.size();
  params.exponents = std::move(exponents);
  params.n = n;
  params.leading_a = params.k % 2 == 0;
  params.validate();
  return params;
}

std::vector<std::vector<std::uint8_t>> generate_levels(const LsharpParams& params) {
  params.validate();
  const std::uint8_t c = params.leading_a ? kA : kB;
  const std::uint8_t d = params.leading_a ? kB : kA;
  std::vector<std::vector<std::uint8_t>> levels;
  levels.push_back({params.k == 0 ? kA : c});
  if (params.k == 0) return levels;

  std::vector<std::uint8_t> w1(params.exponents[0], c);
  w1.push_back(d);
  levels.push_back(std::move(w1));
  for (std::size_t j = 2; j <= params.k; ++j) {
    const auto& prev = levels[j - 1];
    std::vector<std::uint8_t> next;
    next.reserve(prev.size() * params.exponents[j - 1] + levels[j - 2].size());
    for (std::uint64_t r = 0; r < params.exponents[j - 1]; ++r) {
      next.insert(next.end(), prev.begin(), prev.end());
    }
    next.insert(next.end(), levels[j - 2].begin(), levels[j - 2].end());
    levels.push_back(std::move(next));
  }
  return levels;
}

Word generate(const LsharpParams& params, AlphabetPtr alphabet) {
  if (!alphabet || alphabet->size() != 2) {
    throw std::invalid_argument("lsharp: generate needs a two-letter alphabet");
  }
  const auto levels = generate_levels(params);
  const auto& top = levels.back();
  std::vector<Letter> letters;
  letters.reserve(top.size() * params.n);
  for (std::uint64_t r = 0; r < params.n; ++r) {
    for (auto s : top) letters.push_back(Letter{s, 1});
  }
  return Word(std::move(alphabet), std::move(letters));
}

LsharpParams params_from_point(std::uint64_t p, std::uint64_t q) {
  if (p == 0) throw std::invalid_argument("lsharp: points (0, q) lie in b^* and have no parameters");
  const std::uint64_t g = std::gcd(p, q);
  const std::uint64_t pr = p / g;
  const std::uint64_t qr = q / g;
  if (qr == 0) return make_params({}, g);

  // More a's than b's: the word starts with a and k is even. Otherwise it
  // starts with b, k is odd and the roles of p and q swap.
  const bool leading_a = pr > qr;
  auto quotients = leading_a ? continued_fraction(pr, qr) : continued_fraction(qr, pr);
  const std::size_t wanted_parity = leading_a ? 0 : 1;
  if (quotients.size() % 2 != wanted_parity) {
    auto& last = quotients.back();
    if (last >= 2) {
      --last;
      quotients.push_back(1);
    } else {
      quotients.pop_back();
      ++quotients.back();
    }
  }
  return make_params(std::move(quotients), g);
}

ParseResult parse(const Word& w) {
  if (w.alphabet()->size() != 2) throw std::invalid_argument("lsharp: parse needs a two-letter alphabet");
  return parse(w.letters());
}

ParseResult parse(LetterSpan w) {
  ParseResult result;
  const std::size_t size = w.size();
  auto reject = [&](std::size_t position) {
    result.accepted = false;
    result.reject_position = position;
    return result;
  };

  std::vector<std::uint8_t> x(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (w[i].sign != 1 || w[i].symbol > 1) return reject(i);
    x[i] = static_cast<std::uint8_t>(w[i].symbol);
  }
  if (size == 0) return reject(0);
  const bool ends_in_a = x.back() == kA;

  auto accept = [&](std::vector<std::uint64_t> exponents, std::uint64_t n) {
    result.params = make_params(std::move(exponents), n);
    if (result.params.leading_a != (x[0] == kA)) {
      throw std::logic_error("lsharp: parity of k disagrees with the leading letter");
    }
    result.accepted = true;
    return result;
  };

  // Initial phase: c^{i_1} d.
  const std::uint8_t c = x[0];
  std::size_t run = 0;
  while (run < size && x[run] == c) ++run;
  if (run == size) return c == kA ? accept({}, size) : reject(size);
  if (run + 1 == size) return ends_in_a ? accept({run}, 1) : reject(size);
  if (x[run + 1] != c) return reject(run + 1);

  // Level j: the consumed prefix is w_{j-1} Phi(w_j)^t.
  std::vector<std::uint64_t> exponents{run};
  std::vector<std::uint8_t> prev{c};
  std::vector<std::uint8_t> cur(run, c);
  cur.push_back(static_cast<std::uint8_t>(1 - c));
  std::size_t pos = run + 2;
  std::uint64_t t = 1;

  for (;;) {
    const std::size_t block = cur.size();
    const std::size_t remaining = size - pos;
    if (remaining == 0) {
      result.cases.push_back(ParseCase::kWhole);
      if (!ends_in_a) return reject(size);
      exponents.push_back(t);
      return accept(std::move(exponents), 1);
    }

    // Phi(w_j) and w_j agree except in their last two letters.
    const std::size_t span = std::min(block, remaining);
    bool as_phi = true;
    bool as_cur = true;
    for (std::size_t s = 0; s < span; ++s) {
      const std::uint8_t letter = x[pos + s];
      const std::uint8_t phi_letter = s + 2 == block ? cur[block - 1] : s + 1 == block ? cur[block - 2] : cur[s];
      as_phi = as_phi && letter == phi_letter;
      as_cur = as_cur && letter == cur[s];
      if (!as_phi && !as_cur) return reject(pos + s);
    }

    if (remaining < block) {
      if (remaining == block - prev.size() && as_phi) {
        result.cases.push_back(ParseCase::kTruncated);
        if (!ends_in_a) return reject(size);
        return accept(std::move(exponents), t + 1);
      }
      return reject(size);
    }

    pos += block;
    if (as_phi) {
      ++t;
      continue;
    }
    result.cases.push_back(ParseCase::kDeeper);
    exponents.push_back(t);
    std::vector<std::uint8_t> next;
    next.reserve(block * t + prev.size());
    for (std::uint64_t r = 0; r < t; ++r) next.insert(next.end(), cur.begin(), cur.end());
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
    t = 1;
  }
}

}  // namespace rtcomb
