#include "oracles.hpp"

#include <algorithm>
#include <tuple>

#include "rtcomb/integer.hpp"

namespace rtcomb::testing {

std::vector<Letter> comb_by_event_sort(const LatticePoint& p) {
  struct Event {
    Rational time;
    std::size_t coord;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::int64_t den = p[i] < 0 ? -p[i] : p[i];
    for (std::int64_t m = 1; m <= den; ++m) events.push_back({Rational(m, den), i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.coord > b.coord;
  });
  std::vector<Letter> letters;
  for (const auto& e : events) {
    letters.push_back(Letter{static_cast<std::uint16_t>(e.coord), static_cast<std::int8_t>(p[e.coord] < 0 ? -1 : 1)});
  }
  return letters;
}

Word comb_oracle(const LatticePoint& p) { return Word(sigma(p.size()), comb_by_event_sort(p)); }

bool member_by_oracle(const Word& w) {
  LatticePoint p(w.alphabet()->size(), 0);
  for (Letter l : w.letters()) p[l.symbol] += l.sign;
  const auto expected = comb_by_event_sort(p);
  return std::equal(expected.begin(), expected.end(), w.letters().begin(), w.letters().end());
}

void for_each_word(std::size_t symbols, bool with_inverses, std::size_t length,
                   const std::function<void(LetterSpan)>& visit) {
  const std::size_t base = with_inverses ? 2 * symbols : symbols;
  std::vector<std::size_t> digits(length, 0);
  std::vector<Letter> letters(length);
  auto decode = [&](std::size_t d) {
    return Letter{static_cast<std::uint16_t>(d % symbols), static_cast<std::int8_t>(d < symbols ? 1 : -1)};
  };
  for (std::size_t i = 0; i < length; ++i) letters[i] = decode(0);
  for (;;) {
    visit(letters);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++digits[i] < base) {
        letters[i] = decode(digits[i]);
        break;
      }
      digits[i] = 0;
      letters[i] = decode(0);
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

Word Rng::word(const AlphabetPtr& alphabet, std::size_t max_length, bool with_inverses) {
  const auto length = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_length)));
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < length; ++i) {
    const auto symbol = static_cast<std::uint16_t>(uniform(0, static_cast<std::int64_t>(alphabet->size()) - 1));
    const std::int8_t sign = with_inverses && uniform(0, 1) == 1 ? -1 : 1;
    letters.push_back(Letter{symbol, sign});
  }
  return Word(alphabet, std::move(letters));
}

LatticePoint Rng::point(std::size_t n, std::int64_t bound) {
  LatticePoint p(n);
  for (auto& v : p) v = uniform(-bound, bound);
  return p;
}

Word ab(std::string_view text) { return Word::parse(ab_alphabet(), text); }

}  // namespace rtcomb::testing
