#pragma once

// Alphabets, formal words, monoid homomorphisms and the last-two-letter swap.
//
// Words are formal strings. Nothing in this library freely reduces a word:
// combing languages are sets of strings and a1 a1^-1 is a perfectly good
// member candidate.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtcomb {

// A letter is a generator index together with an exponent sign. The formal
// inverse of symbol s is {s, -1}; storing the sign separately makes the
// sign-flip homomorphisms index-local.
struct Letter {
  std::uint16_t symbol = 0;
  std::int8_t sign = 1;

  constexpr Letter inverse() const noexcept {
    return Letter{symbol, static_cast<std::int8_t>(-sign)};
  }
  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

using LetterSpan = std::span<const Letter>;

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ordered, inverse-closed generator alphabet. Each named symbol carries an
// implicit formal inverse, so the closure invariant holds by construction.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t symbol) const { return names_.at(symbol); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::uint16_t> find(std::string_view name) const;

  // "a1" or "a1^-1".
  std::string format(Letter letter) const;
  // True when every symbol name is a single character, which enables the
  // compact spelling "abba" in addition to "a b b a".
  bool single_character() const noexcept { return single_character_; }

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  bool single_character_ = true;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Sigma_n = {a1, ..., an} (plus formal inverses).
AlphabetPtr sigma(std::size_t n);
// {a, b}: the two-letter alphabet used for the positive quadrant of Z^2.
AlphabetPtr ab_alphabet();

bool same_alphabet(const AlphabetPtr& lhs, const AlphabetPtr& rhs);

class Word {
 public:
  explicit Word(AlphabetPtr alphabet, std::vector<Letter> letters = {});

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  LetterSpan letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  // Whitespace-separated tokens, "-" for the empty word.
  std::string to_string() const;
  // Accepts "a1 a2^-1", "" or "-", and for single-character alphabets the
  // compact form "abba". Throws std::invalid_argument on unknown symbols.
  static Word parse(AlphabetPtr alphabet, std::string_view text);

  friend bool operator==(const Word& lhs, const Word& rhs);

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

Word concat(const Word& u, const Word& v);
Word invert_word(const Word& w);

// Swaps the last two letters. Requires length >= 2.
Word phi(const Word& w);

// Monoid homomorphism between free monoids over two alphabets. Images are
// given for the positive letters; an inverse letter maps to the inverse word
// of its symbol's image.
class MonoidHom {
 public:
  MonoidHom(AlphabetPtr source, AlphabetPtr target, std::vector<Word> images);

  const AlphabetPtr& source() const noexcept { return source_; }
  const AlphabetPtr& target() const noexcept { return target_; }
  const Word& image(std::size_t symbol) const { return images_.at(symbol); }

  Word apply(const Word& w) const;
  // Appends the image of `letters` to `out`. Used by hot loops.
  void apply_into(LetterSpan letters, std::vector<Letter>& out) const;

  static MonoidHom identity(AlphabetPtr alphabet);
  // f_S: interchanges a_i and a_i^-1 for the symbols in `flipped`.
  static MonoidHom sign_flip(AlphabetPtr alphabet, const std::set<std::size_t>& flipped);
  // f_{i,j}: Sigma_n -> Sigma_2, a_i -> a1, a_j -> a2, everything else -> empty.
  // Indices are zero-based symbol positions.
  static MonoidHom projection(std::size_t n, std::size_t i, std::size_t j);

 private:
  AlphabetPtr source_;
  AlphabetPtr target_;
  std::vector<Word> images_;
};

Word apply_hom(const MonoidHom& h, const Word& w);

}  // namespace rtcomb
