#include "rtcomb/words.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace rtcomb {

namespace {

constexpr std::string_view kInverseSuffix = "^-1";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
  if (names_.empty()) throw std::invalid_argument("alphabet must contain at least one symbol");
  if (names_.size() > 0xffff) throw std::invalid_argument("alphabet too large");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty() || name == "-") throw std::invalid_argument("invalid symbol name '" + name + "'");
    if (name.find('^') != std::string::npos ||
        std::any_of(name.begin(), name.end(), is_space)) {
      throw std::invalid_argument("symbol name '" + name + "' clashes with the word syntax");
    }
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate symbol '" + name + "'");
    if (name.size() != 1) single_character_ = false;
  }
}

std::optional<std::uint16_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<std::uint16_t>(i);
  }
  return std::nullopt;
}

std::string Alphabet::format(Letter letter) const {
  std::string out = name(letter.symbol);
  if (letter.sign < 0) out += kInverseSuffix;
  return out;
}

namespace {

AlphabetPtr make_sigma(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  return std::make_shared<const Alphabet>(std::move(names));
}

constexpr std::size_t kCachedSigma = 16;

}  // namespace

AlphabetPtr sigma(std::size_t n) {
  static const std::vector<AlphabetPtr> cache = [] {
    std::vector<AlphabetPtr> out(kCachedSigma + 1);
    for (std::size_t i = 1; i <= kCachedSigma; ++i) out[i] = make_sigma(i);
    return out;
  }();
  if (n >= 1 && n <= kCachedSigma) return cache[n];
  return make_sigma(n);
}

AlphabetPtr ab_alphabet() {
  static const AlphabetPtr ab = std::make_shared<const Alphabet>(std::vector<std::string>{"a", "b"});
  return ab;
}

bool same_alphabet(const AlphabetPtr& lhs, const AlphabetPtr& rhs) {
  if (lhs == rhs) return true;
  if (!lhs || !rhs) return false;
  return *lhs == *rhs;
}

Word::Word(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (!alphabet_) throw std::invalid_argument("word requires an alphabet");
  for (Letter l : letters_) {
    if (l.symbol >= alphabet_->size() || (l.sign != 1 && l.sign != -1)) {
      throw std::invalid_argument("letter outside alphabet");
    }
  }
}

std::string Word::to_string() const {
  if (letters_.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += alphabet_->format(letters_[i]);
  }
  return out;
}

Word Word::parse(AlphabetPtr alphabet, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    if (end == pos) break;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "-") continue;

    std::int8_t sign = 1;
    std::string_view base = token;
    if (base.size() > kInverseSuffix.size() && base.ends_with(kInverseSuffix)) {
      base.remove_suffix(kInverseSuffix.size());
      sign = -1;
    }
    if (auto symbol = alphabet->find(base)) {
      letters.push_back(Letter{*symbol, sign});
      continue;
    }
    if (alphabet->single_character() && sign == 1) {
      for (char c : token) {
        auto symbol = alphabet->find(std::string_view(&c, 1));
        if (!symbol) throw std::invalid_argument("unknown symbol '" + std::string(1, c) + "'");
        letters.push_back(Letter{*symbol, 1});
      }
      continue;
    }
    throw std::invalid_argument("unknown symbol '" + std::string(token) + "'");
  }
  return Word(std::move(alphabet), std::move(letters));
}

bool operator==(const Word& lhs, const Word& rhs) {
  return lhs.letters_ == rhs.letters_ && same_alphabet(lhs.alphabet_, rhs.alphabet_);
}

Word concat(const Word& u, const Word& v) {
  if (!same_alphabet(u.alphabet(), v.alphabet())) {
    throw AlphabetMismatch("concat: words are over different alphabets");
  }
  std::vector<Letter> letters(u.letters().begin(), u.letters().end());
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(letters));
}

Word invert_word(const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    letters.push_back(it->inverse());
  }
  return Word(w.alphabet(), std::move(letters));
}

Word phi(const Word& w) {
  if (w.length() < 2) throw std::invalid_argument("phi needs a word of length at least 2");
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  std::swap(letters[letters.size() - 1], letters[letters.size() - 2]);
  return Word(w.alphabet(), std::move(letters));
}

MonoidHom::MonoidHom(AlphabetPtr source, AlphabetPtr target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw std::invalid_argument("homomorphism needs both alphabets");
  if (images_.size() != source_->size()) {
    throw std::invalid_argument("homomorphism must give an image for every source symbol");
  }
  for (const auto& image : images_) {
    if (!same_alphabet(image.alphabet(), target_)) {
      throw AlphabetMismatch("homomorphism image is not over the target alphabet");
    }
  }
}

void MonoidHom::apply_into(LetterSpan letters, std::vector<Letter>& out) const {
  for (Letter l : letters) {
    auto image = images_[l.symbol].letters();
    if (l.sign > 0) {
      out.insert(out.end(), image.begin(), image.end());
    } else {
      for (auto it = image.rbegin(); it != image.rend(); ++it) out.push_back(it->inverse());
    }
  }
}

Word MonoidHom::apply(const Word& w) const {
  if (!same_alphabet(w.alphabet(), source_)) {
    throw AlphabetMismatch("apply_hom: word is not over the source alphabet");
  }
  std::vector<Letter> out;
  out.reserve(w.length());
  apply_into(w.letters(), out);
  return Word(target_, std::move(out));
}

MonoidHom MonoidHom::identity(AlphabetPtr alphabet) {
  std::vector<Word> images;
  for (std::size_t s = 0; s < alphabet->size(); ++s) {
    images.emplace_back(alphabet, std::vector<Letter>{Letter{static_cast<std::uint16_t>(s), 1}});
  }
  return MonoidHom(alphabet, alphabet, std::move(images));
}

MonoidHom MonoidHom::sign_flip(AlphabetPtr alphabet, const std::set<std::size_t>& flipped) {
  std::vector<Word> images;
  for (std::size_t s = 0; s < alphabet->size(); ++s) {
    const std::int8_t sign = flipped.contains(s) ? -1 : 1;
    images.emplace_back(alphabet, std::vector<Letter>{Letter{static_cast<std::uint16_t>(s), sign}});
  }
  return MonoidHom(alphabet, alphabet, std::move(images));
}

MonoidHom MonoidHom::projection(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n || i == j) throw std::invalid_argument("projection indices out of range");
  auto source = sigma(n);
  auto target = sigma(2);
  std::vector<Word> images;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Letter> image;
    if (s == i) image.push_back(Letter{0, 1});
    if (s == j) image.push_back(Letter{1, 1});
    images.emplace_back(target, std::move(image));
  }
  return MonoidHom(source, target, std::move(images));
}

Word apply_hom(const MonoidHom& h, const Word& w) { return h.apply(w); }

}  // namespace rtcomb
