#include "rtcomb/group_spec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace rtcomb {

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  bool comment = false;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (comment) {
      comment = ch != '\n';
      continue;
    }
    if (ch == '#') {
      flush();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else if (ch == '(' || ch == ')') {
      flush();
      tokens.emplace_back(1, ch);
    } else {
      current.push_back(ch);
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find(sep, start);
    parts.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

Integer parse_integer(const std::string& text) {
  std::size_t i = text.empty() || (text[0] != '-' && text[0] != '+') ? 0 : 1;
  if (i == text.size()) throw SpecError("spec: expected an integer, got '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw SpecError("spec: expected an integer, got '" + text + "'");
    }
  }
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

std::size_t parse_count(const std::string& text, std::size_t minimum, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SpecError(std::string("spec: ") + what + " must be a positive integer, got '" + text + "'");
  }
  if (value < minimum) {
    throw SpecError(std::string("spec: ") + what + " must be at least " + std::to_string(minimum));
  }
  if (value > 64) throw SpecError(std::string("spec: ") + what + " is unreasonably large");
  return value;
}

std::vector<Matrix> parse_actions(const std::string& text, std::size_t n) {
  std::vector<Matrix> out;
  for (const auto& block : split(text, ';')) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& row : split(block, '/')) {
      std::vector<Integer> entries;
      for (const auto& entry : split(row, ',')) entries.push_back(parse_integer(entry));
      rows.push_back(std::move(entries));
    }
    if (rows.size() != n) throw SpecError("spec: action matrix needs " + std::to_string(n) + " rows");
    for (const auto& r : rows) {
      if (r.size() != n) throw SpecError("spec: action matrix rows need " + std::to_string(n) + " entries");
    }
    out.push_back(Matrix::from_rows(rows));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

  GroupSpec parse_all() {
    GroupSpec spec = parse();
    if (pos_ != tokens_.size()) throw SpecError("spec: unexpected trailing token '" + tokens_[pos_] + "'");
    return spec;
  }

 private:
  const std::string& next(const char* expected) {
    if (pos_ == tokens_.size()) throw SpecError(std::string("spec: unexpected end, expected ") + expected);
    return tokens_[pos_++];
  }

  std::string keyed(const std::string& key) {
    const std::string& token = next((key + "=").c_str());
    if (token.rfind(key + "=", 0) != 0) throw SpecError("spec: expected " + key + "=..., got '" + token + "'");
    return token.substr(key.size() + 1);
  }

  GroupSpec parse() {
    const std::string head = next("a group");
    GroupSpec spec;
    if (head == "(") {
      spec = parse();
      if (next("')'") != ")") throw SpecError("spec: expected ')'");
      return spec;
    }
    if (head == "abelian") {
      spec.kind = GroupSpec::Kind::kAbelian;
      spec.size = parse_count(next("a rank"), 1, "abelian rank");
    } else if (head == "heisenberg") {
      spec.kind = GroupSpec::Kind::kHeisenberg;
      spec.size = parse_count(next("a dimension"), 3, "heisenberg dimension");
      if (spec.size % 2 == 0) throw SpecError("spec: heisenberg dimension must be odd (2n+1)");
    } else if (head == "unipotent") {
      spec.kind = GroupSpec::Kind::kUnipotent;
      spec.size = parse_count(next("a size"), 2, "unipotent size");
    } else if (head == "gc") {
      spec.kind = GroupSpec::Kind::kGc;
      spec.size = parse_count(next("c"), 1, "gc class");
    } else if (head == "fibonacci") {
      spec.kind = GroupSpec::Kind::kFibonacci;
      spec.size = 2;
    } else if (head == "free2") {
      spec.kind = GroupSpec::Kind::kFree2;
      spec.size = parse_count(next("k"), 1, "free2 generator count");
    } else if (head == "semidirect") {
      spec.kind = GroupSpec::Kind::kSemidirect;
      spec.size = parse_count(keyed("n"), 1, "semidirect n");
      spec.actions = parse_actions(keyed("action"), spec.size);
      if (next("'over'") != "over") throw SpecError("spec: expected 'over'");
      spec.children.push_back(parse());
    } else if (head == "direct") {
      spec.kind = GroupSpec::Kind::kDirect;
      spec.children.push_back(parse());
      spec.children.push_back(parse());
    } else {
      throw SpecError("spec: unknown group '" + head + "'");
    }
    return spec;
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string GroupSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kAbelian: out << "abelian " << size; break;
    case Kind::kHeisenberg: out << "heisenberg " << size; break;
    case Kind::kUnipotent: out << "unipotent " << size; break;
    case Kind::kGc: out << "gc " << size; break;
    case Kind::kFibonacci: out << "fibonacci"; break;
    case Kind::kFree2: out << "free2 " << size; break;
    case Kind::kSemidirect: {
      out << "semidirect n=" << size << " action=";
      for (std::size_t m = 0; m < actions.size(); ++m) {
        if (m) out << ';';
        for (std::size_t i = 0; i < size; ++i) {
          if (i) out << '/';
          for (std::size_t j = 0; j < size; ++j) out << (j ? "," : "") << actions[m](i, j);
        }
      }
      out << " over (" << children.at(0).to_string() << ')';
      break;
    }
    case Kind::kDirect:
      out << "direct (" << children.at(0).to_string() << ") (" << children.at(1).to_string() << ')';
      break;
  }
  return out.str();
}

GroupSpec parse_group_spec(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw SpecError("spec: empty group spec");
  return Parser(std::move(tokens)).parse_all();
}

GroupSpec load_group_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("spec: cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_group_spec(buffer.str());
}

}  // namespace rtcomb
