#include "rtcomb/builders.hpp"

#include <set>

#include "rtcomb/zn_comb.hpp"

namespace rtcomb {

Word Combing::word(const Element& g) const {
  std::vector<Letter> letters;
  word_into(g, letters);
  return Word(model_.alphabet, std::move(letters));
}

namespace {

std::vector<std::string> default_names(const std::string& stem, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

// Appends `incoming` to `base`, renaming the incoming symbols with `tag`
// when any of them is already taken.
std::vector<std::string> merge_names(const std::vector<std::string>& base, std::vector<std::string> incoming,
                                     const std::string& tag, AlphabetPolicy policy) {
  std::set<std::string> taken(base.begin(), base.end());
  bool collision = false;
  for (const auto& n : incoming) collision = collision || taken.contains(n);
  if (collision) {
    if (policy == AlphabetPolicy::kReject) throw AlphabetCollision("builders: alphabets are not disjoint");
    for (auto& n : incoming) {
      n = tag + "." + n;
      while (taken.contains(n)) n = tag + "." + n;
    }
  }
  std::vector<std::string> out(base);
  for (auto& n : incoming) {
    if (taken.contains(n)) throw AlphabetCollision("builders: symbol '" + n + "' collides after renaming");
    taken.insert(n);
    out.push_back(std::move(n));
  }
  return out;
}

void append_comb(const std::vector<Integer>& v, std::uint16_t offset, std::vector<Letter>& out) {
  LatticePoint p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = to_int64(v[i]);
  const std::size_t start = out.size();
  comb_into(p, out);
  for (std::size_t i = start; i < out.size(); ++i) out[i].symbol = static_cast<std::uint16_t>(out[i].symbol + offset);
}

class AbelianCombing final : public Combing {
 public:
  using Combing::Combing;
  void word_into(const Element& g, std::vector<Letter>& out) const override { append_comb(g, 0, out); }
};

class SplitCombing final : public Combing {
 public:
  SplitCombing(GroupModel model, CombingInfo info, CombingPtr acting, std::shared_ptr<const Semidirect> group)
      : Combing(std::move(model), std::move(info)), acting_(std::move(acting)), semidirect_(std::move(group)) {}

  void word_into(const Element& g, std::vector<Letter>& out) const override {
    acting_->word_into(semidirect_->acting_part(g), out);
    append_comb(semidirect_->normal_part(g), static_cast<std::uint16_t>(acting_->alphabet()->size()), out);
  }

 private:
  CombingPtr acting_;
  std::shared_ptr<const Semidirect> semidirect_;
};

class DirectCombing final : public Combing {
 public:
  DirectCombing(GroupModel model, CombingInfo info, CombingPtr left, CombingPtr right,
                std::shared_ptr<const DirectProduct> group)
      : Combing(std::move(model), std::move(info)),
        left_(std::move(left)),
        right_(std::move(right)),
        product_(std::move(group)) {}

  void word_into(const Element& g, std::vector<Letter>& out) const override {
    left_->word_into(product_->left_part(g), out);
    const std::size_t start = out.size();
    right_->word_into(product_->right_part(g), out);
    const auto offset = static_cast<std::uint16_t>(left_->alphabet()->size());
    for (std::size_t i = start; i < out.size(); ++i) out[i].symbol = static_cast<std::uint16_t>(out[i].symbol + offset);
  }

 private:
  CombingPtr left_;
  CombingPtr right_;
  std::shared_ptr<const DirectProduct> product_;
};

class FiniteIndexCombing final : public Combing {
 public:
  FiniteIndexCombing(CombingInfo info, CombingPtr subgroup, FiniteIndexData data, std::vector<Element> inverses)
      : Combing(data.ambient, std::move(info)),
        subgroup_(std::move(subgroup)),
        data_(std::move(data)),
        transversal_inverses_(std::move(inverses)) {}

  void word_into(const Element& g, std::vector<Letter>& out) const override {
    const Group& G = *model().group;
    for (std::size_t t = 0; t < data_.transversal.size(); ++t) {
      const auto h = data_.subgroup_preimage(G.multiply(g, transversal_inverses_[t]));
      if (!h) continue;
      const std::size_t start = out.size();
      subgroup_->word_into(*h, out);
      for (std::size_t i = start; i < out.size(); ++i) out[i].symbol = data_.subgroup_letters[out[i].symbol];
      const auto tail = data_.transversal[t].letters();
      out.insert(out.end(), tail.begin(), tail.end());
      return;
    }
    throw InvalidTransversal("finite index: no transversal element matches " + G.format(g));
  }

 private:
  CombingPtr subgroup_;
  FiniteIndexData data_;
  std::vector<Element> transversal_inverses_;
};

class SubstitutedCombing final : public Combing {
 public:
  SubstitutedCombing(GroupModel model, CombingInfo info, CombingPtr base, std::vector<std::vector<Letter>> images)
      : Combing(std::move(model), std::move(info)), base_(std::move(base)), images_(std::move(images)) {}

  void word_into(const Element& g, std::vector<Letter>& out) const override {
    std::vector<Letter> old;
    base_->word_into(g, old);
    const Letter y1{0, 1};
    for (Letter l : old) {
      const auto& body = images_[l.symbol];
      if (l.sign > 0) {
        out.insert(out.end(), body.begin(), body.end());
      } else {
        for (auto it = body.rbegin(); it != body.rend(); ++it) out.push_back(it->inverse());
      }
      out.push_back(y1);
      out.push_back(y1.inverse());
    }
  }

 private:
  CombingPtr base_;
  std::vector<std::vector<Letter>> images_;
};

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

}  // namespace

CombingPtr comb_abelian(std::size_t n, std::vector<std::string> names) {
  if (n == 0) throw std::invalid_argument("comb_abelian: n must be at least 1");
  if (names.empty()) names = sigma(n)->names();
  auto group = std::make_shared<const FreeAbelian>(n, names);
  auto alphabet = names == sigma(n)->names() ? sigma(n) : make_alphabet(names);
  CombingInfo info;
  info.description = "straight-line combing of Z^" + std::to_string(n);
  info.synchronous = true;
  info.claimed_degree = 1;
  return std::make_shared<AbelianCombing>(GroupModel(group, alphabet, group->standard_generators()), info);
}

CombingPtr comb_split_extension(CombingPtr acting, std::vector<Matrix> action, std::size_t n,
                                std::vector<std::string> names, AlphabetPolicy policy) {
  if (!acting) throw std::invalid_argument("comb_split_extension: missing acting combing");
  if (names.empty()) names = default_names("v", n);
  const std::size_t depth = acting->info().depth + 1;
  auto group = std::make_shared<const Semidirect>(acting->group(), n, std::move(action), names);
  auto merged = merge_names(acting->alphabet()->names(), names, "L" + std::to_string(depth), policy);

  std::vector<Element> images;
  const std::vector<Integer> zero(n, 0);
  for (const auto& h : acting->model().images) images.push_back(group->pair(h, zero));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Integer> e(zero);
    e[k] = 1;
    images.push_back(group->pair(acting->group()->identity(), e));
  }

  CombingInfo info;
  info.description = "Z^" + std::to_string(n) + " x| (" + acting->info().description + ")";
  info.depth = depth;
  return std::make_shared<SplitCombing>(GroupModel(group, make_alphabet(std::move(merged)), std::move(images)),
                                        std::move(info), std::move(acting), group);
}

CombingPtr comb_direct_product(CombingPtr left, CombingPtr right, AlphabetPolicy policy) {
  if (!left || !right) throw std::invalid_argument("comb_direct_product: missing factor");
  auto group = std::make_shared<const DirectProduct>(left->group(), right->group());
  auto left_names = left->alphabet()->names();
  auto right_names = right->alphabet()->names();
  std::set<std::string> taken(left_names.begin(), left_names.end());
  bool collision = false;
  for (const auto& n : right_names) collision = collision || taken.contains(n);
  if (collision) {
    if (policy == AlphabetPolicy::kReject) throw AlphabetCollision("builders: alphabets are not disjoint");
    for (auto& n : left_names) n = "A." + n;
    for (auto& n : right_names) n = "B." + n;
  }
  auto merged = merge_names(left_names, right_names, "B", AlphabetPolicy::kReject);

  std::vector<Element> images;
  for (const auto& a : left->model().images) images.push_back(group->join(a, right->group()->identity()));
  for (const auto& b : right->model().images) images.push_back(group->join(left->group()->identity(), b));

  CombingInfo info;
  info.description = "(" + left->info().description + ") x (" + right->info().description + ")";
  info.depth = std::max(left->info().depth, right->info().depth);
  if (left->info().claimed_degree && right->info().claimed_degree) {
    info.claimed_degree = std::max(*left->info().claimed_degree, *right->info().claimed_degree);
  }
  return std::make_shared<DirectCombing>(GroupModel(group, make_alphabet(std::move(merged)), std::move(images)),
                                         std::move(info), std::move(left), std::move(right), group);
}

CombingPtr comb_finite_index_up(CombingPtr subgroup, FiniteIndexData data) {
  if (!subgroup) throw std::invalid_argument("comb_finite_index_up: missing subgroup combing");
  if (!data.subgroup_preimage) throw std::invalid_argument("comb_finite_index_up: missing membership predicate");
  if (data.subgroup_letters.size() != subgroup->alphabet()->size()) {
    throw std::invalid_argument("comb_finite_index_up: need one ambient letter per subgroup symbol");
  }
  for (auto s : data.subgroup_letters) {
    if (s >= data.ambient.alphabet->size()) throw std::invalid_argument("comb_finite_index_up: letter out of range");
  }
  const Group& G = *data.ambient.group;
  std::vector<Element> reps;
  std::vector<Element> inverses;
  bool has_identity = false;
  for (const auto& t : data.transversal) {
    Element rep = evaluate(t, data.ambient);
    has_identity = has_identity || rep == G.identity();
    reps.push_back(rep);
    inverses.push_back(G.invert(rep));
  }
  if (!has_identity) throw InvalidTransversal("comb_finite_index_up: transversal must contain the identity");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (data.subgroup_preimage(G.multiply(reps[i], inverses[j]))) {
        throw InvalidTransversal("comb_finite_index_up: transversal elements share a coset");
      }
    }
  }
  CombingInfo info;
  info.description = "finite-index extension of (" + subgroup->info().description + ")";
  info.depth = subgroup->info().depth;
  info.claimed_degree = subgroup->info().claimed_degree;
  return std::make_shared<FiniteIndexCombing>(std::move(info), std::move(subgroup), std::move(data),
                                              std::move(inverses));
}

CombingPtr comb_substitute(CombingPtr base, GroupModel target, std::vector<Word> images) {
  if (!base) throw std::invalid_argument("comb_substitute: missing combing");
  if (images.size() != base->alphabet()->size()) {
    throw std::invalid_argument("comb_substitute: need one image per old symbol");
  }
  if (target.group->dimension() != base->group()->dimension()) {
    throw std::invalid_argument("comb_substitute: target model is over a different group");
  }
  std::vector<std::vector<Letter>> bodies;
  for (std::size_t s = 0; s < images.size(); ++s) {
    const Word& w = images[s];
    if (!same_alphabet(w.alphabet(), target.alphabet)) {
      throw AlphabetMismatch("comb_substitute: image not over the target alphabet");
    }
    if (evaluate(w, target) != base->model().images[s]) {
      throw std::invalid_argument("comb_substitute: image of " + base->alphabet()->name(s) +
                                  " does not evaluate to the old generator");
    }
    const auto letters = w.letters();
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i] == Letter{0, 1} && letters[i + 1] == Letter{0, -1}) {
        throw TerminatorCollision("comb_substitute: image of " + base->alphabet()->name(s) +
                                  " contains the terminator");
      }
    }
    bodies.emplace_back(letters.begin(), letters.end());
  }
  CombingInfo info;
  info.description = "substitution of (" + base->info().description + ")";
  info.depth = base->info().depth;
  info.claimed_degree = base->info().claimed_degree;
  return std::make_shared<SubstitutedCombing>(std::move(target), std::move(info), std::move(base),
                                              std::move(bodies));
}

// ---------------------------------------------------------------- presets

namespace {

CombingPtr with_info(CombingPtr c, std::string description, std::optional<std::size_t> degree,
                     std::optional<std::size_t> relative_class) {
  // Combings are immutable; presets only relabel the metadata.
  class Relabelled final : public Combing {
   public:
    Relabelled(CombingPtr inner, CombingInfo info) : Combing(inner->model(), std::move(info)), inner_(std::move(inner)) {}
    void word_into(const Element& g, std::vector<Letter>& out) const override { inner_->word_into(g, out); }

   private:
    CombingPtr inner_;
  };
  CombingInfo info = c->info();
  info.description = std::move(description);
  info.claimed_degree = degree;
  info.relative_class = relative_class;
  return std::make_shared<Relabelled>(std::move(c), std::move(info));
}

std::string pair_name(const char* stem, std::size_t i, std::size_t j, bool wide) {
  return stem + std::to_string(i) + (wide ? "_" : "") + std::to_string(j);
}

}  // namespace

CombingPtr heisenberg_combing(std::size_t n) {
  if (n == 0) throw std::invalid_argument("heisenberg: need n >= 1");
  std::vector<std::string> xs, normal;
  if (n == 1) {
    xs = {"x"};
    normal = {"y", "z"};
  } else {
    xs = default_names("x", n);
    normal = default_names("y", n);
    normal.push_back("z");
  }
  // x_i^-1 y_i x_i = y_i z^-1, so that [x_i, y_i] = z.
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix m = Matrix::identity(n + 1);
    m(i, n) = -1;
    action.push_back(std::move(m));
  }
  auto c = comb_split_extension(comb_abelian(n, xs), std::move(action), n + 1, normal, AlphabetPolicy::kReject);
  return with_info(std::move(c), "H_" + std::to_string(2 * n + 1), 2, 1);
}

std::vector<std::pair<std::size_t, std::size_t>> unipotent_generator_units(std::size_t n) {
  if (n < 2) throw std::invalid_argument("unipotent: need n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> units{{0, 1}};
  for (std::size_t m = 3; m <= n; ++m) {
    for (std::size_t i = m - 1; i-- > 0;) units.emplace_back(i, m - 1);
  }
  return units;
}

CombingPtr unipotent_combing(std::size_t n) {
  if (n < 2) throw std::invalid_argument("unipotent: need n >= 2");
  const bool wide = n > 9;
  if (n == 2) return with_info(comb_abelian(1, {pair_name("e", 1, 2, wide)}), "U_2", 1, std::nullopt);

  auto acting = unipotent_combing(n - 1);
  // Normal coordinate k is the entry (n-1-k, n) (one-based): the column is
  // stored bottom to top.
  const std::size_t rank = n - 1;
  auto coord = [&](std::size_t row) { return rank - 1 - row; };  // zero-based row -> k
  std::vector<std::string> normal;
  for (std::size_t k = 0; k < rank; ++k) normal.push_back(pair_name("e", rank - k, n, wide));

  // E_ij acts on the column by c_i <- c_i - c_j.
  std::vector<Matrix> action;
  for (auto [i, j] : unipotent_generator_units(n - 1)) {
    Matrix m = Matrix::identity(rank);
    m(coord(j), coord(i)) = -1;
    action.push_back(std::move(m));
  }
  auto c = comb_split_extension(std::move(acting), std::move(action), rank, normal, AlphabetPolicy::kReject);
  return with_info(std::move(c), "U_" + std::to_string(n), n - 1, n - 2);
}

Element unipotent_preset_to_matrix(const Group& preset_group, std::size_t n, const Element& g) {
  const Unipotent target(n);
  if (n == 2) return Element{g.at(0)};
  const auto& semi = dynamic_cast<const Semidirect&>(preset_group);
  const Unipotent upper(n - 1);
  const Element h = unipotent_preset_to_matrix(*semi.acting(), n - 1, semi.acting_part(g));
  const auto v = semi.normal_part(g);
  // (h, v) is [[h, h c], [0, 1]] with c the column read back from v.
  std::vector<Integer> c(n - 1);
  for (std::size_t row = 0; row + 1 < n; ++row) c[row] = v[n - 2 - row];
  const Matrix hm = upper.to_matrix(h);
  std::vector<Integer> column(n - 1, 0);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t k = 0; k + 1 < n; ++k) column[r] += hm(r, k) * c[k];
  }
  return unipotent_join(target, column, h);
}

CombingPtr gc_combing(std::size_t c) {
  if (c == 0) throw std::invalid_argument("gc: need c >= 1");
  Matrix m = Matrix::identity(c);
  for (std::size_t i = 0; i + 1 < c; ++i) m(i, i + 1) = 1;
  auto built = comb_split_extension(comb_abelian(1, {"t"}), {m}, c, default_names("a", c), AlphabetPolicy::kReject);
  return with_info(std::move(built), "G_" + std::to_string(c), c, c);
}

CombingPtr fibonacci_combing() {
  const Matrix m = Matrix::from_rows({{0, 1}, {1, 1}});
  auto built = comb_split_extension(comb_abelian(1, {"x"}), {m}, 2, {"y", "z"}, AlphabetPolicy::kReject);
  return with_info(std::move(built), "Fibonacci extension", std::nullopt, std::nullopt);
}

CombingPtr free2_combing(std::size_t k) {
  if (k == 0) throw std::invalid_argument("free2: need k >= 1");
  const bool wide = k > 9;
  if (k == 1) return with_info(comb_abelian(1, {"a1"}), "free class-2 on 1 generator", 1, std::nullopt);

  auto acting = free2_combing(k - 1);
  // Normal part (a_k, c_1k, ..., c_{k-1}k); generator a_i of the acting group
  // sends a_k to a_k c_ik^-1, the central c's act trivially.
  std::vector<std::string> normal{"a" + std::to_string(k)};
  for (std::size_t i = 1; i < k; ++i) normal.push_back(pair_name("c", i, k, wide));
  std::vector<Matrix> action;
  for (const auto& name : acting->group()->standard_names()) {
    Matrix m = Matrix::identity(k);
    if (name[0] == 'a') {
      const std::size_t i = std::stoul(name.substr(1));
      m(0, i) = -1;
    }
    action.push_back(std::move(m));
  }
  auto built = comb_split_extension(std::move(acting), std::move(action), k, normal, AlphabetPolicy::kReject);
  return with_info(std::move(built), "free class-2 on " + std::to_string(k) + " generators", 2, 1);
}

CombingPtr tower(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::kAbelian: return comb_abelian(spec.size);
    case GroupSpec::Kind::kHeisenberg: return heisenberg_combing((spec.size - 1) / 2);
    case GroupSpec::Kind::kUnipotent: return unipotent_combing(spec.size);
    case GroupSpec::Kind::kGc: return gc_combing(spec.size);
    case GroupSpec::Kind::kFibonacci: return fibonacci_combing();
    case GroupSpec::Kind::kFree2: return free2_combing(spec.size);
    case GroupSpec::Kind::kSemidirect: {
      auto acting = tower(spec.children.at(0));
      const std::size_t gens = acting->group()->standard_generators().size();
      if (spec.actions.size() != gens) {
        throw SpecError("spec: semidirect needs " + std::to_string(gens) + " action matrices, got " +
                        std::to_string(spec.actions.size()));
      }
      try {
        return comb_split_extension(std::move(acting), spec.actions, spec.size);
      } catch (const SpecError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("spec: ") + e.what());
      }
    }
    case GroupSpec::Kind::kDirect:
      return comb_direct_product(tower(spec.children.at(0)), tower(spec.children.at(1)));
  }
  throw SpecError("spec: unknown group kind");
}

CombingPtr even_subgroup_extension() {
  auto z = std::make_shared<const FreeAbelian>(1, std::vector<std::string>{"a"});
  FiniteIndexData data;
  data.ambient = GroupModel(z, make_alphabet({"A", "a"}), {Element{2}, Element{1}});
  data.subgroup_letters = {0};
  data.subgroup_preimage = [](const Element& g) -> std::optional<Element> {
    if (g.at(0) % 2 != 0) return std::nullopt;
    return Element{g[0] / 2};
  };
  data.transversal = {Word(data.ambient.alphabet), Word::parse(data.ambient.alphabet, "a")};
  return comb_finite_index_up(comb_abelian(1), std::move(data));
}

CombingPtr heisenberg_over_xy() {
  auto base = heisenberg_combing(1);
  const auto& images = base->model().images;
  GroupModel target(base->group(), make_alphabet({"x", "y"}), {images[0], images[1]});
  std::vector<Word> subs{Word::parse(target.alphabet, "x"), Word::parse(target.alphabet, "y"),
                         Word::parse(target.alphabet, "x^-1 y^-1 x y")};
  return comb_substitute(std::move(base), std::move(target), std::move(subs));
}

}  // namespace rtcomb
