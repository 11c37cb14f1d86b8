#include "rtcomb/groups.hpp"

#include <algorithm>
#include <sstream>

namespace rtcomb {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t seed = e.size();
  for (const auto& v : e) hash_combine(seed, hash_integer(v));
  return seed;
}

std::string format_element(const Element& e) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------- matrices

Matrix Matrix::identity(std::size_t n) {
  Matrix m{n, std::vector<Integer>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  Matrix m{rows.size(), {}};
  m.a.reserve(m.n * m.n);
  for (const auto& row : rows) {
    if (row.size() != m.n) throw std::invalid_argument("matrix: rows must form a square");
    m.a.insert(m.a.end(), row.begin(), row.end());
  }
  return m;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.n != rhs.n) throw std::invalid_argument("matrix: size mismatch");
  const std::size_t n = lhs.n;
  Matrix out{n, std::vector<Integer>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& l = lhs(i, k);
      if (l.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  }
  return out;
}

std::vector<Integer> apply_right(const std::vector<Integer>& v, const Matrix& m) {
  if (v.size() != m.n) throw std::invalid_argument("matrix: vector size mismatch");
  std::vector<Integer> out(m.n, 0);
  for (std::size_t k = 0; k < m.n; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.n; ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

namespace {

// Gauss-Jordan over the rationals: returns the inverse and the determinant.
std::pair<std::vector<Rational>, Rational> rational_inverse(const Matrix& m) {
  const std::size_t n = m.n;
  std::vector<Rational> work(m.a.begin(), m.a.end());
  std::vector<Rational> inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return {{}, Rational(0)};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work[pivot * n + j], work[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
      det = -det;
    }
    const Rational p = work[col * n + col];
    det *= p;
    for (std::size_t j = 0; j < n; ++j) {
      work[col * n + j] /= p;
      inv[col * n + j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r * n + col] == 0) continue;
      const Rational f = work[r * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r * n + j] -= f * work[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return {std::move(inv), det};
}

}  // namespace

Integer determinant(const Matrix& m) {
  if (m.n == 0) return 1;
  const Rational det = rational_inverse(m).second;
  return numerator(det);
}

Matrix integer_inverse(const Matrix& m) {
  auto [inv, det] = rational_inverse(m);
  if (det != 1 && det != -1) {
    throw std::invalid_argument("matrix: not invertible over the integers (det must be +-1)");
  }
  Matrix out{m.n, std::vector<Integer>(m.n * m.n)};
  for (std::size_t i = 0; i < inv.size(); ++i) out.a[i] = numerator(inv[i]);
  return out;
}

Matrix power(const Matrix& m, const Matrix& inverse, const Integer& e) {
  Matrix base = e < 0 ? inverse : m;
  Integer k = abs(e);
  Matrix out = Matrix::identity(m.n);
  while (k > 0) {
    if ((k & 1) != 0) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

// ---------------------------------------------------------------- Group

Element Group::power(const Element& g, const Integer& exponent) const {
  Element base = exponent < 0 ? invert(g) : g;
  Integer k = abs(exponent);
  Element out = identity();
  while (k > 0) {
    if ((k & 1) != 0) out = multiply(out, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return out;
}

namespace {

std::vector<std::string> indexed_names(const std::string& stem, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

void check_dimension(const Element& g, std::size_t dimension) {
  if (g.size() != dimension) throw std::invalid_argument("group: element has the wrong dimension");
}

Element unit_vector(std::size_t dimension, std::size_t i) {
  Element e(dimension, 0);
  e[i] = 1;
  return e;
}

}  // namespace

// ---------------------------------------------------------------- FreeAbelian

FreeAbelian::FreeAbelian(std::size_t n, std::vector<std::string> names) : n_(n), names_(std::move(names)) {
  if (n == 0) throw std::invalid_argument("abelian: rank must be at least 1");
  if (names_.empty()) names_ = indexed_names("a", n);
  if (names_.size() != n) throw std::invalid_argument("abelian: need one name per generator");
}

Element FreeAbelian::multiply(const Element& lhs, const Element& rhs) const {
  check_dimension(lhs, n_);
  check_dimension(rhs, n_);
  Element out(lhs);
  for (std::size_t i = 0; i < n_; ++i) out[i] += rhs[i];
  return out;
}

Element FreeAbelian::invert(const Element& g) const {
  check_dimension(g, n_);
  Element out(g);
  for (auto& v : out) v = -v;
  return out;
}

std::vector<Element> FreeAbelian::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < n_; ++i) out.push_back(unit_vector(n_, i));
  return out;
}

std::vector<Syllable> FreeAbelian::syllables(const Element& g) const {
  check_dimension(g, n_);
  std::vector<Syllable> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!g[i].is_zero()) out.push_back({i, g[i]});
  }
  return out;
}

// ---------------------------------------------------------------- Heisenberg

Heisenberg::Heisenberg(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("heisenberg: need n >= 1");
}

Element Heisenberg::multiply(const Element& lhs, const Element& rhs) const {
  check_dimension(lhs, dimension());
  check_dimension(rhs, dimension());
  Element out(lhs);
  for (std::size_t i = 0; i < 2 * n_ + 1; ++i) out[i] += rhs[i];
  for (std::size_t i = 0; i < n_; ++i) out[2 * n_] -= rhs[i] * lhs[n_ + i];
  return out;
}

Element Heisenberg::invert(const Element& g) const {
  check_dimension(g, dimension());
  Element out(g);
  for (auto& v : out) v = -v;
  for (std::size_t i = 0; i < n_; ++i) out[2 * n_] -= g[i] * g[n_ + i];
  return out;
}

std::vector<Element> Heisenberg::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < 2 * n_ + 1; ++i) out.push_back(unit_vector(2 * n_ + 1, i));
  return out;
}

std::vector<std::string> Heisenberg::standard_names() const {
  if (n_ == 1) return {"x", "y", "z"};
  auto names = indexed_names("x", n_);
  for (auto& y : indexed_names("y", n_)) names.push_back(y);
  names.push_back("z");
  return names;
}

std::vector<Syllable> Heisenberg::syllables(const Element& g) const {
  // x^a y^b z^c: the x's and y's never pick up a correction in that order.
  check_dimension(g, dimension());
  std::vector<Syllable> out;
  for (std::size_t i = 0; i < 2 * n_ + 1; ++i) {
    if (!g[i].is_zero()) out.push_back({i, g[i]});
  }
  return out;
}

// ---------------------------------------------------------------- Unipotent

Unipotent::Unipotent(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("unipotent: need n >= 2");
}

std::size_t Unipotent::coordinate(std::size_t i, std::size_t j) const {
  if (!(i < j && j < n_)) throw std::out_of_range("unipotent: need i < j < n");
  // Rows 0..i-1 contribute (n-1) + (n-2) + ... entries.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

Matrix Unipotent::to_matrix(const Element& g) const {
  check_dimension(g, dimension());
  Matrix m = Matrix::identity(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) m(i, j) = g[coordinate(i, j)];
  }
  return m;
}

Element Unipotent::from_matrix(const Matrix& m) const {
  if (m.n != n_) throw std::invalid_argument("unipotent: matrix size mismatch");
  Element g(dimension());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const Integer expected = i == j ? 1 : 0;
      if (j <= i && m(i, j) != expected) throw std::invalid_argument("unipotent: matrix is not unitriangular");
      if (j > i) g[coordinate(i, j)] = m(i, j);
    }
  }
  return g;
}

Element Unipotent::multiply(const Element& lhs, const Element& rhs) const {
  check_dimension(lhs, dimension());
  check_dimension(rhs, dimension());
  // (I + A)(I + B) = I + A + B + AB.
  Element out(dimension());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      Integer v = lhs[coordinate(i, j)] + rhs[coordinate(i, j)];
      for (std::size_t k = i + 1; k < j; ++k) v += lhs[coordinate(i, k)] * rhs[coordinate(k, j)];
      out[coordinate(i, j)] = std::move(v);
    }
  }
  return out;
}

Element Unipotent::invert(const Element& g) const {
  check_dimension(g, dimension());
  // Solve (I + A)(I + B) = I column by column: b_ij = -a_ij - sum_k a_ik b_kj.
  Element out(dimension());
  for (std::size_t j = 1; j < n_; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      Integer v = -g[coordinate(i, j)];
      for (std::size_t k = i + 1; k < j; ++k) v -= g[coordinate(i, k)] * out[coordinate(k, j)];
      out[coordinate(i, j)] = std::move(v);
    }
  }
  return out;
}

std::vector<Element> Unipotent::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t c = 0; c < dimension(); ++c) out.push_back(unit_vector(dimension(), c));
  return out;
}

std::vector<std::string> Unipotent::standard_names() const {
  std::vector<std::string> names;
  const std::string sep = n_ > 9 ? "_" : "";
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      names.push_back("e" + std::to_string(i + 1) + sep + std::to_string(j + 1));
    }
  }
  return names;
}

std::vector<Syllable> Unipotent::syllables(const Element& g) const {
  // Clear g column by column with right multiplications by powers of E_ij
  // (column operations), then reverse and negate.
  Element work(g);
  std::vector<Syllable> clearing;
  for (std::size_t j = 1; j < n_; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const Integer k = -work[coordinate(i, j)];
      if (k.is_zero()) continue;
      // work * E_ij^k adds k * (column i) to column j.
      for (std::size_t r = 0; r <= i; ++r) {
        const Integer above = r == i ? Integer(1) : work[coordinate(r, i)];
        work[coordinate(r, j)] += k * above;
      }
      clearing.push_back({coordinate(i, j), k});
    }
  }
  std::vector<Syllable> out;
  for (auto it = clearing.rbegin(); it != clearing.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return out;
}

std::pair<std::vector<Integer>, Element> unipotent_split(const Unipotent& group, const Element& g) {
  const std::size_t n = group.size();
  if (n < 3) throw std::invalid_argument("unipotent: split needs n >= 3");
  const Unipotent upper(n - 1);
  std::vector<Integer> column(n - 1);
  Element h(upper.dimension());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    column[i] = g.at(group.coordinate(i, n - 1));
    for (std::size_t j = i + 1; j + 1 < n; ++j) h[upper.coordinate(i, j)] = g[group.coordinate(i, j)];
  }
  return {std::move(column), std::move(h)};
}

Element unipotent_join(const Unipotent& group, const std::vector<Integer>& column, const Element& upper_left) {
  const std::size_t n = group.size();
  const Unipotent upper(n - 1);
  if (column.size() != n - 1 || upper_left.size() != upper.dimension()) {
    throw std::invalid_argument("unipotent: join size mismatch");
  }
  // [[I, c], [0, 1]] * [[h, 0], [0, 1]] = [[h, c], [0, 1]].
  Element g(group.dimension());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g[group.coordinate(i, n - 1)] = column[i];
    for (std::size_t j = i + 1; j + 1 < n; ++j) g[group.coordinate(i, j)] = upper_left[upper.coordinate(i, j)];
  }
  return g;
}

// ---------------------------------------------------------------- Semidirect

Semidirect::Semidirect(GroupPtr acting, std::size_t n, std::vector<Matrix> actions, std::vector<std::string> names)
    : acting_(std::move(acting)), n_(n), actions_(std::move(actions)), names_(std::move(names)) {
  if (!acting_) throw std::invalid_argument("semidirect: missing acting group");
  if (n_ == 0) throw std::invalid_argument("semidirect: n must be at least 1");
  if (actions_.size() != acting_->standard_generators().size()) {
    throw std::invalid_argument("semidirect: need one action matrix per generator of the acting group");
  }
  for (const auto& m : actions_) {
    if (m.n != n_) throw std::invalid_argument("semidirect: action matrices must be n x n");
    inverses_.push_back(integer_inverse(m));
  }
  if (names_.empty()) names_ = indexed_names("n", n_);
  if (names_.size() != n_) throw std::invalid_argument("semidirect: need one name per normal generator");
}

std::string Semidirect::name() const { return "Z^" + std::to_string(n_) + " x| (" + acting_->name() + ")"; }

Element Semidirect::identity() const {
  Element e = acting_->identity();
  e.resize(dimension(), 0);
  return e;
}

Element Semidirect::acting_part(const Element& g) const {
  check_dimension(g, dimension());
  return Element(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(acting_->dimension()));
}

std::vector<Integer> Semidirect::normal_part(const Element& g) const {
  check_dimension(g, dimension());
  return std::vector<Integer>(g.begin() + static_cast<std::ptrdiff_t>(acting_->dimension()), g.end());
}

Element Semidirect::pair(const Element& h, const std::vector<Integer>& v) const {
  check_dimension(h, acting_->dimension());
  if (v.size() != n_) throw std::invalid_argument("semidirect: vector size mismatch");
  Element out(h);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Matrix Semidirect::action_of(const Element& h) const {
  Matrix out = Matrix::identity(n_);
  for (const auto& s : acting_->syllables(h)) {
    out = out * rtcomb::power(actions_[s.generator], inverses_[s.generator], s.exponent);
  }
  return out;
}

Element Semidirect::multiply(const Element& lhs, const Element& rhs) const {
  const Element h2 = acting_part(rhs);
  std::vector<Integer> v = apply_right(normal_part(lhs), action_of(h2));
  const auto v2 = normal_part(rhs);
  for (std::size_t i = 0; i < n_; ++i) v[i] += v2[i];
  return pair(acting_->multiply(acting_part(lhs), h2), v);
}

Element Semidirect::invert(const Element& g) const {
  // (h, v)^-1 = (h^-1, -v A(h^-1)).
  const Element hinv = acting_->invert(acting_part(g));
  std::vector<Integer> v = apply_right(normal_part(g), action_of(hinv));
  for (auto& x : v) x = -x;
  return pair(hinv, v);
}

std::vector<Element> Semidirect::standard_generators() const {
  std::vector<Element> out;
  for (const auto& h : acting_->standard_generators()) out.push_back(pair(h, std::vector<Integer>(n_, 0)));
  for (std::size_t k = 0; k < n_; ++k) {
    std::vector<Integer> e(n_, 0);
    e[k] = 1;
    out.push_back(pair(acting_->identity(), e));
  }
  return out;
}

std::vector<std::string> Semidirect::standard_names() const {
  auto names = acting_->standard_names();
  names.insert(names.end(), names_.begin(), names_.end());
  return names;
}

std::vector<Syllable> Semidirect::syllables(const Element& g) const {
  // (h, v) = (h, 0)(1, v).
  auto out = acting_->syllables(acting_part(g));
  const std::size_t offset = acting_->standard_generators().size();
  const auto v = normal_part(g);
  for (std::size_t k = 0; k < n_; ++k) {
    if (!v[k].is_zero()) out.push_back({offset + k, v[k]});
  }
  return out;
}

// ---------------------------------------------------------------- DirectProduct

DirectProduct::DirectProduct(GroupPtr left, GroupPtr right) : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw std::invalid_argument("direct: missing factor");
}

Element DirectProduct::identity() const { return join(left_->identity(), right_->identity()); }

Element DirectProduct::left_part(const Element& g) const {
  check_dimension(g, dimension());
  return Element(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(left_->dimension()));
}

Element DirectProduct::right_part(const Element& g) const {
  check_dimension(g, dimension());
  return Element(g.begin() + static_cast<std::ptrdiff_t>(left_->dimension()), g.end());
}

Element DirectProduct::join(const Element& a, const Element& b) const {
  check_dimension(a, left_->dimension());
  check_dimension(b, right_->dimension());
  Element out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Element DirectProduct::multiply(const Element& lhs, const Element& rhs) const {
  return join(left_->multiply(left_part(lhs), left_part(rhs)), right_->multiply(right_part(lhs), right_part(rhs)));
}

Element DirectProduct::invert(const Element& g) const {
  return join(left_->invert(left_part(g)), right_->invert(right_part(g)));
}

std::vector<Element> DirectProduct::standard_generators() const {
  std::vector<Element> out;
  for (const auto& a : left_->standard_generators()) out.push_back(join(a, right_->identity()));
  for (const auto& b : right_->standard_generators()) out.push_back(join(left_->identity(), b));
  return out;
}

std::vector<std::string> DirectProduct::standard_names() const {
  auto names = left_->standard_names();
  for (auto& n : right_->standard_names()) names.push_back(n);
  return names;
}

std::vector<Syllable> DirectProduct::syllables(const Element& g) const {
  auto out = left_->syllables(left_part(g));
  const std::size_t offset = left_->standard_generators().size();
  for (auto s : right_->syllables(right_part(g))) {
    s.generator += offset;
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- models

GroupModel::GroupModel(GroupPtr g, AlphabetPtr a, std::vector<Element> imgs)
    : group(std::move(g)), alphabet(std::move(a)), images(std::move(imgs)) {
  if (!group || !alphabet) throw std::invalid_argument("model: missing group or alphabet");
  if (images.size() != alphabet->size()) throw std::invalid_argument("model: need one image per symbol");
  for (const auto& x : images) {
    check_dimension(x, group->dimension());
    inverse_images.push_back(group->invert(x));
  }
}

GroupModel GroupModel::standard(GroupPtr group) {
  auto alphabet = std::make_shared<const Alphabet>(group->standard_names());
  auto images = group->standard_generators();
  return GroupModel(std::move(group), std::move(alphabet), std::move(images));
}

Element evaluate(LetterSpan w, const GroupModel& model) {
  Element out = model.group->identity();
  for (Letter l : w) {
    if (l.symbol >= model.images.size()) throw AlphabetMismatch("evaluate: letter outside the model alphabet");
    out = model.group->multiply(out, model.image(l));
  }
  return out;
}

Element evaluate(const Word& w, const GroupModel& model) {
  if (!same_alphabet(w.alphabet(), model.alphabet)) {
    throw AlphabetMismatch("evaluate: word alphabet differs from the model alphabet");
  }
  return evaluate(w.letters(), model);
}

// ---------------------------------------------------------------- balls

BallCapExceeded::BallCapExceeded(std::size_t cap, std::size_t reached)
    : std::runtime_error("ball: cap of " + std::to_string(cap) + " elements exceeded after radius " +
                         std::to_string(reached)),
      radius_reached(reached) {}

std::optional<std::uint32_t> Ball::length(const Element& g) const {
  auto it = distance.find(g);
  if (it == distance.end()) return std::nullopt;
  return it->second;
}

Ball ball(const GroupModel& model, std::size_t radius, std::size_t cap) {
  std::vector<const Element*> steps;
  for (const auto& x : model.images) steps.push_back(&x);
  for (const auto& x : model.inverse_images) steps.push_back(&x);

  Ball out;
  const Element one = model.group->identity();
  out.distance.emplace(one, 0);
  out.spheres.push_back({one});
  for (std::size_t d = 1; d <= radius; ++d) {
    std::vector<Element> sphere;
    for (const auto& g : out.spheres[d - 1]) {
      for (const Element* x : steps) {
        Element next = model.group->multiply(g, *x);
        if (out.distance.contains(next)) continue;
        if (out.distance.size() >= cap) throw BallCapExceeded(cap, d - 1);
        out.distance.emplace(next, static_cast<std::uint32_t>(d));
        sphere.push_back(std::move(next));
      }
    }
    out.spheres.push_back(std::move(sphere));
    out.radius = d;
  }
  return out;
}

GeodesicOracle::GeodesicOracle(const GroupModel& model, std::size_t r_max, std::size_t cap)
    : model_(model), r_max_(r_max), half_(ball(model, (r_max + 1) / 2, cap)) {}

std::optional<std::size_t> GeodesicOracle::length(const Element& g) const {
  if (auto d = half_.length(g)) return *d;
  // |g| > h: some geodesic passes through the sphere of radius h after h letters.
  const std::size_t h = half_.radius;
  std::optional<std::size_t> best;
  for (const auto& u : half_.spheres[h]) {
    const auto rest = half_.length(model_.group->multiply(model_.group->invert(u), g));
    if (rest && (!best || h + *rest < *best)) best = h + *rest;
  }
  if (best && *best > r_max_) return std::nullopt;
  return best;
}

std::optional<std::size_t> geodesic_length(const GroupModel& model, const Element& g, std::size_t r_max,
                                           std::size_t cap) {
  return GeodesicOracle(model, r_max, cap).length(g);
}

}  // namespace rtcomb
