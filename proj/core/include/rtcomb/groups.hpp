#pragma once

// Exact group arithmetic for the concrete groups of the library and breadth
// first search in their Cayley graphs.
//
// Elements are flat coordinate vectors whose meaning depends on the group.
// Every coordinate vector produced by multiply/invert is canonical, so
// elements can be compared and hashed directly.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtcomb/integer.hpp"
#include "rtcomb/words.hpp"

namespace rtcomb {

using Element = std::vector<Integer>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

std::string format_element(const Element& e);

// Square integer matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<Integer> a;

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Integer>>& rows);
  Integer& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
// Row vector times matrix.
std::vector<Integer> apply_right(const std::vector<Integer>& v, const Matrix& m);
Integer determinant(const Matrix& m);
// Inverse over the integers; throws std::invalid_argument when det != +-1.
Matrix integer_inverse(const Matrix& m);
// m^e for any integer e (negative powers use `inverse`).
Matrix power(const Matrix& m, const Matrix& inverse, const Integer& e);

// g_{generator}^{exponent}.
struct Syllable {
  std::size_t generator = 0;
  Integer exponent;
};

class Group {
 public:
  virtual ~Group() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual Element identity() const { return Element(dimension(), 0); }
  virtual Element multiply(const Element& lhs, const Element& rhs) const = 0;
  virtual Element invert(const Element& g) const = 0;
  virtual std::vector<Element> standard_generators() const = 0;
  virtual std::vector<std::string> standard_names() const = 0;
  // A product of powers of the standard generators equal to g.
  virtual std::vector<Syllable> syllables(const Element& g) const = 0;
  virtual std::string format(const Element& g) const { return format_element(g); }

  Element power(const Element& g, const Integer& exponent) const;
};

using GroupPtr = std::shared_ptr<const Group>;

// Z^n.
class FreeAbelian final : public Group {
 public:
  explicit FreeAbelian(std::size_t n, std::vector<std::string> names = {});
  std::string name() const override { return "Z^" + std::to_string(n_); }
  std::size_t dimension() const override { return n_; }
  Element multiply(const Element& lhs, const Element& rhs) const override;
  Element invert(const Element& g) const override;
  std::vector<Element> standard_generators() const override;
  std::vector<std::string> standard_names() const override { return names_; }
  std::vector<Syllable> syllables(const Element& g) const override;

 private:
  std::size_t n_;
  std::vector<std::string> names_;
};

// H_{2n+1} with coordinates (a_1..a_n, b_1..b_n, c) standing for
// x^a y^b z^c, and product
//   (a, b, c)(a', b', c') = (a + a', b + b', c + c' - a'.b),
// so that x_i^-1 y_i^-1 x_i y_i = z.
class Heisenberg final : public Group {
 public:
  explicit Heisenberg(std::size_t n);
  std::string name() const override { return "H_" + std::to_string(2 * n_ + 1); }
  std::size_t dimension() const override { return 2 * n_ + 1; }
  Element multiply(const Element& lhs, const Element& rhs) const override;
  Element invert(const Element& g) const override;
  std::vector<Element> standard_generators() const override;
  std::vector<std::string> standard_names() const override;
  std::vector<Syllable> syllables(const Element& g) const override;

 private:
  std::size_t n_;
};

// U_n(Z): upper unitriangular integer matrices. Coordinates are the entries
// above the diagonal, row by row: (1,2), (1,3), ..., (1,n), (2,3), ...
class Unipotent final : public Group {
 public:
  explicit Unipotent(std::size_t n);
  std::string name() const override { return "U_" + std::to_string(n_); }
  std::size_t dimension() const override { return n_ * (n_ - 1) / 2; }
  Element multiply(const Element& lhs, const Element& rhs) const override;
  Element invert(const Element& g) const override;
  // E_ij for i < j in coordinate order.
  std::vector<Element> standard_generators() const override;
  std::vector<std::string> standard_names() const override;
  std::vector<Syllable> syllables(const Element& g) const override;

  std::size_t size() const noexcept { return n_; }
  std::size_t coordinate(std::size_t i, std::size_t j) const;  // zero-based i < j
  Matrix to_matrix(const Element& g) const;
  Element from_matrix(const Matrix& m) const;

 private:
  std::size_t n_;
};

// Splits g in U_n as (last column part) * (upper-left block): returns the
// column (entries (1,n) .. (n-1,n)) and the U_{n-1} element.
std::pair<std::vector<Integer>, Element> unipotent_split(const Unipotent& group, const Element& g);
Element unipotent_join(const Unipotent& group, const std::vector<Integer>& column, const Element& upper_left);

// Z^n x| H: elements (h, v) with (h, v)(h', v') = (h h', v A(h') + v'), where
// A is the right action of H on row vectors determined by one invertible
// matrix per standard generator of H. Coordinates are h's followed by v.
class Semidirect final : public Group {
 public:
  Semidirect(GroupPtr acting, std::size_t n, std::vector<Matrix> actions, std::vector<std::string> names = {});

  std::string name() const override;
  std::size_t dimension() const override { return acting_->dimension() + n_; }
  Element identity() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  Element invert(const Element& g) const override;
  // Generators of H (as (h, 0)), then the basis of Z^n (as (1, e_k)).
  std::vector<Element> standard_generators() const override;
  std::vector<std::string> standard_names() const override;
  std::vector<Syllable> syllables(const Element& g) const override;

  const GroupPtr& acting() const noexcept { return acting_; }
  std::size_t rank() const noexcept { return n_; }
  const std::vector<Matrix>& actions() const noexcept { return actions_; }
  const std::vector<std::string>& normal_names() const noexcept { return names_; }

  Element acting_part(const Element& g) const;
  std::vector<Integer> normal_part(const Element& g) const;
  Element pair(const Element& h, const std::vector<Integer>& v) const;
  // A(h), computed along the standard syllables of h.
  Matrix action_of(const Element& h) const;

 private:
  GroupPtr acting_;
  std::size_t n_;
  std::vector<Matrix> actions_;
  std::vector<Matrix> inverses_;
  std::vector<std::string> names_;
};

// A x B with coordinates a's followed by b's.
class DirectProduct final : public Group {
 public:
  DirectProduct(GroupPtr left, GroupPtr right);
  std::string name() const override { return left_->name() + " x " + right_->name(); }
  std::size_t dimension() const override { return left_->dimension() + right_->dimension(); }
  Element identity() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  Element invert(const Element& g) const override;
  std::vector<Element> standard_generators() const override;
  std::vector<std::string> standard_names() const override;
  std::vector<Syllable> syllables(const Element& g) const override;

  const GroupPtr& left() const noexcept { return left_; }
  const GroupPtr& right() const noexcept { return right_; }
  Element left_part(const Element& g) const;
  Element right_part(const Element& g) const;
  Element join(const Element& a, const Element& b) const;

 private:
  GroupPtr left_;
  GroupPtr right_;
};

// A group together with a generating alphabet: symbol s stands for images[s].
struct GroupModel {
  GroupPtr group;
  AlphabetPtr alphabet;
  std::vector<Element> images;
  std::vector<Element> inverse_images;

  GroupModel() = default;
  GroupModel(GroupPtr group, AlphabetPtr alphabet, std::vector<Element> images);
  // The standard generators under their standard names.
  static GroupModel standard(GroupPtr group);

  const Element& image(Letter l) const { return l.sign > 0 ? images[l.symbol] : inverse_images[l.symbol]; }
};

Element evaluate(const Word& w, const GroupModel& model);
Element evaluate(LetterSpan w, const GroupModel& model);

constexpr std::size_t kDefaultBallCap = 5'000'000;

class BallCapExceeded : public std::runtime_error {
 public:
  BallCapExceeded(std::size_t cap, std::size_t radius_reached);
  std::size_t radius_reached;
};

// All elements within distance `radius` of the identity, with their distances.
struct Ball {
  std::size_t radius = 0;
  std::unordered_map<Element, std::uint32_t, ElementHash> distance;
  std::vector<std::vector<Element>> spheres;  // spheres[d]: elements at distance d, in discovery order

  std::optional<std::uint32_t> length(const Element& g) const;
  std::size_t size() const noexcept { return distance.size(); }
};

Ball ball(const GroupModel& model, std::size_t radius, std::size_t cap = kDefaultBallCap);

// Word length up to r_max by meeting in the middle: a ball of radius
// ceil(r_max / 2) answers every query of length <= r_max.
class GeodesicOracle {
 public:
  GeodesicOracle(const GroupModel& model, std::size_t r_max, std::size_t cap = kDefaultBallCap);
  std::optional<std::size_t> length(const Element& g) const;
  std::size_t max_radius() const noexcept { return r_max_; }
  const Ball& half_ball() const noexcept { return half_; }

 private:
  GroupModel model_;
  std::size_t r_max_;
  Ball half_;
};

// nullopt means "longer than r_max".
std::optional<std::size_t> geodesic_length(const GroupModel& model, const Element& g, std::size_t r_max,
                                           std::size_t cap = kDefaultBallCap);

}  // namespace rtcomb
