#pragma once

// Combings built from smaller ones: the straight-line combing of Z^n, split
// extensions Z^n x| H, direct products, finite-index overgroups, generator
// substitution, and towers described by group specs.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtcomb/group_spec.hpp"
#include "rtcomb/groups.hpp"
#include "rtcomb/words.hpp"

namespace rtcomb {

class AlphabetCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class AlphabetPolicy {
  kDisjointify,  // rename the incoming symbols with a level tag
  kReject,       // throw AlphabetCollision
};

struct CombingInfo {
  std::string description;
  bool synchronous = false;
  // Known degree of the length function, when the construction pins it.
  std::optional<std::size_t> claimed_degree;
  // Nilpotency class of the action on the top normal factor (towers only).
  std::optional<std::size_t> relative_class;
  std::size_t depth = 0;  // number of split-extension levels
};

// A language with exactly one word per group element, given as a map from
// elements to words over the model's alphabet.
class Combing {
 public:
  Combing(GroupModel model, CombingInfo info) : model_(std::move(model)), info_(std::move(info)) {}
  virtual ~Combing() = default;

  const GroupModel& model() const noexcept { return model_; }
  const AlphabetPtr& alphabet() const noexcept { return model_.alphabet; }
  const GroupPtr& group() const noexcept { return model_.group; }
  const CombingInfo& info() const noexcept { return info_; }

  Word word(const Element& g) const;
  virtual void word_into(const Element& g, std::vector<Letter>& out) const = 0;

 private:
  GroupModel model_;
  CombingInfo info_;
};

using CombingPtr = std::shared_ptr<const Combing>;

// comb(p) over Sigma_n (or the given names).
CombingPtr comb_abelian(std::size_t n, std::vector<std::string> names = {});

// L_H followed by the straight-line combing of Z^n. `action` holds one matrix
// per standard generator of L_H's group (right action on row vectors).
CombingPtr comb_split_extension(CombingPtr acting, std::vector<Matrix> action, std::size_t n,
                                std::vector<std::string> names = {},
                                AlphabetPolicy policy = AlphabetPolicy::kDisjointify);

CombingPtr comb_direct_product(CombingPtr left, CombingPtr right,
                               AlphabetPolicy policy = AlphabetPolicy::kDisjointify);

// G containing H with finite index, words word_H(h) followed by t.
struct FiniteIndexData {
  GroupModel ambient;  // G over its generating alphabet
  // For each symbol of L_H's alphabet, the ambient symbol spelling it.
  std::vector<std::uint16_t> subgroup_letters;
  // g -> the element of L_H's group equal to g, or nullopt when g is not in H.
  std::function<std::optional<Element>(const Element&)> subgroup_preimage;
  std::vector<Word> transversal;  // over the ambient alphabet
};

class InvalidTransversal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CombingPtr comb_finite_index_up(CombingPtr subgroup, FiniteIndexData data);

// Rewrites L over a new generating set. images[s] is a word over the target
// alphabet for the old symbol s; each substituted image is followed by the
// terminator y1 y1^-1 (y1 = first target symbol).
class TerminatorCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CombingPtr comb_substitute(CombingPtr base, GroupModel target, std::vector<Word> images);

// Presets.
CombingPtr heisenberg_combing(std::size_t n);  // H_{2n+1} = Z^{n+1} x| Z^n
CombingPtr unipotent_combing(std::size_t n);   // U_n(Z) = Z^{n-1} x| U_{n-1}(Z)
CombingPtr gc_combing(std::size_t c);          // G_c = Z^c x| <t>, a_i^t = a_i a_{i+1}
CombingPtr fibonacci_combing();                // Z^2 x| <x>, y^x = z, z^x = yz
CombingPtr free2_combing(std::size_t k);       // free class-2 nilpotent on k generators

// Zero-based (i, j) of the matrix unit for each generator of the U_n preset.
std::vector<std::pair<std::size_t, std::size_t>> unipotent_generator_units(std::size_t n);
// Matrix form of an element of the U_n preset's group.
Element unipotent_preset_to_matrix(const Group& preset_group, std::size_t n, const Element& g);

CombingPtr tower(const GroupSpec& spec);

// Small fixtures for the two generic constructions.
// Z over {A = 2, a = 1}, extending the combing of 2Z with transversal {e, a}.
CombingPtr even_subgroup_extension();
// The H_3 preset rewritten over {x, y} with z -> x^-1 y^-1 x y.
CombingPtr heisenberg_over_xy();

}  // namespace rtcomb
