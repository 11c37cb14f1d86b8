#pragma once

// Group-spec text format.
//
//   spec := builtin | tower | product | '(' spec ')'
//   builtin := 'abelian' N | 'heisenberg' D | 'unipotent' N | 'gc' C
//            | 'fibonacci' | 'free2' K
//   tower := 'semidirect' 'n=' N 'action=' MATRICES 'over' spec
//   product := 'direct' spec spec
//
// MATRICES lists one n x n matrix per generator of the acting group,
// separated by ';'; rows are separated by '/', entries by ','. Row k is the
// image of the k-th basis vector (right action on row vectors). '#' starts a
// comment that runs to the end of the line.
//
//   semidirect n=2 action=0,1/1,1 over abelian 1

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtcomb/groups.hpp"

namespace rtcomb {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupSpec {
  enum class Kind { kAbelian, kHeisenberg, kUnipotent, kGc, kFibonacci, kFree2, kSemidirect, kDirect };

  Kind kind = Kind::kAbelian;
  // abelian: rank; heisenberg: dimension 2n+1; unipotent: matrix size;
  // gc: c; free2: number of generators; semidirect: rank of the normal part.
  std::size_t size = 1;
  std::vector<Matrix> actions;      // semidirect only
  std::vector<GroupSpec> children;  // semidirect: {over}; direct: {left, right}

  std::string to_string() const;
};

GroupSpec parse_group_spec(std::string_view text);
GroupSpec load_group_spec(const std::filesystem::path& path);

}  // namespace rtcomb
