#pragma once

#include <string>
#include <vector>

#include "errors.h"

namespace flagcalc {

// A validated Cartan matrix. Entries a(i,j) use 0-based indices internally;
// all external interfaces (JSON, CLI, error messages) are 1-based.
//
// Invariants enforced by validate_cartan:
//   - a(i,i) = 2
//   - off-diagonal pairs (a(i,j), a(j,i)) are one of
//     (0,0), (-1,-1), (-1,-2), (-2,-1), (-1,-3), (-3,-1)
//   - a(i,j) = 0 iff a(j,i) = 0
//   - symmetrizable: positive integers d with d_i a(i,j) = d_j a(j,i)
struct CartanMatrix {
  int rank = 0;
  std::vector<int> entries;  // row-major rank x rank

  int at(int i, int j) const { return entries[static_cast<size_t>(i) * rank + j]; }
  int& at(int i, int j) { return entries[static_cast<size_t>(i) * rank + j]; }

  bool operator==(const CartanMatrix&) const = default;
};

struct DynkinComponent {
  char type = 0;            // one of A B C D E F G
  int rank = 0;             // component rank
  std::vector<int> nodes;   // nodes[k] = global node (0-based) playing standard role k+1
};

struct DynkinDiagram {
  std::vector<DynkinComponent> components;  // ordered by smallest global node
};

// Throws bad_diagonal / bad_pair / asymmetric_zero / not_symmetrizable.
CartanMatrix validate_cartan(const std::vector<std::vector<long long>>& matrix);

// Standard Cartan matrix with the usual node order: chains numbered along the
// diagram, B_n with the short root last, C_n with the long root last, F4 with
// the double edge between nodes 2 and 3, G2 as [[2,-1],[-3,2]].
// Throws unsupported_type.
CartanMatrix builtin_cartan(char type, int rank);

// Labels every connected component with a finite type and a relabeling to the
// standard node order.  Throws unclassifiable_component when a component's
// shape matches no finite type (a cycle, a high-degree vertex, ...).
DynkinDiagram classify(const CartanMatrix& c);

// Positive integers d with d_i a(i,j) = d_j a(j,i), gcd 1 on every component.
std::vector<long long> symmetrize(const CartanMatrix& c);

// The symmetrizer of the transposed matrix (e_j a(i,j) = e_i a(j,i)); the
// weights that realize the invariant product on the root side and normalize
// the coroot pairing.
std::vector<long long> dual_symmetrize(const CartanMatrix& c);

std::string type_label(const DynkinComponent& comp);  // e.g. "F4"

}  // namespace flagcalc
