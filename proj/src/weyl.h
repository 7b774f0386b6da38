#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "roots.h"

namespace flagcalc {

// Canonical form of a Weyl group element: the integer matrix of its action on
// degree vectors.  Composition is matrix product; the rightmost factor acts
// first, matching w(l) = r_{l_1} o r_{l_2} o ... o r_{l_r}.
struct ActionMatrix {
  int n = 0;
  std::vector<int> a;  // row-major; entries stay single-digit for finite types

  static ActionMatrix identity(int n);
  int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  ActionMatrix compose(const ActionMatrix& rhs) const;  // this o rhs
  Degrees apply(const Degrees& d) const;
  std::string key() const;
  bool operator==(const ActionMatrix&) const = default;
};

struct WeylElement {
  ActionMatrix action;
  int length = 0;
  std::vector<int> witness;  // one reduced word, 0-based letters
};

ActionMatrix generator_matrix(const CartanMatrix& c, int i);
ActionMatrix word_matrix(const CartanMatrix& c, const std::vector<int>& word);

// length = number of positive roots sent to negative ones.
int matrix_length(const RootSystem& rs, const ActionMatrix& m);

// i is a descent iff m maps alpha_i to a negative root.
std::vector<int> matrix_descents(const RootSystem& rs, const ActionMatrix& m);

WeylElement identity_element(const RootSystem& rs);
WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word);

// The unique element of length |Phi+|; its witness word comes from moving the
// shifted canonical class into the dominant chamber.
WeylElement longest_element(const RootSystem& rs);

bool is_reduced(const RootSystem& rs, const std::vector<int>& word);

// Fully materialized group with multiplication tables.  The cap converts
// accidental infinite loops (or out-of-scope giant groups, starting with E8)
// into clean errors before memory pressure does it uncleanly.
struct WeylTable {
  std::vector<ActionMatrix> elems;
  std::vector<int> length;
  std::vector<std::vector<int>> rmult;  // rmult[x][i] = x * r_i
  std::vector<std::vector<int>> lmult;  // lmult[x][i] = r_i * x
  std::vector<int> inv;
  int w0 = -1;
  std::unordered_map<std::string, int> index;

  size_t size() const { return elems.size(); }
  int index_of(const ActionMatrix& m) const;
  bool is_descent(int x, int i) const { return length[rmult[x][i]] < length[x]; }
};

WeylTable materialize_weyl(const RootSystem& rs, size_t cap = 4'000'000);

// counts[x] = number of reduced words of element x (weak-order DP).
std::vector<mpz_class> reduced_word_counts(const WeylTable& t);

// Emits every reduced word of elems[target] exactly once, in lexicographic
// order.  The visitor returns false to abort the stream.
void enumerate_reduced_words(const WeylTable& t, int target,
                             const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace flagcalc
