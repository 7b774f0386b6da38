#pragma once

#include <unordered_map>
#include <vector>

#include "lattice.h"

namespace flagcalc {

// A root written in the simple-root basis (root = sum coeffs[j] alpha_j with
// alpha_j = -K_j), together with its degree vector coeffs^T A.
struct Root {
  std::vector<long long> coeffs;
  Degrees degrees;
  bool positive = false;
};

struct RootSystem {
  CartanMatrix cartan;
  std::vector<long long> symmetrizer;       // curve-side weights, d_i a(i,j) = d_j a(j,i)
  std::vector<long long> dual_symmetrizer;  // root-side weights, used by the coroot pairing
  std::vector<Root> roots;          // positives first, then their negatives
  int positive_count = 0;

  const Root& positive(int k) const { return roots[k]; }

  // Index into `roots` by degree vector, or -1.
  int find_by_degrees(const Degrees& d) const;

  // True when the degree vector is a negative root.  Used for descent tests.
  bool degrees_are_negative_root(const Degrees& d) const;

 private:
  friend RootSystem generate_roots(const CartanMatrix& c);
  std::unordered_map<std::string, int> by_degrees_;
};

// Closure of the simple roots under all simple reflections, partitioned into
// positive and negative.  The iteration cap (10000 roots) converts
// non-finite-type input that slipped past classification into a clean error.
RootSystem generate_roots(const CartanMatrix& c);

// Degree vector of a coefficient vector: d_k = sum_j coeffs[j] a(j,k).
Degrees root_to_degrees(const CartanMatrix& c, const std::vector<long long>& coeffs);

// <L, r^vee> computed in exact rational arithmetic; always an integer for
// roots of the system (non_integral signals an internal bug).
long long coroot_pairing(const RootSystem& rs, const Root& r, const Degrees& L);

std::string degrees_key(const Degrees& d);

}  // namespace flagcalc
