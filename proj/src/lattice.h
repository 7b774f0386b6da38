#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cartan.h"

namespace flagcalc {

// A divisor class in degree coordinates: degrees[i] = D . Gamma_i.  Every
// integer vector is a class; nef means all coordinates >= 0.
using Degrees = std::vector<long long>;

enum class NamedClass { k_i, minus_k_i, k_x, minus_half_k_x, lambda_i };

// r_i(D) = D + (D.Gamma_i) K_i, i.e. d'_j = d_j - d_i a(i,j).
Degrees reflect(const CartanMatrix& c, int i, const Degrees& d);

// r'_i(D) = D + (D.Gamma_i + 1) K_i; fixes the wall d_i = -1.
Degrees affine_reflect(const CartanMatrix& c, int i, const Degrees& d);

struct DominantResult {
  bool singular = false;
  Degrees dominant;        // strictly positive shifted vector (regular case)
  int length = 0;          // lambda(D)
  std::vector<int> word;   // w(word) maps the shift into the dominant chamber
};

// Moves the shifted vector mu = d + (1,...,1) into the closed dominant chamber
// by reflections at negative coordinates (smallest index first).  Hitting a
// wall (mu_i = 0) reports Singular; otherwise the step count is lambda(D).
DominantResult dominant_representative(const CartanMatrix& c, const Degrees& d);

// Same algorithm with a caller-chosen pivot among the negative coordinates;
// pivot_of(candidates) must return one of them.
DominantResult dominant_representative_with_pivot(
    const CartanMatrix& c, const Degrees& d,
    const std::function<int(const std::vector<int>&)>& pivot_of);

// Named lattice points: K_i, -K_i, K_X (all -2), -K_X/2 (all ones), Lambda_i.
Degrees named_class(const CartanMatrix& c, NamedClass which, int i = 0);

// Reruns dominant_representative `runs` times with seeded random pivots and
// checks that the dominant vector and the length never change.
bool orbit_length_invariance_check(const CartanMatrix& c, const Degrees& d, int runs,
                                   std::uint64_t seed);

inline void check_index(const CartanMatrix& c, int i) {
  if (i < 0 || i >= c.rank)
    fail(errc::index_out_of_range,
         "index " + std::to_string(i + 1) + " not in 1.." + std::to_string(c.rank));
}

}  // namespace flagcalc
