#pragma once

#include "demazure.h"
#include "weyl.h"

namespace flagcalc {

// Numerical intersection model of the tower over a word l = (l_1,...,l_r):
// bases beta_i (stage fibers), H_i (dual), the nef generators N_t and the
// Mori generators gamma_i = beta_i - beta_{i*}.  Divisors on the tower are
// integer vectors in the H basis.
struct BSModel {
  CartanMatrix cartan;
  std::vector<int> word;      // 0-based letters
  std::vector<int> next_occ;  // i* as 0-based position, or -1
  std::vector<std::vector<int>> nb;  // nb[t][i] = N_t . beta_i (lower triangular, unit diagonal)

  int length() const { return static_cast<int>(word.size()); }
};

using BSDivisor = std::vector<long long>;  // coefficients in the H basis

// Populates all fields and verifies N_t . gamma_i = delta at build time.
BSModel build_model(const CartanMatrix& c, const std::vector<int>& word);

// f*L in the H basis: coefficient i is the Gamma_{l_i}-degree of L.
BSDivisor pullback(const BSModel& m, const Degrees& L);

// The N_t in the H basis (rows of the nb matrix).
std::vector<BSDivisor> nef_cone_generators(const BSModel& m);

// Nef iff nonnegative pairing with every gamma_i.
bool is_nef(const BSModel& m, const BSDivisor& D);

// J = { i : i* defined }, 0-based positions.
std::vector<int> stein_face(const BSModel& m);

// dim f(Z) = length of w(word); equals |word| iff the word is reduced.
int image_dimension(const RootSystem& rs, const std::vector<int>& word);

// Consistency of the recursive tower intersection numbers with the
// adjunction identity -K_Z = sum Z_(i) + f*(-K_X/2).
bool anticanonical_check(const BSModel& m);

// Diagnostic: f*L nef and chi(kL) growing like k^r.
bool pullback_big_and_nef(const BSModel& m, const Degrees& L);

}  // namespace flagcalc
