#pragma once

#include <gmpxx.h>

#include <map>

#include "roots.h"

namespace flagcalc {

// Finite formal integer combination of divisor classes; the carrier for the
// Demazure calculus on the group algebra of the degree lattice.  Terms are
// kept sorted (std::map on degree vectors) so serialization and hashing are
// deterministic; zero coefficients are never stored.
struct GroupAlgebraElement {
  std::map<Degrees, mpz_class> terms;

  static GroupAlgebraElement monomial(const Degrees& d, mpz_class coeff = 1);
  void add(const Degrees& d, const mpz_class& coeff);
  mpz_class degree() const;  // sum of coefficients
  size_t term_count() const { return terms.size(); }
  bool operator==(const GroupAlgebraElement&) const = default;
};

// The three-case operator on the Gamma_i-degree s of each term:
//   s >= 0     ->  e^L + e^(L+K_i) + ... + e^(L+sK_i)
//   s  = -1    ->  0
//   s <= -2    -> -e^(L-K_i) - ... - e^(L-(-s-1)K_i)
// extended linearly.  capacity_exceeded past 10^7 stored terms.
GroupAlgebraElement demazure_op(const CartanMatrix& c, int i, const GroupAlgebraElement& xi);

// D_l(e^L) = D_{l_1}( ... (D_{l_r}(e^L))), rightmost letter applied first.
GroupAlgebraElement demazure_word(const CartanMatrix& c, const std::vector<int>& word,
                                  const GroupAlgebraElement& xi);

// Euler characteristic of e^L on the tower of `word`: deg(D_word(e^L)).
mpz_class euler_char_bs(const CartanMatrix& c, const std::vector<int>& word, const Degrees& L);

// Product formula over the positive roots, in exact rational arithmetic:
// prod <mu, a^vee> / <rho, a^vee> with mu the shifted degree vector.
mpz_class euler_char_x(const RootSystem& rs, const Degrees& L);

// At most one nonzero entry; the alternating sum equals euler_char_x.
struct CohomologyProfile {
  std::map<int, mpz_class> h;  // degree -> dimension, absent = 0
  bool singular = false;
  int length = -1;  // lambda(L) when regular

  bool operator==(const CohomologyProfile& o) const { return h == o.h; }
};

CohomologyProfile bwb_cohomology(const RootSystem& rs, const Degrees& L);

// Smallest k >= 1 with h^q(X, -k Lambda_i) != 0; not_found past 2|Phi+|.
int index_of_contraction(const RootSystem& rs, int i, int q);

// profile(L) reversed in degree equals profile(K_X - L).
bool serre_check(const RootSystem& rs, const Degrees& L);

}  // namespace flagcalc
