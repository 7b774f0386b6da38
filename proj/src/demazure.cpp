#include "demazure.h"

namespace flagcalc {

namespace {
constexpr size_t kTermCap = 10'000'000;
}

GroupAlgebraElement GroupAlgebraElement::monomial(const Degrees& d, mpz_class coeff) {
  GroupAlgebraElement x;
  if (coeff != 0) x.terms.emplace(d, std::move(coeff));
  return x;
}

void GroupAlgebraElement::add(const Degrees& d, const mpz_class& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms.emplace(d, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

mpz_class GroupAlgebraElement::degree() const {
  mpz_class sum = 0;
  for (const auto& [d, n] : terms) sum += n;
  return sum;
}

GroupAlgebraElement demazure_op(const CartanMatrix& c, int i, const GroupAlgebraElement& xi) {
  check_index(c, i);
  GroupAlgebraElement out;
  for (const auto& [d, coeff] : xi.terms) {
    long long s = d[i];
    if (s == -1) continue;
    Degrees cur(d);
    if (s >= 0) {
      for (long long t = 0;; ++t) {
        out.add(cur, coeff);
        if (t == s) break;
        for (int j = 0; j < c.rank; ++j) cur[j] -= c.at(i, j);  // + K_i
      }
    } else {
      for (long long t = 1; t <= -s - 1; ++t) {
        for (int j = 0; j < c.rank; ++j) cur[j] += c.at(i, j);  // - K_i
        out.add(cur, -coeff);
      }
    }
    if (out.terms.size() > kTermCap)
      fail(errc::capacity_exceeded, "Demazure expansion exceeded 10^7 stored terms");
  }
  return out;
}

GroupAlgebraElement demazure_word(const CartanMatrix& c, const std::vector<int>& word,
                                  const GroupAlgebraElement& xi) {
  GroupAlgebraElement cur = xi;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = demazure_op(c, *it, cur);
  return cur;
}

mpz_class euler_char_bs(const CartanMatrix& c, const std::vector<int>& word, const Degrees& L) {
  return demazure_word(c, word, GroupAlgebraElement::monomial(L)).degree();
}

mpz_class euler_char_x(const RootSystem& rs, const Degrees& L) {
  int n = rs.cartan.rank;
  if (static_cast<int>(L.size()) != n) fail(errc::invalid_argument, "degree vector has wrong length");
  Degrees mu(L);
  for (int i = 0; i < n; ++i) mu[i] += 1;
  Degrees rho(n, 1);
  mpq_class chi = 1;
  for (int k = 0; k < rs.positive_count; ++k) {
    const Root& r = rs.roots[k];
    // The coroot normalization cancels between numerator and denominator.
    mpz_class num = 0, den = 0;
    for (int j = 0; j < n; ++j) {
      mpz_class cd = mpz_class(static_cast<long>(r.coeffs[j])) *
                     static_cast<long>(rs.dual_symmetrizer[j]);
      num += cd * static_cast<long>(mu[j]);
      den += cd * static_cast<long>(rho[j]);
    }
    if (den == 0) fail(errc::internal_error, "positive root with zero height pairing");
    chi *= mpq_class(num, den);
  }
  chi.canonicalize();
  if (chi.get_den() != 1)
    fail(errc::non_integral, "Euler characteristic product is not an integer");
  return chi.get_num();
}

CohomologyProfile bwb_cohomology(const RootSystem& rs, const Degrees& L) {
  CohomologyProfile p;
  DominantResult dom = dominant_representative(rs.cartan, L);
  if (dom.singular) {
    p.singular = true;
    return p;
  }
  p.length = dom.length;
  mpz_class chi = euler_char_x(rs, L);
  mpz_class h = abs(chi);
  if (h != 0) p.h.emplace(dom.length, std::move(h));
  return p;
}

int index_of_contraction(const RootSystem& rs, int i, int q) {
  check_index(rs.cartan, i);
  if (q < 0 || q > rs.positive_count)
    fail(errc::index_out_of_range, "cohomological degree out of range");
  int cap = 2 * rs.positive_count;
  for (int k = 1; k <= cap; ++k) {
    Degrees L(rs.cartan.rank, 0);
    L[i] = -k;
    CohomologyProfile p = bwb_cohomology(rs, L);
    auto it = p.h.find(q);
    if (it != p.h.end() && it->second != 0) return k;
  }
  fail(errc::not_found, "no k <= " + std::to_string(cap) + " with h^" + std::to_string(q) +
                            "(X, -k Lambda_" + std::to_string(i + 1) + ") nonzero");
}

bool serre_check(const RootSystem& rs, const Degrees& L) {
  int n = rs.cartan.rank;
  int dim = rs.positive_count;
  Degrees dual(n);
  for (int j = 0; j < n; ++j) dual[j] = -2 - L[j];  // K_X - L
  CohomologyProfile a = bwb_cohomology(rs, L);
  CohomologyProfile b = bwb_cohomology(rs, dual);
  std::map<int, mpz_class> reversed;
  for (const auto& [j, v] : a.h) reversed.emplace(dim - j, v);
  return reversed == b.h;
}

}  // namespace flagcalc
