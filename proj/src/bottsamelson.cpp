#include "bottsamelson.h"

namespace flagcalc {

BSModel build_model(const CartanMatrix& c, const std::vector<int>& word) {
  for (int letter : word) check_index(c, letter);
  BSModel m;
  m.cartan = c;
  m.word = word;
  int r = m.length();
  m.next_occ.assign(r, -1);
  for (int i = 0; i < r; ++i)
    for (int k = i + 1; k < r; ++k)
      if (word[k] == word[i]) {
        m.next_occ[i] = k;
        break;
      }
  m.nb.assign(r, std::vector<int>(r, 0));
  for (int t = 0; t < r; ++t)
    for (int i = 0; i <= t; ++i)
      if (word[i] == word[t]) m.nb[t][i] = 1;
  // Build-time duality check: N_t . gamma_i = delta.
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < r; ++i) {
      int v = m.nb[t][i] - (m.next_occ[i] >= 0 ? m.nb[t][m.next_occ[i]] : 0);
      if (v != (t == i ? 1 : 0))
        fail(errc::internal_error, "N_t . gamma_i duality failed at t=" + std::to_string(t + 1) +
                                       ", i=" + std::to_string(i + 1));
    }
  return m;
}

BSDivisor pullback(const BSModel& m, const Degrees& L) {
  if (static_cast<int>(L.size()) != m.cartan.rank)
    fail(errc::invalid_argument, "degree vector has wrong length");
  BSDivisor h(m.word.size());
  for (size_t i = 0; i < m.word.size(); ++i) h[i] = L[m.word[i]];
  return h;
}

std::vector<BSDivisor> nef_cone_generators(const BSModel& m) {
  std::vector<BSDivisor> out;
  for (const auto& row : m.nb) out.emplace_back(row.begin(), row.end());
  return out;
}

bool is_nef(const BSModel& m, const BSDivisor& D) {
  if (D.size() != m.word.size()) fail(errc::invalid_argument, "divisor has wrong length");
  for (size_t i = 0; i < D.size(); ++i) {
    long long pairing = D[i] - (m.next_occ[i] >= 0 ? D[m.next_occ[i]] : 0);
    if (pairing < 0) return false;
  }
  return true;
}

std::vector<int> stein_face(const BSModel& m) {
  std::vector<int> j;
  for (size_t i = 0; i < m.word.size(); ++i)
    if (m.next_occ[i] >= 0) j.push_back(static_cast<int>(i));
  return j;
}

int image_dimension(const RootSystem& rs, const std::vector<int>& word) {
  return matrix_length(rs, word_matrix(rs.cartan, word));
}

bool anticanonical_check(const BSModel& m) {
  const int r = m.length();
  const CartanMatrix& c = m.cartan;
  // Stage-by-stage intersection numbers Z_(t) . beta_j: zero against fibers
  // born above stage t, one against the own fiber, and the section restriction
  // -K_{l_t}.Gamma_{l_j} = a(l_t, l_j) against curves pushed up from below.
  auto section_dot_beta = [&](int t, int j) -> long long {
    if (j > t) return 0;
    if (j == t) return 1;
    return c.at(m.word[t], m.word[j]);
  };
  for (int j = 0; j < r; ++j) {
    long long route1 = 1;  // f*(-K_X/2) . beta_j
    for (int t = 0; t < r; ++t) route1 += section_dot_beta(t, j);
    // Adjunction chain: the fiber contributes 2, each later stage a(l_t,l_j).
    long long route2 = 2;
    for (int t = j + 1; t < r; ++t) route2 += c.at(m.word[t], m.word[j]);
    if (route1 != route2) return false;
  }
  // The last-stage fiber is a ruled-stage fiber: -K_Z . beta_r = 2.
  if (r > 0) {
    long long last = 1;
    for (int t = 0; t < r; ++t) last += section_dot_beta(t, r - 1);
    if (last != 2) return false;
  }
  // f*(-K_X/2) has every H coefficient equal to one.
  Degrees half(c.rank, 1);
  for (long long v : pullback(m, half))
    if (v != 1) return false;
  return true;
}

bool pullback_big_and_nef(const BSModel& m, const Degrees& L) {
  if (!is_nef(m, pullback(m, L))) return false;
  int r = m.length();
  // chi(kL) is a polynomial of degree <= r in k; its r-th finite difference
  // at 0 is nonzero exactly when the degree is r.
  std::vector<mpz_class> chi;
  for (int k = 0; k <= r; ++k) {
    Degrees kL(L);
    for (auto& v : kL) v *= k;
    chi.push_back(euler_char_bs(m.cartan, m.word, kL));
  }
  mpz_class diff = 0, binom = 1;
  for (int j = 0; j <= r; ++j) {
    mpz_class term = binom * chi[j];
    diff += ((r - j) % 2 == 0) ? term : -term;
    binom = binom * (r - j) / (j + 1);
  }
  return diff != 0;
}

}  // namespace flagcalc
