#include "roots.h"

#include <gmpxx.h>

#include <algorithm>
#include <cstring>
#include <deque>

namespace flagcalc {

std::string degrees_key(const Degrees& d) {
  std::string key(d.size() * sizeof(long long), '\0');
  std::memcpy(key.data(), d.data(), key.size());
  return key;
}

Degrees root_to_degrees(const CartanMatrix& c, const std::vector<long long>& coeffs) {
  int n = c.rank;
  Degrees d(n, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) d[k] += coeffs[j] * c.at(j, k);
  return d;
}

namespace {

constexpr int kRootCap = 10000;

// Reflection of a coefficient vector: c_i <- c_i - sum_j a(j,i) c_j.
std::vector<long long> reflect_coeffs(const CartanMatrix& c, int i,
                                      const std::vector<long long>& v) {
  std::vector<long long> out(v);
  long long s = 0;
  for (int j = 0; j < c.rank; ++j) s += c.at(j, i) * v[j];
  out[i] -= s;
  return out;
}

}  // namespace

RootSystem generate_roots(const CartanMatrix& c) {
  int n = c.rank;
  RootSystem rs;
  rs.cartan = c;
  rs.symmetrizer = symmetrize(c);
  rs.dual_symmetrizer = dual_symmetrize(c);

  std::unordered_map<std::string, int> seen;  // coeff key -> index in work list
  std::vector<std::vector<long long>> work;
  auto coeff_key = [&](const std::vector<long long>& v) {
    std::string key(v.size() * sizeof(long long), '\0');
    std::memcpy(key.data(), v.data(), key.size());
    return key;
  };
  for (int i = 0; i < n; ++i) {
    std::vector<long long> e(n, 0);
    e[i] = 1;
    seen.emplace(coeff_key(e), static_cast<int>(work.size()));
    work.push_back(std::move(e));
  }
  for (size_t head = 0; head < work.size(); ++head) {
    if (work.size() > kRootCap)
      fail(errc::non_terminating, "root closure exceeded " + std::to_string(kRootCap) +
                                      " roots; input is not of finite type");
    std::vector<long long> cur = work[head];
    for (int i = 0; i < n; ++i) {
      std::vector<long long> img = reflect_coeffs(c, i, cur);
      auto key = coeff_key(img);
      if (!seen.count(key)) {
        seen.emplace(key, static_cast<int>(work.size()));
        work.push_back(std::move(img));
      }
    }
  }

  std::vector<Root> pos, neg;
  for (auto& v : work) {
    bool any_pos = false, any_neg = false;
    for (long long x : v) {
      if (x > 0) any_pos = true;
      if (x < 0) any_neg = true;
    }
    if (any_pos && any_neg)
      fail(errc::internal_error, "root with mixed-sign coefficients");
    Root r;
    r.coeffs = std::move(v);
    r.degrees = root_to_degrees(c, r.coeffs);
    r.positive = any_pos;
    (any_pos ? pos : neg).push_back(std::move(r));
  }
  if (pos.size() != neg.size())
    fail(errc::internal_error, "positive/negative root counts differ");

  auto lt = [](const Root& x, const Root& y) { return x.coeffs < y.coeffs; };
  std::sort(pos.begin(), pos.end(), lt);
  std::sort(neg.begin(), neg.end(), lt);
  rs.positive_count = static_cast<int>(pos.size());
  rs.roots = std::move(pos);
  rs.roots.insert(rs.roots.end(), neg.begin(), neg.end());
  for (size_t k = 0; k < rs.roots.size(); ++k)
    rs.by_degrees_.emplace(degrees_key(rs.roots[k].degrees), static_cast<int>(k));
  return rs;
}

int RootSystem::find_by_degrees(const Degrees& d) const {
  auto it = by_degrees_.find(degrees_key(d));
  return it == by_degrees_.end() ? -1 : it->second;
}

bool RootSystem::degrees_are_negative_root(const Degrees& d) const {
  int k = find_by_degrees(d);
  if (k < 0) fail(errc::internal_error, "degree vector is not a root of the system");
  return !roots[static_cast<size_t>(k)].positive;
}

long long coroot_pairing(const RootSystem& rs, const Root& r, const Degrees& L) {
  const CartanMatrix& c = rs.cartan;
  int n = c.rank;
  if (static_cast<int>(L.size()) != n) fail(errc::invalid_argument, "degree vector has wrong length");
  // <L, r^vee> = (sum_j c_j e_j L_j) / e_r with the root-side weights e and
  // e_r = (sum_{j,k} c_j c_k a(j,k) e_k)/2, half the squared length of r.
  const std::vector<long long>& e = rs.dual_symmetrizer;
  mpz_class num = 0;
  for (int j = 0; j < n; ++j)
    num += mpz_class(static_cast<long>(r.coeffs[j])) * static_cast<long>(e[j]) *
           static_cast<long>(L[j]);
  mpz_class twice_dr = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      twice_dr += mpz_class(static_cast<long>(r.coeffs[j])) * static_cast<long>(r.coeffs[k]) *
                  static_cast<long>(e[k]) * c.at(j, k);
  mpz_class dr = twice_dr / 2;
  if (dr == 0) fail(errc::internal_error, "root of zero length");
  mpz_class q = num * 2;
  if (q % twice_dr != 0)
    fail(errc::non_integral, "coroot pairing is not an integer");
  q /= twice_dr;
  return static_cast<long long>(q.get_si());
}

}  // namespace flagcalc
