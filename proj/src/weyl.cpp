#include "weyl.h"

#include <algorithm>
#include <cstring>
#include <deque>

namespace flagcalc {

ActionMatrix ActionMatrix::identity(int n) {
  ActionMatrix m;
  m.n = n;
  m.a.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ActionMatrix ActionMatrix::compose(const ActionMatrix& rhs) const {
  ActionMatrix out;
  out.n = n;
  out.a.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

Degrees ActionMatrix::apply(const Degrees& d) const {
  Degrees out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += at(i, j) * d[j];
  return out;
}

std::string ActionMatrix::key() const {
  // entries of finite-type actions are tiny; a byte each keeps the hash maps
  // compact when millions of elements are materialized
  std::string key(a.size(), '\0');
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < -127 || a[i] > 127) fail(errc::internal_error, "action entry out of byte range");
    key[i] = static_cast<char>(a[i]);
  }
  return key;
}

ActionMatrix generator_matrix(const CartanMatrix& c, int i) {
  check_index(c, i);
  ActionMatrix m = ActionMatrix::identity(c.rank);
  // r_i: d'_j = d_j - d_i a(i,j), so only column i changes.
  for (int j = 0; j < c.rank; ++j) m.at(j, i) -= c.at(i, j);
  return m;
}

ActionMatrix word_matrix(const CartanMatrix& c, const std::vector<int>& word) {
  ActionMatrix m = ActionMatrix::identity(c.rank);
  for (int letter : word) m = m.compose(generator_matrix(c, letter));
  return m;
}

namespace {

Degrees simple_root_degrees(const CartanMatrix& c, int i) {
  Degrees d(c.rank);
  for (int j = 0; j < c.rank; ++j) d[j] = c.at(i, j);
  return d;
}

}  // namespace

int matrix_length(const RootSystem& rs, const ActionMatrix& m) {
  int len = 0;
  for (int k = 0; k < rs.positive_count; ++k)
    if (rs.degrees_are_negative_root(m.apply(rs.roots[k].degrees))) ++len;
  return len;
}

std::vector<int> matrix_descents(const RootSystem& rs, const ActionMatrix& m) {
  std::vector<int> out;
  for (int i = 0; i < rs.cartan.rank; ++i)
    if (rs.degrees_are_negative_root(m.apply(simple_root_degrees(rs.cartan, i))))
      out.push_back(i);
  return out;
}

WeylElement identity_element(const RootSystem& rs) {
  WeylElement w;
  w.action = ActionMatrix::identity(rs.cartan.rank);
  w.length = 0;
  return w;
}

WeylElement element_from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElement w;
  w.action = word_matrix(rs.cartan, word);
  w.length = matrix_length(rs, w.action);
  // Extract one reduced word by peeling descents.
  ActionMatrix cur = w.action;
  std::vector<int> peeled;
  while (true) {
    std::vector<int> des = matrix_descents(rs, cur);
    if (des.empty()) break;
    int i = des.front();
    cur = cur.compose(generator_matrix(rs.cartan, i));
    peeled.push_back(i);
  }
  if (!(cur == ActionMatrix::identity(rs.cartan.rank)))
    fail(errc::internal_error, "descent peeling did not reach the identity");
  w.witness.assign(peeled.rbegin(), peeled.rend());
  if (static_cast<int>(w.witness.size()) != w.length)
    fail(errc::internal_error, "witness word length disagrees with inversion count");
  return w;
}

WeylElement longest_element(const RootSystem& rs) {
  Degrees kx(rs.cartan.rank, -2);
  DominantResult res = dominant_representative(rs.cartan, kx);
  if (res.singular) fail(errc::internal_error, "canonical class has a singular shift");
  return element_from_word(rs, res.word);
}

bool is_reduced(const RootSystem& rs, const std::vector<int>& word) {
  for (int letter : word) check_index(rs.cartan, letter);
  return matrix_length(rs, word_matrix(rs.cartan, word)) == static_cast<int>(word.size());
}

int WeylTable::index_of(const ActionMatrix& m) const {
  auto it = index.find(m.key());
  return it == index.end() ? -1 : it->second;
}

WeylTable materialize_weyl(const RootSystem& rs, size_t cap) {
  const CartanMatrix& c = rs.cartan;
  int n = c.rank;
  std::vector<ActionMatrix> gens;
  for (int i = 0; i < n; ++i) gens.push_back(generator_matrix(c, i));

  WeylTable t;
  t.elems.push_back(ActionMatrix::identity(n));
  t.length.push_back(0);
  t.index.emplace(t.elems[0].key(), 0);
  t.rmult.emplace_back(n, -1);

  for (size_t head = 0; head < t.elems.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      ActionMatrix img = t.elems[head].compose(gens[i]);
      auto key = img.key();
      auto it = t.index.find(key);
      int idx;
      if (it == t.index.end()) {
        if (t.elems.size() >= cap)
          fail(errc::non_terminating,
               "Weyl group closure exceeded " + std::to_string(cap) + " elements");
        idx = static_cast<int>(t.elems.size());
        t.index.emplace(key, idx);
        t.elems.push_back(img);
        t.length.push_back(t.length[head] + 1);  // BFS depth = word length
        t.rmult.emplace_back(n, -1);
      } else {
        idx = it->second;
      }
      t.rmult[head][i] = idx;
    }
  }

  t.lmult.assign(t.size(), std::vector<int>(n, -1));
  for (size_t x = 0; x < t.size(); ++x)
    for (int i = 0; i < n; ++i) {
      int idx = t.index_of(gens[i].compose(t.elems[x]));
      if (idx < 0) fail(errc::internal_error, "left multiplication left the group");
      t.lmult[x][i] = idx;
    }

  t.inv.assign(t.size(), -1);
  for (size_t x = 0; x < t.size(); ++x) {
    // Peel descents to read one reduced word, then fold it reversed.
    int cur = static_cast<int>(x);
    std::vector<int> word;
    while (t.length[cur] > 0) {
      for (int i = 0; i < n; ++i)
        if (t.is_descent(cur, i)) {
          word.push_back(i);
          cur = t.rmult[cur][i];
          break;
        }
    }
    int e = 0;
    for (int letter : word) e = t.rmult[e][letter];
    t.inv[x] = e;
  }

  int best = 0;
  for (size_t x = 0; x < t.size(); ++x)
    if (t.length[x] > t.length[best]) best = static_cast<int>(x);
  t.w0 = best;
  return t;
}

std::vector<mpz_class> reduced_word_counts(const WeylTable& t) {
  std::vector<int> order(t.size());
  for (size_t i = 0; i < t.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return t.length[x] < t.length[y]; });
  std::vector<mpz_class> counts(t.size(), 0);
  int n = t.rmult.empty() ? 0 : static_cast<int>(t.rmult[0].size());
  for (int x : order) {
    if (t.length[x] == 0) {
      counts[x] = 1;
      continue;
    }
    for (int i = 0; i < n; ++i)
      if (t.is_descent(x, i)) counts[x] += counts[t.rmult[x][i]];
  }
  return counts;
}

void enumerate_reduced_words(const WeylTable& t, int target,
                             const std::function<bool(const std::vector<int>&)>& visit) {
  int n = static_cast<int>(t.rmult[0].size());
  std::vector<int> prefix;
  // Next letters are the left descents of the remaining element.
  std::function<bool(int)> dfs = [&](int m) -> bool {
    if (t.length[m] == 0) return visit(prefix);
    for (int i = 0; i < n; ++i) {
      int next = t.lmult[m][i];
      if (t.length[next] >= t.length[m]) continue;
      prefix.push_back(i);
      if (!dfs(next)) return false;
      prefix.pop_back();
    }
    return true;
  };
  dfs(target);
}

}  // namespace flagcalc
