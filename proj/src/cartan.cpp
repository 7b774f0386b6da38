#include "cartan.h"

#include <algorithm>
#include <numeric>
#include <optional>

namespace flagcalc {

namespace {

bool allowed_pair(int p, int q) {
  return (p == 0 && q == 0) || (p == -1 && q == -1) || (p == -1 && q == -2) ||
         (p == -2 && q == -1) || (p == -1 && q == -3) || (p == -3 && q == -1);
}

// Symmetrizer over the rationals by propagation along edges; empty when the
// constraints are inconsistent (non-symmetrizable input).
std::optional<std::vector<long long>> try_symmetrize(const CartanMatrix& c) {
  int n = c.rank;
  // d_j / d_i = a(i,j) / a(j,i) along every edge.  Track d as num/den pairs.
  std::vector<long long> num(n, 0), den(n, 1);
  auto gcd = [](long long a, long long b) { return std::gcd(a, b); };
  for (int start = 0; start < n; ++start) {
    if (num[start] != 0) continue;
    num[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (j == i || c.at(i, j) == 0) continue;
        long long nn = num[i] * c.at(i, j);
        long long dd = den[i] * c.at(j, i);
        if (dd < 0) { nn = -nn; dd = -dd; }
        long long g = gcd(std::abs(nn), dd);
        if (g > 1) { nn /= g; dd /= g; }
        if (num[j] == 0) {
          num[j] = nn;
          den[j] = dd;
          stack.push_back(j);
        } else if (num[j] * dd != nn * den[j]) {
          return std::nullopt;
        }
      }
    }
  }
  // Clear denominators, then reduce each component to gcd 1.
  long long l = 1;
  for (int i = 0; i < n; ++i) l = std::lcm(l, den[i]);
  std::vector<long long> d(n);
  for (int i = 0; i < n; ++i) d[i] = num[i] * (l / den[i]);
  // Component-wise gcd normalization.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = ncomp;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j)
        if (j != i && c.at(i, j) != 0 && comp[j] < 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }
  for (int k = 0; k < ncomp; ++k) {
    long long g = 0;
    for (int i = 0; i < n; ++i)
      if (comp[i] == k) g = gcd(g, std::abs(d[i]));
    for (int i = 0; i < n; ++i)
      if (comp[i] == k) d[i] /= g;
  }
  return d;
}

}  // namespace

CartanMatrix validate_cartan(const std::vector<std::vector<long long>>& matrix) {
  int n = static_cast<int>(matrix.size());
  if (n == 0) fail(errc::invalid_argument, "empty matrix");
  CartanMatrix c;
  c.rank = n;
  c.entries.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(matrix[i].size()) != n)
      fail(errc::invalid_argument, "matrix is not square");
    for (int j = 0; j < n; ++j) {
      long long v = matrix[i][j];
      if (v < -1000 || v > 1000)
        fail(errc::invalid_argument, "entry (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ") is out of range");
      c.at(i, j) = static_cast<int>(v);
    }
  }
  for (int i = 0; i < n; ++i)
    if (c.at(i, i) != 2)
      fail(errc::bad_diagonal,
           "diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ") is " +
               std::to_string(c.at(i, i)) + ", expected 2");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int p = c.at(i, j), q = c.at(j, i);
      if ((p == 0) != (q == 0))
        fail(errc::asymmetric_zero, "entries (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") and transpose: one is zero");
      if (!allowed_pair(p, q))
        fail(errc::bad_pair, "off-diagonal pair (" + std::to_string(p) + "," + std::to_string(q) +
                                 ") at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ") is not allowed");
    }
  if (!try_symmetrize(c))
    fail(errc::not_symmetrizable, "no positive integer symmetrizer exists");
  return c;
}

std::vector<long long> symmetrize(const CartanMatrix& c) {
  auto d = try_symmetrize(c);
  if (!d) fail(errc::internal_error, "validated matrix lost symmetrizability");
  return *d;
}

std::vector<long long> dual_symmetrize(const CartanMatrix& c) {
  CartanMatrix t;
  t.rank = c.rank;
  t.entries.resize(c.entries.size());
  for (int i = 0; i < c.rank; ++i)
    for (int j = 0; j < c.rank; ++j) t.at(i, j) = c.at(j, i);
  auto d = try_symmetrize(t);
  if (!d) fail(errc::internal_error, "validated matrix lost symmetrizability");
  return *d;
}

CartanMatrix builtin_cartan(char type, int rank) {
  auto path = [](CartanMatrix& c, int from, int to) {
    // simple edges along consecutive nodes [from..to]
    for (int i = from; i < to; ++i) {
      c.at(i, i + 1) = -1;
      c.at(i + 1, i) = -1;
    }
  };
  auto blank = [](int n) {
    CartanMatrix c;
    c.rank = n;
    c.entries.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) c.at(i, i) = 2;
    return c;
  };
  switch (type) {
    case 'A': {
      if (rank < 1) fail(errc::unsupported_type, "A requires rank >= 1");
      CartanMatrix c = blank(rank);
      path(c, 0, rank - 1);
      return c;
    }
    case 'B': {
      if (rank < 2) fail(errc::unsupported_type, "B requires rank >= 2");
      CartanMatrix c = blank(rank);
      path(c, 0, rank - 1);
      c.at(rank - 2, rank - 1) = -2;  // short root last
      return c;
    }
    case 'C': {
      if (rank < 2) fail(errc::unsupported_type, "C requires rank >= 2");
      CartanMatrix c = blank(rank);
      path(c, 0, rank - 1);
      c.at(rank - 1, rank - 2) = -2;  // long root last
      return c;
    }
    case 'D': {
      if (rank < 3) fail(errc::unsupported_type, "D requires rank >= 3");
      CartanMatrix c = blank(rank);
      path(c, 0, rank - 2);  // chain through the first fork node
      c.at(rank - 3, rank - 1) = -1;
      c.at(rank - 1, rank - 3) = -1;
      return c;
    }
    case 'E': {
      if (rank < 6 || rank > 8) fail(errc::unsupported_type, "E requires rank in {6,7,8}");
      CartanMatrix c = blank(rank);
      auto join = [&](int i, int j) {
        c.at(i, j) = -1;
        c.at(j, i) = -1;
      };
      join(0, 2);
      join(2, 3);
      join(1, 3);
      for (int i = 3; i < rank - 1; ++i) join(i, i + 1);
      return c;
    }
    case 'F': {
      if (rank != 4) fail(errc::unsupported_type, "F requires rank 4");
      CartanMatrix c = blank(4);
      path(c, 0, 3);
      c.at(1, 2) = -2;  // double edge between nodes 2 and 3
      return c;
    }
    case 'G': {
      if (rank != 2) fail(errc::unsupported_type, "G requires rank 2");
      CartanMatrix c = blank(2);
      c.at(0, 1) = -1;
      c.at(1, 0) = -3;
      return c;
    }
    default:
      fail(errc::unsupported_type, std::string("unknown type label '") + type + "'");
  }
}

namespace {

struct Component {
  std::vector<int> nodes;  // global ids, ascending
};

[[noreturn]] void unclassifiable(const Component& comp, const std::string& why) {
  std::string ids;
  for (int v : comp.nodes) ids += (ids.empty() ? "" : ",") + std::to_string(v + 1);
  fail(errc::unclassifiable_component, "component {" + ids + "}: " + why);
}

// Checks that relabeling `nodes` realizes exactly builtin_cartan(type, m).
bool matches_template(const CartanMatrix& c, char type, const std::vector<int>& nodes) {
  CartanMatrix t = builtin_cartan(type, static_cast<int>(nodes.size()));
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = 0; j < nodes.size(); ++j)
      if (c.at(nodes[i], nodes[j]) != t.at(static_cast<int>(i), static_cast<int>(j)))
        return false;
  return true;
}

DynkinComponent classify_component(const CartanMatrix& c, const Component& comp) {
  const int m = static_cast<int>(comp.nodes.size());
  DynkinComponent out;
  out.rank = m;

  if (m == 1) {
    out.type = 'A';
    out.nodes = comp.nodes;
    return out;
  }

  // Local adjacency with edge weights a(i,j)*a(j,i) in {1,2,3}.
  std::vector<std::vector<int>> adj(m);
  int edge_count = 0;
  std::vector<std::pair<int, int>> multi;  // local index pairs with weight >= 2
  int max_weight = 1;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int p = c.at(comp.nodes[i], comp.nodes[j]);
      int q = c.at(comp.nodes[j], comp.nodes[i]);
      if (p == 0) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edge_count;
      int w = p * q;
      max_weight = std::max(max_weight, w);
      if (w >= 2) multi.emplace_back(i, j);
    }
  if (edge_count != m - 1) unclassifiable(comp, "diagram contains a cycle");

  auto finish = [&](char type, std::vector<int> local_order) {
    std::vector<int> nodes(m);
    for (int k = 0; k < m; ++k) nodes[k] = comp.nodes[local_order[k]];
    if (!matches_template(c, type, nodes))
      unclassifiable(comp, std::string("shape resembles ") + type + std::to_string(m) +
                               " but the arrows disagree");
    out.type = type;
    out.nodes = std::move(nodes);
    return out;
  };

  if (max_weight == 3) {
    if (m != 2 || multi.size() != 1) unclassifiable(comp, "triple edge in a diagram of rank > 2");
    int u = 0, v = 1;
    if (c.at(comp.nodes[u], comp.nodes[v]) != -1) std::swap(u, v);
    return finish('G', {u, v});
  }

  if (max_weight == 2) {
    if (multi.size() != 1) unclassifiable(comp, "more than one double edge");
    for (int i = 0; i < m; ++i)
      if (adj[i].size() > 2) unclassifiable(comp, "double edge with a branch node");
    // The component is a path; walk it from one endpoint.
    int end = -1;
    for (int i = 0; i < m && end < 0; ++i)
      if (adj[i].size() == 1) end = i;
    std::vector<int> order{end};
    std::vector<char> seen(m, 0);
    seen[end] = 1;
    while (static_cast<int>(order.size()) < m) {
      int cur = order.back();
      for (int nb : adj[cur])
        if (!seen[nb]) {
          seen[nb] = 1;
          order.push_back(nb);
          break;
        }
    }
    int pos = -1;  // double edge between order[pos], order[pos+1]
    for (int k = 0; k + 1 < m; ++k) {
      int p = c.at(comp.nodes[order[k]], comp.nodes[order[k + 1]]);
      int q = c.at(comp.nodes[order[k + 1]], comp.nodes[order[k]]);
      if (p * q == 2) pos = k;
    }
    if (m == 2) {
      // B2 and C2 share one diagram; keep the given node order and read the
      // arrow off the matrix so that classify o builtin is the identity.
      if (c.at(comp.nodes[0], comp.nodes[1]) == -2) return finish('B', {0, 1});
      return finish('C', {0, 1});
    }
    if (pos == m - 2 || pos == 0) {
      if (pos == 0) {
        std::reverse(order.begin(), order.end());
        pos = m - 2;
      }
      int u = comp.nodes[order[m - 2]], v = comp.nodes[order[m - 1]];
      if (c.at(u, v) == -2) return finish('B', order);
      return finish('C', order);
    }
    if (m == 4 && pos == 1) {
      if (c.at(comp.nodes[order[1]], comp.nodes[order[2]]) != -2)
        std::reverse(order.begin(), order.end());
      return finish('F', order);
    }
    unclassifiable(comp, "double edge sits at an interior position of a long path");
  }

  // Simply laced: A, D or E.
  std::vector<int> branches;
  for (int i = 0; i < m; ++i) {
    if (adj[i].size() > 3) unclassifiable(comp, "node of degree > 3");
    if (adj[i].size() == 3) branches.push_back(i);
  }
  if (branches.size() > 1) unclassifiable(comp, "more than one branch node");

  if (branches.empty()) {
    // A path.  A 3-node path whose middle node has the smallest global id is
    // reported as D3, so that classify o builtin is the identity on (D,3).
    std::vector<int> ends;
    for (int i = 0; i < m; ++i)
      if (adj[i].size() == 1) ends.push_back(i);
    auto walk = [&](int from) {
      std::vector<int> order{from};
      std::vector<char> seen(m, 0);
      seen[from] = 1;
      while (static_cast<int>(order.size()) < m) {
        for (int nb : adj[order.back()])
          if (!seen[nb]) {
            seen[nb] = 1;
            order.push_back(nb);
            break;
          }
      }
      return order;
    };
    if (m == 3) {
      int mid = -1;
      for (int i = 0; i < m; ++i)
        if (adj[i].size() == 2) mid = i;
      if (mid == 0) {  // local 0 is the smallest global id of the component
        int a = ends[0], b = ends[1];
        if (comp.nodes[a] > comp.nodes[b]) std::swap(a, b);
        return finish('D', {mid, a, b});
      }
    }
    std::vector<int> fwd = walk(ends[0]), bwd = walk(ends[1]);
    auto global = [&](const std::vector<int>& o) {
      std::vector<int> g(m);
      for (int k = 0; k < m; ++k) g[k] = comp.nodes[o[k]];
      return g;
    };
    return finish('A', global(fwd) <= global(bwd) ? fwd : bwd);
  }

  // One branch node: collect the three arms walking outward.
  int b = branches[0];
  std::vector<std::vector<int>> arms;
  for (int nb : adj[b]) {
    std::vector<int> arm{nb};
    int prev = b, cur = nb;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      arm.push_back(cur);
    }
    if (adj[cur].size() == 3) unclassifiable(comp, "two branch nodes on one arm");
    arms.push_back(std::move(arm));
  }
  std::sort(arms.begin(), arms.end(), [&](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return comp.nodes[x[0]] < comp.nodes[y[0]];
  });
  size_t a0 = arms[0].size(), a1 = arms[1].size(), a2 = arms[2].size();
  if (a0 == 1 && a1 == 1) {
    // D_n: long arm reversed is 1..n-3, branch is n-2, fork nodes ascending.
    // When all three arms are single nodes (D4) the smallest leaf becomes the
    // chain end, so the builtin matrices relabel to themselves.
    if (a2 == 1 && comp.nodes[arms[0][0]] < comp.nodes[arms[2][0]])
      std::swap(arms[0], arms[2]);
    std::vector<int> order(arms[2].rbegin(), arms[2].rend());
    order.push_back(b);
    int x = arms[0][0], y = arms[1][0];
    if (comp.nodes[x] > comp.nodes[y]) std::swap(x, y);
    order.push_back(x);
    order.push_back(y);
    return finish('D', order);
  }
  if (a0 == 1 && a1 == 2 && (a2 == 2 || a2 == 3 || a2 == 4)) {
    // E_n: node 2 on the short arm, 1-3 on the middle arm, 5..n on the tail.
    auto assemble = [&](const std::vector<int>& mid, const std::vector<int>& tail) {
      std::vector<int> order;
      order.push_back(mid[1]);      // node 1
      order.push_back(arms[0][0]);  // node 2
      order.push_back(mid[0]);      // node 3
      order.push_back(b);           // node 4
      for (int v : tail) order.push_back(v);
      return order;
    };
    std::vector<int> order = assemble(arms[1], arms[2]);
    if (a2 == 2) {  // E6 is symmetric in its two 2-arms; take the smaller relabeling
      std::vector<int> alt = assemble(arms[2], arms[1]);
      auto global = [&](const std::vector<int>& o) {
        std::vector<int> g;
        for (int k : o) g.push_back(comp.nodes[k]);
        return g;
      };
      if (global(alt) < global(order)) order = alt;
    }
    return finish('E', order);
  }
  unclassifiable(comp, "branch arms match no finite type");
}

}  // namespace

DynkinDiagram classify(const CartanMatrix& c) {
  int n = c.rank;
  std::vector<int> comp_of(n, -1);
  std::vector<Component> comps;
  for (int start = 0; start < n; ++start) {
    if (comp_of[start] >= 0) continue;
    Component comp;
    std::vector<int> stack{start};
    comp_of[start] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      comp.nodes.push_back(i);
      for (int j = 0; j < n; ++j)
        if (j != i && c.at(i, j) != 0 && comp_of[j] < 0) {
          comp_of[j] = comp_of[start];
          stack.push_back(j);
        }
    }
    std::sort(comp.nodes.begin(), comp.nodes.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const Component& x, const Component& y) { return x.nodes[0] < y.nodes[0]; });
  DynkinDiagram d;
  for (const Component& comp : comps) d.components.push_back(classify_component(c, comp));
  return d;
}

std::string type_label(const DynkinComponent& comp) {
  return std::string(1, comp.type) + std::to_string(comp.rank);
}

}  // namespace flagcalc
