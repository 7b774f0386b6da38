#include "descent.h"

#include <algorithm>
#include <cstring>

namespace flagcalc {

CohomologyValue CohomologyValue::exact(mpz_class v) {
  return CohomologyValue{Kind::exact, v, v};
}
CohomologyValue CohomologyValue::range(mpz_class lo, mpz_class hi) {
  return CohomologyValue{Kind::range, std::move(lo), std::move(hi)};
}
CohomologyValue CohomologyValue::unknown() { return CohomologyValue{}; }

DescentEngine::DescentEngine(const Context& ctx, EngineOptions opt) : ctx_(ctx), opt_(opt) {}

namespace {

std::string query_key(const std::vector<int>& word, int len, const Degrees& L, int degree) {
  std::string key;
  key.reserve(static_cast<size_t>(len) + L.size() * sizeof(long long) + 2);
  for (int i = 0; i < len; ++i) key.push_back(static_cast<char>(word[i]));
  key.push_back('\x7f');
  size_t base = key.size();
  key.resize(base + L.size() * sizeof(long long));
  std::memcpy(key.data() + base, L.data(), L.size() * sizeof(long long));
  key.push_back(static_cast<char>(degree));
  return key;
}

// L + t K_j in degree coordinates.
Degrees plus_k(const CartanMatrix& c, const Degrees& L, int j, long long t) {
  Degrees out(L);
  for (int u = 0; u < c.rank; ++u) out[u] -= t * c.at(j, u);
  return out;
}

// Payload is e^{K_j}: returns j, or -1.
int as_canonical_k(const CartanMatrix& c, const Degrees& L) {
  for (int j = 0; j < c.rank; ++j) {
    bool match = true;
    for (int u = 0; u < c.rank && match; ++u) match = (L[u] == -c.at(j, u));
    if (match) return j;
  }
  return -1;
}

void record(DerivationTrace* trace, const char* rule, const std::vector<int>& word, int len,
            const Degrees& L, int degree, const Bounds& result) {
  if (!trace) return;
  TraceStep step;
  step.rule = rule;
  step.word.assign(word.begin(), word.begin() + len);
  step.bundle = L;
  step.degree = degree;
  step.result = result;
  trace->steps.push_back(std::move(step));
}

}  // namespace

Bounds DescentEngine::meet(Bounds a, const Bounds& b, const char* where) const {
  if (b.lo > a.lo) a.lo = b.lo;
  if (!b.unbounded && (a.unbounded || b.hi < a.hi)) {
    a.unbounded = false;
    a.hi = b.hi;
  }
  if (!a.unbounded && a.lo > a.hi)
    fail(errc::inconsistent_derivation, std::string("disjoint ranges while combining rules at ") + where);
  return a;
}

Bounds DescentEngine::eval(const std::vector<int>& word, int len, const Degrees& L, int degree,
                           DerivationTrace* trace) {
  const CartanMatrix& c = ctx_.cartan();
  if (degree < 0 || degree > len) return Bounds::exact(0);
  if (len == 0) {
    Bounds b = Bounds::exact(degree == 0 ? 1 : 0);
    record(trace, "point", word, len, L, degree, b);
    return b;
  }
  const int last = word[len - 1];
  const long long s = L[last];
  if (len == 1) {
    mpz_class v = 0;
    if (degree == 0 && s >= 0) v = static_cast<long>(s + 1);
    if (degree == 1 && s <= -2) v = static_cast<long>(-s - 1);
    Bounds b = Bounds::exact(v);
    record(trace, "rational-curve", word, len, L, degree, b);
    return b;
  }

  std::string key = query_key(word, len, L, degree);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  if (--nodes_left_ < 0) {
    budget_hit_ = true;
    return Bounds::any();
  }
  const bool clean_before = !budget_hit_;

  Bounds result = Bounds::any();
  const char* rule = "none";

  if (s == -1) {
    result = Bounds::exact(0);
    rule = "fiber-deg-minus-1";
  } else if (s == 0) {
    result = eval(word, len - 1, L, degree, trace);
    rule = "fiber-deg-0";
  } else if (s == -2) {
    result = eval(word, len - 1, plus_k(c, L, last, -1), degree - 1, trace);
    rule = "fiber-deg-minus-2";
  } else if (s >= 1) {
    rule = "meet";
    if (degree > 0) {
      bool all_low = true;
      for (int j = 0; j < len && all_low; ++j) all_low = (L[word[j]] >= -1);
      if (all_low) result = meet(result, Bounds::exact(0), "nef-shift-vanishing");
    }
    if (degree > 0 && s == 1) {
      Degrees shifted = plus_k(c, L, last, 1);
      bool transportable = true;
      for (int j = 0; j + 1 < len && transportable; ++j) transportable = (shifted[word[j]] >= -1);
      if (transportable) result = meet(result, eval(word, len - 1, L, degree, trace), "fiber-deg-1-transport");
    }
    if (degree == 1) {
      int j = as_canonical_k(c, L);
      if (j >= 0) {
        bool repeated = false;
        for (int u = 0; u < len; ++u) repeated = repeated || (word[u] == j);
        bool simple = true;  // every letter pairs with K_j in {0,1,-2}
        for (int u = 0; u < len && simple; ++u) {
          long long v = -c.at(j, word[u]);
          simple = (v == 0 || v == 1 || v == -2);
        }
        if (simple) result = meet(result, Bounds::exact(repeated ? 1 : 0), "last-letter-cocycle");
        int skip = 0;  // trailing letters with degree 0 or 1 against K_j
        while (skip < len) {
          long long v = -c.at(j, word[len - 1 - skip]);
          if (v != 0 && v != 1) break;
          ++skip;
        }
        if (skip >= 1) result = meet(result, eval(word, len - skip, L, 1, trace), "skip");
        if (repeated) result = meet(result, Bounds::at_least(1), "nonsplit-cocycle");
      }
    }
    if (opt_.extra_vanishing && degree > 0) {
      // Vanishing for (nef) - Z_(r): check that f*L + Z_(r) is nef on the tower.
      BSModel m = build_model(c, std::vector<int>(word.begin(), word.begin() + len));
      BSDivisor d = pullback(m, L);
      d[len - 1] += 1;
      for (int j = 0; j + 1 < len; ++j) d[j] += c.at(last, word[j]);
      if (is_nef(m, d)) result = meet(result, Bounds::exact(0), "section-vanishing");
    }
    {
      // upper bound through the pushforward: the Demazure expansion on the
      // shorter word dominates term by term
      mpz_class upper = 0;
      bool open = false;
      for (long long t = 0; t <= s && !open; ++t) {
        Bounds child = eval(word, len - 1, plus_k(c, L, last, t), degree, trace);
        if (child.unbounded)
          open = true;
        else
          upper += child.hi;
      }
      if (!open) result = meet(result, Bounds{0, false, upper}, "pushforward-bound");
    }
  } else {  // s <= -3
    rule = "meet";
    if (degree == 0) {
      result = meet(result, Bounds::exact(0), "negative-fiber-degree");
    } else {
      mpz_class upper = 0;
      bool open = false;
      for (long long t = 1; t <= -s - 1 && !open; ++t) {
        Bounds child = eval(word, len - 1, plus_k(c, L, last, -t), degree - 1, trace);
        if (child.unbounded)
          open = true;
        else
          upper += child.hi;
      }
      if (!open) result = meet(result, Bounds{0, false, upper}, "filtration");
    }
  }

  record(trace, rule, word, len, L, degree, result);
  // Results computed under an exhausted budget are sound but not maximal;
  // caching them would freeze the weakness into later, larger-budget calls.
  if (clean_before && !budget_hit_) memo_.emplace(std::move(key), result);
  return result;
}

CohomologyValue DescentEngine::h_value(const std::vector<int>& word,
                                       const GroupAlgebraElement& payload, int degree,
                                       DerivationTrace* trace) {
  for (int letter : word) check_index(ctx_.cartan(), letter);
  for (const auto& [d, coeff] : payload.terms)
    if (coeff < 0)
      fail(errc::invalid_argument, "payload coefficients must be positive for h-queries");
  budget_hit_ = false;
  nodes_left_ = opt_.node_budget;
  Bounds total = Bounds::exact(0);
  for (const auto& [d, coeff] : payload.terms) {
    Bounds term = eval(word, static_cast<int>(word.size()), d, degree, trace);
    total.lo += coeff * term.lo;
    if (term.unbounded)
      total.unbounded = true;
    else if (!total.unbounded)
      total.hi += coeff * term.hi;
  }
  record(trace, "sum", word, static_cast<int>(word.size()), Degrees(ctx_.cartan().rank, 0), degree,
         total);
  if (total.unbounded) return CohomologyValue::unknown();  // one-sided bounds stay unknown
  if (total.lo == total.hi) return CohomologyValue::exact(total.lo);
  return CohomologyValue::range(total.lo, total.hi);
}

DescentEngine::H1 DescentEngine::h1_last_letter(const std::vector<int>& word) {
  if (word.empty()) fail(errc::invalid_argument, "empty word has no last letter");
  const CartanMatrix& c = ctx_.cartan();
  int j = word.back();
  check_index(c, j);
  Degrees kj(c.rank);
  for (int u = 0; u < c.rank; ++u) kj[u] = -c.at(j, u);
  std::vector<int> head(word.begin(), word.end() - 1);
  CohomologyValue v = h_value(head, GroupAlgebraElement::monomial(kj), 1);
  if (v.kind == CohomologyValue::Kind::exact && v.lo == 0) return H1::exact0;
  if (v.kind == CohomologyValue::Kind::exact && v.lo == 1) return H1::exact1;
  return H1::undetermined;
}

H1Check h1_uniqueness(const Context& ctx, const EngineOptions& opt,
                      const std::vector<int>& word) {
  DescentEngine engine(ctx, opt);
  H1Check out;
  out.value = engine.h1_last_letter(word);
  out.budget_hit = engine.budget_hit();
  return out;
}

CertifyResult certify_word(const Context& ctx, const EngineOptions& opt,
                           const std::vector<int>& word) {
  if (!is_reduced(ctx.roots(), word)) fail(errc::not_reduced, "word is not reduced");
  CertifyResult res;
  for (size_t m = 1; m <= word.size(); ++m) {
    int j = word[m - 1];
    bool repeated = false;
    for (size_t u = 0; u + 1 < m; ++u) repeated = repeated || (word[u] == j);
    if (!repeated) continue;  // the cocycle is only forced nonzero on repeats
    std::vector<int> prefix(word.begin(), word.begin() + m);
    H1Check step = h1_uniqueness(ctx, opt, prefix);
    if (step.value == DescentEngine::H1::undetermined) {
      res.certified = false;
      res.fails_at = static_cast<int>(m);
      res.budget_hit = step.budget_hit;
      return res;
    }
  }
  res.certified = true;
  return res;
}

}  // namespace flagcalc
