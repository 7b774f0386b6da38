#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "bottsamelson.h"
#include "context.h"
#include "demazure.h"

namespace flagcalc {

// Derived value for one cohomology dimension: a point, a finite range, or
// nothing better than "unknown".
struct CohomologyValue {
  enum class Kind { exact, range, unknown };
  Kind kind = Kind::unknown;
  mpz_class lo = 0;
  mpz_class hi = 0;  // meaningful for exact/range

  static CohomologyValue exact(mpz_class v);
  static CohomologyValue range(mpz_class lo, mpz_class hi);
  static CohomologyValue unknown();
  bool operator==(const CohomologyValue&) const = default;
};

// Internal interval [lo, hi], hi possibly unbounded.  Meets of intervals from
// different rules must stay nonempty; an empty meet is a derivation bug.
struct Bounds {
  mpz_class lo = 0;
  bool unbounded = true;
  mpz_class hi = 0;

  static Bounds exact(mpz_class v) { return Bounds{v, false, v}; }
  static Bounds any() { return Bounds{0, true, 0}; }
  static Bounds at_least(mpz_class v) { return Bounds{std::move(v), true, 0}; }
  bool is_exact() const { return !unbounded && lo == hi; }
  bool operator==(const Bounds&) const = default;
};

struct TraceStep {
  std::string rule;
  std::vector<int> word;
  Degrees bundle;
  int degree = 0;
  Bounds result;
  bool operator==(const TraceStep&) const = default;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;
};

struct EngineOptions {
  long long node_budget = 1'000'000;
  // The stronger vanishing rule for payloads of the shape (nef) - Z_(r); kept
  // off by default so scan reports reflect the core rule set.
  bool extra_vanishing = false;
};

// Bounded derivation search over the descent rules, with memoization keyed on
// the canonical query (word, bundle, degree).  Never returns a wrong value:
// exhausting the budget degrades answers toward `unknown`.
class DescentEngine {
 public:
  explicit DescentEngine(const Context& ctx, EngineOptions opt = {});

  // h^degree(Z_word, payload); payload coefficients must be positive.
  CohomologyValue h_value(const std::vector<int>& word, const GroupAlgebraElement& payload,
                          int degree, DerivationTrace* trace = nullptr);

  enum class H1 { exact0, exact1, undetermined };

  // h^1(Z_{l[1]}, e^{K_{l_r}}) for the given word l.
  H1 h1_last_letter(const std::vector<int>& word);

  // True when the budget ran out during the last h_value/h1 evaluation.
  bool budget_hit() const { return budget_hit_; }

  const EngineOptions& options() const { return opt_; }

 private:
  Bounds eval(const std::vector<int>& word, int len, const Degrees& L, int degree,
              DerivationTrace* trace);
  Bounds meet(Bounds a, const Bounds& b, const char* where) const;

  const Context& ctx_;
  EngineOptions opt_;
  std::unordered_map<std::string, Bounds> memo_;
  long long nodes_left_ = 0;
  bool budget_hit_ = false;
};

struct H1Check {
  DescentEngine::H1 value = DescentEngine::H1::undetermined;
  bool budget_hit = false;
};

// Hermetic evaluation of h^1(Z_{l[1]}, e^{K_{l_r}}): a fresh engine with a
// fresh budget, so the answer depends only on (word, options).  This keeps
// scan tallies identical across worker counts and checkpoint resumes.
H1Check h1_uniqueness(const Context& ctx, const EngineOptions& opt, const std::vector<int>& word);

struct CertifyResult {
  bool certified = false;
  int fails_at = 0;  // 1-based prefix length of the first undetermined step
  bool budget_hit = false;
};

// Uniqueness certification: every prefix whose last letter repeats an earlier
// one must have a pinned h^1 (0 or 1); each step is checked hermetically.
// Throws not_reduced.
CertifyResult certify_word(const Context& ctx, const EngineOptions& opt,
                           const std::vector<int>& word);

}  // namespace flagcalc
