#pragma once

#include <mutex>
#include <optional>

#include "weyl.h"

namespace flagcalc {

// Bundles a validated Cartan matrix with the caches built from it.  The
// Cartan data is immutable; the caches are created on first use (guarded, so
// concurrent readers are safe) and never mutated afterwards.
class Context {
 public:
  explicit Context(CartanMatrix c) : cartan_(std::move(c)) {}

  static Context from_builtin(char type, int rank) { return Context(builtin_cartan(type, rank)); }

  const CartanMatrix& cartan() const { return cartan_; }

  const RootSystem& roots() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!roots_) roots_ = generate_roots(cartan_);
    return *roots_;
  }

  const WeylTable& weyl() const {
    const RootSystem& rs = roots();
    std::lock_guard<std::mutex> lock(mu_);
    if (!weyl_) weyl_ = materialize_weyl(rs);
    return *weyl_;
  }

  // Reduced-word counts for every group element.
  const std::vector<mpz_class>& word_counts() const {
    const WeylTable& t = weyl();
    std::lock_guard<std::mutex> lock(mu_);
    if (!counts_) counts_ = reduced_word_counts(t);
    return *counts_;
  }

 private:
  CartanMatrix cartan_;
  mutable std::mutex mu_;
  mutable std::optional<RootSystem> roots_;
  mutable std::optional<WeylTable> weyl_;
  mutable std::optional<std::vector<mpz_class>> counts_;
};

}  // namespace flagcalc
