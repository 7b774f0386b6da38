#pragma once

#include <functional>
#include <string>

#include "descent.h"

namespace flagcalc {

// Exhaustive (or sampled, or range-restricted) certification scan over the
// reduced words of the longest element, enumerated in lexicographic order.
// A prefix whose step check fails disqualifies every completion at once, so
// the walk prunes whole subtrees while producing per-word tallies.
struct ScanOptions {
  enum class Mode { full, sample, range };
  Mode mode = Mode::full;
  unsigned long long sample_k = 0;
  unsigned long long seed = 0;  // 0: evenly spread sample; else seeded draw
  unsigned long long range_lo = 1, range_hi = 0;  // 1-based lex indices, inclusive
  std::string checkpoint_path;                    // empty: no checkpointing
  int workers = 1;
  long long node_budget = 1'000'000;
  bool extra_vanishing = false;
  unsigned long long flush_every = 10000;  // processed words between flushes
};

struct ScanReport {
  unsigned long long total = 0;     // reduced words of the longest element
  unsigned long long selected = 0;  // words targeted by the mode
  unsigned long long processed = 0;
  unsigned long long certified = 0;
  unsigned long long failed = 0;
  unsigned long long budget_exceeded = 0;
  bool completed = false;
  bool resumed = false;
};

// should_stop may be empty; returning true from it requests a clean cut at a
// word boundary (the report then has completed=false and the checkpoint
// allows resuming).
ScanReport run_scan(const Context& ctx, const ScanOptions& opt,
                    const std::function<bool()>& should_stop = {});

// Number of reduced words of the longest element (must fit 64 bits to scan).
unsigned long long reduced_word_total(const Context& ctx);

// The 1-based index-th reduced word of the longest element in lex order.
std::vector<int> unrank_reduced_word(const Context& ctx, unsigned long long index);

}  // namespace flagcalc
