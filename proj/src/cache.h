#pragma once

#include <optional>
#include <string>

#include "cartan.h"

namespace flagcalc {

// On-disk cache for the expensive Weyl-group numbers, content-addressed by
// the Cartan matrix.  A missing or unreadable entry is never an error;
// corrupt entries are ignored with a warning on stderr.  Writes go through a
// temp file and rename, so concurrent writers end with one valid entry.
struct WeylCacheEntry {
  std::string order;          // |W| in decimal
  int longest_length = 0;     // length of w0
  std::string w0_word_count;  // reduced words of w0, decimal
};

// Resolved from $FLAGCALC_CACHE_DIR, else $XDG_CACHE_HOME/flagcalc, else
// $HOME/.cache/flagcalc; empty when no usable location exists.
std::string cache_directory();

std::optional<WeylCacheEntry> cache_load(const CartanMatrix& c);
void cache_store(const CartanMatrix& c, const WeylCacheEntry& entry);

}  // namespace flagcalc
