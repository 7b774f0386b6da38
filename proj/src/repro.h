#pragma once

#include <string>

#include "json.hpp"

namespace flagcalc {

// Named reproduction bundles behind the `repro` subcommand: each runs a fixed
// set of checks and reports a pass/fail table.
//   word-counts    reduced-word counts of the longest element (A2, B2, A3, F4)
//   f4-index       the h^15 index search on the F4 tower of contractions
//   bc-uniqueness  certification of (u_n)^n in B2, B3 and (d_n)^n in C3
//   all            everything above
nlohmann::ordered_json run_repro(const std::string& suite);

}  // namespace flagcalc
