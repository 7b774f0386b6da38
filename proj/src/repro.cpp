#include "repro.h"

#include "demazure.h"
#include "descent.h"
#include "scan.h"

namespace flagcalc {

namespace {

using nlohmann::ordered_json;

void add_check(ordered_json& checks, const std::string& name, bool pass,
               const std::string& detail) {
  ordered_json c;
  c["name"] = name;
  c["pass"] = pass;
  c["detail"] = detail;
  checks.push_back(c);
}

void word_counts(ordered_json& checks) {
  struct Case {
    char type;
    int rank;
    const char* expect;
  };
  const Case cases[] = {{'A', 2, "2"}, {'B', 2, "2"}, {'A', 3, "16"}, {'F', 4, "2144892"}};
  for (const Case& cs : cases) {
    Context ctx = Context::from_builtin(cs.type, cs.rank);
    const WeylTable& t = ctx.weyl();
    std::string got = ctx.word_counts()[t.w0].get_str();
    add_check(checks, std::string("reduced-count ") + cs.type + std::to_string(cs.rank),
              got == cs.expect, "got " + got + ", expected " + cs.expect);
  }
}

void f4_index(ordered_json& checks) {
  Context ctx = Context::from_builtin('F', 4);
  const RootSystem& rs = ctx.roots();
  int k = index_of_contraction(rs, 0, 15);
  add_check(checks, "F4 h^15 index", k == 8, "smallest k is " + std::to_string(k) + ", expected 8");
  bool silent_below = true;
  std::string detail;
  for (int kk = 1; kk < 8; ++kk) {
    Degrees L(4, 0);
    L[0] = -kk;
    CohomologyProfile p = bwb_cohomology(rs, L);
    auto it = p.h.find(15);
    if (it != p.h.end() && it->second != 0) {
      silent_below = false;
      detail = "h^15 nonzero already at k=" + std::to_string(kk);
    }
  }
  add_check(checks, "F4 h^15 vanishes below the index", silent_below,
            silent_below ? "h^15(X,-k Lambda_1)=0 for k=1..7" : detail);
}

void bc_uniqueness(ordered_json& checks) {
  struct Case {
    char type;
    int rank;
    bool descending;  // d_n vs u_n
  };
  const Case cases[] = {{'B', 2, false}, {'B', 3, false}, {'C', 3, true}};
  for (const Case& cs : cases) {
    Context ctx = Context::from_builtin(cs.type, cs.rank);
    std::vector<int> word;
    for (int rep = 0; rep < cs.rank; ++rep)
      for (int i = 0; i < cs.rank; ++i) word.push_back(cs.descending ? cs.rank - 1 - i : i);
    CertifyResult res = certify_word(ctx, EngineOptions{}, word);
    std::string name = std::string(1, cs.type) + std::to_string(cs.rank) + " " +
                       (cs.descending ? "(d_n)^n" : "(u_n)^n");
    add_check(checks, "certify " + name, res.certified,
              res.certified ? "certified" : "fails at prefix " + std::to_string(res.fails_at));
  }
}

}  // namespace

ordered_json run_repro(const std::string& suite) {
  ordered_json checks = ordered_json::array();
  bool known = false;
  if (suite == "word-counts" || suite == "all") {
    word_counts(checks);
    known = true;
  }
  if (suite == "f4-index" || suite == "all") {
    f4_index(checks);
    known = true;
  }
  if (suite == "bc-uniqueness" || suite == "all") {
    bc_uniqueness(checks);
    known = true;
  }
  if (!known)
    fail(errc::not_found, "unknown repro suite '" + suite +
                              "' (expected word-counts, f4-index, bc-uniqueness or all)");
  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c["pass"].get<bool>();
  ordered_json out;
  out["suite"] = suite;
  out["checks"] = checks;
  out["pass"] = all_pass;
  return out;
}

}  // namespace flagcalc
