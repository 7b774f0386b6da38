// Exercises the shared-library surface exactly as an external consumer would:
// through flagcalc.h only.

#include <stdlib.h>

#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "flagcalc.h"

#define CHECK(cond)                                                      \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                          \
    }                                                                    \
  } while (0)

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fc_string_free(s);
  return out;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main() {
  // construction and classification
  fc_context* f4 = nullptr;
  CHECK(fc_context_new_builtin("F4", 0, &f4) == FC_OK);
  char* out = nullptr;
  CHECK(fc_classify_json(f4, &out) == FC_OK);
  std::string cls = take(out);
  CHECK(contains(cls, "\"type\":\"F\""));
  CHECK(contains(cls, "\"rank\":4"));
  CHECK(contains(cls, "\"nodes\":[1,2,3,4]"));

  CHECK(fc_roots_json(f4, 0, &out) == FC_OK);
  std::string roots = take(out);
  CHECK(contains(roots, "\"roots\":48"));
  CHECK(contains(roots, "\"positive\":24"));

  CHECK(fc_weyl_order(f4, &out) == FC_OK);
  CHECK(take(out) == "1152");

  CHECK(fc_reduced_count(f4, nullptr, -1, &out) == FC_OK);
  CHECK(take(out) == "2144892");

  CHECK(fc_longest_json(f4, &out) == FC_OK);
  CHECK(contains(take(out), "\"length\":24"));

  // JSON round trip
  CHECK(fc_cartan_json(f4, &out) == FC_OK);
  std::string cartan = take(out);
  fc_context* copy = nullptr;
  CHECK(fc_context_new_from_json(cartan.c_str(), &copy) == FC_OK);
  CHECK(fc_cartan_json(copy, &out) == FC_OK);
  CHECK(take(out) == cartan);
  fc_context_free(copy);

  // cohomology on the projective line
  fc_context* a1 = nullptr;
  CHECK(fc_context_new_builtin("A", 1, &a1) == FC_OK);
  long long d = -5;
  CHECK(fc_cohomology_json(a1, &d, 1, &out) == FC_OK);
  std::string prof = take(out);
  CHECK(contains(prof, "\"profile\":{\"1\":4}"));
  CHECK(contains(prof, "\"euler\":-4"));
  CHECK(contains(prof, "\"singular\":false"));
  d = -1;
  CHECK(fc_cohomology_json(a1, &d, 1, &out) == FC_OK);
  prof = take(out);
  CHECK(contains(prof, "\"profile\":{}"));
  CHECK(contains(prof, "\"singular\":true"));
  fc_context_free(a1);

  // reduced word streaming with clean abort
  fc_context* a2 = nullptr;
  CHECK(fc_context_new_builtin("A2", 0, &a2) == FC_OK);
  struct Collect {
    std::vector<std::vector<int>> words;
    int limit;
  } collect{{}, 1};
  fc_word_visitor visit = [](const int* letters, int len, void* user) -> int {
    Collect* c = static_cast<Collect*>(user);
    c->words.emplace_back(letters, letters + len);
    return static_cast<int>(c->words.size()) >= c->limit ? 1 : 0;
  };
  CHECK(fc_reduced_words(a2, nullptr, -1, visit, &collect) == FC_OK);
  CHECK(collect.words.size() == 1);
  CHECK(collect.words[0] == std::vector<int>({1, 2, 1}));

  int word121[] = {1, 2, 1};
  int flag = -1;
  CHECK(fc_is_reduced(a2, word121, 3, &flag) == FC_OK);
  CHECK(flag == 1);
  CHECK(fc_reduced_count(a2, word121, 3, &out) == FC_OK);
  CHECK(take(out) == "2");

  // tower model and certification
  CHECK(fc_bs_model_json(a2, word121, 3, &out) == FC_OK);
  std::string model = take(out);
  CHECK(contains(model, "\"stein_face\":[1]"));
  CHECK(contains(model, "\"image_dimension\":3"));
  CHECK(fc_certify_json(a2, word121, 3, 0, &out) == FC_OK);
  CHECK(contains(take(out), "\"status\":\"certified\""));

  long long deg2[] = {0, 0};
  CHECK(fc_euler_bs(a2, word121, 3, deg2, 2, &out) == FC_OK);
  CHECK(take(out) == "1");

  // contraction index on the worked examples
  int k = 0;
  CHECK(fc_index_of_contraction(f4, 1, 15, &k) == FC_OK);
  CHECK(k == 8);

  // error mapping
  fc_context* bad = nullptr;
  CHECK(fc_context_new_from_json("{\"rank\":2,\"matrix\":[[2,-2],[-2,2]]}", &bad) ==
        FC_ERR_BAD_PAIR);
  CHECK(std::strlen(fc_last_error()) > 0);
  CHECK(fc_context_new_builtin("Q7", 0, &bad) == FC_ERR_UNSUPPORTED_TYPE);
  int word_bad[] = {9};
  CHECK(fc_is_reduced(a2, word_bad, 1, &flag) == FC_ERR_INDEX_RANGE);
  int word_nr[] = {1, 1};
  CHECK(fc_certify_json(a2, word_nr, 2, 0, &out) == FC_ERR_NOT_REDUCED);

  // a scan over a small group through the C surface
  fc_context* a3 = nullptr;
  CHECK(fc_context_new_builtin("A3", 0, &a3) == FC_OK);
  CHECK(fc_scan_json(a3, "{\"mode\":\"full\"}", nullptr, &out) == FC_OK);
  std::string report = take(out);
  CHECK(contains(report, "\"total\":16"));
  CHECK(contains(report, "\"certified\":16"));
  CHECK(contains(report, "\"completed\":true"));

  // repro bundle
  CHECK(fc_repro_json("word-counts", &out) == FC_OK);
  CHECK(contains(take(out), "\"pass\":true"));

  // interruption semantics: a pre-set stop flag cuts before any accounting,
  // and the follow-up run resumes from the checkpoint to the full tallies
  {
    char tmpl[] = "/tmp/flagcalc-capi-XXXXXX";
    CHECK(mkdtemp(tmpl) != nullptr);
    std::string opts = std::string("{\"mode\":\"sample\",\"k\":64,\"checkpoint\":\"") + tmpl +
                       "/cp.jsonl\",\"flush_every\":8}";
    volatile int stop = 1;
    CHECK(fc_scan_json(f4, opts.c_str(), &stop, &out) == FC_INTERRUPTED);
    std::string partial = take(out);
    CHECK(contains(partial, "\"completed\":false"));
    CHECK(fc_scan_json(f4, opts.c_str(), nullptr, &out) == FC_OK);
    std::string resumed = take(out);
    CHECK(contains(resumed, "\"processed\":64"));
    CHECK(contains(resumed, "\"certified\":0"));
    CHECK(contains(resumed, "\"completed\":true"));
    // a mismatched configuration refuses to resume
    std::string other = std::string("{\"mode\":\"sample\",\"k\":65,\"checkpoint\":\"") + tmpl +
                        "/cp.jsonl\"}";
    CHECK(fc_scan_json(f4, other.c_str(), nullptr, &out) == FC_ERR_CHECKPOINT_CORRUPT);
  }

  fc_context_free(a3);
  fc_context_free(a2);
  fc_context_free(f4);
  std::puts("capi tests passed");
  return 0;
}
