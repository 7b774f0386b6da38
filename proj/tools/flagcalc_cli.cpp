// flagcalc command line: thin JSON-oriented shell over the C API.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 resumable
// interruption of a scan.

#include <algorithm>
#include <cctype>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flagcalc.h"
#include "json.hpp"

namespace {

volatile int g_stop = 0;

void on_signal(int) { g_stop = 1; }

struct CommonArgs {
  std::string type;
  int rank = 0;
  std::string cartan_file;
};

int usage_error(const std::string& msg) {
  std::cerr << "flagcalc: " << msg << "\n";
  return 2;
}

int domain_error(fc_status st) {
  std::cout << "{\"error\":\"" << fc_status_name(st) << "\",\"detail\":\"";
  for (const char* p = fc_last_error(); *p; ++p) {
    if (*p == '"' || *p == '\\') std::cout << '\\';
    std::cout << *p;
  }
  std::cout << "\"}\n";
  return 1;
}

// Builds the context from --type/--rank or --cartan; exactly one source.
int make_context(const CommonArgs& args, fc_context** ctx) {
  if (args.type.empty() == args.cartan_file.empty()) {
    return usage_error("give exactly one Cartan source: --type (with optional --rank) or --cartan");
  }
  fc_status st;
  if (!args.type.empty()) {
    st = fc_context_new_builtin(args.type.c_str(), args.rank, ctx);
  } else {
    std::ifstream in(args.cartan_file);
    if (!in) return usage_error("cannot read " + args.cartan_file);
    std::stringstream buf;
    buf << in.rdbuf();
    st = fc_context_new_from_json(buf.str().c_str(), ctx);
  }
  if (st != FC_OK) return domain_error(st);
  return 0;
}

std::vector<int> parse_word(const std::string& csv, bool& ok) {
  std::vector<int> out;
  ok = true;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      ok = false;
      return out;
    }
  }
  return out;
}

std::vector<long long> parse_degrees(const std::string& csv, bool& ok) {
  std::vector<long long> out;
  ok = true;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      ok = false;
      return out;
    }
  }
  return out;
}

int print_result(fc_status st, char* json) {
  if (st != FC_OK && st != FC_INTERRUPTED) return domain_error(st);
  std::cout << json << "\n";
  fc_string_free(json);
  return st == FC_INTERRUPTED ? 3 : 0;
}

// CLI11 rejects option values that begin with '-'; fold them into --opt=value.
// The result is reversed, which is what App::parse(std::vector) expects.
std::vector<std::string> fold_negative_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const std::vector<std::string> listish = {"--degrees", "--word"};
  std::vector<std::string> out;
  for (size_t i = 0; i < args.size(); ++i) {
    bool folded = false;
    for (const auto& name : listish) {
      if (args[i] == name && i + 1 < args.size() && !args[i + 1].empty() &&
          args[i + 1][0] == '-' && args[i + 1].size() > 1 &&
          (std::isdigit(static_cast<unsigned char>(args[i + 1][1])))) {
        out.push_back(name + "=" + args[i + 1]);
        ++i;
        folded = true;
        break;
      }
    }
    if (!folded) out.push_back(args[i]);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flag-manifold calculator"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string word_csv, degrees_csv;
  bool count_only = false, use_longest = false;
  long long limit = -1, budget = 0;
  std::string scan_mode = "full", checkpoint;
  unsigned long long sample_k = 0, seed = 0, range_lo = 1, range_hi = 0, flush_every = 10000;
  int workers = 1;
  bool extra_vanishing = false;
  std::string suite;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--type", common.type, "builtin type label, e.g. F4 or A");
    cmd->add_option("--rank", common.rank, "rank when --type is a bare letter");
    cmd->add_option("--cartan", common.cartan_file, "JSON file with {\"rank\",\"matrix\"}");
  };

  CLI::App* roots = app.add_subcommand("roots", "root system of the Cartan data");
  add_common(roots);
  roots->add_flag("--count", count_only, "emit counts only");

  CLI::App* weyl_order = app.add_subcommand("weyl-order", "order of the Weyl group");
  add_common(weyl_order);

  CLI::App* longest = app.add_subcommand("longest", "longest element and one reduced word");
  add_common(longest);

  CLI::App* reduced_count =
      app.add_subcommand("reduced-count", "number of reduced words of an element");
  add_common(reduced_count);
  reduced_count->add_flag("--longest", use_longest, "target the longest element");
  reduced_count->add_option("--word", word_csv, "target element as a word (1-based, CSV)");

  CLI::App* reduced_list = app.add_subcommand("reduced-list", "list reduced words in lex order");
  add_common(reduced_list);
  reduced_list->add_flag("--longest", use_longest, "target the longest element");
  reduced_list->add_option("--word", word_csv, "target element as a word (1-based, CSV)");
  reduced_list->add_option("--limit", limit, "stop after this many words");

  CLI::App* cohomology = app.add_subcommand("cohomology", "line bundle cohomology profile");
  add_common(cohomology);
  cohomology->add_option("--degrees", degrees_csv, "degree vector, CSV")->required();

  CLI::App* euler_bs = app.add_subcommand("euler-bs", "Euler characteristic on a tower");
  add_common(euler_bs);
  euler_bs->add_option("--word", word_csv, "tower word (1-based, CSV)")->required();
  euler_bs->add_option("--degrees", degrees_csv, "degree vector, CSV")->required();

  CLI::App* bs_model = app.add_subcommand("bs-model", "intersection model of a tower");
  add_common(bs_model);
  bs_model->add_option("--word", word_csv, "tower word (1-based, CSV)")->required();

  CLI::App* certify = app.add_subcommand("certify", "uniqueness certification of a reduced word");
  add_common(certify);
  certify->add_option("--word", word_csv, "reduced word (1-based, CSV)")->required();
  certify->add_option("--budget", budget, "derivation node budget per step");

  CLI::App* f4_scan = app.add_subcommand("f4-scan", "certification scan over reduced words of w0");
  add_common(f4_scan);
  f4_scan->add_option("--mode", scan_mode, "full | sample | range")->default_val("full");
  f4_scan->add_option("--k", sample_k, "sample size");
  f4_scan->add_option("--seed", seed, "0: evenly spread sample; else seeded draw");
  f4_scan->add_option("--from", range_lo, "first lex index (range mode, 1-based)");
  f4_scan->add_option("--to", range_hi, "last lex index (range mode, inclusive)");
  f4_scan->add_option("--checkpoint", checkpoint, "JSON-lines checkpoint file");
  f4_scan->add_option("--workers", workers, "worker threads");
  f4_scan->add_option("--budget", budget, "derivation node budget per step");
  f4_scan->add_option("--flush-every", flush_every, "words between checkpoint flushes");
  f4_scan->add_flag("--extra-vanishing", extra_vanishing,
                    "enable the stronger optional vanishing rule");

  CLI::App* repro = app.add_subcommand("repro", "named reproduction bundle");
  repro->add_option("suite", suite, "word-counts | f4-index | bc-uniqueness | all")->required();

  try {
    app.parse(fold_negative_values(argc, argv));
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  if (repro->parsed()) {
    char* out = nullptr;
    fc_status st = fc_repro_json(suite.c_str(), &out);
    if (st != FC_OK) return domain_error(st);
    // pass/fail table on stdout; exit 0 iff everything passed
    nlohmann::json doc = nlohmann::json::parse(out);
    fc_string_free(out);
    for (const auto& check : doc["checks"]) {
      std::printf("%-4s %-36s %s\n", check["pass"].get<bool>() ? "PASS" : "FAIL",
                  check["name"].get<std::string>().c_str(),
                  check["detail"].get<std::string>().c_str());
    }
    bool all_pass = doc["pass"].get<bool>();
    std::printf("%s\n", all_pass ? "all checks passed" : "some checks FAILED");
    return all_pass ? 0 : 1;
  }

  if (f4_scan->parsed() && common.type.empty() && common.cartan_file.empty()) common.type = "F4";

  fc_context* ctx = nullptr;
  if (int rc = make_context(common, &ctx)) return rc;
  struct Free {
    fc_context* c;
    ~Free() { fc_context_free(c); }
  } free_ctx{ctx};

  bool ok = true;
  std::vector<int> word = parse_word(word_csv, ok);
  if (!ok) return usage_error("cannot parse --word '" + word_csv + "'");
  std::vector<long long> degrees = parse_degrees(degrees_csv, ok);
  if (!ok) return usage_error("cannot parse --degrees '" + degrees_csv + "'");

  char* out = nullptr;
  if (roots->parsed()) {
    fc_status st = fc_roots_json(ctx, count_only ? 0 : 1, &out);
    return print_result(st, out);
  }
  if (weyl_order->parsed()) {
    fc_status st = fc_weyl_order(ctx, &out);
    if (st != FC_OK) return domain_error(st);
    std::cout << "{\"order\":\"" << out << "\"}\n";
    fc_string_free(out);
    return 0;
  }
  if (longest->parsed()) {
    fc_status st = fc_longest_json(ctx, &out);
    return print_result(st, out);
  }
  if (reduced_count->parsed()) {
    if (use_longest == !word.empty())
      return usage_error("give exactly one of --longest or --word");
    fc_status st = fc_reduced_count(ctx, word.data(), use_longest ? -1 : (int)word.size(), &out);
    if (st != FC_OK) return domain_error(st);
    std::cout << "{\"count\":\"" << out << "\"}\n";
    fc_string_free(out);
    return 0;
  }
  if (reduced_list->parsed()) {
    if (use_longest == !word.empty())
      return usage_error("give exactly one of --longest or --word");
    struct State {
      long long limit, emitted = 0;
    } state{limit};
    auto visit = [](const int* letters, int len, void* user) -> int {
      State* s = static_cast<State*>(user);
      if (s->limit >= 0 && s->emitted >= s->limit) return 1;
      for (int i = 0; i < len; ++i) std::printf("%s%d", i ? "," : "", letters[i]);
      std::printf("\n");
      ++s->emitted;
      return 0;
    };
    fc_status st =
        fc_reduced_words(ctx, word.data(), use_longest ? -1 : (int)word.size(), visit, &state);
    if (st != FC_OK) return domain_error(st);
    return 0;
  }
  if (cohomology->parsed()) {
    fc_status st = fc_cohomology_json(ctx, degrees.data(), (int)degrees.size(), &out);
    return print_result(st, out);
  }
  if (euler_bs->parsed()) {
    fc_status st =
        fc_euler_bs(ctx, word.data(), (int)word.size(), degrees.data(), (int)degrees.size(), &out);
    if (st != FC_OK) return domain_error(st);
    std::cout << "{\"euler\":\"" << out << "\"}\n";
    fc_string_free(out);
    return 0;
  }
  if (bs_model->parsed()) {
    fc_status st = fc_bs_model_json(ctx, word.data(), (int)word.size(), &out);
    return print_result(st, out);
  }
  if (certify->parsed()) {
    fc_status st = fc_certify_json(ctx, word.data(), (int)word.size(), budget, &out);
    return print_result(st, out);
  }
  if (f4_scan->parsed()) {
    std::ostringstream opts;
    opts << "{\"mode\":\"" << scan_mode << "\",\"k\":" << sample_k << ",\"seed\":" << seed
         << ",\"lo\":" << range_lo << ",\"hi\":" << range_hi << ",\"checkpoint\":\"" << checkpoint
         << "\",\"workers\":" << workers << ",\"flush_every\":" << flush_every;
    if (budget > 0) opts << ",\"budget\":" << budget;
    if (extra_vanishing) opts << ",\"extra_vanishing\":true";
    opts << "}";
    fc_status st = fc_scan_json(ctx, opts.str().c_str(), &g_stop, &out);
    return print_result(st, out);
  }
  return usage_error("no subcommand");
}
