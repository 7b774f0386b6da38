// C API shim: translates between the opaque handle surface of flagcalc.h and
// the C++ core.  All exceptions stop here and become status codes.

#include "flagcalc.h"

#include <cstring>
#include <string>

#include "cache.h"
#include "context.h"
#include "demazure.h"
#include "descent.h"
#include "json.hpp"
#include "repro.h"
#include "scan.h"

using namespace flagcalc;
using nlohmann::ordered_json;

struct fc_context {
  Context ctx;
};

namespace {

thread_local std::string g_last_error;

fc_status status_of(errc c) {
  switch (c) {
    case errc::invalid_argument: return FC_ERR_INVALID_ARGUMENT;
    case errc::bad_diagonal: return FC_ERR_BAD_DIAGONAL;
    case errc::bad_pair: return FC_ERR_BAD_PAIR;
    case errc::asymmetric_zero: return FC_ERR_ASYMMETRIC_ZERO;
    case errc::not_symmetrizable: return FC_ERR_NOT_SYMMETRIZABLE;
    case errc::unclassifiable_component: return FC_ERR_UNCLASSIFIABLE;
    case errc::unsupported_type: return FC_ERR_UNSUPPORTED_TYPE;
    case errc::index_out_of_range: return FC_ERR_INDEX_RANGE;
    case errc::non_integral: return FC_ERR_NON_INTEGRAL;
    case errc::non_terminating: return FC_ERR_NON_TERMINATING;
    case errc::not_reduced: return FC_ERR_NOT_REDUCED;
    case errc::not_found: return FC_ERR_NOT_FOUND;
    case errc::capacity_exceeded: return FC_ERR_CAPACITY;
    case errc::budget_exceeded: return FC_ERR_BUDGET;
    case errc::inconsistent_derivation: return FC_ERR_INCONSISTENT;
    case errc::checkpoint_corrupt: return FC_ERR_CHECKPOINT_CORRUPT;
    case errc::io_error: return FC_ERR_IO;
    case errc::parse_error: return FC_ERR_PARSE;
    case errc::internal_error: return FC_ERR_INTERNAL;
  }
  return FC_ERR_INTERNAL;
}

template <typename Fn>
fc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return FC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fc_status require(bool cond, const char* msg) {
  if (cond) return FC_OK;
  g_last_error = msg;
  return FC_ERR_INVALID_ARGUMENT;
}

std::vector<int> to_word(const CartanMatrix& c, const int* word, int len) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) {
    int letter = word[i] - 1;
    check_index(c, letter);
    out.push_back(letter);
  }
  return out;
}

Degrees to_degrees(const CartanMatrix& c, const long long* degrees, int n) {
  if (n != c.rank) fail(errc::invalid_argument, "degree vector length must equal the rank");
  return Degrees(degrees, degrees + n);
}

ordered_json big_json(const mpz_class& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

ordered_json word_json(const std::vector<int>& word) {
  ordered_json out = ordered_json::array();
  for (int letter : word) out.push_back(letter + 1);
  return out;
}

ordered_json cartan_to_json(const CartanMatrix& c) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < c.rank; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < c.rank; ++j) row.push_back(c.at(i, j));
    rows.push_back(row);
  }
  ordered_json out;
  out["rank"] = c.rank;
  out["matrix"] = rows;
  return out;
}

ordered_json profile_to_json(const CohomologyProfile& p) {
  ordered_json prof = ordered_json::object();
  for (const auto& [deg, dim] : p.h) prof[std::to_string(deg)] = big_json(dim);
  return prof;
}

}  // namespace

extern "C" {

const char* fc_status_name(fc_status s) {
  switch (s) {
    case FC_OK: return "ok";
    case FC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FC_ERR_BAD_DIAGONAL: return "bad_diagonal";
    case FC_ERR_BAD_PAIR: return "bad_pair";
    case FC_ERR_ASYMMETRIC_ZERO: return "asymmetric_zero";
    case FC_ERR_NOT_SYMMETRIZABLE: return "not_symmetrizable";
    case FC_ERR_UNCLASSIFIABLE: return "unclassifiable_component";
    case FC_ERR_UNSUPPORTED_TYPE: return "unsupported_type";
    case FC_ERR_INDEX_RANGE: return "index_out_of_range";
    case FC_ERR_NON_INTEGRAL: return "non_integral";
    case FC_ERR_NON_TERMINATING: return "non_terminating";
    case FC_ERR_NOT_REDUCED: return "not_reduced";
    case FC_ERR_NOT_FOUND: return "not_found";
    case FC_ERR_CAPACITY: return "capacity_exceeded";
    case FC_ERR_BUDGET: return "budget_exceeded";
    case FC_ERR_INCONSISTENT: return "inconsistent_derivation";
    case FC_ERR_CHECKPOINT_CORRUPT: return "checkpoint_corrupt";
    case FC_ERR_IO: return "io_error";
    case FC_ERR_PARSE: return "parse_error";
    case FC_ERR_INTERNAL: return "internal_error";
    case FC_INTERRUPTED: return "interrupted";
  }
  return "unknown";
}

const char* fc_last_error(void) { return g_last_error.c_str(); }

void fc_string_free(char* s) { std::free(s); }

fc_status fc_context_new_builtin(const char* type, int rank, fc_context** out) {
  if (fc_status s = require(type && out, "type and out must be non-null")) return s;
  return guarded([&]() {
    std::string label = type;
    if (label.empty()) fail(errc::unsupported_type, "empty type label");
    char t = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    int r = rank;
    if (label.size() > 1) {
      try {
        r = std::stoi(label.substr(1));
      } catch (const std::exception&) {
        fail(errc::unsupported_type, "cannot parse rank from '" + label + "'");
      }
    }
    if (r <= 0) fail(errc::unsupported_type, "rank must be given, either in the label or as rank");
    *out = new fc_context{Context::from_builtin(t, r)};
    return FC_OK;
  });
}

fc_status fc_context_new_from_json(const char* json_text, fc_context** out) {
  if (fc_status s = require(json_text && out, "json_text and out must be non-null")) return s;
  return guarded([&]() {
    ordered_json doc = ordered_json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.contains("matrix") || !doc["matrix"].is_array())
      fail(errc::parse_error, "expected {\"rank\": n, \"matrix\": [[...]]}");
    std::vector<std::vector<long long>> rows;
    for (const auto& row : doc["matrix"]) {
      std::vector<long long> r;
      for (const auto& v : row) {
        if (!v.is_number_integer()) fail(errc::parse_error, "matrix entries must be integers");
        r.push_back(v.get<long long>());
      }
      rows.push_back(std::move(r));
    }
    if (doc.contains("rank") && doc["rank"].get<long long>() != static_cast<long long>(rows.size()))
      fail(errc::parse_error, "rank field disagrees with the matrix size");
    *out = new fc_context{Context(validate_cartan(rows))};
    return FC_OK;
  });
}

void fc_context_free(fc_context* ctx) { delete ctx; }

fc_status fc_cartan_json(const fc_context* ctx, char** out) {
  if (fc_status s = require(ctx && out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    *out = dup_string(cartan_to_json(ctx->ctx.cartan()).dump());
    return FC_OK;
  });
}

fc_status fc_classify_json(const fc_context* ctx, char** out) {
  if (fc_status s = require(ctx && out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    DynkinDiagram d = classify(ctx->ctx.cartan());
    ordered_json comps = ordered_json::array();
    for (const DynkinComponent& comp : d.components) {
      ordered_json c;
      c["type"] = std::string(1, comp.type);
      c["rank"] = comp.rank;
      ordered_json nodes = ordered_json::array();
      for (int v : comp.nodes) nodes.push_back(v + 1);
      c["nodes"] = nodes;
      comps.push_back(c);
    }
    ordered_json doc;
    doc["components"] = comps;
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_symmetrizer_json(const fc_context* ctx, char** out) {
  if (fc_status s = require(ctx && out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    ordered_json doc;
    doc["d"] = symmetrize(ctx->ctx.cartan());
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_roots_json(const fc_context* ctx, int include_list, char** out) {
  if (fc_status s = require(ctx && out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    const RootSystem& rs = ctx->ctx.roots();
    ordered_json doc;
    doc["roots"] = rs.roots.size();
    doc["positive"] = rs.positive_count;
    if (include_list) {
      ordered_json list = ordered_json::array();
      for (int k = 0; k < rs.positive_count; ++k) {
        ordered_json r;
        r["coeffs"] = rs.roots[k].coeffs;
        r["degrees"] = rs.roots[k].degrees;
        list.push_back(r);
      }
      doc["positives"] = list;
    }
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_weyl_order(const fc_context* ctx, char** decimal_out) {
  if (fc_status s = require(ctx && decimal_out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    if (auto cached = cache_load(ctx->ctx.cartan())) {
      *decimal_out = dup_string(cached->order);
      return FC_OK;
    }
    const WeylTable& t = ctx->ctx.weyl();
    WeylCacheEntry entry;
    entry.order = std::to_string(t.size());
    entry.longest_length = t.length[t.w0];
    entry.w0_word_count = ctx->ctx.word_counts()[t.w0].get_str();
    cache_store(ctx->ctx.cartan(), entry);
    *decimal_out = dup_string(entry.order);
    return FC_OK;
  });
}

fc_status fc_longest_json(const fc_context* ctx, char** out) {
  if (fc_status s = require(ctx && out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    WeylElement w0 = longest_element(ctx->ctx.roots());
    ordered_json doc;
    doc["length"] = w0.length;
    doc["word"] = word_json(w0.witness);
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_is_reduced(const fc_context* ctx, const int* word, int len, int* out_flag) {
  if (fc_status s = require(ctx && out_flag && (word || len == 0), "bad arguments")) return s;
  return guarded([&]() {
    std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
    *out_flag = is_reduced(ctx->ctx.roots(), w) ? 1 : 0;
    return FC_OK;
  });
}

fc_status fc_reduced_count(const fc_context* ctx, const int* word, int len, char** decimal_out) {
  if (fc_status s = require(ctx && decimal_out, "ctx and out must be non-null")) return s;
  return guarded([&]() {
    if (len < 0) {
      // longest element: served from the cache when possible
      if (auto cached = cache_load(ctx->ctx.cartan())) {
        *decimal_out = dup_string(cached->w0_word_count);
        return FC_OK;
      }
      const WeylTable& t = ctx->ctx.weyl();
      WeylCacheEntry entry;
      entry.order = std::to_string(t.size());
      entry.longest_length = t.length[t.w0];
      entry.w0_word_count = ctx->ctx.word_counts()[t.w0].get_str();
      cache_store(ctx->ctx.cartan(), entry);
      *decimal_out = dup_string(entry.w0_word_count);
      return FC_OK;
    }
    std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
    const WeylTable& t = ctx->ctx.weyl();
    int idx = t.index_of(word_matrix(ctx->ctx.cartan(), w));
    if (idx < 0) fail(errc::internal_error, "word product left the group");
    *decimal_out = dup_string(ctx->ctx.word_counts()[idx].get_str());
    return FC_OK;
  });
}

fc_status fc_reduced_words(const fc_context* ctx, const int* word, int len, fc_word_visitor visit,
                           void* user) {
  if (fc_status s = require(ctx && visit, "ctx and visit must be non-null")) return s;
  return guarded([&]() {
    const WeylTable& t = ctx->ctx.weyl();
    int target;
    if (len < 0) {
      target = t.w0;
    } else {
      std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
      target = t.index_of(word_matrix(ctx->ctx.cartan(), w));
      if (target < 0) fail(errc::internal_error, "word product left the group");
    }
    std::vector<int> shifted;
    enumerate_reduced_words(t, target, [&](const std::vector<int>& w) {
      shifted.assign(w.begin(), w.end());
      for (int& letter : shifted) ++letter;
      return visit(shifted.data(), static_cast<int>(shifted.size()), user) == 0;
    });
    return FC_OK;
  });
}

fc_status fc_cohomology_json(const fc_context* ctx, const long long* degrees, int n, char** out) {
  if (fc_status s = require(ctx && out && degrees, "bad arguments")) return s;
  return guarded([&]() {
    const RootSystem& rs = ctx->ctx.roots();
    Degrees L = to_degrees(ctx->ctx.cartan(), degrees, n);
    CohomologyProfile p = bwb_cohomology(rs, L);
    ordered_json doc;
    doc["profile"] = profile_to_json(p);
    doc["euler"] = big_json(euler_char_x(rs, L));
    if (p.singular)
      doc["length"] = nullptr;
    else
      doc["length"] = p.length;
    doc["singular"] = p.singular;
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_euler_bs(const fc_context* ctx, const int* word, int len, const long long* degrees,
                      int n, char** decimal_out) {
  if (fc_status s = require(ctx && decimal_out && degrees && (word || len == 0), "bad arguments"))
    return s;
  return guarded([&]() {
    std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
    Degrees L = to_degrees(ctx->ctx.cartan(), degrees, n);
    *decimal_out = dup_string(euler_char_bs(ctx->ctx.cartan(), w, L).get_str());
    return FC_OK;
  });
}

fc_status fc_index_of_contraction(const fc_context* ctx, int node, int degree, int* k_out) {
  if (fc_status s = require(ctx && k_out, "ctx and k_out must be non-null")) return s;
  return guarded([&]() {
    *k_out = index_of_contraction(ctx->ctx.roots(), node - 1, degree);
    return FC_OK;
  });
}

fc_status fc_bs_model_json(const fc_context* ctx, const int* word, int len, char** out) {
  if (fc_status s = require(ctx && out && (word || len == 0), "bad arguments")) return s;
  return guarded([&]() {
    std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
    BSModel m = build_model(ctx->ctx.cartan(), w);
    ordered_json doc;
    doc["word"] = word_json(w);
    ordered_json gammas = ordered_json::array();
    for (int i = 0; i < m.length(); ++i) {
      ordered_json g;
      g["beta"] = i + 1;
      if (m.next_occ[i] >= 0)
        g["minus_beta"] = m.next_occ[i] + 1;
      else
        g["minus_beta"] = nullptr;
      gammas.push_back(g);
    }
    doc["gamma"] = gammas;
    ordered_json nt = ordered_json::array();
    for (const BSDivisor& v : nef_cone_generators(m)) nt.push_back(v);
    doc["nef_generators"] = nt;
    ordered_json face = ordered_json::array();
    for (int i : stein_face(m)) face.push_back(i + 1);
    doc["stein_face"] = face;
    doc["face_codimension"] = m.length() - static_cast<int>(stein_face(m).size());
    doc["image_dimension"] = image_dimension(ctx->ctx.roots(), w);
    doc["reduced"] = is_reduced(ctx->ctx.roots(), w);
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_certify_json(const fc_context* ctx, const int* word, int len, long long node_budget,
                          char** out) {
  if (fc_status s = require(ctx && out && (word || len == 0), "bad arguments")) return s;
  return guarded([&]() {
    std::vector<int> w = to_word(ctx->ctx.cartan(), word, len);
    EngineOptions opt;
    if (node_budget > 0) opt.node_budget = node_budget;
    CertifyResult res = certify_word(ctx->ctx, opt, w);
    ordered_json doc;
    if (res.certified) {
      doc["status"] = "certified";
    } else {
      doc["status"] = "fails_at";
      doc["prefix"] = res.fails_at;
      doc["budget_exceeded"] = res.budget_hit;
    }
    *out = dup_string(doc.dump());
    return FC_OK;
  });
}

fc_status fc_scan_json(const fc_context* ctx, const char* options_json,
                       const volatile int* stop_flag, char** report_out) {
  if (fc_status s = require(ctx && report_out, "ctx and report_out must be non-null")) return s;
  bool interrupted = false;
  fc_status st = guarded([&]() {
    ScanOptions opt;
    if (options_json && *options_json) {
      ordered_json doc = ordered_json::parse(options_json, nullptr, false);
      if (doc.is_discarded()) fail(errc::parse_error, "scan options are not valid JSON");
      std::string mode = doc.value("mode", "full");
      if (mode == "full")
        opt.mode = ScanOptions::Mode::full;
      else if (mode == "sample")
        opt.mode = ScanOptions::Mode::sample;
      else if (mode == "range")
        opt.mode = ScanOptions::Mode::range;
      else
        fail(errc::invalid_argument, "mode must be full, sample or range");
      opt.sample_k = doc.value("k", 0ULL);
      opt.seed = doc.value("seed", 0ULL);
      opt.range_lo = doc.value("lo", 1ULL);
      opt.range_hi = doc.value("hi", 0ULL);
      opt.checkpoint_path = doc.value("checkpoint", std::string());
      opt.workers = doc.value("workers", 1);
      opt.node_budget = doc.value("budget", opt.node_budget);
      opt.flush_every = doc.value("flush_every", opt.flush_every);
      opt.extra_vanishing = doc.value("extra_vanishing", false);
    }
    std::function<bool()> stop;
    if (stop_flag) stop = [stop_flag]() { return *stop_flag != 0; };
    ScanReport rep = run_scan(ctx->ctx, opt, stop);
    ordered_json doc;
    doc["total"] = rep.total;
    doc["selected"] = rep.selected;
    doc["processed"] = rep.processed;
    doc["certified"] = rep.certified;
    doc["failed"] = rep.failed;
    doc["budget_exceeded"] = rep.budget_exceeded;
    doc["completed"] = rep.completed;
    doc["resumed"] = rep.resumed;
    *report_out = dup_string(doc.dump());
    interrupted = !rep.completed;
    return FC_OK;
  });
  if (st == FC_OK && interrupted) return FC_INTERRUPTED;
  return st;
}

fc_status fc_repro_json(const char* suite, char** out) {
  if (fc_status s = require(suite && out, "suite and out must be non-null")) return s;
  return guarded([&]() {
    *out = dup_string(run_repro(suite).dump());
    return FC_OK;
  });
}

}  // extern "C"
