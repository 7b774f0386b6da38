#include "scan.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"

namespace flagcalc {

namespace {

using ull = unsigned long long;
using nlohmann::ordered_json;

// Per-element completion counts: comp[v] = number of reduced words of
// v^{-1} w0, i.e. the number of lex-tree leaves below a prefix with product v.
std::vector<ull> completion_counts(const Context& ctx) {
  const WeylTable& t = ctx.weyl();
  const std::vector<mpz_class>& counts = ctx.word_counts();
  std::vector<ull> comp(t.size());
  for (size_t v = 0; v < t.size(); ++v) {
    int rest = t.index_of(t.elems[t.inv[v]].compose(t.elems[t.w0]));
    if (rest < 0) fail(errc::internal_error, "completion element left the group");
    if (!counts[rest].fits_ulong_p())
      fail(errc::invalid_argument, "reduced word count does not fit 64 bits; scan unsupported");
    comp[v] = counts[rest].get_ui();
  }
  return comp;
}

// The target set of 1-based lex indices: an interval or a sorted list.
struct Selector {
  bool is_list = false;
  ull lo = 1, hi = 0;
  std::vector<ull> list;      // sorted, deduplicated
  ull resume_after = 0;       // indices <= resume_after are already accounted

  ull count_in(ull a, ull b) const {
    a = std::max(a, resume_after + 1);
    if (a > b) return 0;
    if (!is_list) {
      ull x = std::max(a, lo), y = std::min(b, hi);
      return x > y ? 0 : y - x + 1;
    }
    auto first = std::lower_bound(list.begin(), list.end(), a);
    auto last = std::upper_bound(list.begin(), list.end(), b);
    return static_cast<ull>(last - first);
  }
  bool any_in(ull a, ull b) const { return count_in(a, b) > 0; }
  ull total() const {
    if (!is_list) return lo > hi ? 0 : hi - lo + 1;
    return list.size();
  }
};

struct Tally {
  ull processed = 0, certified = 0, failed = 0, budget_exceeded = 0;
  Tally& operator+=(const Tally& o) {
    processed += o.processed;
    certified += o.certified;
    failed += o.failed;
    budget_exceeded += o.budget_exceeded;
    return *this;
  }
};

ordered_json scan_config_json(const Context& ctx, const ScanOptions& opt) {
  ordered_json matrix = ordered_json::array();
  const CartanMatrix& c = ctx.cartan();
  for (int i = 0; i < c.rank; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < c.rank; ++j) row.push_back(c.at(i, j));
    matrix.push_back(row);
  }
  ordered_json cfg;
  cfg["matrix"] = matrix;
  cfg["mode"] = opt.mode == ScanOptions::Mode::full     ? "full"
                : opt.mode == ScanOptions::Mode::sample ? "sample"
                                                        : "range";
  cfg["k"] = opt.sample_k;
  cfg["seed"] = opt.seed;
  cfg["lo"] = opt.range_lo;
  cfg["hi"] = opt.range_hi;
  cfg["budget"] = opt.node_budget;
  cfg["extra_vanishing"] = opt.extra_vanishing;
  return cfg;
}

// One independent walker over an index window [win_lo, win_hi].
class Walker {
 public:
  Walker(const Context& ctx, const ScanOptions& opt, const std::vector<ull>& comp,
         const Selector& sel, const std::function<bool()>& stop)
      : ctx_(ctx), opt_(opt), comp_(comp), sel_(sel), stop_(stop), table_(ctx.weyl()) {
    rank_ = ctx.cartan().rank;
    target_len_ = table_.length[table_.w0];
  }

  // Returns false when interrupted before the window was fully accounted.
  bool run(ull win_lo, ull win_hi, Tally& tally,
           const std::function<void(ull boundary, const Tally& delta)>& on_account) {
    win_lo_ = win_lo;
    win_hi_ = win_hi;
    tally_ = Tally{};
    on_account_ = on_account;
    prefix_.clear();
    bool done = walk(0, 0, 0);
    tally = tally_;
    return done;
  }

 private:
  bool stopped() const { return stop_ && stop_(); }

  void account(ull idx_lo, ull idx_hi, bool certified, bool budget) {
    ull n = sel_.count_in(std::max(idx_lo, win_lo_), std::min(idx_hi, win_hi_));
    if (n == 0) return;
    Tally delta;
    delta.processed = n;
    if (certified)
      delta.certified = n;
    else if (budget)
      delta.budget_exceeded = n;
    else
      delta.failed = n;
    tally_ += delta;
    if (on_account_) on_account_(std::min(idx_hi, win_hi_), delta);
  }

  // v: group element of the current prefix; depth = |prefix|; offset = number
  // of leaves lexicographically before this subtree.
  bool walk(int v, int depth, ull offset) {
    if (depth == target_len_) {
      account(offset + 1, offset + 1, /*certified=*/true, false);
      return true;
    }
    for (int i = 0; i < rank_; ++i) {
      int v2 = table_.rmult[v][i];
      if (table_.length[v2] <= table_.length[v]) continue;  // must go up
      ull cnt = comp_[v2];
      ull lo = offset + 1, hi = offset + cnt;
      ull wlo = std::max(lo, win_lo_), whi = std::min(hi, win_hi_);
      if (wlo <= whi && sel_.any_in(wlo, whi)) {
        if (stopped()) return false;
        bool repeated = false;
        for (int u = 0; u < depth; ++u) repeated = repeated || (prefix_[u] == i);
        bool pass = true, budget = false;
        if (repeated) {
          prefix_.push_back(i);
          H1Check step = h1_uniqueness(ctx_, EngineOptions{opt_.node_budget, opt_.extra_vanishing},
                                       prefix_);
          prefix_.pop_back();
          pass = step.value != DescentEngine::H1::undetermined;
          budget = step.budget_hit;
        }
        if (pass) {
          prefix_.push_back(i);
          bool done = walk(v2, depth + 1, offset);
          prefix_.pop_back();
          if (!done) return false;
        } else {
          account(lo, hi, false, budget);
        }
      }
      offset += cnt;
    }
    return true;
  }

  const Context& ctx_;
  const ScanOptions& opt_;
  const std::vector<ull>& comp_;
  const Selector& sel_;
  const std::function<bool()>& stop_;
  const WeylTable& table_;
  int rank_ = 0, target_len_ = 0;
  ull win_lo_ = 1, win_hi_ = 0;
  Tally tally_;
  std::vector<int> prefix_;
  std::function<void(ull, const Tally&)> on_account_;
};

struct Checkpoint {
  ull last_index = 0;
  Tally tally;
};

Checkpoint load_checkpoint(const std::string& path, const ordered_json& cfg) {
  Checkpoint cp;
  std::ifstream in(path);
  if (!in) return cp;
  std::string line;
  size_t lineno = 0, parsed = 0;
  bool bad_middle = false;
  std::string pending_error;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json rec = ordered_json::parse(line, nullptr, false);
    bool ok = !rec.is_discarded() && rec.contains("last_index") && rec.contains("processed") &&
              rec.contains("certified") && rec.contains("failed") &&
              rec.contains("budget_exceeded") && rec.contains("config");
    if (ok && rec["config"] != cfg) {
      fail(errc::checkpoint_corrupt,
           "checkpoint " + path + " was written by a different scan configuration");
    }
    if (!ok) {
      // tolerate only a torn final line
      if (!pending_error.empty()) bad_middle = true;
      pending_error = "line " + std::to_string(lineno);
      continue;
    }
    if (!pending_error.empty()) bad_middle = true;
    cp.last_index = rec["last_index"].get<ull>();
    cp.tally.processed = rec["processed"].get<ull>();
    cp.tally.certified = rec["certified"].get<ull>();
    cp.tally.failed = rec["failed"].get<ull>();
    cp.tally.budget_exceeded = rec["budget_exceeded"].get<ull>();
    ++parsed;
  }
  if (bad_middle || (parsed == 0 && !pending_error.empty()))
    fail(errc::checkpoint_corrupt, "checkpoint " + path + " is malformed");
  return cp;
}

}  // namespace

unsigned long long reduced_word_total(const Context& ctx) {
  const WeylTable& t = ctx.weyl();
  const mpz_class& total = ctx.word_counts()[t.w0];
  if (!total.fits_ulong_p())
    fail(errc::invalid_argument, "reduced word count does not fit 64 bits");
  return total.get_ui();
}

std::vector<int> unrank_reduced_word(const Context& ctx, unsigned long long index) {
  const WeylTable& t = ctx.weyl();
  std::vector<ull> comp = completion_counts(ctx);
  if (index < 1 || index > comp[0])
    fail(errc::index_out_of_range, "word index out of range");
  std::vector<int> word;
  int v = 0;
  int n = ctx.cartan().rank;
  ull offset = 0;
  int target_len = t.length[t.w0];
  for (int depth = 0; depth < target_len; ++depth) {
    for (int i = 0; i < n; ++i) {
      int v2 = t.rmult[v][i];
      if (t.length[v2] <= t.length[v]) continue;
      ull cnt = comp[v2];
      if (index <= offset + cnt) {
        word.push_back(i);
        v = v2;
        break;
      }
      offset += cnt;
    }
  }
  return word;
}

ScanReport run_scan(const Context& ctx, const ScanOptions& opt,
                    const std::function<bool()>& stop) {
  ScanReport report;
  report.total = reduced_word_total(ctx);
  std::vector<ull> comp = completion_counts(ctx);

  Selector sel;
  switch (opt.mode) {
    case ScanOptions::Mode::full:
      sel.lo = 1;
      sel.hi = report.total;
      break;
    case ScanOptions::Mode::range:
      if (opt.range_lo < 1 || opt.range_hi > report.total || opt.range_lo > opt.range_hi)
        fail(errc::invalid_argument, "scan range out of bounds");
      sel.lo = opt.range_lo;
      sel.hi = opt.range_hi;
      break;
    case ScanOptions::Mode::sample: {
      if (opt.sample_k == 0) fail(errc::invalid_argument, "sample size must be positive");
      sel.is_list = true;
      ull k = std::min<ull>(opt.sample_k, report.total);
      if (opt.seed == 0) {
        // evenly spread across the lex order
        for (ull j = 0; j < k; ++j) {
          ull idx = k == 1 ? 1 : 1 + (ull)((__uint128_t)j * (report.total - 1) / (k - 1));
          sel.list.push_back(idx);
        }
      } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<ull> pick(1, report.total);
        while (sel.list.size() < k) {
          ull need = k - sel.list.size();
          for (ull j = 0; j < 2 * need + 16; ++j) sel.list.push_back(pick(rng));
          std::sort(sel.list.begin(), sel.list.end());
          sel.list.erase(std::unique(sel.list.begin(), sel.list.end()), sel.list.end());
        }
        sel.list.resize(k);
      }
      std::sort(sel.list.begin(), sel.list.end());
      sel.list.erase(std::unique(sel.list.begin(), sel.list.end()), sel.list.end());
      break;
    }
  }

  ordered_json cfg = scan_config_json(ctx, opt);
  Tally done;  // carried over from a previous run
  if (!opt.checkpoint_path.empty()) {
    Checkpoint cp = load_checkpoint(opt.checkpoint_path, cfg);
    if (cp.last_index > 0) {
      report.resumed = true;
      sel.resume_after = cp.last_index;
      done = cp.tally;
    }
  }
  report.selected = sel.total();

  std::ofstream ckpt;
  std::mutex ckpt_mu;
  if (!opt.checkpoint_path.empty()) {
    ckpt.open(opt.checkpoint_path, std::ios::app);
    if (!ckpt) fail(errc::io_error, "cannot open checkpoint " + opt.checkpoint_path);
  }
  auto flush_line = [&](ull boundary, const Tally& t) {
    if (!ckpt.is_open()) return;
    ordered_json rec;
    std::vector<int> w = boundary >= 1 && boundary <= report.total
                             ? unrank_reduced_word(ctx, boundary)
                             : std::vector<int>{};
    ordered_json word = ordered_json::array();
    for (int letter : w) word.push_back(letter + 1);
    rec["last_word"] = word;
    rec["last_index"] = boundary;
    rec["processed"] = t.processed;
    rec["certified"] = t.certified;
    rec["failed"] = t.failed;
    rec["budget_exceeded"] = t.budget_exceeded;
    rec["config"] = cfg;
    ckpt << rec.dump() << "\n";
    ckpt.flush();
  };

  int workers = std::max(1, opt.workers);
  bool finished = true;

  if (workers == 1) {
    Walker walker(ctx, opt, comp, sel, stop);
    Tally tally;
    ull since_flush = 0;
    ull last_boundary = sel.resume_after;
    Tally running = done;
    finished = walker.run(1, report.total, tally, [&](ull boundary, const Tally& delta) {
      running += delta;
      last_boundary = boundary;
      since_flush += delta.processed;
      if (since_flush >= opt.flush_every) {
        flush_line(boundary, running);
        since_flush = 0;
      }
    });
    done = running;
    if (ckpt.is_open() && (since_flush > 0 || !finished)) flush_line(last_boundary, done);
  } else {
    // Blocks of the index space are claimed in order; tallies are merged in
    // block order so the result is independent of scheduling, and the
    // checkpoint advances over the longest finished prefix of blocks.
    ull span = report.total;
    ull nblocks = std::min<ull>(std::max<ull>(1, (ull)workers * 16), span);
    ull block_size = (span + nblocks - 1) / nblocks;
    struct Block {
      ull lo, hi;
      Tally tally;
      bool complete = false, finished = false;
    };
    std::vector<Block> blocks;
    for (ull b = 0; b * block_size < span; ++b) {
      Block blk;
      blk.lo = b * block_size + 1;
      blk.hi = std::min(span, (b + 1) * block_size);
      blocks.push_back(blk);
    }
    std::atomic<size_t> next{0};
    std::mutex merge_mu;
    std::vector<std::thread> pool;
    for (int wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&]() {
        Walker walker(ctx, opt, comp, sel, stop);
        while (true) {
          size_t b = next.fetch_add(1);
          if (b >= blocks.size()) break;
          if (stop && stop()) {
            std::lock_guard<std::mutex> lock(merge_mu);
            blocks[b].complete = true;
            blocks[b].finished = false;
            continue;
          }
          Tally t;
          bool ok = walker.run(blocks[b].lo, blocks[b].hi, t, nullptr);
          std::lock_guard<std::mutex> lock(merge_mu);
          blocks[b].tally = t;
          blocks[b].complete = true;
          blocks[b].finished = ok;
        }
      });
    }
    for (auto& th : pool) th.join();
    Tally running = done;
    for (const Block& blk : blocks) {
      if (!blk.finished) {
        finished = false;
        break;
      }
      running += blk.tally;
      if (ckpt.is_open() && blk.tally.processed > 0) flush_line(blk.hi, running);
    }
    done = running;
  }

  report.processed = done.processed;
  report.certified = done.certified;
  report.failed = done.failed;
  report.budget_exceeded = done.budget_exceeded;
  report.completed = finished && report.processed == report.selected;
  return report;
}

}  // namespace flagcalc
