#pragma once

// Lazy approximate shortest-path tree for one distance band.
//
// The tree maintains, under edge insertions and weight decreases, estimates
// d̂(v) that never undershoot the true distance and, for targets whose true
// distance lies in [tau, 2*tau), overshoot by at most a controlled additive
// error. Estimates start at the sentinel cap+1 (the source at 0) and only
// ever tick downward one unit at a time.
//
// The work-saving device is a per-vertex "heaviness" level h(u) in [0, logn]:
// instead of rescanning u's out-edges on every decrement of d̂(u), a vertex of
// heaviness h rescans its far neighborhood FN(u) only when d̂(u) crosses a
// multiple of 2^h. FN(u) is the suffix of a per-vertex cache Cache_u that
// buckets every out-neighbor by (a possibly stale copy of) its estimate;
// the suffix starts at CacheIndex(u) = floor_multiple(d̂(u)-1, 2^h). Heads
// keep the staleness one-sided via reverse watches (Expire lists): the moment
// a neighbor's estimate drops just below CacheIndex(u) it refiles itself and
// notifies u. Heaviness rises when the suffix population reaches an upper
// threshold and falls when it reaches a lower one (2x apart), so each level
// is paid for by the neighborhood size that justifies it.
//
// Weighted mode (used by the rescaled band trees) adds two twists: FN
// membership also requires the edge weight to be < 2^h, and every out-edge
// belongs to a weight class (2^j, 2^{j+1}] that is re-offered to the work
// pool whenever d̂(u) crosses a multiple of max(1, floor(eps*2^j)), so a
// weight-w edge lags by at most ~eps*w regardless of FN membership.

#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "incsssp/graph.hpp"
#include "incsssp/workset.hpp"

namespace incsssp {

#define INCSSSP_CHECK(cond, msg) \
  do {                           \
    if (!(cond)) throw std::logic_error(std::string("internal check failed: ") + (msg)); \
  } while (0)

struct LazyTreeParams {
  int64_t tau = 1;
  int64_t cap = 3;    // estimates live in [0, cap]; cap+1 is the sentinel
  double eps = 0.25;  // operating epsilon: thresholds and scan periods
  int32_t n_pad = 1;  // vertex count padded up to a power of two
  int32_t logn = 0;   // log2(n_pad)
  bool weighted = false;
  int64_t alpha = 1;          // weight scale the caller divided by (report only)
  double effective_eps = 0;   // alpha*tau_hop/tau_dep for band trees (report only)
  std::optional<double> override_base;  // test-constants: lo base b, hi base 2b

  // threshold_lo(i) = ceil((2^i - 1) *  6 * n_pad * logn / (eps * tau))
  // threshold_hi(i) = ceil((2^i - 1) * 12 * n_pad * logn / (eps * tau))
  // Under an override b they become ceil((2^i - 1) * b) and ceil((2^i - 1) * 2b).
  int64_t threshold_lo(int i) const { return threshold(i, false); }
  int64_t threshold_hi(int i) const { return threshold(i, true); }

  static LazyTreeParams for_band(int n, int64_t tau, int64_t cap, double eps, bool weighted,
                                 int64_t alpha, std::optional<double> override_base) {
    LazyTreeParams p;
    p.tau = tau;
    p.cap = cap;
    p.eps = eps;
    p.n_pad = 1;
    while (p.n_pad < n) p.n_pad <<= 1;
    p.logn = std::bit_width(static_cast<uint32_t>(p.n_pad)) - 1;
    p.weighted = weighted;
    p.alpha = alpha;
    p.override_base = override_base;
    return p;
  }

  static LazyTreeParams unweighted_band(int n, int64_t tau, double eps,
                                        std::optional<double> override_base) {
    int64_t cap = static_cast<int64_t>(std::ceil(2.0 * static_cast<double>(tau) * (1.0 + eps)));
    return for_band(n, tau, cap, eps, false, 1, override_base);
  }

  // The base the default thresholds use, for callers that want to override
  // with a multiple of it rather than an absolute value.
  static double default_base(int n, int64_t tau, double eps) {
    int64_t n_pad = 1;
    while (n_pad < n) n_pad <<= 1;
    int logn = std::bit_width(static_cast<uint64_t>(n_pad)) - 1;
    return 6.0 * static_cast<double>(n_pad) * static_cast<double>(logn) /
           (eps * static_cast<double>(tau));
  }

 private:
  int64_t threshold(int i, bool hi) const {
    if (i <= 0) return 0;
    double units = static_cast<double>((int64_t(1) << i) - 1);
    double base;
    if (override_base.has_value()) {
      base = *override_base * (hi ? 2.0 : 1.0);
    } else {
      base = (hi ? 12.0 : 6.0) * static_cast<double>(n_pad) * static_cast<double>(logn) /
             (eps * static_cast<double>(tau));
    }
    double val = std::ceil(units * base);
    double lim = 4.0e18;
    return val > lim ? static_cast<int64_t>(lim) : static_cast<int64_t>(val);
  }
};

struct ScanStats {
  uint64_t decrements = 0;
  uint64_t workset_inserts = 0;
  uint64_t suffix_queries = 0;
  uint64_t iscan_total = 0;
  std::vector<uint64_t> per_i;          // scans by level, size logn+1
  std::vector<uint32_t> per_vertex_i;   // flattened [v*(logn+1) + i]
};

namespace detail {

// Point-update prefix-sum tree over slots [0, size-1].
class SlotFenwick {
 public:
  explicit SlotFenwick(int64_t size) : tree_(static_cast<size_t>(size) + 1, 0) {}
  void add(int64_t idx, int32_t delta) {
    for (int64_t i = idx + 1; i < static_cast<int64_t>(tree_.size()); i += i & -i)
      tree_[static_cast<size_t>(i)] += delta;
  }
  int64_t prefix(int64_t idx) const {  // sum of slots [0, idx]
    int64_t s = 0;
    int64_t i = std::min(idx + 1, static_cast<int64_t>(tree_.size()) - 1);
    for (; i > 0; i -= i & -i) s += tree_[static_cast<size_t>(i)];
    return s;
  }

 private:
  std::vector<int32_t> tree_;
};

// Occupancy bits for `rows` independent slot arrays, with a summary level so
// that find_next skips long empty stretches in O(words/64) rather than O(slots).
class TwoLevelBits {
 public:
  TwoLevelBits(int64_t rows, int64_t slots)
      : words_((slots + 63) / 64), sup_words_((words_ + 63) / 64) {
    bits_.assign(static_cast<size_t>(rows) * words_, 0);
    sup_.assign(static_cast<size_t>(rows) * sup_words_, 0);
  }

  void set(int64_t row, int64_t slot) {
    int64_t w = slot >> 6;
    bits_[row * words_ + w] |= uint64_t(1) << (slot & 63);
    sup_[row * sup_words_ + (w >> 6)] |= uint64_t(1) << (w & 63);
  }

  void clear(int64_t row, int64_t slot) {
    int64_t w = slot >> 6;
    uint64_t& word = bits_[row * words_ + w];
    word &= ~(uint64_t(1) << (slot & 63));
    if (word == 0) sup_[row * sup_words_ + (w >> 6)] &= ~(uint64_t(1) << (w & 63));
  }

  // First occupied slot >= from, or -1.
  int64_t find_next(int64_t row, int64_t from) const {
    if (from >= words_ * 64) return -1;
    const uint64_t* bits = &bits_[row * words_];
    int64_t w = from >> 6;
    uint64_t masked = bits[w] & (~uint64_t(0) << (from & 63));
    if (masked) return (w << 6) + std::countr_zero(masked);
    const uint64_t* sup = &sup_[row * sup_words_];
    int64_t sw = w >> 6;
    int64_t b = (w & 63) + 1;  // summary bits strictly after word w
    uint64_t smasked = b >= 64 ? 0 : sup[sw] & (~uint64_t(0) << b);
    while (true) {
      if (smasked) {
        int64_t nw = (sw << 6) + std::countr_zero(smasked);
        return (nw << 6) + std::countr_zero(bits[nw]);
      }
      if (++sw >= sup_words_) return -1;
      smasked = sup[sw];
    }
  }

 private:
  int64_t words_;
  int64_t sup_words_;
  std::vector<uint64_t> bits_;
  std::vector<uint64_t> sup_;
};

}  // namespace detail

class LazyTree {
 public:
  struct Edge {
    VertexId u = -1, v = -1;
    int32_t w = -1;  // scaled weight; -1 marks "not in this tree"
    int32_t slot = -1;
    int32_t cache_prev = -1, cache_next = -1;
    int32_t reg_slot = -1;  // Expire_v slot where u's watch lives; -1 = none
    int32_t exp_prev = -1, exp_next = -1;
    int32_t cls_pos = -1;   // position in the scan-class list
    int8_t scan_cls = -1;   // class (2^{c-1}, 2^c] by index c = bit_width(w-1)
    int8_t cnt_cls = 0;     // bit_width(w), for "< 2^i" population counts
  };

  LazyTree(int32_t n, VertexId source, const LazyTreeParams& params)
      : n_(n), source_(source), params_(params) {
    if (n <= 0) throw std::invalid_argument("LazyTree: n must be positive");
    if (source < 0 || source >= n) throw std::invalid_argument("LazyTree: bad source");
    if (params_.cap < 1 || params_.cap > (int64_t(1) << 28))
      throw std::invalid_argument("LazyTree: cap out of range");
    cap_ = params_.cap;
    stride_ = cap_ + 1;  // slots 0..cap
    est_.assign(n_, static_cast<int32_t>(cap_ + 1));
    est_[source_] = 0;
    h_.assign(n_, 0);
    parent_edge_.assign(n_, -1);
    cache_head_.assign(static_cast<size_t>(n_) * stride_, -1);
    expire_head_.assign(static_cast<size_t>(n_) * stride_, -1);
    occ_ = std::make_unique<detail::TwoLevelBits>(n_, stride_);
    if (params_.weighted) {
      scan_cls_count_ = scan_cls_of(static_cast<int32_t>(cap_)) + 1;
      period_.resize(scan_cls_count_);
      for (int c = 0; c < scan_cls_count_; ++c) {
        double p = params_.eps * std::ldexp(1.0, c - 1);  // eps * 2^{c-1}
        period_[c] = std::max<int64_t>(1, static_cast<int64_t>(p));
      }
      cls_edges_.resize(static_cast<size_t>(n_) * scan_cls_count_);
      cnt_cls_count_ = std::bit_width(static_cast<uint64_t>(cap_)) + 1;  // classes 1..CW
    } else {
      cnt_cls_count_ = 1;  // single class 0
    }
    feasible_hi_max_ = 0;
    feasible_lo_max_ = 0;
    for (int i = 1; i <= params_.logn; ++i) {
      if (params_.threshold_hi(i) <= n_ - 1) feasible_hi_max_ = i;
      if (params_.threshold_lo(i) <= n_ - 1) feasible_lo_max_ = i;
    }
    fenwick_enabled_ = feasible_hi_max_ >= 1;
    if (fenwick_enabled_) {
      fenw_.resize(static_cast<size_t>(n_) * cnt_cls_count_);
      totals_.assign(static_cast<size_t>(n_) * cnt_cls_count_, 0);
    }
    per_i_.assign(params_.logn + 1, 0);
    per_vertex_i_.assign(static_cast<size_t>(n_) * (params_.logn + 1), 0);
  }

  const LazyTreeParams& params() const { return params_; }
  int32_t n() const { return n_; }
  VertexId source() const { return source_; }

  // w_scaled >= 1; edges heavier than the cap cannot affect any in-band answer
  // and are ignored. edge_id is the graph-wide dense id.
  void insert_edge(VertexId u, VertexId v, Weight w_scaled, int32_t edge_id) {
    if (w_scaled < 1) throw std::invalid_argument("LazyTree: weight must be >= 1");
    if (w_scaled > cap_) return;
    ensure_edge(edge_id);
    Edge& e = edges_[edge_id];
    int32_t w = static_cast<int32_t>(w_scaled);
    if (e.w < 0) {
      e.u = u;
      e.v = v;
      e.w = w;
      if (params_.weighted) {
        e.scan_cls = scan_cls_of(w);
        e.cnt_cls = cnt_cls_of(w);
        cls_link(edge_id);
      }
      cache_link(edge_id, slot_of_est(est_[v]));
      if (e.reg_slot < 0 && in_fn(e)) register_watch(edge_id);
    } else {
      if (w >= e.w) return;  // no change at this tree's scale
      if (params_.weighted) {
        int8_t sc = scan_cls_of(w);
        int8_t cc = cnt_cls_of(w);
        if (sc != e.scan_cls) {
          cls_unlink(edge_id);
          e.scan_cls = sc;
          cls_link(edge_id);
        }
        if (cc != e.cnt_cls) {
          fenw_add(e.u, e.cnt_cls, e.slot, -1);
          e.cnt_cls = cc;
          fenw_add(e.u, e.cnt_cls, e.slot, +1);
        }
      }
      e.w = w;
      // A lighter weight can only let the edge *enter* the far neighborhood.
      if (e.reg_slot < 0 && in_fn(e)) register_watch(edge_id);
    }
    increase_heaviness(u);
    if (static_cast<int64_t>(est_[v]) > static_cast<int64_t>(est_[u]) + e.w) ws_.push(edge_id);
    drain();
  }

  Dist dist(VertexId t) const { return est_[t] > cap_ ? kInfDist : est_[t]; }
  int32_t raw_est(VertexId t) const { return est_[t]; }
  int heaviness(VertexId u) const { return h_[u]; }
  int32_t parent_edge(VertexId v) const { return parent_edge_[v]; }

  // Path from the source following parent edges; empty when unreachable.
  // steps, if given, receives the number of parent-pointer hops.
  std::vector<VertexId> path_to(VertexId t, uint64_t* steps = nullptr) const {
    if (steps) *steps = 0;
    if (t != source_ && est_[t] > cap_) return {};
    std::vector<VertexId> rev{t};
    VertexId cur = t;
    uint64_t k = 0;
    while (cur != source_) {
      int32_t pe = parent_edge_[cur];
      INCSSSP_CHECK(pe >= 0, "finite estimate without a parent");
      cur = edges_[pe].u;
      rev.push_back(cur);
      ++k;
      INCSSSP_CHECK(k <= static_cast<uint64_t>(n_) + 1, "parent chain too long");
    }
    if (steps) *steps = k;
    return {rev.rbegin(), rev.rend()};
  }

  // --- introspection for audits, tests and reports ---

  int64_t cap() const { return cap_; }
  size_t edge_table_size() const { return edges_.size(); }
  bool edge_present(int32_t eid) const {
    return eid >= 0 && static_cast<size_t>(eid) < edges_.size() && edges_[eid].w >= 0;
  }
  const Edge& edge_rec(int32_t eid) const { return edges_[eid]; }
  bool edge_in_fn(int32_t eid) const { return edge_present(eid) && in_fn(edges_[eid]); }
  int64_t cache_index(VertexId u) const { return ci_at(u, h_[u]); }
  int64_t cache_index_at(VertexId u, int i) const { return ci_at(u, i); }
  int64_t scan_period_of(int32_t w) const {
    return params_.weighted ? period_[scan_cls_of(w)] : 1;
  }

  uint64_t decrements() const { return decrements_; }
  uint64_t workset_inserts() const { return ws_.attempts(); }
  uint64_t suffix_queries() const { return suffix_queries_; }
  uint64_t iscan_total() const { return iscan_total_; }
  uint32_t iscans_at(VertexId v, int i) const {
    return per_vertex_i_[static_cast<size_t>(v) * (params_.logn + 1) + i];
  }
  ScanStats snapshot_stats() const {
    ScanStats s;
    s.decrements = decrements_;
    s.workset_inserts = ws_.attempts();
    s.suffix_queries = suffix_queries_;
    s.iscan_total = iscan_total_;
    s.per_i = per_i_;
    s.per_vertex_i = per_vertex_i_;
    return s;
  }

 private:
  static int8_t scan_cls_of(int32_t w) {
    return static_cast<int8_t>(std::bit_width(static_cast<uint32_t>(w - 1)));
  }
  static int8_t cnt_cls_of(int32_t w) {
    return static_cast<int8_t>(std::bit_width(static_cast<uint32_t>(w)));
  }
  int32_t slot_of_est(int32_t est) const {
    return est > cap_ ? static_cast<int32_t>(cap_) : est;
  }
  int64_t ci_at(VertexId u, int i) const {
    int64_t raw = floor_multiple(static_cast<int64_t>(est_[u]) - 1, int64_t(1) << i);
    return raw < 0 ? 0 : raw;
  }
  bool in_fn(const Edge& e) const {
    if (e.slot < ci_at(e.u, h_[e.u])) return false;
    if (params_.weighted && e.w >= (int64_t(1) << h_[e.u])) return false;
    return true;
  }

  void ensure_edge(int32_t eid) {
    if (static_cast<size_t>(eid) >= edges_.size()) edges_.resize(eid + 1);
    ws_.ensure(edges_.size());
  }

  // -- cache slot lists (intrusive, per tail vertex) --

  void cache_link(int32_t eid, int32_t slot) {
    Edge& e = edges_[eid];
    e.slot = slot;
    int32_t& head = cache_head_[static_cast<size_t>(e.u) * stride_ + slot];
    if (head < 0) occ_->set(e.u, slot);
    e.cache_prev = -1;
    e.cache_next = head;
    if (head >= 0) edges_[head].cache_prev = eid;
    head = eid;
    fenw_add(e.u, e.cnt_cls, slot, +1);
  }

  void cache_unlink(int32_t eid) {
    Edge& e = edges_[eid];
    if (e.cache_prev >= 0) {
      edges_[e.cache_prev].cache_next = e.cache_next;
    } else {
      int32_t& head = cache_head_[static_cast<size_t>(e.u) * stride_ + e.slot];
      head = e.cache_next;
      if (head < 0) occ_->clear(e.u, e.slot);
    }
    if (e.cache_next >= 0) edges_[e.cache_next].cache_prev = e.cache_prev;
    fenw_add(e.u, e.cnt_cls, e.slot, -1);
    e.cache_prev = e.cache_next = -1;
  }

  // Returns true if the slot actually changed.
  bool refile(int32_t eid) {
    Edge& e = edges_[eid];
    int32_t ns = slot_of_est(est_[e.v]);
    if (ns == e.slot) return false;
    cache_unlink(eid);
    cache_link(eid, ns);
    return true;
  }

  // -- expire watch lists (intrusive, per head vertex) --

  void register_watch(int32_t eid) {
    Edge& e = edges_[eid];
    int32_t idx = static_cast<int32_t>(ci_at(e.u, h_[e.u]));
    e.reg_slot = idx;
    int32_t& head = expire_head_[static_cast<size_t>(e.v) * stride_ + idx];
    e.exp_prev = -1;
    e.exp_next = head;
    if (head >= 0) edges_[head].exp_prev = eid;
    head = eid;
  }

  void unregister_watch(int32_t eid) {
    Edge& e = edges_[eid];
    if (e.reg_slot < 0) return;
    if (e.exp_prev >= 0)
      edges_[e.exp_prev].exp_next = e.exp_next;
    else
      expire_head_[static_cast<size_t>(e.v) * stride_ + e.reg_slot] = e.exp_next;
    if (e.exp_next >= 0) edges_[e.exp_next].exp_prev = e.exp_prev;
    e.exp_prev = e.exp_next = -1;
    e.reg_slot = -1;
  }

  // -- weighted scan-class lists (per tail vertex) --

  void cls_link(int32_t eid) {
    Edge& e = edges_[eid];
    auto& lst = cls_edges_[static_cast<size_t>(e.u) * scan_cls_count_ + e.scan_cls];
    e.cls_pos = static_cast<int32_t>(lst.size());
    lst.push_back(eid);
  }

  void cls_unlink(int32_t eid) {
    Edge& e = edges_[eid];
    auto& lst = cls_edges_[static_cast<size_t>(e.u) * scan_cls_count_ + e.scan_cls];
    int32_t last = lst.back();
    lst[e.cls_pos] = last;
    edges_[last].cls_pos = e.cls_pos;
    lst.pop_back();
    e.cls_pos = -1;
  }

  // -- population counts --

  void fenw_add(VertexId u, int8_t cls, int32_t slot, int32_t delta) {
    if (!fenwick_enabled_) return;
    size_t idx = static_cast<size_t>(u) * cnt_cls_count_ + (params_.weighted ? cls : 0);
    totals_[idx] += delta;
    auto& f = fenw_[idx];
    if (!f) f = std::make_unique<detail::SlotFenwick>(stride_);
    f->add(slot, delta);
  }

  // Entries of Cache_u at slots >= CacheIndex(u, 2^i), restricted in weighted
  // mode to weights < 2^i.
  int64_t filtered_suffix_count(VertexId u, int i) {
    ++suffix_queries_;
    int64_t L = ci_at(u, i);
    int64_t total = 0;
    int hi_cls = params_.weighted ? std::min<int>(i, cnt_cls_count_ - 1) : 0;
    int lo_cls = params_.weighted ? 1 : 0;
    for (int c = lo_cls; c <= hi_cls; ++c) {
      size_t idx = static_cast<size_t>(u) * cnt_cls_count_ + c;
      if (!fenw_[idx]) continue;
      total += totals_[idx] - (L > 0 ? fenw_[idx]->prefix(L - 1) : 0);
    }
    return total;
  }

  void bump_iscan(VertexId v, int i) {
    ++iscan_total_;
    ++per_i_[i];
    ++per_vertex_i_[static_cast<size_t>(v) * (params_.logn + 1) + i];
  }

  // -- the four core procedures --

  void drain() {
    while (!ws_.empty()) {
      int32_t eid = ws_.pop();
      const Edge& e = edges_[eid];
      if (static_cast<int64_t>(est_[e.v]) > static_cast<int64_t>(est_[e.u]) + e.w) {
        decrement(eid);
        ws_.push(eid, /*count=*/false);  // stays pending until its guard clears
      }
    }
  }

  void decrement(int32_t eid) {
    Edge& via = edges_[eid];
    VertexId v = via.v;
    --est_[v];
    parent_edge_[v] = eid;
    ++decrements_;
    int64_t E = est_[v];
    if ((E & ((int64_t(1) << h_[v]) - 1)) == 0) {  // crossed a 2^{h(v)} multiple
      increase_heaviness(v);
      fn_scan(v);
    }
    if (params_.weighted) class_scan(v, E);
    expire_step(v, E + 1);
  }

  // Rescan of v's far neighborhood: refresh every member's slot, point its
  // watch at the (possibly moved) cache index, and offer it to the work pool.
  // A refreshed slot can land below the cache index: that happens to entries
  // whose slot went stale while they sat outside the suffix (unwatched) and
  // that re-entered it only because the index dropped. Such an entry leaves
  // the neighborhood the moment it is refreshed, so it keeps no watch.
  void fn_scan(VertexId v) {
    int h = h_[v];
    int64_t L = ci_at(v, h);
    bump_iscan(v, h);
    int64_t wlimit = int64_t(1) << h;
    for (int64_t slot = occ_->find_next(v, L); slot >= 0;
         slot = occ_->find_next(v, slot + 1)) {
      int32_t cur = cache_head_[static_cast<size_t>(v) * stride_ + slot];
      while (cur >= 0) {
        Edge& e = edges_[cur];
        int32_t nxt = e.cache_next;
        if (!params_.weighted || e.w < wlimit) {
          refile(cur);
          if (e.slot >= L) {
            if (e.reg_slot != static_cast<int32_t>(L)) {
              unregister_watch(cur);
              register_watch(cur);
            }
          } else {
            unregister_watch(cur);
          }
          ws_.push(cur);
        }
        cur = nxt;
      }
    }
  }

  // Weight-class rescan: class c is re-offered whenever the estimate crosses
  // a multiple of its period, so a weight-w out-edge is reconsidered at least
  // every ~eps*w downward ticks.
  void class_scan(VertexId v, int64_t est_now) {
    size_t base = static_cast<size_t>(v) * scan_cls_count_;
    for (int c = 0; c < scan_cls_count_; ++c) {
      const auto& lst = cls_edges_[base + c];
      if (lst.empty() || est_now % period_[c] != 0) continue;
      for (int32_t eid : lst) ws_.push(eid);
    }
  }

  // v just ticked from idx to idx-1: every watcher registered at idx loses v
  // from its far neighborhood right now.
  void expire_step(VertexId v, int64_t idx) {
    if (idx > cap_) return;
    int32_t cur = expire_head_[static_cast<size_t>(v) * stride_ + idx];
    while (cur >= 0) {
      Edge& e = edges_[cur];  // watch of e.u over v == e.v
      int32_t nxt = e.exp_next;
      cache_unlink(cur);
      cache_link(cur, slot_of_est(est_[v]));
      unregister_watch(cur);
      decrease_heaviness(e.u);
      cur = nxt;
    }
  }

  void increase_heaviness(VertexId u) {
    if (!fenwick_enabled_) return;  // thresholds unreachable: h is pinned to 0
    int ip = 0;
    for (int i = feasible_hi_max_; i >= 1; --i) {
      if (filtered_suffix_count(u, i) >= params_.threshold_hi(i)) {
        ip = i;
        break;
      }
    }
    if (ip <= h_[u]) return;
    relay_suffix(u, ip);
    int nh = 0;
    for (int i = ip; i >= 1; --i) {
      if (filtered_suffix_count(u, i) >= params_.threshold_lo(i)) {
        nh = i;
        break;
      }
    }
    h_[u] = static_cast<int8_t>(nh);
    // Re-register the new neighborhood. No work-pool pushes here: a *rise* in
    // heaviness only widens FN downward with entries that are already settled
    // relative to u (their estimates sit below u's cache index).
    int64_t L2 = ci_at(u, nh);
    bump_iscan(u, nh);
    int64_t wlimit = int64_t(1) << nh;
    for (int64_t slot = occ_->find_next(u, L2); slot >= 0;
         slot = occ_->find_next(u, slot + 1)) {
      for (int32_t cur = cache_head_[static_cast<size_t>(u) * stride_ + slot]; cur >= 0;
           cur = edges_[cur].cache_next) {
        Edge& e = edges_[cur];
        if (!params_.weighted || e.w < wlimit) register_watch(cur);
      }
    }
  }

  void decrease_heaviness(VertexId u) {
    int h = h_[u];
    if (h == 0) return;  // the level cannot drop below zero
    // Support at a higher level does not imply support here, so the guard must
    // look at the vertex's own level: population there is what invariant 4
    // promises, and it is exactly what fn_scan cadence relies on.
    if (filtered_suffix_count(u, h) >= params_.threshold_lo(h)) return;
    relay_suffix(u, h);
    int nh = 0;
    for (int i = h - 1; i >= 1; --i) {
      if (filtered_suffix_count(u, i) >= params_.threshold_lo(i)) {
        nh = i;
        break;
      }
    }
    h_[u] = static_cast<int8_t>(nh);
    // Falling heaviness tightens the rescan cadence, so the widened FN must be
    // both re-registered and re-examined by the work pool.
    int64_t L2 = ci_at(u, nh);
    bump_iscan(u, nh);
    int64_t wlimit = int64_t(1) << nh;
    for (int64_t slot = occ_->find_next(u, L2); slot >= 0;
         slot = occ_->find_next(u, slot + 1)) {
      for (int32_t cur = cache_head_[static_cast<size_t>(u) * stride_ + slot]; cur >= 0;
           cur = edges_[cur].cache_next) {
        Edge& e = edges_[cur];
        if (!params_.weighted || e.w < wlimit) {
          register_watch(cur);
          ws_.push(cur);
        }
      }
    }
  }

  // Refresh every slot in Cache_u[CacheIndex(u, 2^level), cap] to the true
  // head estimates and drop all watches (the caller re-registers afterwards).
  void relay_suffix(VertexId u, int level) {
    int64_t L = ci_at(u, level);
    bump_iscan(u, level);
    for (int64_t slot = occ_->find_next(u, L); slot >= 0;
         slot = occ_->find_next(u, slot + 1)) {
      int32_t cur = cache_head_[static_cast<size_t>(u) * stride_ + slot];
      while (cur >= 0) {
        int32_t nxt = edges_[cur].cache_next;
        refile(cur);
        unregister_watch(cur);
        cur = nxt;
      }
    }
  }

  int32_t n_;
  VertexId source_;
  LazyTreeParams params_;
  int64_t cap_ = 0;
  int64_t stride_ = 0;

  std::vector<Edge> edges_;
  std::vector<int32_t> est_;
  std::vector<int8_t> h_;
  std::vector<int32_t> parent_edge_;
  std::vector<int32_t> cache_head_;
  std::vector<int32_t> expire_head_;
  std::unique_ptr<detail::TwoLevelBits> occ_;

  int scan_cls_count_ = 0;
  std::vector<int64_t> period_;
  std::vector<std::vector<int32_t>> cls_edges_;

  int cnt_cls_count_ = 1;
  bool fenwick_enabled_ = false;
  int feasible_hi_max_ = 0;
  int feasible_lo_max_ = 0;
  std::vector<std::unique_ptr<detail::SlotFenwick>> fenw_;
  std::vector<int64_t> totals_;

  WorkSet ws_;
  uint64_t decrements_ = 0;
  uint64_t suffix_queries_ = 0;
  uint64_t iscan_total_ = 0;
  std::vector<uint64_t> per_i_;
  std::vector<uint32_t> per_vertex_i_;
};

}  // namespace incsssp
