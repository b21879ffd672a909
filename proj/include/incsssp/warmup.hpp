#pragma once

// Two-level incremental SSSP for unweighted digraphs: a depth-bounded exact
// tree answers short distances, and a single-threshold lazy tree covers the
// rest with additive error at most eps * n^(2/3) (hence (1+eps) multiplicative
// beyond that depth).
//
// The lazy half keeps, per vertex u, a cache of u's out-edges bucketed by a
// recorded (possibly stale) estimate of each head. The suffix of buckets at
// slots >= est(u)+2 is u's forward neighborhood FN(u). Positions refresh only
// when the head's estimate has dropped by at least n^(1/3) since the last
// global refresh, or when u itself scans the suffix. A vertex is "light"
// until |FN(u)| reaches gamma = ceil(6 * n^(2/3) / eps) and turns light again
// when 2|FN(u)| <= gamma (scanning FN immediately on that toggle). Light
// vertices scan FN on every estimate decrement and therefore contribute no
// error; heavy vertices scan only after n^(1/3) accumulated decrements.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "incsssp/es_tree.hpp"
#include "incsssp/graph.hpp"
#include "incsssp/workset.hpp"

namespace incsssp {

class WarmupTree {
 public:
  WarmupTree(int32_t n, VertexId source, double eps,
             std::optional<int64_t> gamma_override = std::nullopt)
      : g_(n, source), n_(n), source_(source), eps_(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("WarmupTree: eps must be positive");
    n13_ = 1;
    while (n13_ * n13_ * n13_ < n_) ++n13_;
    n23_ = 1;
    while (n23_ * n23_ * n23_ < static_cast<int64_t>(n_) * n_) ++n23_;
    gamma_ = gamma_override.value_or(
        static_cast<int64_t>(std::ceil(6.0 * static_cast<double>(n23_) / eps)));
    if (gamma_ < 2) throw std::invalid_argument("WarmupTree: gamma must be at least 2");
    est_.assign(n_, n_);  // one past the largest real distance = unreachable
    est_[source_] = 0;
    fn_count_.assign(n_, 0);
    heavy_.assign(n_, 0);
    pending_drop_.assign(n_, 0);
    drop_since_scan_.assign(n_, 0);
    cache_.assign(static_cast<size_t>(n_) * (n_ + 1), {});
    exact_ = std::make_unique<EsTree>(&g_, source_, n23_);
  }

  // Unweighted insert; duplicates are no-ops.
  void insert_edge(VertexId u, VertexId v) {
    InsertResult r = g_.insert_or_relax(u, v, 1);
    if (r.outcome == InsertOutcome::NoOp) return;
    int32_t id = r.edge_id;
    if (static_cast<size_t>(id) >= slot_.size()) {
      slot_.resize(id + 1, 0);
      pos_.resize(id + 1, 0);
    }
    slot_[id] = est_[v];
    bucket_of(u, est_[v]).push_back(id);
    pos_[id] = static_cast<int32_t>(bucket_of(u, est_[v]).size()) - 1;
    if (slot_[id] >= est_[u] + 2) {
      ++fn_count_[u];
      if (!heavy_[u] && fn_count_[u] >= gamma_) heavy_[u] = 1;
    }
    exact_->on_insert(u, v, 1);
    ws_.ensure(slot_.size());
    ws_.push(id);
    drain();
  }

  Dist dist(VertexId t) const {
    Dist best = exact_->dist(t);
    if (est_[t] < n_) best = std::min(best, static_cast<Dist>(est_[t]));
    return best;
  }

  // Introspection for tests and auditing.
  int64_t raw_est(VertexId v) const { return est_[v]; }
  bool heavy(VertexId v) const { return heavy_[v] != 0; }
  int64_t fn_count(VertexId v) const { return fn_count_[v]; }
  int64_t gamma() const { return gamma_; }
  int64_t n13() const { return n13_; }
  int64_t n23() const { return n23_; }
  const DynGraph& graph() const { return g_; }
  const EsTree& exact_tree() const { return *exact_; }
  uint64_t decrements() const { return decrements_; }
  uint64_t scans() const { return scans_; }
  int64_t edge_slot(int32_t edge_id) const { return slot_[edge_id]; }

 private:
  std::vector<int32_t>& bucket_of(VertexId u, int64_t slot) {
    return cache_[static_cast<size_t>(u) * (n_ + 1) + slot];
  }

  void drain() {
    while (!ws_.empty()) {
      int32_t id = ws_.pop();
      const EdgeRecord& e = g_.edge(id);
      if (est_[e.head] > est_[e.tail] + 1) {
        decrement(e.head);
        ws_.push(id, /*count=*/false);
      }
    }
  }

  void decrement(VertexId v) {
    --est_[v];
    ++decrements_;
    ++pending_drop_[v];
    ++drop_since_scan_[v];
    // The FN boundary of v moved down by one: bucket est(v)+2 joins.
    if (est_[v] + 2 <= n_) {
      fn_count_[v] += static_cast<int64_t>(bucket_of(v, est_[v] + 2).size());
      if (!heavy_[v] && fn_count_[v] >= gamma_) heavy_[v] = 1;
    }
    if (!heavy_[v]) {
      scan_fn(v);
    } else if (drop_since_scan_[v] >= n13_) {
      scan_fn(v);
      if (heavy_[v] && 2 * fn_count_[v] <= gamma_) heavy_[v] = 0;  // scan already done
    }
    if (pending_drop_[v] >= n13_) {
      pending_drop_[v] = 0;
      refresh_in_neighbors(v);
    }
  }

  // Refresh every suffix entry's recorded slot and offer the edge for
  // relaxation. Entries only move down, so a single ascending pass with a
  // per-bucket snapshot visits each suffix member exactly once.
  void scan_fn(VertexId u) {
    ++scans_;
    drop_since_scan_[u] = 0;
    scratch_.clear();
    for (int64_t s = est_[u] + 2; s <= n_; ++s) {
      const std::vector<int32_t>& b = bucket_of(u, s);
      scratch_.insert(scratch_.end(), b.begin(), b.end());
    }
    for (int32_t id : scratch_) {
      refresh_entry(id);
      ws_.push(id);
    }
  }

  // Move edge id's cache entry to the head's current estimate, maintaining
  // the tail's FN count. Returns silently; light-toggle policy is the
  // caller's concern.
  void refresh_entry(int32_t id) {
    const EdgeRecord& e = g_.edge(id);
    int64_t to = est_[e.head];
    int64_t from = slot_[id];
    if (to == from) return;
    std::vector<int32_t>& src = bucket_of(e.tail, from);
    int32_t back = src.back();
    src[pos_[id]] = back;
    pos_[back] = pos_[id];
    src.pop_back();
    std::vector<int32_t>& dst = bucket_of(e.tail, to);
    dst.push_back(id);
    pos_[id] = static_cast<int32_t>(dst.size()) - 1;
    slot_[id] = to;
    int64_t boundary = est_[e.tail] + 2;
    if (from >= boundary && to < boundary) --fn_count_[e.tail];
  }

  // v's estimate has dropped n^(1/3) since the last global position refresh:
  // update v's slot in every in-neighbor's cache, toggling tails to light
  // (with the mandated immediate scan) when their suffix shrinks to gamma/2.
  void refresh_in_neighbors(VertexId v) {
    for (const InEdge& ie : g_.in(v)) {
      refresh_entry(ie.edge_id);
      if (heavy_[ie.tail] && 2 * fn_count_[ie.tail] <= gamma_) {
        heavy_[ie.tail] = 0;
        scan_fn(ie.tail);
      }
    }
  }

  DynGraph g_;
  int32_t n_;
  VertexId source_;
  double eps_;
  int64_t n13_ = 1;
  int64_t n23_ = 1;
  int64_t gamma_ = 2;
  std::vector<int64_t> est_;
  std::vector<int64_t> fn_count_;
  std::vector<uint8_t> heavy_;
  std::vector<int64_t> pending_drop_;
  std::vector<int64_t> drop_since_scan_;
  std::vector<std::vector<int32_t>> cache_;  // n x (n+1) buckets, flattened
  std::vector<int64_t> slot_;                // per edge id
  std::vector<int32_t> pos_;                 // index within its bucket
  std::unique_ptr<EsTree> exact_;
  WorkSet ws_;
  std::vector<int32_t> scratch_;
  uint64_t decrements_ = 0;
  uint64_t scans_ = 0;
};

}  // namespace incsssp
