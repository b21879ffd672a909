#pragma once

// Exact incremental shortest-path tree truncated at a depth bound D.
// Classic Even–Shiloach style maintenance specialised to the incremental
// (insert / weight-decrease) setting: an update seeds a label-correcting
// wavefront that is drained with a bucket queue over [0, D].

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "incsssp/graph.hpp"

namespace incsssp {

class EsTree {
 public:
  // g must outlive the tree. Edges already present in g are NOT picked up;
  // feed every insertion through on_insert (the engines share one DynGraph).
  EsTree(const DynGraph* g, VertexId source, Dist depth_bound)
      : g_(g), source_(source), depth_(depth_bound) {
    if (depth_ < 0) throw std::invalid_argument("EsTree: negative depth bound");
    dist_.assign(g_->n(), kInfDist);
    parent_.assign(g_->n(), -1);
    dist_[source_] = 0;
    buckets_.resize(static_cast<size_t>(depth_) + 1);
  }

  // Call after g->insert_or_relax(u, v, w) changed the stored weight.
  void on_insert(VertexId u, VertexId v, Weight w) {
    if (dist_[u] == kInfDist) return;
    Dist cand = dist_[u] + w;
    if (cand > depth_ || cand >= dist_[v]) return;
    settle(v, cand, u);
    drain(cand);
  }

  Dist dist(VertexId t) const { return dist_[t]; }
  VertexId parent(VertexId t) const { return parent_[t]; }
  const std::vector<Dist>& all_dist() const { return dist_; }
  Dist depth_bound() const { return depth_; }
  uint64_t relaxations() const { return relaxations_; }

  // Path from source to t following parent pointers; empty if unreachable.
  std::vector<VertexId> path_to(VertexId t) const {
    if (dist_[t] == kInfDist) return {};
    std::vector<VertexId> rev{t};
    VertexId cur = t;
    while (cur != source_) {
      cur = parent_[cur];
      rev.push_back(cur);
    }
    return {rev.rbegin(), rev.rend()};
  }

 private:
  void settle(VertexId v, Dist d, VertexId par) {
    dist_[v] = d;
    parent_[v] = par;
    ++relaxations_;
    buckets_[static_cast<size_t>(d)].push_back(v);
  }

  void drain(Dist from) {
    for (Dist d = from; d <= depth_; ++d) {
      auto& bucket = buckets_[static_cast<size_t>(d)];
      while (!bucket.empty()) {
        VertexId x = bucket.back();
        bucket.pop_back();
        if (dist_[x] != d) continue;  // superseded by a smaller label
        for (const OutEdge& e : g_->out(x)) {
          Dist cand = d + e.w;
          if (cand > depth_ || cand >= dist_[e.head]) continue;
          settle(e.head, cand, x);
        }
      }
    }
  }

  const DynGraph* g_;
  VertexId source_;
  Dist depth_;
  std::vector<Dist> dist_;
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> buckets_;
  uint64_t relaxations_ = 0;
};

}  // namespace incsssp
