#pragma once

// Public incremental SSSP engine. It maintains a family of band trees and
// answers queries as minima across them:
//
//  - unit weights: one tree per hop scale tau = 2^i, i in [0, ceil(log2 n)),
//    each guaranteeing (1+eps) stretch for true distances in [tau, 2*tau);
//  - general weights in [1, W]: one tree per (tau_hop = 2^i, tau_dep = 2^j)
//    pair with j >= i. Edge weights are divided by alpha =
//    max(1, floor(eps_int * tau_dep / tau_hop)) (rounding up), the tree runs
//    on the scaled weights with an internal eps_int = eps/4, and its answers
//    are scaled back up by alpha. Rounding loses at most (alpha-1) per hop,
//    which the [tau_hop, 2*tau_hop) hop bound turns into a 2*eps_int factor,
//    so the end-to-end stretch stays within (1+eps_int)(1+2*eps_int) <= 1+eps
//    for eps <= 2.
//
// Estimates never undershoot the true distance: scaled weights round up, so
// every band's answer is a valid upper-scale distance.

#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "incsssp/graph.hpp"
#include "incsssp/lazy_tree.hpp"

namespace incsssp {

struct EngineOptions {
  double eps = 0.25;
  Weight max_weight = 1;  // declared aspect ratio W; weights above it are rejected
  std::optional<double> test_constant_base;  // absolute threshold base for every band
  // Scales each band's default threshold base instead of replacing it; ignored
  // when test_constant_base is set.
  std::optional<double> test_constant_multiplier;
};

struct Estimate {
  Dist value = kInfDist;
  int band = -1;  // winning band index; -1 for the source and for unreachable
};

struct BandDesc {
  int64_t tau_hop = 1;
  int64_t tau_dep = 1;  // equals tau_hop in the unit-weight family
  int64_t alpha = 1;
};

struct EngineStats {
  uint64_t decrements = 0;
  uint64_t workset_inserts = 0;
  uint64_t suffix_queries = 0;
  uint64_t iscan_total = 0;
  std::vector<uint64_t> per_i;  // i-scans summed across bands, indexed by level
};

class SsspEngine {
 public:
  SsspEngine(int n, VertexId source, EngineOptions opt = EngineOptions{})
      : g_(n, source), opt_(opt) {
    if (!(opt_.eps > 0.0) || opt_.eps > 2.0)
      throw std::invalid_argument("SsspEngine: eps must be in (0, 2]");
    if (opt_.max_weight < 1)
      throw std::invalid_argument("SsspEngine: max weight must be >= 1");
    int hop_levels = n <= 1 ? 0 : std::bit_width(static_cast<uint32_t>(n - 1));
    if (opt_.max_weight == 1) {
      for (int i = 0; i < hop_levels; ++i) {
        int64_t tau = int64_t(1) << i;
        bands_.push_back(BandDesc{tau, tau, 1});
        trees_.push_back(std::make_unique<LazyTree>(
            n, source,
            LazyTreeParams::unweighted_band(n, tau, opt_.eps, resolved_base(n, tau, opt_.eps))));
      }
    } else {
      double eps_int = opt_.eps / 4.0;
      uint64_t nw = static_cast<uint64_t>(n) * static_cast<uint64_t>(opt_.max_weight);
      int dep_levels = std::bit_width(nw - 1);
      for (int i = 0; i < hop_levels; ++i) {
        for (int j = i; j < dep_levels; ++j) {
          int64_t tau_hop = int64_t(1) << i;
          int64_t tau_dep = int64_t(1) << j;
          auto alpha = static_cast<int64_t>(eps_int * static_cast<double>(tau_dep) /
                                            static_cast<double>(tau_hop));
          if (alpha < 1) alpha = 1;
          // Deepest scaled weight a covered path can reach, with headroom for
          // the per-edge scan lag: (1+eps_int) * (2*tau_dep + (alpha-1)*2*tau_hop) / alpha.
          double depth = (1.0 + eps_int) *
                         (2.0 * static_cast<double>(tau_dep) +
                          static_cast<double>(alpha - 1) * 2.0 * static_cast<double>(tau_hop)) /
                         static_cast<double>(alpha);
          int64_t cap = static_cast<int64_t>(std::ceil(depth)) + 2;
          bands_.push_back(BandDesc{tau_hop, tau_dep, alpha});
          trees_.push_back(std::make_unique<LazyTree>(
              n, source,
              LazyTreeParams::for_band(n, tau_hop, cap, eps_int, /*weighted=*/true, alpha,
                                       resolved_base(n, tau_hop, eps_int))));
        }
      }
    }
  }

  std::optional<double> resolved_base(int n, int64_t tau_hop, double eps) const {
    if (opt_.test_constant_base) return opt_.test_constant_base;
    if (!opt_.test_constant_multiplier) return std::nullopt;
    return *opt_.test_constant_multiplier * LazyTreeParams::default_base(n, tau_hop, eps);
  }

  InsertResult insert(VertexId u, VertexId v, Weight w) {
    if (w > opt_.max_weight)
      throw std::invalid_argument("SsspEngine: weight exceeds the declared maximum");
    InsertResult r = g_.insert_or_relax(u, v, w);
    if (r.outcome == InsertOutcome::NoOp) return r;
    for (size_t b = 0; b < trees_.size(); ++b)
      trees_[b]->insert_edge(u, v, ceil_div(w, bands_[b].alpha), r.edge_id);
    return r;
  }

  Estimate estimate(VertexId t) const {
    if (t == g_.source()) return Estimate{0, -1};
    Estimate best;
    for (size_t b = 0; b < trees_.size(); ++b) {
      Dist d = trees_[b]->dist(t);
      if (d == kInfDist) continue;
      Dist val = d * bands_[b].alpha;
      if (val < best.value) {
        best.value = val;
        best.band = static_cast<int>(b);
      }
    }
    return best;
  }

  Dist dist(VertexId t) const { return estimate(t).value; }

  // Path behind the winning band's estimate; its true weight is at most the
  // reported value. Empty when t is unreachable; {source} for the source.
  std::vector<VertexId> path_to(VertexId t, uint64_t* steps = nullptr) const {
    if (steps) *steps = 0;
    if (t == g_.source()) return {t};
    Estimate e = estimate(t);
    if (e.band < 0) return {};
    return trees_[static_cast<size_t>(e.band)]->path_to(t, steps);
  }

  const DynGraph& graph() const { return g_; }
  const EngineOptions& options() const { return opt_; }
  int band_count() const { return static_cast<int>(trees_.size()); }
  const LazyTree& band(int b) const { return *trees_[static_cast<size_t>(b)]; }
  const BandDesc& band_desc(int b) const { return bands_[static_cast<size_t>(b)]; }

  EngineStats stats() const {
    EngineStats s;
    for (const auto& t : trees_) {
      s.decrements += t->decrements();
      s.workset_inserts += t->workset_inserts();
      s.suffix_queries += t->suffix_queries();
      s.iscan_total += t->iscan_total();
      ScanStats ts = t->snapshot_stats();
      if (s.per_i.size() < ts.per_i.size()) s.per_i.resize(ts.per_i.size(), 0);
      for (size_t i = 0; i < ts.per_i.size(); ++i) s.per_i[i] += ts.per_i[i];
    }
    return s;
  }

 private:
  DynGraph g_;
  EngineOptions opt_;
  std::vector<BandDesc> bands_;
  std::vector<std::unique_ptr<LazyTree>> trees_;
};

}  // namespace incsssp
