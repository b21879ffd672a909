#pragma once

#include <cstdint>
#include <vector>

namespace incsssp {

// LIFO pool of candidate relaxations (edge ids) with duplicate suppression:
// an edge that is already pending is not filed twice. `attempts` counts every
// offered insertion, including suppressed duplicates; it is the
// `workset_inserts` figure reported by the engines.
class WorkSet {
 public:
  void ensure(size_t edge_capacity) {
    if (pending_.size() < edge_capacity) pending_.resize(edge_capacity, 0);
  }

  // count=false re-files an edge whose guard still holds after a pop; that is
  // bookkeeping churn, not a new unit of work.
  void push(int32_t e, bool count = true) {
    if (count) ++attempts_;
    if (pending_[e]) return;
    pending_[e] = 1;
    stack_.push_back(e);
  }

  int32_t pop() {
    int32_t e = stack_.back();
    stack_.pop_back();
    pending_[e] = 0;
    return e;
  }

  bool empty() const { return stack_.empty(); }
  uint64_t attempts() const { return attempts_; }

 private:
  std::vector<int32_t> stack_;
  std::vector<uint8_t> pending_;
  uint64_t attempts_ = 0;
};

}  // namespace incsssp
