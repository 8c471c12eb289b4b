#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace mstlab {

// Union-find with path compression and union by size. Keeps an ordered log of
// successful merges (edge id, merge time) so callers can replay the component
// evolution as the length threshold grows. Single writer; find() is const in
// the logical sense only.
class DisjointSet {
 public:
  struct MergeEvent {
    std::int32_t edge;
    double time;
  };

  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
    components_ = n;
  }

  std::int32_t find(std::int32_t v) const {
    std::int32_t r = v;
    while (r != parent_[r]) r = parent_[r];
    while (v != r) {
      std::int32_t next = parent_[v];
      parent_[v] = r;
      v = next;
    }
    return r;
  }

  bool same(std::int32_t a, std::int32_t b) const { return find(a) == find(b); }

  // Returns true iff the union joined two distinct components; only then is
  // the event logged.
  bool unite(std::int32_t a, std::int32_t b, std::int32_t edge = -1,
             double time = 0.0) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    log_.push_back({edge, time});
    return true;
  }

  std::size_t component_count() const { return components_; }
  std::size_t component_size(std::int32_t v) const { return size_[find(v)]; }
  const std::vector<MergeEvent>& merge_log() const { return log_; }

 private:
  mutable std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
  std::vector<MergeEvent> log_;
  std::size_t components_ = 0;
};

}  // namespace mstlab
