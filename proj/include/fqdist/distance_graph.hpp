#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fqdist/field.hpp"

namespace fqdist {

/// Adjacency of the graph on E joining x, y when ||x - y|| = t.
/// Neighbour lists are sorted by point index so traversals are reproducible.
class DistanceGraph {
 public:
  DistanceGraph(const PointSet& set, Residue t);

  Residue distance() const { return distance_; }
  const FieldParams& params() const { return params_; }

  /// Neighbours of `index` inside E. Empty for points outside E.
  std::span<const std::size_t> neighbors(std::size_t index) const {
    return {targets_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
  }
  std::size_t degree(std::size_t index) const { return offsets_[index + 1] - offsets_[index]; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t edge_count() const { return targets_.size(); }

 private:
  FieldParams params_;
  Residue distance_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> targets_;
  std::size_t max_degree_ = 0;
};

}  // namespace fqdist
