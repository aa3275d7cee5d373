#include "fqdist/distance_graph.hpp"

#include <algorithm>

#include "fqdist/errors.hpp"

namespace fqdist {

DistanceGraph::DistanceGraph(const PointSet& set, Residue t)
    : params_(set.params()), distance_(t), offsets_(set.params().size() + 1, 0) {
  if (t >= params_.q()) throw InvalidArgument("distance must be a residue in [0, q)");
  const PointTable table(params_);
  std::vector<std::size_t> shell;
  for (std::size_t s = 0; s < params_.size(); ++s) {
    if (table.norm(s) == t) shell.push_back(s);
  }
  std::vector<std::size_t> scratch;
  for (std::size_t x = 0; x < params_.size(); ++x) {
    offsets_[x + 1] = offsets_[x];
    if (!set.contains(x)) continue;
    scratch.clear();
    for (auto s : shell) {
      const auto y = table.sum(x, s);
      if (y != x && set.contains(y)) scratch.push_back(y);
    }
    std::sort(scratch.begin(), scratch.end());
    targets_.insert(targets_.end(), scratch.begin(), scratch.end());
    offsets_[x + 1] = targets_.size();
    max_degree_ = std::max(max_degree_, scratch.size());
  }
}

}  // namespace fqdist
