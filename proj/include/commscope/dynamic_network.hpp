#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "commscope/graph.hpp"

namespace commscope {

struct TimeSlice {
  /// Time label as given in the manifest; strictly increasing across slices.
  std::int64_t time = 0;
  std::shared_ptr<const Graph> graph;
  CommunityStructure communities;
};

/// Ordered sequence of time slices sharing one node-identifier namespace.
class DynamicNetwork {
 public:
  /// Throws Error(config) when empty or when times are not strictly increasing.
  explicit DynamicNetwork(std::vector<TimeSlice> slices);

  std::size_t slice_count() const noexcept { return slices_.size(); }
  const TimeSlice& slice(std::size_t t) const { return slices_.at(t); }
  const std::vector<TimeSlice>& slices() const noexcept { return slices_; }

 private:
  std::vector<TimeSlice> slices_;
};

}  // namespace commscope
