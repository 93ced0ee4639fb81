#include "commscope/dynamic_network.hpp"

#include "commscope/error.hpp"

namespace commscope {

DynamicNetwork::DynamicNetwork(std::vector<TimeSlice> slices) : slices_(std::move(slices)) {
  if (slices_.empty()) throw Error(Errc::config, "dynamic network needs at least one slice");
  for (std::size_t t = 1; t < slices_.size(); ++t)
    if (slices_[t].time <= slices_[t - 1].time)
      throw Error(Errc::config, "slice times must be strictly increasing (slice " +
                                    std::to_string(t) + ")");
}

}  // namespace commscope
