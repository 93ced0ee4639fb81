#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commscope/dynamic_network.hpp"

namespace commscope {

/// A community's identity across slices. Slice positions (not manifest time
/// labels) are used for birth, last presence, age and lifetime.
struct CommunityTimeline {
  std::size_t id = 0;
  struct Presence {
    std::size_t slice = 0;
    CommunityIndex community = 0;
  };
  std::vector<Presence> presence;

  std::size_t birth() const { return presence.front().slice; }
  std::size_t last() const { return presence.back().slice; }
  std::size_t lifetime() const { return last() - birth(); }
  std::size_t age(std::size_t slice) const { return slice - birth(); }
  std::optional<CommunityIndex> community_at(std::size_t slice) const;
};

struct MatchPair {
  CommunityIndex source = 0;
  CommunityIndex target = 0;
  double jaccard = 0;
  /// False when the pair was pruned while decomposing a many-to-many overlap.
  bool retained = true;
};

struct TransitionMatches {
  std::size_t from_slice = 0;  // the transition is from_slice -> from_slice + 1
  std::vector<MatchPair> pairs;
};

struct MatchResult {
  std::vector<CommunityTimeline> timelines;
  std::vector<TransitionMatches> transitions;
};

/// Pairs every community at t with every community at t+1 whose Jaccard
/// overlap reaches `theta`, then prunes the weakest pairs of any many-to-many
/// group until each group is one-to-one, one-to-many or many-to-one. Timelines
/// continue through one-to-one groups only.
MatchResult match_communities(const DynamicNetwork& dn, double theta = 0.3);

enum class EventKind { birth, death, growth, contraction, merge, split, continuation };

inline constexpr std::array<EventKind, 7> all_event_kinds{
    EventKind::birth, EventKind::death,  EventKind::growth,      EventKind::contraction,
    EventKind::merge, EventKind::split,  EventKind::continuation};

const char* to_string(EventKind kind) noexcept;

struct EventRecord {
  std::size_t from_slice = 0;
  EventKind kind = EventKind::continuation;
  std::vector<CommunityIndex> sources;
  std::vector<CommunityIndex> targets;
  /// Nodes in the targets but not the sources, and vice versa.
  std::size_t joining = 0;
  std::size_t leaving = 0;
};

/// One record per retained match group. One-to-one groups are growth when the
/// size exceeds n(1+gamma), contraction below n(1-gamma), else continuation.
std::vector<EventRecord> detect_events(const DynamicNetwork& dn, const MatchResult& matches,
                                       double gamma = 0.1);

/// Jaccard overlap of the timeline's member sets at two slices.
double auto_correlation(const CommunityTimeline& tl, const DynamicNetwork& dn, std::size_t t1,
                        std::size_t t2);

enum class StationarityDenominator { pairs, literal };

/// Sum of consecutive-slice auto-correlations divided by (t_max - t_0) in
/// `pairs` mode or by (t_max - t_0 - 1) in `literal` mode.
std::optional<double> stationarity(const CommunityTimeline& tl, const DynamicNetwork& dn,
                                   StationarityDenominator mode = StationarityDenominator::pairs);

/// J - L of the one-to-one transition into `slice`; empty when there is none.
std::optional<std::int64_t> popularity_index(const std::vector<EventRecord>& events,
                                             const CommunityTimeline& tl, std::size_t slice);

/// 1 - L / n(slice - 1) for the one-to-one transition into `slice`.
std::optional<double> member_stability(const std::vector<EventRecord>& events,
                                       const CommunityTimeline& tl, const DynamicNetwork& dn,
                                       std::size_t slice);

struct EventCensus {
  /// counts[transition][kind], kind in all_event_kinds order.
  std::vector<std::array<std::size_t, all_event_kinds.size()>> per_transition;
  std::array<std::size_t, all_event_kinds.size()> totals{};
};

EventCensus event_census(const std::vector<EventRecord>& events, std::size_t transitions);

}  // namespace commscope
