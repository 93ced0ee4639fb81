#include "commscope/events.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <unordered_map>

#include "commscope/error.hpp"

namespace commscope {
namespace {

using IdSet = std::vector<std::string_view>;

IdSet member_ids(const TimeSlice& slice, CommunityIndex c) {
  IdSet ids;
  for (NodeIndex u : slice.communities.members(c)) ids.push_back(slice.graph->id(u));
  std::sort(ids.begin(), ids.end());
  return ids;
}

IdSet union_ids(const TimeSlice& slice, const std::vector<CommunityIndex>& cs) {
  IdSet ids;
  for (auto c : cs) {
    auto part = member_ids(slice, c);
    ids.insert(ids.end(), part.begin(), part.end());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t intersection_size(const IdSet& a, const IdSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double jaccard(const IdSet& a, const IdSet& b) {
  const std::size_t inter = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Group {
  std::vector<CommunityIndex> sources;
  std::vector<CommunityIndex> targets;
};

// Connected groups of the bipartite graph formed by the retained pairs.
// Sources occupy ids [0, n_src), targets [n_src, n_src + n_tgt).
std::vector<Group> groups_of(std::size_t n_src, std::size_t n_tgt, const std::vector<MatchPair>& pairs) {
  DisjointSets ds(n_src + n_tgt);
  for (const auto& p : pairs)
    if (p.retained) ds.unite(p.source, n_src + p.target);
  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<Group> groups;
  for (std::size_t x = 0; x < n_src + n_tgt; ++x) {
    auto [it, inserted] = slot.try_emplace(ds.find(x), groups.size());
    if (inserted) groups.emplace_back();
    auto& g = groups[it->second];
    if (x < n_src) {
      g.sources.push_back(static_cast<CommunityIndex>(x));
    } else {
      g.targets.push_back(static_cast<CommunityIndex>(x - n_src));
    }
  }
  return groups;
}

bool is_star(const Group& g) { return g.sources.size() <= 1 || g.targets.size() <= 1; }

// Drops the weakest pair inside a many-to-many group whose endpoints both keep
// another pair, until every group is a star. Such a pair always exists in a
// connected bipartite group that is not a star.
void prune_to_stars(std::size_t n_src, std::size_t n_tgt, std::vector<MatchPair>& pairs) {
  while (true) {
    auto groups = groups_of(n_src, n_tgt, pairs);
    std::vector<char> in_complex_src(n_src, 0);
    bool any = false;
    for (const auto& g : groups) {
      if (is_star(g)) continue;
      any = true;
      for (auto s : g.sources) in_complex_src[s] = 1;
    }
    if (!any) return;
    std::vector<std::size_t> deg_src(n_src, 0), deg_tgt(n_tgt, 0);
    for (const auto& p : pairs)
      if (p.retained) {
        ++deg_src[p.source];
        ++deg_tgt[p.target];
      }
    MatchPair* weakest = nullptr;
    for (auto& p : pairs) {
      if (!p.retained || !in_complex_src[p.source]) continue;
      if (deg_src[p.source] < 2 || deg_tgt[p.target] < 2) continue;
      if (!weakest || p.jaccard < weakest->jaccard ||
          (p.jaccard == weakest->jaccard &&
           std::tie(p.source, p.target) > std::tie(weakest->source, weakest->target)))
        weakest = &p;
    }
    if (!weakest) throw std::logic_error("many-to-many match group without a removable pair");
    weakest->retained = false;
  }
}

bool one_to_one(EventKind k) {
  return k == EventKind::growth || k == EventKind::contraction || k == EventKind::continuation;
}

const EventRecord* transition_into(const std::vector<EventRecord>& events,
                                   const CommunityTimeline& tl, std::size_t slice) {
  if (slice == 0) return nullptr;
  auto before = tl.community_at(slice - 1);
  auto now = tl.community_at(slice);
  if (!before || !now) return nullptr;
  for (const auto& e : events)
    if (e.from_slice == slice - 1 && one_to_one(e.kind) && e.sources.size() == 1 &&
        e.targets.size() == 1 && e.sources[0] == *before && e.targets[0] == *now)
      return &e;
  return nullptr;
}

}  // namespace

std::optional<CommunityIndex> CommunityTimeline::community_at(std::size_t slice) const {
  for (const auto& p : presence)
    if (p.slice == slice) return p.community;
  return std::nullopt;
}

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::birth: return "birth";
    case EventKind::death: return "death";
    case EventKind::growth: return "growth";
    case EventKind::contraction: return "contraction";
    case EventKind::merge: return "merge";
    case EventKind::split: return "split";
    case EventKind::continuation: return "continuation";
  }
  return "unknown";
}

MatchResult match_communities(const DynamicNetwork& dn, double theta) {
  if (!(theta > 0 && theta <= 1)) throw Error(Errc::config, "theta must lie in (0, 1]");
  MatchResult out;
  // timeline_of[c] for the current slice.
  std::vector<std::size_t> timeline_of;
  const auto& first = dn.slice(0);
  for (CommunityIndex c = 0; c < first.communities.count(); ++c) {
    timeline_of.push_back(out.timelines.size());
    out.timelines.push_back({out.timelines.size(), {{0, c}}});
  }

  for (std::size_t t = 0; t + 1 < dn.slice_count(); ++t) {
    const auto& a = dn.slice(t);
    const auto& b = dn.slice(t + 1);
    const std::size_t n_src = a.communities.count();
    const std::size_t n_tgt = b.communities.count();

    // Overlap counts via the shared identifier namespace.
    std::vector<std::unordered_map<CommunityIndex, std::size_t>> overlap(n_src);
    for (NodeIndex u = 0; u < a.graph->node_count(); ++u)
      if (auto v = b.graph->find(a.graph->id(u)))
        ++overlap[a.communities.community_of(u)][b.communities.community_of(*v)];

    TransitionMatches tm;
    tm.from_slice = t;
    for (CommunityIndex i = 0; i < n_src; ++i) {
      std::vector<std::pair<CommunityIndex, std::size_t>> row(overlap[i].begin(), overlap[i].end());
      std::sort(row.begin(), row.end());
      for (auto [j, inter] : row) {
        const std::size_t uni = a.communities.size(i) + b.communities.size(j) - inter;
        const double jac = static_cast<double>(inter) / static_cast<double>(uni);
        if (jac >= theta) tm.pairs.push_back({i, j, jac, true});
      }
    }
    prune_to_stars(n_src, n_tgt, tm.pairs);

    std::vector<std::size_t> next(n_tgt, 0);
    std::vector<char> continued(n_tgt, 0);
    for (const auto& g : groups_of(n_src, n_tgt, tm.pairs)) {
      if (g.sources.size() == 1 && g.targets.size() == 1) {
        const std::size_t id = timeline_of[g.sources[0]];
        out.timelines[id].presence.push_back({t + 1, g.targets[0]});
        next[g.targets[0]] = id;
        continued[g.targets[0]] = 1;
      }
    }
    for (CommunityIndex j = 0; j < n_tgt; ++j) {
      if (continued[j]) continue;
      next[j] = out.timelines.size();
      out.timelines.push_back({out.timelines.size(), {{t + 1, j}}});
    }
    timeline_of = std::move(next);
    out.transitions.push_back(std::move(tm));
  }
  return out;
}

std::vector<EventRecord> detect_events(const DynamicNetwork& dn, const MatchResult& matches,
                                       double gamma) {
  if (!(gamma >= 0)) throw Error(Errc::config, "gamma must be non-negative");
  std::vector<EventRecord> out;
  for (const auto& tm : matches.transitions) {
    const auto& a = dn.slice(tm.from_slice);
    const auto& b = dn.slice(tm.from_slice + 1);
    std::vector<EventRecord> here;
    for (auto& g : groups_of(a.communities.count(), b.communities.count(), tm.pairs)) {
      EventRecord e;
      e.from_slice = tm.from_slice;
      e.sources = std::move(g.sources);
      e.targets = std::move(g.targets);
      const auto before = union_ids(a, e.sources);
      const auto after = union_ids(b, e.targets);
      const std::size_t common = intersection_size(before, after);
      e.joining = after.size() - common;
      e.leaving = before.size() - common;
      if (e.sources.empty()) {
        e.kind = EventKind::birth;
      } else if (e.targets.empty()) {
        e.kind = EventKind::death;
      } else if (e.sources.size() >= 2) {
        e.kind = EventKind::merge;
      } else if (e.targets.size() >= 2) {
        e.kind = EventKind::split;
      } else {
        const auto n0 = static_cast<double>(before.size());
        const auto n1 = static_cast<double>(after.size());
        if (n1 > n0 * (1 + gamma)) {
          e.kind = EventKind::growth;
        } else if (n1 < n0 * (1 - gamma)) {
          e.kind = EventKind::contraction;
        } else {
          e.kind = EventKind::continuation;
        }
      }
      here.push_back(std::move(e));
    }
    // Records with sources first (by first source), then births (by target).
    std::sort(here.begin(), here.end(), [](const EventRecord& x, const EventRecord& y) {
      if (x.sources.empty() != y.sources.empty()) return y.sources.empty();
      if (!x.sources.empty()) return x.sources.front() < y.sources.front();
      return x.targets.front() < y.targets.front();
    });
    for (auto& e : here) out.push_back(std::move(e));
  }
  return out;
}

double auto_correlation(const CommunityTimeline& tl, const DynamicNetwork& dn, std::size_t t1,
                        std::size_t t2) {
  auto c1 = tl.community_at(t1);
  auto c2 = tl.community_at(t2);
  if (!c1 || !c2)
    throw Error(Errc::absent, "timeline " + std::to_string(tl.id) + " is absent at slice " +
                                  std::to_string(c1 ? t2 : t1));
  return jaccard(member_ids(dn.slice(t1), *c1), member_ids(dn.slice(t2), *c2));
}

std::optional<double> stationarity(const CommunityTimeline& tl, const DynamicNetwork& dn,
                                   StationarityDenominator mode) {
  const std::size_t span = tl.lifetime();
  if (span == 0) return std::nullopt;
  const std::size_t denom = mode == StationarityDenominator::pairs ? span : span - 1;
  if (denom == 0) return std::nullopt;
  double sum = 0;
  for (std::size_t t = tl.birth(); t < tl.last(); ++t) sum += auto_correlation(tl, dn, t, t + 1);
  return sum / static_cast<double>(denom);
}

std::optional<std::int64_t> popularity_index(const std::vector<EventRecord>& events,
                                             const CommunityTimeline& tl, std::size_t slice) {
  const EventRecord* e = transition_into(events, tl, slice);
  if (!e) return std::nullopt;
  return static_cast<std::int64_t>(e->joining) - static_cast<std::int64_t>(e->leaving);
}

std::optional<double> member_stability(const std::vector<EventRecord>& events,
                                       const CommunityTimeline& tl, const DynamicNetwork& dn,
                                       std::size_t slice) {
  const EventRecord* e = transition_into(events, tl, slice);
  if (!e) return std::nullopt;
  const std::size_t before = dn.slice(slice - 1).communities.size(e->sources[0]);
  return 1.0 - static_cast<double>(e->leaving) / static_cast<double>(before);
}

EventCensus event_census(const std::vector<EventRecord>& events, std::size_t transitions) {
  EventCensus census;
  census.per_transition.assign(transitions, {});
  for (const auto& e : events) {
    const auto k = static_cast<std::size_t>(e.kind);
    if (e.from_slice >= census.per_transition.size()) census.per_transition.resize(e.from_slice + 1, {});
    ++census.per_transition[e.from_slice][k];
    ++census.totals[k];
  }
  return census;
}

}  // namespace commscope
