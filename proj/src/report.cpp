#include "commscope/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "commscope/attr_measures.hpp"
#include "commscope/error.hpp"
#include "commscope/topology.hpp"

namespace commscope {
namespace {

using ojson = nlohmann::ordered_json;

ojson number(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

ojson number(double x) { return number(std::optional<double>(x)); }

std::string cell(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read '" + path.string() + "'");
  return in;
}

// Prefixes a loader error with the file it came from.
template <typename F>
auto with_source(const std::filesystem::path& path, F&& load) {
  try {
    return load();
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

class ReportBuilder {
 public:
  explicit ReportBuilder(const RunConfig& config) : config_(config) {}

  Table& table(const std::string& name, std::vector<std::string> header) {
    auto& t = report_.tables[name];
    if (t.header.empty()) t.header = std::move(header);
    return t;
  }

  void warn(const Warning& w) { warnings_.push_back(w); }
  void warn(const Warnings& ws) {
    for (const auto& w : ws) warn(w);
  }
  void warn(std::string code, std::string message) { warn(Warning{std::move(code), std::move(message)}); }

  void input(const std::string& role, const std::filesystem::path& path) {
    inputs_.push_back({{"role", role}, {"path", path.string()}, {"sha256", sha256_file(path)}});
  }

  Report finish(ojson sections) {
    ojson& doc = report_.document;
    doc["schema"] = kSchema;
    doc["tool"] = {{"name", "commscope"}, {"version", kToolVersion}};
    doc["command"] = config_.command;
    doc["inputs"] = inputs_.is_null() ? ojson::array() : inputs_;
    doc["config"] = config_echo();
    for (auto& [key, value] : sections.items()) doc[key] = value;
    ojson warnings = ojson::array();
    auto& wt = table("warnings", {"code", "message"});
    for (const auto& w : warnings_) {
      warnings.push_back({{"code", w.code}, {"message", w.message}});
      wt.rows.push_back({w.code, w.message});
    }
    doc["warnings"] = std::move(warnings);
    return std::move(report_);
  }

 private:
  ojson config_echo() const {
    auto path = [](const std::optional<std::filesystem::path>& p) -> ojson {
      if (!p) return nullptr;
      return p->string();
    };
    return {
        {"edges", path(config_.edges)},
        {"communities", path(config_.communities)},
        {"attributes", path(config_.attributes)},
        {"manifest", path(config_.manifest)},
        {"attr_types", config_.attr_types},
        {"topics", config_.topics},
        {"alpha", config_.alpha},
        {"theta", config_.theta},
        {"gamma", config_.gamma},
        {"stationarity_denominator",
         config_.stationarity == StationarityDenominator::pairs ? "pairs" : "paper"},
        {"ncp_extremum", config_.ncp_extremum == NcpExtremum::min ? "min" : "max"},
        {"node_level", config_.node_level},
        {"per_slice", config_.per_slice},
        {"format", config_.format == OutputFormat::json ? "json" : "tsv"},
    };
  }

  const RunConfig& config_;
  Report report_;
  ojson inputs_ = ojson::array();
  Warnings warnings_;
};

// ---------------------------------------------------------------- topology

ojson structure_json(const CommunityStructure& cs) {
  auto s = structure_summary(cs);
  ojson histogram = ojson::array();
  for (auto [size, count] : s.size_histogram) histogram.push_back({{"size", size}, {"count", count}});
  return {
      {"community_count", s.community_count},
      {"node_count", s.node_count},
      {"link_count", s.link_count},
      {"sizes", s.sizes},
      {"size_histogram", histogram},
      {"inter_community_proportion", number(s.inter_community_proportion)},
      {"modularity", number(s.modularity)},
  };
}

void topo_section(ReportBuilder& rb, const CommunityStructure& cs, bool node_level, ojson& out,
                  const std::string& table_prefix = "", const std::string& slice_time = "") {
  const bool sliced = !table_prefix.empty();
  auto structure = structure_json(cs);

  {
    std::vector<std::string> header{"metric", "value"};
    if (sliced) header.insert(header.begin(), "t");
    auto& t = rb.table(table_prefix + "structure", header);
    for (const char* key : {"community_count", "node_count", "link_count", "inter_community_proportion", "modularity"}) {
      std::vector<std::string> row{key, cell(structure[key])};
      if (sliced) row.insert(row.begin(), slice_time);
      t.rows.push_back(std::move(row));
    }
    if (!sliced) {
      auto& h = rb.table("size_histogram", {"size", "count"});
      for (const auto& entry : structure["size_histogram"])
        h.rows.push_back({cell(entry["size"]), cell(entry["count"])});
    }
  }

  std::vector<std::string> header{"index", "label", "size", "internal_links", "boundary_links", "density",
                                  "scaled_density", "avg_distance", "reachable_pair_fraction", "transitivity",
                                  "transitivity_skipped_nodes", "hub_dominance", "internal_degree_mean",
                                  "internal_degree_stddev", "modularity_term", "conductance"};
  if (sliced) header.insert(header.begin(), "t");
  auto& ct = rb.table(table_prefix + "communities", header);
  ojson communities = ojson::array();
  std::size_t singletons = 0, disconnected = 0, skipped = 0;
  for (const auto& s : summarize_communities(cs)) {
    if (s.size == 1) ++singletons;
    if (s.distance.reachable_pairs < s.distance.total_pairs) ++disconnected;
    skipped += s.transitivity.skipped_nodes;
    ojson c = {
        {"index", s.index + 1},
        {"label", cs.label(s.index)},
        {"size", s.size},
        {"internal_links", s.internal_links},
        {"boundary_links", s.boundary_links},
        {"density", number(s.density)},
        {"scaled_density", number(s.scaled_density)},
        {"avg_distance", number(s.distance.mean)},
        {"reachable_pair_fraction", number(s.distance.reachable_fraction)},
        {"transitivity", number(s.transitivity.mean)},
        {"transitivity_defined_nodes", s.transitivity.defined_nodes},
        {"transitivity_skipped_nodes", s.transitivity.skipped_nodes},
        {"hub_dominance", number(s.hub_dominance)},
        {"internal_degree_mean", number(s.internal_degree_mean)},
        {"internal_degree_stddev", number(s.internal_degree_stddev)},
        {"modularity_term", number(s.modularity_term)},
        {"conductance", number(s.conductance)},
    };
    std::vector<std::string> row;
    if (sliced) row.push_back(slice_time);
    for (std::size_t h = sliced ? 1 : 0; h < header.size(); ++h) row.push_back(cell(c[header[h]]));
    ct.rows.push_back(std::move(row));
    communities.push_back(std::move(c));
  }
  const std::string where = sliced ? "slice t=" + slice_time + ": " : "";
  if (singletons > 0)
    rb.warn("singleton_communities",
            where + std::to_string(singletons) +
                " single-member community(ies): density, scaled density, average distance and hub dominance are null");
  if (disconnected > 0)
    rb.warn("disconnected_communities",
            where + std::to_string(disconnected) +
                " community(ies) with unreachable member pairs; average distance covers reachable pairs only");
  if (skipped > 0)
    rb.warn("transitivity_skipped_nodes",
            where + std::to_string(skipped) + " node(s) with internal degree below 2 left out of transitivity means");
  if (cs.graph().link_count() == 0)
    rb.warn("no_links", where + "graph has no links: modularity, inter-community proportion and conductance are null");

  out["structure"] = std::move(structure);
  out["communities"] = std::move(communities);

  if (node_level) {
    std::vector<std::string> nh{"id", "community_label", "degree", "internal_degree", "embeddedness",
                                "within_degree", "participation", "transitivity"};
    if (sliced) nh.insert(nh.begin(), "t");
    auto& nt = rb.table(table_prefix + "nodes", nh);
    ojson nodes = ojson::array();
    std::size_t isolated = 0;
    for (const auto& nm : node_measures(cs)) {
      if (nm.degree == 0) ++isolated;
      ojson n = {
          {"id", cs.graph().id(nm.node)},
          {"community_label", cs.label(nm.community)},
          {"degree", nm.degree},
          {"internal_degree", nm.internal_degree},
          {"embeddedness", number(nm.embeddedness)},
          {"within_degree", number(nm.within_degree)},
          {"participation", number(nm.participation)},
          {"transitivity", number(nm.transitivity)},
      };
      std::vector<std::string> row;
      if (sliced) row.push_back(slice_time);
      for (std::size_t h = sliced ? 1 : 0; h < nh.size(); ++h) row.push_back(cell(n[nh[h]]));
      nt.rows.push_back(std::move(row));
      nodes.push_back(std::move(n));
    }
    if (isolated > 0)
      rb.warn("isolated_nodes", where + std::to_string(isolated) + " isolated node(s): embeddedness is null");
    out["nodes"] = std::move(nodes);
  }
}

void ncp_section(ReportBuilder& rb, const CommunityStructure& cs, NcpExtremum extremum, ojson& out) {
  auto& t = rb.table("ncp", {"size", "conductance", "community_label"});
  ojson curve = ojson::array();
  for (const auto& p : ncp_over_partition(cs, extremum)) {
    curve.push_back({{"size", p.size},
                     {"conductance", number(p.conductance)},
                     {"community_index", p.witness + 1},
                     {"community_label", cs.label(p.witness)}});
    t.rows.push_back({std::to_string(p.size), cell(number(p.conductance)), cs.label(p.witness)});
  }
  out["ncp"] = {{"extremum", extremum == NcpExtremum::min ? "min" : "max"}, {"curve", std::move(curve)}};
}

// --------------------------------------------------------------- attributes

ojson homophily_json(const HomophilyResult& h, const CommunityStructure* cs) {
  ojson scope = "global";
  if (h.community) scope = cs->label(*h.community);
  return {{"attribute", h.attribute},
          {"scope", scope},
          {"coefficient", number(h.coefficient)},
          {"links_used", h.links_used},
          {"links_skipped", h.links_skipped}};
}

void attr_section(ReportBuilder& rb, const CommunityStructure& cs, const AttributeTable& attrs,
                  const RunConfig& config, ojson& out) {
  ojson section;
  ojson columns = ojson::array();
  for (const auto& name : attrs.names()) columns.push_back({{"name", name}, {"kind", to_string(attrs.kind(name))}});
  section["columns"] = std::move(columns);

  auto& at = rb.table("association", {"attribute", "test", "statistic", "statistic_infinite", "df1", "df2",
                                      "p_value", "phi", "cramers_v", "goodman_kruskal_lambda", "eta_squared",
                                      "observations", "excluded_missing", "excluded_communities"});
  auto& mt = rb.table("majority", {"attribute", "community_label", "value", "share", "count", "non_missing"});
  ojson associations = ojson::array();
  for (const auto& name : attrs.names()) {
    const bool nominal = attrs.kind(name) == AttributeKind::nominal;
    AssociationResult r;
    try {
      r = nominal ? chi_square_association(cs, attrs, name) : anova_association(cs, attrs, name);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_table && e.code() != Errc::insufficient_data) throw;
      rb.warn("association_skipped", e.what());
      associations.push_back({{"attribute", name},
                              {"test", nominal ? "chi_square" : "anova"},
                              {"error", to_string(e.code())},
                              {"message", e.what()}});
      continue;
    }
    rb.warn(r.warnings);
    if (r.excluded_missing > 0)
      rb.warn("missing_values_excluded", "attribute '" + name + "': " + std::to_string(r.excluded_missing) +
                                             " node(s) without a value excluded");
    ojson majority = ojson::array();
    for (CommunityIndex c = 0; c < r.majority.size(); ++c) {
      const auto& mv = r.majority[c];
      ojson m = {{"community_label", cs.label(c)},
                 {"value", mv ? ojson(mv->value) : ojson(nullptr)},
                 {"share", mv ? number(mv->share) : ojson(nullptr)},
                 {"count", mv ? ojson(mv->count) : ojson(nullptr)},
                 {"non_missing", mv ? ojson(mv->non_missing) : ojson(0)}};
      mt.rows.push_back({name, cs.label(c), cell(m["value"]), cell(m["share"]), cell(m["count"]),
                         cell(m["non_missing"])});
      majority.push_back(std::move(m));
    }
    ojson a = {{"attribute", name},
               {"test", r.test},
               {"statistic", number(r.statistic.value)},
               {"statistic_infinite", r.statistic.infinite},
               {"df1", r.df1},
               {"df2", r.test == "anova" ? ojson(r.df2) : ojson(nullptr)},
               {"p_value", number(r.p_value)},
               {"phi", number(r.phi)},
               {"cramers_v", number(r.cramers_v)},
               {"goodman_kruskal_lambda", number(r.goodman_kruskal_lambda)},
               {"eta_squared", number(r.eta_squared)},
               {"observations", r.observations},
               {"excluded_missing", r.excluded_missing},
               {"excluded_communities", r.excluded_communities}};
    std::vector<std::string> row;
    for (const auto& h : at.header) row.push_back(cell(a[h]));
    at.rows.push_back(std::move(row));
    if (nominal) a["majority"] = std::move(majority);
    associations.push_back(std::move(a));
  }
  section["association"] = std::move(associations);

  auto& ot = rb.table("over_expression", {"community_label", "attribute", "value", "observed", "expected",
                                          "p_value", "corrected_p_value", "over_expressed"});
  ojson findings = ojson::array();
  for (const auto& name : attrs.names()) {
    if (attrs.kind(name) != AttributeKind::nominal) continue;
    for (const auto& f : over_expression(cs, attrs, name, config.alpha)) {
      ojson j = {{"community_label", cs.label(f.community)},
                 {"attribute", f.attribute},
                 {"value", f.value},
                 {"observed", f.observed},
                 {"expected", number(f.expected)},
                 {"p_value", number(f.p_value)},
                 {"corrected_p_value", number(f.corrected_p_value)},
                 {"over_expressed", f.over_expressed}};
      std::vector<std::string> row;
      for (const auto& h : ot.header) row.push_back(cell(j[h]));
      ot.rows.push_back(std::move(row));
      findings.push_back(std::move(j));
    }
  }
  section["over_expression"] = std::move(findings);

  auto& ht = rb.table("homophily", {"attribute", "scope", "coefficient", "links_used", "links_skipped"});
  ojson homophilies = ojson::array();
  for (const auto& name : attrs.names()) {
    std::size_t skipped_links = 0;
    auto add = [&](const HomophilyResult& h) {
      auto j = homophily_json(h, &cs);
      ht.rows.push_back({name, cell(j["scope"]), cell(j["coefficient"]), cell(j["links_used"]),
                         cell(j["links_skipped"])});
      homophilies.push_back(std::move(j));
    };
    auto global = homophily(cs, attrs, name);
    skipped_links = global.links_skipped;
    add(global);
    for (CommunityIndex c = 0; c < cs.count(); ++c) add(homophily(cs, attrs, name, c));
    if (skipped_links > 0)
      rb.warn("homophily_links_skipped", "attribute '" + name + "': " + std::to_string(skipped_links) +
                                             " link(s) with a missing endpoint value skipped");
  }
  section["homophily"] = std::move(homophilies);

  if (!config.topics.empty()) {
    auto& st = rb.table("csd", {"community_label", "interests", "active_topics", "csd"});
    ojson csd = ojson::array();
    for (const auto& r : community_similarity_degree(cs, attrs, config.topics)) {
      ojson j = {{"community_label", cs.label(r.community)},
                 {"interests", r.interests},
                 {"active_topics", r.active_topics},
                 {"csd", number(r.value)}};
      st.rows.push_back({cs.label(r.community), cell(j["interests"]), cell(j["active_topics"]), cell(j["csd"])});
      csd.push_back(std::move(j));
    }
    section["topics"] = config.topics;
    section["csd"] = std::move(csd);
  }
  out["attributes"] = std::move(section);
}

// ------------------------------------------------------------------ dynamics

std::vector<std::string> labels_of(const CommunityStructure& cs, const std::vector<CommunityIndex>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(cs.label(i));
  return out;
}

void dyn_section(ReportBuilder& rb, const DynamicNetwork& dn, const AttributeTable* attrs,
                 const RunConfig& config, ojson& out) {
  ojson section;
  section["slice_count"] = dn.slice_count();
  ojson slices = ojson::array();
  for (std::size_t t = 0; t < dn.slice_count(); ++t) {
    const auto& s = dn.slice(t);
    slices.push_back({{"slice", t},
                      {"time", s.time},
                      {"node_count", s.graph->node_count()},
                      {"link_count", s.graph->link_count()},
                      {"community_count", s.communities.count()}});
  }
  section["slices"] = std::move(slices);
  if (dn.slice_count() < 2)
    rb.warn("single_slice", "dynamic network has a single slice: no transitions, events or temporal measures");

  auto matches = match_communities(dn, config.theta);
  auto events = detect_events(dn, matches, config.gamma);
  auto time_of = [&](std::size_t t) { return std::to_string(dn.slice(t).time); };

  ojson transitions = ojson::array();
  for (const auto& tm : matches.transitions) {
    const auto& a = dn.slice(tm.from_slice).communities;
    const auto& b = dn.slice(tm.from_slice + 1).communities;
    ojson pairs = ojson::array();
    std::size_t pruned = 0;
    for (const auto& p : tm.pairs) {
      if (!p.retained) ++pruned;
      pairs.push_back({{"source", a.label(p.source)},
                       {"target", b.label(p.target)},
                       {"jaccard", number(p.jaccard)},
                       {"retained", p.retained}});
    }
    if (pruned > 0)
      rb.warn("many_to_many_pruned", "transition " + time_of(tm.from_slice) + "->" + time_of(tm.from_slice + 1) +
                                         ": " + std::to_string(pruned) +
                                         " weakest overlap(s) pruned to resolve many-to-many matches");
    transitions.push_back({{"from_slice", tm.from_slice},
                           {"from_time", dn.slice(tm.from_slice).time},
                           {"to_time", dn.slice(tm.from_slice + 1).time},
                           {"matches", std::move(pairs)}});
  }
  section["transitions"] = std::move(transitions);

  auto& et = rb.table("events", {"t", "kind", "sources", "targets", "J", "L"});
  ojson event_list = ojson::array();
  for (const auto& e : events) {
    const auto sources = labels_of(dn.slice(e.from_slice).communities, e.sources);
    const auto targets = labels_of(dn.slice(e.from_slice + 1).communities, e.targets);
    event_list.push_back({{"from_slice", e.from_slice},
                          {"from_time", dn.slice(e.from_slice).time},
                          {"to_time", dn.slice(e.from_slice + 1).time},
                          {"kind", to_string(e.kind)},
                          {"sources", sources},
                          {"targets", targets},
                          {"joining", e.joining},
                          {"leaving", e.leaving}});
    et.rows.push_back({time_of(e.from_slice), to_string(e.kind), join(sources, ','), join(targets, ','),
                       std::to_string(e.joining), std::to_string(e.leaving)});
  }
  section["events"] = std::move(event_list);

  const std::size_t transition_count = dn.slice_count() - 1;
  auto census = event_census(events, transition_count);
  {
    std::vector<std::string> header{"t"};
    for (auto k : all_event_kinds) header.push_back(to_string(k));
    auto& ct = rb.table("census", header);
    ojson per = ojson::array();
    for (std::size_t t = 0; t < census.per_transition.size(); ++t) {
      ojson counts;
      std::vector<std::string> row{time_of(t)};
      for (std::size_t k = 0; k < all_event_kinds.size(); ++k) {
        counts[to_string(all_event_kinds[k])] = census.per_transition[t][k];
        row.push_back(std::to_string(census.per_transition[t][k]));
      }
      per.push_back({{"from_slice", t}, {"from_time", dn.slice(t).time}, {"counts", std::move(counts)}});
      ct.rows.push_back(std::move(row));
    }
    ojson totals;
    std::vector<std::string> row{"total"};
    for (std::size_t k = 0; k < all_event_kinds.size(); ++k) {
      totals[to_string(all_event_kinds[k])] = census.totals[k];
      row.push_back(std::to_string(census.totals[k]));
    }
    ct.rows.push_back(std::move(row));
    section["census"] = {{"per_transition", std::move(per)}, {"totals", std::move(totals)}};
  }

  auto& tt = rb.table("timelines", {"timeline", "birth_t", "last_t", "lifetime", "stationarity"});
  auto& pt = rb.table("timeline_presence", {"timeline", "t", "community_label", "size", "age",
                                            "auto_correlation_from_birth", "popularity_index", "member_stability"});
  ojson timelines = ojson::array();
  for (const auto& tl : matches.timelines) {
    ojson presence = ojson::array();
    for (const auto& p : tl.presence) {
      const auto& cs = dn.slice(p.slice).communities;
      auto pi = popularity_index(events, tl, p.slice);
      ojson entry = {{"slice", p.slice},
                     {"time", dn.slice(p.slice).time},
                     {"community_label", cs.label(p.community)},
                     {"size", cs.size(p.community)},
                     {"age", tl.age(p.slice)},
                     {"auto_correlation_from_birth", number(auto_correlation(tl, dn, tl.birth(), p.slice))},
                     {"popularity_index", pi ? ojson(*pi) : ojson(nullptr)},
                     {"member_stability", number(member_stability(events, tl, dn, p.slice))}};
      pt.rows.push_back({std::to_string(tl.id), time_of(p.slice), cell(entry["community_label"]),
                         cell(entry["size"]), cell(entry["age"]), cell(entry["auto_correlation_from_birth"]),
                         cell(entry["popularity_index"]), cell(entry["member_stability"])});
      presence.push_back(std::move(entry));
    }
    auto zeta = stationarity(tl, dn, config.stationarity);
    ojson j = {{"id", tl.id},
               {"birth_slice", tl.birth()},
               {"birth_time", dn.slice(tl.birth()).time},
               {"last_slice", tl.last()},
               {"last_time", dn.slice(tl.last()).time},
               {"lifetime", tl.lifetime()},
               {"stationarity", number(zeta)},
               {"presence", std::move(presence)}};
    tt.rows.push_back({std::to_string(tl.id), time_of(tl.birth()), time_of(tl.last()),
                       std::to_string(tl.lifetime()), cell(j["stationarity"])});
    timelines.push_back(std::move(j));
  }
  section["timelines"] = std::move(timelines);

  if (config.per_slice) {
    ojson per_slice = ojson::array();
    auto& sh = rb.table("slice_homophily", {"t", "attribute", "coefficient", "links_used", "links_skipped"});
    for (std::size_t t = 0; t < dn.slice_count(); ++t) {
      const auto& s = dn.slice(t);
      ojson entry = {{"slice", t}, {"time", s.time}};
      topo_section(rb, s.communities, false, entry, "slice_", time_of(t));
      if (attrs) {
        ojson hs = ojson::array();
        for (const auto& name : attrs->names()) {
          auto h = homophily(s.communities, *attrs, name);
          auto j = homophily_json(h, nullptr);
          sh.rows.push_back({time_of(t), name, cell(j["coefficient"]), cell(j["links_used"]),
                             cell(j["links_skipped"])});
          hs.push_back(std::move(j));
        }
        entry["homophily"] = std::move(hs);
      }
      per_slice.push_back(std::move(entry));
    }
    section["per_slice"] = std::move(per_slice);
  }
  out["dynamic"] = std::move(section);
}

}  // namespace

KindOverrides parse_kind_overrides(const std::string& text) {
  KindOverrides out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::config, "attribute type override '" + item + "' is not name=kind");
    const std::string name = item.substr(0, eq), kind = item.substr(eq + 1);
    if (kind == "nominal") {
      out[name] = AttributeKind::nominal;
    } else if (kind == "numeric") {
      out[name] = AttributeKind::numeric;
    } else {
      throw Error(Errc::config, "attribute kind must be nominal or numeric, got '" + kind + "'");
    }
  }
  return out;
}

Report build_report(const RunConfig& config) {
  const std::string& cmd = config.command;
  if (cmd != "topo" && cmd != "attr" && cmd != "dyn" && cmd != "ncp" && cmd != "all")
    throw Error(Errc::config, "unknown command '" + cmd + "'");
  if (!(config.alpha > 0 && config.alpha < 1)) throw Error(Errc::config, "--alpha must lie in (0, 1)");
  if (!(config.theta > 0 && config.theta <= 1)) throw Error(Errc::config, "--theta must lie in (0, 1]");
  if (!(config.gamma >= 0)) throw Error(Errc::config, "--gamma must be non-negative");

  const bool static_part = cmd != "dyn";
  const bool wants_attr = cmd == "attr" || (cmd == "all" && config.attributes);
  const bool wants_dyn = cmd == "dyn" || (cmd == "all" && config.manifest);
  if (static_part && !config.edges) throw Error(Errc::config, "--edges is required for '" + cmd + "'");
  if (static_part && !config.communities) throw Error(Errc::config, "--communities is required for '" + cmd + "'");
  if (cmd == "attr" && !config.attributes) throw Error(Errc::config, "--attributes is required for 'attr'");
  if (cmd == "dyn" && !config.manifest) throw Error(Errc::config, "--manifest is required for 'dyn'");
  if (!config.topics.empty() && !config.attributes) throw Error(Errc::config, "--topics needs --attributes");
  const KindOverrides overrides = parse_kind_overrides(config.attr_types);

  ReportBuilder rb(config);
  ojson sections = ojson::object();

  std::optional<CommunityStructure> cs;
  if (static_part) {
    auto graph = with_source(*config.edges, [&] {
      auto in = open_input(*config.edges);
      return load_graph(in);
    });
    rb.input("edges", *config.edges);
    rb.warn(graph.warnings);
    auto shared = std::make_shared<const Graph>(std::move(graph.graph));
    cs = with_source(*config.communities, [&] {
      auto in = open_input(*config.communities);
      return load_communities(in, shared);
    });
    rb.input("communities", *config.communities);
  }

  std::optional<LoadedAttributes> attrs;
  if (config.attributes && (wants_attr || (wants_dyn && config.per_slice))) {
    attrs = with_source(*config.attributes, [&] {
      auto in = open_input(*config.attributes);
      return load_attributes(in, overrides);
    });
    rb.input("attributes", *config.attributes);
    rb.warn(attrs->warnings);
  }

  std::optional<LoadedDynamicNetwork> dyn;
  if (wants_dyn) {
    dyn.emplace(with_source(*config.manifest, [&] { return load_dynamic_network(*config.manifest); }));
    rb.input("manifest", *config.manifest);
    auto in = open_input(*config.manifest);
    for (const auto& e : parse_manifest(in, config.manifest->parent_path())) {
      rb.input("slice:" + std::to_string(e.time) + ":edges", e.edges);
      rb.input("slice:" + std::to_string(e.time) + ":communities", e.partition);
    }
    rb.warn(dyn->warnings);
  }

  if (attrs) {
    if (cs) {
      with_source(*config.attributes, [&] {
        attrs->table.validate_against(cs->graph());
        return 0;
      });
    } else if (dyn) {
      GraphBuilder all_nodes;
      for (const auto& s : dyn->network.slices())
        for (const auto& id : s.graph->ids()) all_nodes.add_node(id);
      auto known = std::move(all_nodes).build();
      with_source(*config.attributes, [&] {
        attrs->table.validate_against(known);
        return 0;
      });
    }
  }

  if (cmd == "topo" || cmd == "all") topo_section(rb, *cs, config.node_level, sections);
  if (cmd == "ncp" || cmd == "all") {
    if (cmd == "ncp") sections["structure"] = structure_json(*cs);
    ncp_section(rb, *cs, config.ncp_extremum, sections);
  }
  if (wants_attr) attr_section(rb, *cs, attrs->table, config, sections);
  if (wants_dyn) dyn_section(rb, dyn->network, attrs ? &attrs->table : nullptr, config, sections);

  return rb.finish(std::move(sections));
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::json) {
    const std::string text = report.document.dump(2) + "\n";
    if (!config.output) {
      out << text;
      out.flush();
      return;
    }
    std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::io, "cannot write '" + config.output->string() + "'");
    file << text;
    if (!file) throw Error(Errc::io, "failed writing '" + config.output->string() + "'");
    return;
  }
  if (!config.output) throw Error(Errc::config, "--format tsv needs --output DIRECTORY");
  std::error_code ec;
  std::filesystem::create_directories(*config.output, ec);
  if (ec || !std::filesystem::is_directory(*config.output))
    throw Error(Errc::io, "cannot create directory '" + config.output->string() + "'");
  for (const auto& [name, table] : report.tables) {
    const auto path = *config.output / (name + ".tsv");
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::io, "cannot write '" + path.string() + "'");
    file << join(table.header, '\t') << '\n';
    for (const auto& row : table.rows) file << join(row, '\t') << '\n';
    if (!file) throw Error(Errc::io, "failed writing '" + path.string() + "'");
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 initialisation failed");
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace commscope
