// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// below; exit status is non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "commscope/attr_measures.hpp"
#include "commscope/events.hpp"
#include "commscope/io.hpp"
#include "commscope/ncp.hpp"
#include "commscope/stats.hpp"
#include "commscope/topology.hpp"
#include "dynamic_fixtures.hpp"
#include "oracle.hpp"

using namespace commscope;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kFloatTol = 1e-12;       // floating aggregates vs brute force
constexpr double kChiTol = 1e-4;          // chi-square against 6.6667
constexpr double kHyperTol = 1e-12;       // hypergeometric tail
constexpr double kTopologyBudget = 10.0;  // seconds
constexpr double kCsdBudget = 1.0;        // seconds
constexpr double kScaleBudget = 10.0;     // seconds per CLI run

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs_text(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x << " s";
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool same(std::optional<double> a, std::optional<double> b) { return a.has_value() == b.has_value() && (!a || *a == *b); }

bool near(std::optional<double> a, std::optional<double> b, double tol) {
  return a.has_value() == b.has_value() && (!a || std::abs(*a - *b) <= tol);
}

// ------------------------------------------------------------------ 1

Outcome topology_oracle() {
  Outcome o;
  std::mt19937_64 rng(1);
  const auto t0 = Clock::now();
  std::size_t checks = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    const int lambda = 1 + static_cast<int>(rng() % n);
    auto inst = oracle::random_instance(rng, n, lambda, std::uniform_real_distribution<>(0.05, 0.95)(rng));
    auto cs = oracle::to_structure(inst);
    auto check = [&](bool ok, const std::string& what) {
      ++checks;
      if (!ok) o.fail("instance " + std::to_string(rep) + ": " + what);
    };
    check(same(inter_community_proportion(cs), oracle::inter_proportion(inst)), "S");
    auto q = modularity(cs);
    check(near(q ? std::optional<double>(q->total) : std::nullopt, oracle::modularity(inst), kFloatTol), "Q");
    for (int c = 0; c < lambda; ++c) {
      check(same(link_density(cs, c), oracle::density(inst, c)), "density");
      check(same(scaled_density(cs, c), oracle::scaled_density(inst, c)), "scaled density");
      check(same(average_distance(cs, c).mean, oracle::distances(inst, c).mean), "average distance");
      check(same(hub_dominance(cs, c), oracle::hub_dominance(inst, c)), "hub dominance");
      check(near(mean_transitivity(cs, c).mean, oracle::mean_transitivity(inst, c), kFloatTol), "transitivity");
      check(same(community_conductance(cs, c), oracle::community_conductance(inst, c)), "conductance");
    }
    for (std::size_t u = 0; u < n; ++u) {
      const auto nu = static_cast<NodeIndex>(u);
      check(same(embeddedness(cs, nu), oracle::embeddedness(inst, u)), "embeddedness");
      check(same(local_transitivity(cs, nu), oracle::local_transitivity(inst, u)), "local transitivity");
      check(near(within_community_degree(cs, nu), oracle::within_degree(inst, u), kFloatTol), "z");
      check(near(participation_coefficient(cs, nu), oracle::participation(inst, u), kFloatTol), "P");
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kTopologyBudget) o.fail("took " + secs_text(secs));
  if (o.pass) o.detail = std::to_string(checks) + " comparisons in " + secs_text(secs);
  return o;
}

// ------------------------------------------------------------------ 2

oracle::Instance single(std::size_t n) {
  oracle::Instance g;
  g.n = n;
  g.lambda = 1;
  g.part.assign(n, 0);
  g.adj.assign(n, std::vector<bool>(n, false));
  return g;
}

Outcome identities() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = single(2 + rng() % 40);
    for (std::size_t v = 1; v < g.n; ++v) {
      const std::size_t u = rng() % v;
      g.adj[u][v] = g.adj[v][u] = true;
    }
    auto sd = scaled_density(oracle::to_structure(g), 0);
    if (!sd || *sd != 2.0) o.fail("tree of size " + std::to_string(g.n) + " gave " + (sd ? fmt(*sd) : "null"));
  }
  for (std::size_t n = 2; n <= 8; ++n) {
    auto g = single(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) g.adj[u][v] = g.adj[v][u] = true;
    auto sd = scaled_density(oracle::to_structure(g), 0);
    if (!sd || *sd != static_cast<double>(n)) o.fail("clique of size " + std::to_string(n));
  }
  std::size_t embedded = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng() % 11;
    auto inst = oracle::random_instance(rng, n, 1 + static_cast<int>(rng() % n), 0.4);
    auto cs = oracle::to_structure(inst);
    for (NodeIndex u = 0; u < n; ++u)
      if (auto e = embeddedness(cs, u); e && *e == 1.0) {
        ++embedded;
        if (participation_coefficient(cs, u) != 0.0) o.fail("P != 0 with e = 1");
      }
    auto whole = inst;
    whole.lambda = 1;
    whole.part.assign(n, 0);
    auto wcs = oracle::to_structure(whole);
    if (auto q = modularity(wcs); q && q->total != 0.0) o.fail("one-community Q = " + fmt(q->total));
    if (auto s = inter_community_proportion(wcs); s && *s != 0.0) o.fail("one-community S = " + fmt(*s));
  }
  if (o.pass) o.detail = "50 trees, cliques 2-8, " + std::to_string(embedded) + " fully embedded nodes";
  return o;
}

// ------------------------------------------------------------------ 3

Outcome g1_fixture() {
  Outcome o;
  GraphBuilder b;
  b.add_link("a", "b");
  b.add_link("b", "c");
  b.add_link("a", "c");
  b.add_link("a", "d");
  auto g = std::make_shared<const Graph>(std::move(b).build());
  std::vector<std::string> labels{"1", "1", "1", "2"};
  auto cs = CommunityStructure::from_labels(g, labels);
  const NodeIndex a = g->index_of("a");
  auto expect = [&](std::optional<double> got, double want, const std::string& what) {
    if (!got || *got != want) o.fail(what + " = " + (got ? fmt(*got) : "null") + ", expected " + fmt(want));
  };
  expect(inter_community_proportion(cs), 0.25, "S");
  expect(link_density(cs, 0), 1.0, "density(C1)");
  expect(hub_dominance(cs, 0), 1.0, "h(C1)");
  expect(embeddedness(cs, a), 2.0 / 3.0, "e(a)");
  expect(participation_coefficient(cs, a), 4.0 / 9.0, "P(a)");
  auto q = modularity(cs);
  expect(q ? std::optional<double>(q->total) : std::nullopt, -0.015625, "degree-volume Q");
  if (!o.pass) {
    oracle::Instance brute;
    brute.n = 4;
    brute.lambda = 2;
    brute.adj.assign(4, std::vector<bool>(4, false));
    for (auto [u, v] : g->links()) brute.adj[u][v] = brute.adj[v][u] = true;
    brute.part = {0, 0, 0, 1};
    o.detail += "; explicit null-model oracle gives " + fmt(*oracle::modularity(brute));
  }
  return o;
}

// ------------------------------------------------------------------ 4

boost::multiprecision::cpp_int choose(unsigned n, unsigned k) {
  boost::multiprecision::cpp_int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome statistics() {
  Outcome o;
  auto chi = chi_square_from_table({{10, 20}, {20, 10}});
  if (std::abs(*chi.statistic.value - 6.6667) > kChiTol) o.fail("chi2 = " + fmt(*chi.statistic.value));
  if (std::abs(*chi.phi - 1.0 / 3.0) > kFloatTol) o.fail("phi = " + fmt(*chi.phi));
  if (std::abs(*chi.cramers_v - 1.0 / 3.0) > kFloatTol) o.fail("V = " + fmt(*chi.cramers_v));

  // P[X >= 5] = C(5,5) C(15,0) / C(20,5), from exact big-integer binomials.
  const auto num = choose(5, 5) * choose(15, 0);
  const auto den = choose(20, 5);
  const double exact = num.convert_to<double>() / den.convert_to<double>();
  const double p = stats::hypergeometric_upper_tail(20, 5, 5, 5);
  if (den != 15504) o.fail("C(20,5) oracle");
  if (std::abs(p - exact) > kHyperTol || std::abs(p - 1.0 / 15504.0) > kHyperTol) o.fail("hypergeometric p = " + fmt(p));

  auto an = anova_from_groups({{1, 2}, {3, 4}});
  if (!an.statistic.value || *an.statistic.value != 8.0)
    o.fail("F = " + (an.statistic.value ? fmt(*an.statistic.value) : "null"));
  if (o.pass)
    o.detail = "chi2 " + fmt(*chi.statistic.value) + ", p " + fmt(p) + ", F " + fmt(*an.statistic.value);
  return o;
}

// ------------------------------------------------------------------ 5

Outcome csd_boundaries() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t matrices = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    auto cs = oracle::to_structure(single(n));
    for (std::size_t topics = 1; topics <= 3; ++topics) {
      std::vector<std::string> names;
      for (std::size_t t = 0; t < topics; ++t) names.push_back("t" + std::to_string(t));
      const std::size_t cells = n * topics;
      for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        ++matrices;
        AttributeTable attrs;
        for (std::size_t t = 0; t < topics; ++t) {
          std::unordered_map<std::string, double> col;
          for (std::size_t u = 0; u < n; ++u) col[oracle::node_name(u)] = (mask >> (u * topics + t)) & 1u;
          attrs.add_numeric(names[t], col);
        }
        auto v = community_similarity_degree(cs, attrs, names)[0].value;
        auto bit = [&](std::size_t u, std::size_t t) { return static_cast<bool>((mask >> (u * topics + t)) & 1u); };
        bool any = false, identical = true;
        std::vector<int> holders(topics, 0);
        std::size_t interests = 0;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t t = 0; t < topics; ++t) {
            any |= bit(u, t);
            identical &= bit(u, t) == bit(0, t);
            holders[t] += bit(u, t);
            interests += bit(u, t);
          }
        if (!any) {
          if (v) o.fail("defined with no interests");
          continue;
        }
        if (!v) {
          o.fail("undefined with interests, mask " + std::to_string(mask));
          continue;
        }
        if (*v < 0.0 || *v > 1.0) o.fail("out of range: " + fmt(*v));
        if (identical && *v != 1.0) o.fail("identical sets gave " + fmt(*v));
        // Fully disjoint single interests: each member holds one topic nobody else holds.
        bool disjoint_single = interests == n;
        for (std::size_t u = 0; u < n && disjoint_single; ++u) {
          std::size_t own = 0;
          for (std::size_t t = 0; t < topics; ++t) own += bit(u, t) && holders[t] == 1;
          disjoint_single = own == 1;
        }
        if (disjoint_single && *v != 0.0) o.fail("disjoint single interests gave " + fmt(*v));
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kCsdBudget) o.fail("took " + secs_text(secs));
  if (o.pass) o.detail = std::to_string(matrices) + " matrices in " + secs_text(secs);
  return o;
}

// ------------------------------------------------------------------ 6

Outcome event_scenario() {
  Outcome o;
  auto dn = fixtures::four_slice_scenario();
  auto m = match_communities(dn);
  auto events = detect_events(dn, m);
  std::vector<std::string> seen;
  for (const auto& e : events) seen.push_back(to_string(e.kind));
  std::multiset<std::string> got(seen.begin(), seen.end());
  if (got != std::multiset<std::string>{"birth", "growth", "split", "death"}) {
    std::string s;
    for (const auto& k : seen) s += k + " ";
    o.fail("events: " + s);
  }
  for (const auto& e : events)
    if (e.kind == EventKind::growth) {
      if (e.joining != 2 || e.leaving != 0) o.fail("growth J/L = " + std::to_string(e.joining) + "/" + std::to_string(e.leaving));
      for (const auto& tl : m.timelines)
        if (tl.community_at(e.from_slice + 1) == e.targets[0] && tl.community_at(e.from_slice) == e.sources[0]) {
          auto pi = popularity_index(events, tl, e.from_slice + 1);
          if (!pi || *pi != 2) o.fail("Pi = " + (pi ? std::to_string(*pi) : std::string("null")));
        }
    }
  auto constant = fixtures::make_network({{fixtures::names({1, 2, 3})}, {fixtures::names({1, 2, 3})}, {fixtures::names({1, 2, 3})}});
  auto cm = match_communities(constant);
  if (cm.timelines.size() != 1) {
    o.fail("constant community split into several timelines");
  } else {
    auto pairs = stationarity(cm.timelines[0], constant, StationarityDenominator::pairs);
    auto literal = stationarity(cm.timelines[0], constant, StationarityDenominator::literal);
    if (!pairs || *pairs != 1.0) o.fail("stationarity (pairs) = " + (pairs ? fmt(*pairs) : "null"));
    if (!literal || *literal != 2.0) o.fail("stationarity (literal) = " + (literal ? fmt(*literal) : "null"));
  }
  if (o.pass) o.detail = "death+birth, growth (J=2, L=0, Pi=+2), split; stationarity 1 / 2";
  return o;
}

// ------------------------------------------------------------------ 7

struct Synthetic {
  fs::path manifest, edges0, communities0, attributes;
};

Synthetic write_synthetic(const fs::path& dir) {
  constexpr std::size_t n = 10000, m = 50000, lambda = 50, slices = 3;
  std::mt19937_64 rng(7);
  std::vector<std::size_t> part(n);
  for (std::size_t u = 0; u < n; ++u) part[u] = u % lambda;
  Synthetic s;
  std::ofstream manifest(dir / "manifest.tsv");
  for (std::size_t t = 0; t < slices; ++t) {
    if (t > 0)
      for (std::size_t u = 0; u < n; ++u)
        if (rng() % 20 == 0) part[u] = rng() % lambda;
    std::vector<std::vector<std::size_t>> members(lambda);
    for (std::size_t u = 0; u < n; ++u) members[part[u]].push_back(u);
    std::unordered_set<std::uint64_t> keys;
    std::ofstream edges(dir / ("slice" + std::to_string(t) + ".edges"));
    // The first n links give every node an internal neighbor; the rest are
    // 80% internal, 20% uniform.
    for (std::size_t draw = 0; keys.size() < m; ++draw) {
      std::size_t u = draw < n ? draw : rng() % n, v;
      if (draw < n || rng() % 5 != 0) {
        const auto& c = members[part[u]];
        v = c[rng() % c.size()];
      } else {
        v = rng() % n;
      }
      if (u == v) continue;
      const std::uint64_t key = std::min(u, v) * n + std::max(u, v);
      if (!keys.insert(key).second) continue;
      edges << "n" << u << " n" << v << "\n";
    }
    std::ofstream comm(dir / ("slice" + std::to_string(t) + ".communities"));
    for (std::size_t u = 0; u < n; ++u) comm << "n" << u << "\tc" << part[u] << "\n";
    manifest << t << "\tslice" << t << ".edges\tslice" << t << ".communities\n";
  }
  std::ofstream attrs(dir / "attributes.csv");
  attrs << "node,dept,age,t1,t2\n";
  for (std::size_t u = 0; u < n; ++u) {
    attrs << "n" << u << ",d" << (rng() % 3 == 0 ? rng() % 8 : u % lambda % 8) << ",";
    if (rng() % 10) attrs << 20 + rng() % 45;
    attrs << "," << rng() % 2 << "," << (u % 2) << "\n";
  }
  s.manifest = dir / "manifest.tsv";
  s.edges0 = dir / "slice0.edges";
  s.communities0 = dir / "slice0.communities";
  s.attributes = dir / "attributes.csv";
  return s;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(COMMSCOPE_CLI) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism_and_scale() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "commscope_acceptance_scale";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto s = write_synthetic(dir);
  const std::string args = "all --node-level --per-slice --topics t1,t2 --edges " + s.edges0.string() +
                           " --communities " + s.communities0.string() + " --attributes " + s.attributes.string() +
                           " --manifest " + s.manifest.string() + " --output ";
  double worst = 0;
  for (const char* out : {"run1.json", "run2.json"}) {
    const auto t0 = Clock::now();
    const int code = run_cli(args + (dir / out).string());
    const double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    if (code != 0) o.fail(std::string(out) + " exited " + std::to_string(code));
    if (secs >= kScaleBudget) o.fail(std::string(out) + " took " + secs_text(secs));
  }
  const auto a = slurp(dir / "run1.json"), b = slurp(dir / "run2.json");
  if (a.empty() || a != b) o.fail("outputs differ or are empty");
  if (o.pass) o.detail = std::to_string(a.size()) + " identical bytes, slowest run " + secs_text(worst);
  fs::remove_all(dir);
  return o;
}

// ------------------------------------------------------------------ 8

struct Fixture {
  std::vector<std::pair<std::string, std::string>> links;
  std::vector<std::pair<std::string, std::string>> partition;
};

std::string hex(std::optional<double> x) {
  if (!x) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", *x);
  return buf;
}

// Every measure keyed by node identifiers only, so that it can be compared
// across relabelings once identifiers are mapped back.
std::map<std::string, std::string> fingerprint(const Fixture& f, const std::map<std::string, std::string>& back) {
  std::ostringstream edges, parts;
  for (const auto& [u, v] : f.links) edges << u << " " << v << "\n";
  for (const auto& [u, c] : f.partition) parts << u << "\t" << c << "\n";
  std::istringstream ein(edges.str()), pin(parts.str());
  auto g = std::make_shared<const Graph>(load_graph(ein).graph);
  auto cs = load_communities(pin, g);

  auto member_key = [&](CommunityIndex c) {
    std::vector<std::string> ids;
    for (auto u : cs.members(c)) ids.push_back(back.at(g->id(u)));
    std::sort(ids.begin(), ids.end());
    std::string k;
    for (const auto& id : ids) k += id + ",";
    return k;
  };
  std::map<std::string, std::string> fp;
  auto q = modularity(cs);
  fp["Q"] = hex(q ? std::optional<double>(q->total) : std::nullopt);
  fp["S"] = hex(inter_community_proportion(cs));
  for (const auto& s : summarize_communities(cs)) {
    std::string v;
    for (auto x : {s.density, s.scaled_density, s.distance.mean, s.distance.reachable_fraction, s.transitivity.mean,
                   s.hub_dominance, std::optional<double>(s.internal_degree_mean),
                   std::optional<double>(s.internal_degree_stddev), s.modularity_term, s.conductance})
      v += hex(x) + " ";
    v += std::to_string(s.size) + " " + std::to_string(s.internal_links) + " " + std::to_string(s.boundary_links);
    fp["community " + member_key(s.index)] = v;
  }
  for (const auto& nm : node_measures(cs)) {
    fp["node " + back.at(g->id(nm.node))] = hex(nm.embeddedness) + " " + hex(nm.within_degree) + " " +
                                             hex(nm.participation) + " " + hex(nm.transitivity) + " " +
                                             std::to_string(nm.degree) + " " + std::to_string(nm.internal_degree);
  }
  for (auto ext : {NcpExtremum::min, NcpExtremum::max})
    for (const auto& p : ncp_over_partition(cs, ext)) {
      // The witness may legitimately differ on ties; the value may not.
      fp["ncp " + std::to_string(static_cast<int>(ext)) + " " + std::to_string(p.size)] = hex(p.conductance);
    }
  return fp;
}

Outcome invariance() {
  Outcome o;
  Fixture g1{{{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "d"}}, {{"a", "1"}, {"b", "1"}, {"c", "1"}, {"d", "2"}}};
  Fixture cycle;
  for (int i = 0; i < 6; ++i) {
    cycle.links.push_back({"v" + std::to_string(i), "v" + std::to_string((i + 1) % 6)});
    cycle.partition.push_back({"v" + std::to_string(i), i < 3 ? "L" : "R"});
  }
  std::mt19937_64 rng(8);
  std::size_t runs = 0;
  for (const Fixture* base : {&g1, &cycle}) {
    std::map<std::string, std::string> identity;
    for (const auto& [u, c] : base->partition) identity[u] = u;
    const auto reference = fingerprint(*base, identity);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<std::string> ids;
      for (const auto& [u, c] : base->partition) ids.push_back(u);
      std::vector<std::string> renamed(ids.size());
      std::vector<std::size_t> perm(ids.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::map<std::string, std::string> forward, back;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        forward[ids[i]] = "n" + std::to_string(perm[i]) + "_" + std::to_string(rep);
        back[forward[ids[i]]] = ids[i];
      }
      std::map<std::string, std::string> relabel;
      for (const auto& [u, c] : base->partition)
        if (!relabel.count(c)) relabel[c] = "k" + std::to_string(rng() % 1000) + "_" + std::to_string(relabel.size());
      Fixture f;
      for (const auto& [u, v] : base->links) {
        if (rng() % 2) f.links.push_back({forward[u], forward[v]});
        else f.links.push_back({forward[v], forward[u]});
      }
      std::shuffle(f.links.begin(), f.links.end(), rng);
      for (const auto& [u, c] : base->partition) f.partition.push_back({forward[u], relabel[c]});
      std::shuffle(f.partition.begin(), f.partition.end(), rng);
      if (fingerprint(f, back) != reference) o.fail("permutation " + std::to_string(rep) + " changed a measure");
      ++runs;
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " relabeled copies";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle equivalence, topology (200 random instances, n <= 12)", topology_oracle},
      {"identities: tree/clique scaled density, P = 0 when e = 1, one-community Q = S = 0", identities},
      {"hand-computed G1 fixture (S, density, h, e, P, Q = -0.015625)", g1_fixture},
      {"statistics oracles (chi-square, hypergeometric, ANOVA)", statistics},
      {"Csd exhaustive boundary behavior (n <= 4, topics <= 3)", csd_boundaries},
      {"event scenario and stationarity", event_scenario},
      {"determinism and scale (n = 1e4, m = 5e4, 50 communities, 3 slices)", determinism_and_scale},
      {"invariance under node and community relabeling", invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << criteria[i].name;
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << "\n";
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
