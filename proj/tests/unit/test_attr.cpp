#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>


#include "commscope/attr_measures.hpp"
#include "commscope/error.hpp"
#include "oracle.hpp"

using namespace commscope;

namespace {

struct Fixture {
  oracle::Instance inst;
  CommunityStructure cs;
  AttributeTable attrs;
};

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io;
}

// Mixing-matrix assortativity from both orientations of
// every in-scope link.
std::optional<double> nominal_assortativity(const oracle::Instance& g, const std::vector<std::optional<int>>& val,
                                            int k, std::optional<int> community) {
  std::vector<std::vector<double>> e(k, std::vector<double>(k, 0));
  double total = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v) {
      if (!g.adj[u][v] || !val[u] || !val[v]) continue;
      if (community && (g.part[u] != *community || g.part[v] != *community)) continue;
      e[*val[u]][*val[v]] += 1;
      total += 1;
    }
  if (total == 0) return std::nullopt;
  double trace = 0, sq = 0;
  for (int i = 0; i < k; ++i) {
    trace += e[i][i] / total;
    double a = 0;
    for (int j = 0; j < k; ++j) a += e[i][j] / total;
    sq += a * a;
  }
  if (sq == 1) return std::nullopt;
  return (trace - sq) / (1 - sq);
}

std::optional<double> numeric_assortativity(const oracle::Instance& g, const std::vector<std::optional<double>>& val) {
  std::vector<double> xs, ys;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v] && val[u] && val[v]) {
        xs.push_back(*val[u]);
        ys.push_back(*val[v]);
      }
  if (xs.empty()) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

CommunityStructure single_community(std::size_t n) {
  oracle::Instance g;
  g.n = n;
  g.lambda = 1;
  g.part.assign(n, 0);
  g.adj.assign(n, std::vector<bool>(n, false));
  return oracle::to_structure(g);
}

}  // namespace

TEST(ChiSquare, TwoByTwoTable) {
  auto r = chi_square_from_table({{10, 20}, {20, 10}});
  EXPECT_NEAR(*r.statistic.value, 6.6667, 1e-4);
  EXPECT_NEAR(*r.statistic.value, 20.0 / 3.0, 1e-12);
  EXPECT_EQ(r.df1, 1.0);
  EXPECT_NEAR(*r.phi, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(*r.cramers_v, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(*r.goodman_kruskal_lambda, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(*r.p_value, std::erfc(std::sqrt(20.0 / 3.0 / 2.0)), 1e-12);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ChiSquare, IndependentTableAndWarnings) {
  auto r = chi_square_from_table({{1, 2}, {2, 4}});
  EXPECT_NEAR(*r.statistic.value, 0.0, 1e-15);
  EXPECT_EQ(*r.goodman_kruskal_lambda, 0.0);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.warnings[0].code, "low_expected_count");
}

TEST(ChiSquare, DegenerateTables) {
  EXPECT_EQ(code_of([] { chi_square_from_table({{3, 4}}); }), Errc::degenerate_table);
  EXPECT_EQ(code_of([] { chi_square_from_table({{3}, {4}}); }), Errc::degenerate_table);
  EXPECT_EQ(code_of([] { chi_square_from_table({{0, 0}, {4, 1}}); }), Errc::degenerate_table);
}

TEST(ChiSquare, CramersVBoundedOnRandomTables) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t rows = 2 + rng() % 4, cols = 2 + rng() % 4;
    std::vector<std::vector<std::size_t>> t(rows, std::vector<std::size_t>(cols));
    for (auto& row : t)
      for (auto& c : row) c = 1 + rng() % 20;
    auto r = chi_square_from_table(t);
    EXPECT_GE(*r.cramers_v, 0.0);
    EXPECT_LE(*r.cramers_v, 1.0);
    EXPECT_GE(*r.goodman_kruskal_lambda, 0.0);
    EXPECT_LE(*r.goodman_kruskal_lambda, 1.0);
    EXPECT_GE(*r.p_value, 0.0);
    EXPECT_LE(*r.p_value, 1.0);
  }
}

TEST(Anova, TwoGroups) {
  auto r = anova_from_groups({{1, 2}, {3, 4}});
  EXPECT_EQ(*r.statistic.value, 8.0);
  EXPECT_EQ(r.df1, 1.0);
  EXPECT_EQ(r.df2, 2.0);
  EXPECT_NEAR(*r.eta_squared, 0.8, 1e-15);
  EXPECT_NEAR(*r.p_value, 1 - std::sqrt(0.8), 1e-12);
}

TEST(Anova, ConstantGroups) {
  auto equal = anova_from_groups({{2, 2}, {2, 2, 2}});
  EXPECT_FALSE(equal.statistic.value.has_value());
  EXPECT_FALSE(equal.statistic.infinite);
  EXPECT_FALSE(equal.p_value.has_value());
  EXPECT_FALSE(equal.eta_squared.has_value());
  auto apart = anova_from_groups({{1, 1}, {5, 5}});
  EXPECT_TRUE(apart.statistic.infinite);
  EXPECT_EQ(*apart.p_value, 0.0);
  EXPECT_EQ(*apart.eta_squared, 1.0);
  EXPECT_EQ(code_of([] { anova_from_groups({{1, 2, 3}}); }), Errc::insufficient_data);
  EXPECT_EQ(code_of([] { anova_from_groups({{1}, {2}}); }), Errc::insufficient_data);
}

TEST(Association, FromPartitionSkipsMissingAndPicksTest) {
  // Four communities of two; the fourth has no values at all.
  oracle::Instance g;
  g.n = 8;
  g.lambda = 4;
  g.part = {0, 0, 1, 1, 2, 2, 3, 3};
  g.adj.assign(8, std::vector<bool>(8, false));
  auto cs = oracle::to_structure(g);
  AttributeTable attrs;
  attrs.add_nominal("c", {{"v0", "x"}, {"v1", "x"}, {"v2", "y"}, {"v3", "y"}, {"v4", "x"}});
  attrs.add_numeric("z", {{"v0", 1}, {"v1", 2}, {"v2", 3}, {"v3", 4}});
  auto chi = chi_square_association(cs, attrs, "c");
  EXPECT_EQ(chi.test, "chi_square");
  EXPECT_EQ(chi.observations, 5u);
  EXPECT_EQ(chi.excluded_missing, 3u);
  EXPECT_EQ(chi.excluded_communities, 1u);
  ASSERT_EQ(chi.majority.size(), 4u);
  EXPECT_EQ(chi.majority[0]->value, "x");
  EXPECT_EQ(chi.majority[0]->share, 1.0);
  EXPECT_EQ(chi.majority[2]->non_missing, 1u);
  EXPECT_FALSE(chi.majority[3].has_value());
  auto an = anova_association(cs, attrs, "z");
  EXPECT_EQ(an.test, "anova");
  EXPECT_EQ(*an.statistic.value, 8.0);
  EXPECT_EQ(an.excluded_communities, 2u);
  EXPECT_EQ(code_of([&] { anova_association(cs, attrs, "c"); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([&] { chi_square_association(cs, attrs, "nope"); }), Errc::config);
}

TEST(OverExpression, SignificantValueAfterBonferroni) {
  // 20 members with known values; community 0 holds every "rare" member.
  oracle::Instance g;
  g.n = 20;
  g.lambda = 2;
  g.adj.assign(20, std::vector<bool>(20, false));
  g.part.assign(20, 1);
  for (int u = 0; u < 5; ++u) g.part[u] = 0;
  auto cs = oracle::to_structure(g);
  std::unordered_map<std::string, std::string> vals;
  for (std::size_t u = 0; u < 20; ++u) vals[oracle::node_name(u)] = u < 5 ? "rare" : "common";
  AttributeTable attrs;
  attrs.add_nominal("kind", vals);
  auto findings = over_expression(cs, attrs, "kind", 0.01);
  ASSERT_EQ(findings.size(), 4u);
  // Ordered by community then value: (0,common), (0,rare), (1,common), (1,rare).
  const auto& f = findings[1];
  EXPECT_EQ(f.value, "rare");
  EXPECT_EQ(f.observed, 5u);
  EXPECT_EQ(f.expected, 1.25);
  EXPECT_NEAR(f.p_value, 1.0 / 15504.0, 1e-12);
  EXPECT_NEAR(f.corrected_p_value, 4.0 / 15504.0, 1e-12);
  EXPECT_TRUE(f.over_expressed);
  EXPECT_FALSE(findings[0].over_expressed);
  EXPECT_EQ(findings[0].p_value, 1.0);
  EXPECT_EQ(code_of([&] { over_expression(cs, attrs, "kind", 1.5); }), Errc::config);
  EXPECT_EQ(code_of([&] { over_expression(cs, attrs, "kind", 0.0); }), Errc::config);
}

TEST(Homophily, PerfectAssortativeAndDisassortative) {
  // Two triangles joined by nothing: values split by triangle.
  oracle::Instance g;
  g.n = 6;
  g.lambda = 1;
  g.part.assign(6, 0);
  g.adj.assign(6, std::vector<bool>(6, false));
  auto link = [&](int u, int v) { g.adj[u][v] = g.adj[v][u] = true; };
  link(0, 1), link(1, 2), link(0, 2), link(3, 4), link(4, 5), link(3, 5);
  auto cs = oracle::to_structure(g);
  AttributeTable attrs;
  attrs.add_nominal("side", {{"v0", "L"}, {"v1", "L"}, {"v2", "L"}, {"v3", "R"}, {"v4", "R"}, {"v5", "R"}});
  EXPECT_EQ(*homophily(cs, attrs, "side").coefficient, 1.0);

  oracle::Instance bip;
  bip.n = 4;
  bip.lambda = 1;
  bip.part.assign(4, 0);
  bip.adj.assign(4, std::vector<bool>(4, false));
  bip.adj[0][2] = bip.adj[2][0] = bip.adj[1][3] = bip.adj[3][1] = true;
  auto bcs = oracle::to_structure(bip);
  AttributeTable battrs;
  battrs.add_nominal("side", {{"v0", "L"}, {"v1", "L"}, {"v2", "R"}, {"v3", "R"}});
  EXPECT_EQ(*homophily(bcs, battrs, "side").coefficient, -1.0);
  battrs.add_numeric("x", {{"v0", 1}, {"v1", 2}, {"v2", 1}, {"v3", 2}});
  EXPECT_NEAR(*homophily(bcs, battrs, "x").coefficient, 1.0, 1e-15);
}

TEST(Homophily, UndefinedWithoutVariation) {
  auto cs = single_community(3);
  AttributeTable attrs;
  attrs.add_nominal("c", {{"v0", "a"}, {"v1", "a"}});
  auto r = homophily(cs, attrs, "c");
  EXPECT_FALSE(r.coefficient.has_value());
  EXPECT_EQ(r.links_used, 0u);
}

TEST(Homophily, MatchesMixingMatrixOracle) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng() % 11;
    const int lambda = 1 + static_cast<int>(rng() % 3 % n);
    auto inst = oracle::random_instance(rng, n, std::min<int>(lambda, static_cast<int>(n)), 0.5);
    auto cs = oracle::to_structure(inst);
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<std::optional<int>> val(n);
    std::vector<std::optional<double>> num(n);
    std::unordered_map<std::string, std::string> nominal;
    std::unordered_map<std::string, double> numeric;
    for (std::size_t u = 0; u < n; ++u) {
      if (rng() % 6 == 0) continue;
      val[u] = static_cast<int>(rng() % k);
      num[u] = static_cast<double>(rng() % 7) * 0.5;
      nominal[oracle::node_name(u)] = "val" + std::to_string(*val[u]);
      numeric[oracle::node_name(u)] = *num[u];
    }
    AttributeTable attrs;
    attrs.add_nominal("c", nominal);
    attrs.add_numeric("x", numeric);
    auto got = homophily(cs, attrs, "c").coefficient;
    auto want = nominal_assortativity(inst, val, k, std::nullopt);
    ASSERT_EQ(got.has_value(), want.has_value()) << rep;
    if (want) EXPECT_NEAR(*got, *want, 1e-12);
    for (int c = 0; c < inst.lambda; ++c) {
      auto gc = homophily(cs, attrs, "c", c).coefficient;
      auto wc = nominal_assortativity(inst, val, k, c);
      ASSERT_EQ(gc.has_value(), wc.has_value());
      if (wc) EXPECT_NEAR(*gc, *wc, 1e-12);
    }
    auto gx = homophily(cs.graph(), attrs, "x").coefficient;
    auto wx = numeric_assortativity(inst, num);
    ASSERT_EQ(gx.has_value(), wx.has_value()) << rep;
    if (wx) EXPECT_NEAR(*gx, *wx, 1e-12);
  }
}

TEST(Csd, WorkedValues) {
  EXPECT_EQ(*csd_value(6, 2, 3), 1.0);
  EXPECT_EQ(*csd_value(3, 3, 3), 0.0);
  EXPECT_EQ(*csd_value(4, 2, 3), 0.5);
  EXPECT_FALSE(csd_value(0, 0, 3).has_value());
  EXPECT_FALSE(csd_value(1, 1, 1).has_value());
}

TEST(Csd, ExhaustiveBoundsAndExtremes) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t topics = 1; topics <= 3; ++topics) {
      const std::size_t cells = n * topics;
      auto cs = single_community(n);
      std::vector<std::string> names;
      for (std::size_t t = 0; t < topics; ++t) names.push_back("t" + std::to_string(t));
      for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        AttributeTable attrs;
        for (std::size_t t = 0; t < topics; ++t) {
          std::unordered_map<std::string, double> col;
          for (std::size_t u = 0; u < n; ++u) col[oracle::node_name(u)] = (mask >> (u * topics + t)) & 1u;
          attrs.add_numeric(names[t], col);
        }
        auto r = community_similarity_degree(cs, attrs, names)[0];
        bool same = true, any = false;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t t = 0; t < topics; ++t) {
            const bool here = (mask >> (u * topics + t)) & 1u;
            any |= here;
            same &= here == static_cast<bool>((mask >> t) & 1u);
          }
        if (!any) {
          EXPECT_FALSE(r.value.has_value());
          continue;
        }
        ASSERT_TRUE(r.value.has_value());
        EXPECT_GE(*r.value, 0.0) << mask;
        EXPECT_LE(*r.value, 1.0) << mask;
        EXPECT_EQ(*r.value == 1.0, same) << n << " " << topics << " " << mask;
      }
    }
}

TEST(Csd, MissingCountsAsNoInterestAndNonBinaryRejected) {
  auto cs = single_community(3);
  AttributeTable attrs;
  attrs.add_numeric("a", {{"v0", 1}, {"v1", 1}, {"v2", 1}});
  attrs.add_numeric("b", {{"v0", 1}});
  attrs.add_numeric("bad", {{"v0", 2}});
  attrs.add_nominal("word", {{"v0", "yes"}});
  std::vector<std::string> topics{"a", "b"};
  auto r = community_similarity_degree(cs, attrs, topics)[0];
  EXPECT_EQ(r.interests, 4u);
  EXPECT_EQ(r.active_topics, 2u);
  EXPECT_EQ(*r.value, 0.5);
  std::vector<std::string> bad{"bad"};
  EXPECT_EQ(code_of([&] { community_similarity_degree(cs, attrs, bad); }), Errc::type_mismatch);
  std::vector<std::string> word{"word"};
  EXPECT_EQ(code_of([&] { community_similarity_degree(cs, attrs, word); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([&] { community_similarity_degree(cs, attrs, {}); }), Errc::config);
}

TEST(ChiSquare, PhiEqualsCramersVOnTwoByTwo) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    auto r = chi_square_from_table({{1 + rng() % 30, 1 + rng() % 30}, {1 + rng() % 30, 1 + rng() % 30}});
    EXPECT_EQ(*r.phi, *r.cramers_v);
  }
}

TEST(OverExpression, InvariantUnderRelabeling) {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 6 + rng() % 20;
    auto inst = oracle::random_instance(rng, n, 1 + static_cast<int>(rng() % 4), 0.2);
    std::vector<std::string> value(n);
    for (auto& v : value) v = "v" + std::to_string(rng() % 3);
    auto findings_for = [&](const std::vector<std::size_t>& perm, const std::vector<int>& relabel) {
      // Node u of the original becomes node perm[u]; community c becomes relabel[c].
      oracle::Instance g;
      g.n = n;
      g.lambda = inst.lambda;
      g.part.assign(n, 0);
      g.adj.assign(n, std::vector<bool>(n, false));
      std::unordered_map<std::string, std::string> vals;
      for (std::size_t u = 0; u < n; ++u) {
        g.part[perm[u]] = relabel[inst.part[u]];
        vals[oracle::node_name(perm[u])] = value[u];
        for (std::size_t v = 0; v < n; ++v) g.adj[perm[u]][perm[v]] = inst.adj[u][v];
      }
      auto cs = oracle::to_structure(g);
      AttributeTable attrs;
      attrs.add_nominal("a", vals);
      std::map<std::pair<int, std::string>, std::pair<double, bool>> out;
      for (const auto& f : over_expression(cs, attrs, "a", 0.05)) {
        // Key by the original community.
        int original = static_cast<int>(std::find(relabel.begin(), relabel.end(), static_cast<int>(f.community)) -
                                        relabel.begin());
        out[{original, f.value}] = {f.corrected_p_value, f.over_expressed};
      }
      return out;
    };
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> same_labels(inst.lambda);
    std::iota(same_labels.begin(), same_labels.end(), 0);
    const auto reference = findings_for(id, same_labels);
    auto perm = id;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabel = same_labels;
    std::shuffle(relabel.begin(), relabel.end(), rng);
    EXPECT_EQ(findings_for(perm, relabel), reference);
  }
}
