#include "commscope/attr_measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "commscope/error.hpp"
#include "commscope/stats.hpp"

namespace commscope {
namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Value counts per community, keyed in lexicographic order.
struct NominalTally {
  std::vector<std::map<std::string, std::size_t>> per_community;
  std::map<std::string, std::size_t> overall;
  std::vector<std::size_t> non_missing;
  std::size_t missing = 0;
};

NominalTally tally_nominal(const CommunityStructure& cs, const AttributeTable& attrs,
                           std::string_view attribute) {
  auto column = attrs.nominal_column(attribute, cs.graph());
  NominalTally t;
  t.per_community.resize(cs.count());
  t.non_missing.assign(cs.count(), 0);
  for (NodeIndex u = 0; u < column.size(); ++u) {
    if (!column[u]) {
      ++t.missing;
      continue;
    }
    const CommunityIndex c = cs.community_of(u);
    ++t.per_community[c][*column[u]];
    ++t.overall[*column[u]];
    ++t.non_missing[c];
  }
  return t;
}

std::vector<std::optional<MajorityValue>> majority_from(const NominalTally& t) {
  std::vector<std::optional<MajorityValue>> out(t.per_community.size());
  for (std::size_t c = 0; c < t.per_community.size(); ++c) {
    const auto& counts = t.per_community[c];
    if (counts.empty()) continue;
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    out[c] = MajorityValue{best->first,
                           static_cast<double>(best->second) / static_cast<double>(t.non_missing[c]),
                           best->second, t.non_missing[c]};
  }
  return out;
}

}  // namespace

std::vector<std::optional<MajorityValue>> majority_profile(const CommunityStructure& cs,
                                                           const AttributeTable& attrs,
                                                           std::string_view attribute) {
  return majority_from(tally_nominal(cs, attrs, attribute));
}

AssociationResult chi_square_from_table(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows == 0 ? 0 : table.front().size();
  if (rows < 2 || cols < 2)
    throw Error(Errc::degenerate_table, "contingency table needs at least 2 rows and 2 columns, got " +
                                            std::to_string(rows) + "x" + std::to_string(cols));
  std::vector<std::size_t> row_total(rows, 0), col_total(cols, 0);
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (table[r].size() != cols) throw Error(Errc::degenerate_table, "ragged contingency table");
    for (std::size_t c = 0; c < cols; ++c) {
      row_total[r] += table[r][c];
      col_total[c] += table[r][c];
      n += table[r][c];
    }
  }
  for (auto t : row_total)
    if (t == 0) throw Error(Errc::degenerate_table, "contingency table has an empty row");
  for (auto t : col_total)
    if (t == 0) throw Error(Errc::degenerate_table, "contingency table has an empty column");

  AssociationResult res;
  res.test = "chi_square";
  res.observations = n;
  const double total = static_cast<double>(n);
  double chi2 = 0;
  std::size_t low_cells = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected =
          static_cast<double>(row_total[r]) * static_cast<double>(col_total[c]) / total;
      if (expected < 5) ++low_cells;
      const double diff = static_cast<double>(table[r][c]) - expected;
      chi2 += diff * diff / expected;
    }
  res.statistic.value = chi2;
  res.df1 = static_cast<double>((rows - 1) * (cols - 1));
  res.p_value = stats::chi_squared_upper_tail(chi2, res.df1);
  res.phi = std::sqrt(chi2 / total);
  res.cramers_v = clamp_unit(std::sqrt(chi2 / (total * static_cast<double>(std::min(rows, cols) - 1))));

  // Goodman-Kruskal lambda, predicting the attribute value from the community.
  std::size_t row_modes = 0;
  for (const auto& row : table) row_modes += *std::max_element(row.begin(), row.end());
  const std::size_t col_mode = *std::max_element(col_total.begin(), col_total.end());
  res.goodman_kruskal_lambda = clamp_unit(static_cast<double>(row_modes - col_mode) /
                                          static_cast<double>(n - col_mode));
  if (low_cells > 0)
    res.warnings.push_back({"low_expected_count", std::to_string(low_cells) +
                                                      " contingency cell(s) have expected count below 5"});
  return res;
}

AssociationResult chi_square_association(const CommunityStructure& cs, const AttributeTable& attrs,
                                         std::string_view attribute) {
  auto tally = tally_nominal(cs, attrs, attribute);
  std::vector<std::string> values;
  for (const auto& [v, count] : tally.overall) values.push_back(v);
  std::vector<std::vector<std::size_t>> table;
  std::size_t excluded = 0;
  for (CommunityIndex c = 0; c < cs.count(); ++c) {
    if (tally.non_missing[c] == 0) {
      ++excluded;
      continue;
    }
    std::vector<std::size_t> row;
    row.reserve(values.size());
    for (const auto& v : values) {
      auto it = tally.per_community[c].find(v);
      row.push_back(it == tally.per_community[c].end() ? 0 : it->second);
    }
    table.push_back(std::move(row));
  }
  AssociationResult res;
  try {
    res = chi_square_from_table(table);
  } catch (const Error& e) {
    throw Error(e.code(), "attribute '" + std::string(attribute) + "': " + e.what());
  }
  res.attribute = std::string(attribute);
  res.excluded_missing = tally.missing;
  res.excluded_communities = excluded;
  res.majority = majority_from(tally);
  return res;
}

AssociationResult anova_from_groups(const std::vector<std::vector<double>>& groups) {
  std::size_t n = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(Errc::insufficient_data, "ANOVA group without observations");
    n += g.size();
  }
  const std::size_t k = groups.size();
  if (k < 2 || n <= k)
    throw Error(Errc::insufficient_data, "ANOVA needs at least 2 groups and more observations than groups");

  AssociationResult res;
  res.test = "anova";
  res.observations = n;
  res.df1 = static_cast<double>(k - 1);
  res.df2 = static_cast<double>(n - k);

  double grand = 0;
  for (const auto& g : groups)
    for (double x : g) grand += x;
  grand /= static_cast<double>(n);

  double ssb = 0, ssw = 0;
  bool all_constant = true;
  std::vector<double> means;
  for (const auto& g : groups) {
    double mean = 0;
    for (double x : g) mean += x;
    mean /= static_cast<double>(g.size());
    const bool constant = std::all_of(g.begin(), g.end(), [&](double x) { return x == g.front(); });
    if (constant) {
      mean = g.front();
    } else {
      all_constant = false;
      for (double x : g) ssw += (x - mean) * (x - mean);
    }
    means.push_back(mean);
    ssb += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
  }
  const bool equal_means =
      std::all_of(means.begin(), means.end(), [&](double m) { return m == means.front(); });
  if (all_constant) {
    ssw = 0;
    if (equal_means) return res;  // no variance at all: F, p and eta^2 undefined
    res.statistic.infinite = true;
    res.p_value = 0.0;
    res.eta_squared = 1.0;
    return res;
  }
  if (equal_means) ssb = 0;
  const double f = (ssb / res.df1) / (ssw / res.df2);
  res.statistic.value = f;
  res.p_value = stats::fisher_f_upper_tail(f, res.df1, res.df2);
  res.eta_squared = clamp_unit(ssb / (ssb + ssw));
  return res;
}

AssociationResult anova_association(const CommunityStructure& cs, const AttributeTable& attrs,
                                    std::string_view attribute) {
  auto column = attrs.numeric_column(attribute, cs.graph());
  std::vector<std::vector<double>> by_community(cs.count());
  std::size_t missing = 0;
  for (NodeIndex u = 0; u < column.size(); ++u) {
    if (column[u]) {
      by_community[cs.community_of(u)].push_back(*column[u]);
    } else {
      ++missing;
    }
  }
  std::vector<std::vector<double>> groups;
  std::size_t excluded = 0;
  for (auto& g : by_community) {
    if (g.empty()) {
      ++excluded;
    } else {
      // Members are visited in node order; sorting makes sums order-free.
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
  }
  AssociationResult res;
  try {
    res = anova_from_groups(groups);
  } catch (const Error& e) {
    throw Error(e.code(), "attribute '" + std::string(attribute) + "': " + e.what());
  }
  res.attribute = std::string(attribute);
  res.excluded_missing = missing;
  res.excluded_communities = excluded;
  return res;
}

std::vector<OverExpressionFinding> over_expression(const CommunityStructure& cs,
                                                   const AttributeTable& attrs,
                                                   std::string_view attribute, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error(Errc::config, "alpha must lie in (0, 1)");
  auto tally = tally_nominal(cs, attrs, attribute);
  std::size_t population = 0;
  for (auto n : tally.non_missing) population += n;

  std::vector<OverExpressionFinding> out;
  for (CommunityIndex c = 0; c < cs.count(); ++c) {
    const std::size_t draws = tally.non_missing[c];
    if (draws == 0) continue;
    for (const auto& [value, successes] : tally.overall) {
      auto it = tally.per_community[c].find(value);
      const std::size_t x = it == tally.per_community[c].end() ? 0 : it->second;
      OverExpressionFinding f;
      f.community = c;
      f.attribute = std::string(attribute);
      f.value = value;
      f.observed = x;
      f.expected = static_cast<double>(draws) * static_cast<double>(successes) /
                   static_cast<double>(population);
      f.p_value = stats::hypergeometric_upper_tail(population, successes, draws, x);
      out.push_back(std::move(f));
    }
  }
  const auto family = static_cast<double>(out.size());
  for (auto& f : out) {
    f.corrected_p_value = std::min(1.0, f.p_value * family);
    f.over_expressed = f.corrected_p_value <= alpha;
  }
  return out;
}

namespace {

HomophilyResult homophily_impl(const Graph& g, const CommunityStructure* cs,
                               const AttributeTable& attrs, std::string_view attribute,
                               std::optional<CommunityIndex> community) {
  HomophilyResult res;
  res.attribute = std::string(attribute);
  res.community = community;
  auto in_scope = [&](NodeIndex u, NodeIndex v) {
    if (!community) return true;
    return cs->community_of(u) == *community && cs->community_of(v) == *community;
  };

  if (attrs.kind(attribute) == AttributeKind::nominal) {
    auto column = attrs.nominal_column(attribute, g);
    std::map<std::string, std::size_t> code;
    for (const auto& v : column)
      if (v) code.emplace(*v, 0);
    std::size_t next = 0;
    for (auto& [v, idx] : code) idx = next++;
    std::vector<std::int64_t> row(code.size(), 0);
    std::int64_t concordant = 0;
    for (auto [u, v] : g.links()) {
      if (!in_scope(u, v)) continue;
      if (!column[u] || !column[v]) {
        ++res.links_skipped;
        continue;
      }
      ++res.links_used;
      ++row[code[*column[u]]];
      ++row[code[*column[v]]];
      if (*column[u] == *column[v]) ++concordant;
    }
    if (res.links_used == 0) return res;
    // r = (D T - S) / (T^2 - S) with T = 2L ends, D = 2 * concordant,
    // S = sum of squared marginal counts.
    const auto ends = static_cast<std::int64_t>(2 * res.links_used);
    std::int64_t squares = 0;
    for (auto a : row) squares += a * a;
    const std::int64_t denom = ends * ends - squares;
    if (denom == 0) return res;
    const std::int64_t numer = 2 * concordant * ends - squares;
    res.coefficient = std::clamp(static_cast<double>(numer) / static_cast<double>(denom), -1.0, 1.0);
    return res;
  }

  auto column = attrs.numeric_column(attribute, g);
  std::vector<std::pair<double, double>> pairs;
  for (auto [u, v] : g.links()) {
    if (!in_scope(u, v)) continue;
    if (!column[u] || !column[v]) {
      ++res.links_skipped;
      continue;
    }
    pairs.emplace_back(*column[u], *column[v]);
  }
  res.links_used = pairs.size();
  if (pairs.empty()) return res;
  double lo = pairs.front().first, hi = lo;
  for (auto [a, b] : pairs) {
    lo = std::min({lo, a, b});
    hi = std::max({hi, a, b});
  }
  if (lo == hi) return res;
  // Link order follows node order; sort so the sums do not depend on it.
  for (auto& [a, b] : pairs)
    if (b < a) std::swap(a, b);
  std::sort(pairs.begin(), pairs.end());
  double mean = 0;
  for (auto [a, b] : pairs) mean += a + b;
  mean /= static_cast<double>(2 * pairs.size());
  double cov = 0, var = 0;
  for (auto [a, b] : pairs) {
    const double da = a - mean, db = b - mean;
    cov += 2 * da * db;
    var += da * da + db * db;
  }
  res.coefficient = std::clamp(cov / var, -1.0, 1.0);
  return res;
}

}  // namespace

HomophilyResult homophily(const CommunityStructure& cs, const AttributeTable& attrs,
                          std::string_view attribute, std::optional<CommunityIndex> community) {
  if (community) cs.check(*community);
  return homophily_impl(cs.graph(), &cs, attrs, attribute, community);
}

HomophilyResult homophily(const Graph& graph, const AttributeTable& attrs,
                          std::string_view attribute) {
  return homophily_impl(graph, nullptr, attrs, attribute, std::nullopt);
}

std::optional<double> csd_value(std::size_t interests, std::size_t active_topics,
                                std::size_t members) {
  if (active_topics == 0 || members < 2) return std::nullopt;
  return static_cast<double>(interests - active_topics) /
         (static_cast<double>(active_topics) * static_cast<double>(members - 1));
}

std::vector<CsdResult> community_similarity_degree(const CommunityStructure& cs,
                                                   const AttributeTable& attrs,
                                                   std::span<const std::string> topics) {
  if (topics.empty()) throw Error(Errc::config, "community similarity degree needs at least one topic");
  const Graph& g = cs.graph();
  // flags[t][u] is 1 when node u is interested in topic t.
  std::vector<std::vector<char>> flags;
  for (const auto& topic : topics) {
    std::vector<char> f(g.node_count(), 0);
    auto bad = [&](const std::string& shown) {
      return Error(Errc::type_mismatch, "topic attribute '" + topic + "' is not binary (value '" + shown + "')");
    };
    if (attrs.kind(topic) == AttributeKind::numeric) {
      auto col = attrs.numeric_column(topic, g);
      for (NodeIndex u = 0; u < col.size(); ++u) {
        if (!col[u]) continue;
        if (*col[u] != 0.0 && *col[u] != 1.0) throw bad(std::to_string(*col[u]));
        f[u] = *col[u] == 1.0;
      }
    } else {
      auto col = attrs.nominal_column(topic, g);
      for (NodeIndex u = 0; u < col.size(); ++u) {
        if (!col[u]) continue;
        if (*col[u] != "0" && *col[u] != "1") throw bad(*col[u]);
        f[u] = *col[u] == "1";
      }
    }
    flags.push_back(std::move(f));
  }
  std::vector<CsdResult> out;
  out.reserve(cs.count());
  for (CommunityIndex c = 0; c < cs.count(); ++c) {
    CsdResult r;
    r.community = c;
    for (const auto& f : flags) {
      std::size_t interested = 0;
      for (NodeIndex u : cs.members(c)) interested += f[u];
      r.interests += interested;
      if (interested > 0) ++r.active_topics;
    }
    r.value = csd_value(r.interests, r.active_topics, cs.size(c));
    out.push_back(r);
  }
  return out;
}

}  // namespace commscope
