#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscope/attribute_table.hpp"
#include "commscope/graph.hpp"
#include "commscope/warning.hpp"

namespace commscope {

struct MajorityValue {
  std::string value;
  /// Share of the community's non-missing entries holding `value`.
  double share = 0;
  std::size_t count = 0;
  std::size_t non_missing = 0;
};

/// Modal value per community (ties go to the lexicographically smallest);
/// empty when all of a community's values are missing.
std::vector<std::optional<MajorityValue>> majority_profile(const CommunityStructure& cs,
                                                           const AttributeTable& attrs,
                                                           std::string_view attribute);

/// A statistic that may legitimately be +infinity (e.g. F with zero
/// within-group variance). Reports serialize the infinite case as null plus a
/// flag.
struct Statistic {
  std::optional<double> value;
  bool infinite = false;
};

struct AssociationResult {
  std::string attribute;
  std::string test;  // "chi_square" or "anova"
  Statistic statistic;
  double df1 = 0;
  double df2 = 0;  // anova only
  std::optional<double> p_value;
  std::optional<double> phi;
  std::optional<double> cramers_v;
  std::optional<double> goodman_kruskal_lambda;
  std::optional<double> eta_squared;
  std::size_t observations = 0;
  std::size_t excluded_missing = 0;
  std::size_t excluded_communities = 0;
  std::vector<std::optional<MajorityValue>> majority;
  Warnings warnings;
};

/// Pearson chi-square of communities x attribute values. Communities without
/// any non-missing value are left out of the table.
AssociationResult chi_square_association(const CommunityStructure& cs, const AttributeTable& attrs,
                                         std::string_view attribute);

/// Chi-square and effect sizes from a contingency table given directly.
/// Rows and columns must all have non-zero totals.
AssociationResult chi_square_from_table(const std::vector<std::vector<std::size_t>>& table);

/// One-way ANOVA of a numeric attribute across communities.
AssociationResult anova_association(const CommunityStructure& cs, const AttributeTable& attrs,
                                    std::string_view attribute);

/// One-way ANOVA over explicit groups.
AssociationResult anova_from_groups(const std::vector<std::vector<double>>& groups);

struct OverExpressionFinding {
  CommunityIndex community = 0;
  std::string attribute;
  std::string value;
  std::size_t observed = 0;
  double expected = 0;
  double p_value = 1;
  double corrected_p_value = 1;
  bool over_expressed = false;
};

/// Right-tail hypergeometric test of every (community, value) pair with
/// Bonferroni correction over the pairs tested. Ordered by community, then value.
std::vector<OverExpressionFinding> over_expression(const CommunityStructure& cs,
                                                   const AttributeTable& attrs,
                                                   std::string_view attribute, double alpha = 0.01);

struct HomophilyResult {
  std::string attribute;
  /// Empty for the whole graph.
  std::optional<CommunityIndex> community;
  std::optional<double> coefficient;
  std::size_t links_used = 0;
  std::size_t links_skipped = 0;
};

/// Assortativity over links (both orientations). Nominal attributes use the
/// chance-corrected agreement of the mixing matrix, numeric ones the Pearson
/// correlation of endpoint values. With `community` set only that community's
/// internal links count.
HomophilyResult homophily(const CommunityStructure& cs, const AttributeTable& attrs,
                          std::string_view attribute,
                          std::optional<CommunityIndex> community = std::nullopt);

/// Whole-graph homophily without a partition.
HomophilyResult homophily(const Graph& graph, const AttributeTable& attrs,
                          std::string_view attribute);

struct CsdResult {
  CommunityIndex community = 0;
  std::size_t interests = 0;       // r_i
  std::size_t active_topics = 0;   // q_i
  std::optional<double> value;
};

/// Community similarity degree over binary topic attributes. Missing topic
/// values count as no interest.
std::vector<CsdResult> community_similarity_degree(const CommunityStructure& cs,
                                                   const AttributeTable& attrs,
                                                   std::span<const std::string> topics);

/// (r/q - 1) / (n - 1) from raw counts; empty when q = 0 or n < 2.
std::optional<double> csd_value(std::size_t interests, std::size_t active_topics,
                                std::size_t members);

}  // namespace commscope
