#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scoreid/domain.hpp"
#include "scoreid/scoring_rule.hpp"

namespace scoreid {

/// Slack allowed on rule feasibility constraints.
inline constexpr double kFeasibilityTolerance = 1e-7;
/// Slack allowed on algebraic identities.
inline constexpr double kIdentityTolerance = 1e-9;
/// Smallest oracle margin accepted when constructing oracle rules.
inline constexpr double kDefaultMarginFloor = 1e-3;

double score(const ScoringRule& rule, const SupportSet& support, std::size_t state, std::size_t report);

/// sum_i weights[i] * values[i]: the expected payment when beliefs follow
/// `weights` and the agent reports truthfully.
double expected_payment(const ScoringRule& rule, std::span<const double> weights);

/// g(k, S) = v_S(k) - c_k.
double agent_profit(const Instance& inst, std::size_t k, const ScoringRule& rule);

/// (1 - lambda) * a + lambda * b, componentwise.
ScoringRule mix(const ScoringRule& a, const ScoringRule& b, double lambda);

/// Savage rule whose score at report i is `scores[i][w]`: values are
/// <sigma_i, scores[i]> and the score vector itself is the subgradient.
ScoringRule rule_from_scores(const SupportSet& support, const std::vector<std::vector<double>>& scores);

/// score(rule, w, i) for every i, w.
std::vector<std::vector<double>> score_matrix(const ScoringRule& rule, const SupportSet& support);

struct RuleViolation {
    enum class Kind { kShape, kConvexity, kBound, kProperness };
    Kind kind;
    std::size_t first;   // i (convexity/properness) or report (bound)
    std::size_t second;  // j (convexity/properness) or state (bound)
    double amount;       // how far past the tolerance

    std::string describe() const;
};

/// Empty when the rule is convex over the support, its scores lie in
/// [0, score_bound], and truthful reporting maximizes expected score at every
/// support point (all within kFeasibilityTolerance).
std::vector<RuleViolation> check_proper(const ScoringRule& rule, const SupportSet& support, double score_bound);

inline bool is_proper(const ScoringRule& rule, const SupportSet& support, double score_bound) {
    return check_proper(rule, support, score_bound).empty();
}

struct OracleSet {
    std::vector<ScoringRule> rules;
    std::vector<double> margins;  // achieved min_{k' != k} g(k, S_k) - g(k', S_k)

    double min_margin() const;
};

/// One margin-maximizing rule per arm. Throws OracleInfeasible for the first
/// arm whose best margin is <= margin_floor. Oracle fields of `inst` are ignored.
OracleSet build_oracle_rules(const Instance& inst, double margin_floor = kDefaultMarginFloor);

/// Installs oracles on `inst`. The instance margin is set just below the
/// smallest achieved margin, so the strict inequality holds with room for
/// rounding.
void attach_oracles(Instance& inst, const OracleSet& oracles);

}  // namespace scoreid
