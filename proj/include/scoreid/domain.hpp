#pragma once

#include <cstddef>
#include <vector>

#include "scoreid/scoring_rule.hpp"

namespace scoreid {

/// Tolerance on probability vectors summing to one.
inline constexpr double kProbabilityTolerance = 1e-9;
/// Minimum L1 distance between two distinct support beliefs.
inline constexpr double kDistinctBeliefTolerance = 1e-9;

struct Belief {
    std::vector<double> probs;

    std::size_t num_states() const { return probs.size(); }
};

/// Principal utility u(w, d), stored row-major as state x decision.
struct UtilityModel {
    std::size_t n_states = 0;
    std::size_t n_decisions = 0;
    std::vector<double> u;
    double bound = 1.0;

    double at(std::size_t state, std::size_t decision) const { return u[state * n_decisions + decision]; }
};

/// The finite belief support Sigma together with the principal's value of
/// each belief under its best decision.
struct SupportSet {
    std::vector<Belief> beliefs;
    std::vector<double> u_at;
    std::vector<std::size_t> best_decision;

    std::size_t size() const { return beliefs.size(); }
};

/// Builds the support and fills u_at / best_decision from `utility`.
SupportSet make_support(std::vector<Belief> beliefs, const UtilityModel& utility);

/// Expected utility of belief i under the best decision (lowest index on ties).
double principal_utility_at(const SupportSet& support, const UtilityModel& utility, std::size_t i);

/// Lowest-index decision maximizing <sigma_i, u(., d)>.
std::size_t best_decision_at(const Belief& belief, const UtilityModel& utility);

struct Arm {
    std::vector<double> q;  // distribution over support indices
    double cost = 0.0;
};

struct Instance {
    UtilityModel utility;
    SupportSet support;
    std::vector<Arm> arms;
    double score_bound = 1.0;
    std::vector<ScoringRule> oracle_rules;
    double oracle_margin = 0.0;

    std::size_t num_arms() const { return arms.size(); }
    std::size_t support_size() const { return support.size(); }
    std::size_t num_states() const { return utility.n_states; }
    double utility_bound() const { return utility.bound; }

    /// u_k = sum_i q_k(i) u(sigma_i).
    double arm_utility(std::size_t k) const;
};

/// Checks everything except the oracle rules. Throws ValidationError.
void validate_domain(const Instance& inst);

/// Full check: domain data, oracle rule shapes, properness, and the strict
/// oracle margin for every ordered arm pair. Throws ValidationError.
void validate_instance(const Instance& inst);

/// Divides by the sum if it is within kProbabilityTolerance of one; throws
/// ValidationError(kSimplex) otherwise. Entries must already be in [0, 1].
void normalize_probabilities(std::vector<double>& probs, const char* what);

}  // namespace scoreid
