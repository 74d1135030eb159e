#pragma once

#include <cstddef>
#include <vector>

#include "scoreid/agent.hpp"
#include "scoreid/domain.hpp"
#include "scoreid/scoring_rule.hpp"
#include "scoreid/transcript.hpp"

namespace scoreid {

/// Exact per-arm optima and derived quantities. Arms whose LP_k is
/// infeasible get h = -inf and are excluded from the complexity sums.
struct GroundTruth {
    std::vector<double> h_star;  // h(S*_k) per arm
    std::vector<ScoringRule> optimal_rules;
    std::vector<double> arm_utility;
    std::size_t best_arm = 0;
    double best_value = 0.0;
    std::vector<double> gaps;  // Delta_k
    std::vector<std::size_t> excluded_arms;

    /// 4 (B_S + B_u)^2 (eps^-2 + sum_{k != k*} Delta_k^-2).
    double h_delta(double epsilon, double score_bound, double utility_bound) const;
    /// Smallest gap among suboptimal arms (+inf with none).
    double min_gap() const;
};

double complexity_h_delta(const std::vector<double>& gaps, std::size_t best_arm, double epsilon, double score_bound,
                          double utility_bound);

/// 4 (B_S + B_u)^2 K / eps^2.
double complexity_h_epsilon(std::size_t num_arms, double epsilon, double score_bound, double utility_bound);

GroundTruth ground_truth(const Instance& inst);

/// h(S) under the agent's best response.
double true_h(const Instance& inst, const ScoringRule& rule, TieBreak tie_break = TieBreak::kLowestIndex);

double simple_regret(const Instance& inst, const GroundTruth& truth, const ScoringRule& rule,
                     TieBreak tie_break = TieBreak::kLowestIndex);
double simple_regret(const Instance& inst, const ScoringRule& rule);

struct EventCheck {
    std::vector<bool> per_round;
    bool held = true;
};

/// ||q_hat_k^t - q_k||_1 <= I_q^t(k) for every logged round and arm. Rounds
/// must carry diagnostics.
EventCheck event_E_held(const Instance& inst, const Transcript& transcript);

struct BoundViolations {
    std::size_t payment = 0;  // |v_hat - v| > B_S I_q on a logged rule
    std::size_t utility = 0;  // |u_hat - u| > B_u I_q
    std::size_t cost = 0;     // |C_hat - C| > I_c
    std::size_t checks = 0;

    std::size_t total() const { return payment + utility + cost; }
};

/// Checks the three estimate bounds at every logged round, using the
/// announced rule and each arm's UCB rule as the test rules for payments.
BoundViolations estimate_bound_violations(const Instance& inst, const Transcript& transcript, double tolerance = 1e-9);

struct SandwichViolations {
    std::size_t lower = 0;  // h_hat < h(S*_k) - tol
    std::size_t upper = 0;  // h_hat > u_k - v_{S_hat}(k) + 2 (B_S + B_u) I_q + tol
    std::size_t checks = 0;
};

SandwichViolations ucb_sandwich_violations(const Instance& inst, const GroundTruth& truth,
                                           const Transcript& transcript, double tolerance = 1e-6);

}  // namespace scoreid
