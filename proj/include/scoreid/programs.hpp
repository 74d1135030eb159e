#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scoreid/domain.hpp"
#include "scoreid/estimation.hpp"
#include "scoreid/lp.hpp"
#include "scoreid/matrix.hpp"
#include "scoreid/scoring_rule.hpp"

namespace scoreid {

/// Rule variables inside a linear program. The rule is parameterized by its
/// score menu s[i][w] = S(w, i) in [0, B_S]; with the subgradient gauge fixed
/// to g_i = s_i this is the Savage form with G_i = <sigma_i, s_i>, and
/// convexity over the support becomes <sigma_j, s_j> >= <sigma_j, s_i>.
class RuleBlock {
public:
    /// Adds M * n_states score variables and the M (M - 1) convexity rows.
    RuleBlock(lp::LinearProgram& program, const SupportSet& support, double score_bound);

    /// row += scale * sum_i weights[i] G_i.
    void add_payment(std::vector<double>& row, std::span<const double> weights, double scale = 1.0) const;

    ScoringRule extract(const std::vector<double>& x) const;

    std::size_t variable(std::size_t i, std::size_t w) const { return first_ + i * n_states_ + w; }

private:
    const SupportSet* support_;
    std::size_t first_;
    std::size_t n_states_;
};

/// Called with each constructed program (arm index, program); used for dumps.
using ProgramSink = std::function<void(std::size_t, const lp::LinearProgram&)>;

struct ArmOptimum {
    double h = 0.0;
    ScoringRule rule;
};

/// LP_k: maximize u_k - sum_i w_k(i) G_i over feasible rules subject to
/// v_S(k) - v_S(k') >= C(k, k') - slack(k, k') for every k' != k. Pairs with
/// infinite slack are left out. `weights[k]` stands in for q_k.
std::optional<ArmOptimum> solve_lp_k(const Instance& inst, std::size_t k,
                                     const std::vector<std::vector<double>>& weights, const PairMatrix& cost_diff,
                                     const PairMatrix& slack, const ProgramSink& sink = {});

/// C(k, k') = c_k - c_k'.
PairMatrix true_cost_differences(const Instance& inst);

struct UcbSolution {
    double h_hat = 0.0;
    ScoringRule rule;
    bool fallback = false;  // the program was infeasible and the oracle was used
};

/// Optimistic program for arm k at the current round; falls back to the
/// oracle rule of arm k when infeasible.
UcbSolution solve_ucb_lp(const Instance& inst, const RoundEstimates& est, std::size_t k,
                         const ProgramSink& sink = {});

UcbSolution solve_ucb_lp(const Instance& inst, const EstimatorState& state, std::size_t k);

/// max m s.t. g(k, S) - g(k', S) >= m for all k' != k over feasible rules.
std::pair<double, ScoringRule> oracle_margin_lp(const Instance& inst, std::size_t k);

/// Feasible rule whose score menu is closest in L1 to `target_scores`
/// (M x n_states).
ScoringRule project_rule(const SupportSet& support, double score_bound,
                         const std::vector<std::vector<double>>& target_scores);

}  // namespace scoreid
