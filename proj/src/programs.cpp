#include "scoreid/programs.hpp"

#include <cmath>
#include <string>

#include "scoreid/errors.hpp"
#include "scoreid/scoring.hpp"

namespace scoreid {

RuleBlock::RuleBlock(lp::LinearProgram& program, const SupportSet& support, double score_bound)
    : support_(&support), first_(program.num_variables), n_states_(support.beliefs.front().num_states()) {
    const std::size_t m = support.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t w = 0; w < n_states_; ++w) {
            program.add_variable("s_" + std::to_string(i) + "_" + std::to_string(w), 0.0, score_bound);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        const auto& sigma_j = support.beliefs[j].probs;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == j) continue;
            auto& row = program.add_row(lp::Relation::kGreaterEqual, 0.0,
                                        "convex_" + std::to_string(i) + "_" + std::to_string(j));
            for (std::size_t w = 0; w < n_states_; ++w) {
                row.coefficients[variable(j, w)] += sigma_j[w];
                row.coefficients[variable(i, w)] -= sigma_j[w];
            }
        }
    }
}

void RuleBlock::add_payment(std::vector<double>& row, std::span<const double> weights, double scale) const {
    for (std::size_t i = 0; i < support_->size(); ++i) {
        const double weight = scale * weights[i];
        if (weight == 0.0) continue;
        const auto& sigma = support_->beliefs[i].probs;
        for (std::size_t w = 0; w < n_states_; ++w) row[variable(i, w)] += weight * sigma[w];
    }
}

ScoringRule RuleBlock::extract(const std::vector<double>& x) const {
    std::vector<std::vector<double>> scores(support_->size(), std::vector<double>(n_states_));
    for (std::size_t i = 0; i < support_->size(); ++i) {
        for (std::size_t w = 0; w < n_states_; ++w) scores[i][w] = x[variable(i, w)];
    }
    return rule_from_scores(*support_, scores);
}

PairMatrix true_cost_differences(const Instance& inst) {
    const std::size_t n = inst.num_arms();
    PairMatrix c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t other = 0; other < n; ++other) c(k, other) = inst.arms[k].cost - inst.arms[other].cost;
    }
    return c;
}

std::optional<ArmOptimum> solve_lp_k(const Instance& inst, std::size_t k,
                                     const std::vector<std::vector<double>>& weights, const PairMatrix& cost_diff,
                                     const PairMatrix& slack, const ProgramSink& sink) {
    lp::LinearProgram program;
    RuleBlock rule(program, inst.support, inst.score_bound);
    double u_k = 0.0;
    for (std::size_t i = 0; i < inst.support_size(); ++i) u_k += weights[k][i] * inst.support.u_at[i];
    program.objective_offset = u_k;
    rule.add_payment(program.objective, weights[k], -1.0);
    for (std::size_t other = 0; other < inst.num_arms(); ++other) {
        if (other == k || !std::isfinite(slack(k, other))) continue;
        auto& row = program.add_row(lp::Relation::kGreaterEqual, cost_diff(k, other) - slack(k, other),
                                    "induce_" + std::to_string(other));
        rule.add_payment(row.coefficients, weights[k], 1.0);
        rule.add_payment(row.coefficients, weights[other], -1.0);
    }
    if (sink) sink(k, program);
    const lp::Solution solution = lp::solve(program);
    if (solution.status == lp::Status::kInfeasible) return std::nullopt;
    if (solution.status == lp::Status::kUnbounded) throw NumericalFailure("LP_k reported unbounded");
    return ArmOptimum{solution.objective, rule.extract(solution.x)};
}

UcbSolution solve_ucb_lp(const Instance& inst, const RoundEstimates& est, std::size_t k, const ProgramSink& sink) {
    const double bs = inst.score_bound;
    const double bu = inst.utility_bound();
    const double radius_k = est.radius[k];

    lp::LinearProgram program;
    RuleBlock rule(program, inst.support, bs);
    const std::size_t v = program.add_variable("v", 0.0, bs, -1.0);
    program.objective_offset = est.u_hat[k] + bu * radius_k;

    {
        auto& upper = program.add_row(lp::Relation::kLessEqual, bs * radius_k, "payment_upper");
        upper.coefficients[v] = 1.0;
        rule.add_payment(upper.coefficients, est.q_hat[k], -1.0);
    }
    {
        auto& lower = program.add_row(lp::Relation::kGreaterEqual, -bs * radius_k, "payment_lower");
        lower.coefficients[v] = 1.0;
        rule.add_payment(lower.coefficients, est.q_hat[k], -1.0);
    }
    for (std::size_t other = 0; other < inst.num_arms(); ++other) {
        if (other == k || !std::isfinite(est.cost.i_c(k, other))) continue;
        const double bound = est.cost.c_hat(k, other) - (est.cost.i_c(k, other) + bs * est.radius[other]);
        auto& row = program.add_row(lp::Relation::kGreaterEqual, bound, "induce_" + std::to_string(other));
        row.coefficients[v] = 1.0;
        rule.add_payment(row.coefficients, est.q_hat[other], -1.0);
    }
    if (sink) sink(k, program);

    const lp::Solution solution = lp::solve(program);
    if (solution.status == lp::Status::kUnbounded) throw NumericalFailure("UCB-LP reported unbounded");
    UcbSolution out;
    if (solution.status == lp::Status::kInfeasible) {
        const ScoringRule& oracle = inst.oracle_rules[k];
        out.h_hat = est.u_hat[k] - expected_payment(oracle, est.q_hat[k]) + (bu + bs) * radius_k;
        out.rule = oracle;
        out.fallback = true;
        return out;
    }
    out.h_hat = solution.objective;
    out.rule = rule.extract(solution.x);
    return out;
}

UcbSolution solve_ucb_lp(const Instance& inst, const EstimatorState& state, std::size_t k) {
    return solve_ucb_lp(inst, estimate_round(state, inst), k);
}

std::pair<double, ScoringRule> oracle_margin_lp(const Instance& inst, std::size_t k) {
    lp::LinearProgram program;
    RuleBlock rule(program, inst.support, inst.score_bound);
    const std::size_t margin = program.add_variable("m", -lp::kInfinity, lp::kInfinity, 1.0);
    for (std::size_t other = 0; other < inst.num_arms(); ++other) {
        if (other == k) continue;
        auto& row = program.add_row(lp::Relation::kGreaterEqual, inst.arms[k].cost - inst.arms[other].cost,
                                    "margin_" + std::to_string(other));
        rule.add_payment(row.coefficients, inst.arms[k].q, 1.0);
        rule.add_payment(row.coefficients, inst.arms[other].q, -1.0);
        row.coefficients[margin] = -1.0;
    }
    const lp::Solution solution = lp::solve(program);
    if (solution.status != lp::Status::kOptimal) {
        throw NumericalFailure(std::string("oracle margin LP ") + lp::to_string(solution.status));
    }
    return {solution.x[margin], rule.extract(solution.x)};
}

ScoringRule project_rule(const SupportSet& support, double score_bound,
                         const std::vector<std::vector<double>>& target_scores) {
    lp::LinearProgram program;
    RuleBlock rule(program, support, score_bound);
    const std::size_t n_states = support.beliefs.front().num_states();
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t w = 0; w < n_states; ++w) {
            const std::size_t e = program.add_variable("e_" + std::to_string(i) + "_" + std::to_string(w), 0.0,
                                                       lp::kInfinity, -1.0);
            const double target = target_scores[i][w];
            auto& above = program.add_row(lp::Relation::kGreaterEqual, -target);
            above.coefficients[e] = 1.0;
            above.coefficients[rule.variable(i, w)] = -1.0;
            auto& below = program.add_row(lp::Relation::kGreaterEqual, target);
            below.coefficients[e] = 1.0;
            below.coefficients[rule.variable(i, w)] = 1.0;
        }
    }
    const lp::Solution solution = lp::solve(program);
    if (solution.status != lp::Status::kOptimal) throw NumericalFailure("rule projection failed");
    return rule.extract(solution.x);
}

}  // namespace scoreid
