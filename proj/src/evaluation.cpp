#include "scoreid/evaluation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scoreid/programs.hpp"
#include "scoreid/scoring.hpp"

namespace scoreid {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}
}  // namespace

double complexity_h_delta(const std::vector<double>& gaps, std::size_t best_arm, double epsilon, double score_bound,
                          double utility_bound) {
    const double range = score_bound + utility_bound;
    double sum = 1.0 / (epsilon * epsilon);
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        if (k == best_arm || !std::isfinite(gaps[k])) continue;
        sum += 1.0 / (gaps[k] * gaps[k]);
    }
    return 4.0 * range * range * sum;
}

double complexity_h_epsilon(std::size_t num_arms, double epsilon, double score_bound, double utility_bound) {
    const double range = score_bound + utility_bound;
    return 4.0 * range * range * static_cast<double>(num_arms) / (epsilon * epsilon);
}

double GroundTruth::h_delta(double epsilon, double score_bound, double utility_bound) const {
    return complexity_h_delta(gaps, best_arm, epsilon, score_bound, utility_bound);
}

double GroundTruth::min_gap() const {
    double best = kInf;
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        if (k != best_arm) best = std::min(best, gaps[k]);
    }
    return best;
}

GroundTruth ground_truth(const Instance& inst) {
    const std::size_t n_arms = inst.num_arms();
    std::vector<std::vector<double>> q(n_arms);
    for (std::size_t k = 0; k < n_arms; ++k) q[k] = inst.arms[k].q;
    const PairMatrix cost = true_cost_differences(inst);
    const PairMatrix zero_slack(n_arms, 0.0);

    GroundTruth truth;
    truth.best_value = -kInf;
    for (std::size_t k = 0; k < n_arms; ++k) {
        truth.arm_utility.push_back(inst.arm_utility(k));
        auto optimum = solve_lp_k(inst, k, q, cost, zero_slack);
        if (optimum) {
            truth.h_star.push_back(optimum->h);
            truth.optimal_rules.push_back(std::move(optimum->rule));
        } else {
            truth.h_star.push_back(-kInf);
            truth.optimal_rules.push_back(ScoringRule{});
            truth.excluded_arms.push_back(k);
        }
        if (truth.h_star[k] > truth.best_value) {
            truth.best_value = truth.h_star[k];
            truth.best_arm = k;
        }
    }
    for (std::size_t k = 0; k < n_arms; ++k) truth.gaps.push_back(truth.best_value - truth.h_star[k]);
    return truth;
}

double true_h(const Instance& inst, const ScoringRule& rule, TieBreak tie_break) {
    const std::size_t k = best_response(inst, rule, tie_break);
    return inst.arm_utility(k) - expected_payment(rule, inst.arms[k].q);
}

double simple_regret(const Instance& inst, const GroundTruth& truth, const ScoringRule& rule, TieBreak tie_break) {
    return truth.best_value - true_h(inst, rule, tie_break);
}

double simple_regret(const Instance& inst, const ScoringRule& rule) {
    return simple_regret(inst, ground_truth(inst), rule);
}

EventCheck event_E_held(const Instance& inst, const Transcript& transcript) {
    EventCheck check;
    for (const TranscriptEntry& entry : transcript) {
        if (!entry.diagnostics) throw std::invalid_argument("transcript entry lacks diagnostics");
        const RoundDiagnostics& d = *entry.diagnostics;
        bool ok = true;
        for (std::size_t k = 0; k < inst.num_arms() && ok; ++k) {
            double l1 = 0.0;
            for (std::size_t i = 0; i < inst.support_size(); ++i) l1 += std::abs(d.q_hat[k][i] - inst.arms[k].q[i]);
            ok = l1 <= d.radius[k];
        }
        check.per_round.push_back(ok);
        check.held = check.held && ok;
    }
    return check;
}

BoundViolations estimate_bound_violations(const Instance& inst, const Transcript& transcript, double tolerance) {
    BoundViolations out;
    const std::size_t n_arms = inst.num_arms();
    const double bs = inst.score_bound;
    const double bu = inst.utility_bound();
    for (const TranscriptEntry& entry : transcript) {
        if (!entry.diagnostics) throw std::invalid_argument("transcript entry lacks diagnostics");
        const RoundDiagnostics& d = *entry.diagnostics;
        std::vector<const std::vector<double>*> test_rules{&d.announced.values};
        for (const auto& rule : d.ucb_rules) test_rules.push_back(&rule.values);
        for (std::size_t k = 0; k < n_arms; ++k) {
            for (const auto* values : test_rules) {
                const double estimate = dot(*values, d.q_hat[k]);
                const double truth = dot(*values, inst.arms[k].q);
                ++out.checks;
                if (std::abs(estimate - truth) > bs * d.radius[k] + tolerance) ++out.payment;
            }
            const double u_estimate = dot(inst.support.u_at, d.q_hat[k]);
            ++out.checks;
            if (std::abs(u_estimate - inst.arm_utility(k)) > bu * d.radius[k] + tolerance) ++out.utility;
            for (std::size_t other = 0; other < n_arms; ++other) {
                if (other == k || !std::isfinite(d.i_c(k, other))) continue;
                const double c = inst.arms[k].cost - inst.arms[other].cost;
                ++out.checks;
                if (std::abs(d.c_hat(k, other) - c) > d.i_c(k, other) + tolerance) ++out.cost;
            }
        }
    }
    return out;
}

SandwichViolations ucb_sandwich_violations(const Instance& inst, const GroundTruth& truth,
                                           const Transcript& transcript, double tolerance) {
    SandwichViolations out;
    const double range = inst.score_bound + inst.utility_bound();
    for (const TranscriptEntry& entry : transcript) {
        if (!entry.diagnostics) throw std::invalid_argument("transcript entry lacks diagnostics");
        const RoundDiagnostics& d = *entry.diagnostics;
        for (std::size_t k = 0; k < inst.num_arms(); ++k) {
            ++out.checks;
            const double h_hat = entry.h_hat[k];
            if (h_hat < truth.h_star[k] - tolerance) ++out.lower;
            const double realized = inst.arm_utility(k) - dot(d.ucb_rules[k].values, inst.arms[k].q);
            if (h_hat > realized + 2.0 * range * d.radius[k] + tolerance) ++out.upper;
        }
    }
    return out;
}

}  // namespace scoreid
