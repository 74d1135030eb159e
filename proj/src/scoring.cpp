#include "scoreid/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scoreid/errors.hpp"
#include "scoreid/programs.hpp"

namespace scoreid {

ScoringRule ScoringRule::constant(std::size_t support_size, std::size_t num_states, double c) {
    ScoringRule rule;
    rule.values.assign(support_size, c);
    rule.subgradients.assign(support_size, std::vector<double>(num_states, 0.0));
    return rule;
}

double score(const ScoringRule& rule, const SupportSet& support, std::size_t state, std::size_t report) {
    if (report >= rule.values.size() || report >= support.size()) {
        throw std::out_of_range("report index " + std::to_string(report));
    }
    const auto& g = rule.subgradients[report];
    if (state >= g.size()) throw std::out_of_range("state index " + std::to_string(state));
    const auto& sigma = support.beliefs[report].probs;
    double inner = 0.0;
    for (std::size_t w = 0; w < g.size(); ++w) inner += g[w] * sigma[w];
    return rule.values[report] + g[state] - inner;
}

double expected_payment(const ScoringRule& rule, std::span<const double> weights) {
    if (weights.size() != rule.values.size()) throw std::invalid_argument("weights length does not match rule support");
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * rule.values[i];
    return total;
}

double agent_profit(const Instance& inst, std::size_t k, const ScoringRule& rule) {
    if (k >= inst.num_arms()) throw std::out_of_range("arm index " + std::to_string(k));
    return expected_payment(rule, inst.arms[k].q) - inst.arms[k].cost;
}

ScoringRule mix(const ScoringRule& a, const ScoringRule& b, double lambda) {
    if (a.values.size() != b.values.size() || a.num_states() != b.num_states()) {
        throw std::invalid_argument("cannot mix rules over different supports");
    }
    ScoringRule out = a;
    const double keep = 1.0 - lambda;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = keep * a.values[i] + lambda * b.values[i];
        for (std::size_t w = 0; w < out.subgradients[i].size(); ++w) {
            out.subgradients[i][w] = keep * a.subgradients[i][w] + lambda * b.subgradients[i][w];
        }
    }
    return out;
}

ScoringRule rule_from_scores(const SupportSet& support, const std::vector<std::vector<double>>& scores) {
    ScoringRule rule;
    rule.values.resize(support.size());
    rule.subgradients = scores;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto& sigma = support.beliefs[i].probs;
        double g = 0.0;
        for (std::size_t w = 0; w < sigma.size(); ++w) g += sigma[w] * scores[i][w];
        rule.values[i] = g;
    }
    return rule;
}

std::vector<std::vector<double>> score_matrix(const ScoringRule& rule, const SupportSet& support) {
    std::vector<std::vector<double>> out(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        out[i].resize(rule.num_states());
        for (std::size_t w = 0; w < rule.num_states(); ++w) out[i][w] = score(rule, support, w, i);
    }
    return out;
}

std::string RuleViolation::describe() const {
    switch (kind) {
        case Kind::kShape: return "rule shape does not match the support";
        case Kind::kConvexity:
            return "ConvexityViolation(" + std::to_string(first) + "," + std::to_string(second) + ")";
        case Kind::kBound: return "BoundViolation(" + std::to_string(first) + "," + std::to_string(second) + ")";
        case Kind::kProperness:
            return "PropernessViolation(" + std::to_string(first) + "," + std::to_string(second) + ")";
    }
    return "violation";
}

std::vector<RuleViolation> check_proper(const ScoringRule& rule, const SupportSet& support, double score_bound) {
    using Kind = RuleViolation::Kind;
    std::vector<RuleViolation> out;
    const std::size_t m = support.size();
    if (m == 0 || rule.values.size() != m || rule.subgradients.size() != m) {
        out.push_back({Kind::kShape, 0, 0, 0.0});
        return out;
    }
    const std::size_t n = support.beliefs.front().num_states();
    for (const auto& g : rule.subgradients) {
        if (g.size() != n) {
            out.push_back({Kind::kShape, 0, 0, 0.0});
            return out;
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        const auto& sigma_i = support.beliefs[i].probs;
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto& sigma_j = support.beliefs[j].probs;
            double support_line = rule.values[i];
            for (std::size_t w = 0; w < n; ++w) support_line += rule.subgradients[i][w] * (sigma_j[w] - sigma_i[w]);
            const double shortfall = support_line - rule.values[j];
            if (shortfall > kFeasibilityTolerance) out.push_back({Kind::kConvexity, i, j, shortfall});
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t w = 0; w < n; ++w) {
            const double s = score(rule, support, w, i);
            if (s < -kFeasibilityTolerance) out.push_back({Kind::kBound, i, w, -s});
            if (s > score_bound + kFeasibilityTolerance) out.push_back({Kind::kBound, i, w, s - score_bound});
        }
    }
    // Behavioral check: at truth i, no report j earns more in expectation.
    for (std::size_t i = 0; i < m; ++i) {
        const auto& sigma_i = support.beliefs[i].probs;
        auto expected = [&](std::size_t report) {
            double total = 0.0;
            for (std::size_t w = 0; w < n; ++w) total += sigma_i[w] * score(rule, support, w, report);
            return total;
        };
        const double truthful = expected(i);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double gain = expected(j) - truthful;
            if (gain > kFeasibilityTolerance) out.push_back({Kind::kProperness, i, j, gain});
        }
    }
    return out;
}

double OracleSet::min_margin() const {
    double best = std::numeric_limits<double>::infinity();
    for (double m : margins) best = std::min(best, m);
    return best;
}

OracleSet build_oracle_rules(const Instance& inst, double margin_floor) {
    OracleSet oracles;
    for (std::size_t k = 0; k < inst.num_arms(); ++k) {
        auto [margin, rule] = oracle_margin_lp(inst, k);
        // Re-measure on the extracted rule rather than trusting the LP variable.
        double achieved = std::numeric_limits<double>::infinity();
        const double own = agent_profit(inst, k, rule);
        for (std::size_t other = 0; other < inst.num_arms(); ++other) {
            if (other != k) achieved = std::min(achieved, own - agent_profit(inst, other, rule));
        }
        achieved = std::min(achieved, margin);
        if (!(achieved > margin_floor)) throw OracleInfeasible(k, achieved);
        oracles.rules.push_back(std::move(rule));
        oracles.margins.push_back(achieved);
    }
    return oracles;
}

void attach_oracles(Instance& inst, const OracleSet& oracles) {
    inst.oracle_rules = oracles.rules;
    inst.oracle_margin = oracles.min_margin() * (1.0 - 1e-6);
}

}  // namespace scoreid
