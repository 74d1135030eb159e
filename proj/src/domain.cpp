#include "scoreid/domain.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "scoreid/errors.hpp"
#include "scoreid/scoring.hpp"

namespace scoreid {

const char* to_string(ValidationKind kind) {
    switch (kind) {
        case ValidationKind::kShape: return "ShapeMismatch";
        case ValidationKind::kSimplex: return "SimplexViolation";
        case ValidationKind::kBound: return "BoundViolation";
        case ValidationKind::kDuplicateBelief: return "DuplicateBelief";
        case ValidationKind::kImproperRule: return "ImproperRule";
        case ValidationKind::kOracleMargin: return "OracleMarginViolation";
    }
    return "ValidationError";
}

namespace {

void check_simplex(const std::vector<double>& probs, const std::string& what) {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError(ValidationKind::kSimplex, what + " has an entry outside [0,1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw ValidationError(ValidationKind::kSimplex, what + " sums to " + std::to_string(total));
    }
}

}  // namespace

std::size_t best_decision_at(const Belief& belief, const UtilityModel& utility) {
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < utility.n_decisions; ++d) {
        double value = 0.0;
        for (std::size_t w = 0; w < utility.n_states; ++w) value += belief.probs[w] * utility.at(w, d);
        if (value > best_value) {
            best_value = value;
            best = d;
        }
    }
    return best;
}

double principal_utility_at(const SupportSet& support, const UtilityModel& utility, std::size_t i) {
    if (i >= support.size()) throw std::out_of_range("support index " + std::to_string(i));
    const Belief& belief = support.beliefs[i];
    const std::size_t d = best_decision_at(belief, utility);
    double value = 0.0;
    for (std::size_t w = 0; w < utility.n_states; ++w) value += belief.probs[w] * utility.at(w, d);
    return value;
}

SupportSet make_support(std::vector<Belief> beliefs, const UtilityModel& utility) {
    SupportSet support;
    support.beliefs = std::move(beliefs);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support.beliefs[i].num_states() != utility.n_states) {
            throw ValidationError(ValidationKind::kShape, "belief " + std::to_string(i) + " has wrong length");
        }
        support.best_decision.push_back(best_decision_at(support.beliefs[i], utility));
        support.u_at.push_back(principal_utility_at(support, utility, i));
    }
    return support;
}

double Instance::arm_utility(std::size_t k) const {
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) total += arms[k].q[i] * support.u_at[i];
    return total;
}

void normalize_probabilities(std::vector<double>& probs, const char* what) {
    check_simplex(probs, what);
    double total = 0.0;
    for (double p : probs) total += p;
    // leave vectors that already sum to 1 up to rounding bit-identical
    if (std::abs(total - 1.0) <= 1e-15) return;
    for (double& p : probs) p /= total;
}

void validate_domain(const Instance& inst) {
    const UtilityModel& um = inst.utility;
    if (um.n_states < 2) throw ValidationError(ValidationKind::kShape, "need at least 2 states");
    if (um.n_decisions < 1) throw ValidationError(ValidationKind::kShape, "need at least 1 decision");
    if (um.u.size() != um.n_states * um.n_decisions) {
        throw ValidationError(ValidationKind::kShape, "utility matrix size mismatch");
    }
    if (!(um.bound > 0.0) || !std::isfinite(um.bound)) {
        throw ValidationError(ValidationKind::kBound, "B_u must be positive");
    }
    for (double x : um.u) {
        if (!(x >= 0.0 && x <= um.bound)) throw ValidationError(ValidationKind::kBound, "utility outside [0, B_u]");
    }
    if (!(inst.score_bound > 0.0) || !std::isfinite(inst.score_bound)) {
        throw ValidationError(ValidationKind::kBound, "B_S must be positive");
    }

    const std::size_t m = inst.support.size();
    if (m < 1) throw ValidationError(ValidationKind::kShape, "support is empty");
    if (inst.support.u_at.size() != m || inst.support.best_decision.size() != m) {
        throw ValidationError(ValidationKind::kShape, "support derived data missing");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Belief& b = inst.support.beliefs[i];
        if (b.num_states() != um.n_states) {
            throw ValidationError(ValidationKind::kShape, "belief " + std::to_string(i) + " has wrong length");
        }
        check_simplex(b.probs, "belief " + std::to_string(i));
        if (std::abs(inst.support.u_at[i] - principal_utility_at(inst.support, um, i)) > kProbabilityTolerance) {
            throw ValidationError(ValidationKind::kShape, "u_at[" + std::to_string(i) + "] is stale");
        }
        for (std::size_t j = 0; j < i; ++j) {
            double l1 = 0.0;
            for (std::size_t w = 0; w < um.n_states; ++w) {
                l1 += std::abs(b.probs[w] - inst.support.beliefs[j].probs[w]);
            }
            if (l1 <= kDistinctBeliefTolerance) {
                throw ValidationError(ValidationKind::kDuplicateBelief,
                                      "beliefs " + std::to_string(j) + " and " + std::to_string(i));
            }
        }
    }

    if (inst.arms.size() < 2) throw ValidationError(ValidationKind::kShape, "need at least 2 arms");
    for (std::size_t k = 0; k < inst.arms.size(); ++k) {
        const Arm& arm = inst.arms[k];
        if (arm.q.size() != m) throw ValidationError(ValidationKind::kShape, "arm " + std::to_string(k) + " q length");
        check_simplex(arm.q, "arm " + std::to_string(k) + " q");
        if (!(arm.cost >= 0.0) || !std::isfinite(arm.cost)) {
            throw ValidationError(ValidationKind::kBound, "arm " + std::to_string(k) + " cost must be >= 0");
        }
    }
}

void validate_instance(const Instance& inst) {
    validate_domain(inst);
    const std::size_t n_arms = inst.num_arms();
    if (inst.oracle_rules.size() != n_arms) {
        throw ValidationError(ValidationKind::kShape, "need one oracle rule per arm");
    }
    if (!(inst.oracle_margin > 0.0)) throw ValidationError(ValidationKind::kBound, "oracle margin must be positive");
    for (std::size_t k = 0; k < n_arms; ++k) {
        const auto violations = check_proper(inst.oracle_rules[k], inst.support, inst.score_bound);
        if (!violations.empty()) {
            throw ValidationError(ValidationKind::kImproperRule,
                                  "oracle " + std::to_string(k) + ": " + violations.front().describe());
        }
        const double own = agent_profit(inst, k, inst.oracle_rules[k]);
        for (std::size_t other = 0; other < n_arms; ++other) {
            if (other == k) continue;
            const double gap = own - agent_profit(inst, other, inst.oracle_rules[k]);
            if (!(gap > inst.oracle_margin)) {
                throw ValidationError(ValidationKind::kOracleMargin,
                                      "oracle " + std::to_string(k) + " vs arm " + std::to_string(other) +
                                          ": profit gap " + std::to_string(gap) + " <= margin " +
                                          std::to_string(inst.oracle_margin));
            }
        }
    }
}

}  // namespace scoreid
