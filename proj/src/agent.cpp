#include "scoreid/agent.hpp"

#include "scoreid/scoring.hpp"

namespace scoreid {

std::size_t best_response(const Instance& inst, const ScoringRule& rule, TieBreak tie_break) {
    std::size_t best = 0;
    double best_profit = agent_profit(inst, 0, rule);
    for (std::size_t k = 1; k < inst.num_arms(); ++k) {
        const double profit = agent_profit(inst, k, rule);
        if (profit > best_profit + kTieTolerance) {
            best = k;
            best_profit = profit;
        } else if (tie_break == TieBreak::kPrincipal && profit >= best_profit - kTieTolerance) {
            const double incumbent = inst.arm_utility(best) - expected_payment(rule, inst.arms[best].q);
            const double challenger = inst.arm_utility(k) - expected_payment(rule, inst.arms[k].q);
            if (challenger > incumbent) {
                best = k;
                best_profit = profit;
            }
        }
    }
    return best;
}

RoundOutcome play_round(const Instance& inst, const ScoringRule& rule, RandomStream& stream, TieBreak tie_break) {
    RoundOutcome out;
    out.arm = best_response(inst, rule, tie_break);
    out.report = stream.categorical(inst.arms[out.arm].q);
    out.state = stream.categorical(inst.support.beliefs[out.report].probs);
    out.payment = score(rule, inst.support, out.state, out.report);
    const std::size_t decision = inst.support.best_decision[out.report];
    out.principal_profit = inst.utility.at(out.state, decision) - out.payment;
    return out;
}

}  // namespace scoreid
