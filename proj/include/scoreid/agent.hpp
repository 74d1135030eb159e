#pragma once

#include <cstddef>

#include "scoreid/domain.hpp"
#include "scoreid/random.hpp"
#include "scoreid/scoring_rule.hpp"

namespace scoreid {

/// Profits within this distance count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// How the agent picks among arms with tied profit.
enum class TieBreak {
    kLowestIndex,
    kPrincipal,  // the tied arm best for the principal, then lowest index
};

/// argmax_k g(k, rule), ties resolved by `tie_break`.
std::size_t best_response(const Instance& inst, const ScoringRule& rule, TieBreak tie_break = TieBreak::kLowestIndex);

struct RoundOutcome {
    std::size_t arm = 0;
    std::size_t report = 0;  // support index; reports are truthful
    std::size_t state = 0;
    double payment = 0.0;
    double principal_profit = 0.0;  // u(w, d*(sigma)) - payment
};

/// One round of the protocol: best response, belief draw from q_arm, state
/// draw from the belief, payment by the announced rule.
RoundOutcome play_round(const Instance& inst, const ScoringRule& rule, RandomStream& stream,
                        TieBreak tie_break = TieBreak::kLowestIndex);

}  // namespace scoreid
