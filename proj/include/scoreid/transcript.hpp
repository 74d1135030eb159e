#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scoreid/matrix.hpp"
#include "scoreid/scoring_rule.hpp"

namespace scoreid {

/// Estimator snapshot taken at the start of a loop round.
struct RoundDiagnostics {
    std::vector<std::vector<double>> q_hat;            // K x M
    std::vector<double> radius;                        // I_q^t(k)
    PairMatrix c_hat;                                  // C_hat^t(k, k')
    PairMatrix i_c;                                    // I_c^t(k, k')
    std::vector<ScoringRule> ucb_rules;                // S_hat_{k,t}
    std::vector<bool> ucb_fallback;
    ScoringRule announced;                             // S_t
};

/// One loop round (initialization and binary-search announcements are not
/// separate entries; `bs_rounds` counts the latter).
struct TranscriptEntry {
    std::size_t round = 0;
    std::size_t target_arm = 0;  // k_t^*
    std::size_t response = 0;    // k_t
    double alpha = 0.0;
    double threshold = 0.0;      // beta_t (fixed confidence) or 2(B_S+B_u) I_q^t(k_t^*) (fixed budget)
    std::vector<double> h_hat;
    std::size_t bs_rounds = 0;
    std::optional<RoundDiagnostics> diagnostics;
};

using Transcript = std::vector<TranscriptEntry>;

}  // namespace scoreid
