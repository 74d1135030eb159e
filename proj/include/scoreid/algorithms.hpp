#pragma once

#include <cstddef>
#include <vector>

#include "scoreid/agent.hpp"
#include "scoreid/domain.hpp"
#include "scoreid/estimation.hpp"
#include "scoreid/programs.hpp"
#include "scoreid/random.hpp"
#include "scoreid/scoring_rule.hpp"
#include "scoreid/transcript.hpp"

namespace scoreid {

enum class AlphaMode {
    kInstanceDependent,    // alpha = min(sqrt(M / L_k), 1)
    kInstanceIndependent,  // alpha = eps / (4 (B_S + B_u))
};

struct ScheduleConfig {
    AlphaMode mode = AlphaMode::kInstanceDependent;
    double epsilon = 1.0;
    double delta = 0.1;
    std::size_t budget = 0;  // T, fixed-budget runs only
    double a = 0.0;          // fixed-budget radius constant

    /// Throws std::invalid_argument unless 0 < eps <= 2(B_S+B_u), 0 < delta <= 1
    /// and, for budget runs, a > 0.
    void validate(const Instance& inst, bool budget_mode) const;
};

double alpha(const ScheduleConfig& schedule, double score_bound, double utility_bound, std::size_t normal_count,
             std::size_t m_param);

/// (eps - 2 alpha (B_S + B_u)) / (1 - alpha), or 0 when alpha = 1. May be
/// negative; the stop test then cannot pass.
double beta(const ScheduleConfig& schedule, double score_bound, double utility_bound, double alpha_now);

struct BinarySearchResult {
    std::size_t rounds = 0;
    double lambda_min = 0.0;
    double lambda_max = 1.0;
};

/// Halves [lambda_min, lambda_max] along (1 - lambda) s0 + lambda s1 while the
/// width is at least `entry_radius` and budget remains. Every announcement
/// updates `state`.
BinarySearchResult binary_search(const Instance& inst, EstimatorState& state, const ScoringRule& s0,
                                 const ScoringRule& s1, std::size_t k1, double entry_radius, std::size_t budget_left,
                                 RandomStream& stream, TieBreak tie_break = TieBreak::kLowestIndex);

enum class RunStatus { kSuccess, kNoOutput, kRoundCapExceeded };

const char* to_string(RunStatus status);

struct RunOptions {
    std::size_t round_cap = 100'000;  // fixed-confidence only
    TieBreak tie_break = TieBreak::kLowestIndex;
    bool bs_on_match = false;         // fixed-budget: search when k_t == k_t^* (literal pseudocode)
    bool record_diagnostics = false;
    bool run_to_cap = false;          // fixed-confidence: never stop early (coverage studies)
    std::size_t m_param = 0;          // radius support parameter; 0 means |Sigma|
    ProgramSink program_sink;         // sees every UCB program of the first loop round
};

struct RunOutcome {
    RunStatus status = RunStatus::kNoOutput;
    ScoringRule rule;                 // S_hat^*; empty when there is no output
    std::size_t output_round = 0;
    std::size_t rounds = 0;           // tau, or rounds spent out of T
    std::size_t tau1 = 0;             // loop rounds with k_t == k_t^*
    std::size_t tau2 = 0;             // loop rounds with k_t != k_t^* plus binary-search rounds
    std::size_t n_bs = 0;             // binary searches started
    std::vector<std::size_t> normal_counts;  // L_k
    Transcript transcript;
};

/// Fixed confidence: runs until the stop test passes or `round_cap` rounds
/// have been played.
RunOutcome run_oiafc(const Instance& inst, const ScheduleConfig& schedule, RandomStream& stream,
                     const RunOptions& options = {});

/// Fixed budget: plays exactly schedule.budget rounds (fewer only if the
/// budget is below K) and returns the logged rule with the smallest
/// 2(B_S+B_u) I_q^t(k_t^*).
RunOutcome run_oiafb(const Instance& inst, const ScheduleConfig& schedule, RandomStream& stream,
                     const RunOptions& options = {});

}  // namespace scoreid
