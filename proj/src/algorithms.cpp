#include "scoreid/algorithms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scoreid/scoring.hpp"

namespace scoreid {

void ScheduleConfig::validate(const Instance& inst, bool budget_mode) const {
    const double range = 2.0 * (inst.score_bound + inst.utility_bound());
    if (!(epsilon > 0.0 && epsilon <= range)) {
        throw std::invalid_argument("epsilon must lie in (0, 2(B_S+B_u)] = (0, " + std::to_string(range) + "]");
    }
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    if (budget_mode && !(a > 0.0)) throw std::invalid_argument("fixed-budget constant a must be positive");
}

double alpha(const ScheduleConfig& schedule, double score_bound, double utility_bound, std::size_t normal_count,
             std::size_t m_param) {
    if (schedule.mode == AlphaMode::kInstanceIndependent) {
        return schedule.epsilon / (4.0 * (score_bound + utility_bound));
    }
    if (normal_count == 0) return 1.0;
    return std::min(std::sqrt(static_cast<double>(m_param) / static_cast<double>(normal_count)), 1.0);
}

double beta(const ScheduleConfig& schedule, double score_bound, double utility_bound, double alpha_now) {
    if (alpha_now >= 1.0) return 0.0;
    return (schedule.epsilon - 2.0 * alpha_now * (score_bound + utility_bound)) / (1.0 - alpha_now);
}

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::kSuccess: return "success";
        case RunStatus::kNoOutput: return "no-output";
        case RunStatus::kRoundCapExceeded: return "round-cap-exceeded";
    }
    return "?";
}

namespace {

std::size_t announce(const Instance& inst, EstimatorState& state, const ScoringRule& rule, RandomStream& stream,
                     TieBreak tie_break) {
    const RoundOutcome outcome = play_round(inst, rule, stream, tie_break);
    state.update(rule, outcome.arm, outcome.report);
    return outcome.arm;
}

}  // namespace

BinarySearchResult binary_search(const Instance& inst, EstimatorState& state, const ScoringRule& s0,
                                 const ScoringRule& s1, std::size_t k1, double entry_radius, std::size_t budget_left,
                                 RandomStream& stream, TieBreak tie_break) {
    BinarySearchResult result;
    while (result.lambda_max - result.lambda_min >= entry_radius && result.rounds < budget_left) {
        const double lambda = 0.5 * (result.lambda_min + result.lambda_max);
        const std::size_t response = announce(inst, state, mix(s0, s1, lambda), stream, tie_break);
        ++result.rounds;
        if (response == k1) {
            result.lambda_max = lambda;
        } else {
            result.lambda_min = lambda;
        }
    }
    return result;
}

namespace {

enum class Mode { kFixedConfidence, kFixedBudget };

RunOutcome run_loop(const Instance& inst, const ScheduleConfig& schedule, RandomStream& stream,
                    const RunOptions& options, Mode mode) {
    const bool budget_mode = mode == Mode::kFixedBudget;
    schedule.validate(inst, budget_mode);

    const std::size_t n_arms = inst.num_arms();
    const double bs = inst.score_bound;
    const double bu = inst.utility_bound();
    const double range = 2.0 * (bs + bu);
    const std::size_t limit = budget_mode ? schedule.budget : options.round_cap;

    RadiusConfig radius;
    radius.mode = budget_mode ? RadiusMode::kFixedBudget : RadiusMode::kFixedConfidence;
    radius.delta = schedule.delta;
    radius.a = schedule.a;
    radius.m_param = options.m_param;
    EstimatorState state(n_arms, inst.support_size(), radius);

    RunOutcome out;
    out.normal_counts.assign(n_arms, 0);

    for (std::size_t k = 0; k < n_arms && state.rounds_recorded() < limit; ++k) {
        announce(inst, state, inst.oracle_rules[k], stream, options.tie_break);
    }

    double best_snapshot = std::numeric_limits<double>::infinity();
    bool first_loop_round = true;
    while (true) {
        if (state.rounds_recorded() >= limit) {
            if (!budget_mode) out.status = RunStatus::kRoundCapExceeded;
            break;
        }
        const RoundEstimates est = estimate_round(state, inst);
        TranscriptEntry entry;
        entry.round = est.round;

        std::vector<UcbSolution> ucb;
        ucb.reserve(n_arms);
        const ProgramSink no_sink;
        for (std::size_t k = 0; k < n_arms; ++k) {
            ucb.push_back(solve_ucb_lp(inst, est, k, first_loop_round ? options.program_sink : no_sink));
            entry.h_hat.push_back(ucb.back().h_hat);
        }
        first_loop_round = false;

        std::size_t target = 0;
        for (std::size_t k = 1; k < n_arms; ++k) {
            if (entry.h_hat[k] > entry.h_hat[target] + kTieTolerance) target = k;
        }
        const double a_now = alpha(schedule, bs, bu, out.normal_counts[target], state.m_param());
        const ScoringRule announced = mix(ucb[target].rule, inst.oracle_rules[target], a_now);
        const std::size_t response = announce(inst, state, announced, stream, options.tie_break);

        entry.target_arm = target;
        entry.response = response;
        entry.alpha = a_now;
        if (options.record_diagnostics) {
            RoundDiagnostics d;
            d.q_hat = est.q_hat;
            d.radius = est.radius;
            d.c_hat = est.cost.c_hat;
            d.i_c = est.cost.i_c;
            for (const UcbSolution& u : ucb) {
                d.ucb_rules.push_back(u.rule);
                d.ucb_fallback.push_back(u.fallback);
            }
            d.announced = announced;
            entry.diagnostics = std::move(d);
        }

        const bool matched = response == target;
        const bool search = (budget_mode && options.bs_on_match) ? matched : !matched;
        bool stop = false;
        if (matched) {
            ++out.tau1;
            ++out.normal_counts[target];
            const double width = range * est.radius[target];
            if (budget_mode) {
                entry.threshold = width;
                if (width < best_snapshot) {
                    best_snapshot = width;
                    out.rule = announced;
                    out.output_round = est.round;
                    out.status = RunStatus::kSuccess;
                }
            } else {
                entry.threshold = beta(schedule, bs, bu, a_now);
                if (!search && !options.run_to_cap && width <= entry.threshold) {
                    out.rule = announced;
                    out.output_round = est.round;
                    out.status = RunStatus::kSuccess;
                    stop = true;
                }
            }
        } else {
            ++out.tau2;
        }
        if (search) {
            const double entry_radius = std::min(est.radius[response], est.radius[target]);
            const std::size_t budget_left = limit - state.rounds_recorded();
            const BinarySearchResult bs_result =
                binary_search(inst, state, announced, inst.oracle_rules[target], target, entry_radius, budget_left,
                              stream, options.tie_break);
            ++out.n_bs;
            out.tau2 += bs_result.rounds;
            entry.bs_rounds = bs_result.rounds;
        }
        out.transcript.push_back(std::move(entry));
        if (stop) break;
        if (!budget_mode) {
            // Last announced rule stands in as output if the cap is hit.
            out.rule = announced;
            out.output_round = est.round;
        }
    }
    out.rounds = state.rounds_recorded();
    return out;
}

}  // namespace

RunOutcome run_oiafc(const Instance& inst, const ScheduleConfig& schedule, RandomStream& stream,
                     const RunOptions& options) {
    return run_loop(inst, schedule, stream, options, Mode::kFixedConfidence);
}

RunOutcome run_oiafb(const Instance& inst, const ScheduleConfig& schedule, RandomStream& stream,
                     const RunOptions& options) {
    return run_loop(inst, schedule, stream, options, Mode::kFixedBudget);
}

}  // namespace scoreid
