#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "scoreid/algorithms.hpp"
#include "scoreid/evaluation.hpp"
#include "scoreid/harness.hpp"
#include "support.hpp"

using namespace scoreid;
using testing_support::i2;

namespace {

ScheduleConfig fc_schedule(double epsilon, AlphaMode mode = AlphaMode::kInstanceDependent) {
    ScheduleConfig s;
    s.mode = mode;
    s.epsilon = epsilon;
    s.delta = 0.1;
    return s;
}

// I2 with a cheap informative arm: h(S*_0) is near 0.79 against 0.5.
Instance separated_instance() {
    Instance inst = testing_support::i2_without_oracles();
    inst.arms[0].cost = 0.05;
    attach_oracles(inst, build_oracle_rules(inst));
    return inst;
}

}  // namespace

TEST(Alpha, Examples) {
    ScheduleConfig s;
    EXPECT_DOUBLE_EQ(alpha(s, 1.0, 1.0, 16, 4), 0.5);
    EXPECT_DOUBLE_EQ(alpha(s, 1.0, 1.0, 0, 4), 1.0);
    EXPECT_DOUBLE_EQ(alpha(s, 1.0, 1.0, 2, 4), 1.0);
    s.mode = AlphaMode::kInstanceIndependent;
    s.epsilon = 0.4;
    EXPECT_DOUBLE_EQ(alpha(s, 1.0, 1.0, 7, 4), 0.05);
}

TEST(Beta, Examples) {
    ScheduleConfig s;
    s.epsilon = 0.4;
    EXPECT_DOUBLE_EQ(beta(s, 1.0, 1.0, 1.0), 0.0);
    EXPECT_NEAR(beta(s, 1.0, 1.0, 0.05), 0.2 / 0.95, 1e-12);
    EXPECT_NEAR(beta(s, 1.0, 1.0, 0.4 / 4.0), 0.0, 1e-15);
}

TEST(ScheduleConfig, Validation) {
    const Instance inst = i2();
    ScheduleConfig s;
    s.epsilon = 0.0;
    EXPECT_THROW(s.validate(inst, false), std::invalid_argument);
    s.epsilon = 4.5;
    EXPECT_THROW(s.validate(inst, false), std::invalid_argument);
    s.epsilon = 1.0;
    s.delta = 1.5;
    EXPECT_THROW(s.validate(inst, false), std::invalid_argument);
    s.delta = 0.1;
    EXPECT_NO_THROW(s.validate(inst, false));
    s.a = 0.0;
    EXPECT_THROW(s.validate(inst, true), std::invalid_argument);
}

TEST(BinarySearch, TraceAtRadiusPointThree) {
    const Instance inst = i2();
    EstimatorState state(2, 3, {});
    RandomStream rng(1);
    const auto r = binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 0.3, 1000, rng);
    EXPECT_EQ(r.rounds, 2u);
    EXPECT_LT(r.lambda_max - r.lambda_min, 0.3);
    EXPECT_EQ(state.rounds_recorded(), 2u);
}

TEST(BinarySearch, WideRadiusSkips) {
    const Instance inst = i2();
    EstimatorState state(2, 3, {});
    RandomStream rng(1);
    // the guard is width >= r, so r = 1 still announces once
    EXPECT_EQ(binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 1.0, 1000, rng).rounds, 1u);
    EXPECT_EQ(binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 1.0001, 1000, rng).rounds, 0u);
    EXPECT_EQ(binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 2.5, 1000, rng).rounds, 0u);
}

TEST(BinarySearch, DepthBound) {
    const Instance inst = i2();
    RandomStream rng(2);
    for (double r : {0.5, 0.1, 0.01}) {
        EstimatorState state(2, 3, {});
        const auto res = binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, r, 1000, rng);
        EXPECT_LE(res.rounds, static_cast<std::size_t>(std::ceil(std::log2(1.0 / r))) + 1);
        EXPECT_LT(res.lambda_max - res.lambda_min, r);
    }
}

TEST(BinarySearch, BracketsTheSwitchPoint) {
    // Along (1 - l) S_1 + l S_0 the response switches from arm 1 to arm 0
    // once; the final bracket must contain that switch.
    const Instance inst = i2();
    EstimatorState state(2, 3, {});
    RandomStream rng(3);
    const auto res = binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 1e-6, 1000, rng);
    EXPECT_EQ(best_response(inst, mix(inst.oracle_rules[1], inst.oracle_rules[0], res.lambda_max)), 0u);
    EXPECT_EQ(best_response(inst, mix(inst.oracle_rules[1], inst.oracle_rules[0], res.lambda_min)), 1u);
}

TEST(BinarySearch, RespectsBudget) {
    const Instance inst = i2();
    EstimatorState state(2, 3, {});
    RandomStream rng(4);
    EXPECT_EQ(binary_search(inst, state, inst.oracle_rules[1], inst.oracle_rules[0], 0, 1e-6, 3, rng).rounds, 3u);
}

TEST(Oiafc, SeparatedInstanceSucceeds) {
    const Instance inst = separated_instance();
    const GroundTruth truth = ground_truth(inst);
    const double eps = inst.score_bound + inst.utility_bound();
    int ok = 0;
    for (std::size_t trial = 0; trial < 100; ++trial) {
        RandomStream rng = RandomStream::derive(500, trial);
        const RunOutcome out = run_oiafc(inst, fc_schedule(eps), rng);
        if (out.status == RunStatus::kSuccess && simple_regret(inst, truth, out.rule) <= eps) ++ok;
    }
    EXPECT_GE(ok, 90);
}

TEST(Oiafc, RoundCapAtK) {
    const Instance inst = i2();
    RunOptions opts;
    opts.round_cap = 2;
    RandomStream rng(1);
    const RunOutcome out = run_oiafc(inst, fc_schedule(1.0), rng, opts);
    EXPECT_EQ(out.status, RunStatus::kRoundCapExceeded);
    EXPECT_TRUE(out.transcript.empty());
    EXPECT_EQ(out.rounds, 2u);
}

TEST(Oiafc, FirstLoopRoundCannotStop) {
    // At t = K + 1 with N = 1 the radius already exceeds the whole range.
    const Instance inst = i2();
    RunOptions opts;
    opts.round_cap = 3;
    RandomStream rng(1);
    EXPECT_EQ(run_oiafc(inst, fc_schedule(4.0), rng, opts).status, RunStatus::kRoundCapExceeded);
}

TEST(Oiafc, IdenticalSeedsIdenticalTranscripts) {
    const Instance inst = reference_instance();
    RunOptions opts;
    opts.record_diagnostics = true;
    RandomStream a(77), b(77);
    const RunOutcome x = run_oiafc(inst, fc_schedule(1.0), a, opts);
    const RunOutcome y = run_oiafc(inst, fc_schedule(1.0), b, opts);
    ASSERT_EQ(x.transcript.size(), y.transcript.size());
    for (std::size_t i = 0; i < x.transcript.size(); ++i) {
        EXPECT_EQ(x.transcript[i].target_arm, y.transcript[i].target_arm);
        EXPECT_EQ(x.transcript[i].response, y.transcript[i].response);
        EXPECT_EQ(x.transcript[i].h_hat, y.transcript[i].h_hat);
        EXPECT_EQ(x.transcript[i].diagnostics->announced, y.transcript[i].diagnostics->announced);
    }
    EXPECT_EQ(x.rule, y.rule);
}

TEST(Oiafc, Bookkeeping) {
    const Instance inst = reference_instance();
    for (AlphaMode mode : {AlphaMode::kInstanceDependent, AlphaMode::kInstanceIndependent}) {
        RandomStream rng(5);
        RunOptions opts;
        opts.record_diagnostics = true;
        const RunOutcome out = run_oiafc(inst, fc_schedule(1.0, mode), rng, opts);
        ASSERT_EQ(out.status, RunStatus::kSuccess);
        EXPECT_EQ(std::accumulate(out.normal_counts.begin(), out.normal_counts.end(), std::size_t{0}), out.tau1);
        EXPECT_EQ(out.rounds, inst.num_arms() + out.tau1 + out.tau2);
        std::size_t mismatches = 0, bs_rounds = 0;
        for (const TranscriptEntry& e : out.transcript) {
            if (e.response != e.target_arm) ++mismatches;
            bs_rounds += e.bs_rounds;
            // searches only follow mismatches, so the stop test never sees them
            if (e.response == e.target_arm) EXPECT_EQ(e.bs_rounds, 0u);
            EXPECT_TRUE(is_proper(e.diagnostics->announced, inst.support, inst.score_bound));
        }
        EXPECT_EQ(out.tau2, mismatches + bs_rounds);
        EXPECT_EQ(out.output_round, out.transcript.back().round);
        EXPECT_EQ(out.rule, out.transcript.back().diagnostics->announced);
    }
}

TEST(Oiafc, InducementWhenGammaSmall) {
    // Whenever every gamma(k*, k') <= alpha and the event held, the agent
    // plays k*.
    const Instance inst = reference_instance();
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomStream rng(seed);
        RunOptions opts;
        opts.record_diagnostics = true;
        const RunOutcome out = run_oiafc(inst, fc_schedule(1.0), rng, opts);
        const EventCheck ev = event_E_held(inst, out.transcript);
        for (std::size_t i = 0; i < out.transcript.size(); ++i) {
            const TranscriptEntry& e = out.transcript[i];
            if (!ev.per_round[i]) continue;
            const RoundDiagnostics& d = *e.diagnostics;
            bool small = true;
            for (std::size_t other = 0; other < inst.num_arms(); ++other) {
                if (other == e.target_arm) continue;
                const double g = 2.0 / inst.oracle_margin *
                                 (d.i_c(e.target_arm, other) +
                                  inst.score_bound * (d.radius[e.target_arm] + d.radius[other]));
                small = small && g <= e.alpha;
            }
            if (small) {
                ++checked;
                EXPECT_EQ(e.response, e.target_arm);
            }
        }
    }
    RecordProperty("checked_rounds", static_cast<int>(checked));
}

TEST(Oiafc, StopCorrectUnderEvent) {
    const Instance inst = reference_instance();
    const GroundTruth truth = ground_truth(inst);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RandomStream rng(seed);
        RunOptions opts;
        opts.record_diagnostics = true;
        const RunOutcome out = run_oiafc(inst, fc_schedule(1.0), rng, opts);
        if (out.status != RunStatus::kSuccess || !event_E_held(inst, out.transcript).held) continue;
        EXPECT_LE(simple_regret(inst, truth, out.rule), 1.0);
    }
}

TEST(Oiafb, BudgetAtMostKGivesNoOutput) {
    const Instance inst = i2();
    ScheduleConfig s = fc_schedule(1.0);
    s.budget = 2;
    s.a = 5.0;
    RandomStream rng(1);
    const RunOutcome out = run_oiafb(inst, s, rng);
    EXPECT_EQ(out.status, RunStatus::kNoOutput);
    EXPECT_EQ(out.rounds, 2u);
}

TEST(Oiafb, SpendsExactBudget) {
    const Instance inst = reference_instance();
    ScheduleConfig s = fc_schedule(1.0);
    s.budget = 300;
    s.a = default_a(300, 2, 3, 0.1);
    RandomStream rng(2);
    const RunOutcome out = run_oiafb(inst, s, rng);
    EXPECT_EQ(out.rounds, 300u);
    EXPECT_EQ(out.status, RunStatus::kSuccess);
}

TEST(Oiafb, OutputsArgminSnapshot) {
    const Instance inst = reference_instance();
    ScheduleConfig s = fc_schedule(1.0);
    s.budget = 400;
    s.a = default_a(400, 2, 3, 0.1);
    RandomStream rng(3);
    RunOptions opts;
    opts.record_diagnostics = true;
    const RunOutcome out = run_oiafb(inst, s, rng, opts);
    ASSERT_EQ(out.status, RunStatus::kSuccess);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_round = 0;
    const ScoringRule* best_rule = nullptr;
    for (const TranscriptEntry& e : out.transcript) {
        if (e.response != e.target_arm) continue;
        if (e.threshold < best) {
            best = e.threshold;
            best_round = e.round;
            best_rule = &e.diagnostics->announced;
        }
    }
    ASSERT_NE(best_rule, nullptr);
    EXPECT_EQ(out.output_round, best_round);
    EXPECT_EQ(out.rule, *best_rule);
}

TEST(Oiafb, SingleLoopRoundOutputsOnlyWhenMatched) {
    // A budget of K + 1 leaves one loop round.
    const Instance inst = reference_instance();
    ScheduleConfig s = fc_schedule(1.0);
    s.budget = inst.num_arms() + 1;
    s.a = 5.0;
    RandomStream rng(4);
    const RunOutcome out = run_oiafb(inst, s, rng);
    ASSERT_EQ(out.transcript.size(), 1u);
    const bool matched = out.transcript[0].response == out.transcript[0].target_arm;
    EXPECT_EQ(out.status, matched ? RunStatus::kSuccess : RunStatus::kNoOutput);
}
