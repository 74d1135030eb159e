#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scoreid/agent.hpp"
#include "scoreid/algorithms.hpp"
#include "scoreid/domain.hpp"
#include "scoreid/scoring.hpp"

namespace scoreid {

struct GeneratorSpec {
    std::size_t n_states = 2;
    std::size_t n_decisions = 2;
    std::size_t n_arms = 2;
    std::size_t support_size = 3;
    double min_gap = 0.0;
    double score_bound = 1.0;
    double utility_bound = 1.0;
    double margin_floor = kDefaultMarginFloor;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kGenerationAttempts = 200;

/// Draws instances until oracles exist with margin above the floor and the
/// best arm is unique with gap >= min_gap. Throws GenerationExhausted.
Instance generate_instance(const GeneratorSpec& spec);

/// 2 states, 2 arms, |Sigma| = 3, min gap 0.3, fixed seed.
GeneratorSpec reference_spec();
Instance reference_instance();

/// 2 ln(T K 2^M / delta).
double default_a(std::size_t budget, std::size_t num_arms, std::size_t m_param, double delta);

enum class Algorithm { kFixedConfidence, kFixedBudget };

const char* to_string(Algorithm algo);

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::kFixedConfidence;
    ScheduleConfig schedule;  // schedule.a <= 0 means default_a for fixed-budget runs
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    std::size_t round_cap = 100'000;
    TieBreak tie_break = TieBreak::kLowestIndex;
    bool bs_on_match = false;
    std::size_t m_param = 0;      // 0 means |Sigma|
    std::size_t threads = 0;      // 0 means hardware concurrency, capped by SCOREID_THREADS
    bool timing = false;          // fill wall_ms; off keeps CSVs byte-stable
    bool check_event = true;      // compute the event_E column (keeps per-round diagnostics)
    ProgramSink program_sink;     // first-round UCB programs of trial 0
};

struct TrialRecord {
    std::size_t trial = 0;
    std::string status;
    std::size_t tau = 0;
    std::size_t tau1 = 0;
    std::size_t tau2 = 0;
    std::size_t n_bs = 0;
    bool success = false;
    double regret = 0.0;  // NaN when the trial produced no rule
    bool event_E = false;
    double wall_ms = 0.0;
};

struct Interval {
    double lower = 0.0;
    double upper = 1.0;
};

/// Wilson score interval; z = 1.96 gives 95%.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

struct ExperimentSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    Interval success_ci;
    double mean_tau = 0.0;
    double mean_regret = 0.0;  // over trials with a rule
    std::size_t failures = 0;  // numerical failures
};

ExperimentSummary summarize(const std::vector<TrialRecord>& records);

/// Runs one trial with stream RandomStream::derive(base_seed, trial).
TrialRecord run_trial(const Instance& inst, const ExperimentConfig& config, std::size_t trial);

/// All trials, ordered by trial id regardless of thread count.
std::vector<TrialRecord> run_experiment(const Instance& inst, const ExperimentConfig& config);

std::size_t resolve_threads(std::size_t requested);

inline constexpr const char* kCsvHeader = "trial,status,tau,tau1,tau2,n_bs,success,regret,event_E,wall_ms";

/// %.9g for floats.
std::string format_double(double x);

std::string csv_row(const TrialRecord& r);

/// Header plus one row per record.
std::string to_csv(const std::vector<TrialRecord>& records);

struct SweepConfig {
    ExperimentConfig base;
    std::vector<double> epsilons;
    std::vector<double> deltas;
    std::vector<std::size_t> budgets;  // fixed-budget only; ignored for fc
};

/// CSV with leading columns algo,epsilon,delta,budget followed by the trial
/// columns, one block per grid point.
std::string run_sweep(const Instance& inst, const SweepConfig& sweep, std::ostream* progress = nullptr);

void print_summary(std::ostream& out, const ExperimentSummary& summary);

}  // namespace scoreid
