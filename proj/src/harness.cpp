#include "scoreid/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "scoreid/errors.hpp"
#include "scoreid/evaluation.hpp"
#include "scoreid/random.hpp"

namespace scoreid {

namespace {

constexpr std::uint64_t kReferenceSeed = 1;

std::optional<Instance> draw_instance(const GeneratorSpec& spec, RandomStream& stream) {
    Instance inst;
    inst.score_bound = spec.score_bound;
    inst.utility.n_states = spec.n_states;
    inst.utility.n_decisions = spec.n_decisions;
    inst.utility.bound = spec.utility_bound;
    inst.utility.u.resize(spec.n_states * spec.n_decisions);
    for (double& x : inst.utility.u) x = spec.utility_bound * stream.uniform();

    std::vector<Belief> beliefs;
    for (std::size_t i = 0; i < spec.support_size; ++i) beliefs.push_back(Belief{stream.dirichlet_flat(spec.n_states)});
    inst.support = make_support(std::move(beliefs), inst.utility);

    for (std::size_t k = 0; k < spec.n_arms; ++k) {
        Arm arm;
        arm.q = stream.dirichlet_flat(spec.support_size);
        arm.cost = 0.5 * spec.score_bound * stream.uniform();
        inst.arms.push_back(std::move(arm));
    }
    try {
        validate_domain(inst);
        attach_oracles(inst, build_oracle_rules(inst, spec.margin_floor));
        validate_instance(inst);
    } catch (const ValidationError&) {
        return std::nullopt;
    } catch (const OracleInfeasible&) {
        return std::nullopt;
    }

    const GroundTruth truth = ground_truth(inst);
    const double gap = truth.min_gap();
    if (!(gap > 0.0) || gap < spec.min_gap) return std::nullopt;
    return inst;
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec) {
    if (spec.n_states < 2 || spec.n_arms < 2 || spec.support_size < 1 || spec.n_decisions < 1) {
        throw std::invalid_argument("generator needs n_states >= 2, K >= 2, M >= 1, at least one decision");
    }
    RandomStream stream(mix64(spec.seed));
    for (std::size_t attempt = 0; attempt < kGenerationAttempts; ++attempt) {
        if (auto inst = draw_instance(spec, stream)) return std::move(*inst);
    }
    throw GenerationExhausted("no admissible instance after " + std::to_string(kGenerationAttempts) + " attempts");
}

GeneratorSpec reference_spec() {
    GeneratorSpec spec;
    spec.n_states = 2;
    spec.n_decisions = 2;
    spec.n_arms = 2;
    spec.support_size = 3;
    spec.min_gap = 0.3;
    spec.seed = kReferenceSeed;
    return spec;
}

Instance reference_instance() { return generate_instance(reference_spec()); }

double default_a(std::size_t budget, std::size_t num_arms, std::size_t m_param, double delta) {
    return 2.0 * (std::log(static_cast<double>(budget)) + std::log(static_cast<double>(num_arms)) +
                  static_cast<double>(m_param) * std::log(2.0) - std::log(delta));
}

const char* to_string(Algorithm algo) { return algo == Algorithm::kFixedConfidence ? "fc" : "fb"; }

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ExperimentSummary summarize(const std::vector<TrialRecord>& records) {
    ExperimentSummary s;
    s.trials = records.size();
    double tau_sum = 0.0;
    double regret_sum = 0.0;
    std::size_t with_rule = 0;
    for (const TrialRecord& r : records) {
        if (r.success) ++s.successes;
        if (r.status == "numerical-failure") ++s.failures;
        tau_sum += static_cast<double>(r.tau);
        if (std::isfinite(r.regret)) {
            regret_sum += r.regret;
            ++with_rule;
        }
    }
    if (s.trials > 0) {
        s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
        s.mean_tau = tau_sum / static_cast<double>(s.trials);
    }
    s.mean_regret = with_rule > 0 ? regret_sum / static_cast<double>(with_rule) : std::numeric_limits<double>::quiet_NaN();
    s.success_ci = wilson_interval(s.successes, s.trials);
    return s;
}

TrialRecord run_trial(const Instance& inst, const ExperimentConfig& config, std::size_t trial) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord record;
    record.trial = trial;
    record.regret = std::numeric_limits<double>::quiet_NaN();

    RunOptions options;
    options.round_cap = config.round_cap;
    options.tie_break = config.tie_break;
    options.bs_on_match = config.bs_on_match;
    options.m_param = config.m_param;
    options.record_diagnostics = config.check_event;
    if (trial == 0) options.program_sink = config.program_sink;

    ScheduleConfig schedule = config.schedule;
    const bool budget_mode = config.algorithm == Algorithm::kFixedBudget;
    if (budget_mode && !(schedule.a > 0.0)) {
        const std::size_t m = config.m_param > 0 ? config.m_param : inst.support_size();
        schedule.a = default_a(std::max<std::size_t>(schedule.budget, 1), inst.num_arms(), m, schedule.delta);
    }

    RandomStream stream = RandomStream::derive(config.base_seed, trial);
    try {
        const RunOutcome outcome = budget_mode ? run_oiafb(inst, schedule, stream, options)
                                               : run_oiafc(inst, schedule, stream, options);
        record.status = to_string(outcome.status);
        record.tau = outcome.rounds;
        record.tau1 = outcome.tau1;
        record.tau2 = outcome.tau2;
        record.n_bs = outcome.n_bs;
        if (outcome.status == RunStatus::kSuccess) {
            record.regret = simple_regret(inst, ground_truth(inst), outcome.rule, config.tie_break);
            record.success = record.regret <= schedule.epsilon;
        }
        record.event_E = config.check_event && event_E_held(inst, outcome.transcript).held;
    } catch (const NumericalFailure&) {
        record.status = "numerical-failure";
    }
    if (config.timing) {
        record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return record;
}

std::size_t resolve_threads(std::size_t requested) {
    std::size_t n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCOREID_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(n, 1);
}

std::vector<TrialRecord> run_experiment(const Instance& inst, const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    config.schedule.validate(inst, false);
    std::vector<TrialRecord> records(config.trials);
    const std::size_t n_threads = std::min(resolve_threads(config.threads), config.trials);
    if (n_threads <= 1) {
        for (std::size_t t = 0; t < config.trials; ++t) records[t] = run_trial(inst, config, t);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t t = next++; t < config.trials && !failed; t = next++) {
                try {
                    records[t] = run_trial(inst, config, t);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
    return records;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string csv_row(const TrialRecord& r) {
    std::string row = std::to_string(r.trial);
    row += ',' + r.status;
    row += ',' + std::to_string(r.tau);
    row += ',' + std::to_string(r.tau1);
    row += ',' + std::to_string(r.tau2);
    row += ',' + std::to_string(r.n_bs);
    row += r.success ? ",1" : ",0";
    row += ',' + format_double(r.regret);
    row += r.event_E ? ",1" : ",0";
    row += ',' + format_double(r.wall_ms);
    return row;
}

std::string to_csv(const std::vector<TrialRecord>& records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const TrialRecord& r : records) out += csv_row(r) + "\n";
    return out;
}

std::string run_sweep(const Instance& inst, const SweepConfig& sweep, std::ostream* progress) {
    const bool budget_mode = sweep.base.algorithm == Algorithm::kFixedBudget;
    const std::vector<double> epsilons = sweep.epsilons.empty() ? std::vector{sweep.base.schedule.epsilon}
                                                                : sweep.epsilons;
    const std::vector<double> deltas = sweep.deltas.empty() ? std::vector{sweep.base.schedule.delta} : sweep.deltas;
    std::vector<std::size_t> budgets{sweep.base.schedule.budget};
    if (budget_mode && !sweep.budgets.empty()) budgets = sweep.budgets;

    std::string out = std::string("algo,epsilon,delta,budget,") + kCsvHeader + "\n";
    for (double eps : epsilons) {
        for (double delta : deltas) {
            for (std::size_t budget : budgets) {
                ExperimentConfig config = sweep.base;
                config.schedule.epsilon = eps;
                config.schedule.delta = delta;
                config.schedule.budget = budget;
                const auto records = run_experiment(inst, config);
                const std::string prefix = std::string(to_string(config.algorithm)) + ',' + format_double(eps) + ',' +
                                           format_double(delta) + ',' + std::to_string(budget_mode ? budget : 0) +
                                           ',';
                for (const TrialRecord& r : records) out += prefix + csv_row(r) + "\n";
                if (progress) {
                    *progress << to_string(config.algorithm) << " eps=" << format_double(eps)
                              << " delta=" << format_double(delta);
                    if (budget_mode) *progress << " T=" << budget;
                    *progress << ": ";
                    print_summary(*progress, summarize(records));
                }
            }
        }
    }
    return out;
}

void print_summary(std::ostream& out, const ExperimentSummary& s) {
    out << "trials " << s.trials << ", success " << s.successes << " (" << format_double(s.success_rate)
        << ", 95% CI [" << format_double(s.success_ci.lower) << ", " << format_double(s.success_ci.upper)
        << "]), mean tau " << format_double(s.mean_tau) << ", mean regret " << format_double(s.mean_regret);
    if (s.failures > 0) out << ", numerical failures " << s.failures;
    out << "\n";
}

}  // namespace scoreid
