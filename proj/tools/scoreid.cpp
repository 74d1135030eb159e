#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "scoreid/evaluation.hpp"
#include "scoreid/harness.hpp"
#include "scoreid/instance_io.hpp"
#include "scoreid/lp.hpp"
#include "scoreid/programs.hpp"

using namespace scoreid;

namespace {

struct RunFlags {
    std::string instance;
    std::string algo = "fc";
    std::vector<double> epsilon{1.0};
    std::vector<double> delta{0.1};
    std::vector<std::size_t> budget{1000};
    double a = 0.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string alpha = "dep";
    std::size_t round_cap = 100'000;
    std::string out;
    std::string dump_lp;
    bool bs_on_match = false;
    bool timing = false;
    std::string tie_break = "lowest";
    std::size_t m_param = 0;
    std::size_t threads = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool lists) {
    cmd->add_option("--instance", f.instance, "Instance JSON (default: the reference instance)");
    cmd->add_option("--algo", f.algo, "fc (fixed confidence) or fb (fixed budget)")
        ->check(CLI::IsMember({"fc", "fb"}));
    auto* eps = cmd->add_option("--epsilon", f.epsilon, "Target accuracy");
    auto* delta = cmd->add_option("--delta", f.delta, "Confidence parameter");
    auto* budget = cmd->add_option("--budget", f.budget, "Round budget T (fb)");
    if (lists) {
        eps->delimiter(',');
        delta->delimiter(',');
        budget->delimiter(',');
    } else {
        eps->expected(1);
        delta->expected(1);
        budget->expected(1);
    }
    cmd->add_option("--a", f.a, "Fixed-budget radius constant (default 2 ln(T K 2^M / delta))");
    cmd->add_option("--trials", f.trials, "Trials per configuration")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Base seed; trial i uses base + i");
    cmd->add_option("--alpha", f.alpha, "dep or indep exploration schedule")->check(CLI::IsMember({"dep", "indep"}));
    cmd->add_option("--round-cap", f.round_cap, "Fixed-confidence round cap");
    cmd->add_option("--out", f.out, "CSV output path (default stdout)");
    cmd->add_option("--dump-lp", f.dump_lp, "Write trial 0's first-round UCB programs here");
    cmd->add_flag("--fb-bs-on-match", f.bs_on_match, "Fixed budget: binary search when k_t == k_t^*");
    cmd->add_flag("--timing", f.timing, "Fill wall_ms (output no longer byte-stable)");
    cmd->add_option("--tie-break", f.tie_break, "lowest or principal")
        ->check(CLI::IsMember({"lowest", "principal"}));
    cmd->add_option("--m-param", f.m_param, "Radius support parameter (default |Sigma|)");
    cmd->add_option("--threads", f.threads, "Worker threads (default: all cores, capped by SCOREID_THREADS)");
}

Instance load_or_reference(const std::string& path) { return path.empty() ? reference_instance() : load_instance(path); }

ExperimentConfig make_config(const RunFlags& f) {
    ExperimentConfig c;
    c.algorithm = f.algo == "fb" ? Algorithm::kFixedBudget : Algorithm::kFixedConfidence;
    c.schedule.mode = f.alpha == "indep" ? AlphaMode::kInstanceIndependent : AlphaMode::kInstanceDependent;
    c.schedule.epsilon = f.epsilon.front();
    c.schedule.delta = f.delta.front();
    c.schedule.budget = f.budget.front();
    c.schedule.a = f.a;
    c.trials = f.trials;
    c.base_seed = f.seed;
    c.round_cap = f.round_cap;
    c.tie_break = f.tie_break == "principal" ? TieBreak::kPrincipal : TieBreak::kLowestIndex;
    c.bs_on_match = f.bs_on_match;
    c.m_param = f.m_param;
    c.threads = f.threads;
    c.timing = f.timing;
    return c;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

ProgramSink file_sink(std::ofstream& stream, const std::string& label) {
    return [&stream, label](std::size_t arm, const lp::LinearProgram& program) {
        stream << "\\ " << label << " arm " << arm << "\n" << lp::to_lp_text(program) << "\n";
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best scoring rule identification simulator"};
    app.require_subcommand(1);

    GeneratorSpec gen_spec = reference_spec();
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("--states", gen_spec.n_states, "Number of states")->capture_default_str();
    gen->add_option("--decisions", gen_spec.n_decisions, "Number of principal decisions")->capture_default_str();
    gen->add_option("--arms", gen_spec.n_arms, "Number of agent actions")->capture_default_str();
    gen->add_option("--support", gen_spec.support_size, "Belief support size M")->capture_default_str();
    gen->add_option("--min-gap", gen_spec.min_gap, "Minimum best-arm gap")->capture_default_str();
    gen->add_option("--B-S", gen_spec.score_bound, "Score bound")->capture_default_str();
    gen->add_option("--B-u", gen_spec.utility_bound, "Utility bound")->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path (default stdout)");

    std::string solve_instance;
    std::string solve_out;
    std::string solve_dump;
    auto* solve = app.add_subcommand("solve", "Exact per-arm optima of the instance");
    solve->add_option("--instance", solve_instance, "Instance JSON (default: the reference instance)");
    solve->add_option("--out", solve_out, "CSV output path");
    solve->add_option("--dump-lp", solve_dump, "Write each LP_k here");

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Run one experiment");
    add_run_flags(run, run_flags, false);

    RunFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Grid over epsilon, delta and T (comma-separated lists)");
    add_run_flags(sweep, sweep_flags, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            write_output(gen_out, instance_to_json(generate_instance(gen_spec)));
            return 0;
        }
        if (solve->parsed()) {
            const Instance inst = load_or_reference(solve_instance);
            if (!solve_dump.empty()) {
                std::ofstream dump(solve_dump);
                const auto q = [&] {
                    std::vector<std::vector<double>> out;
                    for (const Arm& a : inst.arms) out.push_back(a.q);
                    return out;
                }();
                for (std::size_t k = 0; k < inst.num_arms(); ++k) {
                    solve_lp_k(inst, k, q, true_cost_differences(inst), PairMatrix(inst.num_arms(), 0.0),
                               file_sink(dump, "LP_k"));
                }
            }
            const GroundTruth truth = ground_truth(inst);
            std::string csv = "arm,u_k,cost,h_star,gap,best\n";
            for (std::size_t k = 0; k < inst.num_arms(); ++k) {
                csv += std::to_string(k) + ',' + format_double(truth.arm_utility[k]) + ',' +
                       format_double(inst.arms[k].cost) + ',' + format_double(truth.h_star[k]) + ',' +
                       format_double(truth.gaps[k]) + ',' + (k == truth.best_arm ? "1" : "0") + "\n";
            }
            write_output(solve_out, csv);
            if (!solve_out.empty()) std::cout << csv;
            return 0;
        }
        if (run->parsed()) {
            const Instance inst = load_or_reference(run_flags.instance);
            ExperimentConfig config = make_config(run_flags);
            std::ofstream dump;
            if (!run_flags.dump_lp.empty()) {
                dump.open(run_flags.dump_lp);
                config.program_sink = file_sink(dump, "UCB-LP");
            }
            const auto records = run_experiment(inst, config);
            write_output(run_flags.out, to_csv(records));
            print_summary(std::cerr, summarize(records));
            return 0;
        }
        if (sweep->parsed()) {
            const Instance inst = load_or_reference(sweep_flags.instance);
            SweepConfig config;
            config.base = make_config(sweep_flags);
            config.epsilons = sweep_flags.epsilon;
            config.deltas = sweep_flags.delta;
            config.budgets = sweep_flags.budget;
            write_output(sweep_flags.out, run_sweep(inst, config, &std::cerr));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
