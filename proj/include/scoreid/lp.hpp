#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace scoreid::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
    std::vector<double> coefficients;
    Relation relation = Relation::kLessEqual;
    double bound = 0.0;
    std::string name;
};

/// maximize <objective, x> subject to the rows and lower <= x <= upper.
/// Bounds may be infinite; a variable with both bounds infinite is free.
struct LinearProgram {
    std::size_t num_variables = 0;
    std::vector<double> objective;
    double objective_offset = 0.0;
    std::vector<Constraint> constraints;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> names;

    explicit LinearProgram(std::size_t n = 0)
        : num_variables(n), objective(n, 0.0), lower(n, 0.0), upper(n, kInfinity) {}

    /// Appends a variable and returns its index.
    std::size_t add_variable(std::string name, double lo, double hi, double cost = 0.0);
    Constraint& add_row(Relation rel, double bound, std::string name = {});
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status status);

struct Solution {
    Status status = Status::kInfeasible;
    double objective = 0.0;  // includes objective_offset
    std::vector<double> x;
    std::size_t iterations = 0;
};

struct SolverOptions {
    std::size_t iteration_cap = 1'000'000;
    double pivot_tolerance = 1e-9;
    double optimality_tolerance = 1e-10;
    double infeasibility_tolerance = 1e-7;
};

/// Dense two-phase tableau simplex with Bland's pivoting rule. Deterministic:
/// identical programs give identical results. Throws NumericalFailure when
/// the iteration cap is hit or the program has non-finite coefficients.
Solution solve(const LinearProgram& program, const SolverOptions& options = {});

/// Largest violation of any row or bound at `x` (0 when feasible).
double max_violation(const LinearProgram& program, const std::vector<double>& x);

/// Program in CPLEX-style LP text, for debugging dumps.
std::string to_lp_text(const LinearProgram& program);

}  // namespace scoreid::lp
