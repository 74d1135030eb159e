#include "scoreid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scoreid/errors.hpp"

namespace scoreid::lp {

std::size_t LinearProgram::add_variable(std::string name, double lo, double hi, double cost) {
    if (names.size() < num_variables) names.resize(num_variables);
    ++num_variables;
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    names.push_back(std::move(name));
    for (auto& row : constraints) row.coefficients.resize(num_variables, 0.0);
    return num_variables - 1;
}

Constraint& LinearProgram::add_row(Relation rel, double bound, std::string name) {
    Constraint row;
    row.coefficients.assign(num_variables, 0.0);
    row.relation = rel;
    row.bound = bound;
    row.name = std::move(name);
    constraints.push_back(std::move(row));
    return constraints.back();
}

const char* to_string(Status status) {
    switch (status) {
        case Status::kOptimal: return "optimal";
        case Status::kInfeasible: return "infeasible";
        case Status::kUnbounded: return "unbounded";
    }
    return "?";
}

namespace {

// x_j = offset + sum(sign * y_col) over at most two nonnegative columns.
struct VariableMap {
    double offset = 0.0;
    std::size_t col = 0;
    double sign = 1.0;
    bool split = false;  // free variable: x = y_col - y_{col+1}
};

struct StandardRow {
    std::vector<double> coefficients;  // over y columns
    Relation relation;
    double rhs;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0) {}

    double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }
    // Row `rows_` holds the reduced costs; its rhs is the objective value.
    double& cost(std::size_t c) { return at(rows_, c); }
    double cost(std::size_t c) const { return at(rows_, c); }
    double& value() { return at(rows_, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const std::size_t width = cols_ + 1;
        double* prow = &cells_[pr * width];
        const double inv = 1.0 / prow[pc];
        for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            double* row = &cells_[r * width];
            const double factor = row[pc];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < width; ++c) row[c] -= factor * prow[c];
            row[pc] = 0.0;
        }
    }

    void remove_row(std::size_t r) {
        const std::size_t width = cols_ + 1;
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * width),
                     cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
        --rows_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cells_;
};

enum class IterateResult { kOptimal, kUnbounded };

// Bland's rule: lowest-index improving column, ties in the ratio test go to
// the lowest-index basic variable.
IterateResult iterate(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed_cols,
                      const SolverOptions& options, std::size_t& iterations) {
    while (true) {
        if (iterations >= options.iteration_cap) {
            throw NumericalFailure("simplex iteration cap reached");
        }
        std::size_t entering = allowed_cols;
        for (std::size_t c = 0; c < allowed_cols; ++c) {
            if (t.cost(c) < -options.optimality_tolerance) {
                entering = c;
                break;
            }
        }
        if (entering == allowed_cols) return IterateResult::kOptimal;

        std::size_t leaving = t.rows();
        double best_ratio = kInfinity;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double a = t.at(r, entering);
            if (a <= options.pivot_tolerance) continue;
            const double ratio = std::max(t.rhs(r), 0.0) / a;
            if (leaving == t.rows() || ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                leaving = r;
            } else if (ratio <= best_ratio + 1e-12 && basis[r] < basis[leaving]) {
                leaving = r;
            }
        }
        if (leaving == t.rows()) return IterateResult::kUnbounded;
        t.pivot(leaving, entering);
        basis[leaving] = entering;
        ++iterations;
    }
}

}  // namespace

Solution solve(const LinearProgram& program, const SolverOptions& options) {
    const std::size_t n = program.num_variables;
    if (program.objective.size() != n || program.lower.size() != n || program.upper.size() != n) {
        throw NumericalFailure("linear program dimensions are inconsistent");
    }
    for (double c : program.objective) {
        if (!std::isfinite(c)) throw NumericalFailure("non-finite objective coefficient");
    }

    // Map original variables onto nonnegative columns.
    std::vector<VariableMap> maps(n);
    std::size_t n_y = 0;
    std::vector<StandardRow> rows;
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = program.lower[j];
        const double hi = program.upper[j];
        if (lo > hi) {
            Solution infeasible;
            infeasible.status = Status::kInfeasible;
            return infeasible;
        }
        VariableMap& map = maps[j];
        if (std::isfinite(lo)) {
            map = {lo, n_y++, 1.0, false};
        } else if (std::isfinite(hi)) {
            map = {hi, n_y++, -1.0, false};
        } else {
            map = {0.0, n_y, 1.0, true};
            n_y += 2;
        }
    }
    auto expand = [&](const std::vector<double>& coefficients, double& constant) {
        std::vector<double> out(n_y, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = coefficients[j];
            if (a == 0.0) continue;
            if (!std::isfinite(a)) throw NumericalFailure("non-finite constraint coefficient");
            const VariableMap& map = maps[j];
            constant += a * map.offset;
            out[map.col] += a * map.sign;
            if (map.split) out[map.col + 1] -= a;
        }
        return out;
    };

    for (std::size_t j = 0; j < n; ++j) {
        const double lo = program.lower[j];
        const double hi = program.upper[j];
        if (std::isfinite(lo) && std::isfinite(hi)) {
            StandardRow row{std::vector<double>(n_y, 0.0), Relation::kLessEqual, hi - lo};
            row.coefficients[maps[j].col] = 1.0;
            rows.push_back(std::move(row));
        }
    }
    for (const Constraint& c : program.constraints) {
        if (c.coefficients.size() != n) throw NumericalFailure("constraint row has wrong length");
        if (!std::isfinite(c.bound)) throw NumericalFailure("non-finite constraint bound");
        double constant = 0.0;
        StandardRow row{expand(c.coefficients, constant), c.relation, 0.0};
        row.rhs = c.bound - constant;
        rows.push_back(std::move(row));
    }
    double objective_constant = program.objective_offset;
    const std::vector<double> cost_y = expand(program.objective, objective_constant);

    // Normalize to nonnegative right-hand sides.
    for (StandardRow& row : rows) {
        if (row.rhs < 0.0) {
            row.rhs = -row.rhs;
            for (double& a : row.coefficients) a = -a;
            if (row.relation == Relation::kLessEqual) {
                row.relation = Relation::kGreaterEqual;
            } else if (row.relation == Relation::kGreaterEqual) {
                row.relation = Relation::kLessEqual;
            }
        }
    }

    std::size_t n_slack = 0;
    std::size_t n_artificial = 0;
    for (const StandardRow& row : rows) {
        if (row.relation != Relation::kEqual) ++n_slack;
        if (row.relation != Relation::kLessEqual) ++n_artificial;
    }
    const std::size_t first_artificial = n_y + n_slack;
    const std::size_t n_cols = first_artificial + n_artificial;
    Tableau t(rows.size(), n_cols);
    std::vector<std::size_t> basis(rows.size());
    std::size_t slack_col = n_y;
    std::size_t artificial_col = first_artificial;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const StandardRow& row = rows[r];
        for (std::size_t c = 0; c < n_y; ++c) t.at(r, c) = row.coefficients[c];
        t.rhs(r) = row.rhs;
        if (row.relation == Relation::kLessEqual) {
            t.at(r, slack_col) = 1.0;
            basis[r] = slack_col++;
        } else {
            if (row.relation == Relation::kGreaterEqual) t.at(r, slack_col++) = -1.0;
            t.at(r, artificial_col) = 1.0;
            basis[r] = artificial_col++;
        }
    }

    Solution solution;
    // Phase one: maximize -sum(artificials).
    if (n_artificial > 0) {
        for (std::size_t c = first_artificial; c < n_cols; ++c) t.cost(c) = 1.0;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            if (basis[r] < first_artificial) continue;
            for (std::size_t c = 0; c <= n_cols; ++c) t.at(t.rows(), c) -= t.at(r, c);
        }
        iterate(t, basis, n_cols, options, solution.iterations);
        if (-t.value() > options.infeasibility_tolerance) {
            solution.status = Status::kInfeasible;
            return solution;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < t.rows();) {
            if (basis[r] < first_artificial) {
                ++r;
                continue;
            }
            std::size_t best_col = first_artificial;
            double best_abs = options.pivot_tolerance;
            for (std::size_t c = 0; c < first_artificial; ++c) {
                const double a = std::abs(t.at(r, c));
                if (a > best_abs) {
                    best_abs = a;
                    best_col = c;
                }
            }
            if (best_col == first_artificial) {
                t.remove_row(r);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
            } else {
                t.pivot(r, best_col);
                basis[r] = best_col;
                ++r;
            }
        }
    }

    // Phase two on the original objective.
    for (std::size_t c = 0; c <= n_cols; ++c) t.at(t.rows(), c) = 0.0;
    for (std::size_t c = 0; c < n_y; ++c) t.cost(c) = -cost_y[c];
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const std::size_t b = basis[r];
        const double cb = b < n_y ? cost_y[b] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t c = 0; c <= n_cols; ++c) t.at(t.rows(), c) += cb * t.at(r, c);
    }
    if (iterate(t, basis, first_artificial, options, solution.iterations) == IterateResult::kUnbounded) {
        solution.status = Status::kUnbounded;
        return solution;
    }

    std::vector<double> y(n_y, 0.0);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (basis[r] < n_y) y[basis[r]] = std::max(t.rhs(r), 0.0);
    }
    solution.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const VariableMap& map = maps[j];
        double x = map.offset + map.sign * y[map.col];
        if (map.split) x -= y[map.col + 1];
        solution.x[j] = x;
    }
    solution.objective = program.objective_offset;
    for (std::size_t j = 0; j < n; ++j) solution.objective += program.objective[j] * solution.x[j];
    solution.status = Status::kOptimal;
    return solution;
}

double max_violation(const LinearProgram& program, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < program.num_variables; ++j) {
        worst = std::max(worst, program.lower[j] - x[j]);
        worst = std::max(worst, x[j] - program.upper[j]);
    }
    for (const Constraint& c : program.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < program.num_variables; ++j) lhs += c.coefficients[j] * x[j];
        switch (c.relation) {
            case Relation::kLessEqual: worst = std::max(worst, lhs - c.bound); break;
            case Relation::kGreaterEqual: worst = std::max(worst, c.bound - lhs); break;
            case Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.bound)); break;
        }
    }
    return worst;
}

std::string to_lp_text(const LinearProgram& program) {
    std::ostringstream out;
    out.precision(17);
    auto name = [&](std::size_t j) {
        return j < program.names.size() && !program.names[j].empty() ? program.names[j] : "x" + std::to_string(j);
    };
    auto linear = [&](const std::vector<double>& coefficients) {
        std::ostringstream expr;
        expr.precision(17);
        bool first = true;
        for (std::size_t j = 0; j < coefficients.size(); ++j) {
            const double a = coefficients[j];
            if (a == 0.0) continue;
            if (!first || a < 0.0) expr << (a < 0.0 ? " - " : " + ");
            expr << std::abs(a) << ' ' << name(j);
            first = false;
        }
        if (first) expr << "0 " << name(0);
        return expr.str();
    };
    out << "Maximize\n obj: " << linear(program.objective);
    if (program.objective_offset != 0.0) {
        out << (program.objective_offset < 0.0 ? " - " : " + ") << std::abs(program.objective_offset);
    }
    out << "\nSubject To\n";
    for (std::size_t r = 0; r < program.constraints.size(); ++r) {
        const Constraint& c = program.constraints[r];
        out << ' ' << (c.name.empty() ? "c" + std::to_string(r) : c.name) << ": " << linear(c.coefficients);
        switch (c.relation) {
            case Relation::kLessEqual: out << " <= "; break;
            case Relation::kGreaterEqual: out << " >= "; break;
            case Relation::kEqual: out << " = "; break;
        }
        out << c.bound << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < program.num_variables; ++j) {
        const double lo = program.lower[j];
        const double hi = program.upper[j];
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            out << ' ' << name(j) << " free\n";
            continue;
        }
        out << ' ';
        if (std::isfinite(lo)) {
            out << lo;
        } else {
            out << "-inf";
        }
        out << " <= " << name(j) << " <= ";
        if (std::isfinite(hi)) {
            out << hi;
        } else {
            out << "+inf";
        }
        out << '\n';
    }
    out << "End\n";
    return out.str();
}

}  // namespace scoreid::lp
