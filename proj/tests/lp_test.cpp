#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "scoreid/errors.hpp"
#include "scoreid/lp.hpp"
#include "scoreid/random.hpp"

using namespace scoreid;
using lp::LinearProgram;
using lp::Relation;
using lp::Status;

namespace {

struct Halfspace {
    std::vector<double> a;
    double b;  // a.x <= b
};

// Solves the square system A x = b by Gaussian elimination with partial
// pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        if (std::abs(a[piv][c]) < 1e-10) return false;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

// Maximum of c.x over a bounded polyhedron by enumerating every basic
// solution; -inf when empty.
double vertex_enumeration(const std::vector<Halfspace>& rows, const std::vector<double>& c) {
    const std::size_t n = c.size();
    const std::size_t m = rows.size();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t i : pick) {
            a.push_back(rows[i].a);
            b.push_back(rows[i].b);
        }
        std::vector<double> x;
        if (solve_square(a, b, x)) {
            bool ok = true;
            for (const Halfspace& h : rows) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < n; ++j) lhs += h.a[j] * x[j];
                if (lhs > h.b + 1e-8) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                double v = 0.0;
                for (std::size_t j = 0; j < n; ++j) v += c[j] * x[j];
                best = std::max(best, v);
            }
        }
        // next n-combination of m
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace

TEST(Simplex, SingleUpperBound) {
    LinearProgram p(1);
    p.objective = {1.0};
    p.add_row(Relation::kLessEqual, 3.0).coefficients = {1.0};
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 3.0, 1e-12);
}

TEST(Simplex, Infeasible) {
    LinearProgram p(1);
    p.objective = {1.0};
    p.add_row(Relation::kLessEqual, -1.0).coefficients = {1.0};
    EXPECT_EQ(lp::solve(p).status, Status::kInfeasible);
}

TEST(Simplex, TiedOptimum) {
    LinearProgram p(2);
    p.objective = {1.0, 1.0};
    p.add_row(Relation::kLessEqual, 1.0).coefficients = {1.0, 1.0};
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(Simplex, Unbounded) {
    LinearProgram p(2);
    p.objective = {1.0, 0.0};
    p.add_row(Relation::kLessEqual, 1.0).coefficients = {-1.0, 1.0};
    EXPECT_EQ(lp::solve(p).status, Status::kUnbounded);
}

TEST(Simplex, FreeVariablesEqualitiesAndOffset) {
    // max -|x - 2| style: max -e, e >= x - 2, e >= 2 - x, x free, x = 0.5 + y, y in [0, 1]
    LinearProgram p;
    const auto x = p.add_variable("x", -lp::kInfinity, lp::kInfinity);
    const auto e = p.add_variable("e", 0.0, lp::kInfinity, -1.0);
    const auto y = p.add_variable("y", 0.0, 1.0);
    p.objective_offset = 10.0;
    {
        auto& r = p.add_row(Relation::kGreaterEqual, -2.0);
        r.coefficients[e] = 1.0;
        r.coefficients[x] = -1.0;
    }
    {
        auto& r = p.add_row(Relation::kGreaterEqual, 2.0);
        r.coefficients[e] = 1.0;
        r.coefficients[x] = 1.0;
    }
    {
        auto& r = p.add_row(Relation::kEqual, 0.5);
        r.coefficients[x] = 1.0;
        r.coefficients[y] = -1.0;
    }
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.x[x], 1.5, 1e-9);
    EXPECT_NEAR(s.objective, 10.0 - 0.5, 1e-9);
    EXPECT_LE(lp::max_violation(p, s.x), 1e-9);
}

TEST(Simplex, NegativeLowerAndUpperOnlyBounds) {
    LinearProgram p;
    const auto a = p.add_variable("a", -3.0, -1.0, -1.0);       // wants a = -3
    const auto b = p.add_variable("b", -lp::kInfinity, 2.0, 1.0);  // wants b = 2
    auto& r = p.add_row(Relation::kLessEqual, 0.0);
    r.coefficients[a] = 1.0;
    r.coefficients[b] = 1.0;
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.x[a], -3.0, 1e-9);
    EXPECT_NEAR(s.x[b], 2.0, 1e-9);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
    // Classic degenerate program on which Dantzig's rule cycles.
    LinearProgram p(4);
    p.objective = {0.75, -150.0, 1.0 / 50.0, -6.0};
    p.add_row(Relation::kLessEqual, 0.0).coefficients = {0.25, -60.0, -1.0 / 25.0, 9.0};
    p.add_row(Relation::kLessEqual, 0.0).coefficients = {0.5, -90.0, -1.0 / 50.0, 3.0};
    p.add_row(Relation::kLessEqual, 1.0).coefficients = {0.0, 0.0, 1.0, 0.0};
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 0.05, 1e-9);
}

TEST(Simplex, RedundantEqualities) {
    LinearProgram p(2);
    p.objective = {1.0, 2.0};
    p.add_row(Relation::kEqual, 1.0).coefficients = {1.0, 1.0};
    p.add_row(Relation::kEqual, 2.0).coefficients = {2.0, 2.0};
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, 2.0, 1e-9);
}

TEST(Simplex, NonFiniteCoefficientThrows) {
    LinearProgram p(1);
    p.objective = {std::numeric_limits<double>::quiet_NaN()};
    EXPECT_THROW(lp::solve(p), NumericalFailure);
}

TEST(Simplex, MatchesVertexEnumeration) {
    RandomStream rng(314);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const std::size_t rows = 2 + rng.next_u64() % 4;
        LinearProgram p(n);
        std::vector<Halfspace> poly;
        for (std::size_t j = 0; j < n; ++j) {
            p.objective[j] = 2.0 * rng.uniform() - 1.0;
            p.upper[j] = 5.0;
            std::vector<double> e(n, 0.0);
            e[j] = 1.0;
            poly.push_back({e, 5.0});
            e[j] = -1.0;
            poly.push_back({e, 0.0});
        }
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<double> a(n);
            for (double& x : a) x = 2.0 * rng.uniform() - 1.0;
            const double b = 3.0 * rng.uniform() - 1.0;
            const bool ge = rng.uniform() < 0.3;
            auto& row = p.add_row(ge ? Relation::kGreaterEqual : Relation::kLessEqual, b);
            row.coefficients = a;
            if (ge) {
                for (double& x : a) x = -x;
                poly.push_back({a, -b});
            } else {
                poly.push_back({a, b});
            }
        }
        const double reference = vertex_enumeration(poly, p.objective);
        const auto s = lp::solve(p);
        if (std::isinf(reference)) {
            EXPECT_EQ(s.status, Status::kInfeasible) << "trial " << trial;
        } else {
            ASSERT_EQ(s.status, Status::kOptimal) << "trial " << trial;
            EXPECT_NEAR(s.objective, reference, 1e-7) << "trial " << trial;
            EXPECT_LE(lp::max_violation(p, s.x), 1e-7);
        }
    }
}

TEST(Simplex, StrongDuality) {
    // max c.x, A x <= b, x >= 0  versus  min b.y, A^T y >= c, y >= 0.
    RandomStream rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 4;
        const std::size_t m = 2 + rng.next_u64() % 4;
        std::vector<std::vector<double>> a(m, std::vector<double>(n));
        std::vector<double> b(m), c(n);
        for (auto& row : a) {
            for (double& x : row) x = rng.uniform();  // nonnegative keeps the primal bounded
        }
        for (double& x : b) x = 0.5 + rng.uniform();
        for (double& x : c) x = 2.0 * rng.uniform() - 0.5;

        LinearProgram primal(n);
        primal.objective = c;
        for (std::size_t i = 0; i < m; ++i) primal.add_row(Relation::kLessEqual, b[i]).coefficients = a[i];
        LinearProgram dual(m);
        for (std::size_t i = 0; i < m; ++i) dual.objective[i] = -b[i];
        for (std::size_t j = 0; j < n; ++j) {
            auto& row = dual.add_row(Relation::kGreaterEqual, c[j]);
            for (std::size_t i = 0; i < m; ++i) row.coefficients[i] = a[i][j];
        }
        const auto ps = lp::solve(primal);
        const auto ds = lp::solve(dual);
        ASSERT_EQ(ps.status, Status::kOptimal);
        ASSERT_EQ(ds.status, Status::kOptimal);
        EXPECT_NEAR(ps.objective, -ds.objective, 1e-8) << "trial " << trial;
    }
}

TEST(Simplex, Deterministic) {
    LinearProgram p(3);
    p.objective = {1.0, 1.0, 1.0};
    p.add_row(Relation::kLessEqual, 1.0).coefficients = {1.0, 1.0, 1.0};
    const auto a = lp::solve(p);
    const auto b = lp::solve(p);
    EXPECT_EQ(a.x, b.x);
}

TEST(LpText, MentionsNamesAndSense) {
    LinearProgram p;
    p.add_variable("alpha", 0.0, 1.0, 1.0);
    p.add_row(Relation::kLessEqual, 1.0, "cap").coefficients = {1.0};
    const std::string text = lp::to_lp_text(p);
    EXPECT_NE(text.find("Maximize"), std::string::npos);
    EXPECT_NE(text.find("alpha"), std::string::npos);
    EXPECT_NE(text.find("cap"), std::string::npos);
}
