#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scoreid/domain.hpp"
#include "scoreid/programs.hpp"
#include "scoreid/random.hpp"
#include "scoreid/scoring.hpp"
#include "scoreid/scoring_rule.hpp"

namespace testing_support {

using namespace scoreid;

// 2 states, u(w, d) = 1{w = d}, support {(0.9,0.1), (0.1,0.9), (0.5,0.5)};
// arm 0 uniform on the first two beliefs at cost 0.2, arm 1 a point mass on
// the third at cost 0.
inline Instance i2_without_oracles() {
    Instance inst;
    inst.utility.n_states = 2;
    inst.utility.n_decisions = 2;
    inst.utility.u = {1.0, 0.0, 0.0, 1.0};
    inst.utility.bound = 1.0;
    inst.score_bound = 1.0;
    inst.support = make_support({Belief{{0.9, 0.1}}, Belief{{0.1, 0.9}}, Belief{{0.5, 0.5}}}, inst.utility);
    inst.arms = {Arm{{0.5, 0.5, 0.0}, 0.2}, Arm{{0.0, 0.0, 1.0}, 0.0}};
    return inst;
}

inline Instance i2() {
    Instance inst = i2_without_oracles();
    attach_oracles(inst, build_oracle_rules(inst));
    return inst;
}

inline ScoringRule zero_rule(const Instance& inst) {
    return ScoringRule::constant(inst.support_size(), inst.num_states(), 0.0);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Random proper rule: a uniformly random score menu projected onto the
/// feasible set.
inline ScoringRule random_proper_rule(const Instance& inst, RandomStream& rng) {
    std::vector<std::vector<double>> target(inst.support_size(), std::vector<double>(inst.num_states()));
    for (auto& row : target) {
        for (double& x : row) x = inst.score_bound * (1.4 * rng.uniform() - 0.2);
    }
    return project_rule(inst.support, inst.score_bound, target);
}

/// Value u_k - <q_k, g> if the menu of expected scores g (one per support
/// point, two-state instance) extends to a bounded proper rule inducing arm
/// k, otherwise -inf. For fixed g the slope of each affine piece is
/// constrained to an interval (properness against every other support point
/// plus score bounds at the simplex vertices), so the check is exact.
inline double grid_point_value(const Instance& inst, std::size_t k, const std::vector<double>& p,
                               const std::vector<double>& g) {
    const std::size_t m = p.size();
    const double bs = inst.score_bound;
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        if (g[i] < -1e-12 || g[i] > bs + 1e-12) return kNone;
        // l_i(x) = g_i + s (x - p_i), x = probability of state 0.
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        bool feasible = true;
        auto restrict = [&](double coef, double rhs) {  // coef * s <= rhs
            if (coef > 0) hi = std::min(hi, rhs / coef);
            else if (coef < 0) lo = std::max(lo, rhs / coef);
            else if (rhs < -1e-12) feasible = false;
        };
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) restrict(p[j] - p[i], g[j] - g[i]);
        }
        for (double x : {0.0, 1.0}) {
            restrict(x - p[i], bs - g[i]);
            restrict(-(x - p[i]), g[i]);
        }
        if (!feasible || lo > hi + 1e-12) return kNone;
    }
    const double pay_k = dot(inst.arms[k].q, g);
    for (std::size_t other = 0; other < inst.num_arms(); ++other) {
        if (other == k) continue;
        if (pay_k - dot(inst.arms[other].q, g) < inst.arms[k].cost - inst.arms[other].cost - 1e-12) return kNone;
    }
    return inst.arm_utility(k) - pay_k;
}

/// Best value of LP_k over two grids with spacing `step` on a two-state
/// instance: G itself on {0, step, ..., B_S}^M, and G at the lowest belief
/// together with the chord slopes between consecutive beliefs (slopes in
/// [-B_S, B_S]). The second grid resolves rules where beliefs sit closer
/// together than `step`. Both are restrictions of the feasible set, so the
/// result never exceeds the optimum. Returns -inf when no grid point is
/// feasible.
inline double grid_search_h(const Instance& inst, std::size_t k, double step) {
    const std::size_t m = inst.support_size();
    const double bs = inst.score_bound;
    const std::size_t levels = static_cast<std::size_t>(std::llround(bs / step)) + 1;
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = inst.support.beliefs[i].probs[0];

    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> g(m);
    while (true) {
        for (std::size_t i = 0; i < m; ++i) g[i] = std::min(bs, static_cast<double>(idx[i]) * step);
        best = std::max(best, grid_point_value(inst, k, p, g));
        std::size_t pos = 0;
        while (pos < m && ++idx[pos] == levels) idx[pos++] = 0;
        if (pos == m) break;
    }

    // chord-slope grid
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    const std::size_t slope_levels = 2 * (levels - 1) + 1;
    std::vector<std::size_t> sidx(m, 0);  // sidx[0]: G level, sidx[1..]: slope levels
    while (true) {
        bool convex = true;
        for (std::size_t j = 2; j < m && convex; ++j) convex = sidx[j] >= sidx[j - 1];
        if (convex) {
            g[order[0]] = std::min(bs, static_cast<double>(sidx[0]) * step);
            for (std::size_t j = 1; j < m; ++j) {
                const double slope = std::clamp(-bs + static_cast<double>(sidx[j]) * step, -bs, bs);
                g[order[j]] = g[order[j - 1]] + slope * (p[order[j]] - p[order[j - 1]]);
            }
            best = std::max(best, grid_point_value(inst, k, p, g));
        }
        std::size_t pos = 0;
        while (pos < m && ++sidx[pos] == (pos == 0 ? levels : slope_levels)) sidx[pos++] = 0;
        if (pos == m) break;
    }
    return best;
}

}  // namespace testing_support
