#include "scoreid/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scoreid/errors.hpp"

namespace scoreid {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double fixed_confidence_radius(std::size_t num_arms, std::size_t m_param, std::size_t t, double delta, std::size_t n) {
    if (n == 0) return kInf;
    // ln(4 K 2^M t^2 / delta) with 2^M kept in log space.
    const double td = static_cast<double>(t);
    const double log_term = std::log(4.0 * static_cast<double>(num_arms) * td * td / delta) +
                            static_cast<double>(m_param) * std::log(2.0);
    return std::sqrt(2.0 * log_term / static_cast<double>(n));
}

double fixed_budget_radius(double a, std::size_t n) {
    if (n == 0) return kInf;
    return std::sqrt(a / static_cast<double>(n));
}

EstimatorState::EstimatorState(std::size_t num_arms, std::size_t support_size, RadiusConfig config)
    : support_size_(support_size),
      config_(config),
      counts_(num_arms, 0),
      histograms_(num_arms, std::vector<std::size_t>(support_size, 0)) {}

void EstimatorState::update(const ScoringRule& announced, std::size_t arm, std::size_t report) {
    ++counts_[arm];
    ++histograms_[arm][report];
    history_values_.insert(history_values_.end(), announced.values.begin(), announced.values.end());
    history_arms_.push_back(arm);
}

std::vector<double> EstimatorState::q_hat(std::size_t k) const {
    if (counts_[k] == 0) throw UnvisitedArm(k);
    std::vector<double> q(support_size_);
    const double n = static_cast<double>(counts_[k]);
    for (std::size_t i = 0; i < support_size_; ++i) q[i] = static_cast<double>(histograms_[k][i]) / n;
    return q;
}

double EstimatorState::radius(std::size_t k) const {
    if (counts_[k] == 0) throw UnvisitedArm(k);
    if (config_.mode == RadiusMode::kFixedBudget) return fixed_budget_radius(config_.a, counts_[k]);
    return fixed_confidence_radius(num_arms(), m_param(), round(), config_.delta, counts_[k]);
}

double v_hat(const EstimatorState& state, const ScoringRule& rule, std::size_t k) {
    const std::vector<double> q = state.q_hat(k);
    double total = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) total += rule.values[i] * q[i];
    return total;
}

double u_hat(const EstimatorState& state, const Instance& inst, std::size_t k) {
    const std::vector<double> q = state.q_hat(k);
    double total = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) total += inst.support.u_at[i] * q[i];
    return total;
}

namespace {

// min over rounds s with k_s = k of (v_hat_{S_s}(k) - v_hat_{S_s}(k')), +inf
// when arm k never responded or either arm is unvisited.
PairMatrix min_payment_differences(const EstimatorState& state) {
    const std::size_t n_arms = state.num_arms();
    const std::size_t m = state.support_size();
    PairMatrix min_diff(n_arms, kInf);
    std::vector<std::vector<double>> q(n_arms);
    std::vector<bool> visited(n_arms, false);
    for (std::size_t k = 0; k < n_arms; ++k) {
        if (state.count(k) == 0) continue;
        visited[k] = true;
        q[k] = state.q_hat(k);
    }
    std::vector<double> payment(n_arms, 0.0);
    for (std::size_t s = 0; s < state.rounds_recorded(); ++s) {
        const double* values = state.history_values(s);
        for (std::size_t k = 0; k < n_arms; ++k) {
            if (!visited[k]) continue;
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) total += values[i] * q[k][i];
            payment[k] = total;
        }
        const std::size_t arm = state.history_arm(s);
        for (std::size_t other = 0; other < n_arms; ++other) {
            if (other == arm || !visited[other]) continue;
            min_diff(arm, other) = std::min(min_diff(arm, other), payment[arm] - payment[other]);
        }
    }
    return min_diff;
}

}  // namespace

CostBounds cost_bounds(const EstimatorState& state, double score_bound, std::size_t k, std::size_t k_other) {
    CostBounds bounds;
    if (k == k_other || state.count(k) == 0 || state.count(k_other) == 0) return bounds;
    const PairMatrix min_diff = min_payment_differences(state);
    const double pad = score_bound * (state.radius(k) + state.radius(k_other));
    if (std::isfinite(min_diff(k, k_other))) bounds.plus = min_diff(k, k_other) + pad;
    // max over s with k_s = k' of (v(k) - v(k')) = -min over the same rounds of (v(k') - v(k)).
    if (std::isfinite(min_diff(k_other, k))) bounds.minus = -min_diff(k_other, k) - pad;
    return bounds;
}

CostGraph shortest_path_estimates(const PairMatrix& theta, const PairMatrix& phi) {
    const std::size_t n = theta.size();
    CostGraph graph{theta, phi, PairMatrix(n, 0.0), PairMatrix(n, kInf)};
    for (std::size_t source = 0; source < n; ++source) {
        std::vector<double> dist(n, kInf);
        std::vector<std::size_t> parent(n, n);
        std::vector<bool> done(n, false);
        dist[source] = 0.0;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t u = n;
            for (std::size_t v = 0; v < n; ++v) {
                if (!done[v] && std::isfinite(dist[v]) && (u == n || dist[v] < dist[u])) u = v;
            }
            if (u == n) break;
            done[u] = true;
            for (std::size_t v = 0; v < n; ++v) {
                if (done[v] || v == u || !std::isfinite(phi(u, v))) continue;
                const double candidate = dist[u] + phi(u, v);
                if (candidate < dist[v]) {
                    dist[v] = candidate;
                    parent[v] = u;
                }
            }
        }
        for (std::size_t target = 0; target < n; ++target) {
            graph.i_c(source, target) = dist[target];
            if (target == source || !std::isfinite(dist[target])) continue;
            std::vector<std::size_t> path{target};
            while (path.back() != source) path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            double total = 0.0;
            for (std::size_t e = 0; e + 1 < path.size(); ++e) total += theta(path[e], path[e + 1]);
            graph.c_hat(source, target) = total;
        }
    }
    return graph;
}

CostGraph cost_estimate(const EstimatorState& state, double score_bound) {
    const std::size_t n_arms = state.num_arms();
    const PairMatrix min_diff = min_payment_differences(state);
    std::vector<double> radius(n_arms, kInf);
    for (std::size_t k = 0; k < n_arms; ++k) {
        if (state.count(k) > 0) radius[k] = state.radius(k);
    }
    PairMatrix theta(n_arms, 0.0);
    PairMatrix phi(n_arms, kInf);
    for (std::size_t k = 0; k < n_arms; ++k) {
        phi(k, k) = 0.0;
        for (std::size_t other = 0; other < n_arms; ++other) {
            if (other == k) continue;
            if (!std::isfinite(min_diff(k, other)) || !std::isfinite(min_diff(other, k))) continue;
            const double pad = score_bound * (radius[k] + radius[other]);
            const double plus = min_diff(k, other) + pad;
            const double minus = -min_diff(other, k) - pad;
            theta(k, other) = 0.5 * (plus + minus);
            phi(k, other) = 0.5 * std::abs(plus - minus);
        }
    }
    return shortest_path_estimates(theta, phi);
}

double gamma(const EstimatorState& state, const CostGraph& graph, double score_bound, std::size_t k,
             std::size_t k_other, double oracle_margin) {
    return 2.0 / oracle_margin * (graph.i_c(k, k_other) + score_bound * (state.radius(k) + state.radius(k_other)));
}

RoundEstimates estimate_round(const EstimatorState& state, const Instance& inst) {
    RoundEstimates est;
    est.round = state.round();
    const std::size_t n_arms = state.num_arms();
    est.q_hat.resize(n_arms);
    est.radius.resize(n_arms);
    est.u_hat.resize(n_arms);
    for (std::size_t k = 0; k < n_arms; ++k) {
        est.q_hat[k] = state.q_hat(k);
        est.radius[k] = state.radius(k);
        double u = 0.0;
        for (std::size_t i = 0; i < est.q_hat[k].size(); ++i) u += inst.support.u_at[i] * est.q_hat[k][i];
        est.u_hat[k] = u;
    }
    est.cost = cost_estimate(state, inst.score_bound);
    return est;
}

}  // namespace scoreid
