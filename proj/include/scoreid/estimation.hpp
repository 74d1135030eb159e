#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scoreid/domain.hpp"
#include "scoreid/matrix.hpp"
#include "scoreid/scoring_rule.hpp"

namespace scoreid {

enum class RadiusMode { kFixedConfidence, kFixedBudget };

struct RadiusConfig {
    RadiusMode mode = RadiusMode::kFixedConfidence;
    double delta = 0.1;      // fixed-confidence level
    double a = 1.0;          // fixed-budget exploration constant
    std::size_t m_param = 0; // support-size parameter in the radius; 0 means |Sigma|
};

/// sqrt(2 ln(4 K 2^M t^2 / delta) / N), natural log.
double fixed_confidence_radius(std::size_t num_arms, std::size_t m_param, std::size_t t, double delta, std::size_t n);

/// sqrt(a / N).
double fixed_budget_radius(double a, std::size_t n);

/// Online statistics for one run: per-arm report histograms and the value
/// vector of every announced rule together with the arm that responded.
class EstimatorState {
public:
    EstimatorState(std::size_t num_arms, std::size_t support_size, RadiusConfig config);

    /// Records one announcement: the rule, the responding arm and its report.
    void update(const ScoringRule& announced, std::size_t arm, std::size_t report);

    /// Index t of the round about to be played (1 + rounds recorded).
    std::size_t round() const { return history_arms_.size() + 1; }
    std::size_t rounds_recorded() const { return history_arms_.size(); }

    std::size_t num_arms() const { return counts_.size(); }
    std::size_t support_size() const { return support_size_; }
    std::size_t m_param() const { return config_.m_param == 0 ? support_size_ : config_.m_param; }
    const RadiusConfig& config() const { return config_; }

    std::size_t count(std::size_t k) const { return counts_[k]; }
    const std::vector<std::size_t>& histogram(std::size_t k) const { return histograms_[k]; }

    /// Empirical distribution of reports under arm k. Throws UnvisitedArm.
    std::vector<double> q_hat(std::size_t k) const;

    /// I_q^t(k) at the current round. Throws UnvisitedArm.
    double radius(std::size_t k) const;

    /// Values of the announced rule at history position s (0-based).
    const double* history_values(std::size_t s) const { return &history_values_[s * support_size_]; }
    std::size_t history_arm(std::size_t s) const { return history_arms_[s]; }

private:
    std::size_t support_size_;
    RadiusConfig config_;
    std::vector<std::size_t> counts_;
    std::vector<std::vector<std::size_t>> histograms_;
    std::vector<double> history_values_;  // rounds x support, row-major
    std::vector<std::size_t> history_arms_;
};

/// <rule values, q_hat_k>.
double v_hat(const EstimatorState& state, const ScoringRule& rule, std::size_t k);
/// <u_at, q_hat_k>.
double u_hat(const EstimatorState& state, const Instance& inst, std::size_t k);

struct CostBounds {
    std::optional<double> plus;   // C_+(k, k'); empty when arm k never responded
    std::optional<double> minus;  // C_-(k, k'); empty when arm k' never responded
};

CostBounds cost_bounds(const EstimatorState& state, double score_bound, std::size_t k, std::size_t k_other);

/// theta/phi per pair and the shortest-path estimates derived from them.
/// phi(k, k') is +inf when the pair lacks data; i_c(k, k') is +inf when no
/// path connects the pair (c_hat is then 0 and meaningless).
struct CostGraph {
    PairMatrix theta;
    PairMatrix phi;
    PairMatrix c_hat;
    PairMatrix i_c;
};

/// Shortest paths under edge length phi; c_hat sums theta along each path
/// in path order, i_c sums phi.
CostGraph shortest_path_estimates(const PairMatrix& theta, const PairMatrix& phi);

/// C_+/C_- for every pair from the full history, then shortest paths.
CostGraph cost_estimate(const EstimatorState& state, double score_bound);

/// 2 / margin * (I_c(k, k') + B_S (I_q(k) + I_q(k'))).
double gamma(const EstimatorState& state, const CostGraph& graph, double score_bound, std::size_t k,
             std::size_t k_other, double oracle_margin);

/// Everything an algorithm reads at the start of round t.
struct RoundEstimates {
    std::size_t round = 0;
    std::vector<std::vector<double>> q_hat;
    std::vector<double> radius;
    std::vector<double> u_hat;
    CostGraph cost;
};

RoundEstimates estimate_round(const EstimatorState& state, const Instance& inst);

}  // namespace scoreid
