#pragma once

#include <cstddef>
#include <vector>

namespace scoreid {

/// Savage-form scoring rule over a finite belief support.
///
/// `values[i]` is the convex potential G at support belief i and
/// `subgradients[i]` a subgradient of G there. Reporting support point i and
/// observing state w pays the supporting affine piece at i evaluated at e_w:
///
///     S(w, i) = values[i] + <subgradients[i], e_w - sigma_i>.
///
/// Under a truthful report the expected score at sigma_i is exactly values[i].
struct ScoringRule {
    std::vector<double> values;
    std::vector<std::vector<double>> subgradients;

    std::size_t support_size() const { return values.size(); }
    std::size_t num_states() const { return subgradients.empty() ? 0 : subgradients.front().size(); }

    /// Constant rule: pays `c` for every (state, report).
    static ScoringRule constant(std::size_t support_size, std::size_t num_states, double c);

    bool operator==(const ScoringRule&) const = default;
};

}  // namespace scoreid
