#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scoreid {

/// Why an instance (or one of its parts) was rejected.
enum class ValidationKind {
    kShape,               // dimensions disagree or a count is below its minimum
    kSimplex,             // a probability vector is off the simplex
    kBound,               // a utility, cost, score or bound is out of range
    kDuplicateBelief,     // two support points coincide
    kImproperRule,        // an oracle rule fails convexity/boundedness
    kOracleMargin,        // an oracle rule does not induce its arm by the margin
};

const char* to_string(ValidationKind kind);

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ValidationKind kind() const { return kind_; }

private:
    ValidationKind kind_;
};

/// Simplex cycling, iteration cap or ill-conditioning.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No rule makes `arm` the strict best response by the margin floor.
class OracleInfeasible : public std::runtime_error {
public:
    OracleInfeasible(std::size_t arm, double margin)
        : std::runtime_error("oracle infeasible for arm " + std::to_string(arm) +
                             " (best margin " + std::to_string(margin) + ")"),
          arm_(arm), margin_(margin) {}

    std::size_t arm() const { return arm_; }
    double margin() const { return margin_; }

private:
    std::size_t arm_;
    double margin_;
};

/// An estimate was requested for an arm with no observations.
class UnvisitedArm : public std::runtime_error {
public:
    explicit UnvisitedArm(std::size_t arm)
        : std::runtime_error("arm " + std::to_string(arm) + " has no observations"), arm_(arm) {}

    std::size_t arm() const { return arm_; }

private:
    std::size_t arm_;
};

class GenerationExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scoreid
