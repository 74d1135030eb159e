#pragma once

#include <iosfwd>
#include <string>

#include "scoreid/domain.hpp"

namespace scoreid {

/// Parses an instance from JSON text. Probability vectors within tolerance
/// of the simplex are renormalized; oracle rules are rebuilt when absent.
/// The result has passed validate_instance.
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);

std::string instance_to_json(const Instance& inst);

void save_instance(const Instance& inst, const std::string& path);

}  // namespace scoreid
