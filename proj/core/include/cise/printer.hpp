#pragma once

#include <string>

#include "cise/spec.hpp"

namespace cise {

/// Precedence-aware rendering; parses back to a structurally identical tree.
std::string to_string(const ExprPtr& e);

/// Renders the whole specification as canonical DSL text.
std::string to_source(const Specification& spec);

}  // namespace cise
