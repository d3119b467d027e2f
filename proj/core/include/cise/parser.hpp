#pragma once

#include <string>
#include <string_view>

#include "cise/spec.hpp"

namespace cise {

/// Lexes, parses, resolves and sort-checks one specification.
///
/// `origin` is recorded as Specification::source_name and used in diagnostics
/// and reports. Throws SyntaxError, SortError, UnresolvedName,
/// DuplicateDefinition or MissingSection.
Specification parse_spec(std::string_view source, std::string origin);

}  // namespace cise
