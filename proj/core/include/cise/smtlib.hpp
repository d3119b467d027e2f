#pragma once

#include <string>

#include "cise/vcgen.hpp"

namespace cise::solve {

/// SMT-LIB2 sort expression for a DSL sort ("Int", "(Array Client Int)").
std::string smt_sort(const Sort& sort);

/// SMT-LIB2 term for an expression; symbols are emitted |quoted| so the
/// mangled names (balance@1, amount#2) pass through verbatim.
std::string smt_term(const ExprPtr& e);

/// The full preamble + declarations + assertion + (check-sat) script for a
/// task. The emitted text is exactly what the solver process receives before
/// any model queries.
std::string to_smtlib(const vc::VerificationTask& task);

}  // namespace cise::solve
