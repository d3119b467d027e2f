#include "cise/source.hpp"

#include <sstream>

namespace cise {

std::string SyntaxError::render(SourceSpan span, const std::set<std::string>& expected,
                                const std::string& found) {
  std::ostringstream os;
  os << "syntax error at " << span.line << ":" << span.column << ": expected ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) os << " or ";
    os << e;
    first = false;
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace cise
