#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace cise {

/// Half-open byte range into the original source text, plus the 1-based
/// line/column of its first byte. Synthetic expressions carry line 0.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 0;
  int column = 1;

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    if (a.line == 0) return b;
    if (b.line == 0) return a;
    SourceSpan s = a.begin <= b.begin ? a : b;
    s.end = a.end > b.end ? a.end : b.end;
    return s;
  }
};

class Error : public std::runtime_error {
public:
  Error(SourceSpan span, std::string message)
      : std::runtime_error(std::move(message)), span(span) {}
  SourceSpan span;
};

class SyntaxError : public Error {
public:
  SyntaxError(SourceSpan span, std::set<std::string> expected, const std::string& found)
      : Error(span, render(span, expected, found)), expected(std::move(expected)), found(found) {}
  std::set<std::string> expected;
  std::string found;

private:
  static std::string render(SourceSpan span, const std::set<std::string>& expected,
                            const std::string& found);
};

class SortError : public Error {
public:
  SortError(SourceSpan span, std::string found, std::string expected)
      : Error(span, "sort error: found " + found + ", expected " + expected),
        found(std::move(found)),
        expected(std::move(expected)) {}
  std::string found;
  std::string expected;
};

class UnresolvedName : public Error {
public:
  UnresolvedName(SourceSpan span, std::string name)
      : Error(span, "unresolved name '" + name + "'"), name(std::move(name)) {}
  std::string name;
};

class DuplicateDefinition : public Error {
public:
  DuplicateDefinition(SourceSpan span, std::string name)
      : Error(span, "duplicate definition of '" + name + "'"), name(std::move(name)) {}
  std::string name;
};

class MissingSection : public Error {
public:
  explicit MissingSection(std::string section)
      : Error(SourceSpan{}, "missing section " + section), section(std::move(section)) {}
  std::string section;
};

}  // namespace cise
