#pragma once

// Line-oriented text format for grammar systems: parser with source spans and
// a canonical serializer.

#include <cstddef>
#include <string>
#include <string_view>

#include "rrw/grammar.hpp"

namespace rrw {

struct SourceSpan {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based, in bytes
  std::size_t offset = 0;  // 0-based byte offset
  std::size_t length = 0;

  std::string str() const;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, SourceSpan span, ValidationReport report);
  const SourceSpan& span() const { return span_; }
  const ValidationReport& report() const { return report_; }

 private:
  SourceSpan span_;
  ValidationReport report_;
};

/// Parses and validates one system. Unlabeled rules receive r1, r2, ... by
/// position within their component.
System parse_system(std::string_view text);

/// Reads a file and parses it; I/O failures raise rrw::Error.
System load_system(const std::string& path);

/// Canonical document; parse_system(serialize_system(s)) == s for valid s.
std::string serialize_system(const System& system);

}  // namespace rrw
