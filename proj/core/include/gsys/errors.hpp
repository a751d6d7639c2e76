#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsys {

// Every failure raised by the library carries one of these kinds so callers
// (and tests) can distinguish failure modes without parsing messages.
enum class ErrorKind {
  DuplicateElement,
  MalformedTable,
  BadParameter,
  CarrierCapExceeded,
  UnknownVariable,
  UnknownElement,
  UnknownName,
  NoIdentity,
  OverlapMismatch,
  EnumerationCapExceeded,
  UnboundVariable,
  ArityMismatch,
  IncompleteRules,
  DomainNotClosed,
  OutOfDomain,
  VarSetMismatch,
  DomainMismatch,
  MagmaMismatch,
  ClosureViolation,
  BadGluing,
  SearchInfeasible,
  EncodingTooLarge,
  ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Position of a construct in a source document, 1-based. end_* is inclusive
// of the last token of the construct.
struct Span {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;
};

// Error raised by the document layer; carries the source span of the
// offending construct and, for syntax errors, the token set that would have
// been accepted.
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, const std::string& message, Span span,
              std::vector<std::string> expected = {})
      : Error(kind, message), span_(span), expected_(std::move(expected)) {}

  const Span& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span span_;
  std::vector<std::string> expected_;
};

}  // namespace gsys
