#pragma once

#include <stdexcept>
#include <string>

namespace mlrf {

/// Operands of mismatched dimension.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed loop or tuple text. Carries a 1-based line and column.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A precondition of an analysis operation does not hold (invalid input
/// tuple, nondeterministic loop handed to the simulator, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Broken internal invariant: a certificate failed to recombine, or an LP
/// outcome contradicts a proven property. Never a user error.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Integer hull exceeded its cut budget.
class HullLimitError : public std::runtime_error {
public:
  HullLimitError(const std::string &message, std::size_t cuts_added)
      : std::runtime_error(message), cuts_added_(cuts_added) {}
  std::size_t cuts_added() const { return cuts_added_; }

private:
  std::size_t cuts_added_;
};

} // namespace mlrf
