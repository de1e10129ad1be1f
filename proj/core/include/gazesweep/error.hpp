#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace gazesweep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a domain invariant (out-of-range coordinate, bad config, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based row/column of the offending
/// token when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::optional<int> row = std::nullopt,
                      std::optional<int> column = std::nullopt)
      : Error(decorate(what, row, column)), row_(row), column_(column) {}

  std::optional<int> row() const noexcept { return row_; }
  std::optional<int> column() const noexcept { return column_; }

 private:
  static std::string decorate(const std::string& what, std::optional<int> row,
                              std::optional<int> column) {
    std::string out = what;
    if (row) out += " (row " + std::to_string(*row);
    if (column) out += (row ? ", column " : " (column ") + std::to_string(*column);
    if (row || column) out += ")";
    return out;
  }

  std::optional<int> row_;
  std::optional<int> column_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gazesweep
