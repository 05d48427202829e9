#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftcert {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector or matrix shapes that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A precondition of a domain operation was violated (negative delta,
// invalid counterfactual, out-of-range confidence, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input document. `line` is 1-based, 0 when unknown; `field` is a
// path such as "layers[1].weights[3]" when the error is structural.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::string field)
      : Error(format_message(message, line, field)), line_(line), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format_message(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "parse error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in '" + field + "'";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

}  // namespace shiftcert
