#pragma once

#include <stdexcept>
#include <string>

namespace reconf {

// Error categories. The CLI maps them onto exit codes.
enum class ErrorKind {
  Parse,         // malformed input text
  Usage,         // bad argument value (arity, sizes, indices)
  Precondition,  // input valid but outside an operation's domain
  CapExceeded,   // explicit enumeration refused because of a size cap
  Internal,      // a result failed its own validation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse error carrying the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message),
        line_(line), message_(message) {}

  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

}  // namespace reconf
