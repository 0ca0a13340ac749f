#ifndef ROBUSTPRED_ERROR_H_
#define ROBUSTPRED_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robustpred {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based and counts the header row.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : Error("line " + std::to_string(line) + ", field '" + field + "': " + message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace robustpred

#endif  // ROBUSTPRED_ERROR_H_
