#pragma once

#include <stdexcept>
#include <string>

namespace erisk {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model, scenario or argument that violates a documented invariant.
// `entity()` is a dotted path to the offending item, e.g. "risks[PH].rules[PH-2]".
class ValidationError : public Error {
 public:
  ValidationError(std::string entity, const std::string& message)
      : Error(entity.empty() ? message : entity + ": " + message),
        entity_(std::move(entity)),
        message_(message) {}

  const std::string& entity() const noexcept { return entity_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string entity_;
  std::string message_;
};

// `child` joined under `parent` with a dot, e.g. ("risks[PH]", "severity").
inline std::string entity_path(const std::string& parent, const std::string& child) {
  if (parent.empty()) return child;
  if (child.empty()) return parent;
  return child.front() == '[' ? parent + child : parent + "." + child;
}

// A crisp value outside the universe of its linguistic variable.
class OutOfRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A scenario document that is not well-formed JSON.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message)
      : ValidationError(source, "parse error at line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Centroid defuzzification was asked to summarize an empty fuzzy set.
class NoRuleFiredError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace erisk
