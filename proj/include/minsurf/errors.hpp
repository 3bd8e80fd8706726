#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minsurf {

// An operation produced a term outside arctan(p)^{0,1} * q^n * P(p)/(1+p^2)^c.
class ClosureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, const std::string &message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position), detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string &detail() const noexcept { return detail_; }

private:
  std::size_t position_;
  std::string detail_;
};

// JetFunction arithmetic left the degree <= 1 class in (x, y, u).
class DegreeOverflowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownNameError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A recursion step produced a non-solution. Never expected; indicates a bug.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class WrongGeneratorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyMeshError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace minsurf
