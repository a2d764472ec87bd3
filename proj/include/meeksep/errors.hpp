#pragma once

#include <stdexcept>
#include <string>

namespace meeksep {

/// Structural problem with a graph (cycle in a DAG, overlapping edge sets, ...).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller handed an argument that violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search ran out of budget without finding a witness.
class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File I/O failure; message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace meeksep
