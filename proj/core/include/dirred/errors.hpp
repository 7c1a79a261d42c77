#pragma once

#include <stdexcept>
#include <string>

namespace dirred {

// Bad arguments: unknown nodes, malformed orders, out-of-range outcomes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The diagram's shape forbids the operation: cycles, non-reversible arcs,
// violated structural preconditions.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant the algorithms guarantee did not hold. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dirred
