#pragma once

#include <stdexcept>
#include <string>

namespace mhtc {

/// Malformed or inconsistent input: bad group tables, shape mismatches,
/// unparsable files, broken preconditions. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure that cannot be derived, e.g. a counit system with no solution.
class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mhtc
