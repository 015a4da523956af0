#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Malformed input: bad files, out-of-range labels, invalid group specs.
/// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A certificate check failed (torsion not preserved, broken chain identity).
/// Never expected absent bugs; the CLI maps this to exit code 1.
class VerificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Resampling colorer hit its round cap. CLI exit code 3.
class ResamplingCapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The input violates a structural precondition (non-manifold, non-orientable).
class StructureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace forge
