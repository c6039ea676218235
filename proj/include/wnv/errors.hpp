#pragma once

#include <stdexcept>

namespace wnv {

/// NaN/Inf or a collapsed geometry inside a numerical routine.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A root search whose end points do not bracket a sign change.
struct BadBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative search that exhausted its budget.
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wnv
