#pragma once

#include <stdexcept>
#include <string>

namespace ultrascale {

// Evaluation produced NaN/Inf or a negative value where the contract demands
// a finite nonnegative one.  Distinct from an axiom failure: the object could
// not even be audited.
struct RepresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested evaluation or fit needs data outside the certified range
// (t_cap, resolvable epsilon window, representable magnitudes).
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration rejected before any computation ran.  Message carries the
// offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}
