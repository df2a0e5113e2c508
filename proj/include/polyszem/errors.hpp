#pragma once

#include <stdexcept>
#include <string>

namespace polyszem {

/// Thrown when an exact computation would exceed its documented cost bound.
/// Callers must choose a cheaper mode explicitly; nothing downgrades silently.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when no column of a nonzero-type family reduces the type under the
/// van der Corput operation.  The reduction lemma rules this out for
/// normalized families, so hitting it means an internal inconsistency and it
/// is surfaced loudly rather than retried.
class NoReducingTuple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the shifted copies of a set no longer fit inside its window,
/// leaving no valid sub-window to measure on.
class WindowExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyszem
