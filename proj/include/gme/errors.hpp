#pragma once

#include <stdexcept>
#include <string>

namespace gme {

/// Malformed input text (edge lists, label files, data matrices).
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input is well formed but outside an operation's domain
/// (disconnected graph, empty holdout, violated axiom, ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Floating-point range problems and solver non-convergence.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gme
