#pragma once

#include <stdexcept>
#include <string>

namespace spinrel {

/// Rejected input parameter; the message names the offending field.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Integrator step too large for the fastest rate in the generator.
class StepTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A trajectory violated a physical tolerance (trace, hermiticity, positivity).
class InvariantBreach : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Spectrum of the reduced generator degenerates (critical regime).
class DegenerateSpectrum : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigenvector formulas are singular (uniform dissipation or vanishing coupling).
class DegenerateDissipation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation requires a different damping regime.
class RegimeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Root-count bisection could not find a transition bracket.
class BracketNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Estimation requested on an empty sample set.
class EmptySample : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinrel
