#pragma once

#include <stdexcept>

namespace pascalspiral {

// Thrown when a certified tail bound cannot be established (ratio >= 1,
// or the term budget runs out before the bound drops below tolerance).
class CertificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a pointwise evaluation enters a numerically unsafe region
// (e.g. the denominator of z f'/f is below the machine-safe threshold).
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pascalspiral
