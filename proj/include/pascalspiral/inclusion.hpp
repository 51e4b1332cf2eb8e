#pragma once

#include <complex>
#include <optional>

#include "pascalspiral/class_criteria.hpp"
#include "pascalspiral/coefficient_series.hpp"
#include "pascalspiral/pascal_core.hpp"

namespace pascalspiral {

// Parameters of the subordination family R^tau(A, B):
//   -1 <= B < A <= 1, tau a nonzero complex number.
struct RTauParams {
  double upper;  // A
  double lower;  // B
  std::complex<double> tau;

  RTauParams(double upper_, double lower_, std::complex<double> tau_);
  double coefficient_scale() const;  // (A - B) |tau|, the n|a_n| cap
};

// Pointwise margin of the defining inequality for f in R^tau(A, B):
//   |(A - B) tau - B (f'(z) - 1)| - |f'(z) - 1|  >= 0.
// Throws EvaluationError when the left modulus vanishes to machine noise
// while B != 0 (the subordination quotient is then undefined).
double rtau_margin(std::complex<double> f_deriv, const RTauParams& r);

// Sharp coefficient cap for f in R^tau(A, B): |a_n| <= (A - B)|tau| / n.
double rtau_coefficient_bound(int n, const RTauParams& r);

// The equality case of that cap as a coefficient stream (|a_n| exactly
// (A - B)|tau| / n for n >= 2), the worst case fed to the operator criteria.
CoefficientSeries extremal_coefficients(const RTauParams& r);

// Sufficient criteria for the convolution operator image of the worst-case
// R^tau member: scale the g / phi moment sums by (A - B)|tau|.
//   operator_tsp_criterion requires m > 1 (throws std::domain_error at m = 1);
//   operator_uct_criterion is valid for all m >= 1.
MembershipVerdict operator_tsp_criterion(const PascalParams& p, const ClassParams& c,
                                         const RTauParams& r);
MembershipVerdict operator_uct_criterion(const PascalParams& p, const ClassParams& c,
                                         const RTauParams& r);

// beta = 0 specialization of the operator criteria.
MembershipVerdict beta_zero_criterion(const PascalParams& p, double alpha,
                                      Criterion which, const RTauParams& r);

// Uniform dispatch over all six closed-form criteria. Operator criteria need
// r (std::invalid_argument when missing); m = 1 domain errors propagate.
MembershipVerdict evaluate_criterion(Criterion which, const PascalParams& p,
                                     const ClassParams& c,
                                     const std::optional<RTauParams>& r);

}  // namespace pascalspiral
