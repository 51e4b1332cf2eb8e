#include "pascalspiral/inclusion.hpp"

#include <cmath>
#include <stdexcept>

#include "pascalspiral/errors.hpp"

namespace pascalspiral {

namespace {

constexpr double kSafeDenominator = 1e-120;

MembershipVerdict closed_verdict(double lhs, const ClassParams& c, CriterionKind kind) {
  const double rhs = c.rhs();
  const double margin = rhs - lhs;
  return MembershipVerdict{lhs,  rhs,
                           margin, margin >= 0.0,
                           VerdictMethod::ClosedForm, kind,
                           0.0};
}

}  // namespace

RTauParams::RTauParams(double upper_, double lower_, std::complex<double> tau_)
    : upper(upper_), lower(lower_), tau(tau_) {
  if (!(lower >= -1.0 && lower < upper && upper <= 1.0)) {
    throw std::domain_error("subordination bounds need -1 <= B < A <= 1");
  }
  if (tau == std::complex<double>(0.0, 0.0)) {
    throw std::domain_error("subordination weight tau must be nonzero");
  }
}

double RTauParams::coefficient_scale() const { return (upper - lower) * std::abs(tau); }

double rtau_margin(std::complex<double> f_deriv, const RTauParams& r) {
  const std::complex<double> deviation = f_deriv - 1.0;
  const std::complex<double> denom = (r.upper - r.lower) * r.tau - r.lower * deviation;
  if (std::abs(denom) < kSafeDenominator) {
    throw EvaluationError("subordination denominator vanishes at the sample point");
  }
  return std::abs(denom) - std::abs(deviation);
}

double rtau_coefficient_bound(int n, const RTauParams& r) {
  if (n < 2) {
    throw std::domain_error("coefficient index must be >= 2");
  }
  return r.coefficient_scale() / n;
}

CoefficientSeries extremal_coefficients(const RTauParams& r) {
  const double scale = r.coefficient_scale();
  // Ratios n/(n+1) increase toward 1, so the only nonincreasing envelope is
  // the constant 1: harmonic decay certifies nothing by itself. Convolution
  // with a Pascal stream multiplies in a ratio bounded by q < 1 and restores
  // certifiability.
  RatioEnvelope env{[](int) { return 1.0; }, 1.0, 2};
  return CoefficientSeries([scale](int n) { return scale / n; }, std::move(env),
                           SignConvention::General);
}

MembershipVerdict operator_tsp_criterion(const PascalParams& p, const ClassParams& c,
                                         const RTauParams& r) {
  const double cc = c.cos_alpha() + c.beta;
  const double lhs = r.coefficient_scale() *
                     (2.0 * (1.0 - std::pow(1.0 - p.q, p.m)) - cc * reciprocal_moment(p));
  return closed_verdict(lhs, c, CriterionKind::Sufficient);
}

MembershipVerdict operator_uct_criterion(const PascalParams& p, const ClassParams& c,
                                         const RTauParams& r) {
  const MomentSums s = moment_sums(p);
  const double cc = c.cos_alpha() + c.beta;
  const double lhs = r.coefficient_scale() * (2.0 * s.s1 + (2.0 - cc) * s.s0);
  return closed_verdict(lhs, c, CriterionKind::Sufficient);
}

MembershipVerdict beta_zero_criterion(const PascalParams& p, double alpha,
                                      Criterion which, const RTauParams& r) {
  if (!criterion_needs_rtau(which)) {
    return beta_zero_criterion(p, alpha, which);
  }
  const ClassParams c(alpha, 0.0, criterion_class(which));
  return which == Criterion::OperatorTsp ? operator_tsp_criterion(p, c, r)
                                         : operator_uct_criterion(p, c, r);
}

MembershipVerdict evaluate_criterion(Criterion which, const PascalParams& p,
                                     const ClassParams& c,
                                     const std::optional<RTauParams>& r) {
  if (criterion_needs_rtau(which) && !r) {
    throw std::invalid_argument("operator criteria need subordination parameters");
  }
  switch (which) {
    case Criterion::PhiTsp:
      return phi_tsp_criterion(p, c);
    case Criterion::PhiUct:
      return phi_uct_criterion(p, c);
    case Criterion::GUct:
      return g_uct_criterion(p, c);
    case Criterion::GTsp:
      return g_tsp_criterion(p, c);
    case Criterion::OperatorTsp:
      return operator_tsp_criterion(p, c, *r);
    case Criterion::OperatorUct:
      return operator_uct_criterion(p, c, *r);
  }
  throw std::logic_error("unhandled criterion");
}

}  // namespace pascalspiral
