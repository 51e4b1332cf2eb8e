#include "pascalspiral/class_criteria.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pascalspiral/verify.hpp"

namespace pascalspiral {

namespace {

// Below this magnitude a quotient denominator is treated as a genuine zero.
constexpr double kSafeDenominator = 1e-120;

// Cap on the refutation loop for streams whose tail cannot be certified.
constexpr int kRefuteBudget = 200'000;

MembershipVerdict closed_verdict(double lhs, const ClassParams& c, CriterionKind kind) {
  const double rhs = c.rhs();
  const double margin = rhs - lhs;
  return MembershipVerdict{lhs,  rhs,
                           margin, margin >= 0.0,
                           VerdictMethod::ClosedForm, kind,
                           0.0};
}

// Shared body of the two coefficient-sum criteria. When the stream's growth
// envelope cannot certify a tail, partial sums (all terms nonnegative) still
// refute membership once they exceed the right side; only confirmation is
// impossible, and that case rethrows the certification error.
MembershipVerdict coefficient_criterion(const CoefficientSeries& f, const ClassParams& c,
                                        SumWeight weight, double tol) {
  const CriterionKind kind = f.sign() == SignConvention::TClassNegative
                                 ? CriterionKind::Iff
                                 : CriterionKind::Sufficient;
  const double cc = c.cos_alpha() + c.beta;
  const double rhs = c.rhs();
  try {
    const CertifiedValue sum = certified_sum(f, weight, cc, tol);
    const double margin = rhs - sum.value;
    return MembershipVerdict{sum.value, rhs,
                             margin,    margin >= 0.0,
                             VerdictMethod::NumericSum, kind,
                             sum.tail_bound};
  } catch (const CertificationError&) {
    double partial = 0.0;
    for (int n = 2; n < kRefuteBudget; ++n) {
      partial += sum_weight_value(weight, n, cc) * f.coeff_at(n);
      if (partial > rhs) {
        const double inf = std::numeric_limits<double>::infinity();
        return MembershipVerdict{inf,   rhs,
                                 -inf,  false,
                                 VerdictMethod::NumericSum, kind,
                                 inf};
      }
    }
    throw;
  }
}

}  // namespace

ClassParams::ClassParams(double alpha_, double beta_, ClassKind kind_)
    : alpha(alpha_), beta(beta_), kind(kind_) {
  if (!(std::abs(alpha) < std::numbers::pi / 2.0)) {
    throw std::domain_error("spiral angle must satisfy |alpha| < pi/2");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::domain_error("order beta must lie in [0, 1)");
  }
}

double ClassParams::cos_alpha() const { return std::cos(alpha); }

double ClassParams::rhs() const { return cos_alpha() - beta; }

std::string_view MembershipVerdict::verdict_label() const {
  if (in_class) return "in_class";
  return criterion_kind == CriterionKind::Sufficient ? "inconclusive" : "not_in_class";
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::PhiTsp:
      return "phi-tsp";
    case Criterion::PhiUct:
      return "phi-uct";
    case Criterion::OperatorTsp:
      return "operator-tsp";
    case Criterion::OperatorUct:
      return "operator-uct";
    case Criterion::GUct:
      return "g-uct";
    case Criterion::GTsp:
      return "g-tsp";
  }
  throw std::logic_error("unhandled criterion");
}

std::optional<Criterion> criterion_from_name(std::string_view name) {
  for (Criterion c : {Criterion::PhiTsp, Criterion::PhiUct, Criterion::OperatorTsp,
                      Criterion::OperatorUct, Criterion::GUct, Criterion::GTsp}) {
    if (criterion_name(c) == name) return c;
  }
  return std::nullopt;
}

ClassKind criterion_class(Criterion c) {
  switch (c) {
    case Criterion::PhiTsp:
    case Criterion::OperatorTsp:
    case Criterion::GTsp:
      return ClassKind::Tsp;
    default:
      return ClassKind::Uct;
  }
}

CriterionKind criterion_strength(Criterion c) {
  return criterion_needs_rtau(c) ? CriterionKind::Sufficient : CriterionKind::Iff;
}

bool criterion_needs_rtau(Criterion c) {
  return c == Criterion::OperatorTsp || c == Criterion::OperatorUct;
}

bool criterion_needs_m_above_one(Criterion c) {
  return c == Criterion::OperatorTsp || c == Criterion::GTsp;
}

MembershipVerdict tsp_coefficient_criterion(const CoefficientSeries& f,
                                            const ClassParams& c, double tol) {
  if (c.kind != ClassKind::Tsp) {
    throw std::invalid_argument("the linear-weight criterion applies to the TSP class");
  }
  return coefficient_criterion(f, c, SumWeight::TspWeight, tol);
}

MembershipVerdict uct_coefficient_criterion(const CoefficientSeries& f,
                                            const ClassParams& c, double tol) {
  if (c.kind != ClassKind::Uct) {
    throw std::invalid_argument("the quadratic-weight criterion applies to the UCT class");
  }
  return coefficient_criterion(f, c, SumWeight::UctWeight, tol);
}

MembershipVerdict phi_tsp_criterion(const PascalParams& p, const ClassParams& c) {
  const MomentSums s = moment_sums(p);
  const double cc = c.cos_alpha() + c.beta;
  return closed_verdict(2.0 * s.s1 + (2.0 - cc) * s.s0, c, CriterionKind::Iff);
}

MembershipVerdict phi_uct_criterion(const PascalParams& p, const ClassParams& c) {
  const MomentSums s = moment_sums(p);
  const double cc = c.cos_alpha() + c.beta;
  return closed_verdict(2.0 * s.s2 + (6.0 - cc) * s.s1 + (2.0 - cc) * s.s0, c,
                        CriterionKind::Iff);
}

MembershipVerdict g_uct_criterion(const PascalParams& p, const ClassParams& c) {
  // the n-weighted sum over b_n/n collapses to the plain sum over b_n, so the
  // left side coincides with the TSP criterion for the underlying series
  const MomentSums s = moment_sums(p);
  const double cc = c.cos_alpha() + c.beta;
  return closed_verdict(2.0 * s.s1 + (2.0 - cc) * s.s0, c, CriterionKind::Iff);
}

MembershipVerdict g_tsp_criterion(const PascalParams& p, const ClassParams& c) {
  const double cc = c.cos_alpha() + c.beta;
  const double lhs =
      2.0 * (1.0 - std::pow(1.0 - p.q, p.m)) - cc * reciprocal_moment(p);
  return closed_verdict(lhs, c, CriterionKind::Iff);
}

MembershipVerdict beta_zero_criterion(const PascalParams& p, double alpha,
                                      Criterion which) {
  if (criterion_needs_rtau(which)) {
    throw std::invalid_argument(
        "operator criteria need subordination parameters; use the overload that takes them");
  }
  const ClassParams c(alpha, 0.0, criterion_class(which));
  switch (which) {
    case Criterion::PhiTsp:
      return phi_tsp_criterion(p, c);
    case Criterion::PhiUct:
      return phi_uct_criterion(p, c);
    case Criterion::GUct:
      return g_uct_criterion(p, c);
    case Criterion::GTsp:
      return g_tsp_criterion(p, c);
    default:
      throw std::logic_error("unhandled criterion");
  }
}

double spiral_margin(const FunctionJet& f, const DiskPoint& z, const ClassParams& c) {
  if (z.z == 0.0) return c.rhs();  // z f'/f -> 1 at the origin
  std::complex<double> w;
  if (c.kind == ClassKind::Tsp) {
    if (std::abs(f.value) < kSafeDenominator) {
      throw EvaluationError("function value vanishes at the sample point");
    }
    w = z.z * f.d1 / f.value;
  } else {
    if (std::abs(f.d1) < kSafeDenominator) {
      throw EvaluationError("derivative vanishes at the sample point");
    }
    w = 1.0 + z.z * f.d2 / f.d1;
  }
  const std::complex<double> rotation(std::cos(c.alpha), -std::sin(c.alpha));
  return (rotation * w).real() - std::abs(w - 1.0) - c.beta;
}

std::vector<std::complex<double>> spiral_disk_grid(int count, double max_radius) {
  if (count < 1) {
    throw std::invalid_argument("sample count must be >= 1");
  }
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw std::domain_error("sample radius must lie in (0, 1)");
  }
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<std::complex<double>> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double radius = max_radius * std::sqrt((k + 0.5) / count);
    points.emplace_back(radius * std::cos(golden_angle * k),
                        radius * std::sin(golden_angle * k));
  }
  return points;
}

}  // namespace pascalspiral
