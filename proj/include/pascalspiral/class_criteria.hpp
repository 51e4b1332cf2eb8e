#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "pascalspiral/coefficient_series.hpp"
#include "pascalspiral/errors.hpp"
#include "pascalspiral/pascal_core.hpp"

namespace pascalspiral {

enum class ClassKind { Tsp, Uct };

// Spirallike class parameters: angle alpha (radians, |alpha| < pi/2) and
// order beta in [0, 1). cos(alpha) <= beta is allowed; the class is then
// degenerate and even the identity function fails the criteria.
struct ClassParams {
  double alpha;
  double beta;
  ClassKind kind;

  ClassParams(double alpha_, double beta_, ClassKind kind_);
  double cos_alpha() const;
  double rhs() const;  // cos(alpha) - beta, the right side of every criterion
};

// Whether a criterion is an equivalence or a one-directional sufficient test.
// A failing sufficient test is "inconclusive", never "not in class".
enum class CriterionKind { Iff, Sufficient };

enum class VerdictMethod { ClosedForm, NumericSum, GeometricSample };

struct MembershipVerdict {
  double lhs;
  double rhs;     // always cos(alpha) - beta
  double margin;  // rhs - lhs
  bool in_class;  // margin >= 0
  VerdictMethod method;
  CriterionKind criterion_kind;
  double error_bound;  // certified numerical error on lhs (0 for closed forms)

  std::string_view verdict_label() const;  // in_class / not_in_class / inconclusive
};

// The six closed-form criteria, named by target function and class.
enum class Criterion { PhiTsp, PhiUct, OperatorTsp, OperatorUct, GUct, GTsp };

std::string_view criterion_name(Criterion c);
std::optional<Criterion> criterion_from_name(std::string_view name);
ClassKind criterion_class(Criterion c);
CriterionKind criterion_strength(Criterion c);
bool criterion_needs_rtau(Criterion c);
bool criterion_needs_m_above_one(Criterion c);

// Membership by coefficient sums, with certified truncation:
//   TSP: sum (2n - cos a - b) |a_n| <= cos a - b
//   UCT: sum n (2n - cos a - b) |a_n| <= cos a - b
// An equivalence for T-class streams, sufficient otherwise (reflected in the
// verdict's criterion_kind). A stream whose ratio envelope does not certify
// (limit >= 1) yields lhs = +inf and an out-of-class verdict.
MembershipVerdict tsp_coefficient_criterion(const CoefficientSeries& f,
                                            const ClassParams& c, double tol);
MembershipVerdict uct_coefficient_criterion(const CoefficientSeries& f,
                                            const ClassParams& c, double tol);

// Closed-form equivalences for the Pascal series phi and its integral
// transform g. g_tsp_criterion throws std::domain_error for m == 1.
MembershipVerdict phi_tsp_criterion(const PascalParams& p, const ClassParams& c);
MembershipVerdict phi_uct_criterion(const PascalParams& p, const ClassParams& c);
MembershipVerdict g_uct_criterion(const PascalParams& p, const ClassParams& c);
MembershipVerdict g_tsp_criterion(const PascalParams& p, const ClassParams& c);

// The beta = 0 specialization of the series criteria; bit-identical to the
// general path evaluated at beta = 0. Operator criteria take the overload in
// inclusion.hpp.
MembershipVerdict beta_zero_criterion(const PascalParams& p, double alpha,
                                      Criterion which);

// Pointwise margin of the defining geometric inequality at z:
//   Re(e^{-i alpha} w) - |w - 1| - beta,  w = z f'(z)/f(z),
// with the UCT variant applying the same to z f'(z), i.e. w = 1 + z f''/f'.
// Returns cos(alpha) - beta at z = 0. Throws EvaluationError when the needed
// denominator is below the machine-safe threshold.
double spiral_margin(const FunctionJet& f, const DiskPoint& z, const ClassParams& c);

// Deterministic low-discrepancy disk sample (golden-angle spiral), radii
// scaled to max_radius. Reproducible by construction; no RNG involved.
std::vector<std::complex<double>> spiral_disk_grid(int count, double max_radius);

}  // namespace pascalspiral
