#pragma once

#include <optional>

#include "pascalspiral/class_criteria.hpp"
#include "pascalspiral/coefficient_series.hpp"
#include "pascalspiral/errors.hpp"
#include "pascalspiral/inclusion.hpp"

namespace pascalspiral {

// Multiplicative weight applied to |a_n| inside a certified sum. The two
// criterion weights take the constant c = cos(alpha) + beta; the rest are
// fixed index polynomials used by the moment-sum cross-checks.
enum class SumWeight {
  One,           // |a_n|
  Linear,        // n |a_n|
  TspWeight,     // (2n - c) |a_n|
  UctWeight,     // n (2n - c) |a_n|
  Reciprocal,    // |a_n| / n
  ShiftOne,      // (n - 1) |a_n|
  ShiftTwoProd,  // (n - 1)(n - 2) |a_n|
};

struct CertifiedValue {
  double value;       // partial sum up to the cut
  double tail_bound;  // certified bound on everything after the cut
  int terms_used;
};

// The weight value w(n) at one index (criterion constant c where used).
double sum_weight_value(SumWeight weight, int n, double c);

// Sums weight(n) * |a_n| over n >= 2 with a certified geometric tail bound
// derived from the stream's ratio envelope (exact for finitely supported
// streams). Throws CertificationError when the envelope cannot certify a
// tail (ratio limit >= 1) or the term budget runs out above tol; throws
// std::domain_error when c >= 4 would make a criterion weight nonpositive.
CertifiedValue certified_sum(const CoefficientSeries& f, SumWeight weight, double c,
                             double tol);

// Closed form vs. certified numeric sum, with the acceptance rule
//   |closed - value| <= rel_tol * max(1, |closed|) + error_bound.
struct EquivalenceReport {
  double closed_lhs;
  double numeric_lhs;
  double numeric_error;  // certified tail bound carried by the numeric side
  double abs_diff;
  bool consistent;
};

EquivalenceReport equivalence_report(double closed, const CertifiedValue& numeric,
                                     double rel_tol);

// Convenience: recomputes the closed-form left side of `which` through the
// raw coefficient streams and compares. Operator criteria need r (else
// std::invalid_argument); m = 1 domain errors propagate.
EquivalenceReport criterion_equivalence(Criterion which, const PascalParams& p,
                                        const ClassParams& c,
                                        const std::optional<RTauParams>& r,
                                        double rel_tol);

// For an equivalence criterion that fails by a clear margin (< -1e-6), finds
// a radius in (0, 1) where the pointwise spirallikeness margin of the target
// function goes negative on the positive real axis (scan r = 1 - 2^-k, then
// local refinement). The positive real axis is the extremal direction for
// untilted classes (alpha = 0), where a failing sum criterion forces such a
// point; for tilted classes the sum test is only one-sided and no violating
// point need exist anywhere. Returns std::nullopt when the scan finds nothing
// (the defect may only show in the r -> 1 limit, or not at all when alpha
// != 0). Throws std::logic_error when the closed verdict does not actually
// fail by that margin, and std::invalid_argument for operator criteria (no
// single target function).
std::optional<double> necessity_witness(Criterion which, const PascalParams& p,
                                        const ClassParams& c);

}  // namespace pascalspiral
