#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pascalspiral/class_criteria.hpp"
#include "pascalspiral/inclusion.hpp"
#include "pascalspiral/pascal_core.hpp"

namespace pascalspiral {

enum class ThresholdStatus {
  Bracketed,      // sign change isolated to within tol
  Saturated,      // criterion holds on all of [0, 1); threshold pushed to 1
  NotAttainable,  // criterion fails already at q = 0 (degenerate class)
};

struct ThresholdResult {
  double q_star;         // midpoint of the final bracket (or 0 / 1 for edge cases)
  double bracket_width;  // half-width of the final bracket; <= tol when Bracketed
  int evaluations;
  ThresholdStatus status;
};

// Largest q in [0, 1) for which `which` still holds, found by bisection on
// the criterion margin. The margin is pre-scanned on 32 points and must be
// monotone nonincreasing in q; a non-monotone scan throws std::logic_error
// rather than returning a guess. Operator criteria require r.
ThresholdResult find_q_threshold(Criterion which, int m, double alpha, double beta,
                                 const std::optional<RTauParams>& r, double tol);

// One row of a parameter sweep, ready for CSV or JSON serialization.
struct SweepRow {
  int m;
  double q;
  double alpha;
  double beta;
  ClassKind class_kind;
  Criterion criterion;
  CriterionKind criterion_kind;
  double lhs;
  double rhs;
  double margin;
  std::string verdict;  // in_class / not_in_class / inconclusive / error
  VerdictMethod method;
};

// Cartesian sweep over m x q x alpha x beta x criteria, in that loop order.
// Rows whose evaluation throws (domain errors such as g-tsp at m = 1) are
// emitted with verdict "error" and NaN numerics instead of aborting the sweep.
std::vector<SweepRow> sweep(const std::vector<int>& ms, const std::vector<double>& qs,
                            const std::vector<double>& alphas,
                            const std::vector<double>& betas,
                            const std::vector<Criterion>& criteria,
                            const std::optional<RTauParams>& r);

}  // namespace pascalspiral
