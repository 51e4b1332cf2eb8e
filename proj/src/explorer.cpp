#include "pascalspiral/explorer.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pascalspiral {

namespace {

constexpr int kPreScanPoints = 32;
constexpr int kMaxBisectionSteps = 200;

// Upper end of the search interval; every closed form is still finite here
// and far out of class whenever the criterion can fail at all.
constexpr double kQHigh = 1.0 - 1e-12;

}  // namespace

ThresholdResult find_q_threshold(Criterion which, int m, double alpha, double beta,
                                 const std::optional<RTauParams>& r, double tol) {
  if (!(tol > 0.0)) {
    throw std::domain_error("threshold tolerance must be positive");
  }
  if (criterion_needs_rtau(which) && !r) {
    throw std::invalid_argument("operator criteria need subordination parameters");
  }
  const ClassParams c(alpha, beta, criterion_class(which));
  int evaluations = 0;
  const auto margin_at = [&](double q) {
    ++evaluations;
    return evaluate_criterion(which, PascalParams(m, q), c, r).margin;
  };

  if (c.rhs() <= 0.0) {
    // degenerate class: the right side is nonpositive, so no q > 0 attains
    // membership (every left side is 0 at q = 0 and grows from there)
    return ThresholdResult{0.0, 0.0, evaluations, ThresholdStatus::NotAttainable};
  }

  // Coarse scan: verifies the monotonicity every bisection step relies on and
  // brackets the sign change if there is one.
  std::array<double, kPreScanPoints + 1> margins{};
  std::array<double, kPreScanPoints + 1> points{};
  for (int i = 0; i <= kPreScanPoints; ++i) {
    points[i] = kQHigh * i / kPreScanPoints;
    margins[i] = margin_at(points[i]);
    if (i > 0) {
      const double slack = 1e-9 * (1.0 + std::abs(margins[i - 1]));
      if (margins[i] > margins[i - 1] + slack) {
        throw std::logic_error("criterion margin is not monotone in q; refusing to bisect");
      }
    }
  }

  int first_negative = -1;
  for (int i = 0; i <= kPreScanPoints; ++i) {
    if (margins[i] < 0.0) {
      first_negative = i;
      break;
    }
  }
  if (first_negative < 0) {
    return ThresholdResult{1.0, 0.0, evaluations, ThresholdStatus::Saturated};
  }
  if (first_negative == 0) {
    // cannot happen for these formulas (margin at q = 0 equals rhs > 0) but
    // keeps the bracketing logic honest if a new criterion breaks the rule
    return ThresholdResult{0.0, 0.0, evaluations, ThresholdStatus::NotAttainable};
  }

  double lo = points[first_negative - 1];  // margin >= 0 here
  double hi = points[first_negative];      // margin < 0 here
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > 2.0 * tol; ++step) {
    const double mid = 0.5 * (lo + hi);
    (margin_at(mid) >= 0.0 ? lo : hi) = mid;
  }
  return ThresholdResult{0.5 * (lo + hi), 0.5 * (hi - lo), evaluations,
                         ThresholdStatus::Bracketed};
}

std::vector<SweepRow> sweep(const std::vector<int>& ms, const std::vector<double>& qs,
                            const std::vector<double>& alphas,
                            const std::vector<double>& betas,
                            const std::vector<Criterion>& criteria,
                            const std::optional<RTauParams>& r) {
  if (!r) {
    for (Criterion crit : criteria) {
      if (criterion_needs_rtau(crit)) {
        throw std::invalid_argument("operator criteria need subordination parameters");
      }
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(ms.size() * qs.size() * alphas.size() * betas.size() * criteria.size());
  for (int m : ms) {
    for (double q : qs) {
      for (double alpha : alphas) {
        for (double beta : betas) {
          for (Criterion crit : criteria) {
            SweepRow row;
            row.m = m;
            row.q = q;
            row.alpha = alpha;
            row.beta = beta;
            row.class_kind = criterion_class(crit);
            row.criterion = crit;
            row.criterion_kind = criterion_strength(crit);
            try {
              const PascalParams p(m, q);
              const ClassParams c(alpha, beta, criterion_class(crit));
              const MembershipVerdict v = evaluate_criterion(crit, p, c, r);
              row.lhs = v.lhs;
              row.rhs = v.rhs;
              row.margin = v.margin;
              row.verdict = std::string(v.verdict_label());
              row.method = v.method;
            } catch (const std::domain_error&) {
              row.lhs = nan;
              row.rhs = nan;
              row.margin = nan;
              row.verdict = "error";
              row.method = VerdictMethod::ClosedForm;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace pascalspiral
