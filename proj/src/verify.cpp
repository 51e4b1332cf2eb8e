#include "pascalspiral/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <variant>

namespace pascalspiral {

namespace {

constexpr int kSumBudget = 4'000'000;

// Nonincreasing upper bound on w(k+1)/w(k) valid for every k >= n, plus the
// first index at which that bound applies. Criterion weights need c < 4 so
// (2n - c) stays positive from n = 2 on.
struct WeightEnvelope {
  std::function<double(int)> ratio;
  int valid_from;
};

void require_weight_constant(SumWeight weight, double c) {
  if ((weight == SumWeight::TspWeight || weight == SumWeight::UctWeight) && c >= 4.0) {
    throw std::domain_error("criterion constant must stay below 4 to keep the weights positive");
  }
}

WeightEnvelope weight_envelope(SumWeight weight, double c) {
  switch (weight) {
    case SumWeight::One:
      return {[](int) { return 1.0; }, 2};
    case SumWeight::Linear:
      return {[](int n) { return (n + 1.0) / n; }, 2};
    case SumWeight::TspWeight:
      return {[c](int n) { return (2.0 * n + 2.0 - c) / (2.0 * n - c); }, 2};
    case SumWeight::UctWeight:
      return {[c](int n) {
                return (n + 1.0) * (2.0 * n + 2.0 - c) / (n * (2.0 * n - c));
              },
              2};
    case SumWeight::Reciprocal:
      // 1/(n+1) over 1/n rises toward 1; the sup over the remaining indices
      // is the constant 1.
      return {[](int) { return 1.0; }, 2};
    case SumWeight::ShiftOne:
      return {[](int n) { return n / (n - 1.0); }, 2};
    case SumWeight::ShiftTwoProd:
      // the weight vanishes at n = 2, so ratios only make sense from n = 3
      return {[](int n) { return n / (n - 2.0); }, 3};
  }
  throw std::logic_error("unhandled sum weight");
}

}  // namespace

double sum_weight_value(SumWeight weight, int n, double c) {
  switch (weight) {
    case SumWeight::One:
      return 1.0;
    case SumWeight::Linear:
      return n;
    case SumWeight::TspWeight:
      return 2.0 * n - c;
    case SumWeight::UctWeight:
      return n * (2.0 * n - c);
    case SumWeight::Reciprocal:
      return 1.0 / n;
    case SumWeight::ShiftOne:
      return n - 1.0;
    case SumWeight::ShiftTwoProd:
      return (n - 1.0) * (n - 2.0);
  }
  throw std::logic_error("unhandled sum weight");
}

CertifiedValue certified_sum(const CoefficientSeries& f, SumWeight weight, double c,
                             double tol) {
  if (!(tol > 0.0)) {
    throw std::domain_error("sum tolerance must be positive");
  }
  require_weight_constant(weight, c);
  if (const auto* fin = std::get_if<FiniteSupport>(&f.growth())) {
    double sum = 0.0;
    int terms = 0;
    for (int n = 2; n <= fin->last_index; ++n) {
      sum += sum_weight_value(weight, n, c) * f.coeff_at(n);
      ++terms;
    }
    return {sum, 0.0, terms};
  }
  const auto& env = std::get<RatioEnvelope>(f.growth());
  if (env.limit >= 1.0) {
    throw CertificationError("growth envelope cannot certify a tail (ratio limit >= 1)");
  }
  const WeightEnvelope wenv = weight_envelope(weight, c);
  // Start tail checks late enough that the weight ratio is valid and has
  // decayed toward 1; the combined ratio is then below 1 once the stream
  // envelope allows it at all.
  const int start = std::max({env.valid_from, wenv.valid_from, 8});
  double sum = 0.0;
  for (int n = 2; n < kSumBudget; ++n) {
    const double term = sum_weight_value(weight, n, c) * f.coeff_at(n);
    sum += term;
    if (n >= start) {
      const double r = env.sup_ratio(n) * wenv.ratio(n);
      if (r < 1.0) {
        const double tail = term * r / (1.0 - r);
        if (tail <= tol) return {sum, tail, n - 1};
      }
    }
  }
  throw CertificationError("sum term budget exhausted before the tail certified");
}

EquivalenceReport equivalence_report(double closed, const CertifiedValue& numeric,
                                     double rel_tol) {
  EquivalenceReport rep;
  rep.closed_lhs = closed;
  rep.numeric_lhs = numeric.value;
  rep.numeric_error = numeric.tail_bound;
  rep.abs_diff = std::abs(closed - numeric.value);
  rep.consistent =
      rep.abs_diff <= rel_tol * std::max(1.0, std::abs(closed)) + numeric.tail_bound;
  return rep;
}

EquivalenceReport criterion_equivalence(Criterion which, const PascalParams& p,
                                        const ClassParams& c,
                                        const std::optional<RTauParams>& r,
                                        double rel_tol) {
  const MembershipVerdict closed = evaluate_criterion(which, p, c, r);
  const double cc = c.cos_alpha() + c.beta;
  const double sum_tol = 1e-12 * std::max(1.0, std::abs(closed.lhs));

  CoefficientSeries stream = CoefficientSeries::zero();
  SumWeight weight = SumWeight::One;
  switch (which) {
    case Criterion::PhiTsp:
      stream = phi_coefficients(p);
      weight = SumWeight::TspWeight;
      break;
    case Criterion::PhiUct:
      stream = phi_coefficients(p);
      weight = SumWeight::UctWeight;
      break;
    case Criterion::GUct:
      stream = g_coefficients(p);
      weight = SumWeight::UctWeight;
      break;
    case Criterion::GTsp:
      stream = g_coefficients(p);
      weight = SumWeight::TspWeight;
      break;
    case Criterion::OperatorTsp:
      stream = apply_operator(extremal_coefficients(*r), p);
      weight = SumWeight::TspWeight;
      break;
    case Criterion::OperatorUct:
      stream = apply_operator(extremal_coefficients(*r), p);
      weight = SumWeight::UctWeight;
      break;
  }
  return equivalence_report(closed.lhs, certified_sum(stream, weight, cc, sum_tol),
                            rel_tol);
}

std::optional<double> necessity_witness(Criterion which, const PascalParams& p,
                                        const ClassParams& c) {
  if (criterion_needs_rtau(which)) {
    throw std::invalid_argument(
        "operator criteria are sufficient-only and have no single witness function");
  }
  const ClassParams cls(c.alpha, c.beta, criterion_class(which));
  const MembershipVerdict closed = evaluate_criterion(which, p, cls, std::nullopt);
  if (!(closed.margin < -1e-6)) {
    throw std::logic_error("necessity witness needs a verdict that fails by a clear margin");
  }
  const bool g_target = which == Criterion::GUct || which == Criterion::GTsp;
  const auto margin_at = [&](double radius) -> std::optional<double> {
    try {
      const DiskPoint z{std::complex<double>(radius, 0.0)};
      const FunctionJet jet = g_target ? g_jet(z, p, 1e-13) : phi_jet(z, p, 1e-13);
      return spiral_margin(jet, z, cls);
    } catch (const EvaluationError&) {
      return std::nullopt;  // sample hit a zero of the target; skip it
    }
  };

  double lo = 0.0;  // margin known (or assumed by continuity) nonnegative here
  for (int k = 1; k <= 40; ++k) {
    const double radius = 1.0 - std::ldexp(1.0, -k);
    const auto margin = margin_at(radius);
    if (!margin) continue;
    if (*margin < 0.0) {
      // refine toward the sign change so the reported witness is not much
      // deeper than necessary
      double hi = radius;
      for (int step = 0; step < 60 && hi - lo > 1e-15; ++step) {
        const double mid = 0.5 * (lo + hi);
        const auto mid_margin = margin_at(mid);
        if (!mid_margin) break;
        (*mid_margin < 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
    lo = radius;
  }
  return std::nullopt;
}

}  // namespace pascalspiral
