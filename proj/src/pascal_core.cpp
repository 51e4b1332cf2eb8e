#include "pascalspiral/pascal_core.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "pascalspiral/errors.hpp"

namespace pascalspiral {

namespace {

// Hard cap on series terms; every admissible (q < 1, |z| < 1) input certifies
// a tail long before this.
constexpr int kSeriesBudget = 4'000'000;

// b_2 = C(m, m-1) q (1-q)^m = m q (1-q)^m, the seed of the coefficient
// recurrence b_{n+1} = b_n q (n+m-1)/n.
double first_coefficient(const PascalParams& p) {
  return p.m * p.q * std::pow(1.0 - p.q, p.m);
}

// Sums weight(n) * b_n * z^{n-shift} over n >= 2, stopping once the
// geometric tail bound term * r/(1-r) drops to tol. ratio_sup(n) * |z| must
// bound every subsequent term ratio and be nonincreasing in n.
std::complex<double> certified_series(std::complex<double> z, const PascalParams& p,
                                      double tol, int shift,
                                      const std::function<double(int)>& weight,
                                      const std::function<double(int)>& ratio_sup) {
  if (!(tol > 0.0)) {
    throw std::domain_error("series tolerance must be positive");
  }
  const double az = std::abs(z);
  double b = first_coefficient(p);
  std::complex<double> zpow = 1.0;
  for (int e = 0; e < 2 - shift; ++e) zpow *= z;
  double abs_zpow = std::pow(az, 2 - shift);
  if (2 - shift == 0) abs_zpow = 1.0;  // pow(0, 0) guard for z = 0
  std::complex<double> sum = 0.0;
  for (int n = 2; n < kSeriesBudget; ++n) {
    const double w = weight(n);
    sum += w * b * zpow;
    const double r = ratio_sup(n) * az;
    if (r < 1.0) {
      const double tail = w * b * abs_zpow * r / (1.0 - r);
      if (tail <= tol) return sum;
    }
    b *= p.q * (n + p.m - 1) / n;
    zpow *= z;
    abs_zpow *= az;
  }
  throw CertificationError("series term budget exhausted before the tail certified");
}

double one_weight(int) { return 1.0; }

}  // namespace

PascalParams::PascalParams(int m_, double q_) : m(m_), q(q_) {
  if (m < 1) {
    throw std::domain_error("distribution shape m must be >= 1");
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::domain_error("distribution parameter q must lie in [0, 1)");
  }
}

DiskPoint::DiskPoint(std::complex<double> z_) : z(z_) {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("evaluation point must lie in the open unit disk");
  }
}

double pmf(int k, const PascalParams& p) {
  if (k < 0) {
    throw std::domain_error("pmf index k must be >= 0");
  }
  double value = std::pow(1.0 - p.q, p.m);
  for (int j = 0; j < k; ++j) {
    value *= p.q * (j + p.m) / (j + 1);
  }
  return value;
}

SeriesCoefficient coefficient(int n, const PascalParams& p) {
  if (n < 2) {
    throw std::domain_error("series coefficient index n must be >= 2");
  }
  return SeriesCoefficient{n, pmf(n - 1, p)};
}

double closed_geometric_sum(GeometricIdentity id, const PascalParams& p) {
  int k = 0;
  switch (id) {
    case GeometricIdentity::OrderM:
      k = p.m;
      break;
    case GeometricIdentity::OrderMMinus1:
      if (p.m < 2) {
        throw std::domain_error("the order m-1 identity needs m >= 2");
      }
      k = p.m - 1;
      break;
    case GeometricIdentity::OrderMPlus1:
      k = p.m + 1;
      break;
    case GeometricIdentity::OrderMPlus2:
      k = p.m + 2;
      break;
  }
  return std::pow(1.0 - p.q, -static_cast<double>(k));
}

MomentSums moment_sums(const PascalParams& p) {
  const double omq = 1.0 - p.q;
  MomentSums s;
  s.s0 = 1.0 - std::pow(omq, p.m);
  s.s1 = p.q * p.m / omq;
  s.s2 = p.q * p.q * p.m * (p.m + 1.0) / (omq * omq);
  if (p.m > 1) s.s_recip = reciprocal_moment(p);
  return s;
}

double reciprocal_moment(const PascalParams& p) {
  if (p.m == 1) {
    throw std::domain_error("the reciprocal moment has no closed form at m = 1");
  }
  if (p.q == 0.0) return 0.0;  // every term vanishes; the quotient form is 0/0
  const double omq = 1.0 - p.q;
  const double omq_m = std::pow(omq, p.m);
  return (omq - omq_m - p.q * (p.m - 1) * omq_m) / (p.q * (p.m - 1));
}

std::complex<double> eval_psi(const DiskPoint& z, const PascalParams& p, double tol) {
  const auto ratio = [&p](int n) { return p.q * (n + p.m - 1.0) / n; };
  return z.z + certified_series(z.z, p, tol, 0, one_weight, ratio);
}

std::complex<double> eval_phi(const DiskPoint& z, const PascalParams& p, double tol) {
  const auto ratio = [&p](int n) { return p.q * (n + p.m - 1.0) / n; };
  return z.z - certified_series(z.z, p, tol, 0, one_weight, ratio);
}

std::complex<double> eval_phi_deriv(const DiskPoint& z, const PascalParams& p,
                                    double tol) {
  const auto weight = [](int n) { return static_cast<double>(n); };
  const auto ratio = [&p](int n) {
    return p.q * (n + p.m - 1.0) * (n + 1.0) / (static_cast<double>(n) * n);
  };
  return 1.0 - certified_series(z.z, p, tol, 1, weight, ratio);
}

std::complex<double> eval_g(const DiskPoint& z, const PascalParams& p, double tol) {
  const auto weight = [](int n) { return 1.0 / n; };
  const auto ratio = [&p](int n) {
    return p.q * std::max(1.0, (n + p.m - 1.0) / (n + 1.0));
  };
  return z.z - certified_series(z.z, p, tol, 0, weight, ratio);
}

FunctionJet phi_jet(const DiskPoint& z, const PascalParams& p, double tol) {
  const auto d2_weight = [](int n) { return static_cast<double>(n) * (n - 1.0); };
  const auto d2_ratio = [&p](int n) {
    return p.q * (n + p.m - 1.0) * (n + 1.0) / (static_cast<double>(n) * (n - 1.0));
  };
  FunctionJet jet;
  jet.value = eval_phi(z, p, tol);
  jet.d1 = eval_phi_deriv(z, p, tol);
  jet.d2 = -certified_series(z.z, p, tol, 2, d2_weight, d2_ratio);
  return jet;
}

FunctionJet g_jet(const DiskPoint& z, const PascalParams& p, double tol) {
  const auto d1_ratio = [&p](int n) { return p.q * (n + p.m - 1.0) / n; };
  const auto d2_weight = [](int n) { return n - 1.0; };
  const auto d2_ratio = [&p](int n) { return p.q * (n + p.m - 1.0) / (n - 1.0); };
  FunctionJet jet;
  jet.value = eval_g(z, p, tol);
  jet.d1 = 1.0 - certified_series(z.z, p, tol, 1, one_weight, d1_ratio);
  jet.d2 = -certified_series(z.z, p, tol, 2, d2_weight, d2_ratio);
  return jet;
}

CoefficientSeries phi_coefficients(const PascalParams& p) {
  auto stream = [p](int n) { return coefficient(n, p).value; };
  RatioEnvelope env{[p](int n) { return p.q * (n + p.m - 1.0) / n; }, p.q, 2};
  return CoefficientSeries(std::move(stream), std::move(env),
                           SignConvention::TClassNegative);
}

CoefficientSeries g_coefficients(const PascalParams& p) {
  auto stream = [p](int n) { return coefficient(n, p).value / n; };
  // b_{n+1}/(n+1) over b_n/n rises toward q when m = 1, so the envelope takes
  // the sup over the remaining indices rather than the pointwise ratio.
  RatioEnvelope env{
      [p](int n) { return p.q * std::max(1.0, (n + p.m - 1.0) / (n + 1.0)); }, p.q, 2};
  return CoefficientSeries(std::move(stream), std::move(env),
                           SignConvention::TClassNegative);
}

CoefficientSeries apply_operator(const CoefficientSeries& f, const PascalParams& p) {
  auto stream = [f, p](int n) { return f.coeff_at(n) * coefficient(n, p).value; };
  if (f.finitely_supported()) {
    return CoefficientSeries(std::move(stream), f.growth(), f.sign());
  }
  const auto& fenv = std::get<RatioEnvelope>(f.growth());
  RatioEnvelope env{[fr = fenv.sup_ratio, p](int n) {
                      return fr(n) * p.q * (n + p.m - 1.0) / n;
                    },
                    fenv.limit * p.q, std::max(fenv.valid_from, 2)};
  return CoefficientSeries(std::move(stream), std::move(env), f.sign());
}

}  // namespace pascalspiral
