#pragma once

#include <complex>
#include <optional>

#include "pascalspiral/coefficient_series.hpp"

namespace pascalspiral {

// Parameters (m, q) of the Pascal (negative binomial) distribution:
// P(x = k) = C(k+m-1, m-1) q^k (1-q)^m. q = 1 makes every closed form
// singular, so the open interval is enforced.
struct PascalParams {
  int m;     // shape, >= 1
  double q;  // in [0, 1)

  PascalParams(int m_, double q_);
};

// Coefficient b_n of z^n in the Pascal series, n >= 2.
struct SeriesCoefficient {
  int n;
  double value;  // C(n+m-2, m-1) q^{n-1} (1-q)^m, always >= 0
};

// A point of the open unit disk.
struct DiskPoint {
  std::complex<double> z;
  explicit DiskPoint(std::complex<double> z_);
};

// Closed-form values of the coefficient sums the membership criteria reduce to:
//   s0 = sum b_n,  s1 = sum (n-1) b_n,  s2 = sum (n-1)(n-2) b_n,
//   s_recip = sum b_n / n (closed form exists for m > 1 only).
struct MomentSums {
  double s0;
  double s1;
  double s2;
  std::optional<double> s_recip;
};

// The four binomial-series identities sum_{n>=0} C(n+k-1, k-1) q^n = (1-q)^{-k},
// for k = m, m-1, m+1, m+2. The m-1 case needs m >= 2.
enum class GeometricIdentity { OrderM, OrderMMinus1, OrderMPlus1, OrderMPlus2 };

// Value, first and second derivative of a series at one disk point.
struct FunctionJet {
  std::complex<double> value;
  std::complex<double> d1;
  std::complex<double> d2;
};

// Probability mass function, k >= 0. Computed by the multiplicative
// recurrence P(k+1) = P(k) q (k+m)/(k+1) to stay stable for large k, m.
double pmf(int k, const PascalParams& p);

// b_n for n >= 2; equals pmf(n-1).
SeriesCoefficient coefficient(int n, const PascalParams& p);

double closed_geometric_sum(GeometricIdentity id, const PascalParams& p);

MomentSums moment_sums(const PascalParams& p);

// sum_{n>=2} b_n / n in closed form. Throws std::domain_error for m == 1
// (no closed form); returns 0 at q == 0 by continuity.
double reciprocal_moment(const PascalParams& p);

// Series evaluations on the unit disk, truncated with a certified geometric
// tail bound <= tol. psi(z) = z + sum b_n z^n, phi = 2z - psi,
// g(z) = z - sum b_n z^n / n.
std::complex<double> eval_psi(const DiskPoint& z, const PascalParams& p, double tol);
std::complex<double> eval_phi(const DiskPoint& z, const PascalParams& p, double tol);
std::complex<double> eval_phi_deriv(const DiskPoint& z, const PascalParams& p, double tol);
std::complex<double> eval_g(const DiskPoint& z, const PascalParams& p, double tol);

FunctionJet phi_jet(const DiskPoint& z, const PascalParams& p, double tol);
FunctionJet g_jet(const DiskPoint& z, const PascalParams& p, double tol);

// The coefficient streams of phi (b_n) and g (b_n / n), with their exact
// ratio envelopes.
CoefficientSeries phi_coefficients(const PascalParams& p);
CoefficientSeries g_coefficients(const PascalParams& p);

// Hadamard convolution with the Pascal series: the stream b_n * a_n,
// preserving f's sign convention.
CoefficientSeries apply_operator(const CoefficientSeries& f, const PascalParams& p);

}  // namespace pascalspiral
