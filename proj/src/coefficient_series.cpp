#include "pascalspiral/coefficient_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pascalspiral {

namespace {

// How far the constructor samples the stream against its envelope. Cheap
// spot checking only: a bound that lies about the far tail cannot be caught
// here, but every formula-level mistake shows up within a few dozen indices.
constexpr int kDominationSamples = 64;

void check_envelope(const std::function<double(int)>& coeff, const RatioEnvelope& env) {
  if (!env.sup_ratio) {
    throw std::invalid_argument("ratio envelope has no sup_ratio function");
  }
  if (env.valid_from < 2) {
    throw std::invalid_argument("ratio envelope valid_from must be >= 2");
  }
  if (!(env.limit >= 0.0)) {
    throw std::invalid_argument("ratio envelope limit must be nonnegative");
  }
  const int lo = env.valid_from;
  const int hi = lo + kDominationSamples;
  double prev_ratio = env.sup_ratio(lo);
  double a = coeff(lo);
  for (int n = lo; n < hi; ++n) {
    const double r = env.sup_ratio(n);
    if (!(r >= 0.0)) {
      throw std::invalid_argument("ratio envelope is negative at n=" + std::to_string(n));
    }
    if (r > prev_ratio * (1.0 + 1e-12) + 1e-300) {
      throw std::invalid_argument("ratio envelope increases at n=" + std::to_string(n));
    }
    if (r < env.limit - 1e-12) {
      throw std::invalid_argument("ratio envelope drops below its limit at n=" +
                                  std::to_string(n));
    }
    prev_ratio = r;
    const double next = coeff(n + 1);
    if (!(a >= 0.0) || !(next >= 0.0)) {
      throw std::invalid_argument("coefficient stream is negative near n=" +
                                  std::to_string(n));
    }
    if (next > r * a * (1.0 + 1e-9) + 1e-300) {
      throw std::invalid_argument("ratio envelope does not dominate the stream at n=" +
                                  std::to_string(n));
    }
    a = next;
  }
}

}  // namespace

CoefficientSeries::CoefficientSeries(std::function<double(int)> coeff, GrowthBound growth,
                                     SignConvention sign)
    : coeff_(std::move(coeff)), growth_(std::move(growth)), sign_(sign) {
  if (!coeff_) {
    throw std::invalid_argument("coefficient stream has no generator function");
  }
  if (const auto* env = std::get_if<RatioEnvelope>(&growth_)) {
    check_envelope(coeff_, *env);
  }
}

CoefficientSeries CoefficientSeries::zero(SignConvention sign) {
  return CoefficientSeries([](int) { return 0.0; }, FiniteSupport{1}, sign);
}

CoefficientSeries CoefficientSeries::from_values(std::vector<double> values,
                                                 SignConvention sign) {
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("coefficient magnitudes must be nonnegative");
    }
  }
  const int last = static_cast<int>(values.size()) + 1;
  auto stream = [vals = std::move(values)](int n) {
    const std::size_t i = static_cast<std::size_t>(n - 2);
    return i < vals.size() ? vals[i] : 0.0;
  };
  return CoefficientSeries(std::move(stream), FiniteSupport{last}, sign);
}

double CoefficientSeries::coeff_at(int n) const {
  if (n < 2) {
    throw std::domain_error("coefficient stream index must be >= 2");
  }
  if (const auto* fin = std::get_if<FiniteSupport>(&growth_)) {
    if (n > fin->last_index) return 0.0;
  }
  const double v = coeff_(n);
  if (!(v >= 0.0)) {
    throw std::domain_error("coefficient stream produced a negative magnitude at n=" +
                            std::to_string(n));
  }
  return v;
}

bool CoefficientSeries::finitely_supported() const {
  return std::holds_alternative<FiniteSupport>(growth_);
}

}  // namespace pascalspiral
