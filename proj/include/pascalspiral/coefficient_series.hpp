#pragma once

#include <functional>
#include <utility>
#include <variant>
#include <vector>

namespace pascalspiral {

// Sign pattern of the underlying function f(z) = z +/- sum a_n z^n.
// Streams always store the magnitudes |a_n|; the convention records whether
// every coefficient beyond the first is known to be non-positive (class T).
enum class SignConvention { TClassNegative, General };

// The stream vanishes identically for n > last_index.
struct FiniteSupport {
  int last_index;  // < 2 means the stream is all zero
};

// sup_ratio(n) is a nonincreasing upper bound on a_{k+1}/a_k valid for every
// k >= n (n >= valid_from), tending to `limit`. Tail sums can be certified
// whenever limit (times the weight's own ratio limit) stays below 1.
struct RatioEnvelope {
  std::function<double(int)> sup_ratio;
  double limit;
  int valid_from = 2;
};

using GrowthBound = std::variant<FiniteSupport, RatioEnvelope>;

// A nonnegative coefficient stream |a_n|, n >= 2, with growth metadata that
// makes infinite weighted sums over it certifiable.
class CoefficientSeries {
public:
  // Checks (by sampling) that the envelope dominates the stream; throws
  // std::invalid_argument when it visibly does not.
  CoefficientSeries(std::function<double(int)> coeff, GrowthBound growth,
                    SignConvention sign);

  static CoefficientSeries zero(SignConvention sign = SignConvention::TClassNegative);
  // values[0] is |a_2|; everything past the vector is zero.
  static CoefficientSeries from_values(std::vector<double> values, SignConvention sign);

  double coeff_at(int n) const;  // |a_n|, n >= 2
  const GrowthBound& growth() const { return growth_; }
  SignConvention sign() const { return sign_; }
  bool finitely_supported() const;

private:
  std::function<double(int)> coeff_;
  GrowthBound growth_;
  SignConvention sign_;
};

}  // namespace pascalspiral
