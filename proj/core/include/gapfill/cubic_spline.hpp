#pragma once

#include <span>
#include <vector>

namespace gapfill {

// Cubic spline with prescribed first derivatives at both ends.
class ClampedCubicSpline {
 public:
  // Throws non_monotone_knots unless knots are strictly increasing, and
  // invalid_params for fewer than two knots or mismatched sizes.
  ClampedCubicSpline(std::vector<double> knots, std::vector<double> values, double slope_start = 0.0,
                     double slope_end = 0.0);

  // Outside the knot range the end pieces are extended.
  double operator()(double t) const;
  double derivative(double t) const;

  std::span<const double> knots() const noexcept { return x_; }
  std::span<const double> values() const noexcept { return y_; }
  std::span<const double> second_derivatives() const noexcept { return m_; }

 private:
  std::size_t interval(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace gapfill
