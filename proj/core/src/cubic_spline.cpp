#include "gapfill/cubic_spline.hpp"

#include <algorithm>

#include "gapfill/error.hpp"

namespace gapfill {

ClampedCubicSpline::ClampedCubicSpline(std::vector<double> knots, std::vector<double> values, double slope_start,
                                       double slope_end)
    : x_(std::move(knots)), y_(std::move(values)) {
  if (x_.size() != y_.size()) throw Error(ErrorKind::invalid_params, "spline knots and values differ in size");
  if (x_.size() < 2) throw Error(ErrorKind::invalid_params, "spline needs at least two knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw Error(ErrorKind::non_monotone_knots, "spline knots must increase strictly");
  }

  // Tridiagonal system for the second derivatives, solved by the Thomas
  // algorithm (the matrix is strictly diagonally dominant).
  const std::size_t n = x_.size();
  std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0), rhs(n);
  const double h0 = x_[1] - x_[0];
  diag[0] = 2.0 * h0;
  sup[0] = h0;
  rhs[0] = 6.0 * ((y_[1] - y_[0]) / h0 - slope_start);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    sub[i] = hl;
    diag[i] = 2.0 * (hl + hr);
    sup[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  const double hn = x_[n - 1] - x_[n - 2];
  sub[n - 1] = hn;
  diag[n - 1] = 2.0 * hn;
  rhs[n - 1] = 6.0 * (slope_end - (y_[n - 1] - y_[n - 2]) / hn);

  for (std::size_t i = 1; i < n; ++i) {
    const double f = sub[i] / diag[i - 1];
    diag[i] -= f * sup[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
}

std::size_t ClampedCubicSpline::interval(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin(), 1));
  return std::min(idx, x_.size() - 1) - 1;
}

double ClampedCubicSpline::operator()(double t) const {
  const std::size_t i = interval(t);
  if (t == x_[i]) return y_[i];
  if (t == x_[i + 1]) return y_[i + 1];
  const double h = x_[i + 1] - x_[i];
  const double l = x_[i + 1] - t;
  const double r = t - x_[i];
  return m_[i] * l * l * l / (6.0 * h) + m_[i + 1] * r * r * r / (6.0 * h) + (y_[i] / h - m_[i] * h / 6.0) * l +
         (y_[i + 1] / h - m_[i + 1] * h / 6.0) * r;
}

double ClampedCubicSpline::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double l = x_[i + 1] - t;
  const double r = t - x_[i];
  return -m_[i] * l * l / (2.0 * h) + m_[i + 1] * r * r / (2.0 * h) - (y_[i] / h - m_[i] * h / 6.0) +
         (y_[i + 1] / h - m_[i + 1] * h / 6.0);
}

}  // namespace gapfill
