#include "gapfill/janssen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapfill {

void validate(const JanssenConfig& c) {
  if (c.iterations < 1) throw Error(ErrorKind::invalid_config, "Janssen needs at least one iteration");
  if (c.frame_length < 3) throw Error(ErrorKind::invalid_config, "Janssen frame length must be at least 3");
  if (c.order && *c.order < 1) throw Error(ErrorKind::invalid_config, "Janssen order must be positive");
}

std::size_t janssen_order(std::size_t missing, std::size_t frame_length) {
  return std::min(3 * missing + 2, frame_length / 3);
}

std::vector<double> estimate_ar(std::span<const double> segment, std::size_t order) {
  if (segment.size() <= order) {
    throw Error(ErrorKind::order_too_large, "segment of " + std::to_string(segment.size()) +
                                                " samples cannot support AR order " + std::to_string(order));
  }
  const std::size_t n = segment.size();
  std::vector<double> r(order + 1, 0.0);
  for (std::size_t k = 0; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) s += segment[t] * segment[t + k];
    r[k] = s;
  }
  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  if (!(r[0] > 0.0)) return a;

  std::vector<double> prev(order + 1, 0.0);
  double err = r[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    if (!std::isfinite(k) || std::abs(k) >= 1.0) break;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= 1.0 - k * k;
    if (!(err > 0.0)) break;
  }
  return a;
}

double prediction_error_energy(std::span<const double> signal, std::span<const double> a) {
  const std::size_t p = a.size() - 1;
  double e = 0.0;
  for (std::size_t t = p; t < signal.size(); ++t) {
    double v = 0.0;
    for (std::size_t u = 0; u <= p; ++u) v += a[u] * signal[t - u];
    e += v * v;
  }
  return e;
}

namespace {

// Minimises |A z|^2 over the missing entries of z with the others fixed.
void solve_gap(std::span<double> z, const std::vector<std::size_t>& missing, const std::vector<double>& a) {
  const std::size_t n = z.size();
  const std::size_t p = a.size() - 1;
  const std::size_t h = missing.size();

  // prefix[d][u] = sum_{v < u} a_v a_{v+d}; entry (i, j) of A_G^T A_G with
  // d = g_j - g_i sums a_u a_{u+d} over u in [max(0, p - g_j), min(p - d, n - 1 - g_j)].
  std::vector<std::vector<double>> prefix(p + 1);
  for (std::size_t d = 0; d <= p; ++d) {
    prefix[d].assign(p - d + 2, 0.0);
    for (std::size_t u = 0; u + d <= p; ++u) prefix[d][u + 1] = prefix[d][u] + a[u] * a[u + d];
  }

  // The normal matrix is banded: entries vanish once g_j - g_i > p, and the
  // gap indices are increasing, so j - i <= p as well. Row i keeps columns
  // i - bw .. i at band[i * (bw + 1) + (j - i + bw)].
  const std::size_t bw = std::min(p, h - 1);
  const std::size_t width = bw + 1;
  std::vector<double> band(h * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return band[i * width + (j + bw - i)]; };
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t i = j; i < h && i <= j + bw; ++i) {
      const std::size_t gi = missing[j], gj = missing[i];
      const std::size_t d = gj - gi;
      if (d > p) break;
      const std::size_t lo = gj >= p ? 0 : p - gj;
      const std::size_t hi = std::min(p - d, n - 1 - gj);
      if (lo <= hi) at(i, j) = prefix[d][hi + 1] - prefix[d][lo];
    }
  }

  // Banded Cholesky in place, lower factor.
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t first = i > bw ? i - bw : 0;
    for (std::size_t j = first; j <= i; ++j) {
      double s = at(i, j);
      const std::size_t kfirst = std::max(first, j > bw ? j - bw : 0);
      for (std::size_t k = kfirst; k < j; ++k) s -= at(i, k) * at(j, k);
      if (j < i) {
        at(i, j) = s / at(j, j);
      } else {
        if (!(s > 0.0)) throw Error(ErrorKind::numerical, "gap normal equations are not positive definite");
        at(i, i) = std::sqrt(s);
      }
    }
  }

  // Residual of the reliable part: r = A z with the gap zeroed.
  for (std::size_t g : missing) z[g] = 0.0;
  std::vector<double> res(n, 0.0);
  for (std::size_t t = p; t < n; ++t) {
    double v = 0.0;
    for (std::size_t u = 0; u <= p; ++u) v += a[u] * z[t - u];
    res[t] = v;
  }
  std::vector<double> sol(h);
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t g = missing[i];
    const std::size_t t_hi = std::min(n - 1, g + p);
    double s = 0.0;
    for (std::size_t t = std::max(p, g); t <= t_hi; ++t) s += a[t - g] * res[t];
    sol[i] = -s;
  }

  for (std::size_t i = 0; i < h; ++i) {
    double s = sol[i];
    for (std::size_t k = i > bw ? i - bw : 0; k < i; ++k) s -= at(i, k) * sol[k];
    sol[i] = s / at(i, i);
  }
  for (std::size_t i = h; i-- > 0;) {
    double s = sol[i];
    for (std::size_t k = i + 1; k < h && k <= i + bw; ++k) s -= at(k, i) * sol[k];
    sol[i] = s / at(i, i);
  }
  for (std::size_t i = 0; i < h; ++i) z[missing[i]] = sol[i];
}

}  // namespace

Signal janssen_inpaint(std::span<const double> segment, const ReliableMask& mask, const JanssenConfig& config) {
  validate(config);
  if (mask.size() != segment.size()) throw Error(ErrorKind::length_mismatch, "mask and segment differ in length");
  Signal z(segment.begin(), segment.end());
  const std::size_t h = mask.missing_count();
  if (h == 0) return z;
  const std::size_t p = config.order ? *config.order : janssen_order(h, config.frame_length);
  if (p < 1 || p + h >= z.size()) {
    throw Error(ErrorKind::order_too_large, "AR order " + std::to_string(p) + " too large for a segment of " +
                                                std::to_string(z.size()) + " samples with " + std::to_string(h) +
                                                " missing");
  }
  std::vector<std::size_t> missing;
  missing.reserve(h);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!mask.reliable(i)) {
      missing.push_back(i);
      z[i] = 0.0;
    }
  }
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const std::vector<double> a = estimate_ar(z, p);
    solve_gap(z, missing, a);
  }
  return z;
}

}  // namespace gapfill
