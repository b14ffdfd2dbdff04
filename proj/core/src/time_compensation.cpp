#include "gapfill/time_compensation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapfill/cubic_spline.hpp"

namespace gapfill {

void validate(const TdcConfig& c) {
  if (c.num_segments < 2) throw Error(ErrorKind::invalid_config, "compensation needs at least two segments");
  if (c.window_length < 1) throw Error(ErrorKind::invalid_config, "compensation window length must be positive");
}

std::vector<GapSpec> place_artificial_gaps(const GapSpec& gap, const TdcConfig& config, std::size_t signal_length) {
  validate(config);
  const std::int64_t h = gap.length();
  const auto w = static_cast<std::int64_t>(config.window_length);
  const std::int64_t shift = std::max(w / 2, h);
  const std::size_t right = (config.num_artificial_gaps + 1) / 2;
  const std::size_t left = config.num_artificial_gaps / 2;
  std::vector<GapSpec> out;
  for (std::size_t i = left; i-- > 0;) {
    const std::int64_t end = gap.start - 1 - w - static_cast<std::int64_t>(i) * shift;
    out.push_back({end - h + 1, end});
  }
  for (std::size_t i = 0; i < right; ++i) {
    const std::int64_t start = gap.end + 1 + w + static_cast<std::int64_t>(i) * shift;
    out.push_back({start, start + h - 1});
  }
  for (const auto& g : out) {
    if (g.start < 1 || g.end > static_cast<std::int64_t>(signal_length)) {
      throw Error(ErrorKind::insufficient_context,
                  "not enough reliable signal around the gap for " + std::to_string(config.num_artificial_gaps) +
                      " artificial gaps");
    }
  }
  return out;
}

SegmentLayout segment_layout(std::size_t gap_length, std::size_t m, std::size_t segment_length) {
  if (m < 1) throw Error(ErrorKind::invalid_params, "at least one segment is required");
  if (segment_length < 1 || segment_length > gap_length) {
    throw Error(ErrorKind::segment_exceeds_gap, "segment length " + std::to_string(segment_length) +
                                                    " does not fit a gap of " + std::to_string(gap_length));
  }
  SegmentLayout out;
  out.segment_length = segment_length;
  const double span = static_cast<double>(gap_length - segment_length);
  const double half = (static_cast<double>(segment_length) - 1.0) / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double offset = m == 1 ? span / 2.0 : span * static_cast<double>(i) / static_cast<double>(m - 1);
    out.starts.push_back(static_cast<std::size_t>(std::llround(offset)));
    out.centers.push_back(offset + half);
  }
  return out;
}

std::vector<double> energy_progression(std::span<const double> signal, const GapSpec& gap, std::size_t m,
                                       std::size_t segment_length) {
  if (gap.start < 1 || gap.end > static_cast<std::int64_t>(signal.size()) || gap.start > gap.end) {
    throw Error(ErrorKind::invalid_range, "gap lies outside the signal");
  }
  const SegmentLayout layout = segment_layout(static_cast<std::size_t>(gap.length()), m, segment_length);
  std::vector<double> e(m, 0.0);
  const auto base = static_cast<std::size_t>(gap.start - 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < segment_length; ++j) {
      const double v = signal[base + layout.starts[i] + j];
      e[i] += v * v;
    }
  }
  return e;
}

Multipliers solve_multipliers(const EnergyMatrices& energies) {
  const std::size_t m = energies.rows();
  const std::size_t g = energies.cols();
  if (energies.original.size() != g) throw Error(ErrorKind::dimension_mismatch, "X and Y differ in column count");
  for (std::size_t j = 0; j < g; ++j) {
    if (energies.inpainted[j].size() != m || energies.original[j].size() != m) {
      throw Error(ErrorKind::dimension_mismatch, "X and Y differ in row count");
    }
  }
  Multipliers out{std::vector<double>(m, 1.0), std::vector<bool>(m, false)};
  for (std::size_t i = 0; i < m; ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      num += energies.original[j][i] * energies.inpainted[j][i];
      den += energies.inpainted[j][i] * energies.inpainted[j][i];
    }
    if (den > 0.0) {
      out.values[i] = num / den;
    } else {
      out.degenerate[i] = true;
    }
  }
  return out;
}

std::vector<double> symmetrize(std::span<const double> n) {
  const std::size_t m = n.size();
  std::vector<double> out(n.begin(), n.end());
  for (std::size_t i = 0; i < m / 2; ++i) out[i] = (n[i] + n[m - 1 - i]) / 2.0;
  for (std::size_t i = m / 2; i < m; ++i) out[i] = out[m - 1 - i];
  return out;
}

bool is_unimodal(std::span<const double> q, double tolerance) {
  if (q.size() < 3) return true;
  const std::size_t last = q.size() - 1;
  const std::size_t rise_end = last / 2;
  const std::size_t fall_start = (last + 1) / 2;
  for (std::size_t i = 0; i < rise_end; ++i) {
    if (q[i + 1] < q[i] - tolerance) return false;
  }
  for (std::size_t i = fall_start; i < last; ++i) {
    if (q[i + 1] > q[i] + tolerance) return false;
  }
  return true;
}

CompensationCurve build_curve(std::span<const double> n, std::span<const double> centers, const GapSpec& gap,
                              bool clamp_below_one) {
  if (n.size() != centers.size()) throw Error(ErrorKind::dimension_mismatch, "one amplitude per knot is required");
  CompensationCurve curve;
  curve.symmetrized.assign(n.begin(), n.end());
  curve.knots.push_back(static_cast<double>(gap.start));
  std::vector<double> values{1.0};
  for (std::size_t i = 0; i < n.size(); ++i) {
    curve.knots.push_back(centers[i]);
    values.push_back(n[i]);
  }
  curve.knots.push_back(static_cast<double>(gap.end));
  values.push_back(1.0);
  const ClampedCubicSpline spline(curve.knots, values, 0.0, 0.0);

  curve.samples.resize(static_cast<std::size_t>(gap.length()));
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    double q = spline(static_cast<double>(gap.start) + static_cast<double>(i));
    if (clamp_below_one && q < 1.0) {
      q = 1.0;
      curve.clamped = true;
    }
    curve.samples[i] = q;
  }
  curve.unimodal = is_unimodal(curve.samples);
  return curve;
}

TdcResult tdc_inpaint(std::span<const double> observed, const GapSpec& gap, std::span<const GapSpec> other_gaps,
                      const GapInpainter& inner, const TdcConfig& config) {
  validate(config);
  const std::size_t h = static_cast<std::size_t>(gap.length());
  TdcResult result;
  result.artificial_gaps = place_artificial_gaps(gap, config, observed.size());
  for (const auto& a : result.artificial_gaps) {
    if (a.overlaps(gap)) throw Error(ErrorKind::insufficient_context, "artificial gap overlaps the true gap");
    for (const auto& o : other_gaps) {
      if (a.overlaps(o)) throw Error(ErrorKind::insufficient_context, "artificial gap overlaps another missing run");
    }
  }

  std::vector<GapSpec> unreliable(other_gaps.begin(), other_gaps.end());
  unreliable.push_back(gap);
  GapFill fill = inner(observed, unreliable, gap);
  if (fill.samples.size() != h) throw Error(ErrorKind::dimension_mismatch, "inner method returned a wrong gap length");
  result.iterations = fill.iterations;
  result.converged = fill.converged;

  const std::size_t seg_len = config.segment_length ? config.segment_length : std::max<std::size_t>(1, h / 4);
  const SegmentLayout layout = segment_layout(h, config.num_segments, seg_len);
  const GapSpec local{1, static_cast<std::int64_t>(h)};

  EnergyMatrices energies;
  for (const auto& a : result.artificial_gaps) {
    std::vector<GapSpec> masked = unreliable;
    masked.push_back(a);
    GapFill af = inner(observed, masked, a);
    if (af.samples.size() != h) throw Error(ErrorKind::dimension_mismatch, "inner method returned a wrong gap length");
    result.iterations += af.iterations;
    result.converged = result.converged && af.converged;
    energies.inpainted.push_back(energy_progression(af.samples, local, config.num_segments, seg_len));
    energies.original.push_back(
        energy_progression(observed.subspan(static_cast<std::size_t>(a.start - 1), h), local, config.num_segments, seg_len));
  }

  result.restored.assign(observed.begin(), observed.end());
  auto target = std::span<double>(result.restored).subspan(static_cast<std::size_t>(gap.start - 1), h);
  if (energies.cols() == 0) {
    std::copy(fill.samples.begin(), fill.samples.end(), target.begin());
    result.curve.samples.assign(h, 1.0);
    return result;
  }

  const Multipliers mult = solve_multipliers(energies);
  std::vector<double> amplitudes(mult.values.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) amplitudes[i] = std::sqrt(std::max(mult.values[i], 0.0));
  const std::vector<double> sym = symmetrize(amplitudes);
  std::vector<double> centers(layout.centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = static_cast<double>(gap.start) + layout.centers[i];

  result.curve = build_curve(sym, centers, gap, config.clamp_below_one);
  result.curve.multipliers = mult.values;
  result.curve.amplitudes = amplitudes;
  result.curve.degenerate = mult.degenerate;
  for (std::size_t i = 0; i < h; ++i) target[i] = fill.samples[i] * result.curve.samples[i];
  return result;
}

}  // namespace gapfill
