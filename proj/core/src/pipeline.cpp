#include "gapfill/pipeline.hpp"

#include <algorithm>

namespace gapfill {

namespace {

std::size_t round_up(std::size_t n, std::size_t q) { return (n + q - 1) / q * q; }

// Gaps of `all` clipped to the segment, in 1-based segment coordinates.
std::vector<GapSpec> local_gaps(std::span<const GapSpec> all, const SegmentPlan& plan) {
  std::vector<GapSpec> out;
  const auto lo = static_cast<std::int64_t>(plan.start) + 1;
  const auto hi = static_cast<std::int64_t>(plan.start + plan.length);
  for (const auto& g : all) {
    const std::int64_t s = std::max(g.start, lo);
    const std::int64_t f = std::min(g.end, hi);
    if (s <= f) out.push_back({s - lo + 1, f - lo + 1});
  }
  return out;
}

GapSpec to_local(const GapSpec& g, const SegmentPlan& plan) {
  const auto shift = static_cast<std::int64_t>(plan.start);
  return {g.start - shift, g.end - shift};
}

}  // namespace

void validate(const PipelineConfig& c) {
  GaborParams p = c.frame;
  p.signal_length = std::max(p.window_length, p.hop);
  p.signal_length = round_up(p.signal_length, std::max<std::size_t>(p.hop, 1));
  validate(p);
  validate(c.solver);
  validate(c.reweight);
  validate(c.tdc);
  validate(c.janssen);
  if (!(c.gradual_step > 0.0 && c.gradual_step <= 0.5)) {
    throw Error(ErrorKind::invalid_config, "gradual step fraction must lie in (0, 1/2]");
  }
}

SegmentPlan plan_segment(std::size_t signal_length, const GapSpec& gap, std::size_t context, std::size_t window,
                         std::size_t hop) {
  if (gap.start < 1 || gap.start > gap.end || gap.end > static_cast<std::int64_t>(signal_length)) {
    throw Error(ErrorKind::invalid_range, "gap lies outside the signal");
  }
  const auto h = static_cast<std::size_t>(gap.length());
  const std::size_t wanted = round_up(std::max(h + 2 * context, window), hop);
  SegmentPlan plan;
  if (wanted >= signal_length) {
    plan.start = 0;
    plan.length = signal_length;
    plan.padded_length = round_up(std::max(signal_length, window), hop);
    return plan;
  }
  const auto center = static_cast<std::int64_t>(gap.start - 1) + static_cast<std::int64_t>(h / 2);
  std::int64_t start = center - static_cast<std::int64_t>(wanted / 2);
  start = std::clamp<std::int64_t>(start, 0, static_cast<std::int64_t>(signal_length - wanted));
  plan.start = static_cast<std::size_t>(start);
  plan.length = wanted;
  plan.padded_length = wanted;
  return plan;
}

std::vector<GapSpec> shift_gap(const GapSpec& gap, std::int64_t offset, std::size_t length) {
  const auto n = static_cast<std::int64_t>(length);
  auto wrap = [n](std::int64_t i) { return ((i - 1) % n + n) % n + 1; };
  const std::int64_t s = wrap(gap.start - offset);
  const std::int64_t f = s + gap.length() - 1;
  if (f <= n) return {{s, f}};
  return {{1, f - n}, {s, n}};
}

GapRestorer::GapRestorer(PipelineConfig config) : config_(std::move(config)) {
  validate(config_);
  config_.tdc.window_length = config_.frame.window_length;
}

std::shared_ptr<const TightGaborFrame> GapRestorer::frame_for(std::size_t length) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = cache_[length];
  if (!slot) {
    GaborParams p = config_.frame;
    p.signal_length = length;
    slot = std::make_shared<const TightGaborFrame>(p);
  }
  return slot;
}

GapFill GapRestorer::fill(std::span<const double> degraded, std::span<const GapSpec> gaps, std::size_t target,
                          const MethodSpec& method) const {
  if (target >= gaps.size()) throw Error(ErrorKind::invalid_params, "target gap index out of range");
  const GapSpec& gap = gaps[target];
  if (method.algorithm == Algorithm::sparse && method.variant == Variant::tdc) {
    std::vector<GapSpec> others;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (i != target) others.push_back(gaps[i]);
    }
    MethodSpec inner_method = method;
    inner_method.variant = Variant::plain;
    const GapInpainter inner = [&](std::span<const double> y, std::span<const GapSpec> unreliable,
                                   const GapSpec& t) { return fill_core(y, unreliable, t, inner_method); };
    TdcResult r = tdc_inpaint(degraded, gap, others, inner, config_.tdc);
    GapFill out;
    const auto first = r.restored.begin() + (gap.start - 1);
    out.samples.assign(first, first + gap.length());
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
  }
  return fill_core(degraded, gaps, gap, method);
}

GapFill GapRestorer::fill_core(std::span<const double> degraded, std::span<const GapSpec> unreliable,
                               const GapSpec& target, const MethodSpec& method) const {
  if (method.algorithm == Algorithm::janssen) return fill_janssen(degraded, unreliable, target);

  const GaborParams& fp = config_.frame;
  const SegmentPlan plan =
      plan_segment(degraded.size(), target, config_.context_windows * fp.window_length, fp.window_length, fp.hop);
  Signal segment(plan.padded_length, 0.0);
  std::copy_n(degraded.begin() + static_cast<std::ptrdiff_t>(plan.start), plan.length, segment.begin());
  std::vector<GapSpec> local = local_gaps(unreliable, plan);
  for (const auto& g : local) {
    std::fill(segment.begin() + (g.start - 1), segment.begin() + g.end, 0.0);
  }
  const GapSpec local_target = to_local(target, plan);

  const OffsetSpec offset = compute_offset(local_target.start, local_target.end,
                                           static_cast<std::int64_t>(fp.hop), method.offset);
  const Signal shifted = apply_offset<double>(segment, offset.value);
  std::vector<GapSpec> shifted_gaps;
  for (const auto& g : local) {
    for (const auto& piece : shift_gap(g, offset.value, segment.size())) shifted_gaps.push_back(piece);
  }

  const auto frame = frame_for(segment.size());
  SolverResult res;
  if (method.variant == Variant::gradual) {
    GradualConfig gc;
    gc.step_fraction = config_.gradual_step;
    gc.method = method.sparse;
    gc.solver = config_.solver;
    gc.reweight = config_.reweight;
    gc.strict = config_.gradual_strict;
    res = gradual_inpaint(*frame, shifted_gaps, shifted, gc);
  } else {
    const ReliableMask mask(shifted.size(), shifted_gaps);
    res = inpaint_sparse(*frame, mask, shifted, method.sparse, config_.solver, config_.reweight);
  }
  const Signal restored = undo_offset<double>(res.restored, offset.value);

  GapFill out;
  const auto first = restored.begin() + (local_target.start - 1);
  out.samples.assign(first, first + local_target.length());
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

GapFill GapRestorer::fill_janssen(std::span<const double> degraded, std::span<const GapSpec> unreliable,
                                  const GapSpec& target) const {
  const std::size_t context = config_.janssen.frame_length;
  const SegmentPlan plan = plan_segment(degraded.size(), target, context, 1, 1);
  Signal segment(degraded.begin() + static_cast<std::ptrdiff_t>(plan.start),
                 degraded.begin() + static_cast<std::ptrdiff_t>(plan.start + plan.length));
  const std::vector<GapSpec> local = local_gaps(unreliable, plan);
  const ReliableMask mask(segment.size(), local);
  const Signal restored = janssen_inpaint(segment, mask, config_.janssen);
  const GapSpec local_target = to_local(target, plan);
  GapFill out;
  const auto first = restored.begin() + (local_target.start - 1);
  out.samples.assign(first, first + local_target.length());
  out.iterations = config_.janssen.iterations;
  out.converged = true;
  return out;
}

Signal GapRestorer::restore(std::span<const double> degraded, std::span<const GapSpec> gaps, const MethodSpec& method,
                            std::vector<GapFill>* fills) const {
  Signal out(degraded.begin(), degraded.end());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    GapFill f = fill(degraded, gaps, i, method);
    std::copy(f.samples.begin(), f.samples.end(), out.begin() + (gaps[i].start - 1));
    if (fills) fills->push_back(std::move(f));
  }
  return out;
}

}  // namespace gapfill
