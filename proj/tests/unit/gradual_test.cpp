#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gapfill/gradual.hpp"

using namespace gapfill;

namespace {

struct Instance {
  GaborParams params;
  Signal clean;
  GapSpec gap;
  Signal observed;
};

Instance harmonic_instance(std::int64_t h) {
  Instance c;
  c.params.signal_length = 700 * 36;
  c.clean.resize(c.params.signal_length);
  for (std::size_t t = 0; t < c.clean.size(); ++t) {
    for (int k = 1; k <= 4; ++k) {
      c.clean[t] += 0.3 / k * std::sin(2.0 * std::numbers::pi * 220.0 * k * t / 44100.0 + k);
    }
  }
  const std::int64_t centre = 1 + 18 * 700 + 350;
  c.gap = GapSpec::from_length(centre - h / 2, h);
  c.observed = c.clean;
  for (std::int64_t i = c.gap.start; i <= c.gap.end; ++i) c.observed[i - 1] = 0.0;
  return c;
}

}  // namespace

TEST(Gradual, StepRule) {
  EXPECT_EQ(gradual_step(1764, 0.125), 220u);
  EXPECT_EQ(gradual_step(5, 0.125), 1u);
  EXPECT_EQ(gradual_step(882, 0.5), 441u);
}

TEST(Gradual, ConfigValidation) {
  GradualConfig c;
  EXPECT_NO_THROW(validate(c));
  c.step_fraction = 0.6;
  EXPECT_THROW(validate(c), Error);
  c = GradualConfig{};
  c.method.weights = WeightScheme::none;
  EXPECT_NO_THROW(validate(c));
  c.strict = true;
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_config);
  }
}

TEST(Gradual, HalfStepIsOneGradeAndMatchesPlain) {
  const Instance c = harmonic_instance(882);
  const TightGaborFrame f(c.params);
  const std::vector<GapSpec> gaps{c.gap};
  GradualConfig cfg;
  cfg.step_fraction = 0.5;
  const auto g = gradual_inpaint(f, gaps, c.observed, cfg);
  EXPECT_EQ(g.outer_iterations, 1u);
  const ReliableMask mask(f.signal_length(), gaps);
  EXPECT_EQ(g.restored, inpaint_sparse(f, mask, c.observed, cfg.method, cfg.solver, cfg.reweight).restored);
}

TEST(Gradual, GradeCountAndFrozenSamples) {
  const Instance c = harmonic_instance(1764);
  const TightGaborFrame f(c.params);
  const std::vector<GapSpec> gaps{c.gap};
  GradualConfig cfg;
  cfg.solver.max_iterations = 60;
  const auto g = gradual_inpaint(f, gaps, c.observed, cfg);
  EXPECT_EQ(g.outer_iterations, 5u);
  const ReliableMask mask(f.signal_length(), gaps);
  EXPECT_TRUE(is_feasible(mask, c.observed, g.restored));

  // Replay the grades by hand: every grade's output must keep the samples
  // frozen before it bit-exactly, and the final result must match.
  const auto r = static_cast<std::int64_t>(gradual_step(1764, cfg.step_fraction));
  Signal y = c.observed;
  GapSpec cur = c.gap;
  std::size_t grades = 0;
  while (cur.start <= cur.end) {
    const std::vector<GapSpec> cg{cur};
    const ReliableMask m(y.size(), cg);
    const Signal next = inpaint_sparse(f, m, y, cfg.method, cfg.solver, cfg.reweight).restored;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (m.reliable(i)) EXPECT_EQ(next[i], y[i]);
    }
    y = next;
    cur.start += r;
    cur.end -= r;
    ++grades;
  }
  EXPECT_EQ(grades, g.outer_iterations);
  EXPECT_EQ(y, g.restored);
  EXPECT_LE(grades, static_cast<std::size_t>((1764 + 2 * r - 1) / (2 * r)));
}
