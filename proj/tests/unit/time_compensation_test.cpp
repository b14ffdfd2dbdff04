#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gapfill/cubic_spline.hpp"
#include "gapfill/time_compensation.hpp"
#include "oracles.hpp"

using namespace gapfill;

TEST(Placement, Examples) {
  TdcConfig c;
  c.window_length = 2800;
  const GapSpec gap = GapSpec::from_length(50001, 882);
  c.num_artificial_gaps = 2;
  auto g = place_artificial_gaps(gap, c, 200000);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].end, gap.start - 1 - 2800);
  EXPECT_EQ(g[1].start, gap.end + 1 + 2800);
  EXPECT_EQ(g[0].length(), 882);

  c.num_artificial_gaps = 4;
  g = place_artificial_gaps(gap, c, 200000);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[1].end, gap.start - 1 - 2800);
  EXPECT_EQ(g[0].end, g[1].end - 1400);
  EXPECT_EQ(g[3].start, g[2].start + 1400);
  // Symmetric about the true gap.
  EXPECT_EQ(gap.start - g[0].end, g[3].start - gap.end);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_FALSE(g[i].overlaps(gap));
    for (std::size_t j = i + 1; j < g.size(); ++j) EXPECT_FALSE(g[i].overlaps(g[j]));
  }

  c.num_artificial_gaps = 0;
  EXPECT_TRUE(place_artificial_gaps(gap, c, 200000).empty());
}

TEST(Placement, LongGapsShiftByTheirLength) {
  TdcConfig c;
  const GapSpec gap = GapSpec::from_length(50001, 2205);
  const auto g = place_artificial_gaps(gap, c, 200000);
  EXPECT_EQ(g[3].start - g[2].start, 2205);
  EXPECT_FALSE(g[2].overlaps(g[3]));
}

TEST(Placement, InsufficientContext) {
  TdcConfig c;
  try {
    (void)place_artificial_gaps(GapSpec::from_length(3000, 882), c, 20000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::insufficient_context);
  }
}

TEST(EnergyProgression, Examples) {
  const GapSpec gap{11, 50};
  const Signal constant(60, 0.5);
  for (double e : energy_progression(constant, gap, 10, 10)) EXPECT_DOUBLE_EQ(e, 10 * 0.25);
  const Signal zero(60, 0.0);
  for (double e : energy_progression(zero, gap, 10, 10)) EXPECT_EQ(e, 0.0);

  Signal ramp(60);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i) * 0.01;
  const auto layout = segment_layout(40, 10, 10);
  const auto e = energy_progression(ramp, gap, 10, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    double direct = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
      const double v = ramp[10 + layout.starts[i] + j];
      direct += v * v;
    }
    EXPECT_DOUBLE_EQ(e[i], direct);
    if (i > 0) EXPECT_GT(e[i], e[i - 1]);
  }
}

TEST(EnergyProgression, LayoutCoversGap) {
  const auto l = segment_layout(1764, 10, 441);
  EXPECT_EQ(l.starts.front(), 0u);
  EXPECT_EQ(l.starts.back() + 441, 1764u);
  for (std::size_t i = 1; i < 10; ++i) {
    EXPECT_GT(l.centers[i], l.centers[i - 1]);
    EXPECT_NEAR(l.centers[i] - l.centers[i - 1], l.centers[1] - l.centers[0], 1e-12);
    EXPECT_NEAR(l.centers[i] + l.centers[9 - i], 1763.0, 1e-9);
  }
  try {
    (void)segment_layout(100, 10, 101);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::segment_exceeds_gap);
  }
}

TEST(Multipliers, Examples) {
  EnergyMatrices e;
  e.inpainted = {{1, 4}};
  e.original = {{2, 8}};
  auto m = solve_multipliers(e);
  EXPECT_DOUBLE_EQ(m.values[0], 2.0);
  EXPECT_DOUBLE_EQ(m.values[1], 2.0);

  e.inpainted = {{1}, {2}};
  e.original = {{3}, {4}};
  EXPECT_DOUBLE_EQ(solve_multipliers(e).values[0], 2.2);

  e.inpainted = {{1, 0, 3}, {2, 0, 1}};
  e.original = e.inpainted;
  m = solve_multipliers(e);
  EXPECT_EQ(m.values, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(m.degenerate, (std::vector<bool>{false, true, false}));
}

TEST(Multipliers, ClosedFormMatchesDenseLeastSquares) {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 10, g = 4;
    EnergyMatrices e;
    e.inpainted.assign(g, std::vector<double>(m));
    e.original.assign(g, std::vector<double>(m));
    // min_v |Y - diag(v) X|_F^2 as one generic least-squares problem in v.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m * g, m);
    Eigen::VectorXd b(m * g);
    for (std::size_t j = 0; j < g; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        e.inpainted[j][i] = gen.uniform(0, 5);
        e.original[j][i] = gen.uniform(0, 5);
        A(j * m + i, i) = e.inpainted[j][i];
        b(j * m + i) = e.original[j][i];
      }
    }
    const Eigen::VectorXd ref = A.colPivHouseholderQr().solve(b);
    const auto got = solve_multipliers(e).values;
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(got[i], ref(i), 1e-10 * std::abs(ref(i)));
  }
}

TEST(Symmetrize, Examples) {
  // n_i <- (n_i + n_{m+1-i}) / 2 on the first half, then mirrored.
  EXPECT_EQ(symmetrize(std::vector<double>{1, 2, 3, 4}), (std::vector<double>{2.5, 2.5, 2.5, 2.5}));
  EXPECT_EQ(symmetrize(std::vector<double>{1, 2, 5}), (std::vector<double>{3, 2, 3}));
  EXPECT_EQ(symmetrize(std::vector<double>{1, 3, 1}), (std::vector<double>{1, 3, 1}));
  EXPECT_EQ(symmetrize(std::vector<double>{1, 2, 7, 4, 0}), (std::vector<double>{0.5, 3, 7, 3, 0.5}));
}

TEST(Symmetrize, PalindromicAndIdempotent) {
  oracle::Gen gen(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = gen.real_vector(1 + gen.index(15));
    const auto s = symmetrize(n);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], s[s.size() - 1 - i]);
    EXPECT_EQ(symmetrize(s), s);
  }
}

TEST(Curve, ConstantAmplitudes) {
  const GapSpec gap{1001, 1882};
  const auto layout = segment_layout(882, 10, 220);
  std::vector<double> t;
  for (double c : layout.centers) t.push_back(1001 + c);
  const auto ones = build_curve(std::vector<double>(10, 1.0), t, gap);
  for (double q : ones.samples) EXPECT_NEAR(q, 1.0, 1e-12);

  const auto twos = build_curve(std::vector<double>(10, 2.0), t, gap);
  EXPECT_EQ(twos.samples.front(), 1.0);
  EXPECT_EQ(twos.samples.back(), 1.0);
  const double mid = twos.samples[441];
  EXPECT_GT(mid, 1.9);
  EXPECT_LT(mid, 2.1);
}

TEST(Curve, ShapeConditions) {
  oracle::Gen gen(53);
  const GapSpec gap{5001, 6764};
  const auto layout = segment_layout(1764, 10, 441);
  std::vector<double> t;
  for (double c : layout.centers) t.push_back(5001 + c);
  for (int trial = 0; trial < 50; ++trial) {
    // Unimodal amplitudes >= 1: increasing to the middle, then mirrored.
    std::vector<double> n(10);
    double level = 1.0;
    for (std::size_t i = 0; i < 5; ++i) n[i] = level += gen.uniform(0.0, 0.2);
    const auto sym = symmetrize(std::vector<double>{n[0], n[1], n[2], n[3], n[4], n[4], n[3], n[2], n[1], n[0]});
    const auto c = build_curve(sym, t, gap);
    const auto& q = c.samples;
    ASSERT_EQ(q.size(), 1764u);
    EXPECT_EQ(q.front(), 1.0);
    EXPECT_EQ(q.back(), 1.0);
    for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i], q[q.size() - 1 - i], 1e-9);
    // Zero slope at the ends, checked on the spline itself.
    std::vector<double> knots{5001};
    std::vector<double> vals{1.0};
    for (std::size_t i = 0; i < 10; ++i) knots.push_back(t[i]), vals.push_back(sym[i]);
    knots.push_back(6764);
    vals.push_back(1.0);
    const ClampedCubicSpline s(knots, vals);
    const double eps = 1e-5;
    EXPECT_LT(std::abs((s(5001 + eps) - s(5001 - eps)) / (2 * eps)), 1e-8);
    EXPECT_LT(std::abs((s(6764 + eps) - s(6764 - eps)) / (2 * eps)), 1e-8);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(s(t[i]), sym[i], 1e-12);
    EXPECT_EQ(c.unimodal, is_unimodal(q));
  }
}

TEST(Curve, NonMonotoneKnots) {
  const GapSpec gap{1, 100};
  try {
    (void)build_curve(std::vector<double>{1, 1}, std::vector<double>{50, 40}, gap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_monotone_knots);
  }
}

TEST(Unimodal, Detection) {
  EXPECT_TRUE(is_unimodal(std::vector<double>{1, 2, 3, 2, 1}));
  EXPECT_TRUE(is_unimodal(std::vector<double>{1, 2, 2, 1}));
  EXPECT_FALSE(is_unimodal(std::vector<double>{1, 3, 2, 3, 1}));
}

namespace {

// Inner method that fills a gap with a fixed fraction of the true signal.
GapInpainter scaled_truth(const Signal& truth, double gain, std::size_t* calls = nullptr) {
  return [&truth, gain, calls](std::span<const double> degraded, std::span<const GapSpec> unreliable,
                               const GapSpec& target) {
    (void)degraded;
    bool listed = false;
    for (const auto& g : unreliable) listed |= g == target;
    EXPECT_TRUE(listed);
    if (calls) ++*calls;
    GapFill f;
    for (std::int64_t i = target.start; i <= target.end; ++i) f.samples.push_back(gain * truth[i - 1]);
    f.iterations = 1;
    return f;
  };
}

}  // namespace

TEST(TdcInpaint, IdentityCases) {
  Signal truth(40000);
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = std::sin(0.01 * i) + 0.3 * std::sin(0.07 * i);
  const GapSpec gap = GapSpec::from_length(20001, 882);
  Signal observed = truth;
  for (std::int64_t i = gap.start; i <= gap.end; ++i) observed[i - 1] = 0.0;

  TdcConfig c;
  c.num_artificial_gaps = 0;
  std::size_t calls = 0;
  auto r = tdc_inpaint(observed, gap, {}, scaled_truth(truth, 0.7, &calls), c);
  EXPECT_EQ(calls, 1u);
  for (std::int64_t i = gap.start; i <= gap.end; ++i) EXPECT_EQ(r.restored[i - 1], 0.7 * truth[i - 1]);

  // A perfect inner method learns a flat curve.
  c.num_artificial_gaps = 4;
  calls = 0;
  r = tdc_inpaint(observed, gap, {}, scaled_truth(truth, 1.0, &calls), c);
  EXPECT_EQ(calls, 5u);
  for (double q : r.curve.samples) EXPECT_NEAR(q, 1.0, 1e-12);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!gap.contains(static_cast<std::int64_t>(i) + 1)) EXPECT_EQ(r.restored[i], observed[i]);
  }
}

TEST(TdcInpaint, CompensatesUniformEnergyLoss) {
  Signal truth(40000);
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = std::sin(0.01 * i) + 0.3 * std::sin(0.07 * i);
  const GapSpec gap = GapSpec::from_length(20001, 1764);
  Signal observed = truth;
  for (std::int64_t i = gap.start; i <= gap.end; ++i) observed[i - 1] = 0.0;
  TdcConfig c;
  const auto r = tdc_inpaint(observed, gap, {}, scaled_truth(truth, 0.5, nullptr), c);
  // Every multiplier is 4 (energy), so amplitudes are 2.
  for (double m : r.curve.multipliers) EXPECT_NEAR(m, 4.0, 1e-9);
  double before = 0.0, after = 0.0;
  for (std::int64_t i = gap.start; i <= gap.end; ++i) {
    before += 0.25 * truth[i - 1] * truth[i - 1];
    after += r.restored[i - 1] * r.restored[i - 1];
  }
  EXPECT_GT(after, before);
  // Flat interior knots make the spline ring near the ends, so the flag is
  // compared with a direct scan rather than assumed.
  const auto& q = r.curve.samples;
  const std::size_t mid = (q.size() - 1) / 2;
  bool shaped = true;
  for (std::size_t i = 0; i < mid; ++i) shaped = shaped && q[i + 1] >= q[i] - 1e-12;
  for (std::size_t i = q.size() / 2; i + 1 < q.size(); ++i) shaped = shaped && q[i + 1] <= q[i] + 1e-12;
  EXPECT_EQ(r.curve.unimodal, shaped);
  EXPECT_GE(q[q.size() / 2], 1.9);
}
