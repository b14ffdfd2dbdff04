#include <gtest/gtest.h>

#include <cmath>

#include "gapfill/atom_weights.hpp"
#include "oracles.hpp"

using namespace gapfill;

namespace {

GaborParams small_params() {
  GaborParams p;
  p.window_length = 24;
  p.hop = 6;
  p.channels = 24;
  p.signal_length = 96;
  return p;
}

// Ratio of each scheme computed on the materialised atom.
double naive_weight(const TightGaborFrame& f, const ReliableMask& mask, std::size_t k, std::size_t m,
                    WeightScheme s) {
  const auto d = oracle::atom(f, k, m);
  double supp_all = 0, supp_rel = 0, l1_all = 0, l1_rel = 0, l2_all = 0, l2_rel = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    const double v = std::abs(d[t]);
    if (v == 0.0) continue;
    supp_all += 1;
    l1_all += v;
    l2_all += v * v;
    if (mask.reliable(t)) {
      supp_rel += 1;
      l1_rel += v;
      l2_rel += v * v;
    }
  }
  switch (s) {
    case WeightScheme::supp: return supp_rel / supp_all;
    case WeightScheme::abs: return l1_rel / l1_all;
    case WeightScheme::norm: return std::sqrt(l2_rel) / std::sqrt(l2_all);
    case WeightScheme::energy: return l2_rel / l2_all;
    default: return 1.0;
  }
}

double variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size());
}

}  // namespace

TEST(WeightScheme, ParseRoundTrip) {
  for (auto s : {WeightScheme::none, WeightScheme::supp, WeightScheme::abs, WeightScheme::norm, WeightScheme::energy,
                 WeightScheme::iterative}) {
    EXPECT_EQ(parse_weight_scheme(to_string(s)), s);
  }
  try {
    (void)parse_weight_scheme("log");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_scheme);
  }
}

TEST(AtomWeights, FastPathMatchesNaiveAtoms) {
  const TightGaborFrame f(small_params());
  const std::vector<GapSpec> gaps{{30, 41}};
  const ReliableMask mask(f.signal_length(), gaps);
  for (auto s : {WeightScheme::supp, WeightScheme::abs, WeightScheme::norm, WeightScheme::energy}) {
    const WeightVector w = compute_weights(f, mask, s);
    ASSERT_EQ(w.size(), f.coefficient_count());
    for (std::size_t k = 0; k < f.frames(); ++k) {
      for (std::size_t m = 0; m < f.channels(); m += 5) {
        EXPECT_NEAR(w[k * f.channels() + m], naive_weight(f, mask, k, m, s), 1e-12)
            << to_string(s) << " k=" << k << " m=" << m;
      }
    }
  }
}

TEST(AtomWeights, DisjointAtomsKeepWeightOne) {
  const TightGaborFrame f(small_params());
  const std::vector<GapSpec> gaps{{30, 41}};
  const ReliableMask mask(f.signal_length(), gaps);
  for (auto s : {WeightScheme::none, WeightScheme::supp, WeightScheme::abs, WeightScheme::norm,
                 WeightScheme::energy}) {
    const auto per_frame = frame_weights(f, mask, s);
    for (std::size_t k = 0; k < f.frames(); ++k) {
      bool touches = false;
      const auto d = oracle::atom(f, k, 0);
      for (std::int64_t t = gaps[0].start - 1; t < gaps[0].end; ++t) touches |= std::abs(d[t]) > 0.0;
      if (!touches) EXPECT_EQ(per_frame[k], 1.0);
      EXPECT_GT(per_frame[k], kWeightFloor * 0.999);
      EXPECT_LE(per_frame[k], 1.0);
    }
  }
}

TEST(AtomWeights, RectangularHalfCovered) {
  GaborParams p;
  p.window_length = p.hop = p.channels = 8;
  p.window = WindowKind::rectangular;
  p.signal_length = 32;
  const TightGaborFrame f(p);
  // Frame 1 covers samples 5..12 (1-based); half of it is missing.
  const std::vector<GapSpec> gaps{{9, 12}};
  const ReliableMask mask(32, gaps);
  EXPECT_DOUBLE_EQ(frame_weights(f, mask, WeightScheme::supp)[1], 0.5);
  EXPECT_DOUBLE_EQ(frame_weights(f, mask, WeightScheme::abs)[1], 0.5);
  EXPECT_NEAR(frame_weights(f, mask, WeightScheme::norm)[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(frame_weights(f, mask, WeightScheme::energy)[1], 0.5, 1e-15);
}

TEST(AtomWeights, FloorForFullyCoveredWindows) {
  GaborParams p;
  p.window_length = p.hop = p.channels = 8;
  p.window = WindowKind::rectangular;
  p.signal_length = 32;
  const TightGaborFrame f(p);
  const std::vector<GapSpec> gaps{{5, 12}};
  const ReliableMask mask(32, gaps);
  for (auto s : {WeightScheme::supp, WeightScheme::abs, WeightScheme::norm, WeightScheme::energy}) {
    EXPECT_EQ(frame_weights(f, mask, s)[1], kWeightFloor);
  }
}

TEST(AtomWeights, EnergyIsNormSquaredAndVarianceRelations) {
  GaborParams p;
  p.signal_length = 700 * 40;
  const TightGaborFrame f(p);
  oracle::Gen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = static_cast<std::int64_t>(100 + gen.index(2400));  // shorter than w
    const auto s = static_cast<std::int64_t>(3000 + gen.index(20000));
    const std::vector<GapSpec> gaps{GapSpec::from_length(s, h)};
    const ReliableMask mask(p.signal_length, gaps);
    const auto supp = compute_weights(f, mask, WeightScheme::supp).values;
    const auto abs = compute_weights(f, mask, WeightScheme::abs).values;
    const auto norm = compute_weights(f, mask, WeightScheme::norm).values;
    const auto energy = compute_weights(f, mask, WeightScheme::energy).values;
    for (std::size_t n = 0; n < norm.size(); ++n) EXPECT_EQ(energy[n], norm[n] * norm[n]);
    EXPECT_LE(variance(supp), variance(abs));
    EXPECT_LE(variance(norm), variance(energy));
    // A Hann window's l2 mass is never twice as concentrated as its l1 mass,
    // so the square root leaves norm weights flatter than abs weights.
    EXPECT_LT(variance(norm), variance(abs));
  }
}

TEST(AtomWeights, SymmetricAboutGapCentreAfterOffset) {
  GaborParams p;
  p.signal_length = 700 * 24;
  const TightGaborFrame f(p);
  for (auto variant : {OffsetVariant::full, OffsetVariant::half}) {
    // Centre the gap of odd length on a window centre (full) or midpoint (half).
    const std::int64_t h = 1001;
    const std::int64_t centre = 1 + 12 * 700 + (variant == OffsetVariant::half ? 350 : 0);
    const std::vector<GapSpec> gaps{{centre - h / 2, centre + h / 2}};
    const ReliableMask mask(p.signal_length, gaps);
    const auto w = frame_weights(f, mask, WeightScheme::energy);
    const std::size_t k0 = 12;
    for (std::size_t d = 1; d < 6; ++d) {
      if (variant == OffsetVariant::full) {
        EXPECT_NEAR(w[k0 + d], w[k0 - d], 1e-12);
      } else {
        EXPECT_NEAR(w[k0 + d], w[k0 + 1 - d], 1e-12);
      }
    }
  }
}

TEST(AtomWeights, IterativeRejected) {
  const TightGaborFrame f(small_params());
  const ReliableMask mask = ReliableMask::all_reliable(f.signal_length());
  try {
    (void)compute_weights(f, mask, WeightScheme::iterative);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_scheme);
  }
}
