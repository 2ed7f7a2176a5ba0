#include "urbanmot/costmodel.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace urbanmot {
namespace {

using testutil::Rng;

TEST(LabelCost, SameLabelAveragesConfidence) {
  EXPECT_NEAR(label_cost(ClassLabel::car, 0.8, ClassLabel::car, 0.6), 0.3, 1e-12);
}

TEST(LabelCost, DifferentLabelsCostOne) {
  EXPECT_EQ(label_cost(ClassLabel::car, 0.9, ClassLabel::bus, 0.9), 1.0);
}

TEST(LabelCost, MaxConfidenceSameLabelIsFree) {
  EXPECT_EQ(label_cost(ClassLabel::bus, 1.0, ClassLabel::bus, 1.0), 0.0);
}

TEST(PositionCost, IdenticalBoxesCostZero) {
  const BoundingBox box{3.5, -2.0, 17.0, 9.25};
  EXPECT_EQ(position_cost(box, box), 0.0);
}

TEST(PositionCost, DisjointBoxesCostOne) {
  EXPECT_EQ(position_cost({0, 0, 10, 10}, {50, 50, 5, 5}), 1.0);
}

TEST(PositionCost, HalfOverlapExample) {
  // Pixel-count oracle: boxes (0,0,10,10) and (5,0,10,10) share 50 of 150
  // member pixels.
  const BoundingBox a{0, 0, 10, 10};
  const BoundingBox b{5, 0, 10, 10};
  EXPECT_EQ(testutil::pixel_set_jaccard(a, b), 50.0 / 150.0);
  EXPECT_NEAR(position_cost(a, b), 1.0 - 50.0 / 150.0, 1e-9);
}

TEST(PositionCost, MatchesPixelSetOracleOnIntegerBoxes) {
  Rng rng(20240811);
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox a = testutil::random_int_box(rng, 50);
    const BoundingBox b = testutil::random_int_box(rng, 50);
    const double expected = 1.0 - testutil::pixel_set_jaccard(a, b);
    EXPECT_EQ(position_cost(a, b), expected)
        << "boxes (" << a.x << "," << a.y << "," << a.w << "," << a.h << ") vs (" << b.x << ","
        << b.y << "," << b.w << "," << b.h << ")";
  }
}

TEST(ColorCost, IdenticalHistogramsCostZero) {
  Rng rng(99);
  const auto h = testutil::random_normalized_histogram(rng, 512);
  EXPECT_NEAR(color_cost(h, h), 0.0, 1e-7);
}

TEST(ColorCost, OrthogonalHistogramsCostOne) {
  const ColorHistogram a({1.0, 0.0});
  const ColorHistogram b({0.0, 1.0});
  EXPECT_EQ(color_cost(a, b), 1.0);
}

TEST(ColorCost, TwoBinExample) {
  // Independent evaluation for h_i=[0.5,0.5], h_j=[1,0]: means 0.5 each,
  // N=2, overlap sum sqrt(0.5), so the distance is sqrt(1 - sqrt(0.5)).
  const double expected = std::sqrt(1.0 - std::sqrt(0.5));
  EXPECT_NEAR(expected, 0.5411961001461970, 1e-15);
  EXPECT_NEAR(color_cost(ColorHistogram({0.5, 0.5}), ColorHistogram({1.0, 0.0})), expected,
              1e-6);
}

TEST(ColorCost, EmptyHistogramIsMaximallyDissimilar) {
  const auto empty = ColorHistogram::empty(8);
  const ColorHistogram h({0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0});
  EXPECT_EQ(color_cost(empty, h), 1.0);
  EXPECT_EQ(color_cost(h, empty), 1.0);
  EXPECT_EQ(color_cost(empty, empty), 1.0);
}

TEST(ColorCost, BinCountMismatchThrows) {
  EXPECT_THROW(color_cost(ColorHistogram({1.0}), ColorHistogram({0.5, 0.5})),
               std::invalid_argument);
}

TEST(TotalCost, PerfectMatchIsZero) {
  Rng rng(7);
  const auto h = testutil::random_normalized_histogram(rng, 512);
  const BoundingBox box{10, 20, 30, 40};
  const TrackView view{ClassLabel::car, 1.0, box, h};
  Detection det;
  det.box = box;
  det.label = ClassLabel::car;
  det.confidence = 1.0;
  det.histogram = h;
  const auto breakdown = total_cost(view, det);
  EXPECT_EQ(breakdown.label_cost, 0.0);
  EXPECT_EQ(breakdown.position_cost, 0.0);
  EXPECT_NEAR(breakdown.total, 0.0, 1e-7);
}

TEST(TotalCost, WorstCaseIsThree) {
  const TrackView view{ClassLabel::car, 0.9, {0, 0, 5, 5}, ColorHistogram({1.0, 0.0})};
  Detection det;
  det.box = {100, 100, 5, 5};
  det.label = ClassLabel::bus;
  det.confidence = 0.9;
  det.histogram = ColorHistogram({0.0, 1.0});
  EXPECT_EQ(total_cost(view, det).total, 3.0);
}

TEST(TotalCost, CombinedExample) {
  // 0.3 (label) + 0.6667 (position) + 0.5412 (color).
  const TrackView view{ClassLabel::car, 0.8, {0, 0, 10, 10}, ColorHistogram({0.5, 0.5})};
  Detection det;
  det.box = {5, 0, 10, 10};
  det.label = ClassLabel::car;
  det.confidence = 0.6;
  det.histogram = ColorHistogram({1.0, 0.0});
  EXPECT_NEAR(total_cost(view, det).total, 1.5079, 1e-4);
}

TEST(CostProperties, SymmetryAndRange) {
  Rng rng(20240812);
  const auto labels = all_class_labels();
  for (int i = 0; i < 2000; ++i) {
    const auto la = labels[static_cast<std::size_t>(rng.uniform_int(0, 10))];
    const auto lb = labels[static_cast<std::size_t>(rng.uniform_int(0, 10))];
    const double ca = rng.uniform(0.0, 1.0), cb = rng.uniform(0.0, 1.0);
    const double lc = label_cost(la, ca, lb, cb);
    EXPECT_EQ(lc, label_cost(lb, cb, la, ca));
    EXPECT_GE(lc, -1e-12);
    EXPECT_LE(lc, 1.0 + 1e-12);

    const auto ba = testutil::random_box(rng, 60.0);
    const auto bb = testutil::random_box(rng, 60.0);
    const double pc = position_cost(ba, bb);
    EXPECT_EQ(pc, position_cost(bb, ba));
    EXPECT_GE(pc, -1e-12);
    EXPECT_LE(pc, 1.0 + 1e-12);

    const auto ha = testutil::random_normalized_histogram(rng, 16);
    const auto hb = testutil::random_normalized_histogram(rng, 16);
    const double cc = color_cost(ha, hb);
    EXPECT_EQ(cc, color_cost(hb, ha));
    EXPECT_GE(cc, -1e-12);
    EXPECT_LE(cc, 1.0 + 1e-12);
  }
}

TEST(CostProperties, TotalIsExactComponentSum) {
  Rng rng(31337);
  const auto labels = all_class_labels();
  for (int i = 0; i < 200; ++i) {
    TrackView view;
    view.label = labels[static_cast<std::size_t>(rng.uniform_int(0, 10))];
    view.confidence = rng.uniform(0.0, 1.0);
    view.box = testutil::random_box(rng, 40.0);
    view.histogram = testutil::random_normalized_histogram(rng, 8);
    Detection det;
    det.label = labels[static_cast<std::size_t>(rng.uniform_int(0, 10))];
    det.confidence = rng.uniform(0.0, 1.0);
    det.box = testutil::random_box(rng, 40.0);
    det.histogram = testutil::random_normalized_histogram(rng, 8);
    const auto breakdown = total_cost(view, det);
    EXPECT_EQ(breakdown.total,
              breakdown.label_cost + breakdown.position_cost + breakdown.color_cost);
  }
}

TEST(CostProperties, PositionCostOneIffNoIntersection) {
  Rng rng(555);
  for (int i = 0; i < 500; ++i) {
    const auto a = testutil::random_box(rng, 30.0);
    const auto b = testutil::random_box(rng, 30.0);
    const bool disjoint = intersection_area(a, b) == 0.0;
    EXPECT_EQ(position_cost(a, b) == 1.0, disjoint);
  }
}

TEST(CostProperties, WeightedTotalRespectsWeights) {
  const CostBreakdown breakdown{0.25, 0.5, 0.75, 1.5};
  EXPECT_EQ(weighted_total(breakdown, CostWeights{}), 1.5);
  EXPECT_EQ(weighted_total(breakdown, CostWeights{0.0, 1.0, 1.0}), 1.25);
  EXPECT_EQ(weighted_total(breakdown, CostWeights{2.0, 0.0, 0.0}), 0.5);
}

}  // namespace
}  // namespace urbanmot
