#include "urbanmot/ingest.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "urbanmot/ppm.hpp"

namespace urbanmot {
namespace {

namespace fs = std::filesystem;
using testutil::Rng;

class IngestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("urbanmot_ingest_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }

  void TearDown() override { fs::remove_all(dir_); }

  std::string write_file(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path);
    out << content;
    return path.string();
  }

  fs::path dir_;
  static int counter_;
};

int IngestTest::counter_ = 0;

TEST_F(IngestTest, ParsesSingleDetection) {
  const auto path = write_file("d.csv", "3,10,20,40,30,car,0.91\n");
  const auto map = parse_detections(path);
  ASSERT_EQ(map.size(), 1u);
  const auto& dets = map.at(3);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].frame, 3);
  EXPECT_EQ(dets[0].box, (BoundingBox{10, 20, 40, 30}));
  EXPECT_EQ(dets[0].label, ClassLabel::car);
  EXPECT_EQ(dets[0].confidence, 0.91);
  EXPECT_TRUE(dets[0].histogram.is_empty());
  EXPECT_EQ(dets[0].histogram.bin_count(), ColorHistogram::kDefaultBins);
}

TEST_F(IngestTest, EmptyFileGivesEmptyMap) {
  EXPECT_TRUE(parse_detections(write_file("e.csv", "")).empty());
}

TEST_F(IngestTest, GroupsByAscendingFrame) {
  const auto path = write_file("d.csv",
                               "5,0,0,10,10,car,0.5\n"
                               "2,0,0,10,10,bus,0.5\n");
  const auto map = parse_detections(path);
  ASSERT_EQ(map.size(), 2u);
  auto it = map.begin();
  EXPECT_EQ(it->first, 2);
  EXPECT_EQ((++it)->first, 5);
}

TEST_F(IngestTest, SkipsHeaderAndComments) {
  const auto path = write_file("d.csv",
                               "# a comment\n"
                               "frame,x,y,w,h,label,confidence\n"
                               "\n"
                               "0,1,2,3,4,pedestrian,1\n");
  const auto map = parse_detections(path);
  ASSERT_EQ(map.size(), 1u);
  EXPECT_EQ(map.at(0)[0].label, ClassLabel::pedestrian);
}

TEST_F(IngestTest, MalformedLineNamesLineNumber) {
  const auto path = write_file("d.csv",
                               "0,1,2,3,4,car,0.5\n"
                               "0,1,2,3\n");
  try {
    parse_detections(path);
    FAIL() << "expected parse error";
  } catch (const std::runtime_error& err) {
    EXPECT_NE(std::string(err.what()).find(":2:"), std::string::npos) << err.what();
  }
}

TEST_F(IngestTest, UnknownLabelRejected) {
  const auto path = write_file("d.csv", "0,1,2,3,4,tank,0.5\n");
  EXPECT_THROW(parse_detections(path), std::runtime_error);
}

TEST_F(IngestTest, ConfidenceOutOfRangeRejected) {
  EXPECT_THROW(parse_detections(write_file("hi.csv", "0,1,2,3,4,car,1.2\n")),
               std::runtime_error);
  EXPECT_THROW(parse_detections(write_file("lo.csv", "0,1,2,3,4,car,-0.1\n")),
               std::runtime_error);
}

TEST_F(IngestTest, NonPositiveBoxRejected) {
  EXPECT_THROW(parse_detections(write_file("w.csv", "0,1,2,0,4,car,0.5\n")),
               std::runtime_error);
}

TEST_F(IngestTest, MissingFileRejected) {
  EXPECT_THROW(parse_detections((dir_ / "nope.csv").string()), std::runtime_error);
}

TEST_F(IngestTest, ParsesInlineHistogram) {
  std::string line = "0,1,2,3,4,car,0.5";
  for (std::size_t i = 0; i < ColorHistogram::kDefaultBins; ++i) {
    line += i == 7 ? ",0.5" : (i == 448 ? ",0.5" : ",0");
  }
  const auto map = parse_detections(write_file("h.csv", line + "\n"));
  const auto& hist = map.at(0)[0].histogram;
  EXPECT_EQ(hist[7], 0.5);
  EXPECT_EQ(hist[448], 0.5);
  EXPECT_FALSE(hist.is_empty());
}

TEST_F(IngestTest, UnnormalizedHistogramRejected) {
  std::string line = "0,1,2,3,4,car,0.5";
  for (std::size_t i = 0; i < ColorHistogram::kDefaultBins; ++i) {
    line += i == 0 ? ",0.7" : ",0";
  }
  EXPECT_THROW(parse_detections(write_file("h.csv", line + "\n")), std::runtime_error);
}

TEST_F(IngestTest, DetectionRoundTrip) {
  Rng rng(1122);
  DetectionMap original;
  const auto labels = all_class_labels();
  for (int frame = 0; frame < 5; ++frame) {
    for (int i = 0; i < 3; ++i) {
      Detection det;
      det.frame = frame;
      det.box = testutil::random_box(rng, 100.0);
      det.label = labels[static_cast<std::size_t>(rng.uniform_int(0, 10))];
      det.confidence = rng.uniform(0.0, 1.0);
      det.histogram = (i == 0) ? ColorHistogram::empty()
                               : testutil::random_normalized_histogram(
                                     rng, ColorHistogram::kDefaultBins);
      original[frame].push_back(det);
    }
  }
  const auto path = write_file("rt.csv", write_detections(original));
  const auto reparsed = parse_detections(path);
  ASSERT_EQ(reparsed.size(), original.size());
  for (const auto& [frame, dets] : original) {
    const auto& back = reparsed.at(frame);
    ASSERT_EQ(back.size(), dets.size());
    for (std::size_t i = 0; i < dets.size(); ++i) {
      EXPECT_EQ(back[i].box, dets[i].box);
      EXPECT_EQ(back[i].label, dets[i].label);
      EXPECT_EQ(back[i].confidence, dets[i].confidence);
      EXPECT_EQ(back[i].histogram, dets[i].histogram);
    }
  }
}

TEST_F(IngestTest, GroundTruthBasics) {
  const auto one = parse_ground_truth(write_file("g1.csv", "0,1,5,5,10,10\n"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.at(0)[0].object_id, 1);

  EXPECT_THROW(parse_ground_truth(write_file("g2.csv",
                                             "0,1,5,5,10,10\n"
                                             "0,1,6,6,10,10\n")),
               std::runtime_error);

  std::string rows;
  for (int f = 0; f < 10; ++f) {
    rows += std::to_string(f) + ",7,0,0,4,4\n";
  }
  const auto ten = parse_ground_truth(write_file("g3.csv", rows));
  EXPECT_EQ(ten.size(), 10u);
  for (const auto& [frame, entries] : ten) EXPECT_EQ(entries.size(), 1u);
}

Detection det_with(BoundingBox box, double conf, ClassLabel label = ClassLabel::car) {
  Detection det;
  det.box = box;
  det.confidence = conf;
  det.label = label;
  return det;
}

TEST(FilterLabels, DropsBlacklisted) {
  const std::vector<Detection> dets = {det_with({0, 0, 1, 1}, 0.9, ClassLabel::car),
                                       det_with({0, 0, 1, 1}, 0.9, ClassLabel::non_motorized_vehicle),
                                       det_with({0, 0, 1, 1}, 0.9, ClassLabel::bus)};
  const auto kept = filter_labels(dets, {ClassLabel::non_motorized_vehicle});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].label, ClassLabel::car);
  EXPECT_EQ(kept[1].label, ClassLabel::bus);

  EXPECT_EQ(filter_labels(dets, {}).size(), 3u);
  EXPECT_TRUE(filter_labels(dets, {ClassLabel::car, ClassLabel::non_motorized_vehicle,
                                   ClassLabel::bus})
                  .empty());
}

TEST(Nms, SuppressesIdenticalBoxes) {
  const std::vector<Detection> dets = {det_with({0, 0, 10, 10}, 0.9),
                                       det_with({0, 0, 10, 10}, 0.8)};
  const auto kept = nms(dets, 0.5);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].confidence, 0.9);
}

TEST(Nms, KeepsDisjointBoxes) {
  const std::vector<Detection> dets = {det_with({0, 0, 10, 10}, 0.9),
                                       det_with({50, 50, 10, 10}, 0.1)};
  EXPECT_EQ(nms(dets, 0.0).size(), 2u);
  EXPECT_EQ(nms(dets, 0.99).size(), 2u);
}

TEST(Nms, ThresholdExample) {
  // IoU of the first two boxes is 1/3 (pixel-count oracle), above 0.3.
  const BoundingBox a{0, 0, 10, 10}, b{5, 0, 10, 10}, c{20, 0, 10, 10};
  EXPECT_EQ(testutil::pixel_set_jaccard(a, b), 1.0 / 3.0);
  const std::vector<Detection> dets = {det_with(a, 0.9), det_with(b, 0.8), det_with(c, 0.7)};
  const auto kept = nms(dets, 0.3);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].confidence, 0.9);
  EXPECT_EQ(kept[1].confidence, 0.7);
}

TEST(Nms, SubsetPairwiseAndIdempotent) {
  Rng rng(3344);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Detection> dets;
    const int count = rng.uniform_int(0, 12);
    for (int i = 0; i < count; ++i) {
      dets.push_back(det_with(testutil::random_box(rng, 25.0), rng.uniform(0.0, 1.0)));
    }
    const double threshold = rng.uniform(0.1, 0.9);
    const auto kept = nms(dets, threshold);

    EXPECT_LE(kept.size(), dets.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        EXPECT_LE(iou(kept[i].box, kept[j].box), threshold);
      }
      EXPECT_TRUE(std::any_of(dets.begin(), dets.end(), [&](const Detection& d) {
        return d.box == kept[i].box && d.confidence == kept[i].confidence;
      }));
    }

    const auto again = nms(kept, threshold);
    ASSERT_EQ(again.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      EXPECT_EQ(again[i].box, kept[i].box);
    }
  }
}

class HistogramAttachTest : public IngestTest {};

TEST_F(HistogramAttachTest, PureRedRegion) {
  PpmImage img = PpmImage::filled(16, 16, 255, 0, 0);
  write_ppm(img, (dir_ / frame_file_name(0)).string());
  DetectionMap map;
  map[0].push_back(det_with({2, 2, 8, 8}, 0.9));
  const auto out = attach_histograms(map, dir_.string());
  const auto& hist = out.at(0)[0].histogram;
  EXPECT_EQ(hist[rgb_bin_index(255, 0, 0)], 1.0);
  EXPECT_EQ(hist.sum(), 1.0);
}

TEST_F(HistogramAttachTest, BoxOutsideImageKeepsEmptyHistogram) {
  write_ppm(PpmImage::filled(8, 8, 10, 10, 10), (dir_ / frame_file_name(0)).string());
  DetectionMap map;
  map[0].push_back(det_with({100, 100, 5, 5}, 0.9));
  const auto out = attach_histograms(map, dir_.string());
  EXPECT_TRUE(out.at(0)[0].histogram.is_empty());
}

TEST_F(HistogramAttachTest, TwoPixelRedBlueSplit) {
  PpmImage img = PpmImage::filled(2, 1, 255, 0, 0);
  img.pixel(1, 0)[0] = 0;
  img.pixel(1, 0)[2] = 255;  // second pixel pure blue
  write_ppm(img, (dir_ / frame_file_name(4)).string());
  DetectionMap map;
  map[4].push_back(det_with({0, 0, 2, 1}, 0.9));
  const auto out = attach_histograms(map, dir_.string());
  const auto& hist = out.at(4)[0].histogram;
  EXPECT_EQ(hist[rgb_bin_index(255, 0, 0)], 0.5);  // bin (7,0,0) = 448
  EXPECT_EQ(hist[rgb_bin_index(0, 0, 255)], 0.5);  // bin (0,0,7) = 7
  EXPECT_EQ(rgb_bin_index(255, 0, 0), 448u);
  EXPECT_EQ(rgb_bin_index(0, 0, 255), 7u);
}

TEST_F(HistogramAttachTest, NormalizedForNonDegenerateBoxes) {
  Rng rng(8642);
  PpmImage img = PpmImage::filled(32, 32, 0, 0, 0);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      auto* p = img.pixel(x, y);
      p[0] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
      p[1] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
      p[2] = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    }
  }
  write_ppm(img, (dir_ / frame_file_name(1)).string());
  DetectionMap map;
  for (int i = 0; i < 10; ++i) {
    map[1].push_back(det_with(testutil::random_box(rng, 30.0), 0.5));
  }
  const auto out = attach_histograms(map, dir_.string());
  for (const auto& det : out.at(1)) {
    if (!det.histogram.is_empty()) {
      EXPECT_NEAR(det.histogram.sum(), 1.0, 1e-9);
    }
  }
}

TEST_F(HistogramAttachTest, MissingFrameNamesIt) {
  DetectionMap map;
  map[3].push_back(det_with({0, 0, 2, 2}, 0.9));
  try {
    attach_histograms(map, dir_.string());
    FAIL() << "expected missing-frame error";
  } catch (const std::runtime_error& err) {
    EXPECT_NE(std::string(err.what()).find("frame 3"), std::string::npos) << err.what();
  }
}

TEST_F(HistogramAttachTest, NonP6Rejected) {
  {
    std::ofstream out(dir_ / frame_file_name(0), std::ios::binary);
    out << "P5\n2 2\n255\n....";
  }
  DetectionMap map;
  map[0].push_back(det_with({0, 0, 2, 2}, 0.9));
  EXPECT_THROW(attach_histograms(map, dir_.string()), std::runtime_error);
}

TEST_F(HistogramAttachTest, PpmRoundTrip) {
  Rng rng(11);
  PpmImage img = PpmImage::filled(5, 3, 0, 0, 0);
  for (auto& byte : img.pixels) byte = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  const auto path = (dir_ / "img.ppm").string();
  write_ppm(img, path);
  const auto back = read_ppm(path);
  EXPECT_EQ(back.width, img.width);
  EXPECT_EQ(back.height, img.height);
  EXPECT_EQ(back.pixels, img.pixels);
}

}  // namespace
}  // namespace urbanmot
