#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "urbanmot/geometry.hpp"

namespace urbanmot {

// The eleven road-user categories emitted by the detector.
enum class ClassLabel {
  articulated_truck,
  bicycle,
  bus,
  car,
  motorcycle,
  motorized_vehicle,
  non_motorized_vehicle,
  pedestrian,
  pickup_truck,
  single_unit_truck,
  work_van,
};

inline constexpr std::size_t kClassLabelCount = 11;

const std::array<ClassLabel, kClassLabelCount>& all_class_labels();

std::string_view to_string(ClassLabel label);

// Returns nullopt for strings outside the vocabulary.
std::optional<ClassLabel> parse_class_label(std::string_view name);

// Joint RGB histogram, 8 bins per channel flattened red-major:
// bin = (r/32)*64 + (g/32)*8 + (b/32). An all-zero histogram means
// "no appearance information" and is treated as maximally dissimilar.
class ColorHistogram {
 public:
  static constexpr std::size_t kDefaultBins = 512;

  ColorHistogram() = default;
  explicit ColorHistogram(std::vector<double> bins) : bins_(std::move(bins)) {}

  static ColorHistogram empty(std::size_t bin_count = kDefaultBins) {
    return ColorHistogram(std::vector<double>(bin_count, 0.0));
  }

  std::size_t bin_count() const { return bins_.size(); }
  const std::vector<double>& bins() const { return bins_; }
  std::vector<double>& bins() { return bins_; }
  double operator[](std::size_t i) const { return bins_[i]; }

  bool is_empty() const;
  double sum() const;

  bool operator==(const ColorHistogram&) const = default;

 private:
  std::vector<double> bins_;
};

inline std::size_t rgb_bin_index(unsigned r, unsigned g, unsigned b) {
  return (r / 32) * 64 + (g / 32) * 8 + (b / 32);
}

struct Detection {
  int frame = 0;
  BoundingBox box;
  ClassLabel label = ClassLabel::car;
  double confidence = 0.0;
  ColorHistogram histogram;
};

struct GroundTruthEntry {
  int frame = 0;
  int object_id = 0;
  BoundingBox box;
};

// Per-frame detection lists, keyed by ascending frame index.
using DetectionMap = std::map<int, std::vector<Detection>>;
using GroundTruthMap = std::map<int, std::vector<GroundTruthEntry>>;

}  // namespace urbanmot
