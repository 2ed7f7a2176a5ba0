#include "urbanmot/types.hpp"

#include <cmath>

namespace urbanmot {

namespace {

struct LabelName {
  ClassLabel label;
  std::string_view name;
};

constexpr std::array<LabelName, kClassLabelCount> kLabelNames{{
    {ClassLabel::articulated_truck, "articulated_truck"},
    {ClassLabel::bicycle, "bicycle"},
    {ClassLabel::bus, "bus"},
    {ClassLabel::car, "car"},
    {ClassLabel::motorcycle, "motorcycle"},
    {ClassLabel::motorized_vehicle, "motorized_vehicle"},
    {ClassLabel::non_motorized_vehicle, "non_motorized_vehicle"},
    {ClassLabel::pedestrian, "pedestrian"},
    {ClassLabel::pickup_truck, "pickup_truck"},
    {ClassLabel::single_unit_truck, "single_unit_truck"},
    {ClassLabel::work_van, "work_van"},
}};

}  // namespace

const std::array<ClassLabel, kClassLabelCount>& all_class_labels() {
  static const std::array<ClassLabel, kClassLabelCount> labels = [] {
    std::array<ClassLabel, kClassLabelCount> out{};
    for (std::size_t i = 0; i < kClassLabelCount; ++i) out[i] = kLabelNames[i].label;
    return out;
  }();
  return labels;
}

std::string_view to_string(ClassLabel label) {
  for (const auto& entry : kLabelNames) {
    if (entry.label == label) return entry.name;
  }
  return "unknown";
}

std::optional<ClassLabel> parse_class_label(std::string_view name) {
  for (const auto& entry : kLabelNames) {
    if (entry.name == name) return entry.label;
  }
  return std::nullopt;
}

bool ColorHistogram::is_empty() const {
  for (double v : bins_) {
    if (v != 0.0) return false;
  }
  return true;
}

double ColorHistogram::sum() const {
  double s = 0.0;
  for (double v : bins_) s += v;
  return s;
}

}  // namespace urbanmot
