#pragma once

#include <optional>
#include <string>

#include "urbanmot/tracker.hpp"

namespace urbanmot {

// Full runtime configuration: the tracker parameters plus the evaluation
// overlap gate.
struct AppConfig {
  TrackerConfig tracker;
  double iou_gate = 0.5;
};

// One optional per config key; set fields win over file values which win
// over defaults.
struct ConfigOverrides {
  std::optional<double> t_match;
  std::optional<int> n_timeout;
  std::optional<double> nms_iou;
  std::optional<std::string> label_blacklist;  // comma-separated names
  std::optional<double> weight_label;
  std::optional<double> weight_position;
  std::optional<double> weight_color;
  std::optional<double> process_pos_var;
  std::optional<double> process_vel_var;
  std::optional<double> measurement_var;
  std::optional<double> initial_vel_var;
  std::optional<double> iou_gate;
};

// Flat `key = value` file, '#' comments. Unknown keys are rejected.
// Recognized keys: t_match, n_timeout, nms_iou, label_blacklist,
// weight_label, weight_position, weight_color, process_pos_var,
// process_vel_var, measurement_var, initial_vel_var, iou_gate.
AppConfig parse_config_file(const std::string& path);

AppConfig apply_overrides(AppConfig config, const ConfigOverrides& overrides);

// Resolution order: built-in defaults, then the config file (explicit path
// or the URBANMOT_CONFIG environment variable), then flag overrides.
AppConfig resolve_config(const std::optional<std::string>& config_path,
                         const ConfigOverrides& overrides);

std::set<ClassLabel> parse_blacklist(const std::string& csv_names);

}  // namespace urbanmot
