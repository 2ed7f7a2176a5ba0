#include "urbanmot/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "urbanmot/csv.hpp"

namespace urbanmot {

namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

void apply_key(AppConfig& config, const std::string& key, const std::string& value) {
  auto& t = config.tracker;
  if (key == "t_match") {
    t.t_match = parse_double_field(value, key);
  } else if (key == "n_timeout") {
    t.n_timeout = static_cast<int>(parse_int_field(value, key));
  } else if (key == "nms_iou") {
    t.nms_iou = parse_double_field(value, key);
  } else if (key == "label_blacklist") {
    t.label_blacklist = parse_blacklist(value);
  } else if (key == "weight_label") {
    t.cost_weights.label = parse_double_field(value, key);
  } else if (key == "weight_position") {
    t.cost_weights.position = parse_double_field(value, key);
  } else if (key == "weight_color") {
    t.cost_weights.color = parse_double_field(value, key);
  } else if (key == "process_pos_var") {
    t.noise.process_pos_var = parse_double_field(value, key);
  } else if (key == "process_vel_var") {
    t.noise.process_vel_var = parse_double_field(value, key);
  } else if (key == "measurement_var") {
    t.noise.measurement_var = parse_double_field(value, key);
  } else if (key == "initial_vel_var") {
    t.noise.initial_vel_var = parse_double_field(value, key);
  } else if (key == "iou_gate") {
    config.iou_gate = parse_double_field(value, key);
  } else {
    throw std::runtime_error("unknown config key '" + key + "'");
  }
}

}  // namespace

std::set<ClassLabel> parse_blacklist(const std::string& csv_names) {
  std::set<ClassLabel> blacklist;
  if (trim_copy(csv_names).empty()) return blacklist;
  for (std::string_view field : split_csv_fields(csv_names)) {
    const auto label = parse_class_label(field);
    if (!label) {
      throw std::runtime_error("unknown label '" + std::string(field) + "' in blacklist");
    }
    blacklist.insert(*label);
  }
  return blacklist;
}

AppConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open config file");
  }
  AppConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim_copy(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    const std::string key = trim_copy(std::string_view(stripped).substr(0, eq));
    const std::string value = trim_copy(std::string_view(stripped).substr(eq + 1));
    try {
      apply_key(config, key, value);
    } catch (const std::runtime_error& err) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + err.what());
    }
  }
  return config;
}

AppConfig apply_overrides(AppConfig config, const ConfigOverrides& overrides) {
  auto& t = config.tracker;
  if (overrides.t_match) t.t_match = *overrides.t_match;
  if (overrides.n_timeout) t.n_timeout = *overrides.n_timeout;
  if (overrides.nms_iou) t.nms_iou = *overrides.nms_iou;
  if (overrides.label_blacklist) t.label_blacklist = parse_blacklist(*overrides.label_blacklist);
  if (overrides.weight_label) t.cost_weights.label = *overrides.weight_label;
  if (overrides.weight_position) t.cost_weights.position = *overrides.weight_position;
  if (overrides.weight_color) t.cost_weights.color = *overrides.weight_color;
  if (overrides.process_pos_var) t.noise.process_pos_var = *overrides.process_pos_var;
  if (overrides.process_vel_var) t.noise.process_vel_var = *overrides.process_vel_var;
  if (overrides.measurement_var) t.noise.measurement_var = *overrides.measurement_var;
  if (overrides.initial_vel_var) t.noise.initial_vel_var = *overrides.initial_vel_var;
  if (overrides.iou_gate) config.iou_gate = *overrides.iou_gate;
  return config;
}

AppConfig resolve_config(const std::optional<std::string>& config_path,
                         const ConfigOverrides& overrides) {
  AppConfig config;
  if (config_path) {
    config = parse_config_file(*config_path);
  } else if (const char* env = std::getenv("URBANMOT_CONFIG"); env != nullptr && *env != '\0') {
    config = parse_config_file(env);
  }
  return apply_overrides(std::move(config), overrides);
}

}  // namespace urbanmot
