#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "urbanmot/config.hpp"
#include "urbanmot/ingest.hpp"
#include "urbanmot/metrics.hpp"
#include "urbanmot/render.hpp"
#include "urbanmot/synth.hpp"
#include "urbanmot/tracker.hpp"

namespace {

namespace fs = std::filesystem;
using namespace urbanmot;

void add_config_flags(CLI::App* cmd, std::optional<std::string>& config_path,
                      ConfigOverrides& overrides) {
  cmd->add_option("--config", config_path, "Config file (key = value); URBANMOT_CONFIG sets a default");
  cmd->add_option("--t-match", overrides.t_match, "Assignment gate threshold");
  cmd->add_option("--n-timeout", overrides.n_timeout, "Consecutive misses before track removal");
  cmd->add_option("--nms-iou", overrides.nms_iou, "NMS overlap threshold");
  cmd->add_option("--blacklist", overrides.label_blacklist,
                  "Comma-separated labels to drop (empty string clears)");
  cmd->add_option("--weight-label", overrides.weight_label, "Label cost weight");
  cmd->add_option("--weight-position", overrides.weight_position, "Position cost weight");
  cmd->add_option("--weight-color", overrides.weight_color, "Color cost weight");
  cmd->add_option("--process-pos-var", overrides.process_pos_var, "Kalman process position variance");
  cmd->add_option("--process-vel-var", overrides.process_vel_var, "Kalman process velocity variance");
  cmd->add_option("--measurement-var", overrides.measurement_var, "Kalman measurement variance");
  cmd->add_option("--initial-vel-var", overrides.initial_vel_var, "Kalman initial velocity variance");
}

int cmd_track(const std::string& detections_path, const std::optional<std::string>& frames_dir,
              const std::optional<std::string>& config_path, const ConfigOverrides& overrides,
              const std::string& out_dir) {
  const AppConfig config = resolve_config(config_path, overrides);

  DetectionMap detections = parse_detections(detections_path);
  if (frames_dir) {
    detections = attach_histograms(detections, *frames_dir);
  }

  const RunOutput output = run_sequence(config.tracker, detections);

  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "tracks.csv");
    out << write_track_csv(output.records);
  }

  std::string summary = "frames processed: " + std::to_string(output.stats.frames_processed) +
                        "\ntracks created: " + std::to_string(output.stats.tracks_created) +
                        "\ntracks removed: " + std::to_string(output.stats.tracks_removed) + "\n";
  {
    std::ofstream out(fs::path(out_dir) / "summary.txt");
    out << summary;
  }
  std::cout << summary;
  return 0;
}

int cmd_evaluate(const std::string& gt_path, const std::string& hyp_path,
                 const std::optional<std::string>& hyp2_path,
                 const std::optional<std::string>& config_path, const ConfigOverrides& overrides,
                 const std::optional<std::string>& out_dir, const std::string& sequence_name) {
  const AppConfig config = resolve_config(config_path, overrides);
  const GroundTruthMap gt = parse_ground_truth(gt_path);

  const std::string out_directory =
      out_dir ? *out_dir : fs::path(hyp_path).parent_path().string();

  const EvalResult primary = evaluate(gt, parse_track_csv(hyp_path), config.iou_gate);

  if (hyp2_path) {
    const EvalResult secondary = evaluate(gt, parse_track_csv(*hyp2_path), config.iou_gate);
    const MetricsReport rep = report({{sequence_name, primary, secondary}});
    std::cout << rep.text_table;
    if (!out_directory.empty()) fs::create_directories(out_directory);
    std::ofstream out(fs::path(out_directory) / "comparison.csv");
    out << rep.csv;
    return 0;
  }

  std::cout << "MOTA: " << primary.mota << "\nMOTP: " << primary.motp
            << "\nmatches: " << primary.counts.matches << "\nmisses: " << primary.counts.misses
            << "\nfalse_positives: " << primary.counts.false_positives
            << "\nmismatches: " << primary.counts.mismatches
            << "\ngt_count: " << primary.counts.gt_count << "\n";
  if (!out_directory.empty()) fs::create_directories(out_directory);
  std::ofstream out(fs::path(out_directory) / "metrics.csv");
  out << write_metrics_csv(sequence_name, primary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"urbanmot: tracking-by-detection for urban traffic scenes"};
  app.require_subcommand(1);

  // track
  auto* track = app.add_subcommand("track", "Associate detections into trajectories");
  std::string track_detections, track_out;
  std::optional<std::string> track_frames, track_config;
  ConfigOverrides track_overrides;
  track->add_option("--detections", track_detections, "Detection CSV")->required();
  track->add_option("--frames", track_frames, "Directory of PPM frames for color histograms");
  track->add_option("--out", track_out, "Output directory")->required();
  add_config_flags(track, track_config, track_overrides);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "CLEAR MOT evaluation of a track file");
  std::string eval_gt, eval_hyp, eval_name = "sequence";
  std::optional<std::string> eval_hyp2, eval_out, eval_config;
  ConfigOverrides eval_overrides;
  eval->add_option("--gt", eval_gt, "Ground-truth CSV")->required();
  eval->add_option("--hyp", eval_hyp, "Track CSV to score")->required();
  eval->add_option("--hyp2", eval_hyp2, "Second track CSV for a with/without comparison");
  eval->add_option("--iou-gate", eval_overrides.iou_gate, "Correspondence overlap gate");
  eval->add_option("--out", eval_out, "Directory for the metrics CSV (default: next to --hyp)");
  eval->add_option("--name", eval_name, "Sequence name used in reports");
  eval->add_option("--config", eval_config, "Config file (for iou_gate)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scenario");
  std::string synth_scenario, synth_out;
  unsigned synth_seed = 0;
  int synth_gap = 2;
  bool synth_frames = false;
  synth->add_option("--scenario", synth_scenario,
                    "crossing_labels | occlusion_gap | fp_storm | parked_clutter")
      ->required();
  synth->add_option("--seed", synth_seed, "Deterministic generator seed");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--gap", synth_gap, "Occlusion gap length in frames (occlusion_gap)");
  synth->add_flag("--frames", synth_frames, "Also render PPM frames of the scene");

  // render
  auto* render = app.add_subcommand("render", "Overlay track boxes on PPM frames");
  std::string render_frames_dir, render_tracks_path, render_out;
  render->add_option("--frames", render_frames_dir, "Input frame directory")->required();
  render->add_option("--tracks", render_tracks_path, "Track CSV")->required();
  render->add_option("--out", render_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (track->parsed()) {
      return cmd_track(track_detections, track_frames, track_config, track_overrides, track_out);
    }
    if (eval->parsed()) {
      return cmd_evaluate(eval_gt, eval_hyp, eval_hyp2, eval_config, eval_overrides, eval_out,
                          eval_name);
    }
    if (synth->parsed()) {
      const auto scenario = parse_scenario(synth_scenario);
      if (!scenario) {
        std::cerr << "error: unknown scenario '" << synth_scenario << "'\n";
        return 1;
      }
      SynthOptions options;
      options.seed = synth_seed;
      options.gap_frames = synth_gap;
      write_scenario(*scenario, options, synth_out, synth_frames);
      std::cout << "wrote scenario " << synth_scenario << " (seed " << synth_seed << ") to "
                << synth_out << "\n";
      return 0;
    }
    if (render->parsed()) {
      const HypothesisMap tracks = parse_track_csv(render_tracks_path);
      const int frames = render_tracks(render_frames_dir, tracks, render_out);
      std::cout << "rendered " << frames << " frames to " << render_out << "\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
