#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "holo/search.hpp"
#include "holo/trace.hpp"

namespace holo {

// Invalid run configuration (bad flags, missing inputs, mismatched
// dimensions). The CLI maps this to exit code 1; anything else that
// escapes is a runtime failure mapped to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Algorithm algorithm = Algorithm::hps;
  std::string scheme = "phase:256";
  long long iterations = 10000;
  std::uint64_t seed = 0;
  // 0 selects max(1, iterations / 100).
  long long checkpoint_interval = 0;
  // Annealing parameters (sa only); t_coeff <= 0 selects initial error / 100.
  double t_coeff = 0.0;
  double t0 = 5.0;
  std::string amplitude_image;
  std::string phase_image;  // optional
  // 0 derives the field from the image dimensions and layout.
  int field_width = 0;
  int field_height = 0;
  std::string layout = "central-quadrant";
  std::string energy_norm = "parseval-matched";
  std::string out_dir;
  long long recompute_interval = 10000;
  // When false, elapsed_ns is recorded as 0 so traces are byte-reproducible.
  bool record_timing = true;
  // Column label in comparison outputs; defaults to the algorithm name.
  std::string label;
};

void validate(const RunConfig& config);

// Serialized trace row format (header is part of the format):
// iteration,mse,efficiency,ssim,elapsed_ns,accepted
// Numeric fields use shortest round-trip decimal, so parsing an emitted
// trace reproduces the in-memory records exactly.
std::string trace_to_csv(const ConvergenceTrace& trace);
ConvergenceTrace trace_from_csv(const std::string& text);
void write_trace_csv(const std::string& path, const ConvergenceTrace& trace);
ConvergenceTrace read_trace_csv(const std::string& path);

// One completed run plus everything the artifact writers and comparison
// report need.
struct RunReport {
  std::string label;
  RunConfig config;
  ConvergenceTrace trace;
  double final_mse = 0.0;
  double final_efficiency = 0.0;
  double final_ssim = 0.0;
  long long final_accepted = 0;
  long long elapsed_ns = 0;
  double amplitude_scale = 1.0;
  double reconstruction_peak = 0.0;
  AnnealSchedule schedule;
  long long effective_checkpoint = 1;
  int field_width = 0;
  int field_height = 0;
  Image reconstruction;    // raw ROI magnitude of the final replay
  Image hologram_phase;    // hologram phase scaled onto [0, 1]
};

// Executes a configured run without touching the filesystem (inputs are
// still read from disk).
RunReport execute_run(const RunConfig& config);

// Writes trace.csv, summary.json, hologram_phase.png (+ .json sidecar
// recording the device scheme) and reconstruction.png into out_dir.
void write_run_artifacts(const RunReport& report, const std::string& out_dir);

// execute_run + write_run_artifacts into config.out_dir.
RunReport cli_run(const RunConfig& config);

// Runs every config (in parallel, capped by HOLO_THREADS) into
// out_dir/<label>/, then writes comparison.csv merging the traces by
// iteration: mse per run, ratio against the first config, and a dominance
// column for runs sharing the first config's seed and scheme, plus
// compare_summary.json. All configs must share the target recipe,
// iteration count and checkpoint interval.
std::vector<RunReport> cli_compare(std::vector<RunConfig> configs, const std::string& out_dir);

}  // namespace holo
