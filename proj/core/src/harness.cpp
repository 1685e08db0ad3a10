#include "holo/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string_view>
#include <system_error>
#include <thread>

#include "holo/image.hpp"
#include "holo/target.hpp"

namespace holo {

namespace {

constexpr std::string_view kTraceHeader = "iteration,mse,efficiency,ssim,elapsed_ns,accepted";

void append_number(std::string& out, long long value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

void append_number(std::string& out, double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

template <typename T>
T parse_field(std::string_view field, const char* what) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("malformed ") + what + " field in trace: " +
                             std::string(field));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

std::size_t thread_cap() {
  unsigned hardware = std::thread::hardware_concurrency();
  if (hardware == 0) hardware = 1;
  const char* env = std::getenv("HOLO_THREADS");
  if (env == nullptr || *env == '\0') return hardware;
  long value = 0;
  const std::string_view text(env);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value < 1) {
    throw ConfigError("HOLO_THREADS must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

nlohmann::json finite_or_null(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.iterations < 1) throw ConfigError("--iterations must be at least 1");
  if (config.checkpoint_interval < 0) {
    throw ConfigError("--checkpoint must be >= 0 (0 selects automatic)");
  }
  if (config.recompute_interval < 0) {
    throw ConfigError("--recompute-interval must be >= 0 (0 disables the periodic recompute)");
  }
  if (config.field_width < 0 || config.field_height < 0) {
    throw ConfigError("--field-size dimensions must be positive");
  }
  if ((config.field_width == 0) != (config.field_height == 0)) {
    throw ConfigError("--field-size needs both dimensions");
  }
  try {
    const ModulationScheme scheme = ModulationScheme::parse(config.scheme);
    if (!scheme.is_phase()) {
      throw ConfigError("only phase modulation schemes are searchable (e.g. phase:256)");
    }
    parse_layout(config.layout);
    parse_energy_norm(config.energy_norm);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.algorithm == Algorithm::sa) {
    if (config.t_coeff < 0.0) {
      throw ConfigError("--t-coeff must be positive (0 selects initial error / 100)");
    }
    if (!(config.t0 > 0.0)) throw ConfigError("--t0 must be positive");
  }
  if (config.amplitude_image.empty()) throw ConfigError("--amplitude-image is required");
  if (!std::filesystem::exists(config.amplitude_image)) {
    throw ConfigError("amplitude image not found: " + config.amplitude_image);
  }
  if (!config.phase_image.empty() && !std::filesystem::exists(config.phase_image)) {
    throw ConfigError("phase image not found: " + config.phase_image);
  }
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out{kTraceHeader};
  out.push_back('\n');
  for (const TraceRecord& record : trace) {
    append_number(out, record.iteration);
    out.push_back(',');
    append_number(out, record.mse);
    out.push_back(',');
    append_number(out, record.efficiency);
    out.push_back(',');
    append_number(out, record.ssim);
    out.push_back(',');
    append_number(out, record.elapsed_ns);
    out.push_back(',');
    append_number(out, record.accepted);
    out.push_back('\n');
  }
  return out;
}

ConvergenceTrace trace_from_csv(const std::string& text) {
  ConvergenceTrace trace;
  std::size_t start = 0;
  bool saw_header = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kTraceHeader) throw std::runtime_error("unexpected trace header");
      saw_header = true;
      continue;
    }
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 6) throw std::runtime_error("trace row must have 6 fields");
    TraceRecord record;
    record.iteration = parse_field<long long>(fields[0], "iteration");
    record.mse = parse_field<double>(fields[1], "mse");
    record.efficiency = parse_field<double>(fields[2], "efficiency");
    record.ssim = parse_field<double>(fields[3], "ssim");
    record.elapsed_ns = parse_field<long long>(fields[4], "elapsed_ns");
    record.accepted = parse_field<long long>(fields[5], "accepted");
    trace.push_back(record);
  }
  if (!saw_header) throw std::runtime_error("empty trace file");
  return trace;
}

void write_trace_csv(const std::string& path, const ConvergenceTrace& trace) {
  write_text_file(path, trace_to_csv(trace));
}

ConvergenceTrace read_trace_csv(const std::string& path) {
  return trace_from_csv(read_text_file(path));
}

RunReport execute_run(const RunConfig& config) {
  validate(config);

  Target target;
  const ModulationScheme scheme = ModulationScheme::parse(config.scheme);
  try {
    TargetSpec spec;
    spec.amplitude = load_image(config.amplitude_image);
    if (!config.phase_image.empty()) spec.phase = load_image(config.phase_image);
    spec.field_width = config.field_width;
    spec.field_height = config.field_height;
    spec.layout = parse_layout(config.layout);
    spec.energy_norm = parse_energy_norm(config.energy_norm);
    target = build_target(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  RunParams params;
  params.algorithm = config.algorithm;
  params.iterations = config.iterations;
  params.seed = config.seed;
  params.checkpoint_interval = config.checkpoint_interval;
  params.schedule.t_coeff = config.t_coeff;
  params.schedule.t0 = config.t0;
  params.options.recompute_interval = config.recompute_interval;
  params.record_timing = config.record_timing;

  RunResult result = run(target, scheme, params);

  RunReport report;
  report.label = config.label.empty() ? to_string(config.algorithm) : config.label;
  report.config = config;
  report.trace = std::move(result.trace);
  const TraceRecord& last = report.trace.back();
  report.final_mse = last.mse;
  report.final_efficiency = last.efficiency;
  report.final_ssim = last.ssim;
  report.final_accepted = last.accepted;
  report.elapsed_ns = last.elapsed_ns;
  report.amplitude_scale = target.amplitude_scale;
  report.schedule = result.schedule;
  report.effective_checkpoint =
      config.checkpoint_interval > 0 ? config.checkpoint_interval
                                     : std::max<long long>(1, config.iterations / 100);
  report.field_width = target.width();
  report.field_height = target.height();

  report.reconstruction = roi_magnitude(result.state.replay(), target);
  for (double v : report.reconstruction.pixels) {
    report.reconstruction_peak = std::max(report.reconstruction_peak, v);
  }

  const ComplexField& hologram = result.state.hologram();
  Image phase(hologram.width(), hologram.height());
  for (int y = 0; y < hologram.height(); ++y) {
    for (int x = 0; x < hologram.width(); ++x) {
      const Complex h = hologram.at(x, y);
      double theta = std::atan2(h.imag(), h.real());
      if (theta < 0.0) theta += 2.0 * std::numbers::pi;
      phase.at(x, y) = theta / (2.0 * std::numbers::pi);
    }
  }
  report.hologram_phase = std::move(phase);
  return report;
}

void write_run_artifacts(const RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());
  }

  write_trace_csv(out_dir + "/trace.csv", report.trace);

  Image reconstruction = report.reconstruction;
  if (report.reconstruction_peak > 0.0) {
    for (double& v : reconstruction.pixels) v /= report.reconstruction_peak;
  }
  save_gray16(out_dir + "/reconstruction.png", reconstruction);
  save_gray16(out_dir + "/hologram_phase.png", report.hologram_phase);

  nlohmann::json sidecar{
      {"scheme", report.config.scheme},
      {"width", report.hologram_phase.width},
      {"height", report.hologram_phase.height},
      {"phase_encoding", "theta = value / 65535 * 2 * pi"},
  };
  write_text_file(out_dir + "/hologram_phase.json", sidecar.dump(2) + "\n");

  nlohmann::json summary{
      {"algorithm", to_string(report.config.algorithm)},
      {"scheme", report.config.scheme},
      {"iterations", report.config.iterations},
      {"seed", report.config.seed},
      {"checkpoint_interval", report.effective_checkpoint},
      {"field", {{"width", report.field_width}, {"height", report.field_height}}},
      {"layout", report.config.layout},
      {"energy_norm", report.config.energy_norm},
      {"initial_mse", report.trace.front().mse},
      {"final",
       {{"mse", report.final_mse},
        {"efficiency", report.final_efficiency},
        {"ssim", finite_or_null(report.final_ssim)},
        {"accepted", report.final_accepted},
        {"elapsed_ns", report.elapsed_ns}}},
      {"amplitude_scale", report.amplitude_scale},
      {"reconstruction_peak", report.reconstruction_peak},
  };
  if (report.config.algorithm == Algorithm::sa) {
    summary["anneal"] = {{"t_coeff", report.schedule.t_coeff}, {"t0", report.schedule.t0}};
  }
  if (report.elapsed_ns > 0) {
    summary["iterations_per_second"] =
        static_cast<double>(report.config.iterations) / (report.elapsed_ns * 1e-9);
  }
  write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");
}

RunReport cli_run(const RunConfig& config) {
  if (config.out_dir.empty()) throw ConfigError("--out is required");
  RunReport report = execute_run(config);
  write_run_artifacts(report, config.out_dir);
  return report;
}

std::vector<RunReport> cli_compare(std::vector<RunConfig> configs, const std::string& out_dir) {
  if (configs.size() < 2) throw ConfigError("compare needs at least two run configurations");
  if (out_dir.empty()) throw ConfigError("compare needs an output directory");

  const RunConfig& base = configs.front();
  for (const RunConfig& config : configs) {
    validate(config);
    if (config.amplitude_image != base.amplitude_image ||
        config.phase_image != base.phase_image || config.field_width != base.field_width ||
        config.field_height != base.field_height || config.layout != base.layout ||
        config.energy_norm != base.energy_norm) {
      throw ConfigError("compared runs must share the same target");
    }
    if (config.iterations != base.iterations ||
        config.checkpoint_interval != base.checkpoint_interval) {
      throw ConfigError("compared runs must share iterations and checkpoint interval");
    }
  }

  std::vector<std::string> labels(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string label =
        configs[i].label.empty() ? to_string(configs[i].algorithm) : configs[i].label;
    int collisions = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[j] == label || labels[j].starts_with(label + "_")) ++collisions;
    }
    if (collisions > 0) label += "_" + std::to_string(collisions + 1);
    labels[i] = label;
    configs[i].label = label;
    configs[i].out_dir = out_dir + "/" + label;
  }

  std::vector<RunReport> reports(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::min(configs.size(), thread_cap());
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        reports[i] = cli_run(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  const ConvergenceTrace& reference = reports.front().trace;
  for (const RunReport& report : reports) {
    if (report.trace.size() != reference.size()) {
      throw std::runtime_error("compared traces have mismatched checkpoint counts");
    }
  }
  std::vector<bool> paired(configs.size(), false);
  for (std::size_t k = 1; k < configs.size(); ++k) {
    paired[k] = configs[k].seed == base.seed && configs[k].scheme == base.scheme;
  }

  std::string csv = "iteration,mse_" + labels[0];
  for (std::size_t k = 1; k < configs.size(); ++k) {
    csv += ",mse_" + labels[k] + ",ratio_" + labels[k];
  }
  for (std::size_t k = 1; k < configs.size(); ++k) {
    if (paired[k]) csv += ",dominant_" + labels[k];
  }
  csv.push_back('\n');
  std::vector<bool> dominant_everywhere(configs.size(), true);
  for (std::size_t row = 0; row < reference.size(); ++row) {
    append_number(csv, reference[row].iteration);
    csv.push_back(',');
    append_number(csv, reference[row].mse);
    for (std::size_t k = 1; k < configs.size(); ++k) {
      const TraceRecord& record = reports[k].trace[row];
      if (record.iteration != reference[row].iteration) {
        throw std::runtime_error("compared traces have mismatched checkpoints");
      }
      csv.push_back(',');
      append_number(csv, record.mse);
      csv.push_back(',');
      const double ratio =
          reference[row].mse == 0.0 ? (record.mse == 0.0 ? 1.0 : record.mse / reference[row].mse)
                                    : record.mse / reference[row].mse;
      append_number(csv, ratio);
    }
    for (std::size_t k = 1; k < configs.size(); ++k) {
      if (!paired[k]) continue;
      const bool dominant = reports[k].trace[row].mse <= reference[row].mse;
      if (!dominant) dominant_everywhere[k] = false;
      csv += dominant ? ",true" : ",false";
    }
    csv.push_back('\n');
  }
  write_text_file(out_dir + "/comparison.csv", csv);

  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    runs.push_back({{"label", labels[i]},
                    {"algorithm", to_string(configs[i].algorithm)},
                    {"scheme", configs[i].scheme},
                    {"seed", configs[i].seed},
                    {"final_mse", reports[i].final_mse},
                    {"final_efficiency", reports[i].final_efficiency},
                    {"final_ssim", finite_or_null(reports[i].final_ssim)},
                    {"out_dir", labels[i]}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t k = 1; k < configs.size(); ++k) {
    nlohmann::json entry{{"label", labels[k]},
                         {"baseline", labels[0]},
                         {"final_ratio", reports[0].final_mse == 0.0 && reports[k].final_mse == 0.0
                                             ? 1.0
                                             : reports[k].final_mse / reports[0].final_mse},
                         {"shares_pixel_stream", static_cast<bool>(paired[k])}};
    if (paired[k]) entry["dominant_at_every_checkpoint"] = static_cast<bool>(dominant_everywhere[k]);
    pairs.push_back(entry);
  }
  nlohmann::json summary{{"iterations", base.iterations},
                         {"checkpoints", reference.size()},
                         {"runs", runs},
                         {"comparisons", pairs}};
  write_text_file(out_dir + "/compare_summary.json", summary.dump(2) + "\n");
  return reports;
}

}  // namespace holo
