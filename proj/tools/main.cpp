#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "holo/harness.hpp"

namespace {

void parse_field_size(const std::string& text, holo::RunConfig& config) {
  if (text.empty()) return;
  const std::size_t sep = text.find('x');
  try {
    if (sep == std::string::npos) {
      config.field_width = config.field_height = std::stoi(text);
    } else {
      config.field_width = std::stoi(text.substr(0, sep));
      config.field_height = std::stoi(text.substr(sep + 1));
    }
  } catch (const std::exception&) {
    throw holo::ConfigError("--field-size must be N or WxH, e.g. 64 or 64x64");
  }
  if (config.field_width <= 0 || config.field_height <= 0) {
    throw holo::ConfigError("--field-size dimensions must be positive");
  }
}

// One value broadcasts to every run; otherwise the list length must match.
template <typename T>
T pick(const std::vector<T>& values, std::size_t index, const T& fallback) {
  if (values.empty()) return fallback;
  if (values.size() == 1) return values.front();
  return values[index];
}

void print_report(const holo::RunReport& report) {
  std::cout << report.label << ": mse=" << std::setprecision(6) << report.final_mse
            << " efficiency=" << report.final_efficiency << " ssim=" << report.final_ssim
            << " accepted=" << report.final_accepted << " -> " << report.config.out_dir
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Far-field hologram search: direct, annealed and predictive"};
  app.require_subcommand(1);

  holo::RunConfig base;
  std::string field_size;

  auto add_shared_options = [&](CLI::App* cmd) {
    cmd->add_option("--iterations", base.iterations, "Search iterations")
        ->capture_default_str();
    cmd->add_option("--checkpoint", base.checkpoint_interval,
                    "Iterations between trace records (0 = iterations/100)")
        ->capture_default_str();
    cmd->add_option("--t-coeff", base.t_coeff,
                    "SA temperature scale (0 = initial error / 100)")
        ->capture_default_str();
    cmd->add_option("--t0", base.t0, "SA temperature decay rate")->capture_default_str();
    cmd->add_option("--amplitude-image", base.amplitude_image,
                    "Grayscale PNG/PGM amplitude image")
        ->required();
    cmd->add_option("--phase-image", base.phase_image,
                    "Optional grayscale phase image, [0,1] mapped to [0,2pi)");
    cmd->add_option("--field-size", field_size,
                    "Field dimensions N or WxH (default derives from the image)");
    cmd->add_option("--layout", base.layout, "full-field or central-quadrant")
        ->capture_default_str();
    cmd->add_option("--energy-norm", base.energy_norm, "parseval-matched or unit-max")
        ->capture_default_str();
    cmd->add_option("--out", base.out_dir, "Output directory")->required();
    cmd->add_option("--recompute-interval", base.recompute_interval,
                    "Accepted changes between drift-bounding replay recomputes (0 disables)")
        ->capture_default_str();
    cmd->add_flag(
        "--no-timing", [&](std::int64_t) { base.record_timing = false; },
        "Record elapsed_ns as 0 so repeated runs emit byte-identical traces");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Execute one search run");
  std::string algorithm = "hps";
  run_cmd->add_option("--algorithm", algorithm, "ds, sa or hps")->capture_default_str();
  run_cmd->add_option("--scheme", base.scheme, "Modulation scheme, e.g. phase:256")
      ->capture_default_str();
  run_cmd->add_option("--seed", base.seed, "RNG seed")->capture_default_str();
  add_shared_options(run_cmd);

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run several configurations on one target and merge traces");
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> schemes;
  std::vector<std::string> labels;
  compare_cmd
      ->add_option("--algorithm", algorithms,
                   "Algorithm per run (one value broadcasts), e.g. --algorithm ds,hps")
      ->required()
      ->delimiter(',');
  compare_cmd->add_option("--seed", seeds, "Seed per run (one value broadcasts)")
      ->delimiter(',');
  compare_cmd->add_option("--scheme", schemes, "Scheme per run (one value broadcasts)")
      ->delimiter(',');
  compare_cmd->add_option("--label", labels, "Column label per run")->delimiter(',');
  add_shared_options(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    parse_field_size(field_size, base);
    if (run_cmd->parsed()) {
      holo::RunConfig config = base;
      config.algorithm = holo::parse_algorithm(algorithm);
      print_report(holo::cli_run(config));
      return 0;
    }

    std::size_t runs = algorithms.size();
    runs = std::max(runs, seeds.size());
    runs = std::max(runs, schemes.size());
    runs = std::max(runs, labels.size());
    for (std::size_t size : {algorithms.size(), seeds.size(), schemes.size(), labels.size()}) {
      if (size > 1 && size != runs) {
        throw holo::ConfigError("per-run option lists must have matching lengths");
      }
    }
    std::vector<holo::RunConfig> configs;
    for (std::size_t i = 0; i < runs; ++i) {
      holo::RunConfig config = base;
      config.algorithm = holo::parse_algorithm(pick(algorithms, i, std::string("hps")));
      config.seed = pick(seeds, i, base.seed);
      config.scheme = pick(schemes, i, base.scheme);
      config.label = pick(labels, i, std::string());
      config.out_dir.clear();
      configs.push_back(std::move(config));
    }
    const std::vector<holo::RunReport> reports = holo::cli_compare(configs, base.out_dir);
    for (const holo::RunReport& report : reports) print_report(report);
    std::cout << "comparison written to " << base.out_dir << "/comparison.csv\n";
    return 0;
  } catch (const holo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
