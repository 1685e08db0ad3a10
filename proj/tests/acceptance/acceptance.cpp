// Acceptance suite: one self-contained check per shipping criterion, each
// printed as a single PASS/FAIL line. Exits nonzero when any criterion
// fails. argv[1] is the asset directory with the sample images; argv[2]
// is the command line binary (used by the determinism criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holo/dft.hpp"
#include "holo/image.hpp"
#include "holo/metrics.hpp"
#include "holo/modulation.hpp"
#include "holo/rng.hpp"
#include "holo/search.hpp"
#include "holo/target.hpp"

using holo::Algorithm;
using holo::AnnealSchedule;
using holo::Complex;
using holo::ComplexField;
using holo::ModulationScheme;
using holo::PhaseSolve;
using holo::RunParams;
using holo::RunResult;
using holo::SearchState;
using holo::StepOutcome;
using holo::Target;
using holo::TargetSpec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pinned tolerances and budgets.
constexpr int kPredictiveOracleSteps = 250;       // >= 200 required
constexpr double kPredictiveOracleBudget = 10.0;  // seconds
constexpr int kSweepPoints = 4096;
constexpr double kSweepCostSlack = 1e-12;
constexpr double kSweepAngleSlack = 1e-9;
constexpr double kSweepBudget = 30.0;  // seconds
constexpr long long kDriftUpdates = 10000;
constexpr double kDriftBound = 1e-7;
constexpr long long kDominanceIterations = 20000;
constexpr long long kConvergenceIterations = 50000;
constexpr double kMedianRatioBound = 0.5;
constexpr double kConvergenceBudget = 300.0;  // seconds
constexpr double kLowLevelRatioBound = 0.9;
constexpr int kBinaryOracleSteps = 250;
constexpr double kParsevalRelBound = 1e-10;
constexpr double kRoundTripBound = 1e-10;
constexpr int kBoltzmannTrials = 100000;
constexpr double kEfficiencyFloor = 0.95;

std::string g_assets;
std::string g_cli;

ComplexField random_field(int nx, int ny, std::uint64_t seed) {
  ComplexField field(nx, ny);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      field.at(x, y) = Complex{dist(gen), dist(gen)};
    }
  }
  return field;
}

Target gradient_target() {
  TargetSpec spec;
  spec.amplitude = holo::load_image(g_assets + "/gradient32.pgm");
  return holo::build_target(spec);
}

// The matched amplitude/phase pair forms a target that is nearly attainable
// by a phase-only hologram, so the attainable floor sits far below the
// mid-run error of the direct random walk.
Target matched_target() {
  TargetSpec spec;
  spec.amplitude = holo::load_image(g_assets + "/matched32_amplitude.pgm");
  spec.phase = holo::load_image(g_assets + "/matched32_phase.pgm");
  return holo::build_target(spec);
}

RunResult run_search(const Target& target, const std::string& scheme, Algorithm algorithm,
                     std::uint64_t seed, long long iterations, long long checkpoint) {
  RunParams params;
  params.algorithm = algorithm;
  params.iterations = iterations;
  params.seed = seed;
  params.checkpoint_interval = checkpoint;
  params.record_timing = false;
  return holo::run(target, ModulationScheme::parse(scheme), params);
}

int table_level(const ModulationScheme& scheme, Complex value) {
  for (int k = 0; k < scheme.levels(); ++k) {
    if (scheme.state(k) == value) return k;
  }
  return -1;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Every predictive step on a discrete device must land on the same level an
// exhaustive fresh-transform search over all levels picks, ties to the
// lower level in both routes.
bool predictive_matches_exhaustive(int levels, int steps, std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const ModulationScheme scheme = ModulationScheme::multi_phase(levels);
  int checked = 0;
  for (std::uint64_t seed = 101; checked < steps; ++seed) {
    const ComplexField target = random_field(16, 16, seed);
    SearchState state(target, scheme, seed);
    for (int n = 0; n < 50 && checked < steps; ++n, ++checked) {
      const ComplexField before = state.hologram();
      const StepOutcome outcome = state.hps_step();

      int best_level = 0;
      double best_error = std::numeric_limits<double>::infinity();
      for (int k = 0; k < levels; ++k) {
        ComplexField trial = before;
        trial.at(outcome.x, outcome.y) = scheme.state(k);
        const double e = holo::mse(state.target(), holo::forward_dft(trial));
        if (e < best_error) {
          best_error = e;
          best_level = k;
        }
      }
      const int engine_level = table_level(scheme, state.hologram().at(outcome.x, outcome.y));
      if (engine_level != best_level) {
        std::ostringstream os;
        os << "step " << checked << " chose level " << engine_level << ", oracle picked "
           << best_level;
        detail = os.str();
        return false;
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << checked << " steps agreed in " << elapsed << "s";
  detail = os.str();
  if (elapsed >= kPredictiveOracleBudget) {
    detail += " (over budget)";
    return false;
  }
  return true;
}

bool criterion_predictive_oracle(std::string& detail) {
  return predictive_matches_exhaustive(8, kPredictiveOracleSteps, detail);
}

bool criterion_continuous_solve(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const double step = kTwoPi / kSweepPoints;
  int solves = 0;
  for (std::uint64_t seed : {7u, 8u}) {
    const ComplexField target = random_field(8, 8, seed);
    SearchState state(target, ModulationScheme::continuous_phase(), seed);
    for (int i = 0; i < 10; ++i, ++solves) {
      const int x = (3 * i + 1) % 8;
      const int y = (5 * i + 2) % 8;
      const PhaseSolve solve = state.hps_solve_phase(x, y);

      auto fresh_error = [&](double theta) {
        ComplexField trial = state.hologram();
        trial.at(x, y) = Complex{std::cos(theta), std::sin(theta)};
        return holo::mse(state.target(), holo::forward_dft(trial));
      };

      double best_error = std::numeric_limits<double>::infinity();
      double best_theta = 0.0;
      for (int j = 0; j < kSweepPoints; ++j) {
        const double e = fresh_error(j * step);
        if (e < best_error) {
          best_error = e;
          best_theta = j * step;
        }
      }
      const double solved_error = fresh_error(solve.theta);
      if (solved_error > best_error + kSweepCostSlack) {
        std::ostringstream os;
        os << "solve " << solves << ": error " << solved_error << " above sweep best "
           << best_error;
        detail = os.str();
        return false;
      }
      const double angle_gap = std::abs(std::remainder(solve.theta - best_theta, kTwoPi));
      if (angle_gap > step + kSweepAngleSlack) {
        std::ostringstream os;
        os << "solve " << solves << ": angle gap " << angle_gap << " above one sweep step";
        detail = os.str();
        return false;
      }
      const double curvature = std::sin(solve.theta) * solve.accumulator.sum_sin +
                               std::cos(solve.theta) * solve.accumulator.sum_cos;
      if (!(curvature >= 0.0)) {
        std::ostringstream os;
        os << "solve " << solves << ": second-order condition " << curvature << " < 0";
        detail = os.str();
        return false;
      }
      state.hps_step();
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << solves << " solves beat a " << kSweepPoints << "-point sweep in " << elapsed << "s";
  detail = os.str();
  if (elapsed >= kSweepBudget) {
    detail += " (over budget)";
    return false;
  }
  return true;
}

bool criterion_incremental_drift(std::string& detail) {
  const int n = 64;
  const ModulationScheme scheme = ModulationScheme::multi_phase(256);
  ComplexField hologram(n, n);
  std::mt19937_64 gen(33);
  std::uniform_int_distribution<int> coord(0, n - 1);
  std::uniform_int_distribution<int> level(0, scheme.levels() - 1);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) hologram.at(x, y) = scheme.state(level(gen));
  }

  ComplexField replay = holo::forward_dft(hologram);
  const holo::TwiddleTable twiddles(n, n);
  for (long long i = 0; i < kDriftUpdates; ++i) {
    const int x = coord(gen);
    const int y = coord(gen);
    const Complex next = scheme.state(level(gen));
    holo::incremental_update(replay, x, y, next - hologram.at(x, y), twiddles);
    hologram.at(x, y) = next;
  }

  const ComplexField fresh = holo::forward_dft(hologram);
  double worst = 0.0;
  for (std::size_t i = 0; i < replay.size(); ++i) {
    worst = std::max(worst, std::abs(replay.data()[i] - fresh.data()[i]));
  }
  std::ostringstream os;
  os << "max drift " << worst << " after " << kDriftUpdates << " updates";
  detail = os.str();
  return worst < kDriftBound;
}

bool criterion_dominance(std::string& detail) {
  const Target target = gradient_target();
  const RunResult ds = run_search(target, "phase:256", Algorithm::ds, 77,
                                  kDominanceIterations, 0);
  const RunResult hps = run_search(target, "phase:256", Algorithm::hps, 77,
                                   kDominanceIterations, 0);
  if (ds.trace.size() != hps.trace.size()) {
    detail = "checkpoint counts differ";
    return false;
  }
  for (std::size_t i = 0; i < ds.trace.size(); ++i) {
    if (hps.trace[i].iteration != ds.trace[i].iteration) {
      detail = "checkpoint grids differ";
      return false;
    }
    if (!(hps.trace[i].mse <= ds.trace[i].mse)) {
      std::ostringstream os;
      os << "iteration " << ds.trace[i].iteration << ": predictive " << hps.trace[i].mse
         << " > direct " << ds.trace[i].mse;
      detail = os.str();
      return false;
    }
  }
  std::ostringstream os;
  os << "non-strict lead held at all " << ds.trace.size() << " checkpoints";
  detail = os.str();
  return true;
}

struct ConvergenceOutcome {
  std::vector<double> ds_finals;
  std::vector<double> hps_finals;
  std::vector<double> hps_efficiencies;
  double elapsed = 0.0;
};

ConvergenceOutcome convergence_runs(const std::string& scheme) {
  const auto start = std::chrono::steady_clock::now();
  const Target target = matched_target();
  ConvergenceOutcome outcome;
  for (std::uint64_t seed : {201u, 202u, 203u}) {
    const RunResult ds = run_search(target, scheme, Algorithm::ds, seed,
                                    kConvergenceIterations, 5000);
    const RunResult hps = run_search(target, scheme, Algorithm::hps, seed,
                                     kConvergenceIterations, 5000);
    outcome.ds_finals.push_back(ds.trace.back().mse);
    outcome.hps_finals.push_back(hps.trace.back().mse);
    outcome.hps_efficiencies.push_back(hps.trace.back().efficiency);
  }
  outcome.elapsed = seconds_since(start);
  return outcome;
}

ConvergenceOutcome g_convergence256;

bool criterion_convergence_quality(std::string& detail) {
  g_convergence256 = convergence_runs("phase:256");
  const double ds_median = median3(g_convergence256.ds_finals);
  const double hps_median = median3(g_convergence256.hps_finals);
  std::ostringstream os;
  os << "median predictive " << hps_median << " vs direct " << ds_median << " ("
     << g_convergence256.elapsed << "s)";
  detail = os.str();
  if (g_convergence256.elapsed >= kConvergenceBudget) {
    detail += " (over budget)";
    return false;
  }
  return hps_median <= kMedianRatioBound * ds_median;
}

bool criterion_low_level_trend(std::string& detail) {
  const ConvergenceOutcome outcome = convergence_runs("phase:16");
  const double ds_median = median3(outcome.ds_finals);
  const double hps_median = median3(outcome.hps_finals);
  std::ostringstream os;
  os << "median predictive " << hps_median << " vs direct " << ds_median;
  detail = os.str();
  return hps_median <= kLowLevelRatioBound * ds_median;
}

bool criterion_binary_equivalence(std::string& detail) {
  std::string oracle_detail;
  if (!predictive_matches_exhaustive(2, kBinaryOracleSteps, oracle_detail)) {
    detail = "binary oracle: " + oracle_detail;
    return false;
  }

  const Target target = gradient_target();
  std::vector<double> ds_finals;
  std::vector<double> hps_finals;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
    ds_finals.push_back(
        run_search(target, "phase:2", Algorithm::ds, seed, 10000, 10000).trace.back().mse);
    hps_finals.push_back(
        run_search(target, "phase:2", Algorithm::hps, seed, 10000, 10000).trace.back().mse);
  }
  const auto [ds_min, ds_max] = std::minmax_element(ds_finals.begin(), ds_finals.end());
  const auto [hps_min, hps_max] = std::minmax_element(hps_finals.begin(), hps_finals.end());
  const bool overlap = *hps_min <= *ds_max && *ds_min <= *hps_max;
  std::ostringstream os;
  os << "direct [" << *ds_min << ", " << *ds_max << "], predictive [" << *hps_min << ", "
     << *hps_max << "]";
  detail = oracle_detail + "; " + os.str();
  return overlap;
}

bool criterion_transform_identities(std::string& detail) {
  const ComplexField f = random_field(64, 64, 55);
  const ComplexField spectrum = holo::forward_dft(f);
  const double in_energy = f.total_energy();
  const double out_energy = spectrum.total_energy();
  const double parseval_rel = std::abs(out_energy - in_energy) / in_energy;

  const ComplexField back = holo::inverse_dft(spectrum);
  double round_trip = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    round_trip = std::max(round_trip, std::abs(back.data()[i] - f.data()[i]));
  }
  const ComplexField other_way = holo::forward_dft(holo::inverse_dft(f));
  for (std::size_t i = 0; i < f.size(); ++i) {
    round_trip = std::max(round_trip, std::abs(other_way.data()[i] - f.data()[i]));
  }

  std::ostringstream os;
  os << "energy mismatch " << parseval_rel << ", round-trip " << round_trip;
  detail = os.str();
  return parseval_rel < kParsevalRelBound && round_trip < kRoundTripBound;
}

bool criterion_boltzmann_statistics(std::string& detail) {
  const AnnealSchedule schedule{0.37, 5.0, 1000};
  if (schedule.temperature(0) != 0.37) {
    detail = "initial temperature is not exactly t_coeff";
    return false;
  }

  holo::Rng always(991, holo::Rng::Stream::accept);
  if (!holo::boltzmann_accept(-0.5, 1.0, always) || !holo::boltzmann_accept(0.0, 1.0, always)) {
    detail = "non-worsening change was rejected";
    return false;
  }

  std::ostringstream os;
  for (double ratio : {0.1, 1.0, 3.0}) {
    const double p = std::exp(-ratio);
    holo::Rng rng(991, holo::Rng::Stream::accept);
    long long accepted = 0;
    for (int i = 0; i < kBoltzmannTrials; ++i) {
      if (holo::boltzmann_accept(ratio, 1.0, rng)) ++accepted;
    }
    const double observed = static_cast<double>(accepted) / kBoltzmannTrials;
    const double sigma = std::sqrt(p * (1.0 - p) / kBoltzmannTrials);
    os << "ratio " << ratio << ": " << observed << " vs " << p << "; ";
    if (std::abs(observed - p) > 3.0 * sigma) {
      detail = os.str() + "outside 3 sigma";
      return false;
    }
  }
  detail = os.str() + "all within 3 sigma";
  return true;
}

bool criterion_efficiency(std::string& detail) {
  if (g_convergence256.hps_efficiencies.empty()) {
    detail = "no converged runs available";
    return false;
  }
  const double worst = *std::min_element(g_convergence256.hps_efficiencies.begin(),
                                         g_convergence256.hps_efficiencies.end());
  std::ostringstream os;
  os << "minimum in-region energy fraction " << worst;
  detail = os.str();
  return worst > kEfficiencyFloor;
}

bool criterion_determinism(std::string& detail) {
  if (g_cli.empty()) {
    detail = "command line binary path not provided";
    return false;
  }
  const auto base = std::filesystem::temp_directory_path() / "holo_acceptance_det";
  std::filesystem::remove_all(base);

  auto invoke = [&](const std::string& out_dir) {
    const std::string command = "\"" + g_cli +
                                "\" run --algorithm hps --scheme phase:256 --iterations 500"
                                " --seed 3 --checkpoint 100 --amplitude-image \"" +
                                g_assets + "/gradient32.pgm\" --out \"" + out_dir +
                                "\" --no-timing > /dev/null 2>&1";
    return std::system(command.c_str());
  };
  const std::string dir_a = (base / "a").string();
  const std::string dir_b = (base / "b").string();
  if (invoke(dir_a) != 0 || invoke(dir_b) != 0) {
    detail = "command line run failed";
    return false;
  }

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  const std::string a = slurp(dir_a + "/trace.csv");
  const std::string b = slurp(dir_b + "/trace.csv");
  if (a.empty() || a != b) {
    detail = "trace files differ or are empty";
    return false;
  }
  std::ostringstream os;
  os << "two invocations produced byte-identical traces (" << a.size() << " bytes)";
  detail = os.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <assets-dir> [cli-binary]\n";
    return 2;
  }
  g_assets = argv[1];
  if (argc > 2) g_cli = argv[2];

  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> check;
  };
  const std::vector<Criterion> criteria{
      {"quantized predictive step matches the exhaustive-level oracle",
       criterion_predictive_oracle},
      {"continuous phase solve beats a dense sweep", criterion_continuous_solve},
      {"incremental replay stays faithful without recomputes", criterion_incremental_drift},
      {"paired predictive search dominates direct search at every checkpoint",
       criterion_dominance},
      {"predictive median final error is at most half of direct search",
       criterion_convergence_quality},
      {"16-level predictive final error improves on direct search",
       criterion_low_level_trend},
      {"binary predictive search is equivalent to direct search",
       criterion_binary_equivalence},
      {"transform is unitary and invertible", criterion_transform_identities},
      {"annealing acceptance follows the Boltzmann rule", criterion_boltzmann_statistics},
      {"converged predictive runs exceed the efficiency floor", criterion_efficiency},
      {"identical configurations produce byte-identical traces", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool pass = false;
    try {
      pass = criteria[i].check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << criteria[i].name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " of " << criteria.size() << " criteria failed" << std::endl;
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed" << std::endl;
  return 0;
}
