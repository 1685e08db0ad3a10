#pragma once

#include <cstdint>
#include <string>

#include "holo/complex_field.hpp"
#include "holo/dft.hpp"
#include "holo/modulation.hpp"
#include "holo/rng.hpp"
#include "holo/target.hpp"
#include "holo/trace.hpp"

namespace holo {

enum class Algorithm { ds, sa, hps };

Algorithm parse_algorithm(const std::string& text);
std::string to_string(Algorithm algorithm);

// Exponentially decaying temperature t(n) = t_coeff * exp(-t0 * n / N).
struct AnnealSchedule {
  double t_coeff = 0.0;
  double t0 = 5.0;
  long long total_iterations = 1;

  double temperature(long long n) const;
};

// Boltzmann acceptance rule: a non-worsening change is always accepted, a
// worsening one with probability exp(-delta_e / temperature). Draws from
// the stream only for worsening changes.
bool boltzmann_accept(double delta_e, double temperature, Rng& rng);

// Sums of the per-element optimality condition for one pixel's phase:
// sum_cos + i*sum_sin = sum over (u,v) of |T - Rd| * exp(i*(phi + arg(T - Rd)))
// where Rd is the replay with the pixel's contribution removed and
// phi = 2*pi*(u*x/Nx + v*y/Ny). The optimal phase is atan2(sum_sin, sum_cos).
struct PredictiveAccumulator {
  double sum_sin = 0.0;
  double sum_cos = 0.0;
};

struct PhaseSolve {
  double theta = 0.0;
  PredictiveAccumulator accumulator;
  // Both sums exactly zero: the error is independent of this pixel's phase
  // and theta falls back to 0.
  bool degenerate = false;
};

struct StepOutcome {
  bool accepted = false;
  int x = 0;
  int y = 0;
  Complex old_value;
  Complex new_value;
  double delta_e = 0.0;
};

struct SearchOptions {
  // Accepted pixel changes between full replay recomputes that bound
  // incremental drift; 0 disables the recompute entirely.
  long long recompute_interval = 10000;
};

// Shared iteration state of the three searches: the device-constrained
// hologram H, its cached transform R, the tracked error E = mse(T, R), and
// four decoupled RNG streams (initial phases, pixel choice, trial values,
// acceptance draws). Stream separation gives paired runs of different
// algorithms an identical pixel-visit sequence for the same seed.
class SearchState {
 public:
  // Randomizes the target's phases from the seed, back-propagates, and
  // quantizes onto the scheme: H = quantize(inverse_dft(T * exp(i*2*pi*u))).
  // Only phase modulation schemes are supported.
  SearchState(const ComplexField& target, const ModulationScheme& scheme, std::uint64_t seed,
              const SearchOptions& options = {});

  const ComplexField& target() const { return target_; }
  const ComplexField& hologram() const { return hologram_; }
  const ComplexField& replay() const { return replay_; }
  const ModulationScheme& scheme() const { return scheme_; }
  double error() const { return error_; }
  long long iteration() const { return iteration_; }
  long long accepted_count() const { return accepted_; }

  // Sets a random pixel to a random achievable state distinct from its
  // current one; accepts when the error does not increase.
  StepOutcome ds_step();

  // As ds_step, but a worsening change is accepted with probability
  // exp(-dE / t(n)); improving changes are always accepted.
  StepOutcome sa_step(const AnnealSchedule& schedule);

  // Sets a random pixel to the quantized closed-form optimal phase;
  // the acceptance guard keeps the error non-increasing even when
  // quantization overshoots the continuous optimum.
  StepOutcome hps_step();

  // Closed-form solve for the error-minimizing phase of pixel (x, y).
  PhaseSolve hps_solve_phase(int x, int y) const;

  // Replaces the cached replay with a fresh transform of the hologram,
  // keeping the error sequence monotone.
  void recompute_replay();

 private:
  struct Proposal {
    int x;
    int y;
    Complex current;
  };

  Proposal pick_pixel();
  Complex propose_trial_state(Complex current);
  PhaseSolve solve_with_projection(int x, int y, Complex& projection_out) const;
  StepOutcome trial_step(bool boltzmann, const AnnealSchedule* schedule);
  void apply_change(int x, int y, Complex new_value, double delta_e);

  ComplexField target_;
  ComplexField hologram_;
  ComplexField replay_;
  ModulationScheme scheme_;
  TwiddleTable twiddles_;
  SearchOptions options_;
  double error_ = 0.0;
  long long iteration_ = 0;
  long long accepted_ = 0;
  long long applied_since_recompute_ = 0;
  Rng init_rng_;
  Rng pixel_rng_;
  Rng trial_rng_;
  Rng accept_rng_;
};

struct RunParams {
  Algorithm algorithm = Algorithm::hps;
  long long iterations = 1;
  std::uint64_t seed = 0;
  // 0 selects max(1, iterations / 100).
  long long checkpoint_interval = 0;
  // t_coeff <= 0 selects the documented default, initial error / 100.
  AnnealSchedule schedule;
  SearchOptions options;
  // When false every trace record carries elapsed_ns = 0 so that repeated
  // runs produce byte-identical traces.
  bool record_timing = true;
};

struct RunResult {
  SearchState state;
  ConvergenceTrace trace;
  AnnealSchedule schedule;
};

// Runs one search to completion, recording mse, diffraction efficiency,
// SSIM against the target's reference amplitude (NaN when the region of
// interest is smaller than the SSIM window), elapsed time, and the
// cumulative accepted count at every checkpoint plus the initial state
// and the final iteration.
RunResult run(const Target& target, const ModulationScheme& scheme, const RunParams& params);

}  // namespace holo
