#include "holo/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "holo/metrics.hpp"

namespace holo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Algorithm parse_algorithm(const std::string& text) {
  if (text == "ds") return Algorithm::ds;
  if (text == "sa") return Algorithm::sa;
  if (text == "hps") return Algorithm::hps;
  throw std::invalid_argument("algorithm must be one of ds, sa, hps");
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ds:
      return "ds";
    case Algorithm::sa:
      return "sa";
    case Algorithm::hps:
      return "hps";
  }
  throw std::invalid_argument("unknown algorithm");
}

double AnnealSchedule::temperature(long long n) const {
  if (n <= 0) return t_coeff;
  const double total = total_iterations > 0 ? static_cast<double>(total_iterations) : 1.0;
  return t_coeff * std::exp(-t0 * static_cast<double>(n) / total);
}

bool boltzmann_accept(double delta_e, double temperature, Rng& rng) {
  if (delta_e <= 0.0) return true;
  return rng.uniform() < std::exp(-delta_e / temperature);
}

SearchState::SearchState(const ComplexField& target, const ModulationScheme& scheme,
                         std::uint64_t seed, const SearchOptions& options)
    : target_(target),
      scheme_(scheme),
      twiddles_(target.width(), target.height()),
      options_(options),
      init_rng_(seed, Rng::Stream::init),
      pixel_rng_(seed, Rng::Stream::pixel),
      trial_rng_(seed, Rng::Stream::trial),
      accept_rng_(seed, Rng::Stream::accept) {
  if (!scheme_.is_phase()) {
    throw std::invalid_argument("search requires a phase modulation scheme");
  }

  // Randomize the target's phases, back-propagate, constrain to the device.
  ComplexField randomized(target_.width(), target_.height());
  for (int y = 0; y < target_.height(); ++y) {
    for (int x = 0; x < target_.width(); ++x) {
      const double magnitude = std::abs(target_.at(x, y));
      const double theta = init_rng_.uniform() * kTwoPi;
      randomized.at(x, y) = Complex{magnitude * std::cos(theta), magnitude * std::sin(theta)};
    }
  }
  const ComplexField back = inverse_dft(randomized);
  hologram_ = ComplexField(target_.width(), target_.height());
  for (int y = 0; y < target_.height(); ++y) {
    for (int x = 0; x < target_.width(); ++x) {
      hologram_.at(x, y) = scheme_.quantize(back.at(x, y));
    }
  }
  replay_ = forward_dft(hologram_);
  error_ = mse(target_, replay_);
}

SearchState::Proposal SearchState::pick_pixel() {
  const std::uint64_t index = pixel_rng_.uniform_below(hologram_.size());
  const int x = static_cast<int>(index % static_cast<std::uint64_t>(hologram_.width()));
  const int y = static_cast<int>(index / static_cast<std::uint64_t>(hologram_.width()));
  return Proposal{x, y, hologram_.at(x, y)};
}

Complex SearchState::propose_trial_state(Complex current) {
  if (scheme_.is_discrete()) {
    // Draw from the L-1 states other than the current one.
    const int current_level =
        scheme_.phase_level_of(std::atan2(current.imag(), current.real()));
    const int r = static_cast<int>(
        trial_rng_.uniform_below(static_cast<std::uint64_t>(scheme_.levels() - 1)));
    return scheme_.state(r >= current_level ? r + 1 : r);
  }
  Complex state;
  do {
    const double theta = trial_rng_.uniform() * kTwoPi;
    state = Complex{std::cos(theta), std::sin(theta)};
  } while (state == current);
  return state;
}

void SearchState::apply_change(int x, int y, Complex new_value, double delta_e) {
  const Complex delta_h = new_value - hologram_.at(x, y);
  ++accepted_;
  if (delta_h == Complex{0.0, 0.0}) return;

  incremental_update(replay_, x, y, delta_h, twiddles_);
  hologram_.at(x, y) = new_value;
  error_ = std::max(error_ + delta_e, 0.0);
  ++applied_since_recompute_;
  if (options_.recompute_interval > 0 &&
      applied_since_recompute_ >= options_.recompute_interval) {
    recompute_replay();
  }
}

void SearchState::recompute_replay() {
  replay_ = forward_dft(hologram_);
  // min() keeps the recorded error sequence monotone; the fresh value and
  // the running value agree to accumulated rounding.
  error_ = std::min(error_, mse(target_, replay_));
  applied_since_recompute_ = 0;
}

StepOutcome SearchState::trial_step(bool boltzmann, const AnnealSchedule* schedule) {
  const Proposal p = pick_pixel();
  const Complex candidate = propose_trial_state(p.current);
  const Complex projection = residual_projection(target_, replay_, p.x, p.y, twiddles_);
  const double delta = mse_delta_from_projection(projection, candidate - p.current,
                                                 hologram_.width(), hologram_.height());
  StepOutcome outcome{false, p.x, p.y, p.current, candidate, delta};
  bool accept = delta <= 0.0;
  if (!accept && boltzmann) {
    accept = boltzmann_accept(delta, schedule->temperature(iteration_ + 1), accept_rng_);
  }
  if (accept) {
    apply_change(p.x, p.y, candidate, delta);
    outcome.accepted = true;
  }
  ++iteration_;
  return outcome;
}

StepOutcome SearchState::ds_step() { return trial_step(false, nullptr); }

StepOutcome SearchState::sa_step(const AnnealSchedule& schedule) {
  return trial_step(true, &schedule);
}

PhaseSolve SearchState::solve_with_projection(int x, int y, Complex& projection_out) const {
  projection_out = residual_projection(target_, replay_, x, y, twiddles_);
  // With S the residual projection and h the pixel's current value,
  // sum over (u,v) of exp(i*phi)*(T - Rd) collapses to S + sqrt(N)*h,
  // because removing the pixel adds h * exp(-i*phi) / sqrt(N) to every
  // residual element and |exp(i*phi)|^2 = 1.
  const double root_n =
      std::sqrt(static_cast<double>(hologram_.width()) * hologram_.height());
  const Complex h = hologram_.at(x, y);
  PhaseSolve solve;
  solve.accumulator.sum_cos = projection_out.real() + root_n * h.real();
  solve.accumulator.sum_sin = projection_out.imag() + root_n * h.imag();
  solve.degenerate = solve.accumulator.sum_sin == 0.0 && solve.accumulator.sum_cos == 0.0;
  solve.theta =
      solve.degenerate ? 0.0 : std::atan2(solve.accumulator.sum_sin, solve.accumulator.sum_cos);
  return solve;
}

PhaseSolve SearchState::hps_solve_phase(int x, int y) const {
  Complex projection;
  return solve_with_projection(x, y, projection);
}

StepOutcome SearchState::hps_step() {
  const Proposal p = pick_pixel();
  Complex projection;
  const PhaseSolve solve = solve_with_projection(p.x, p.y, projection);
  const Complex candidate = scheme_.quantize_phase(solve.theta);
  const double delta = mse_delta_from_projection(projection, candidate - p.current,
                                                 hologram_.width(), hologram_.height());
  StepOutcome outcome{false, p.x, p.y, p.current, candidate, delta};
  // The current state is itself a feasible phase, so the solve can only
  // improve on it; the guard protects against quantization overshoot.
  if (delta <= 0.0) {
    apply_change(p.x, p.y, candidate, delta);
    outcome.accepted = true;
  }
  ++iteration_;
  return outcome;
}

RunResult run(const Target& target, const ModulationScheme& scheme, const RunParams& params) {
  if (params.iterations < 0) {
    throw std::invalid_argument("iteration count must be non-negative");
  }
  SearchState state(target.field, scheme, params.seed, params.options);

  AnnealSchedule schedule = params.schedule;
  schedule.total_iterations = std::max<long long>(params.iterations, 1);
  if (schedule.t_coeff <= 0.0) {
    schedule.t_coeff = state.error() > 0.0 ? state.error() / 100.0 : 1e-12;
  }
  if (schedule.t0 <= 0.0) schedule.t0 = 5.0;

  const long long interval = params.checkpoint_interval > 0
                                 ? params.checkpoint_interval
                                 : std::max<long long>(1, params.iterations / 100);
  const RegionWeights region = target.region();
  const bool ssim_available =
      target.reference_amplitude.width >= 11 && target.reference_amplitude.height >= 11;

  auto probe_ssim = [&]() {
    if (!ssim_available) return std::numeric_limits<double>::quiet_NaN();
    Image actual = roi_magnitude(state.replay(), target);
    const double inv_scale = 1.0 / target.amplitude_scale;
    for (double& v : actual.pixels) v *= inv_scale;
    return ssim(actual, target.reference_amplitude, 1.0);
  };

  ConvergenceTrace trace;
  auto record = [&](long long iteration, long long elapsed_ns) {
    trace.push_back(TraceRecord{iteration, state.error(),
                                diffraction_efficiency(state.replay(), region), probe_ssim(),
                                params.record_timing ? elapsed_ns : 0,
                                state.accepted_count()});
  };

  record(0, 0);
  const auto start = std::chrono::steady_clock::now();
  for (long long n = 1; n <= params.iterations; ++n) {
    switch (params.algorithm) {
      case Algorithm::ds:
        state.ds_step();
        break;
      case Algorithm::sa:
        state.sa_step(schedule);
        break;
      case Algorithm::hps:
        state.hps_step();
        break;
    }
    if (n % interval == 0 || n == params.iterations) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      record(n, std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count());
    }
  }
  return RunResult{std::move(state), std::move(trace), schedule};
}

}  // namespace holo
