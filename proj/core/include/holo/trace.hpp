#pragma once

#include <vector>

namespace holo {

// One checkpoint of a search run. ssim is NaN when the probe is unavailable
// (region of interest smaller than the SSIM window). elapsed_ns is 0 when
// timing capture is disabled for byte-reproducible traces.
struct TraceRecord {
  long long iteration = 0;
  double mse = 0.0;
  double efficiency = 0.0;
  double ssim = 0.0;
  long long elapsed_ns = 0;
  long long accepted = 0;
};

using ConvergenceTrace = std::vector<TraceRecord>;

}  // namespace holo
