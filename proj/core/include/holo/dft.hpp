#pragma once

#include <span>
#include <vector>

#include "holo/complex_field.hpp"

namespace holo {

/// Unitary 2D DFT pair. Both directions carry the 1/sqrt(Nx*Ny) prefactor,
/// so forward and inverse are exact inverses and Parseval's identity holds
/// without rescaling:
///
///   F(u,v) = 1/sqrt(NxNy) * sum_{x,y} f(x,y) * exp(-2*pi*i*(u*x/Nx + v*y/Ny))
///
/// Rejects non-finite input with std::invalid_argument.
ComplexField forward_dft(const ComplexField& field);
ComplexField inverse_dft(const ComplexField& field);

/// Per-axis tables of the forward twiddle factors exp(-2*pi*i*k/N). A single
/// pixel change at (x, y) reaches replay element (u, v) through
/// wx[(u*x) mod Nx] * wy[(v*y) mod Ny]; precomputing the axis tables keeps
/// the per-iteration loops free of trigonometry.
class TwiddleTable {
 public:
  TwiddleTable(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  /// out[k] = exp(-2*pi*i * k*x / Nx) for k = 0..Nx-1. out.size() == Nx.
  void pixel_factors_x(int x, std::span<Complex> out) const;
  /// out[k] = exp(-2*pi*i * k*y / Ny) for k = 0..Ny-1. out.size() == Ny.
  void pixel_factors_y(int y, std::span<Complex> out) const;

  std::span<const Complex> axis_x() const { return wx_; }
  std::span<const Complex> axis_y() const { return wy_; }

 private:
  int nx_;
  int ny_;
  std::vector<Complex> wx_;
  std::vector<Complex> wy_;
};

/// Applies the replay-field change caused by adding delta_h to diffraction
/// pixel (x, y), in place:
///
///   R(u,v) += delta_h / sqrt(NxNy) * exp(-2*pi*i*(u*x/Nx + v*y/Ny))
///
/// O(NxNy); equivalent to re-transforming the modified diffraction field, to
/// rounding. Throws std::out_of_range for a bad pixel index.
void incremental_update(ComplexField& replay, int x, int y, Complex delta_h);
void incremental_update(ComplexField& replay, int x, int y, Complex delta_h,
                        const TwiddleTable& twiddles);

/// Projection of the residual (target - replay) onto the basis function of
/// diffraction pixel (x, y):
///
///   S = sum_{u,v} (T(u,v) - R(u,v)) * exp(+2*pi*i*(u*x/Nx + v*y/Ny))
///
/// One fused O(NxNy) pass. Both the trial-change error delta and the
/// predictive phase solve reduce to this quantity; see
/// mse_delta_from_projection in metrics.hpp.
Complex residual_projection(const ComplexField& target, const ComplexField& replay,
                            int x, int y, const TwiddleTable& twiddles);

}  // namespace holo
