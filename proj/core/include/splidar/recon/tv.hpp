#pragma once

#include <vector>

#include "splidar/recon/params.hpp"
#include "splidar/system.hpp"

namespace splidar::recon {

/// Photon data for the TV stage: per-pixel folded arrival times (already
/// censored when censoring ran) plus the fold->depth anchor.
struct TvProblem {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Picos period_ps = 0;
  DepthAnchor anchor;
  double sigma_ps = 0.0;  // Gaussian pulse width of the return, in ps
  std::vector<std::vector<Picos>> folded;  // one vector per pixel

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Iteration diagnostics; objective[i] is F after accepting iteration i.
struct TvTrace {
  std::vector<double> objective;
};

/// Negative log-likelihood of one pixel's photons for depth z, and its
/// derivative. Likelihood per photon: Gaussian of width sigma centered at the
/// depth's fold time, floored at 1e-6 against stray background photons.
double pixel_nll(const TvProblem& prob, std::size_t pixel, double z, double* dz = nullptr);

/// F(Z) = sum_valid pixel_nll + tv_lambda * anisotropic TV(Z).
double tv_objective(const TvProblem& prob, const DepthEstimate& est, double tv_lambda);

/// Proximal-gradient minimization of the TV-regularized Poisson depth
/// objective, warm-started at `initial`. Gradient steps touch valid pixels
/// only; the TV proximal step smooths across all pixels, in-painting invalid
/// ones. The accepted objective sequence is nonincreasing (backtracking line
/// search); stops on max_iters or relative change < rel_tol.
/// Throws InputError naming the pixel if the objective turns non-finite.
DepthEstimate tv_depth_reconstruct(const DepthEstimate& initial, const TvProblem& prob,
                                   const ReconParams& params, TvTrace* trace = nullptr,
                                   unsigned n_threads = 1);

}  // namespace splidar::recon
