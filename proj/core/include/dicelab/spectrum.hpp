#pragma once

#include <vector>

#include "dicelab/kernel.hpp"

namespace dicelab {

struct SpectrumEstimate {
  int n = 0;
  std::vector<double> sigmas;  // floor(n/2) entries, descending
  int residual_zero_count = 0;
};

// Square roots of the paired eigenvalues of M^T M.  PairingFailure when the
// eigenvalues do not pair (or an odd n lacks its zero mode) at pair_tol.
SpectrumEstimate spectrum(const SkewKernelMatrix& m, double pair_tol_per_n = 1e-7);

// Spectral-norm error of the skew normal form rebuilt from (u, Mu/sigma)
// pairs; small for a healthy decomposition.
double reconstruction_error(const SkewKernelMatrix& m);

struct LimitSpectrum {
  std::vector<int> n_grid;
  std::vector<double> sigmas;       // limiting sigma_ell, ell = 1..L
  std::vector<double> uncertainty;  // RMS residual of the 1/n fit
};

// Fits sigma_{n,ell}/n = sigma_ell + beta/n over the grid.  Requires at
// least two grid points and L <= min(n_grid)/4.
LimitSpectrum estimate_limit_spectrum(const std::vector<int>& n_grid, int L);

// Same fit applied to precomputed per-n spectra (cache path).
LimitSpectrum fit_limit_spectrum(const std::vector<int>& n_grid,
                                 const std::vector<SpectrumEstimate>& spectra, int L);

// max over t of t * (sum of sigma_ell^2 for ell >= t) / n^2: the fitted
// constant of the 1/t tail bound.
double tail_constant(const SpectrumEstimate& s);

// Tail-sum constant of a limiting spectrum: kappa_hat^2 with kappa_hat the
// median of ell * sigma_ell over the top half of the computed range, so the
// variance beyond L is close to 2 * kappa_hat^2 / L.
double limit_tail_constant(const LimitSpectrum& s);

double limit_variance(const LimitSpectrum& s, int L);  // 2 * sum sigma_ell^2

}  // namespace dicelab
