#include "dicelab/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "dicelab/error.hpp"

namespace dicelab {

SpectrumEstimate spectrum(const SkewKernelMatrix& m, double pair_tol_per_n) {
  const int n = m.n;
  const double pair_tol = pair_tol_per_n * n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries.transpose() * m.entries,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(Err::PairingFailure, "eigensolver did not converge");

  std::vector<double> sv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    sv[std::size_t(i)] = std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());

  SpectrumEstimate est;
  est.n = n;
  est.sigmas.reserve(std::size_t(n / 2));
  for (int l = 0; l + 1 < n; l += 2) {
    const double a = sv[std::size_t(l)];
    const double b = sv[std::size_t(l + 1)];
    if (a - b > pair_tol) {
      fail(Err::PairingFailure, "singular values do not pair at pair_tol");
    }
    est.sigmas.push_back(0.5 * (a + b));
  }
  if (n % 2 == 1) {
    if (sv.back() > pair_tol) {
      fail(Err::PairingFailure, "odd n must leave a single zero mode");
    }
    est.residual_zero_count = 1;
  }
  return est;
}

double reconstruction_error(const SkewKernelMatrix& m) {
  const int n = m.n;
  const double pair_tol = 1e-7 * n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries.transpose() * m.entries);
  if (solver.info() != Eigen::Success) fail(Err::PairingFailure, "eigensolver did not converge");

  // Descending order; vectors with sigma at pair_tol or below contribute
  // nothing.  Within a repeated sigma the eigenbasis mixes (u, w) planes, so
  // each candidate is re-orthogonalized against the pairs found so far and
  // dropped when it was already spanned.
  std::vector<Eigen::VectorXd> basis;
  Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
  for (int idx = n - 1; idx >= 0; --idx) {
    const double sigma = std::sqrt(std::max(solver.eigenvalues()(idx), 0.0));
    if (sigma <= pair_tol) continue;
    Eigen::VectorXd u = solver.eigenvectors().col(idx);
    for (const auto& b : basis) u -= b.dot(u) * b;
    const double norm = u.norm();
    if (norm < 0.5) continue;
    u /= norm;
    Eigen::VectorXd w = m.entries * u / sigma;
    w -= u.dot(w) * u;
    w.normalize();
    recon += sigma * (w * u.transpose() - u * w.transpose());
    basis.push_back(u);
    basis.push_back(w);
  }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m.entries - recon).singularValues()(0);
}

LimitSpectrum fit_limit_spectrum(const std::vector<int>& n_grid,
                                 const std::vector<SpectrumEstimate>& spectra, int L) {
  const std::size_t g = n_grid.size();
  if (g < 2) fail(Err::GridTooSmall, "limit fit needs at least two grid points");
  if (spectra.size() != g) fail(Err::DimensionMismatch, "one spectrum per grid point");
  for (std::size_t i = 0; i < g; ++i) {
    if (L > n_grid[i] / 4) {
      fail(Err::GridTooSmall, "L must be at most min(n_grid)/4");
    }
    if (int(spectra[i].sigmas.size()) < L) {
      fail(Err::DimensionMismatch, "spectrum shorter than L");
    }
  }

  LimitSpectrum out;
  out.n_grid = n_grid;
  out.sigmas.resize(std::size_t(L));
  out.uncertainty.resize(std::size_t(L));

  // Per ell: least squares y = a + b/n over the grid.
  double s1 = double(g), sx = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double x = 1.0 / double(n_grid[i]);
    sx += x;
    sxx += x * x;
  }
  const double det = s1 * sxx - sx * sx;
  for (int l = 0; l < L; ++l) {
    double sy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      const double x = 1.0 / double(n_grid[i]);
      const double y = spectra[i].sigmas[std::size_t(l)] / double(n_grid[i]);
      sy += y;
      sxy += x * y;
    }
    const double a = (sxx * sy - sx * sxy) / det;
    const double b = (s1 * sxy - sx * sy) / det;
    double rss = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      const double x = 1.0 / double(n_grid[i]);
      const double y = spectra[i].sigmas[std::size_t(l)] / double(n_grid[i]);
      const double r = y - (a + b * x);
      rss += r * r;
    }
    out.sigmas[std::size_t(l)] = a;
    out.uncertainty[std::size_t(l)] = g > 2 ? std::sqrt(rss / double(g - 2)) : 0.0;
  }
  return out;
}

LimitSpectrum estimate_limit_spectrum(const std::vector<int>& n_grid, int L) {
  std::vector<SpectrumEstimate> spectra;
  spectra.reserve(n_grid.size());
  for (int n : n_grid) {
    spectra.push_back(spectrum(build_m_star(n, KernelConstruction::closed_form)));
  }
  return fit_limit_spectrum(n_grid, spectra, L);
}

double tail_constant(const SpectrumEstimate& s) {
  const std::size_t count = s.sigmas.size();
  double best = 0.0;
  double tail = 0.0;
  std::vector<double> suffix(count + 1, 0.0);
  for (std::size_t i = count; i > 0; --i) {
    tail += s.sigmas[i - 1] * s.sigmas[i - 1];
    suffix[i - 1] = tail;
  }
  const double n2 = double(s.n) * double(s.n);
  for (std::size_t t = 1; t <= count; ++t) {
    best = std::max(best, double(t) * suffix[t - 1] / n2);
  }
  return best;
}

double limit_tail_constant(const LimitSpectrum& s) {
  const std::size_t count = s.sigmas.size();
  if (count == 0) fail(Err::DomainError, "empty spectrum");
  std::vector<double> top;
  for (std::size_t l = count / 2; l < count; ++l) {
    top.push_back(double(l + 1) * s.sigmas[l]);
  }
  std::sort(top.begin(), top.end());
  const std::size_t h = top.size();
  const double kappa = h % 2 == 1 ? top[h / 2] : 0.5 * (top[h / 2 - 1] + top[h / 2]);
  return kappa * kappa;
}

double limit_variance(const LimitSpectrum& s, int L) {
  if (L < 0 || std::size_t(L) > s.sigmas.size()) {
    fail(Err::DimensionMismatch, "L exceeds computed spectrum");
  }
  double v = 0.0;
  for (int l = 0; l < L; ++l) v += s.sigmas[std::size_t(l)] * s.sigmas[std::size_t(l)];
  return 2.0 * v;
}

}  // namespace dicelab
