#include "dicelab/kernel.hpp"

#include <cmath>

#include "dicelab/error.hpp"

namespace dicelab {

namespace {

double coordinate(int i, int n) { return double(n + 1 - 2 * i) / double(n - 1); }

// (M^*)_{ij} via the closed form: sign term, linear term, cubic correction.
double closed_entry(int i, int j, int n) {
  const double x = coordinate(i, n);
  const double y = coordinate(j, n);
  const double sign = i < j ? 1.0 : i > j ? -1.0 : 0.0;
  const double d = x - y;
  const double lin = 0.75 * d * (1.0 - 1.0 / double(n));
  const double nm1 = double(n - 1);
  const double cubic = 0.75 * x * y * d * nm1 * nm1 / (double(n) * double(n + 1));
  return 0.5 * sign - lin - cubic;
}

}  // namespace

const char* kernel_construction_name(KernelConstruction c) {
  return c == KernelConstruction::projection ? "projection" : "closed_form";
}

SkewKernelMatrix build_m_star(int n, KernelConstruction construction) {
  if (n < 2) fail(Err::DomainError, "kernel matrices need n >= 2");
  SkewKernelMatrix m;
  m.n = n;
  m.construction = construction;

  if (construction == KernelConstruction::closed_form) {
    m.entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const double e = closed_entry(i, j, n);
        m.entries(i - 1, j - 1) = e;
        m.entries(j - 1, i - 1) = -e;
      }
    }
    return m;
  }

  Eigen::MatrixXd base(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      base(i, j) = i < j ? 1.0 : i == j ? 0.5 : 0.0;
    }
  }
  Eigen::VectorXd v1 = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd v2(n);
  const double mid = 0.5 * double(n + 1);
  for (int i = 0; i < n; ++i) v2(i) = double(i + 1) - mid;
  v2 /= std::sqrt(double(n) * (double(n) * n - 1.0) / 12.0);

  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - v1 * v1.transpose() - v2 * v2.transpose();
  m.entries = p * base * p;
  return m;
}

double kernel_f(double x, double y) {
  if (!(x >= -1.0 && x <= 1.0 && y >= -1.0 && y <= 1.0)) {
    fail(Err::DomainError, "kernel_f arguments must lie in [-1,1]");
  }
  const double sign = x > y ? 1.0 : x < y ? -1.0 : 0.0;
  return 0.25 * sign - 0.375 * (x - y) * (1.0 + x * y);
}

int beats_bilinear(const FrequencyVector& fa, const FrequencyVector& fb,
                   const SkewKernelMatrix& m) {
  if (fa.n != m.n || fb.n != m.n || int(fa.counts.size()) != m.n ||
      int(fb.counts.size()) != m.n) {
    fail(Err::DimensionMismatch, "beats_bilinear needs matching n");
  }
  const int n = m.n;
  Eigen::VectorXd a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a(i) = double(fa.counts[std::size_t(i)]);
    b(i) = double(fb.counts[std::size_t(i)]);
  }
  const double s = b.dot(m.entries * a);
  if (std::abs(s) <= 0.25) return 0;
  return s > 0.0 ? 1 : -1;
}

KernelConstants kernel_constants(const SkewKernelMatrix& m) {
  KernelConstants k;
  const auto& a = m.entries;
  const int n = m.n;
  k.max_entry = a.cwiseAbs().maxCoeff();
  k.row_norm = a.rowwise().norm().maxCoeff() / std::sqrt(double(n));
  k.frob_over_n = a.norm() / double(n);
  double lip = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j || i == j + 1) continue;
      lip = std::max(lip, std::abs(a(j, i) - a(j + 1, i)));
    }
  }
  k.lipschitz = lip * double(n);
  return k;
}

}  // namespace dicelab
