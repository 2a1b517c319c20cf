#pragma once

#include <Eigen/Dense>

#include "dicelab/die.hpp"

namespace dicelab {

enum class KernelConstruction : std::int8_t { projection, closed_form };

const char* kernel_construction_name(KernelConstruction c);

struct SkewKernelMatrix {
  int n = 0;
  KernelConstruction construction = KernelConstruction::closed_form;
  Eigen::MatrixXd entries;
};

// n >= 2.  Projection form is P M_n P with P = I - v1 v1^T - v2 v2^T;
// the closed form fills i < j and mirrors, so it is skew bit-for-bit.
SkewKernelMatrix build_m_star(int n, KernelConstruction construction);

// Continuum kernel on [-1,1]^2; f(x,x) = 0.
double kernel_f(double x, double y);

// Scale-free kernel statistics, one fitted constant per bound family:
//   max_entry:    max |entry|
//   row_norm:     max_i ||row_i||_2 / sqrt(n)
//   frob_over_n:  ||M||_F / n
//   lipschitz:    max adjacent row difference * n (telescoping makes the
//                 adjacent maximum equal to the all-pairs ratio)
struct KernelConstants {
  double max_entry = 0.0;
  double row_norm = 0.0;
  double frob_over_n = 0.0;
  double lipschitz = 0.0;
};

KernelConstants kernel_constants(const SkewKernelMatrix& m);

// Sign of fb^T M_n^* fa, which for constraint-satisfying dice equals half the
// doubled margin of a vs b, so the sign matches compare(a, b).  Values are
// half-integers; anything inside the zero tolerance of 1/4 is a tie.
// errors: DimensionMismatch
int beats_bilinear(const FrequencyVector& fa, const FrequencyVector& fb,
                   const SkewKernelMatrix& m);

}  // namespace dicelab
