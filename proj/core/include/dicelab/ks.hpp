#pragma once

#include <vector>

namespace dicelab {

// Two-sample Kolmogorov-Smirnov statistic, sup_x |F_a(x) - F_b(x)|.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace dicelab
