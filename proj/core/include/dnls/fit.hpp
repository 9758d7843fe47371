#pragma once

#include <vector>

namespace dnls {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int n = 0;
};

// Least squares y = slope * x + intercept.
SlopeFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// Least squares of log y vs log t; inputs must be positive.
SlopeFit fit_loglog(const std::vector<double>& ts, const std::vector<double>& ys);

}  // namespace dnls
