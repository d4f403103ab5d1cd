#pragma once

#include <functional>
#include <vector>

namespace mwi {

struct NelderMeadOptions {
  double initial_step = 1.0;
  // Stop when the simplex diameter falls below this value.
  double step_tol = 1e-10;
  int max_evaluations = 100000;
  // Restart from the best vertex until a restart no longer improves the value.
  int max_restarts = 8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Derivative-free minimization with the adaptive coefficients of Gao and Han,
// which behave better than the textbook ones beyond two dimensions.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace mwi
