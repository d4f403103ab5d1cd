#include "mwi/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mwi {

namespace {

struct Run {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

Run single_run(const std::function<double(const std::vector<double>&)>& f,
               const std::vector<double>& x0, double step, double step_tol,
               int budget) {
  const size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (size_t i = 0; i <= n; ++i) {
      for (size_t k = 0; k < n; ++k)
        diameter =
            std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (diameter < step_tol) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / dn;
    }
    for (size_t k = 0; k < n; ++k)
      trial[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
    double fr = eval(trial);

    if (fr < values[best]) {
      for (size_t k = 0; k < n; ++k)
        trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
      double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction, outside or inside.
    bool outside = fr < values[worst];
    for (size_t k = 0; k < n; ++k) {
      double towards = outside ? trial[k] : simplex[worst][k];
      trial2[k] = centroid[k] + gamma * (towards - centroid[k]);
    }
    double fc = eval(trial2);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (size_t k = 0; k < n; ++k)
        simplex[i][k] =
            simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
      values[i] = eval(simplex[i]);
    }
  }
  size_t best = static_cast<size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], evals, converged};
}

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts) {
  NelderMeadResult result;
  result.x = std::move(x0);
  result.value = f(result.x);
  result.evaluations = 1;
  if (result.x.empty()) {
    result.converged = true;
    return result;
  }
  double step = opts.initial_step;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    int budget = opts.max_evaluations - result.evaluations;
    if (budget <= 0) break;
    Run run = single_run(f, result.x, step, opts.step_tol, budget);
    result.evaluations += run.evaluations;
    bool improved = run.value < result.value;
    if (run.value <= result.value) {
      result.x = run.x;
      result.value = run.value;
    }
    result.converged = run.converged;
    if (!improved && run.converged) break;
    // Restart with a smaller simplex around the current best point.
    step = std::max(opts.step_tol * 100.0, step * 0.1);
  }
  return result;
}

}  // namespace mwi
