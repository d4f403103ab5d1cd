#include "mwi/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "mwi/errors.hpp"

namespace mwi {

namespace {

void check_dims(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim())
    throw DimensionMismatch("measures have dimensions " +
                            std::to_string(mu.dim()) + " and " +
                            std::to_string(nu.dim()));
}

// sum_j w_j (y_j - k)_+ for every k in ks (ks ascending, atoms ascending).
std::vector<double> call_values(const DiscreteMeasure& m,
                                const std::vector<double>& ks) {
  // Suffix sums of weight and weight * atom.
  const int n = m.size();
  std::vector<double> suffix_w(n + 1, 0.0), suffix_wy(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    suffix_w[i] = suffix_w[i + 1] + m.weight(i);
    suffix_wy[i] = suffix_wy[i + 1] + m.weight(i) * m.point(i)[0];
  }
  std::vector<double> out(ks.size());
  int first_above = 0;
  for (size_t t = 0; t < ks.size(); ++t) {
    while (first_above < n && m.point(first_above)[0] <= ks[t]) ++first_above;
    out[t] = suffix_wy[first_above] - ks[t] * suffix_w[first_above];
  }
  return out;
}

}  // namespace

bool check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const lp::Options& opts) {
  check_dims(mu, nu);
  CouplingLp clp = build_coupling_lp(
      mu, nu, true, [](int, int) { return 0.0; },
      [](int, int) { return true; });
  return lp::feasible(clp.program, opts);
}

bool convex_order_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double tol) {
  if (mu.dim() != 1 || nu.dim() != 1)
    throw DimensionMismatch("convex_order_1d requires 1D measures");
  double scale = 1.0;
  for (int i = 0; i < mu.size(); ++i)
    scale = std::max(scale, std::abs(mu.point(i)[0]));
  for (int j = 0; j < nu.size(); ++j)
    scale = std::max(scale, std::abs(nu.point(j)[0]));
  const double t = tol * scale;
  if (std::abs(mean(mu)[0] - mean(nu)[0]) > t) return false;

  std::vector<double> ks;
  for (int i = 0; i < mu.size(); ++i) ks.push_back(mu.point(i)[0]);
  for (int j = 0; j < nu.size(); ++j) ks.push_back(nu.point(j)[0]);
  std::sort(ks.begin(), ks.end());
  std::vector<double> cmu = call_values(mu, ks);
  std::vector<double> cnu = call_values(nu, ks);
  for (size_t k = 0; k < ks.size(); ++k)
    if (cmu[k] > cnu[k] + t) return false;
  return true;
}

MotBounds mot_bounds(const MartingaleProblem& problem,
                     const lp::Options& opts) {
  const auto& mu = problem.mu;
  const auto& nu = problem.nu;
  check_dims(mu, nu);
  if (!(problem.rho >= 1.0)) throw InvalidArgument("rho must be >= 1");
  const int m = nu.size();
  std::vector<double> costs(static_cast<size_t>(mu.size()) * m);
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < m; ++j)
      costs[i * m + j] =
          transport_cost(mu.point(i), nu.point(j), problem.rho, problem.norm);
  CouplingLp clp = build_coupling_lp(mu, nu, true, costs);

  auto run = [&](lp::Sense sense) {
    clp.program.set_sense(sense);
    lp::Solution sol = lp::solve(clp.program, opts);
    if (sol.status == lp::Status::kInfeasible)
      throw NotInConvexOrder("no martingale coupling exists between mu and nu");
    if (sol.status != lp::Status::kOptimal)
      throw SolverLimit(std::string("martingale LP ended with status ") +
                        lp::to_string(sol.status));
    return sol;
  };
  lp::Solution lo = run(lp::Sense::kMinimize);
  lp::Solution hi = run(lp::Sense::kMaximize);
  double lower = std::max(0.0, lo.objective_value);
  double upper = std::max(lower, hi.objective_value);
  return {lower, upper, coupling_from_solution(mu, nu, clp, lo.x),
          coupling_from_solution(mu, nu, clp, hi.x)};
}

MartingaleReport verify_martingale(const Coupling& coupling, double tol) {
  const auto& mu = coupling.source();
  const auto& nu = coupling.target();
  const int d = mu.dim();
  std::vector<double> drift(static_cast<size_t>(mu.size()) * d, 0.0);
  for (const auto& e : coupling.entries())
    for (int k = 0; k < d; ++k)
      drift[e.i * d + k] += e.w * (nu.point(e.j)[k] - mu.point(e.i)[k]);
  MartingaleReport report;
  for (int i = 0; i < mu.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += drift[i * d + k] * drift[i * d + k];
    double r = std::sqrt(s) / mu.weight(i);
    if (report.worst_row < 0 || r > report.max_residual) {
      report.max_residual = r;
      report.worst_row = i;
    }
  }
  report.passed = report.max_residual <= tol;
  return report;
}

}  // namespace mwi
