#include "mwi/verify/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mwi/errors.hpp"

namespace mwi::oracle {

VertexExtrema martingale_vertex_extrema(const DiscreteMeasure& mu,
                                        const DiscreteMeasure& nu, double rho,
                                        const Norm& norm) {
  const int n = mu.size(), m = nu.size(), d = mu.dim();
  const int cols = n * m;
  const int rows = n + m + n * d;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd cost(cols);
  for (int i = 0; i < n; ++i) {
    b[i] = mu.weight(i);
    for (int j = 0; j < m; ++j) {
      const int c = i * m + j;
      a(i, c) = 1.0;
      a(n + j, c) = 1.0;
      for (int k = 0; k < d; ++k)
        a(n + m + i * d + k, c) = nu.point(j)[k] - mu.point(i)[k];
      cost[c] = std::pow(norm.distance(mu.point(i), nu.point(j)), rho);
    }
  }
  for (int j = 0; j < m; ++j) b[n + j] = nu.weight(j);

  Eigen::FullPivLU<Eigen::MatrixXd> full(a);
  full.setThreshold(1e-10);
  const int rank = static_cast<int>(full.rank());

  VertexExtrema out;
  out.min_cost = std::numeric_limits<double>::infinity();
  out.max_cost = -std::numeric_limits<double>::infinity();
  // Enumerate column subsets of size rank in lexicographic order.
  std::vector<int> subset(rank);
  for (int t = 0; t < rank; ++t) subset[t] = t;
  while (true) {
    Eigen::MatrixXd as(rows, rank);
    for (int t = 0; t < rank; ++t) as.col(t) = a.col(subset[t]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(as);
    lu.setThreshold(1e-10);
    if (lu.rank() == rank) {
      Eigen::VectorXd xs = as.colPivHouseholderQr().solve(b);
      double residual = (as * xs - b).cwiseAbs().maxCoeff();
      if (residual < 1e-10 && xs.minCoeff() >= -1e-12) {
        double c = 0.0;
        for (int t = 0; t < rank; ++t)
          c += cost[subset[t]] * std::max(0.0, xs[t]);
        out.feasible = true;
        ++out.vertices;
        out.min_cost = std::min(out.min_cost, c);
        out.max_cost = std::max(out.max_cost, c);
      }
    }
    int t = rank - 1;
    while (t >= 0 && subset[t] == cols - rank + t) --t;
    if (t < 0) break;
    ++subset[t];
    for (int u = t + 1; u < rank; ++u) subset[u] = subset[u - 1] + 1;
  }
  return out;
}

double central_moment_grid(const DiscreteMeasure& nu, ExtendedIndex p,
                           const Norm& norm, int cells, int levels) {
  const int d = nu.dim();
  if (d > 2) throw InvalidArgument("grid oracle supports dim <= 2");
  std::vector<double> lo(d), hi(d);
  for (int k = 0; k < d; ++k) {
    lo[k] = hi[k] = nu.point(0)[k];
    for (int j = 1; j < nu.size(); ++j) {
      lo[k] = std::min(lo[k], nu.point(j)[k]);
      hi[k] = std::max(hi[k], nu.point(j)[k]);
    }
  }
  auto value = [&](const std::vector<double>& c) {
    if (p.is_infinite()) {
      double mx = 0.0;
      for (int j = 0; j < nu.size(); ++j)
        mx = std::max(mx, norm.distance(nu.point(j), c));
      return mx;
    }
    double s = 0.0;
    for (int j = 0; j < nu.size(); ++j)
      s += nu.weight(j) * std::pow(norm.distance(nu.point(j), c), p.value);
    return std::pow(s, 1.0 / p.value);
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_c(d), c(d);
  // Atoms are cusps of the objective below index 1, so they are candidates
  // alongside the grid.
  double atom_best = best;
  for (int j = 0; j < nu.size(); ++j)
    atom_best = std::min(
        atom_best, value({nu.point(j).begin(), nu.point(j).end()}));
  for (int level = 0; level < levels; ++level) {
    std::vector<double> step(d);
    for (int k = 0; k < d; ++k) step[k] = (hi[k] - lo[k]) / cells;
    const int ny = d == 2 ? cells : 0;
    for (int ix = 0; ix <= cells; ++ix) {
      for (int iy = 0; iy <= ny; ++iy) {
        c[0] = lo[0] + ix * step[0];
        if (d == 2) c[1] = lo[1] + iy * step[1];
        double v = value(c);
        if (v < best) {
          best = v;
          best_c = c;
        }
      }
    }
    for (int k = 0; k < d; ++k) {
      double half = std::max(2.0 * step[k], 1e-300);
      lo[k] = best_c[k] - half;
      hi[k] = best_c[k] + half;
    }
  }
  return std::min(best, atom_best);
}

double grid_supremum(double (*objective)(double, double, double), double rho,
                     int cells, int passes) {
  double s_lo = 1e-6, s_hi = 1.0 - 1e-6, a_lo = 0.0, a_hi = std::numbers::pi;
  double best = -std::numeric_limits<double>::infinity();
  double best_s = 0.5, best_a = 0.0;
  for (int pass = 0; pass < passes; ++pass) {
    const double ds = (s_hi - s_lo) / cells, da = (a_hi - a_lo) / cells;
    for (int i = 0; i <= cells; ++i) {
      double s = s_lo + i * ds;
      double r = s / (1.0 - s);
      for (int k = 0; k <= cells; ++k) {
        double ang = a_lo + k * da;
        double v = objective(1.0 + r * std::cos(ang), r * std::sin(ang), rho);
        if (v > best) {
          best = v;
          best_s = s;
          best_a = ang;
        }
      }
    }
    s_lo = std::max(1e-6, best_s - 2 * ds);
    s_hi = std::min(1.0 - 1e-6, best_s + 2 * ds);
    a_lo = std::max(0.0, best_a - 2 * da);
    a_hi = std::min(std::numbers::pi, best_a + 2 * da);
  }
  return best;
}

InstancePair random_spread_pair(std::mt19937_64& gen, int dim,
                                int max_mu_atoms, int max_nu_atoms) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  const int k = std::uniform_int_distribution<int>(
      1, std::min(max_mu_atoms, max_nu_atoms - 1))(gen);
  std::vector<std::vector<double>> xs(k, std::vector<double>(dim));
  std::vector<double> ws(k);
  for (int i = 0; i < k; ++i) {
    for (double& c : xs[i]) c = normal(gen);
    ws[i] = unit(gen);
  }
  // Pieces per atom: at least one atom split, total within max_nu_atoms.
  std::vector<int> pieces(k, 1);
  int budget = max_nu_atoms - k;
  int first = std::uniform_int_distribution<int>(0, k - 1)(gen);
  for (int t = 0; t < k && budget > 0; ++t) {
    int i = (first + t) % k;
    int extra = std::uniform_int_distribution<int>(t == 0 ? 1 : 0,
                                                   std::min(2, budget))(gen);
    pieces[i] += extra;
    budget -= extra;
  }
  std::vector<std::vector<double>> ys;
  std::vector<double> vs;
  for (int i = 0; i < k; ++i) {
    const int s = pieces[i];
    std::vector<double> lambda(s);
    double total = 0.0;
    for (double& l : lambda) total += (l = unit(gen));
    std::vector<std::vector<double>> disp(s, std::vector<double>(dim));
    std::vector<double> center(dim, 0.0);
    for (int t = 0; t < s; ++t) {
      for (int c = 0; c < dim; ++c) {
        disp[t][c] = s == 1 ? 0.0 : 0.8 * normal(gen);
        center[c] += lambda[t] / total * disp[t][c];
      }
    }
    for (int t = 0; t < s; ++t) {
      std::vector<double> y(dim);
      for (int c = 0; c < dim; ++c) y[c] = xs[i][c] + disp[t][c] - center[c];
      ys.push_back(std::move(y));
      vs.push_back(ws[i] * lambda[t] / total);
    }
  }
  return {DiscreteMeasure::make(xs, ws), DiscreteMeasure::make(ys, vs),
          "spread d=" + std::to_string(dim)};
}

InstancePair random_pair_1d(std::mt19937_64& gen, int max_atoms) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  auto draw = [&]() {
    int k = count(gen);
    std::vector<double> xs(k), ws(k);
    for (int i = 0; i < k; ++i) {
      xs[i] = normal(gen);
      ws[i] = unit(gen);
    }
    return DiscreteMeasure::make_1d(xs, ws);
  };
  DiscreteMeasure mu = draw();
  DiscreteMeasure nu = draw();
  return {std::move(mu), std::move(nu), "random 1d"};
}

}  // namespace mwi::oracle
