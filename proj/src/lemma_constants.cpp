#include "mwi/lemma_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mwi/errors.hpp"
#include "mwi/nelder_mead.hpp"

namespace mwi {

namespace {

void check_rho(double rho) {
  if (!(rho >= 2.0) || std::isinf(rho))
    throw InvalidArgument("two-point constants require finite rho >= 2");
}

// All objectives are evaluated from dz = z - 1 so that quantities vanishing
// at (1, 0) keep their relative accuracy: t = |v|^2 - 1 = 2 dz + dz^2 + w^2.
double shifted_t(double dz, double omega) {
  return 2.0 * dz + dz * dz + omega * omega;
}

// (1 + t)^{a} - 1.
double pow_minus_one(double t, double a) {
  if (t <= -1.0) return -1.0;
  return std::expm1(a * std::log1p(t));
}

double phi_shifted(double dz, double omega, double rho) {
  return pow_minus_one(shifted_t(dz, omega), rho / 2.0) - rho * dz;
}

double kappa_shifted(double dz, double omega, double rho) {
  double r2 = dz * dz + omega * omega;
  if (r2 == 0.0) return 0.0;
  double f = phi_shifted(dz, omega, rho);
  if (!(f > 0.0)) return 0.0;
  return std::pow(r2, rho / 2.0) / f;
}

double kappa_tilde_shifted(double dz, double omega, double rho) {
  double r2 = dz * dz + omega * omega;
  if (r2 == 0.0) return rho / 2.0;
  double t = shifted_t(dz, omega);
  double num = pow_minus_one(t, rho / 2.0);
  double den = std::sqrt(r2) * (2.0 + pow_minus_one(t, (rho - 1.0) / 2.0));
  return num / den;
}

using Objective = double (*)(double, double, double);

Supremum maximize(Objective f, double rho, double base_limit,
                  const SupremumOptions& opts) {
  Supremum sup;
  // Compactified polar grid about (1, 0): s = r / (1 + r), angle in [0, pi].
  const double s_lo = opts.min_mapped_radius;
  const double s_hi = 1.0 - opts.min_mapped_radius;
  double best = -std::numeric_limits<double>::infinity();
  double best_dz = 0.0, best_w = 0.0;
  for (int a = 0; a <= opts.angular_cells; ++a) {
    double angle = std::numbers::pi * a / opts.angular_cells;
    double ca = std::cos(angle), sa = std::sin(angle);
    for (int k = 0; k <= opts.radial_cells; ++k) {
      double s = s_lo + (s_hi - s_lo) * k / opts.radial_cells;
      double r = s / (1.0 - s);
      double dz = r * ca, w = r * sa;
      double v = f(dz, w, rho);
      ++sup.evaluations;
      if (v > best) {
        best = v;
        best_dz = dz;
        best_w = w;
      }
    }
  }
  sup.pass_values.push_back(best);

  // Local refinement on the negated objective; omega enters through |omega|.
  double step = 0.05 * std::max(std::hypot(best_dz, best_w), 1e-3);
  sup.converged = false;
  for (int pass = 0; pass < opts.refinement_passes; ++pass) {
    NelderMeadOptions nm;
    nm.initial_step = step;
    nm.step_tol = 1e-12 * std::max(1.0, std::hypot(best_dz, best_w));
    nm.max_evaluations = 20000;
    auto neg = [&](const std::vector<double>& p) {
      return -f(p[0], std::abs(p[1]), rho);
    };
    NelderMeadResult res = nelder_mead(neg, {best_dz, best_w}, nm);
    sup.evaluations += res.evaluations;
    double previous = best;
    if (-res.value > best) {
      best = -res.value;
      best_dz = res.x[0];
      best_w = std::abs(res.x[1]);
    }
    sup.pass_values.push_back(best);
    if (std::abs(best - previous) <= opts.rel_tol * std::abs(best)) {
      sup.converged = true;
      break;
    }
    step *= 0.1;
  }

  sup.value = best;
  sup.argmax = {1.0 + best_dz, best_w};
  sup.where = SupremumLocation::kInterior;
  sup.distance_to_base = std::hypot(best_dz, best_w);
  // Both objectives tend to 1 at infinity; the base-point limit is supplied
  // by the caller. A limit wins only if it beats every sampled value.
  if (1.0 > sup.value) {
    sup.value = 1.0;
    sup.where = SupremumLocation::kInfinityLimit;
    sup.argmax = {std::numeric_limits<double>::infinity(), 0.0};
    sup.distance_to_base = std::numeric_limits<double>::infinity();
  }
  // Sampled values within rounding of the base limit are the limit itself,
  // seen from just outside the excluded disc.
  if (base_limit >= sup.value * (1.0 - 1e-9)) {
    sup.value = std::max(sup.value, base_limit);
    sup.where = SupremumLocation::kBaseLimit;
    sup.argmax = {1.0, 0.0};
    sup.distance_to_base = 0.0;
  }
  return sup;
}

Supremum exact_one(ReducedCoords at, SupremumLocation where) {
  Supremum sup;
  sup.value = 1.0;
  sup.argmax = at;
  sup.where = where;
  sup.distance_to_base = std::hypot(at.z - 1.0, at.omega);
  sup.pass_values = {1.0};
  return sup;
}

}  // namespace

const char* to_string(SupremumLocation where) {
  switch (where) {
    case SupremumLocation::kInterior:
      return "interior";
    case SupremumLocation::kBaseLimit:
      return "base_limit";
    case SupremumLocation::kInfinityLimit:
      return "infinity_limit";
  }
  return "unknown";
}

double phi(double z, double omega, double rho) {
  return phi_shifted(z - 1.0, omega, rho);
}

double kappa_objective(double z, double omega, double rho) {
  return kappa_shifted(z - 1.0, std::abs(omega), rho);
}

double kappa_tilde_objective(double z, double omega, double rho) {
  return kappa_tilde_shifted(z - 1.0, std::abs(omega), rho);
}

Supremum kappa(double rho, const SupremumOptions& opts) {
  check_rho(rho);
  // At rho = 2 the inequality is an identity: every (z, omega) attains 1.
  if (rho == 2.0 && !opts.force_numeric)
    return exact_one({0.0, 0.0}, SupremumLocation::kInterior);
  return maximize(kappa_shifted, rho, 0.0, opts);
}

Supremum kappa_tilde(double rho, const SupremumOptions& opts) {
  check_rho(rho);
  if (rho == 2.0 && !opts.force_numeric)
    return exact_one({1.0, 0.0}, SupremumLocation::kBaseLimit);
  // limsup at (1, 0) along omega = 0, z -> 1+ equals rho / 2.
  return maximize(kappa_tilde_shifted, rho, rho / 2.0, opts);
}

LemmaConstants lemma_constants(double rho, const SupremumOptions& opts) {
  LemmaConstants c;
  c.rho = rho;
  c.kappa_detail = kappa(rho, opts);
  c.kappa_tilde_detail = kappa_tilde(rho, opts);
  c.kappa = c.kappa_detail.value;
  c.kappa_tilde = c.kappa_tilde_detail.value;
  c.kappa_argmax = c.kappa_detail.argmax;
  c.kappa_tilde_argmax = c.kappa_tilde_detail.argmax;
  c.optimizer_tol = opts.rel_tol;
  return c;
}

PointwiseReport verify_pointwise(double rho, int dim, long sample_count,
                                 const LemmaConstants& constants,
                                 std::uint64_t seed) {
  check_rho(rho);
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
  };
  auto gaussian = [&](double scale) {
    std::vector<double> v(dim);
    for (double& a : v) a = scale * normal(gen);
    return v;
  };
  // y = |x| (z e + omega e_perp) for a random unit e_perp orthogonal to x.
  auto from_reduced = [&](const std::vector<double>& x, ReducedCoords rc) {
    double nx = norm2(x);
    std::vector<double> e(dim), perp = gaussian(1.0);
    for (int k = 0; k < dim; ++k) e[k] = x[k] / nx;
    double proj = 0.0;
    for (int k = 0; k < dim; ++k) proj += perp[k] * e[k];
    for (int k = 0; k < dim; ++k) perp[k] -= proj * e[k];
    double np = norm2(perp);
    std::vector<double> y(dim);
    for (int k = 0; k < dim; ++k) {
      double p = (dim > 1 && np > 0.0) ? perp[k] / np : 0.0;
      double w = dim > 1 ? rc.omega : 0.0;
      y[k] = nx * (rc.z * e[k] + w * p);
    }
    return y;
  };
  auto near = [&](const ReducedCoords& c) {
    if (!std::isfinite(c.z)) return ReducedCoords{1.0 + 1e3 * normal(gen), 0.0};
    return ReducedCoords{c.z + 1e-3 * normal(gen),
                         std::abs(c.omega + 1e-3 * normal(gen))};
  };

  PointwiseReport report;
  report.samples = sample_count;
  for (long s = 0; s < sample_count; ++s) {
    std::vector<double> x, y;
    switch (s % 5) {
      case 0:
        x = gaussian(1.0);
        y = gaussian(1.0);
        break;
      case 1: {
        x = gaussian(1.0);
        y = x;
        double eps = std::pow(10.0, -1.0 - 5.0 * unit(gen));
        for (int k = 0; k < dim; ++k) y[k] += eps * normal(gen);
        break;
      }
      case 2:
        x = gaussian(1e3);
        y = gaussian(unit(gen) < 0.5 ? 1e3 : 1.0);
        break;
      case 3:
        x = gaussian(1.0);
        y = from_reduced(x, near(constants.kappa_argmax));
        break;
      default:
        x = gaussian(1.0);
        y = from_reduced(x, near(constants.kappa_tilde_argmax));
        break;
    }
    double nx = norm2(x), ny = norm2(y);
    std::vector<double> diff(dim);
    double dot = 0.0;
    for (int k = 0; k < dim; ++k) {
      diff[k] = x[k] - y[k];
      dot += x[k] * y[k];
    }
    double nd = norm2(diff);
    double scale = std::pow(std::max({nx, ny, nd}), rho);
    if (scale == 0.0) continue;

    double lhs1 = std::pow(nd, rho);
    double rhs1 = constants.kappa *
                  ((rho - 1.0) * std::pow(nx, rho) + std::pow(ny, rho) -
                   rho * std::pow(nx, rho - 2.0) * dot);
    double lhs2 = std::pow(ny, rho) - std::pow(nx, rho);
    double rhs2 = constants.kappa_tilde * nd *
                  (std::pow(nx, rho - 1.0) + std::pow(ny, rho - 1.0));
    double v1 = (lhs1 - rhs1) / scale;
    double v2 = (lhs2 - rhs2) / scale;
    if (v1 > 1e-9) ++report.distance_violations;
    if (v2 > 1e-9) ++report.growth_violations;
    double v = std::max(v1, v2);
    if (report.worst_x.empty() || v > report.max_violation) {
      report.max_violation = v;
      report.worst_inequality = v <= 0.0 ? 0 : (v1 >= v2 ? 1 : 2);
      report.worst_x = x;
      report.worst_y = y;
    }
  }
  return report;
}

}  // namespace mwi
