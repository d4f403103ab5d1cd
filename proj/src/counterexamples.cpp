#include "mwi/counterexamples.hpp"

#include <cmath>
#include <numbers>

#include "mwi/errors.hpp"

namespace mwi {

FamilyParams FamilyParams::with_alpha(int n, double alpha, double rho,
                                      ExtendedIndex q, double theta) {
  FamilyParams p;
  p.n = n;
  p.alpha = alpha;
  p.z = std::pow(static_cast<double>(n), -alpha);
  p.rho = rho;
  p.q = q;
  p.theta = theta;
  return p;
}

void FamilyParams::validate() const {
  if (n < 2) throw InvalidArgument("family requires n >= 2");
  if (!(z > 0.0) || std::isinf(z)) throw InvalidArgument("family requires z > 0");
  if (alpha && !(*alpha >= 0.0 && *alpha < 1.0))
    throw InvalidArgument("alpha must lie in [0, 1)");
  if (!(rho >= 1.0)) throw InvalidArgument("rho must be >= 1");
  if (!(q.value >= 1.0)) throw InvalidArgument("q must be >= 1");
}

Family family_1d(int n, double z) {
  FamilyParams params;
  params.n = n;
  params.z = z;
  params.validate();
  std::vector<Coupling::PointPair> pairs;
  auto add = [&](double x, double y, double w) {
    pairs.push_back({{x}, {y}, w});
  };
  // Unnormalized weights; from_pairs divides by the total 2((n-1)z + 1).
  add(1.0, 1.0 - z, 1.0);
  add(1.0, 2.0, z);
  add(n, n - 1.0, z);
  add(n, n + z, 1.0);
  for (int i = 2; i <= n - 1; ++i) {
    add(i, i - 1.0, z);
    add(i, i + 1.0, z);
  }
  Coupling c = Coupling::from_pairs(pairs);
  DiscreteMeasure mu = c.source();
  DiscreteMeasure nu = c.target();
  return {std::move(mu), std::move(nu), std::move(c)};
}

Family family_2d_rotated_z(int n, double z, double theta) {
  FamilyParams params;
  params.n = n;
  params.z = z;
  params.validate();
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw InvalidArgument("theta must lie in (0, pi)");
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<Coupling::PointPair> pairs;
  auto add = [&](double x, double dx, double dy, double w) {
    pairs.push_back({{x, 0.0}, {x + dx, dy}, w});
  };
  add(1.0, -z * c, -z * s, 1.0);
  add(1.0, c, s, z);
  add(n, -c, -s, z);
  add(n, z * c, z * s, 1.0);
  for (int i = 2; i <= n - 1; ++i) {
    add(i, -c, -s, z);
    add(i, c, s, z);
  }
  Coupling cp = Coupling::from_pairs(pairs);
  DiscreteMeasure mu = cp.source();
  DiscreteMeasure nu = cp.target();
  return {std::move(mu), std::move(nu), std::move(cp)};
}

Family family_2d_rotated(int n, double alpha, double theta) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie in [0, 1)");
  return family_2d_rotated_z(n, std::pow(static_cast<double>(n), -alpha),
                             theta);
}

double family_sigma_pow(int n, double z, double p) {
  if (!(p > 0.0)) throw InvalidArgument("moment index must be positive");
  const double mass = (n - 1) * z + 1.0;
  double inner = 0.0;
  for (int i = 2; i <= (n + 1) / 2; ++i) inner += std::pow(n + 1.0 - 2.0 * i, p);
  return (std::pow(n - 1.0 + 2.0 * z, p) + z * std::pow(n - 1.0, p) +
          2.0 * z * inner) /
         (std::pow(2.0, p) * mass);
}

double family_sigma(int n, double z, ExtendedIndex p) {
  if (p.is_infinite()) return (n - 1.0 + 2.0 * z) / 2.0;
  return std::pow(family_sigma_pow(n, z, p.value), 1.0 / p.value);
}

double family_w(int n, double z, ExtendedIndex q) {
  if (q.is_infinite()) return z;
  return std::pow(std::pow(z, q.value) / ((n - 1) * z + 1.0), 1.0 / q.value);
}

double family_ratio(int n, double z, double rho, ExtendedIndex q) {
  const double mass = (n - 1) * z + 1.0;
  const double numerator = ((n - 1) * z + std::pow(z, rho)) / mass;
  double sigma_factor = 1.0;
  if (rho != 1.0) {
    ExtendedIndex index =
        q.value == 1.0 ? ExtendedIndex::infinity()
        : q.is_infinite()
            ? ExtendedIndex{rho - 1.0}
            : ExtendedIndex{q.value * (rho - 1.0) / (q.value - 1.0)};
    sigma_factor = std::pow(family_sigma(n, z, index), rho - 1.0);
  }
  return numerator / (family_w(n, z, q) * sigma_factor);
}

ClosedForms closed_forms(const FamilyParams& params) {
  params.validate();
  const int n = params.n;
  const double z = params.z;
  const double rho = params.rho;
  const double mass = (n - 1) * z + 1.0;
  ClosedForms cf;
  cf.coupling_cost = ((n - 1) * z + std::pow(z, rho)) / mass;
  cf.w_rho_pow = std::pow(z, rho) / mass;
  cf.w_inf = z;
  cf.sigma_inf = (n - 1.0 + 2.0 * z) / 2.0;
  cf.sigma_rho_pow = family_sigma_pow(n, z, rho);
  Asymptotics a = asymptotics(rho, params.q, params.alpha.value_or(0.0));
  cf.predicted_prefactor = a.prefactor;
  cf.predicted_exponent = a.exponent;
  return cf;
}

Asymptotics asymptotics(double rho, ExtendedIndex q, double alpha) {
  if (!(rho >= 1.0)) throw InvalidArgument("rho must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie in [0, 1)");
  if (!(q.value >= 1.0)) throw InvalidArgument("q must be >= 1");
  // Limits of (q-1)/q, 1/q and q(rho-1)/(q-1) at q = 1 and q = inf.
  double conj_weight, inv_q, index;
  if (q.is_infinite()) {
    conj_weight = 1.0;
    inv_q = 0.0;
    index = rho - 1.0;
  } else {
    conj_weight = (q.value - 1.0) / q.value;
    inv_q = 1.0 / q.value;
    index = q.value == 1.0 ? 0.0 : q.value * (rho - 1.0) / (q.value - 1.0);
  }
  // (1 + index)^{(q-1)/q} is 1 by convention at q = 1.
  double moment_factor =
      q.value == 1.0 ? 1.0 : std::pow(1.0 + index, conj_weight);
  return {std::pow(2.0, rho - 1.0) * moment_factor,
          conj_weight * alpha + inv_q + 1.0 - rho};
}

double loglog_slope(std::span<const double> ns, std::span<const double> values) {
  if (ns.size() != values.size() || ns.size() < 2)
    throw InvalidArgument("slope fit needs at least two matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(ns.size());
  for (size_t t = 0; t < ns.size(); ++t) {
    double x = std::log(ns[t]), y = std::log(values[t]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace mwi
