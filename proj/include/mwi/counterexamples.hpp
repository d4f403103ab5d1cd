#pragma once

#include <optional>
#include <span>

#include "mwi/measures.hpp"
#include "mwi/transport.hpp"

namespace mwi {

// Parameters of the blow-up families. z is always set; when alpha is given,
// z = n^{-alpha}. theta only matters for the rotated 2D family.
struct FamilyParams {
  int n = 2;
  double z = 1.0;
  std::optional<double> alpha;
  double theta = 0.0;
  double rho = 1.0;
  ExtendedIndex q = {1.0};

  static FamilyParams with_alpha(int n, double alpha, double rho,
                                 ExtendedIndex q, double theta = 0.0);
  void validate() const;
};

// One-dimensional family on the integer grid {1, ..., n} spread to
// {1 - z, 1, ..., n, n + z}, with the explicit martingale coupling that sends
// the end atoms outward by z and every other atom to its two neighbours.
struct Family {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
  Coupling coupling;
};

Family family_1d(int n, double z);

// Rotated planar version: atoms (i, 0) move along +-(cos theta, sin theta)
// with unit steps, end atoms additionally by z = n^{-alpha}. The target is the
// second marginal of the coupling, whose martingale set is a singleton.
Family family_2d_rotated(int n, double alpha, double theta);
Family family_2d_rotated_z(int n, double z, double theta);

struct ClosedForms {
  double coupling_cost;   // ((n-1) z + z^rho) / ((n-1) z + 1)
  double w_rho_pow;       // z^rho / ((n-1) z + 1)
  double w_inf;           // z
  double sigma_inf;       // (n - 1 + 2z) / 2
  double sigma_rho_pow;   // centered floor-sum formula at index rho
  double predicted_prefactor;
  double predicted_exponent;
};

ClosedForms closed_forms(const FamilyParams& params);

// p-th power central moment of nu_{n,z} about the midpoint (n + 1) / 2, for
// any p > 0. For p >= 1 the midpoint is the minimizer (symmetric convex
// objective), so this equals sigma_p^p.
double family_sigma_pow(int n, double z, double p);
// sigma_p(nu_{n,z}) for p in (0, inf].
double family_sigma(int n, double z, ExtendedIndex p);
// W_q(mu_{n,z}, nu_{n,z}) via the comonotone coupling formula.
double family_w(int n, double z, ExtendedIndex q);
// coupling_cost / (W_q sigma^{rho-1}) with the q in {1, inf} and rho = 1
// conventions; this is the quantity whose growth in n is predicted.
double family_ratio(int n, double z, double rho, ExtendedIndex q);

struct Asymptotics {
  double prefactor;
  double exponent;
};

// ratio ~ prefactor * n^exponent for z = n^{-alpha}:
// 2^{rho-1} (1 + q(rho-1)/(q-1))^{(q-1)/q} n^{(q-1)/q alpha + 1/q + 1 - rho}.
Asymptotics asymptotics(double rho, ExtendedIndex q, double alpha);

// Least-squares slope of log(values) against log(ns).
double loglog_slope(std::span<const double> ns, std::span<const double> values);

}  // namespace mwi
