#pragma once

#include <cstdint>
#include <vector>

namespace mwi {

// Coordinates of y relative to x != 0: y / |x| = z e + omega e_perp with
// e = x / |x|, so the two-point inequalities reduce to functions of (z, omega).
struct ReducedCoords {
  double z = 1.0;
  double omega = 0.0;
};

// rho - 1 + (z^2 + omega^2)^{rho/2} - rho z. Nonnegative, zero only at (1, 0).
double phi(double z, double omega, double rho);

// ((z-1)^2 + omega^2)^{rho/2} / phi(z, omega).
double kappa_objective(double z, double omega, double rho);

// ((z^2+omega^2)^{rho/2} - 1) / (|(z-1, omega)| (1 + (z^2+omega^2)^{(rho-1)/2})).
double kappa_tilde_objective(double z, double omega, double rho);

enum class SupremumLocation {
  kInterior,
  // Approached as (z, omega) -> (1, 0).
  kBaseLimit,
  // Approached as |(z, omega)| -> infinity.
  kInfinityLimit,
};

const char* to_string(SupremumLocation where);

struct SupremumOptions {
  int radial_cells = 600;
  int angular_cells = 600;
  int refinement_passes = 3;
  // Cells with mapped radius r / (1 + r) below this are excluded.
  double min_mapped_radius = 1e-6;
  double rel_tol = 1e-10;
  // Run the optimizer at rho = 2 instead of returning the exact value 1.
  bool force_numeric = false;
};

struct Supremum {
  double value = 0.0;
  ReducedCoords argmax;
  SupremumLocation where = SupremumLocation::kInterior;
  // Euclidean distance from argmax to (1, 0); +inf for the infinity limit.
  double distance_to_base = 0.0;
  // Best value after the grid and after each refinement pass.
  std::vector<double> pass_values;
  bool converged = true;
  long evaluations = 0;
};

// Optimal constant of |x-y|^rho <= k ((rho-1)|x|^rho + |y|^rho
//                                    - rho |x|^{rho-2} <x, y>).
// Rejects rho < 2.
Supremum kappa(double rho, const SupremumOptions& opts = {});

// Optimal constant of |y|^rho - |x|^rho <= k |y-x| (|x|^{rho-1} + |y|^{rho-1}).
Supremum kappa_tilde(double rho, const SupremumOptions& opts = {});

struct LemmaConstants {
  double rho = 2.0;
  double kappa = 1.0;
  double kappa_tilde = 1.0;
  ReducedCoords kappa_argmax;
  ReducedCoords kappa_tilde_argmax;
  Supremum kappa_detail;
  Supremum kappa_tilde_detail;
  double optimizer_tol = 1e-10;
};

LemmaConstants lemma_constants(double rho, const SupremumOptions& opts = {});

struct PointwiseReport {
  long samples = 0;
  long distance_violations = 0;  // |x-y|^rho inequality
  long growth_violations = 0;    // |y|^rho - |x|^rho inequality
  // Largest (lhs - rhs) / scale seen, over both inequalities.
  double max_violation = 0.0;
  int worst_inequality = 0;  // 1 or 2, 0 if max_violation <= 0
  std::vector<double> worst_x;
  std::vector<double> worst_y;

  bool passed() const {
    return distance_violations == 0 && growth_violations == 0;
  }
};

// Random check of both two-point inequalities in R^d (Euclidean) with the
// given constants. Samples mix Gaussian pairs, near-collinear y ~ x pairs,
// large-magnitude pairs and pairs placed at the reported maximizers.
// Margin: lhs - rhs <= 1e-9 * max(|x|, |y|, |x-y|)^rho.
PointwiseReport verify_pointwise(double rho, int dim, long sample_count,
                                 const LemmaConstants& constants,
                                 std::uint64_t seed);

}  // namespace mwi
