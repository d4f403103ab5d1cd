#pragma once

#include "mwi/measures.hpp"
#include "mwi/transport.hpp"

namespace mwi {

struct MartingaleProblem {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
  double rho = 1.0;
  Norm norm = Norm::euclidean();
};

// Extremal rho-th power costs over the martingale couplings of (mu, nu).
struct MotBounds {
  double lower_cost;  // inf over martingale couplings of sum pi |x - y|^rho
  double upper_cost;  // sup over the same set
  Coupling argmin;
  Coupling argmax;
};

// mu <=_cx nu, decided by feasibility of the martingale transport polytope.
bool check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const lp::Options& opts = {});

// 1D criterion: equal means and k -> sum w (y - k)_+ ordered at every atom.
bool convex_order_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double tol = 1e-9);

// Throws NotInConvexOrder when the martingale polytope is empty.
MotBounds mot_bounds(const MartingaleProblem& problem,
                     const lp::Options& opts = {});

struct MartingaleReport {
  // max_i |sum_j pi_ij (y_j - x_i)| / mu_i, Euclidean.
  double max_residual = 0.0;
  int worst_row = -1;
  bool passed = false;
};

MartingaleReport verify_martingale(const Coupling& coupling,
                                   double tol = 1e-9);

}  // namespace mwi
