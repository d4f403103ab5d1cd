#pragma once

#include <random>

#include "mwi/inequality.hpp"

// Brute-force references used only for verification. None of these call the
// simplex engine.
namespace mwi::oracle {

struct VertexExtrema {
  bool feasible = false;
  double min_cost = 0.0;
  double max_cost = 0.0;
  int vertices = 0;
};

// Extremes of sum pi_ij |x_i - y_j|^rho over the martingale transport
// polytope by enumerating all basic feasible solutions. The dense constraint
// matrix is assembled here from scratch. Intended for <= 6 support points.
VertexExtrema martingale_vertex_extrema(const DiscreteMeasure& mu,
                                        const DiscreteMeasure& nu, double rho,
                                        const Norm& norm);

// Coarse-to-fine grid search of inf_c (sum w |y - c|^p)^{1/p} (p finite) or
// inf_c max |y - c| over the bounding box of the support (dim <= 2), with
// the atoms themselves as extra candidates.
double central_moment_grid(const DiscreteMeasure& nu, ExtendedIndex p,
                           const Norm& norm, int cells = 200, int levels = 6);

// Dense grid over the compactified (mapped radius, angle) domain, with
// `passes` zoomed re-grids around the best cell. No local optimizer.
double grid_supremum(double (*objective)(double, double, double), double rho,
                     int cells, int passes);

// ---------------------------------------------------------------------------
// Random instance generators shared by the acceptance criteria.

// mu with 1..max_mu_atoms atoms; nu obtained by splitting every atom into at
// most `pieces` atoms with a mean-zero displacement (a martingale step), so
// mu <=_cx nu by construction. At least one atom is split; nu has at most
// max_nu_atoms atoms.
InstancePair random_spread_pair(std::mt19937_64& gen, int dim,
                                int max_mu_atoms, int max_nu_atoms);

// Unrelated random 1D measures with 1..max_atoms atoms each.
InstancePair random_pair_1d(std::mt19937_64& gen, int max_atoms);

}  // namespace mwi::oracle
