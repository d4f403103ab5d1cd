#pragma once

#include <utility>
#include <vector>

#include "mwi/lp.hpp"
#include "mwi/measures.hpp"

namespace mwi {

struct CouplingEntry {
  int i;  // atom index in the source measure
  int j;  // atom index in the target measure
  double w;
};

enum class CouplingSource { kLp, kComonotone, kExplicit };

const char* to_string(CouplingSource source);

// Sparse joint weights over (source atom, target atom) pairs. The marginals are
// carried along so the coupling is self-describing.
class Coupling {
 public:
  // Checks indices, nonnegativity and that the marginals match within tol.
  Coupling(DiscreteMeasure source, DiscreteMeasure target,
           std::vector<CouplingEntry> entries, CouplingSource origin,
           double tol = 1e-9);

  // Builds a coupling from weighted point pairs; the marginals are whatever
  // the pairs induce (weights are normalized to total mass one).
  struct PointPair {
    std::vector<double> x;
    std::vector<double> y;
    double w;
  };
  static Coupling from_pairs(const std::vector<PointPair>& pairs);

  const DiscreteMeasure& source() const { return source_; }
  const DiscreteMeasure& target() const { return target_; }
  const std::vector<CouplingEntry>& entries() const { return entries_; }
  CouplingSource origin() const { return origin_; }

  // sum w_ij |x_i - y_j|^q.
  double cost(double q, const Norm& norm) const;
  // Largest |x_i - y_j| over entries with positive weight.
  double max_displacement(const Norm& norm) const;
  // Largest deviation of row/column sums from the marginal weights.
  double marginal_residual() const;

 private:
  DiscreteMeasure source_;
  DiscreteMeasure target_;
  std::vector<CouplingEntry> entries_;
  CouplingSource origin_;
};

struct TransportOptions {
  // Use the LP even in 1D (for cross-validation against the quantile path).
  bool force_lp = false;
  lp::Options lp;
};

struct TransportResult {
  double value;
  Coupling coupling;
};

// |x - y|^q with values below 1e-14 clamped to zero.
double transport_cost(std::span<const double> x, std::span<const double> y,
                      double q, const Norm& norm);

// Transport polytope {pi >= 0 : row sums = mu, column sums = nu} with optional
// per-row barycenter constraints sum_j pi_ij (y_j - x_i) = 0. The total-mass
// row is dropped. cells lists the (i, j) pair of every LP column; a cell is
// omitted when allowed(i, j) is false.
struct CouplingLp {
  lp::LinearProgram program;
  std::vector<std::pair<int, int>> cells;
};

template <typename CostFn, typename AllowedFn>
CouplingLp build_coupling_lp(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, bool martingale,
                             CostFn cost, AllowedFn allowed);

CouplingLp build_coupling_lp(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, bool martingale,
                             const std::vector<double>& costs);

Coupling coupling_from_solution(const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu,
                                const CouplingLp& clp,
                                const std::vector<double>& x);

// Quantile (comonotone) coupling of two 1D measures by a two-pointer sweep.
Coupling comonotone_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// W_inf: smallest support cost t admitting a coupling on {|x_i - y_j| <= t},
// found by binary search over the distinct costs with an LP feasibility test.
TransportResult bottleneck_w_inf(const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, const Norm& norm,
                                 const lp::Options& opts = {});

// W_q for q in [1, inf]. 1D inputs take the comonotone path unless force_lp.
TransportResult wasserstein(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, ExtendedIndex q,
                            const Norm& norm, const TransportOptions& opts = {});

// ---------------------------------------------------------------------------

template <typename CostFn, typename AllowedFn>
CouplingLp build_coupling_lp(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, bool martingale,
                             CostFn cost, AllowedFn allowed) {
  const int n = mu.size(), m = nu.size(), d = mu.dim();
  const int col_rows = m - 1;
  const int rows = n + col_rows + (martingale ? n * d : 0);
  CouplingLp out{lp::LinearProgram(rows), {}};
  for (int i = 0; i < n; ++i) out.program.set_rhs(i, mu.weight(i));
  for (int j = 0; j < col_rows; ++j) out.program.set_rhs(n + j, nu.weight(j));
  std::vector<int> idx;
  std::vector<double> val;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!allowed(i, j)) continue;
      idx.assign({i});
      val.assign({1.0});
      if (j < col_rows) {
        idx.push_back(n + j);
        val.push_back(1.0);
      }
      if (martingale) {
        for (int k = 0; k < d; ++k) {
          double delta = nu.point(j)[k] - mu.point(i)[k];
          if (delta == 0.0) continue;
          idx.push_back(n + col_rows + i * d + k);
          val.push_back(delta);
        }
      }
      out.program.add_column(cost(i, j), idx, val);
      out.cells.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace mwi
