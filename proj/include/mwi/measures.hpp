#pragma once

#include <span>
#include <vector>

#include "mwi/norm.hpp"

namespace mwi {

// Finitely supported probability measure on R^d.
//
// Atoms are stored sorted lexicographically, with duplicates (equal within
// kMergeTolerance per coordinate) merged and zero-weight atoms dropped.
// Weights are strictly positive and sum to one. Instances are immutable.
class DiscreteMeasure {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  // points are given row by row (points.size() == weights.size()), each of
  // the same length. Weights are rescaled to sum to one.
  static DiscreteMeasure make(const std::vector<std::vector<double>>& points,
                              const std::vector<double>& weights);
  // 1D convenience overload.
  static DiscreteMeasure make_1d(const std::vector<double>& points,
                                 const std::vector<double>& weights);
  static DiscreteMeasure dirac(std::vector<double> point);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(weights_.size()); }
  std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<size_t>(i) * dim_,
            static_cast<size_t>(dim_)};
  }
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  // Row-major coordinates, size() * dim() entries.
  const std::vector<double>& coords() const { return coords_; }

  // Index of the atom equal to p (within kMergeTolerance), or -1.
  int find(std::span<const double> p) const;

  // Same atoms and weights within tol.
  bool approx_equal(const DiscreteMeasure& other, double tol = 1e-12) const;

  DiscreteMeasure translated(std::span<const double> shift) const;
  DiscreteMeasure scaled(double factor) const;

 private:
  DiscreteMeasure() = default;

  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

std::vector<double> mean(const DiscreteMeasure& mu);

// Sum of w_i * |x_i|^p (the raw p-th moment about the origin).
double raw_moment(const DiscreteMeasure& mu, double p, const Norm& norm);

struct CentralMomentOptions {
  // Stopping size of the simplex descent, relative to the support diameter.
  double step_tol = 1e-10;
  int max_evaluations = 200000;
};

// sigma_p(nu) = inf_c (sum_j w_j |y_j - c|^p)^{1/p}, and for p = inf the
// Chebyshev radius inf_c max_j |y_j - c|. For indices in (0, 1) the
// objective is not convex; the center returned is the best of the atoms and
// of local descents from the mean and the median.
double central_moment(const DiscreteMeasure& nu, ExtendedIndex p,
                      const Norm& norm, const CentralMomentOptions& opts = {});

// A minimizing center for central_moment.
std::vector<double> central_moment_center(const DiscreteMeasure& nu,
                                          ExtendedIndex p, const Norm& norm,
                                          const CentralMomentOptions& opts = {});

// Image of a 1D measure under x -> (x, 0, ..., 0).
DiscreteMeasure embed_1d(const DiscreteMeasure& mu, int dim);

}  // namespace mwi
