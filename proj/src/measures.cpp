#include "mwi/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mwi/errors.hpp"
#include "mwi/nelder_mead.hpp"

namespace mwi {

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool close_points(std::span<const double> a, std::span<const double> b,
                  double tol) {
  for (size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

void check_index(ExtendedIndex p) {
  if (!(p.value > 0.0))
    throw InvalidArgument("central moment index must be positive, got " +
                          p.to_string());
}

// Minimum enclosing ball by Welzl's move-to-front recursion. The boundary set
// has at most dim + 1 points; its circumball is found in the affine hull of
// the set by a least-squares solve, which tolerates affinely dependent sets.
class EnclosingBall {
 public:
  EnclosingBall(const DiscreteMeasure& nu)
      : dim_(nu.dim()), points_(nu.size()) {
    for (int i = 0; i < nu.size(); ++i) {
      auto p = nu.point(i);
      points_[i] = Eigen::Map<const Eigen::VectorXd>(p.data(), dim_);
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
  }

  void solve() {
    std::vector<int> boundary;
    recurse(static_cast<int>(order_.size()), boundary);
  }

  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return std::sqrt(std::max(0.0, radius2_)); }

 private:
  bool inside(const Eigen::VectorXd& p) const {
    if (radius2_ < 0.0) return false;
    double d2 = (p - center_).squaredNorm();
    return d2 <= radius2_ * (1.0 + 1e-12) + 1e-24;
  }

  void circumball(const std::vector<int>& boundary) {
    if (boundary.empty()) {
      center_ = Eigen::VectorXd::Zero(dim_);
      radius2_ = -1.0;
      return;
    }
    const Eigen::VectorXd& p0 = points_[boundary[0]];
    const int k = static_cast<int>(boundary.size()) - 1;
    if (k == 0) {
      center_ = p0;
      radius2_ = 0.0;
      return;
    }
    Eigen::MatrixXd q(dim_, k);
    for (int j = 0; j < k; ++j) q.col(j) = points_[boundary[j + 1]] - p0;
    Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
    Eigen::VectorXd rhs = q.colwise().squaredNorm().transpose();
    Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
    center_ = p0 + q * lambda;
    radius2_ = 0.0;
    for (int b : boundary)
      radius2_ = std::max(radius2_, (points_[b] - center_).squaredNorm());
  }

  void recurse(int end, std::vector<int>& boundary) {
    circumball(boundary);
    if (static_cast<int>(boundary.size()) == dim_ + 1) return;
    for (int pos = 0; pos < end; ++pos) {
      int idx = order_[pos];
      if (inside(points_[idx])) continue;
      boundary.push_back(idx);
      recurse(pos, boundary);
      boundary.pop_back();
      // Move to front.
      std::rotate(order_.begin(), order_.begin() + pos,
                  order_.begin() + pos + 1);
    }
  }

  int dim_;
  std::vector<Eigen::VectorXd> points_;
  std::vector<int> order_;
  Eigen::VectorXd center_;
  double radius2_ = -1.0;
};

double weighted_median_1d(const DiscreteMeasure& nu) {
  // Atoms are sorted; the first atom where cumulative weight reaches 1/2.
  double acc = 0.0;
  for (int i = 0; i < nu.size(); ++i) {
    acc += nu.weight(i);
    if (acc >= 0.5 - 1e-15) return nu.point(i)[0];
  }
  return nu.point(nu.size() - 1)[0];
}

double power_objective(const DiscreteMeasure& nu, std::span<const double> c,
                       double p, const Norm& norm) {
  double s = 0.0;
  for (int j = 0; j < nu.size(); ++j)
    s += nu.weight(j) * std::pow(norm.distance(nu.point(j), c), p);
  return s;
}

double max_objective(const DiscreteMeasure& nu, std::span<const double> c,
                     const Norm& norm) {
  double m = 0.0;
  for (int j = 0; j < nu.size(); ++j)
    m = std::max(m, norm.distance(nu.point(j), c));
  return m;
}

// Golden-section search for a convex function on [lo, hi].
double golden_section(const std::function<double(double)>& f, double lo,
                      double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

double support_diameter(const DiscreteMeasure& nu) {
  double diam = 0.0;
  for (int k = 0; k < nu.dim(); ++k) {
    double lo = nu.point(0)[k], hi = lo;
    for (int j = 1; j < nu.size(); ++j) {
      lo = std::min(lo, nu.point(j)[k]);
      hi = std::max(hi, nu.point(j)[k]);
    }
    diam = std::max(diam, hi - lo);
  }
  return diam;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::make(
    const std::vector<std::vector<double>>& points,
    const std::vector<double>& weights) {
  if (points.size() != weights.size())
    throw DimensionMismatch("points and weights have different lengths");
  if (points.empty()) throw InvalidArgument("measure needs at least one atom");
  const size_t dim = points.front().size();
  if (dim == 0) throw DimensionMismatch("points must have positive dimension");
  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].size()) + ", expected " +
                              std::to_string(dim));
    for (double x : points[i])
      if (!std::isfinite(x)) throw InvalidArgument("non-finite coordinate");
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw InvalidArgument("negative or non-finite weight at atom " +
                            std::to_string(i));
    total += weights[i];
  }
  if (!(total > 0.0)) throw InvalidArgument("all weights are zero");

  std::vector<size_t> order;
  for (size_t i = 0; i < points.size(); ++i)
    if (weights[i] > 0.0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return lex_less(points[a], points[b]);
  });

  DiscreteMeasure m;
  m.dim_ = static_cast<int>(dim);
  for (size_t idx : order) {
    std::span<const double> p(points[idx]);
    // Merge with an earlier kept atom whose leading coordinate is within
    // tolerance; sorting keeps such candidates contiguous at the tail.
    int merged = -1;
    for (int j = m.size() - 1; j >= 0; --j) {
      if (p[0] - m.point(j)[0] > kMergeTolerance) break;
      if (close_points(p, m.point(j), kMergeTolerance)) {
        merged = j;
        break;
      }
    }
    if (merged >= 0) {
      m.weights_[merged] += weights[idx];
    } else {
      m.coords_.insert(m.coords_.end(), p.begin(), p.end());
      m.weights_.push_back(weights[idx]);
    }
  }
  for (double& w : m.weights_) w /= total;
  return m;
}

DiscreteMeasure DiscreteMeasure::make_1d(const std::vector<double>& points,
                                         const std::vector<double>& weights) {
  std::vector<std::vector<double>> pts;
  pts.reserve(points.size());
  for (double x : points) pts.push_back({x});
  return make(pts, weights);
}

DiscreteMeasure DiscreteMeasure::dirac(std::vector<double> point) {
  return make({std::move(point)}, {1.0});
}

int DiscreteMeasure::find(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim_) return -1;
  // Binary search on the first coordinate, then scan the tolerance window.
  int lo = 0, hi = size();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (point(mid)[0] < p[0] - kMergeTolerance)
      lo = mid + 1;
    else
      hi = mid;
  }
  for (int i = lo; i < size() && point(i)[0] <= p[0] + kMergeTolerance; ++i)
    if (close_points(point(i), p, kMergeTolerance)) return i;
  return -1;
}

bool DiscreteMeasure::approx_equal(const DiscreteMeasure& other,
                                   double tol) const {
  if (dim_ != other.dim_ || size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (std::abs(weights_[i] - other.weights_[i]) > tol) return false;
    if (!close_points(point(i), other.point(i), tol)) return false;
  }
  return true;
}

DiscreteMeasure DiscreteMeasure::translated(
    std::span<const double> shift) const {
  if (static_cast<int>(shift.size()) != dim_)
    throw DimensionMismatch("shift dimension differs from measure dimension");
  DiscreteMeasure m = *this;
  for (int i = 0; i < size(); ++i)
    for (int k = 0; k < dim_; ++k) m.coords_[i * dim_ + k] += shift[k];
  return m;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  DiscreteMeasure m = *this;
  for (double& x : m.coords_) x *= factor;
  return m;
}

std::vector<double> mean(const DiscreteMeasure& mu) {
  std::vector<double> m(mu.dim(), 0.0);
  for (int i = 0; i < mu.size(); ++i)
    for (int k = 0; k < mu.dim(); ++k) m[k] += mu.weight(i) * mu.point(i)[k];
  return m;
}

double raw_moment(const DiscreteMeasure& mu, double p, const Norm& norm) {
  double s = 0.0;
  for (int i = 0; i < mu.size(); ++i)
    s += mu.weight(i) * std::pow(norm(mu.point(i)), p);
  return s;
}

std::vector<double> central_moment_center(const DiscreteMeasure& nu,
                                          ExtendedIndex p, const Norm& norm,
                                          const CentralMomentOptions& opts) {
  const int dim = nu.dim();
  check_index(p);
  if (nu.size() == 1) {
    auto pt = nu.point(0);
    return {pt.begin(), pt.end()};
  }
  const double diam = support_diameter(nu);

  if (dim == 1) {
    // Every norm on R is |.|.
    double lo = nu.point(0)[0], hi = nu.point(nu.size() - 1)[0];
    if (p.is_infinite()) return {0.5 * (lo + hi)};
    if (p.value == 1.0) return {weighted_median_1d(nu)};
    if (p.value == 2.0) return mean(nu);
    if (p.value < 1.0) {
      // Concave between consecutive atoms: the minimum sits on an atom.
      int best = 0;
      double best_value = std::numeric_limits<double>::infinity();
      for (int j = 0; j < nu.size(); ++j) {
        double v = power_objective(nu, nu.point(j), p.value, norm);
        if (v < best_value) {
          best_value = v;
          best = j;
        }
      }
      return {nu.point(best)[0]};
    }
    double c = golden_section(
        [&](double x) {
          double pt[1] = {x};
          return power_objective(nu, pt, p.value, norm);
        },
        lo, hi, opts.step_tol * std::max(diam, 1.0));
    return {c};
  }

  if (p.is_infinite()) {
    if (norm.kind() == Norm::Kind::kSup) {
      std::vector<double> c(dim);
      for (int k = 0; k < dim; ++k) {
        double lo = nu.point(0)[k], hi = lo;
        for (int j = 1; j < nu.size(); ++j) {
          lo = std::min(lo, nu.point(j)[k]);
          hi = std::max(hi, nu.point(j)[k]);
        }
        c[k] = 0.5 * (lo + hi);
      }
      return c;
    }
    if (norm.is_euclidean()) {
      EnclosingBall ball(nu);
      ball.solve();
      const auto& c = ball.center();
      return {c.data(), c.data() + c.size()};
    }
  } else if (p.value == 2.0 && norm.is_euclidean()) {
    return mean(nu);
  }

  NelderMeadOptions nm;
  nm.initial_step = std::max(diam, 1e-12) * 0.25;
  nm.step_tol = opts.step_tol * std::max(diam, 1e-300);
  nm.max_evaluations = opts.max_evaluations;
  auto objective = [&](const std::vector<double>& c) {
    return p.is_infinite() ? max_objective(nu, c, norm)
                           : power_objective(nu, c, p.value, norm);
  };
  if (p.is_infinite() || p.value >= 1.0)
    return nelder_mead(objective, mean(nu), nm).x;

  // Below index 1 the objective is not convex and every atom is a local
  // minimum. Compare the atoms with descents from the mean and the median.
  std::vector<std::vector<double>> starts{
      mean(nu), central_moment_center(nu, {1.0}, norm, opts)};
  std::vector<double> best;
  double best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> c) {
    double v = objective(c);
    if (v < best_value) {
      best_value = v;
      best = std::move(c);
    }
  };
  for (int j = 0; j < nu.size(); ++j)
    consider({nu.point(j).begin(), nu.point(j).end()});
  for (auto& s0 : starts) consider(nelder_mead(objective, s0, nm).x);
  return best;
}

double central_moment(const DiscreteMeasure& nu, ExtendedIndex p,
                      const Norm& norm, const CentralMomentOptions& opts) {
  std::vector<double> c = central_moment_center(nu, p, norm, opts);
  if (p.is_infinite()) return max_objective(nu, c, norm);
  return std::pow(power_objective(nu, c, p.value, norm), 1.0 / p.value);
}

DiscreteMeasure embed_1d(const DiscreteMeasure& mu, int dim) {
  if (mu.dim() != 1) throw DimensionMismatch("embed_1d expects a 1D measure");
  if (dim < 2) throw InvalidArgument("embedding dimension must be >= 2");
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < mu.size(); ++i) {
    std::vector<double> p(dim, 0.0);
    p[0] = mu.point(i)[0];
    pts.push_back(std::move(p));
  }
  return DiscreteMeasure::make(pts, mu.weights());
}

}  // namespace mwi
