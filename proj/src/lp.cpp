#include "mwi/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mwi/errors.hpp"

namespace mwi::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kIterationLimit:
      return "iteration_limit";
    case Status::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

LinearProgram::LinearProgram(int num_rows, Sense sense)
    : sense_(sense), rhs_(static_cast<size_t>(std::max(num_rows, 0)), 0.0) {
  if (num_rows < 0) throw InvalidArgument("negative row count");
}

int LinearProgram::add_column(double cost, std::span<const int> rows,
                              std::span<const double> values) {
  if (rows.size() != values.size())
    throw InvalidArgument("column rows and values differ in length");
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= num_rows())
      throw InvalidArgument("column row index out of range");
    if (values[k] == 0.0) continue;
    row_index_.push_back(rows[k]);
    values_.push_back(values[k]);
  }
  cost_.push_back(cost);
  col_start_.push_back(static_cast<int>(row_index_.size()));
  return num_cols() - 1;
}

std::string LinearProgram::debug_dump() const {
  std::ostringstream os;
  os.precision(12);
  os << (sense_ == Sense::kMinimize ? "minimize" : "maximize") << " rows "
     << num_rows() << " cols " << num_cols() << "\n";
  os << "cost";
  for (double c : cost_) os << "\t" << c;
  os << "\n";
  std::vector<std::vector<std::pair<int, double>>> by_row(num_rows());
  for (int j = 0; j < num_cols(); ++j)
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
      by_row[row_index_[k]].push_back({j, values_[k]});
  for (int i = 0; i < num_rows(); ++i) {
    os << "r" << i;
    for (auto [j, v] : by_row[i]) os << "\t" << j << ":" << v;
    os << "\t= " << rhs_[i] << "\n";
  }
  return os.str();
}

double primal_residual(const LinearProgram& lp, std::span<const double> x) {
  std::vector<double> ax(lp.num_rows(), 0.0);
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (x[j] == 0.0) continue;
    for (int k = lp.col_start()[j]; k < lp.col_start()[j + 1]; ++k)
      ax[lp.row_index()[k]] += lp.values()[k] * x[j];
  }
  double r = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i)
    r = std::max(r, std::abs(ax[i] - lp.rhs()[i]));
  return r;
}

namespace {

enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

// Working state of one solve. Artificial variable i (column n + i) is the
// unit vector e_i of the sign-normalized system, so the initial basis is I.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const Options& opts)
      : lp_(lp),
        opts_(opts),
        m_(lp.num_rows()),
        n_(lp.num_cols()),
        sign_(m_, 1.0),
        b_(m_),
        basis_(m_),
        position_(n_ + m_, -1),
        binv_(Eigen::MatrixXd::Identity(m_, m_)),
        xb_(m_) {
    for (int i = 0; i < m_; ++i) {
      if (lp.rhs()[i] < 0.0) sign_[i] = -1.0;
      b_[i] = sign_[i] * lp.rhs()[i];
      basis_[i] = n_ + i;
      position_[n_ + i] = i;
      xb_[i] = b_[i];
    }
    b_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) b_scale_ = std::max(b_scale_, 1.0 + b_[i]);
    max_iterations_ = opts.max_iterations > 0
                          ? opts.max_iterations
                          : std::max<long>(20000, 50L * (m_ + n_));
    refactor_interval_ = std::max(64, m_);
  }

  bool run_phase1() {
    std::vector<double> cost(n_ + m_, 0.0);
    for (int i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
    Outcome out = iterate(cost);
    if (out == Outcome::kIterationLimit) return false;
    phase1_value_ = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_) phase1_value_ += std::max(0.0, xb_[i]);
    return true;
  }

  bool phase1_feasible() const {
    return phase1_value_ <= opts_.feas_tol * b_scale_;
  }

  // Pivot basic artificials out wherever a structural column can replace
  // them; the rest sit on redundant rows and stay basic at zero.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      int best = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        double alpha = 0.0;
        for (int k = lp_.col_start()[j]; k < lp_.col_start()[j + 1]; ++k)
          alpha += binv_(r, lp_.row_index()[k]) * sign_[lp_.row_index()[k]] *
                   lp_.values()[k];
        if (std::abs(alpha) > best_abs) {
          best_abs = std::abs(alpha);
          best = j;
        }
      }
      if (best < 0) continue;
      Eigen::VectorXd u = column_direction(best);
      pivot(r, best, u, 0.0);
      xb_[r] = 0.0;
    }
    refactor();
  }

  Outcome run_phase2() {
    std::vector<double> cost(n_ + m_, 0.0);
    const double s = lp_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) cost[j] = s * lp_.cost()[j];
    Outcome out = iterate(cost);
    phase2_cost_ = std::move(cost);
    return out;
  }

  long iterations() const { return iterations_; }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    // Basic values at rounding level are reported as exact zeros.
    const double snap = 1e-13 * b_scale_;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_ && xb_[i] > snap) x[basis_[i]] = xb_[i];
    return x;
  }

  std::vector<double> duals() const {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = phase2_cost_[basis_[i]];
    Eigen::VectorXd y = binv_.transpose() * cb;
    const double s = lp_.sense() == Sense::kMaximize ? -1.0 : 1.0;
    std::vector<double> out(m_);
    for (int i = 0; i < m_; ++i) out[i] = s * sign_[i] * y[i];
    return out;
  }

 private:
  double entry_sign(int k) const { return sign_[lp_.row_index()[k]]; }

  Eigen::VectorXd column_direction(int j) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m_);
    if (j >= n_) {
      u = binv_.col(j - n_);
      return u;
    }
    for (int k = lp_.col_start()[j]; k < lp_.col_start()[j + 1]; ++k)
      u.noalias() +=
          binv_.col(lp_.row_index()[k]) * (entry_sign(k) * lp_.values()[k]);
    return u;
  }

  void pivot(int r, int entering, const Eigen::VectorXd& u, double theta) {
    if (theta != 0.0) xb_.noalias() -= theta * u;
    xb_[r] = theta;
    for (int i = 0; i < m_; ++i)
      if (xb_[i] < 0.0 && xb_[i] > -opts_.feas_tol) xb_[i] = 0.0;
    Eigen::RowVectorXd pivot_row = binv_.row(r) / u[r];
    binv_.noalias() -= u * pivot_row;
    binv_.row(r) = pivot_row;
    position_[basis_[r]] = -1;
    basis_[r] = entering;
    position_[entering] = r;
    ++since_refactor_;
  }

  void refactor() {
    if (m_ == 0) return;
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      if (j >= n_) {
        basis_matrix(j - n_, i) = 1.0;
        continue;
      }
      for (int k = lp_.col_start()[j]; k < lp_.col_start()[j + 1]; ++k)
        basis_matrix(lp_.row_index()[k], i) = entry_sign(k) * lp_.values()[k];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    xb_ = binv_ * b_;
    for (int i = 0; i < m_; ++i)
      if (xb_[i] < 0.0 && xb_[i] > -opts_.feas_tol) xb_[i] = 0.0;
    since_refactor_ = 0;
  }

  Outcome iterate(const std::vector<double>& cost) {
    double cost_scale = 1.0;
    for (int j = 0; j < n_; ++j)
      cost_scale = std::max(cost_scale, 1.0 + std::abs(cost[j]));
    const double opt_tol = opts_.opt_tol * cost_scale;
    int degenerate_streak = 0;
    bool bland = opts_.bland_only;
    Eigen::VectorXd cb(m_);
    std::vector<double> reduced(n_);

    while (true) {
      if (since_refactor_ >= refactor_interval_) refactor();
      for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
      Eigen::VectorXd y = binv_.transpose() * cb;

      int entering = -1;
      double most_negative = -opt_tol;
      for (int j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        double d = cost[j];
        for (int k = lp_.col_start()[j]; k < lp_.col_start()[j + 1]; ++k)
          d -= y[lp_.row_index()[k]] * entry_sign(k) * lp_.values()[k];
        if (bland) {
          if (d < -opt_tol) {
            entering = j;
            break;
          }
        } else if (d < most_negative) {
          most_negative = d;
          entering = j;
        }
      }

      if (entering < 0) {
        // Confirm optimality on a freshly factorized basis.
        if (since_refactor_ > 0) {
          refactor();
          continue;
        }
        return Outcome::kOptimal;
      }
      if (iterations_ >= max_iterations_) return Outcome::kIterationLimit;

      Eigen::VectorXd u = column_direction(entering);
      const double u_max = u.cwiseAbs().maxCoeff();
      const double tol = opts_.pivot_tol * std::max(1.0, u_max);
      int leave = bland ? bland_ratio_test(u, tol) : harris_ratio_test(u, tol);
      if (leave < 0) return Outcome::kUnbounded;
      // A small pivot on an updated inverse is where drift starts; redo the
      // step on a fresh factorization first.
      if (std::abs(u[leave]) < 1e-7 * u_max && since_refactor_ > 0) {
        refactor();
        continue;
      }
      const double theta = std::max(0.0, xb_[leave]) / u[leave];

      ++iterations_;
      if (theta * u_max <= 1e-12 * b_scale_) {
        if (++degenerate_streak >= opts_.bland_after_degenerate) bland = true;
      } else {
        degenerate_streak = 0;
        bland = opts_.bland_only;
      }
      pivot(leave, entering, u, theta);
    }
  }

  // Lowest-index rule among the minimum ratios.
  int bland_ratio_test(const Eigen::VectorXd& u, double tol) const {
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      if (u[i] <= tol) continue;
      double ratio = std::max(0.0, xb_[i]) / u[i];
      if (leave < 0 || ratio < theta - 1e-12 * (1.0 + theta) ||
          (ratio <= theta + 1e-12 * (1.0 + theta) &&
           basis_[i] < basis_[leave])) {
        leave = i;
        theta = std::min(theta, ratio);
      }
    }
    return leave;
  }

  // Two-pass Harris test: bound the step with feasibility relaxed by
  // feas_tol, then take the largest pivot among rows within that bound.
  int harris_ratio_test(const Eigen::VectorXd& u, double tol) const {
    double bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i)
      if (u[i] > tol)
        bound = std::min(bound, (std::max(0.0, xb_[i]) + opts_.feas_tol) / u[i]);
    int leave = -1;
    for (int i = 0; i < m_; ++i) {
      if (u[i] <= tol || std::max(0.0, xb_[i]) / u[i] > bound) continue;
      if (leave < 0 || u[i] > u[leave] ||
          (u[i] == u[leave] && basis_[i] < basis_[leave]))
        leave = i;
    }
    return leave;
  }

  const LinearProgram& lp_;
  const Options& opts_;
  int m_, n_;
  std::vector<double> sign_;
  Eigen::VectorXd b_;
  std::vector<int> basis_;
  std::vector<int> position_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  std::vector<double> phase2_cost_;
  double b_scale_ = 1.0;
  double phase1_value_ = 0.0;
  long max_iterations_ = 0;
  long iterations_ = 0;
  int since_refactor_ = 0;
  int refactor_interval_ = 64;
};

}  // namespace

Solution solve(const LinearProgram& lp, const Options& opts) {
  Solution sol;
  Simplex simplex(lp, opts);
  if (!simplex.run_phase1()) {
    sol.status = Status::kIterationLimit;
    sol.iterations = simplex.iterations();
    return sol;
  }
  if (!simplex.phase1_feasible()) {
    sol.status = Status::kInfeasible;
    sol.iterations = simplex.iterations();
    return sol;
  }
  simplex.drive_out_artificials();
  Outcome out = simplex.run_phase2();
  sol.iterations = simplex.iterations();
  if (out == Outcome::kIterationLimit) {
    sol.status = Status::kIterationLimit;
    return sol;
  }
  if (out == Outcome::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }
  sol.x = simplex.primal();
  sol.duals = simplex.duals();
  sol.objective_value = 0.0;
  for (int j = 0; j < lp.num_cols(); ++j)
    sol.objective_value += lp.cost()[j] * sol.x[j];
  sol.primal_residual = primal_residual(lp, sol.x);
  double b_scale = 1.0;
  for (double v : lp.rhs()) b_scale = std::max(b_scale, 1.0 + std::abs(v));
  sol.status = sol.primal_residual <= opts.feas_tol * b_scale
                   ? Status::kOptimal
                   : Status::kNumericalFailure;
  return sol;
}

bool feasible(const LinearProgram& lp, const Options& opts) {
  Simplex simplex(lp, opts);
  if (!simplex.run_phase1())
    throw SolverLimit("phase 1 exceeded the iteration limit");
  return simplex.phase1_feasible();
}

}  // namespace mwi::lp
