#pragma once

#include <span>
#include <string>
#include <vector>

namespace mwi::lp {

enum class Sense { kMinimize, kMaximize };

enum class Status {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  // Final basis fails the primal residual check after refactorization.
  kNumericalFailure,
};

const char* to_string(Status status);

// min (or max) c^T x  subject to  A x = b,  x >= 0.
//
// Columns are stored sparsely; transport and martingale polytopes have two to
// d + 2 nonzeros per column.
class LinearProgram {
 public:
  explicit LinearProgram(int num_rows, Sense sense = Sense::kMinimize);

  // Returns the new column index. Row indices must be in range.
  int add_column(double cost, std::span<const int> rows,
                 std::span<const double> values);
  void set_rhs(int row, double value) { rhs_.at(row) = value; }
  void set_sense(Sense sense) { sense_ = sense; }

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_cols() const { return static_cast<int>(cost_.size()); }
  Sense sense() const { return sense_; }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& rhs() const { return rhs_; }
  // Column j occupies entries [col_start()[j], col_start()[j + 1]).
  const std::vector<int>& col_start() const { return col_start_; }
  const std::vector<int>& row_index() const { return row_index_; }
  const std::vector<double>& values() const { return values_; }

  // Plain-text table: one line per row with its nonzeros, then costs and b.
  std::string debug_dump() const;

 private:
  Sense sense_;
  std::vector<double> cost_;
  std::vector<double> rhs_;
  std::vector<int> col_start_{0};
  std::vector<int> row_index_;
  std::vector<double> values_;
};

struct Options {
  // Primal feasibility, scaled by 1 + ||b||_inf.
  double feas_tol = 1e-9;
  // Smallest accepted pivot magnitude.
  double pivot_tol = 1e-10;
  // Reduced-cost optimality tolerance, scaled by 1 + ||c||_inf.
  double opt_tol = 1e-11;
  // 0 selects max(20000, 50 * (rows + cols)).
  long max_iterations = 0;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after_degenerate = 50;
  // Use Bland's rule for every pivot.
  bool bland_only = false;
};

struct Solution {
  Status status = Status::kIterationLimit;
  std::vector<double> x;
  double objective_value = 0.0;
  // Row duals for the original sense: c_j - y^T A_j >= 0 for minimization.
  std::vector<double> duals;
  long iterations = 0;
  double primal_residual = 0.0;

  bool optimal() const { return status == Status::kOptimal; }
};

// Two-phase revised simplex.
Solution solve(const LinearProgram& lp, const Options& opts = {});

// Phase 1 only. Throws SolverLimit when the iteration budget runs out.
bool feasible(const LinearProgram& lp, const Options& opts = {});

// ||A x - b||_inf.
double primal_residual(const LinearProgram& lp, std::span<const double> x);

}  // namespace mwi::lp
