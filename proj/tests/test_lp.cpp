#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mwi/errors.hpp"
#include "mwi/lp.hpp"

using namespace mwi::lp;

namespace {

void add(LinearProgram& lp, double cost, std::vector<int> rows,
         std::vector<double> vals) {
  lp.add_column(cost, rows, vals);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Balanced transportation problem with the last demand row dropped.
LinearProgram transportation(const std::vector<double>& supply,
                             const std::vector<double>& demand,
                             const std::vector<double>& cost) {
  const int n = supply.size(), m = demand.size();
  LinearProgram lp(n + m - 1);
  for (int i = 0; i < n; ++i) lp.set_rhs(i, supply[i]);
  for (int j = 0; j + 1 < m; ++j) lp.set_rhs(n + j, demand[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (j + 1 < m)
        add(lp, cost[i * m + j], {i, n + j}, {1.0, 1.0});
      else
        add(lp, cost[i * m + j], {i}, {1.0});
    }
  return lp;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("small optimal, unbounded and infeasible programs") {
  LinearProgram a(1);
  add(a, 1.0, {0}, {1.0});
  add(a, 1.0, {0}, {1.0});
  a.set_rhs(0, 1.0);
  auto sa = solve(a);
  CHECK(sa.optimal());
  CHECK(sa.objective_value == doctest::Approx(1.0));

  LinearProgram b(1);
  add(b, -1.0, {0}, {1.0});
  add(b, 0.0, {0}, {-1.0});
  CHECK(solve(b).status == Status::kUnbounded);

  LinearProgram c(2);
  add(c, 0.0, {0, 1}, {1.0, 1.0});
  c.set_rhs(0, 1.0);
  c.set_rhs(1, 2.0);
  CHECK_FALSE(feasible(c));
  CHECK(solve(c).status == Status::kInfeasible);
  CHECK(feasible(a));

  LinearProgram d(1);
  add(d, 1.0, {0}, {1.0});
  d.set_rhs(0, 1.0);
  auto sd = solve(d);
  CHECK(sd.objective_value == 1.0);
  CHECK(sd.x[0] == 1.0);
}

TEST_CASE("negative right-hand sides and maximization") {
  // max x1 + 2 x2 s.t. -x1 - x2 - s = -4, x2 + t = 3
  LinearProgram lp(2, Sense::kMaximize);
  add(lp, 1.0, {0}, {-1.0});
  add(lp, 2.0, {0, 1}, {-1.0, 1.0});
  add(lp, 0.0, {0}, {-1.0});
  add(lp, 0.0, {1}, {1.0});
  lp.set_rhs(0, -4.0);
  lp.set_rhs(1, 3.0);
  auto s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective_value == doctest::Approx(7.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(3.0));
}

TEST_CASE("cycling example terminates under both pricing modes") {
  // Chvatal's cycling example: max 10x1 - 57x2 - 9x3 - 24x4 under
  // 0.5x1 - 5.5x2 - 2.5x3 + 9x4 <= 0, 0.5x1 - 1.5x2 - 0.5x3 + x4 <= 0,
  // x1 <= 1, written as a minimization with slacks. Optimum -1.
  LinearProgram lp(3);
  add(lp, -10.0, {0, 1, 2}, {0.5, 0.5, 1.0});
  add(lp, 57.0, {0, 1}, {-5.5, -1.5});
  add(lp, 9.0, {0, 1}, {-2.5, -0.5});
  add(lp, 24.0, {0, 1}, {9.0, 1.0});
  add(lp, 0.0, {0}, {1.0});
  add(lp, 0.0, {1}, {1.0});
  add(lp, 0.0, {2}, {1.0});
  lp.set_rhs(2, 1.0);
  for (bool bland : {false, true}) {
    Options opts;
    opts.bland_only = bland;
    opts.bland_after_degenerate = 1;
    auto s = solve(lp, opts);
    REQUIRE(s.optimal());
    CHECK(s.objective_value == doctest::Approx(-1.0));
  }
}

TEST_CASE("degenerate assignment instance") {
  const int n = 6;
  std::vector<double> cost(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[i * n + j] = std::abs(i - j) % 3;
  auto lp = transportation(std::vector<double>(n, 1.0),
                           std::vector<double>(n, 1.0), cost);
  Options opts;
  opts.bland_only = true;
  auto s = solve(lp, opts);
  REQUIRE(s.optimal());
  CHECK(s.objective_value == doctest::Approx(0.0));
  auto s2 = solve(lp);
  REQUIRE(s2.optimal());
  CHECK(s2.objective_value == doctest::Approx(0.0));
}

TEST_CASE("single-cell transport") {
  auto lp = transportation({1.0}, {1.0}, {1.0});
  auto s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective_value == 1.0);
}

TEST_CASE("random transportation problems") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int k = 0; k < 30; ++k) {
    int n = 2 + k % 5, m = 2 + (k / 2) % 6;
    std::vector<double> supply(n), demand(m), cost(n * m);
    double ts = 0.0, td = 0.0;
    for (double& s : supply) ts += s = u(gen);
    for (double& d : demand) td += d = u(gen);
    for (double& d : demand) d *= ts / td;
    for (double& c : cost) c = u(gen);
    auto lp = transportation(supply, demand, cost);
    auto lo = solve(lp);
    REQUIRE(lo.optimal());
    CHECK(lo.objective_value ==
          doctest::Approx(dot(lp.cost(), lo.x)).epsilon(1e-9));
    CHECK(lo.primal_residual <= 1e-9);
    // Reduced costs are nonnegative at a minimizer.
    for (int j = 0; j < lp.num_cols(); ++j) {
      double d = lp.cost()[j];
      for (int e = lp.col_start()[j]; e < lp.col_start()[j + 1]; ++e)
        d -= lo.duals[lp.row_index()[e]] * lp.values()[e];
      CHECK(d >= -1e-9);
    }
    lp.set_sense(Sense::kMaximize);
    auto hi = solve(lp);
    REQUIRE(hi.optimal());
    CHECK(lo.objective_value <= hi.objective_value + 1e-12);
  }
}

TEST_CASE("iteration limit and argument checks") {
  auto lp = transportation({0.5, 0.5}, {0.5, 0.5}, {1.0, 2.0, 3.0, 4.0});
  Options opts;
  opts.max_iterations = 1;
  CHECK(solve(lp, opts).status == Status::kIterationLimit);
  LinearProgram bad(1);
  std::vector<int> rows{3};
  std::vector<double> vals{1.0};
  CHECK_THROWS_AS(bad.add_column(0.0, rows, vals), mwi::InvalidArgument);
  CHECK(std::string(to_string(Status::kUnbounded)) == "unbounded");
  CHECK(bad.debug_dump().find("rows 1") != std::string::npos);
}

}
