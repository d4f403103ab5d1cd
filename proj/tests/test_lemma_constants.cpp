#include <cmath>

#include "doctest.h"
#include "mwi/errors.hpp"
#include "mwi/lemma_constants.hpp"
#include "mwi/verify/oracles.hpp"

using namespace mwi;

TEST_SUITE("lemma_constants") {

TEST_CASE("phi") {
  for (double rho : {2.0, 3.0, 4.5}) {
    CHECK(phi(1.0, 0.0, rho) == doctest::Approx(0.0));
    CHECK(phi(0.0, 0.0, rho) == doctest::Approx(rho - 1.0));
  }
  CHECK(phi(2.0, 0.0, 3.0) == doctest::Approx(4.0));
}

TEST_CASE("objectives are symmetric in omega and have the stated limits") {
  for (double rho : {2.5, 3.0, 4.0}) {
    CHECK(kappa_objective(0.3, 0.7, rho) ==
          doctest::Approx(kappa_objective(0.3, -0.7, rho)));
    CHECK(kappa_tilde_objective(-1.2, 0.4, rho) ==
          doctest::Approx(kappa_tilde_objective(-1.2, -0.4, rho)));
    for (int k = 0; k < 16; ++k) {
      double a = k * 3.14159265358979 / 8;
      double z = 1 + 1e-4 * std::cos(a), w = 1e-4 * std::sin(a);
      CHECK(kappa_objective(z, w, rho) < 0.5);
      double Z = 1 + 1e4 * std::cos(a), W = 1e4 * std::sin(a);
      CHECK(std::abs(kappa_objective(Z, W, rho) - 1.0) <= 1e-2);
    }
  }
}

TEST_CASE("rho = 2 is exact") {
  CHECK(kappa(2.0).value == 1.0);
  CHECK(kappa_tilde(2.0).value == 1.0);
  SupremumOptions opts;
  opts.force_numeric = true;
  opts.radial_cells = opts.angular_cells = 200;
  CHECK(kappa(2.0, opts).value <= 1.0 + 1e-6);
  CHECK(kappa_tilde(2.0, opts).value <= 1.0 + 1e-6);
  CHECK_THROWS_AS(kappa(1.5), InvalidArgument);
  CHECK_THROWS_AS(kappa_tilde(INFINITY), InvalidArgument);
}

TEST_CASE("constants above 2") {
  for (double rho : {2.5, 3.0, 4.0}) {
    auto k = kappa(rho);
    auto kt = kappa_tilde(rho);
    CHECK(k.value >= 1.0);
    CHECK(kt.value >= rho / 2.0 - 1e-12);
    for (size_t i = 1; i < k.pass_values.size(); ++i)
      CHECK(k.pass_values[i] >= k.pass_values[i - 1]);
    for (size_t i = 1; i < kt.pass_values.size(); ++i)
      CHECK(kt.pass_values[i] >= kt.pass_values[i - 1]);
  }
  CHECK(kappa(3.0).value == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(kappa(4.0).value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(kappa_tilde(3.0).where == SupremumLocation::kBaseLimit);
}

TEST_CASE("grid oracle agrees with the optimizer at rho = 3") {
  double grid_k = oracle::grid_supremum(kappa_objective, 3.0, 2000, 2);
  double grid_kt = oracle::grid_supremum(kappa_tilde_objective, 3.0, 2000, 2);
  auto c = lemma_constants(3.0);
  CHECK(c.kappa >= grid_k - 1e-9);
  CHECK(c.kappa == doctest::Approx(grid_k).epsilon(1e-6));
  CHECK(c.kappa_tilde >= grid_kt - 1e-9);
  CHECK(c.kappa_tilde >= 1.5);
  CHECK(c.kappa_tilde == doctest::Approx(grid_kt).epsilon(1e-6));
}

TEST_CASE("pointwise verification") {
  auto c = lemma_constants(3.0);
  auto rep = verify_pointwise(3.0, 5, 100000, c, 42);
  CHECK(rep.samples == 100000);
  CHECK(rep.passed());
  for (int d : {1, 2, 20}) CHECK(verify_pointwise(3.0, d, 20000, c, 7).passed());

  // Constants that are too small must be caught.
  LemmaConstants weak = c;
  weak.kappa = 1.0;
  weak.kappa_tilde = 1.0;
  auto caught = verify_pointwise(3.0, 2, 20000, weak, 42);
  CHECK_FALSE(caught.passed());
  CHECK(caught.max_violation > 0.0);
}

}
