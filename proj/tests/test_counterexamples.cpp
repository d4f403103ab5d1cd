#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/martingale.hpp"

using namespace mwi;

namespace {
const Norm kE = Norm::euclidean();

double slope(double rho, ExtendedIndex q, double alpha, int k0, int k1) {
  std::vector<double> ns, r;
  for (int k = k0; k <= k1; ++k) {
    int n = 1 << k;
    ns.push_back(n);
    r.push_back(family_ratio(n, std::pow(double(n), -alpha), rho, q));
  }
  return loglog_slope(ns, r);
}
}  // namespace

TEST_SUITE("counterexamples") {

TEST_CASE("smallest family member") {
  auto f = family_1d(2, 1.0);
  REQUIRE(f.mu.size() == 2);
  REQUIRE(f.nu.size() == 4);
  CHECK(f.mu.weight(0) == doctest::Approx(0.5));
  for (int j = 0; j < 4; ++j) {
    CHECK(f.nu.point(j)[0] == j);
    CHECK(f.nu.weight(j) == doctest::Approx(0.25));
  }
  REQUIRE(f.coupling.entries().size() == 4);
  for (const auto& e : f.coupling.entries())
    CHECK(e.w == doctest::Approx(0.25));
  CHECK(verify_martingale(f.coupling).passed);
}

TEST_CASE("closed forms") {
  FamilyParams p;
  p.n = 4;
  p.z = 0.5;
  p.rho = 1.5;
  auto cf = closed_forms(p);
  double mass = 3 * 0.5 + 1;
  CHECK(cf.coupling_cost == doctest::Approx((1.5 + std::pow(0.5, 1.5)) / mass));
  CHECK(cf.w_rho_pow == doctest::Approx(std::pow(0.5, 1.5) / mass));
  CHECK(cf.w_inf == 0.5);
  CHECK(cf.sigma_inf == 2.0);
  CHECK(cf.coupling_cost ==
        doctest::Approx(family_1d(4, 0.5).coupling.cost(1.5, kE)));
  p.n = 1;
  CHECK_THROWS_AS(closed_forms(p), InvalidArgument);
  p.n = 4;
  p.z = 0.0;
  CHECK_THROWS_AS(closed_forms(p), InvalidArgument);
  CHECK(FamilyParams::with_alpha(16, 0.5, 1.5, {1.0}).z == 0.25);
}

TEST_CASE("floor-sum moment equals direct minimization") {
  for (int n = 2; n <= 12; ++n)
    for (double z : {0.25, 1.0, 4.0})
      for (double rho : {1.0, 1.5, 2.0, 3.0}) {
        auto nu = family_1d(n, z).nu;
        double direct = std::pow(central_moment(nu, {rho}, kE), rho);
        CHECK(direct == doctest::Approx(family_sigma_pow(n, z, rho)).epsilon(1e-7));
      }
  CHECK(family_sigma_pow(2, 1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("asymptotics") {
  auto a = asymptotics(1.5, {1.0}, 0.0);
  CHECK(a.exponent == doctest::Approx(0.5));
  CHECK(a.prefactor == doctest::Approx(std::sqrt(2.0)));
  CHECK(asymptotics(1.2, {1.0}, 0.0).exponent == doctest::Approx(0.8));
  CHECK(asymptotics(1.5, ExtendedIndex::infinity(), 0.75).exponent ==
        doctest::Approx(0.25));
  CHECK_THROWS_AS(asymptotics(1.5, {1.0}, 1.0), InvalidArgument);
}

TEST_CASE("growth exponents of the ratio") {
  CHECK(slope(1.0, {1.0}, 0.0, 4, 8) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(slope(1.5, {1.0}, 0.0, 4, 8) - 0.5) <= 0.05);
  // The q = inf case approaches its exponent slowly from above.
  double early = slope(1.5, ExtendedIndex::infinity(), 0.75, 4, 8);
  double late = slope(1.5, ExtendedIndex::infinity(), 0.75, 16, 21);
  CHECK(early > 0.0);
  CHECK(late < early);
  CHECK(std::abs(late - 0.25) < std::abs(early - 0.25));
  CHECK(std::abs(late - 0.25) <= 0.05);
}

TEST_CASE("ratio tends to 2 at rho = 2") {
  CHECK(family_ratio(10000, 1.0, 2.0, {1.0}) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(family_ratio(10000, 1.0, 2.0, {1.0}) <= 2.0);
}

TEST_CASE("rotated planar family") {
  for (int n : {3, 5}) {
    CHECK(verify_martingale(family_2d_rotated(n, 0.0, std::numbers::pi / 4).coupling,
                            1e-10)
              .passed);
    double prev = INFINITY;
    auto flat = embed_1d(family_1d(n, 1.0).nu, 2);
    for (double theta : {0.1, 0.05, 0.01, 0.001}) {
      auto f = family_2d_rotated(n, 0.0, theta);
      double w = wasserstein(f.nu, flat, {1.0}, kE).value;
      CHECK(w <= prev + 1e-12);
      prev = w;
    }
    auto f = family_2d_rotated(n, 0.0, 1e-3);
    double c1 = family_1d(n, 1.0).coupling.cost(1.5, kE);
    CHECK(std::abs(f.coupling.cost(1.5, kE) - c1) / c1 < 1e-3);
    auto b = mot_bounds({f.mu, f.nu, 1.5, kE});
    CHECK(std::abs(b.upper_cost - b.lower_cost) <= 1e-7);
  }
  CHECK_THROWS_AS(family_2d_rotated(3, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(family_2d_rotated(3, 1.0, 0.3), InvalidArgument);
}

}
