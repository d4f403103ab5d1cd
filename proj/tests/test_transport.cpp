#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/transport.hpp"
#include "mwi/verify/oracles.hpp"

using namespace mwi;
using testing::dirac;
using testing::split;

namespace {
const Norm kE = Norm::euclidean();

TransportOptions lp_only() {
  TransportOptions o;
  o.force_lp = true;
  return o;
}
}  // namespace

TEST_SUITE("transport") {

TEST_CASE("Wasserstein distances on small pairs") {
  CHECK(wasserstein(dirac(0), dirac(1), {2.0}, kE).value == 1.0);
  CHECK(wasserstein(split(), split(), {1.0}, kE).value == 0.0);
  CHECK(wasserstein(dirac(0), split(), {1.0}, kE).value == doctest::Approx(1.0));
  auto f = family_1d(3, 0.5);
  CHECK(wasserstein(f.mu, f.nu, ExtendedIndex::infinity(), kE).value == 0.5);
  CHECK_THROWS_AS(wasserstein(dirac(0), dirac(1), {0.5}, kE), InvalidArgument);
  CHECK_THROWS_AS(
      wasserstein(dirac(0), DiscreteMeasure::dirac({0.0, 1.0}), {1.0}, kE),
      DimensionMismatch);
}

TEST_CASE("comonotone coupling") {
  auto f = family_1d(2, 1.0);
  Coupling c = comonotone_1d(f.mu, f.nu);
  REQUIRE(c.entries().size() == 4);
  for (const auto& e : c.entries()) CHECK(e.w == doctest::Approx(0.25));
  CHECK(c.entries()[0].i == 0);
  CHECK(c.entries()[0].j == 0);
  CHECK(c.entries()[3].j == 3);
  CHECK(c.cost(1.0, kE) == doctest::Approx(0.5));
  CHECK(wasserstein(f.mu, f.nu, {1.0}, kE).value == doctest::Approx(0.5));

  Coupling s = comonotone_1d(dirac(0), split());
  REQUIRE(s.entries().size() == 2);
  CHECK(s.entries()[0].w == 0.5);
  CHECK(s.cost(1.0, kE) == 1.0);

  Coupling id = comonotone_1d(split(), split());
  CHECK(id.cost(2.0, kE) == 0.0);
  CHECK_THROWS_AS(comonotone_1d(embed_1d(split(), 2), embed_1d(split(), 2)),
                  DimensionMismatch);
}

TEST_CASE("bottleneck distance") {
  CHECK(bottleneck_w_inf(dirac(0), split(), kE).value == 1.0);
  auto f = family_1d(2, 1.0);
  auto r = bottleneck_w_inf(f.mu, f.nu, kE);
  CHECK(r.value == 1.0);
  CHECK(r.coupling.max_displacement(kE) <= 1.0);
  CHECK(bottleneck_w_inf(f.nu, f.nu, kE).value == 0.0);
}

TEST_CASE("LP and comonotone paths agree in 1D") {
  std::mt19937_64 gen(21);
  for (int k = 0; k < 60; ++k) {
    auto inst = oracle::random_pair_1d(gen, 20);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      double a = wasserstein(inst.mu, inst.nu, {q}, kE).value;
      double b = wasserstein(inst.mu, inst.nu, {q}, kE, lp_only()).value;
      CHECK(std::abs(a - b) <= 1e-8);
    }
  }
}

TEST_CASE("metric properties") {
  std::mt19937_64 gen(22);
  for (int k = 0; k < 25; ++k) {
    int dim = 1 + k % 3;
    auto a = testing::random_measure(gen, dim, 2 + k % 5);
    auto b = testing::random_measure(gen, dim, 3);
    auto c = testing::random_measure(gen, dim, 4);
    double prev = 0.0;
    for (ExtendedIndex q : {ExtendedIndex{1.0}, ExtendedIndex{1.5},
                            ExtendedIndex{2.0}, ExtendedIndex{3.0},
                            ExtendedIndex::infinity()}) {
      auto ab = wasserstein(a, b, q, kE);
      CHECK(ab.value >= prev - 1e-8);
      prev = ab.value;
      CHECK(ab.coupling.marginal_residual() <= 1e-9);
      CHECK(wasserstein(b, a, q, kE).value ==
            doctest::Approx(ab.value).epsilon(1e-9));
      CHECK(wasserstein(a, a, q, kE).value == doctest::Approx(0.0));
      if (!q.is_infinite()) {
        double ac = wasserstein(a, c, q, kE).value;
        double bc = wasserstein(b, c, q, kE).value;
        CHECK(ac <= ab.value + bc + 1e-8);
      }
    }
  }
}

TEST_CASE("coupling validation") {
  auto mu = dirac(0);
  auto nu = split();
  CHECK_NOTHROW(Coupling(mu, nu, {{0, 0, 0.5}, {0, 1, 0.5}},
                         CouplingSource::kExplicit));
  CHECK_THROWS_AS(Coupling(mu, nu, {{0, 0, 0.7}, {0, 1, 0.3}},
                           CouplingSource::kExplicit),
                  InvalidArgument);
  CHECK_THROWS_AS(Coupling(mu, nu, {{0, 2, 1.0}}, CouplingSource::kExplicit),
                  InvalidArgument);
  CHECK_THROWS_AS(Coupling::from_pairs({}), InvalidArgument);
}

}
