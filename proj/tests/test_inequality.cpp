#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/inequality.hpp"
#include "mwi/verify/oracles.hpp"

using namespace mwi;
using testing::dirac;
using testing::split;

namespace {
const Norm kE = Norm::euclidean();
}

TEST_SUITE("inequality") {

TEST_CASE("sigma index conventions") {
  CHECK(sigma_index(2.0, {2.0}).value == 2.0);
  CHECK(sigma_index(3.0, ExtendedIndex::infinity()).value == 2.0);
  CHECK(sigma_index(1.5, {1.0}).is_infinite());
  CHECK(sigma_index(1.0, {3.0}).value == 0.0);
  CHECK_THROWS_AS(sigma_index(0.5, {1.0}), InvalidArgument);
}

TEST_CASE("ratios on small pairs") {
  auto f = family_1d(2, 1.0);
  auto r = ratio(f.mu, f.nu, 1.0, {1.0}, kE);
  CHECK(r.sigma_factor == 1.0);
  CHECK(r.w_q == doctest::Approx(0.5));
  CHECK(r.ratio_upper >= 2.0 - 1e-9);

  auto s = ratio(dirac(0), split(), 2.0, {1.0}, kE);
  CHECK(s.mot_lower == doctest::Approx(1.0));
  CHECK(s.mot_upper == doctest::Approx(1.0));
  CHECK(s.w_q == doctest::Approx(1.0));
  CHECK(s.sigma_value == doctest::Approx(1.0));
  CHECK(s.ratio_upper == doctest::Approx(1.0));

  CHECK_THROWS_AS(ratio(split(), split(), 2.0, {1.0}, kE),
                  DegenerateDenominator);
  CHECK_THROWS_AS(ratio(split(), dirac(0), 2.0, {1.0}, kE), NotInConvexOrder);
}

TEST_CASE("theoretical bound") {
  LemmaConstants two = lemma_constants(2.0);
  CHECK(theoretical_bound(2.0, kE, 3, two) == 2.0);
  CHECK(theoretical_bound(2.0, Norm::p_norm(1.0), 2, two) ==
        doctest::Approx(8.0));
  LemmaConstants three = lemma_constants(3.0);
  CHECK(theoretical_bound(3.0, kE, 1, three) ==
        doctest::Approx(2.0 * three.kappa * three.kappa_tilde));
  CHECK_THROWS_AS(theoretical_bound(1.5, kE, 1, two), InvalidArgument);
  CHECK_THROWS_AS(theoretical_bound(3.0, kE, 1, two), InvalidArgument);
}

TEST_CASE("ratio properties on random pairs") {
  std::mt19937_64 gen(41);
  LemmaConstants three = lemma_constants(3.0);
  for (int k = 0; k < 30; ++k) {
    auto inst = oracle::random_spread_pair(gen, 1 + k % 3, 3, 6);
    for (ExtendedIndex q : {ExtendedIndex{1.0}, ExtendedIndex{2.0},
                            ExtendedIndex::infinity()}) {
      auto two = ratio(inst.mu, inst.nu, 2.0, q, kE);
      CHECK(two.ratio_lower <= two.ratio_upper + 1e-12);
      CHECK(two.ratio_upper <= 2.0 + 1e-6);
      CHECK(std::abs(two.ratio_upper - two.ratio_lower) <= 1e-8);

      auto r3 = ratio(inst.mu, inst.nu, 3.0, q, kE);
      CHECK(r3.ratio_upper <=
            theoretical_bound(3.0, kE, inst.mu.dim(), three) + 1e-6);

      const double s = 2.7;
      auto scaled = ratio(inst.mu.scaled(s), inst.nu.scaled(s), 1.5, q, kE);
      auto base = ratio(inst.mu, inst.nu, 1.5, q, kE);
      CHECK(scaled.mot_upper ==
            doctest::Approx(std::pow(s, 1.5) * base.mot_upper).epsilon(1e-8));
      CHECK(scaled.w_q == doctest::Approx(s * base.w_q).epsilon(1e-8));
      CHECK(scaled.ratio_upper ==
            doctest::Approx(base.ratio_upper).epsilon(1e-8));
      CHECK(scaled.ratio_lower ==
            doctest::Approx(base.ratio_lower).epsilon(1e-8));
    }
  }
}

TEST_CASE("lower ratio at rho = 1 stays below 2 on the line") {
  std::mt19937_64 gen(42);
  std::vector<InstancePair> pool;
  for (int k = 0; k < 60; ++k)
    pool.push_back(oracle::random_spread_pair(gen, 1, 5, 10));
  for (int n = 2; n <= 12; ++n)
    for (double z : {0.25, 1.0, 4.0}) {
      auto f = family_1d(n, z);
      pool.push_back({f.mu, f.nu, "family"});
    }
  for (const auto& inst : pool)
    for (ExtendedIndex q : {ExtendedIndex{1.0}, ExtendedIndex{2.0},
                            ExtendedIndex::infinity()})
      CHECK(ratio(inst.mu, inst.nu, 1.0, q, kE).ratio_lower <= 2.0 + 1e-9);
}

TEST_CASE("constant estimates") {
  std::vector<InstancePair> family;
  for (int n = 2; n <= 20; ++n) {
    auto f = family_1d(n, 1.0);
    family.push_back({f.mu, f.nu, "n=" + std::to_string(n)});
  }
  auto est = estimate_constant(family, 2.0, {1.0}, kE, Which::kUpper);
  CHECK(est.evaluated == 19);
  CHECK(est.value <= 2.0);
  CHECK(est.argmax_label == "n=20");

  std::vector<InstancePair> single{{dirac(0), split(), "split"}};
  auto one = estimate_constant(single, 2.0, {1.0}, kE, Which::kLower);
  CHECK(one.value == doctest::Approx(1.0));

  // Degenerate and unordered instances are skipped, not fatal.
  std::vector<InstancePair> mixed{{split(), split(), "same"},
                                  {split(), dirac(0), "reversed"},
                                  {dirac(0), split(), "split"}};
  auto m = estimate_constant(mixed, 2.0, {1.0}, kE, Which::kUpper);
  CHECK(m.skipped == 2);
  CHECK(m.argmax == 2);

  double prev = 0.0;
  for (int n : {10, 100, 1000}) {
    int emitted = 0;
    auto next = [&]() -> std::optional<InstancePair> {
      if (emitted++ > 0) return std::nullopt;
      auto f = family_1d(n, 1.0);
      return InstancePair{f.mu, f.nu, "n"};
    };
    double v = n <= 100
                   ? estimate_constant(next, 1.5, {1.0}, kE, Which::kUpper).value
                   : family_ratio(n, 1.0, 1.5, {1.0});
    CHECK(v > prev);
    prev = v;
  }
}

}
