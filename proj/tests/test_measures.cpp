#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/measures.hpp"
#include "mwi/verify/oracles.hpp"

using namespace mwi;
using testing::dirac;
using testing::split;

TEST_SUITE("measures") {

TEST_CASE("construction normalizes, merges and sorts") {
  auto a = DiscreteMeasure::make_1d({0.0}, {2.0});
  CHECK(a.size() == 1);
  CHECK(a.weight(0) == 1.0);

  auto b = DiscreteMeasure::make_1d({1.0, 1.0, 2.0}, {0.25, 0.25, 0.5});
  REQUIRE(b.size() == 2);
  CHECK(b.point(0)[0] == 1.0);
  CHECK(b.weight(0) == doctest::Approx(0.5));
  CHECK(b.weight(1) == doctest::Approx(0.5));

  auto c = DiscreteMeasure::make({{2.0, 0.0}, {1.0, 0.0}}, {0.5, 0.5});
  CHECK(c.dim() == 2);
  CHECK(c.point(0)[0] == 1.0);

  auto d = DiscreteMeasure::make_1d({3.0, 1.0, 2.0}, {1.0, 0.0, 1.0});
  CHECK(d.size() == 2);
  CHECK(d.find(std::vector<double>{1.0}) == -1);
  CHECK(d.find(std::vector<double>{3.0}) == 1);
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(DiscreteMeasure::make_1d({}, {}), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::make_1d({0.0}, {-1.0}), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::make_1d({0.0, 1.0}, {0.0, 0.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure::make_1d({0.0, 1.0}, {1.0}),
                  DimensionMismatch);
  CHECK_THROWS_AS(DiscreteMeasure::make({{0.0}, {1.0, 2.0}}, {1.0, 1.0}),
                  DimensionMismatch);
  CHECK_THROWS_AS(DiscreteMeasure::make_1d({NAN}, {1.0}), InvalidArgument);
}

TEST_CASE("mean") {
  CHECK(mean(split())[0] == 0.0);
  CHECK(mean(family_1d(2, 1.0).nu)[0] == doctest::Approx(1.5));
  CHECK(mean(dirac(4.25))[0] == 4.25);
}

TEST_CASE("central moments on small examples") {
  const Norm e = Norm::euclidean();
  for (double p : {1.0, 1.5, 2.0, 3.0})
    CHECK(central_moment(dirac(2.0), {p}, e) == doctest::Approx(0.0));
  CHECK(central_moment(dirac(2.0), ExtendedIndex::infinity(), e) == 0.0);
  auto nu = family_1d(2, 1.0).nu;
  CHECK(central_moment(nu, ExtendedIndex::infinity(), e) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(central_moment(nu, {1.0}, e) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle::central_moment_grid(nu, {1.0}, e) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("central moments below index 1") {
  auto nu = family_1d(3, 1.0).nu;
  double flat = central_moment(nu, {0.5}, Norm::euclidean());
  CHECK(flat > 0.0);
  CHECK(central_moment(embed_1d(nu, 2), {0.5}, Norm::euclidean()) ==
        doctest::Approx(flat));
  std::mt19937_64 gen(6);
  for (int k = 0; k < 10; ++k) {
    auto m = testing::random_measure(gen, 2, 3 + k % 4);
    for (double p : {0.5, 0.9}) {
      double direct = central_moment(m, {p}, Norm::euclidean());
      double grid = oracle::central_moment_grid(m, {p}, Norm::euclidean());
      CHECK(direct <= grid + 1e-9);
      CHECK(direct == doctest::Approx(grid).epsilon(1e-4));
    }
  }
  CHECK_THROWS_AS(central_moment(nu, {0.0}, Norm::euclidean()),
                  InvalidArgument);
}

TEST_CASE("second central moment equals the variance") {
  std::mt19937_64 gen(1);
  for (int k = 0; k < 40; ++k) {
    auto nu = testing::random_measure(gen, 1 + k % 3, 2 + k % 6);
    auto m = mean(nu);
    double var = 0.0;
    for (int j = 0; j < nu.size(); ++j) {
      double s = 0.0;
      for (int c = 0; c < nu.dim(); ++c)
        s += (nu.point(j)[c] - m[c]) * (nu.point(j)[c] - m[c]);
      var += nu.weight(j) * s;
    }
    double sigma = central_moment(nu, {2.0}, Norm::euclidean());
    CHECK(sigma * sigma == doctest::Approx(var).epsilon(1e-9));
  }
}

TEST_CASE("central moments match the grid oracle") {
  std::mt19937_64 gen(2);
  const Norm norms[] = {Norm::euclidean(), Norm::p_norm(1.0), Norm::sup()};
  for (int k = 0; k < 12; ++k) {
    auto nu = testing::random_measure(gen, 1 + k % 2, 3 + k % 4);
    for (const Norm& norm : norms) {
      for (ExtendedIndex p : {ExtendedIndex{1.0}, ExtendedIndex{1.5},
                              ExtendedIndex{3.0}, ExtendedIndex::infinity()}) {
        double direct = central_moment(nu, p, norm);
        double grid = oracle::central_moment_grid(nu, p, norm);
        CHECK(direct <= grid + 1e-9);
        CHECK(direct == doctest::Approx(grid).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("central moments are translation invariant") {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 20; ++k) {
    int dim = 1 + k % 3;
    auto nu = testing::random_measure(gen, dim, 5);
    std::vector<double> shift(dim, 0.0);
    for (int c = 0; c < dim; ++c) shift[c] = 3.0 * c - 1.7;
    auto moved = nu.translated(shift);
    for (ExtendedIndex p : {ExtendedIndex{1.0}, ExtendedIndex{2.5},
                            ExtendedIndex::infinity()}) {
      CHECK(central_moment(moved, p, Norm::euclidean()) ==
            doctest::Approx(central_moment(nu, p, Norm::euclidean()))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("central moments are nondecreasing in the index") {
  std::mt19937_64 gen(4);
  for (int k = 0; k < 30; ++k) {
    auto nu = testing::random_measure(gen, 1 + k % 3, 2 + k % 7);
    double prev = 0.0;
    for (ExtendedIndex p : {ExtendedIndex{1.0}, ExtendedIndex{1.5},
                            ExtendedIndex{2.0}, ExtendedIndex{4.0},
                            ExtendedIndex::infinity()}) {
      double s = central_moment(nu, p, Norm::euclidean());
      CHECK(s >= prev - 1e-9);
      prev = s;
    }
  }
}

TEST_CASE("merging duplicates leaves moments unchanged") {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 20; ++k) {
    auto nu = testing::random_measure(gen, 2, 4);
    std::vector<std::vector<double>> pts;
    std::vector<double> w;
    for (int j = 0; j < nu.size(); ++j) {
      std::vector<double> x(nu.point(j).begin(), nu.point(j).end());
      pts.push_back(x);
      pts.push_back(x);
      w.push_back(0.3 * nu.weight(j));
      w.push_back(0.7 * nu.weight(j));
    }
    auto doubled = DiscreteMeasure::make(pts, w);
    CHECK(doubled.size() == nu.size());
    for (double p : {1.0, 2.0, 3.0})
      CHECK(std::abs(raw_moment(doubled, p, Norm::euclidean()) -
                     raw_moment(nu, p, Norm::euclidean())) <= 1e-12);
  }
}

TEST_CASE("embedding into higher dimensions") {
  auto a = embed_1d(dirac(1.0), 2);
  CHECK(a.dim() == 2);
  CHECK(a.point(0)[0] == 1.0);
  CHECK(a.point(0)[1] == 0.0);
  auto b = embed_1d(split(), 2);
  CHECK(b.size() == 2);
  CHECK(b.weight(0) == 0.5);
  auto c = embed_1d(family_1d(2, 1.0).mu, 3);
  CHECK(c.point(1)[0] == 2.0);
  CHECK(c.point(1)[2] == 0.0);
  CHECK_THROWS_AS(embed_1d(c, 4), DimensionMismatch);
  CHECK_THROWS_AS(embed_1d(split(), 1), InvalidArgument);
}

TEST_CASE("norms") {
  std::vector<double> v{3.0, -4.0};
  CHECK(Norm::euclidean()(v) == doctest::Approx(5.0));
  CHECK(Norm::p_norm(1.0)(v) == doctest::Approx(7.0));
  CHECK(Norm::sup()(v) == 4.0);
  CHECK(Norm::p_norm(INFINITY) == Norm::sup());
  CHECK(Norm::parse("p:3").p() == 3.0);
  CHECK(Norm::parse("sup").kind() == Norm::Kind::kSup);
  CHECK_THROWS(Norm::parse("p:0.5"));
  CHECK_THROWS(Norm::parse("taxicab"));
  CHECK(Norm::euclidean().equivalence_lambda(7) == 1.0);
  CHECK(Norm::p_norm(1.0).equivalence_lambda(2) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(Norm::sup().equivalence_lambda(4) == doctest::Approx(2.0));
  CHECK(ExtendedIndex::parse("inf").is_infinite());
  CHECK(ExtendedIndex::parse("1.5").value == 1.5);
  CHECK_THROWS(ExtendedIndex::parse("-1"));
  CHECK_THROWS(ExtendedIndex::parse("abc"));
}

}
