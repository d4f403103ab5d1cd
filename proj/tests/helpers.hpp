#pragma once

#include <random>
#include <vector>

#include "mwi/measures.hpp"

namespace testing {

inline mwi::DiscreteMeasure dirac(double x) {
  return mwi::DiscreteMeasure::make_1d({x}, {1.0});
}

// (delta_{-1} + delta_1) / 2
inline mwi::DiscreteMeasure split() {
  return mwi::DiscreteMeasure::make_1d({-1.0, 1.0}, {0.5, 0.5});
}

inline mwi::DiscreteMeasure random_measure(std::mt19937_64& gen, int dim,
                                           int atoms) {
  std::normal_distribution<double> coord(0.0, 2.0);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<std::vector<double>> pts(atoms, std::vector<double>(dim));
  std::vector<double> w(atoms);
  for (int i = 0; i < atoms; ++i) {
    for (double& x : pts[i]) x = coord(gen);
    w[i] = weight(gen);
  }
  return mwi::DiscreteMeasure::make(pts, w);
}

}  // namespace testing
