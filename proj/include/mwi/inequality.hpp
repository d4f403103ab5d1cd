#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "mwi/lemma_constants.hpp"
#include "mwi/martingale.hpp"

namespace mwi {

// Index of the central moment paired with W_q: q(rho-1)/(q-1), equal to inf
// at q = 1 and to rho - 1 at q = inf.
ExtendedIndex sigma_index(double rho, ExtendedIndex q);

struct RatioReport {
  double rho = 1.0;
  ExtendedIndex q;
  ExtendedIndex sigma_index;
  double w_q = 0.0;
  // sigma_{sigma_index}(nu). At rho = 1 the factor is 1 regardless, and when
  // the index is 0 (rho = 1, q > 1) this field is reported as 1 too.
  double sigma_value = 1.0;
  double sigma_factor = 1.0;  // sigma_value^{rho-1}
  double mot_lower = 0.0;
  double mot_upper = 0.0;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
};

struct RatioOptions {
  TransportOptions transport;
  lp::Options lp;
  CentralMomentOptions moment;
};

// Both martingale ratios M^rho_rho / (W_q sigma^{rho-1}) for one pair.
// Throws NotInConvexOrder, or DegenerateDenominator when mu == nu.
RatioReport ratio(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  double rho, ExtendedIndex q, const Norm& norm,
                  const RatioOptions& opts = {});

// 2 kappa kappa_tilde lambda^{2 rho}, an upper bound on the maximal
// constant for rho >= 2 in dimension dim under the given norm.
double theoretical_bound(double rho, const Norm& norm, int dim,
                         const LemmaConstants& lemma);

struct InstancePair {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
  std::string label;
};

enum class Which { kLower, kUpper };

struct ConstantEstimate {
  double value = 0.0;
  int argmax = -1;  // position in generation order, first attaining
  std::string argmax_label;
  std::optional<RatioReport> best;
  int evaluated = 0;
  int skipped = 0;  // instances whose ratio threw
};

// Running maximum of the chosen ratio over a finite instance stream.
ConstantEstimate estimate_constant(
    const std::function<std::optional<InstancePair>()>& next, double rho,
    ExtendedIndex q, const Norm& norm, Which which,
    const RatioOptions& opts = {});

ConstantEstimate estimate_constant(std::span<const InstancePair> instances,
                                   double rho, ExtendedIndex q,
                                   const Norm& norm, Which which,
                                   const RatioOptions& opts = {});

}  // namespace mwi
