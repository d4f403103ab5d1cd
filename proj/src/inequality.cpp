#include "mwi/inequality.hpp"

#include <cmath>

#include "mwi/errors.hpp"

namespace mwi {

ExtendedIndex sigma_index(double rho, ExtendedIndex q) {
  if (!(rho >= 1.0)) throw InvalidArgument("rho must be >= 1");
  if (!(q.value >= 1.0)) throw InvalidArgument("q must be >= 1");
  if (q.value == 1.0) return ExtendedIndex::infinity();
  if (q.is_infinite()) return {rho - 1.0};
  return {q.value * (rho - 1.0) / (q.value - 1.0)};
}

RatioReport ratio(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  double rho, ExtendedIndex q, const Norm& norm,
                  const RatioOptions& opts) {
  if (mu.dim() != nu.dim())
    throw DimensionMismatch("measures have different dimensions");
  RatioReport r;
  r.rho = rho;
  r.q = q;
  r.sigma_index = sigma_index(rho, q);
  if (mu.approx_equal(nu))
    throw DegenerateDenominator("ratio is undefined for mu == nu");

  MotBounds bounds = mot_bounds({mu, nu, rho, norm}, opts.lp);
  r.mot_lower = bounds.lower_cost;
  r.mot_upper = bounds.upper_cost;
  TransportOptions topts = opts.transport;
  topts.lp = opts.lp;
  r.w_q = wasserstein(mu, nu, q, norm, topts).value;

  if (r.sigma_index.value > 0.0) {
    r.sigma_value = central_moment(nu, r.sigma_index, norm, opts.moment);
  }
  r.sigma_factor = rho == 1.0 ? 1.0 : std::pow(r.sigma_value, rho - 1.0);
  const double denominator = r.w_q * r.sigma_factor;
  if (!(denominator > 0.0))
    throw DegenerateDenominator("W_q sigma^{rho-1} vanished");
  r.ratio_lower = r.mot_lower / denominator;
  r.ratio_upper = r.mot_upper / denominator;
  return r;
}

double theoretical_bound(double rho, const Norm& norm, int dim,
                         const LemmaConstants& lemma) {
  if (!(rho >= 2.0)) throw InvalidArgument("the bound requires rho >= 2");
  if (lemma.rho != rho)
    throw InvalidArgument("two-point constants were computed for another rho");
  const double lambda = norm.equivalence_lambda(dim);
  return 2.0 * lemma.kappa * lemma.kappa_tilde * std::pow(lambda, 2.0 * rho);
}

ConstantEstimate estimate_constant(
    const std::function<std::optional<InstancePair>()>& next, double rho,
    ExtendedIndex q, const Norm& norm, Which which, const RatioOptions& opts) {
  ConstantEstimate est;
  int position = 0;
  while (auto inst = next()) {
    try {
      RatioReport r = ratio(inst->mu, inst->nu, rho, q, norm, opts);
      ++est.evaluated;
      double v = which == Which::kUpper ? r.ratio_upper : r.ratio_lower;
      if (!est.best || v > est.value) {
        est.value = v;
        est.argmax = position;
        est.argmax_label = inst->label;
        est.best = r;
      }
    } catch (const Error&) {
      ++est.skipped;
    }
    ++position;
  }
  return est;
}

ConstantEstimate estimate_constant(std::span<const InstancePair> instances,
                                   double rho, ExtendedIndex q,
                                   const Norm& norm, Which which,
                                   const RatioOptions& opts) {
  size_t k = 0;
  return estimate_constant(
      [&]() -> std::optional<InstancePair> {
        if (k >= instances.size()) return std::nullopt;
        return instances[k++];
      },
      rho, q, norm, which, opts);
}

}  // namespace mwi
