#include "mwi/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mwi/errors.hpp"

namespace mwi {

const char* to_string(CouplingSource source) {
  switch (source) {
    case CouplingSource::kLp:
      return "lp";
    case CouplingSource::kComonotone:
      return "comonotone";
    case CouplingSource::kExplicit:
      return "explicit";
  }
  return "unknown";
}

Coupling::Coupling(DiscreteMeasure source, DiscreteMeasure target,
                   std::vector<CouplingEntry> entries, CouplingSource origin,
                   double tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      entries_(std::move(entries)),
      origin_(origin) {
  if (source_.dim() != target_.dim())
    throw DimensionMismatch("coupling marginals differ in dimension");
  for (const auto& e : entries_) {
    if (e.i < 0 || e.i >= source_.size() || e.j < 0 || e.j >= target_.size())
      throw InvalidArgument("coupling entry index out of range");
    if (!(e.w >= 0.0)) throw InvalidArgument("negative coupling weight");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const CouplingEntry& a, const CouplingEntry& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  if (marginal_residual() > tol)
    throw InvalidArgument("coupling marginals do not match its measures");
}

Coupling Coupling::from_pairs(const std::vector<PointPair>& pairs) {
  if (pairs.empty()) throw InvalidArgument("coupling needs at least one pair");
  std::vector<std::vector<double>> xs, ys;
  std::vector<double> ws;
  for (const auto& p : pairs) {
    xs.push_back(p.x);
    ys.push_back(p.y);
    ws.push_back(p.w);
  }
  DiscreteMeasure source = DiscreteMeasure::make(xs, ws);
  DiscreteMeasure target = DiscreteMeasure::make(ys, ws);
  if (source.dim() != target.dim())
    throw DimensionMismatch("pair points differ in dimension");
  double total = 0.0;
  for (double w : ws) total += w;
  std::map<std::pair<int, int>, double> merged;
  for (const auto& p : pairs) {
    if (p.w == 0.0) continue;
    merged[{source.find(p.x), target.find(p.y)}] += p.w / total;
  }
  std::vector<CouplingEntry> entries;
  for (const auto& [key, w] : merged)
    entries.push_back({key.first, key.second, w});
  return Coupling(std::move(source), std::move(target), std::move(entries),
                  CouplingSource::kExplicit);
}

double Coupling::cost(double q, const Norm& norm) const {
  double s = 0.0;
  for (const auto& e : entries_)
    s += e.w * transport_cost(source_.point(e.i), target_.point(e.j), q, norm);
  return s;
}

double Coupling::max_displacement(const Norm& norm) const {
  double m = 0.0;
  for (const auto& e : entries_)
    if (e.w > 0.0)
      m = std::max(m, norm.distance(source_.point(e.i), target_.point(e.j)));
  return m;
}

double Coupling::marginal_residual() const {
  std::vector<double> rows(source_.size(), 0.0), cols(target_.size(), 0.0);
  for (const auto& e : entries_) {
    rows[e.i] += e.w;
    cols[e.j] += e.w;
  }
  double r = 0.0;
  for (int i = 0; i < source_.size(); ++i)
    r = std::max(r, std::abs(rows[i] - source_.weight(i)));
  for (int j = 0; j < target_.size(); ++j)
    r = std::max(r, std::abs(cols[j] - target_.weight(j)));
  return r;
}

double transport_cost(std::span<const double> x, std::span<const double> y,
                      double q, const Norm& norm) {
  double d = norm.distance(x, y);
  if (d < 1e-14) return 0.0;
  double c = q == 1.0 ? d : std::pow(d, q);
  return c < 1e-14 ? 0.0 : c;
}

CouplingLp build_coupling_lp(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, bool martingale,
                             const std::vector<double>& costs) {
  const int m = nu.size();
  return build_coupling_lp(
      mu, nu, martingale, [&](int i, int j) { return costs[i * m + j]; },
      [](int, int) { return true; });
}

Coupling coupling_from_solution(const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu,
                                const CouplingLp& clp,
                                const std::vector<double>& x) {
  std::vector<CouplingEntry> entries;
  for (size_t c = 0; c < clp.cells.size(); ++c)
    if (x[c] > 0.0)
      entries.push_back({clp.cells[c].first, clp.cells[c].second, x[c]});
  return Coupling(mu, nu, std::move(entries), CouplingSource::kLp, 1e-8);
}

Coupling comonotone_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != 1 || nu.dim() != 1)
    throw DimensionMismatch("comonotone coupling requires 1D measures");
  std::vector<CouplingEntry> entries;
  int i = 0, j = 0;
  double left_mu = mu.weight(0), left_nu = nu.weight(0);
  while (i < mu.size() && j < nu.size()) {
    double w = std::min(left_mu, left_nu);
    if (w > 0.0) entries.push_back({i, j, w});
    left_mu -= w;
    left_nu -= w;
    // Advance whichever side is exhausted; on a rounding tie advance both.
    const double eps = 1e-15;
    bool next_i = left_mu <= eps;
    bool next_j = left_nu <= eps;
    if (next_i && ++i < mu.size()) left_mu += mu.weight(i);
    if (next_j && ++j < nu.size()) left_nu += nu.weight(j);
  }
  return Coupling(mu, nu, std::move(entries), CouplingSource::kComonotone);
}

namespace {

void check_dims(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim())
    throw DimensionMismatch("measures have dimensions " +
                            std::to_string(mu.dim()) + " and " +
                            std::to_string(nu.dim()));
}

lp::Solution checked_solve(const lp::LinearProgram& program,
                           const lp::Options& opts) {
  lp::Solution sol = lp::solve(program, opts);
  if (sol.status == lp::Status::kOptimal) return sol;
  throw SolverLimit(std::string("transport LP ended with status ") +
                    lp::to_string(sol.status));
}

}  // namespace

TransportResult bottleneck_w_inf(const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, const Norm& norm,
                                 const lp::Options& opts) {
  check_dims(mu, nu);
  const int n = mu.size(), m = nu.size();
  std::vector<double> dist(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      dist[i * m + j] = transport_cost(mu.point(i), nu.point(j), 1.0, norm);
  std::vector<double> levels = dist;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // Every atom must reach some partner: a cheap lower bound on the answer.
  double lower = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = dist[i * m];
    for (int j = 1; j < m; ++j) best = std::min(best, dist[i * m + j]);
    lower = std::max(lower, best);
  }
  for (int j = 0; j < m; ++j) {
    double best = dist[j];
    for (int i = 1; i < n; ++i) best = std::min(best, dist[i * m + j]);
    lower = std::max(lower, best);
  }

  auto program_at = [&](double t) {
    return build_coupling_lp(
        mu, nu, false, [&](int i, int j) { return dist[i * m + j]; },
        [&](int i, int j) { return dist[i * m + j] <= t; });
  };

  size_t lo = std::lower_bound(levels.begin(), levels.end(), lower) -
              levels.begin();
  size_t hi = levels.size() - 1;  // the full polytope is always feasible
  while (lo < hi) {
    size_t mid = lo + (hi - lo) / 2;
    if (lp::feasible(program_at(levels[mid]).program, opts))
      hi = mid;
    else
      lo = mid + 1;
  }
  const double threshold = levels[lo];
  CouplingLp clp = program_at(threshold);
  lp::Solution sol = checked_solve(clp.program, opts);
  return {threshold, coupling_from_solution(mu, nu, clp, sol.x)};
}

TransportResult wasserstein(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, ExtendedIndex q,
                            const Norm& norm, const TransportOptions& opts) {
  check_dims(mu, nu);
  if (!(q.value >= 1.0))
    throw InvalidArgument("Wasserstein index must be >= 1, got " +
                          q.to_string());
  if (q.is_infinite()) return bottleneck_w_inf(mu, nu, norm, opts.lp);

  if (mu.dim() == 1 && !opts.force_lp) {
    Coupling c = comonotone_1d(mu, nu);
    double cost = c.cost(q.value, norm);
    return {std::pow(cost, 1.0 / q.value), std::move(c)};
  }
  const int m = nu.size();
  std::vector<double> costs(static_cast<size_t>(mu.size()) * m);
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < m; ++j)
      costs[i * m + j] = transport_cost(mu.point(i), nu.point(j), q.value, norm);
  CouplingLp clp = build_coupling_lp(mu, nu, false, costs);
  lp::Solution sol = checked_solve(clp.program, opts.lp);
  double cost = std::max(0.0, sol.objective_value);
  return {std::pow(cost, 1.0 / q.value),
          coupling_from_solution(mu, nu, clp, sol.x)};
}

}  // namespace mwi
