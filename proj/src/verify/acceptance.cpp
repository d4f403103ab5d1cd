#include "mwi/verify/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/inequality.hpp"
#include "mwi/io.hpp"
#include "mwi/lemma_constants.hpp"
#include "mwi/verify/oracles.hpp"

namespace mwi::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) { return io::format_number(v); }

// Counts checks and keeps the first few failure messages.
class Tally {
 public:
  template <typename Msg>
  void expect(bool ok, Msg&& msg) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) {
      if (!notes_.empty()) notes_ += "; ";
      notes_ += msg();
    }
  }
  void note(const std::string& s) {
    if (!info_.empty()) info_ += "; ";
    info_ += s;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ - failures_ << "/" << checks_ << " checks";
    if (!info_.empty()) os << "; " << info_;
    if (failures_ > 0) os << "; first failures: " << notes_;
    return os.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string notes_;
  std::string info_;
};

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const Norm kEuclid = Norm::euclidean();

std::vector<InstancePair> random_pool(int count) {
  std::mt19937_64 gen(20240601);
  std::vector<InstancePair> pool;
  for (int k = 0; k < count; ++k)
    pool.push_back(oracle::random_spread_pair(gen, 1 + k % 3, 4, 8));
  return pool;
}

std::vector<InstancePair> family_pool(int max_n) {
  std::vector<InstancePair> pool;
  for (int n = 2; n <= max_n; ++n) {
    for (double z : {0.25, 1.0, 4.0}) {
      Family f = family_1d(n, z);
      pool.push_back({f.mu, f.nu, "family n=" + std::to_string(n) +
                                      " z=" + num(z)});
    }
  }
  for (int n : {3, 5}) {
    for (double theta : {0.3, 0.05, 0.001}) {
      Family f = family_2d_rotated(n, 0.0, theta);
      pool.push_back({f.mu, f.nu, "rotated n=" + std::to_string(n) +
                                      " theta=" + num(theta)});
    }
  }
  return pool;
}

// 1. Second-moment identity at rho = 2.
void remark_identity(Level level, Tally& t) {
  const int count = level == Level::kFull ? 200 : 50;
  auto start = Clock::now();
  for (const auto& inst : random_pool(count)) {
    MotBounds b = mot_bounds({inst.mu, inst.nu, 2.0, kEuclid});
    double diff =
        raw_moment(inst.nu, 2.0, kEuclid) - raw_moment(inst.mu, 2.0, kEuclid);
    t.expect(std::abs(b.upper_cost - b.lower_cost) <= 1e-8, [&] {
      return inst.label + " upper-lower=" + num(b.upper_cost - b.lower_cost);
    });
    t.expect(std::abs(b.lower_cost - diff) <= 1e-7 &&
                 std::abs(b.upper_cost - diff) <= 1e-7,
             [&] {
               return inst.label + " lower=" + num(b.lower_cost) +
                      " moment diff=" + num(diff);
             });
  }
  double secs = elapsed(start);
  t.note(std::to_string(count) + " pairs in " + num(secs) + " s");
  t.expect(secs < 30.0, [&] { return "runtime " + num(secs) + " s >= 30 s"; });
}

// 2. Generator outputs against the family closed forms.
void family_closed_forms(Level level, Tally& t) {
  const int max_n = level == Level::kFull ? 50 : 20;
  TransportOptions lp_path;
  lp_path.force_lp = true;
  for (int n = 2; n <= max_n; ++n) {
    for (double z : {0.25, 1.0, 4.0}) {
      Family f = family_1d(n, z);
      for (double rho : {1.0, 1.5, 2.0, 3.0}) {
        double w = wasserstein(f.mu, f.nu, {rho}, kEuclid, lp_path).value;
        double expected = std::pow(z, rho) / ((n - 1) * z + 1.0);
        t.expect(close(std::pow(w, rho), expected, 1e-8), [&] {
          return "W_rho^rho n=" + std::to_string(n) + " z=" + num(z) +
                 " rho=" + num(rho) + ": " + num(std::pow(w, rho)) + " vs " +
                 num(expected);
        });
        if (n <= 20) {
          double direct = std::pow(central_moment(f.nu, {rho}, kEuclid), rho);
          double formula = family_sigma_pow(n, z, rho);
          t.expect(close(direct, formula, 1e-7), [&] {
            return "sigma_rho^rho n=" + std::to_string(n) + " z=" + num(z) +
                   " rho=" + num(rho) + ": direct " + num(direct) +
                   " formula " + num(formula);
          });
        }
      }
      double threshold = bottleneck_w_inf(f.mu, f.nu, kEuclid).value;
      t.expect(threshold == z, [&] {
        return "W_inf n=" + std::to_string(n) + " z=" + num(z) + ": " +
               num(threshold);
      });
      double sig = central_moment(f.nu, ExtendedIndex::infinity(), kEuclid);
      t.expect(close(sig, (n - 1.0 + 2.0 * z) / 2.0, 1e-9), [&] {
        return "sigma_inf n=" + std::to_string(n) + ": " + num(sig);
      });
    }
  }
}

// 3. Growth exponent of the blow-up ratio.
void blow_up_slopes(Level, Tally& t) {
  auto start = Clock::now();
  struct Case {
    double rho;
    ExtendedIndex q;
    std::optional<double> alpha;
    double z;
  };
  const Case cases[] = {{1.0, {1.0}, std::nullopt, 1.0},
                        {1.5, {1.0}, std::nullopt, 1.0},
                        {1.5, ExtendedIndex::infinity(), 0.75, 0.0}};
  for (const Case& c : cases) {
    std::vector<double> ns, ratios;
    for (int k = 4; k <= 10; ++k) {
      int n = 1 << k;
      double z = c.alpha ? std::pow(static_cast<double>(n), -*c.alpha) : c.z;
      ns.push_back(n);
      ratios.push_back(family_ratio(n, z, c.rho, c.q));
    }
    double slope = loglog_slope(ns, ratios);
    double predicted = asymptotics(c.rho, c.q, c.alpha.value_or(0.0)).exponent;
    std::string tag = "(rho=" + num(c.rho) + ", q=" + c.q.to_string() +
                      (c.alpha ? ", alpha=" + num(*c.alpha) : ", z=" + num(c.z)) +
                      ")";
    t.note(tag + " slope " + num(slope) + " predicted " + num(predicted));
    t.expect(std::abs(slope - predicted) <= 0.05, [&] {
      return tag + " slope " + num(slope) + " off predicted " +
             num(predicted) + " by more than 0.05";
    });
    t.expect(slope > 0.0, [&] { return tag + " slope not positive"; });
  }
  double secs = elapsed(start);
  t.expect(secs < 10.0, [&] { return "runtime " + num(secs) + " s >= 10 s"; });
}

// 4. Rotated planar family.
void rotated_family(Level, Tally& t) {
  auto start = Clock::now();
  for (int n : {3, 5}) {
    for (double theta : {0.3, 0.05, 0.001}) {
      Family f = family_2d_rotated(n, 0.0, theta);
      std::string tag =
          "n=" + std::to_string(n) + " theta=" + num(theta);
      MartingaleReport rep = verify_martingale(f.coupling, 1e-10);
      t.expect(rep.passed, [&] {
        return tag + " barycenter residual " + num(rep.max_residual);
      });
      for (double rho : {1.0, 1.5}) {
        MotBounds b = mot_bounds({f.mu, f.nu, rho, kEuclid});
        t.expect(std::abs(b.upper_cost - b.lower_cost) <= 1e-7, [&] {
          return tag + " rho=" + num(rho) + " lower " + num(b.lower_cost) +
                 " upper " + num(b.upper_cost);
        });
        if (theta == 0.001) {
          RatioReport r = ratio(f.mu, f.nu, rho, {1.0}, kEuclid);
          double flat = family_ratio(n, 1.0, rho, {1.0});
          double rel = std::abs(r.ratio_lower - flat) / flat;
          t.note(tag + " rho=" + num(rho) + " ratio " + num(r.ratio_lower) +
                 " vs 1D " + num(flat));
          t.expect(rel <= 0.005, [&] {
            return tag + " rho=" + num(rho) + " ratio differs by " +
                   num(100 * rel) + "%";
          });
        }
      }
    }
  }
  double secs = elapsed(start);
  t.expect(secs < 60.0, [&] { return "runtime " + num(secs) + " s >= 60 s"; });
}

// 5. Maximal ratio at rho = 2 never exceeds 2.
void boundedness(Level level, Tally& t) {
  std::vector<InstancePair> pool =
      random_pool(level == Level::kFull ? 200 : 50);
  for (auto& inst : family_pool(level == Level::kFull ? 20 : 10))
    pool.push_back(std::move(inst));
  double worst = 0.0;
  std::string worst_label;
  for (ExtendedIndex q : {ExtendedIndex{1.0}, ExtendedIndex{2.0},
                          ExtendedIndex::infinity()}) {
    for (const auto& inst : pool) {
      RatioReport r = ratio(inst.mu, inst.nu, 2.0, q, kEuclid);
      if (r.ratio_upper > worst) {
        worst = r.ratio_upper;
        worst_label = inst.label + " q=" + q.to_string();
      }
      t.expect(r.ratio_upper <= 2.0 + 1e-6, [&] {
        return inst.label + " q=" + q.to_string() + " ratio " +
               num(r.ratio_upper);
      });
    }
  }
  t.note("max ratio " + num(worst) + " at " + worst_label);
  double limit = family_ratio(10000, 1.0, 2.0, {1.0});
  t.note("n=1e4 family ratio " + num(limit));
  t.expect(limit >= 1.9 && limit <= 2.0,
           [&] { return "n=1e4 family ratio " + num(limit); });
}

// 6. Two-point constants.
void lemma_checks(Level level, Tally& t) {
  auto start = Clock::now();
  const long samples = level == Level::kFull ? 100000 : 10000;
  LemmaConstants exact = lemma_constants(2.0);
  t.expect(exact.kappa == 1.0 && exact.kappa_tilde == 1.0, [&] {
    return "rho=2 short-circuit gave " + num(exact.kappa) + ", " +
           num(exact.kappa_tilde);
  });
  SupremumOptions forced;
  forced.force_numeric = true;
  LemmaConstants numeric = lemma_constants(2.0, forced);
  t.expect(numeric.kappa <= 1.0 + 1e-6 && numeric.kappa_tilde <= 1.0 + 1e-6,
           [&] {
             return "rho=2 optimizer gave " + num(numeric.kappa) + ", " +
                    num(numeric.kappa_tilde);
           });
  for (double rho : {2.0, 2.5, 3.0, 4.0}) {
    LemmaConstants c = lemma_constants(rho);
    if (rho != 2.0)
      t.note("rho=" + num(rho) + " kappa " + num(c.kappa) + " kappa_tilde " +
             num(c.kappa_tilde));
    t.expect(c.kappa >= 1.0 - 1e-9,
             [&] { return "kappa_" + num(rho) + " = " + num(c.kappa); });
    t.expect(c.kappa_tilde >= rho / 2.0 - 1e-9, [&] {
      return "kappa_tilde_" + num(rho) + " = " + num(c.kappa_tilde);
    });
    for (int d : {1, 2, 5, 20}) {
      PointwiseReport rep = verify_pointwise(rho, d, samples, c, 42);
      t.expect(rep.passed(), [&] {
        return "rho=" + num(rho) + " d=" + std::to_string(d) + " violations " +
               std::to_string(rep.distance_violations) + "/" +
               std::to_string(rep.growth_violations);
      });
    }
  }
  double secs = elapsed(start);
  t.expect(secs < 120.0,
           [&] { return "runtime " + num(secs) + " s >= 120 s"; });
}

// 7. Ratios stay below 2 kappa kappa_tilde lambda^{2 rho}.
void bound_consistency(Level level, Tally& t) {
  std::vector<InstancePair> pool;
  {
    std::mt19937_64 gen(77);
    const int count = level == Level::kFull ? 60 : 15;
    for (int k = 0; k < count; ++k)
      pool.push_back(oracle::random_spread_pair(gen, 1 + k % 3, 3, 6));
  }
  for (int n = 2; n <= (level == Level::kFull ? 10 : 5); ++n)
    for (double z : {0.25, 1.0, 4.0}) {
      Family f = family_1d(n, z);
      pool.push_back({f.mu, f.nu, "family n=" + std::to_string(n)});
    }
  const Norm norms[] = {Norm::euclidean(), Norm::p_norm(1.0), Norm::sup()};
  for (double rho : {2.0, 3.0}) {
    LemmaConstants lemma = lemma_constants(rho);
    double tightest = 0.0;
    for (const Norm& norm : norms) {
      for (ExtendedIndex q : {ExtendedIndex{1.0}, ExtendedIndex{2.0},
                              ExtendedIndex::infinity()}) {
        for (const auto& inst : pool) {
          RatioReport r = ratio(inst.mu, inst.nu, rho, q, norm);
          double bound = theoretical_bound(rho, norm, inst.mu.dim(), lemma);
          tightest = std::max(tightest, r.ratio_upper / bound);
          t.expect(r.ratio_upper <= bound + 1e-6, [&] {
            return inst.label + " rho=" + num(rho) + " " + norm.to_string() +
                   " q=" + q.to_string() + " ratio " + num(r.ratio_upper) +
                   " > bound " + num(bound);
          });
        }
      }
    }
    t.note("rho=" + num(rho) + " max ratio/bound " + num(tightest));
  }
}

// 8. 1D fast paths against the LP.
void one_dim_cross_validation(Level level, Tally& t) {
  std::mt19937_64 gen(8);
  TransportOptions lp_path;
  lp_path.force_lp = true;
  const int pairs = level == Level::kFull ? 500 : 100;
  for (int k = 0; k < pairs; ++k) {
    InstancePair inst = oracle::random_pair_1d(gen, 20);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      double fast = wasserstein(inst.mu, inst.nu, {q}, kEuclid).value;
      double slow = wasserstein(inst.mu, inst.nu, {q}, kEuclid, lp_path).value;
      t.expect(std::abs(fast - slow) <= 1e-8, [&] {
        return "W_" + num(q) + " comonotone " + num(fast) + " vs LP " +
               num(slow);
      });
    }
  }
  const int orders = level == Level::kFull ? 1000 : 200;
  int positives = 0;
  for (int k = 0; k < orders; ++k) {
    InstancePair inst = k % 3 == 2 ? oracle::random_pair_1d(gen, 6)
                                   : oracle::random_spread_pair(gen, 1, 5, 10);
    if (k % 3 == 1) std::swap(inst.mu, inst.nu);
    bool fast = convex_order_1d(inst.mu, inst.nu);
    bool lp_answer = check_convex_order(inst.mu, inst.nu);
    positives += lp_answer ? 1 : 0;
    t.expect(fast == lp_answer, [&] {
      return std::string("convex order disagreement (1d ") +
             (fast ? "true" : "false") + ")";
    });
  }
  t.note(std::to_string(positives) + "/" + std::to_string(orders) +
         " ordered pairs");
}

// 9. LP extrema against vertex enumeration.
void vertex_oracle(Level level, Tally& t) {
  std::vector<InstancePair> pool;
  pool.push_back({DiscreteMeasure::make_1d({0.0}, {1.0}),
                  DiscreteMeasure::make_1d({-1.0, 1.0}, {0.5, 0.5}),
                  "split"});
  {
    Family f = family_1d(2, 1.0);
    pool.push_back({f.mu, f.nu, "family n=2 z=1"});
  }
  std::mt19937_64 gen(9);
  const int count = level == Level::kFull ? 200 : 50;
  const int shapes[3][2] = {{2, 4}, {1, 5}, {3, 3}};
  for (int k = 0; k < count; ++k) {
    const auto& s = shapes[k % 3];
    pool.push_back(oracle::random_spread_pair(gen, 1 + (k / 3) % 2, s[0], s[1]));
  }
  const double rhos[] = {1.0, 1.5, 2.0, 3.0};
  int k = 0;
  for (const auto& inst : pool) {
    if (inst.mu.size() + inst.nu.size() > 6) continue;
    double rho = rhos[k++ % 4];
    MotBounds b = mot_bounds({inst.mu, inst.nu, rho, kEuclid});
    oracle::VertexExtrema v =
        oracle::martingale_vertex_extrema(inst.mu, inst.nu, rho, kEuclid);
    t.expect(v.feasible, [&] { return inst.label + " oracle found no vertex"; });
    t.expect(close(b.lower_cost, v.min_cost, 1e-9) &&
                 close(b.upper_cost, v.max_cost, 1e-9),
             [&] {
               return inst.label + " rho=" + num(rho) + " LP [" +
                      num(b.lower_cost) + ", " + num(b.upper_cost) +
                      "] vs vertices [" + num(v.min_cost) + ", " +
                      num(v.max_cost) + "]";
             });
  }
}

}  // namespace

CriterionResult run_criterion(int id, Level level) {
  static const char* names[] = {"",
                                "rho=2 second-moment identity",
                                "family closed forms",
                                "blow-up slopes",
                                "rotated 2D family",
                                "boundedness at rho=2",
                                "two-point constants",
                                "theoretical bound consistency",
                                "1D cross-validation",
                                "vertex-enumeration oracle"};
  if (id < 1 || id > kCriterionCount)
    throw InvalidArgument("criterion id must be in 1.." +
                          std::to_string(kCriterionCount));
  CriterionResult result;
  result.id = id;
  result.name = names[id];
  Tally t;
  auto start = Clock::now();
  try {
    switch (id) {
      case 1: remark_identity(level, t); break;
      case 2: family_closed_forms(level, t); break;
      case 3: blow_up_slopes(level, t); break;
      case 4: rotated_family(level, t); break;
      case 5: boundedness(level, t); break;
      case 6: lemma_checks(level, t); break;
      case 7: bound_consistency(level, t); break;
      case 8: one_dim_cross_validation(level, t); break;
      case 9: vertex_oracle(level, t); break;
    }
    result.passed = t.ok();
    result.detail = t.summary();
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = t.summary() + "; aborted: " + e.what();
  }
  result.seconds = elapsed(start);
  return result;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " "
     << r.name << " (" << num(r.seconds) << " s): " << r.detail;
  return os.str();
}

}  // namespace mwi::acceptance
