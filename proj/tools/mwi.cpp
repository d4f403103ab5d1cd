// mwi: command-line front end for the martingale transport library.
//
// Exit codes: 0 ok, 1 failed verification, 2 usage, 3 parse,
// 4 not in convex order, 5 solver limit.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/inequality.hpp"
#include "mwi/io.hpp"
#include "mwi/lemma_constants.hpp"
#include "mwi/martingale.hpp"
#include "mwi/verify/acceptance.hpp"

namespace fs = std::filesystem;
using mwi::io::format_number;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kParse = 3, kNotOrdered = 4,
            kSolverLimit = 5 };

struct RunConfig {
  std::uint64_t seed = 0;
  double feas_tol = 1e-9;
  double sigma_tol = 1e-10;
  long max_evaluations = 200000;
  std::string output;
  std::string format = "json";
  std::string norm = "euclidean";

  mwi::lp::Options lp() const {
    mwi::lp::Options o;
    o.feas_tol = feas_tol;
    return o;
  }
  mwi::RatioOptions ratio() const {
    mwi::RatioOptions o;
    o.lp = lp();
    o.transport.lp = lp();
    o.moment.step_tol = sigma_tol;
    o.moment.max_evaluations = max_evaluations;
    return o;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& cfg) {
  if (!(cfg.feas_tol > 0.0)) throw UsageError("--feas-tol must be positive");
  if (!(cfg.sigma_tol > 0.0)) throw UsageError("--sigma-tol must be positive");
  if (cfg.max_evaluations <= 0)
    throw UsageError("--max-evaluations must be positive");
}

mwi::Norm parse_norm(const std::string& s) {
  try {
    return mwi::Norm::parse(s);
  } catch (const mwi::Error& e) {
    throw UsageError(std::string("--norm: ") + e.what());
  }
}

mwi::ExtendedIndex parse_index(const std::string& flag, const std::string& s) {
  try {
    return mwi::ExtendedIndex::parse(s);
  } catch (const mwi::Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

mwi::DiscreteMeasure load(const std::string& flag, const std::string& path) {
  try {
    return mwi::io::read_measure(path);
  } catch (const mwi::ParseError& e) {
    throw mwi::ParseError(flag + ": " + e.what());
  }
}

std::pair<mwi::DiscreteMeasure, mwi::DiscreteMeasure> load_pair(
    const std::string& mu_path, const std::string& nu_path) {
  auto mu = load("--mu", mu_path);
  auto nu = load("--nu", nu_path);
  if (mu.dim() != nu.dim())
    throw mwi::DimensionMismatch("--nu: dimension " + std::to_string(nu.dim()) +
                                 " differs from --mu dimension " +
                                 std::to_string(mu.dim()));
  return {std::move(mu), std::move(nu)};
}

// Writes the finished report in one go so a failed run leaves no file behind.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  fs::path target(cfg.output);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw UsageError("--output: cannot open " + cfg.output);
    out << text;
  }
  fs::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct PairArgs {
  std::string mu, nu;
};

void add_pair(CLI::App* cmd, PairArgs& args) {
  cmd->add_option("mu,--mu", args.mu, "JSON measure file for mu")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("nu,--nu", args.nu, "JSON measure file for nu")
      ->required()
      ->check(CLI::ExistingFile);
}

std::string cmd_wasserstein(const RunConfig& cfg, const PairArgs& args,
                            const std::string& q_text, bool with_coupling,
                            bool force_lp) {
  auto q = parse_index("--q", q_text);
  if (q.value < 1.0) throw UsageError("--q must be >= 1");
  auto norm = parse_norm(cfg.norm);
  auto [mu, nu] = load_pair(args.mu, args.nu);
  mwi::TransportOptions opts;
  opts.force_lp = force_lp;
  opts.lp = cfg.lp();
  auto res = mwi::wasserstein(mu, nu, q, norm, opts);
  if (cfg.format == "csv")
    return "q,norm,value\n" + q.to_string() + "," + norm.to_string() + "," +
           format_number(res.value) + "\n";
  json j = {{"q", q.to_string()}, {"norm", norm.to_string()},
            {"value", res.value}};
  if (with_coupling) {
    double cost = q.is_infinite() ? res.value : std::pow(res.value, q.value);
    j["coupling"] = mwi::io::to_json(res.coupling, cost);
  }
  return dump(j);
}

std::string cmd_mot(const RunConfig& cfg, const PairArgs& args, double rho,
                    bool with_coupling) {
  if (!(rho >= 1.0)) throw UsageError("--rho must be >= 1");
  auto norm = parse_norm(cfg.norm);
  auto [mu, nu] = load_pair(args.mu, args.nu);
  auto b = mwi::mot_bounds({mu, nu, rho, norm}, cfg.lp());
  if (cfg.format == "csv")
    return "rho,norm,mot_lower,mot_upper\n" + format_number(rho) + "," +
           norm.to_string() + "," + format_number(b.lower_cost) + "," +
           format_number(b.upper_cost) + "\n";
  json j = mwi::io::to_json(b, rho, norm);
  if (!with_coupling) {
    j.erase("argmin");
    j.erase("argmax");
  }
  return dump(j);
}

std::string cmd_convex_order(const RunConfig& cfg, const PairArgs& args) {
  auto [mu, nu] = load_pair(args.mu, args.nu);
  bool ordered = mu.dim() == 1 ? mwi::convex_order_1d(mu, nu)
                               : mwi::check_convex_order(mu, nu, cfg.lp());
  if (cfg.format == "csv")
    return std::string("convex_order\n") + (ordered ? "true" : "false") + "\n";
  return dump({{"convex_order", ordered},
               {"method", mu.dim() == 1 ? "call-function" : "lp"}});
}

std::string cmd_ratio(const RunConfig& cfg, const PairArgs& args, double rho,
                      const std::string& q_text) {
  if (!(rho >= 1.0)) throw UsageError("--rho must be >= 1");
  auto q = parse_index("--q", q_text);
  if (q.value < 1.0) throw UsageError("--q must be >= 1");
  auto norm = parse_norm(cfg.norm);
  auto [mu, nu] = load_pair(args.mu, args.nu);
  auto r = mwi::ratio(mu, nu, rho, q, norm, cfg.ratio());
  if (cfg.format == "csv")
    return "rho,q,sigma_index,w_q,sigma,mot_lower,mot_upper,ratio_lower,"
           "ratio_upper\n" +
           format_number(rho) + "," + q.to_string() + "," +
           r.sigma_index.to_string() + "," + format_number(r.w_q) + "," +
           format_number(r.sigma_value) + "," + format_number(r.mot_lower) +
           "," + format_number(r.mot_upper) + "," +
           format_number(r.ratio_lower) + "," + format_number(r.ratio_upper) +
           "\n";
  return dump({{"rho", rho},
               {"q", q.to_string()},
               {"norm", norm.to_string()},
               {"sigma_index", r.sigma_index.to_string()},
               {"w_q", r.w_q},
               {"sigma", r.sigma_value},
               {"mot_lower", r.mot_lower},
               {"mot_upper", r.mot_upper},
               {"ratio_lower", r.ratio_lower},
               {"ratio_upper", r.ratio_upper}});
}

struct SweepArgs {
  double rho = 1.0;
  std::string q = "1";
  std::optional<double> z;
  std::optional<double> alpha;
  std::vector<int> ns;
  std::optional<double> theta;
  int lp_cap = 200;
};

std::string sweep_header() {
  return mwi::io::ratio_csv_header() +
         ",coupling_cost,w_rho_pow,w_inf,sigma_inf,sigma_rho_pow,"
         "closed_ratio,predicted_exponent,fitted_exponent,lp_verified\n";
}

std::string cmd_family_sweep(const RunConfig& cfg, const SweepArgs& a) {
  auto q = parse_index("--q", a.q);
  if (a.ns.empty()) throw UsageError("--n: at least one value required");
  if (a.z.has_value() == a.alpha.has_value())
    throw UsageError("exactly one of --z and --alpha is required");
  if (a.lp_cap < 0) throw UsageError("--lp-cap must be >= 0");
  auto norm = parse_norm(cfg.norm);
  // Validate every row before solving anything.
  std::vector<mwi::FamilyParams> rows;
  for (int n : a.ns) {
    mwi::FamilyParams p;
    if (a.alpha) {
      p = mwi::FamilyParams::with_alpha(n, *a.alpha, a.rho, q,
                                        a.theta.value_or(0.0));
    } else {
      p.n = n;
      p.z = *a.z;
      p.rho = a.rho;
      p.q = q;
      p.theta = a.theta.value_or(0.0);
    }
    try {
      p.validate();
    } catch (const mwi::InvalidArgument& e) {
      throw UsageError(e.what());
    }
    if (a.theta && !(*a.theta > 0.0 && *a.theta < 3.141592653589793))
      throw UsageError("--theta must lie in (0, pi)");
    rows.push_back(p);
  }

  std::vector<double> ns, closed;
  for (const auto& p : rows) {
    ns.push_back(p.n);
    closed.push_back(mwi::family_ratio(p.n, p.z, p.rho, p.q));
  }
  std::string fitted;
  {
    std::vector<double> distinct(ns);
    std::sort(distinct.begin(), distinct.end());
    if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() >= 2)
      fitted = format_number(mwi::loglog_slope(ns, closed));
  }

  std::ostringstream out;
  out << sweep_header();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& p = rows[k];
    auto cf = mwi::closed_forms(p);
    bool lp = p.n <= a.lp_cap;
    if (lp) {
      mwi::Family f = a.theta ? mwi::family_2d_rotated_z(p.n, p.z, *a.theta)
                              : mwi::family_1d(p.n, p.z);
      auto r = mwi::ratio(f.mu, f.nu, p.rho, q, norm, cfg.ratio());
      out << mwi::io::ratio_csv_row(r, p.n, p.z, a.theta.value_or(0.0));
    } else {
      // Columns that need a solve are left blank; closed forms fill the rest.
      auto index = mwi::sigma_index(p.rho, q);
      out << format_number(p.rho) << "," << q.to_string() << "," << p.n << ","
          << format_number(p.z) << "," << format_number(a.theta.value_or(0.0))
          << "," << format_number(mwi::family_w(p.n, p.z, q)) << ","
          << (index.value == 0.0 ? "1"
                                 : format_number(
                                       mwi::family_sigma(p.n, p.z, index)))
          << ",,,,";
    }
    out << "," << format_number(cf.coupling_cost) << ","
        << format_number(cf.w_rho_pow) << "," << format_number(cf.w_inf)
        << "," << format_number(cf.sigma_inf) << ","
        << format_number(cf.sigma_rho_pow) << "," << format_number(closed[k])
        << "," << format_number(cf.predicted_exponent) << "," << fitted << ","
        << (lp ? 1 : 0) << "\n";
  }
  return out.str();
}

struct LemmaArgs {
  double rho = 2.0;
  long samples = 0;
  int dim = 2;
  bool force_numeric = false;
};

std::string cmd_lemma_constants(const RunConfig& cfg, const LemmaArgs& a) {
  if (!(a.rho >= 2.0) || std::isinf(a.rho))
    throw UsageError("--rho must be finite and >= 2");
  if (a.samples < 0 || a.dim < 1)
    throw UsageError("--samples must be >= 0 and --dim >= 1");
  mwi::SupremumOptions opts;
  opts.force_numeric = a.force_numeric;
  auto c = mwi::lemma_constants(a.rho, opts);
  if (cfg.format == "csv")
    return "rho,kappa,kappa_tilde\n" + format_number(c.rho) + "," +
           format_number(c.kappa) + "," + format_number(c.kappa_tilde) + "\n";
  json j = mwi::io::to_json(c);
  if (a.samples > 0) {
    auto rep = mwi::verify_pointwise(a.rho, a.dim, a.samples, c, cfg.seed);
    j["pointwise"] = {{"dim", a.dim},
                      {"seed", cfg.seed},
                      {"samples", rep.samples},
                      {"distance_violations", rep.distance_violations},
                      {"growth_violations", rep.growth_violations},
                      {"max_violation", rep.max_violation}};
  }
  return dump(j);
}

struct VerifyArgs {
  std::string level = "quick";
  std::string fixtures;
  std::vector<int> criteria;
};

// Family LP cross-check at n = 200, run by the full level.
bool large_lp_check(std::string& line) {
  const int n = 200;
  const double z = 1.0, rho = 1.5;
  mwi::Family f = mwi::family_1d(n, z);
  mwi::TransportOptions lp_path;
  lp_path.force_lp = true;
  double w = mwi::wasserstein(f.mu, f.nu, {rho}, mwi::Norm::euclidean(),
                              lp_path).value;
  double expected = std::pow(z, rho) / ((n - 1) * z + 1.0);
  double w_pow = std::pow(w, rho);
  auto b = mwi::mot_bounds({f.mu, f.nu, rho, mwi::Norm::euclidean()});
  double cost = ((n - 1) * z + std::pow(z, rho)) / ((n - 1) * z + 1.0);
  bool ok = std::abs(w_pow - expected) <= 1e-8 &&
            b.upper_cost >= cost - 1e-9 && b.lower_cost <= b.upper_cost + 1e-9;
  line = std::string(ok ? "[PASS] " : "[FAIL] ") +
         "n=200 family LP: W^rho " + format_number(w_pow) + " vs " +
         format_number(expected) + ", mot [" + format_number(b.lower_cost) +
         ", " + format_number(b.upper_cost) + "] vs coupling cost " +
         format_number(cost);
  return ok;
}

int cmd_verify_all(const RunConfig& cfg, const VerifyArgs& a) {
  using namespace mwi::acceptance;
  Level level = a.level == "full" ? Level::kFull : Level::kQuick;
  std::vector<int> ids = a.criteria;
  for (int id : ids)
    if (id < 1 || id > kCriterionCount)
      throw UsageError("--criteria: ids must be in 1.." +
                       std::to_string(kCriterionCount));
  if (ids.empty())
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);

  std::ostringstream log;
  bool all = true;
  auto line = [&](const std::string& s) {
    log << s << "\n";
    if (cfg.output.empty()) std::cout << s << std::endl;
  };
  if (!a.fixtures.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.fixtures))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        auto mu = mwi::io::read_measure(f.string());
        line("[PASS] fixture " + f.filename().string() + ": " +
             std::to_string(mu.size()) + " atoms in dimension " +
             std::to_string(mu.dim()));
      } catch (const mwi::Error& e) {
        all = false;
        line("[FAIL] fixture " + f.filename().string() + ": " + e.what());
      }
    }
  }
  for (int id : ids) {
    CriterionResult r = run_criterion(id, level);
    all = all && r.passed;
    line(format_line(r));
  }
  if (level == Level::kFull && a.criteria.empty()) {
    std::string s;
    all = large_lp_check(s) && all;
    line(s);
  }
  line(all ? "all checks passed" : "some checks failed");
  if (!cfg.output.empty()) emit(cfg, log.str());
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Martingale optimal transport and Wasserstein inequality tools"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--feas-tol", cfg.feas_tol, "LP feasibility tolerance")
      ->capture_default_str();
  app.add_option("--sigma-tol", cfg.sigma_tol,
                 "step tolerance of the central moment optimizer")
      ->capture_default_str();
  app.add_option("--max-evaluations", cfg.max_evaluations,
                 "central moment optimizer budget")
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "write the report to this file");
  app.add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--norm", cfg.norm, "euclidean, p:<p> or sup")
      ->capture_default_str();

  PairArgs pair;
  std::string q_text = "1";
  bool with_coupling = false, force_lp = false;
  auto* w = app.add_subcommand("wasserstein", "W_q between two measures");
  add_pair(w, pair);
  w->add_option("--q", q_text, "order in [1, inf]")->capture_default_str();
  w->add_flag("--coupling", with_coupling, "include the optimal coupling");
  w->add_flag("--force-lp", force_lp, "skip the 1D quantile shortcut");

  double rho = 2.0;
  auto* mot = app.add_subcommand("mot", "extremal martingale transport costs");
  add_pair(mot, pair);
  mot->add_option("--rho", rho, "cost exponent")->capture_default_str();
  mot->add_flag("--coupling", with_coupling, "include the optimal couplings");

  auto* co = app.add_subcommand("convex-order", "test mu <=_cx nu");
  add_pair(co, pair);

  auto* rt = app.add_subcommand("ratio", "martingale Wasserstein ratio");
  add_pair(rt, pair);
  rt->add_option("--rho", rho, "cost exponent")->capture_default_str();
  rt->add_option("--q", q_text, "Wasserstein order in [1, inf]")
      ->capture_default_str();

  SweepArgs sweep;
  auto* fs_cmd = app.add_subcommand("family-sweep",
                                    "ratio sweep over the counterexample family (CSV)");
  fs_cmd->add_option("--rho", sweep.rho)->required();
  fs_cmd->add_option("--q", sweep.q)->capture_default_str();
  fs_cmd->add_option("--z", sweep.z, "fixed spread z > 0");
  fs_cmd->add_option("--alpha", sweep.alpha, "z = n^-alpha, alpha in [0, 1)");
  fs_cmd->add_option("--n", sweep.ns, "list of n >= 2")->delimiter(',');
  fs_cmd->add_option("--theta", sweep.theta, "use the rotated planar family");
  fs_cmd->add_option("--lp-cap", sweep.lp_cap,
                     "largest n solved by LP; larger rows use closed forms")
      ->capture_default_str();

  LemmaArgs lemma;
  auto* lc = app.add_subcommand("lemma-constants",
                                "two-point constants kappa and kappa_tilde");
  lc->add_option("--rho", lemma.rho)->required();
  lc->add_option("--samples", lemma.samples,
                 "pointwise check sample count (0 skips it)");
  lc->add_option("--dim", lemma.dim, "dimension of the pointwise check")
      ->capture_default_str();
  lc->add_flag("--force-numeric", lemma.force_numeric,
               "run the optimizer at rho = 2");

  VerifyArgs verify;
  auto* va = app.add_subcommand("verify-all", "run the acceptance checks");
  va->add_option("--level", verify.level)
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  va->add_option("--fixtures", verify.fixtures,
                 "directory of measure files that must parse")
      ->check(CLI::ExistingDirectory);
  va->add_option("--criteria", verify.criteria, "subset of criterion ids")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    validate(cfg);
    std::string text;
    if (*w) {
      text = cmd_wasserstein(cfg, pair, q_text, with_coupling, force_lp);
    } else if (*mot) {
      text = cmd_mot(cfg, pair, rho, with_coupling);
    } else if (*co) {
      text = cmd_convex_order(cfg, pair);
    } else if (*rt) {
      text = cmd_ratio(cfg, pair, rho, q_text);
    } else if (*fs_cmd) {
      text = cmd_family_sweep(cfg, sweep);
    } else if (*lc) {
      text = cmd_lemma_constants(cfg, lemma);
    } else if (*va) {
      return cmd_verify_all(cfg, verify);
    }
    emit(cfg, text);
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const mwi::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const mwi::NotInConvexOrder& e) {
    std::cerr << "not in convex order: " << e.what() << "\n";
    return kNotOrdered;
  } catch (const mwi::SolverLimit& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return kSolverLimit;
  } catch (const mwi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
