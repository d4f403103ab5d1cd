#include "mwi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mwi/errors.hpp"

namespace mwi::io {

namespace {

json number_or_string(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json coords_json(ReducedCoords c) {
  return {{"z", number_or_string(c.z)}, {"omega", number_or_string(c.omega)}};
}

}  // namespace

json to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (int i = 0; i < mu.size(); ++i) {
    auto p = mu.point(i);
    atoms.push_back({{"x", std::vector<double>(p.begin(), p.end())},
                     {"w", mu.weight(i)}});
  }
  return {{"dim", mu.dim()}, {"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("measure must be a JSON object");
    if (!j.contains("dim") || !j.contains("atoms"))
      throw ParseError("measure needs \"dim\" and \"atoms\"");
    int dim = j.at("dim").get<int>();
    if (dim < 1) throw ParseError("\"dim\" must be positive");
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
    for (const auto& atom : j.at("atoms")) {
      auto x = atom.at("x").get<std::vector<double>>();
      if (static_cast<int>(x.size()) != dim)
        throw ParseError("atom has " + std::to_string(x.size()) +
                         " coordinates, expected " + std::to_string(dim));
      points.push_back(std::move(x));
      weights.push_back(atom.at("w").get<double>());
    }
    return DiscreteMeasure::make(points, weights);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed measure: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid measure: ") + e.what());
  }
}

DiscreteMeasure read_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measure file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  try {
    return measure_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_measure(const std::string& path, const DiscreteMeasure& mu) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << to_json(mu).dump(2) << "\n";
}

json to_json(const Coupling& coupling, double cost) {
  json entries = json::array();
  for (const auto& e : coupling.entries())
    entries.push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}});
  return {{"source", to_string(coupling.origin())},
          {"cost", cost},
          {"entries", entries},
          {"mu", to_json(coupling.source())},
          {"nu", to_json(coupling.target())}};
}

json to_json(const MotBounds& b, double rho, const Norm& norm) {
  return {{"rho", rho},
          {"norm", norm.to_string()},
          {"lower_cost", b.lower_cost},
          {"upper_cost", b.upper_cost},
          {"argmin", to_json(b.argmin, b.lower_cost)},
          {"argmax", to_json(b.argmax, b.upper_cost)}};
}

json to_json(const Supremum& s) {
  return {{"value", s.value},
          {"argmax", coords_json(s.argmax)},
          {"location", to_string(s.where)},
          {"distance_to_base", number_or_string(s.distance_to_base)},
          {"pass_values", s.pass_values},
          {"converged", s.converged},
          {"evaluations", s.evaluations}};
}

json to_json(const LemmaConstants& c) {
  return {{"rho", c.rho},
          {"kappa", c.kappa},
          {"kappa_tilde", c.kappa_tilde},
          {"argmaxes",
           {{"kappa", to_json(c.kappa_detail)},
            {"kappa_tilde", to_json(c.kappa_tilde_detail)}}},
          {"tol", c.optimizer_tol}};
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string ratio_csv_header() {
  return "rho,q,n,z,theta,w_q,sigma,mot_lower,mot_upper,ratio_lower,"
         "ratio_upper";
}

std::string ratio_csv_row(const RatioReport& r, int n, double z,
                          double theta) {
  std::ostringstream os;
  os << format_number(r.rho) << ',' << r.q.to_string() << ',' << n << ','
     << format_number(z) << ',' << format_number(theta) << ','
     << format_number(r.w_q) << ',' << format_number(r.sigma_value) << ','
     << format_number(r.mot_lower) << ',' << format_number(r.mot_upper) << ','
     << format_number(r.ratio_lower) << ',' << format_number(r.ratio_upper);
  return os.str();
}

}  // namespace mwi::io
