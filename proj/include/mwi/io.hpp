#pragma once

#include <string>

#include "json.hpp"
#include "mwi/inequality.hpp"
#include "mwi/lemma_constants.hpp"
#include "mwi/martingale.hpp"

namespace mwi::io {

using nlohmann::json;

// {"dim": d, "atoms": [{"x": [...], "w": ...}, ...]}, atoms in lexicographic
// order.
json to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const json& j);
DiscreteMeasure read_measure(const std::string& path);
void write_measure(const std::string& path, const DiscreteMeasure& mu);

// {"source": ..., "cost": c, "entries": [{"i":..,"j":..,"w":..}], "mu": ..,
// "nu": ..}. cost is whatever the caller reports as achieved.
json to_json(const Coupling& coupling, double cost);
json to_json(const MotBounds& bounds, double rho, const Norm& norm);
json to_json(const LemmaConstants& constants);
json to_json(const Supremum& sup);

// Fixed-width %.12g formatting used by every CSV writer.
std::string format_number(double v);

// rho,q,n,z,theta,w_q,sigma,mot_lower,mot_upper,ratio_lower,ratio_upper
std::string ratio_csv_header();
std::string ratio_csv_row(const RatioReport& r, int n, double z, double theta);

}  // namespace mwi::io
