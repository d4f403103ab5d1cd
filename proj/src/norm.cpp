#include "mwi/norm.hpp"

#include <algorithm>
#include <vector>
#include <sstream>

#include "mwi/errors.hpp"

namespace mwi {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  std::string s(text);
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + s +
                          "'");
  }
}

}  // namespace

ExtendedIndex ExtendedIndex::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo" || text == "Inf")
    return infinity();
  double v = parse_double(text, "index");
  if (!(v >= 0.0)) throw InvalidArgument("index must be nonnegative");
  return {v};
}

std::string ExtendedIndex::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << value;
  return os.str();
}

Norm Norm::p_norm(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p-norm requires p >= 1");
  if (std::isinf(p)) return sup();
  return Norm(Kind::kP, p);
}

Norm Norm::parse(std::string_view text) {
  if (text == "euclidean") return euclidean();
  if (text == "sup") return sup();
  if (text.substr(0, 2) == "p:") {
    return p_norm(parse_double(text.substr(2), "norm exponent"));
  }
  throw InvalidArgument("unknown norm '" + std::string(text) +
                        "' (expected euclidean, p:<p> or sup)");
}

double Norm::operator()(std::span<const double> v) const {
  switch (kind_) {
    case Kind::kEuclidean: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case Kind::kSup: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case Kind::kP: {
      if (p_ == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
      }
      // Scale by the largest entry to avoid overflow in |x|^p.
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double x : v) s += std::pow(std::abs(x) / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
  }
  return 0.0;
}

double Norm::distance(std::span<const double> a,
                      std::span<const double> b) const {
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double buf[8];
  if (a.size() <= 8) {
    for (size_t k = 0; k < a.size(); ++k) buf[k] = a[k] - b[k];
    return (*this)(std::span<const double>(buf, a.size()));
  }
  std::vector<double> diff(a.size());
  for (size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - b[k];
  return (*this)(diff);
}

double Norm::equivalence_lambda(int dim) const {
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  double inv_p = 0.0;
  switch (kind_) {
    case Kind::kEuclidean:
      return 1.0;
    case Kind::kSup:
      inv_p = 0.0;
      break;
    case Kind::kP:
      inv_p = 1.0 / p_;
      break;
  }
  return std::pow(static_cast<double>(dim), std::abs(0.5 - inv_p));
}

std::string Norm::to_string() const {
  switch (kind_) {
    case Kind::kEuclidean:
      return "euclidean";
    case Kind::kSup:
      return "sup";
    case Kind::kP: {
      std::ostringstream os;
      os.precision(12);
      os << "p:" << p_;
      return os.str();
    }
  }
  return "";
}

}  // namespace mwi
