#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace mwi {

// Index in [0, +inf]. Transport and moment routines require value >= 1; the
// sigma index of the inequality may drop below 1 (q = inf, rho < 2).
struct ExtendedIndex {
  double value = 1.0;

  static ExtendedIndex infinity() {
    return {std::numeric_limits<double>::infinity()};
  }
  static ExtendedIndex finite(double v) { return {v}; }

  bool is_infinite() const { return std::isinf(value); }
  bool operator==(const ExtendedIndex&) const = default;

  // Accepts a number or one of "inf", "infinity", "oo".
  static ExtendedIndex parse(std::string_view text);
  std::string to_string() const;
};

// Norm on R^d. Euclidean is the distinguished one; p-norms and the sup-norm are
// handled through their equivalence constant lambda with
// ||z|| / lambda <= |z| <= lambda ||z||.
class Norm {
 public:
  enum class Kind { kEuclidean, kP, kSup };

  static Norm euclidean() { return Norm(Kind::kEuclidean, 2.0); }
  static Norm p_norm(double p);
  static Norm sup() {
    return Norm(Kind::kSup, std::numeric_limits<double>::infinity());
  }
  // "euclidean", "p:<p>" or "sup".
  static Norm parse(std::string_view text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  bool is_euclidean() const {
    return kind_ == Kind::kEuclidean || (kind_ == Kind::kP && p_ == 2.0);
  }

  double operator()(std::span<const double> v) const;
  double distance(std::span<const double> a, std::span<const double> b) const;

  // d^{|1/2 - 1/p|}; 1 for the Euclidean norm, sqrt(d) for the sup-norm.
  double equivalence_lambda(int dim) const;

  std::string to_string() const;
  bool operator==(const Norm&) const = default;

 private:
  Norm(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

}  // namespace mwi
