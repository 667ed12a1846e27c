#pragma once

#include <gmpxx.h>

#include <cmath>
#include <span>
#include <string>
#include <string_view>

namespace rdp {

/// Exact scalar: arbitrary-precision rational in canonical form.
using Rational = mpq_class;

enum class Mode { Exact, Float };

/// Uniform access to the two scalar types used throughout the library.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::Exact;
  static constexpr std::string_view name = "exact";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational fromInt(long v) { return Rational(v); }
  static Rational fromRatio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  static bool isZero(const Rational& v) { return sgn(v) == 0; }
  static bool isNegative(const Rational& v) { return sgn(v) < 0; }
  static Rational absolute(const Rational& v) { return abs(v); }
  static double toDouble(const Rational& v) { return v.get_d(); }
  static std::string toString(const Rational& v) { return v.get_str(); }
  static Rational parse(std::string_view text);
};

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::Float;
  static constexpr std::string_view name = "float";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double fromInt(long v) { return static_cast<double>(v); }
  static double fromRatio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool isZero(double v) { return v == 0.0; }
  static bool isNegative(double v) { return v < 0.0; }
  static double absolute(double v) { return std::fabs(v); }
  static double toDouble(double v) { return v; }
  static std::string toString(double v);
  static double parse(std::string_view text);
};

/// Shortest round-trip decimal representation of a double.
std::string formatDouble(double v);

/// Exact integer power of a rational.
Rational powRational(const Rational& base, unsigned exponent);

/// Neumaier-compensated accumulator; terms must be added in a fixed order.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Accumulator that is exact for rationals and compensated for doubles.
template <class S>
class Accumulator {
 public:
  void add(const S& term) { sum_ += term; }
  S value() const { return sum_; }

 private:
  S sum_ = ScalarTraits<S>::zero();
};

template <>
class Accumulator<double> {
 public:
  void add(double term) { sum_.add(term); }
  double value() const { return sum_.value(); }

 private:
  CompensatedSum sum_;
};

}  // namespace rdp
