#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "crdc/errors.hpp"

namespace crdc {

// Object dimensions. Objects are natural numbers, products add, 0 is terminal.
using Dim = int;

// Exact rational. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as construction goes through rat()/rat_from_string.
using Rat = mpq_class;

Rat rat(long num, long den = 1);
Rat rat_from_string(const std::string& s);  // "p/q", "p", or a plain decimal like "0.25"
std::string rat_to_string(const Rat& q);    // "p/q", or "p" when q is integral

// Nearest-even conversion to double. Throws OverflowError outside double range.
double rat_to_double(const Rat& q);
// Every finite double is a rational; this conversion is exact.
Rat rat_from_double(double v);

std::string real_to_string(double v);  // shortest round-trip decimal

enum class Kind : std::uint8_t { Rational, Real64 };
enum class Ordering { LT, EQ, GT };

// Element of the scalar ring backing an optimization domain: an exact
// rational or a finite 64-bit float. Mixed-kind arithmetic is rejected.
class Scalar {
 public:
  Scalar() : kind_(Kind::Rational), rat_(0) {}

  static Scalar rational(Rat v) { return Scalar(std::move(v)); }
  static Scalar rational(long num, long den = 1) { return Scalar(rat(num, den)); }
  static Scalar real(double v);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }

  const Rat& rat_value() const;
  double real_value() const;

  // rational -> nearest double; identity on reals
  double to_real() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator-(const Scalar& o) const { return *this + (-o); }

  Ordering cmp(const Scalar& o) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const { return cmp(o) == Ordering::LT; }

  std::string str() const;

 private:
  explicit Scalar(Rat v) : kind_(Kind::Rational), rat_(std::move(v)) {}
  Kind kind_;
  Rat rat_;
  double real_ = 0.0;
};

// Dense vector with a single scalar kind across all entries.
class Vector {
 public:
  Vector() : kind_(Kind::Rational) {}

  static Vector rationals(std::vector<Rat> v);
  static Vector reals(std::vector<double> v);
  static Vector zeros(Kind k, Dim n);

  Dim dim() const;
  Kind kind() const { return kind_; }

  const std::vector<Rat>& rats() const;
  const std::vector<double>& reals() const;

  Scalar at(Dim i) const;
  Scalar linf_norm() const;

  // rational -> real embedding (nearest double per entry); identity on reals
  Vector to_real() const;

  bool operator==(const Vector& o) const;
  bool operator!=(const Vector& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Kind kind_;
  std::vector<Rat> rat_;
  std::vector<double> real_;
};

void check_same_kind(Kind a, Kind b, const char* what);

}  // namespace crdc
