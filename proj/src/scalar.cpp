#include "crdc/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace crdc {

void check_same_kind(Kind a, Kind b, const char* what) {
  if (a != b) throw KindMismatch(std::string(what) + ": mixed Rational/Real64 operands");
}

Rat rat(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    // exact decimal: digits / 10^k (exponents rejected; use p/q for those)
    if (s.find('e') != std::string::npos || s.find('E') != std::string::npos)
      throw Error("exponent notation not accepted for exact rationals: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw Error("bad rational literal: " + s);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  try {
    Rat q(s);
    if (q.get_den() == 0) throw Error("zero denominator in " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

double rat_to_double(const Rat& q) {
  if (sgn(q) == 0) return 0.0;
  mpz_class P = abs(q.get_num());
  mpz_class D = q.get_den();
  long bp = static_cast<long>(mpz_sizeinbase(P.get_mpz_t(), 2));
  long bd = static_cast<long>(mpz_sizeinbase(D.get_mpz_t(), 2));
  // Find s with floor(P*2^s / D) exactly 54 bits, then round the extra bit
  // to nearest-even. P/D in (2^(bp-bd-1), 2^(bp-bd+1)), so try s = 54-(bp-bd)
  // and adjust once.
  long s = 54 - (bp - bd);
  mpz_class Q, r;
  for (;;) {
    mpz_class N = P, M = D;
    if (s >= 0)
      mpz_mul_2exp(N.get_mpz_t(), N.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    else
      mpz_mul_2exp(M.get_mpz_t(), M.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
    mpz_fdiv_qr(Q.get_mpz_t(), r.get_mpz_t(), N.get_mpz_t(), M.get_mpz_t());
    long bq = static_cast<long>(mpz_sizeinbase(Q.get_mpz_t(), 2));
    if (bq == 54) break;
    s += 54 - bq;
  }
  // value = (Q + r/D') * 2^-s with Q = 2m+g
  bool guard = mpz_tstbit(Q.get_mpz_t(), 0) != 0;
  bool sticky = sgn(r) != 0;
  mpz_class m = Q >> 1;
  if (guard && (sticky || mpz_tstbit(m.get_mpz_t(), 0) != 0)) m += 1;
  long e = -(s - 1);
  if (mpz_sizeinbase(m.get_mpz_t(), 2) == 54) {  // rounding carried over
    m >>= 1;
    e += 1;
  }
  double dm = m.get_d();  // <= 2^53, exact
  double out = std::ldexp(dm, static_cast<int>(e));
  if (!std::isfinite(out))
    throw OverflowError("rational magnitude exceeds double range: " + q.get_str());
  return sgn(q) < 0 ? -out : out;
}

Rat rat_from_double(double v) {
  if (!std::isfinite(v)) throw Error("cannot convert non-finite double to rational");
  Rat q;
  mpq_set_d(q.get_mpq_t(), v);
  q.canonicalize();
  return q;
}

std::string real_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Scalar Scalar::real(double v) {
  if (!std::isfinite(v)) throw OverflowError("non-finite Real64 scalar");
  Scalar s{Rat(0)};
  s.kind_ = Kind::Real64;
  s.real_ = v;
  return s;
}

const Rat& Scalar::rat_value() const {
  if (kind_ != Kind::Rational) throw KindMismatch("rat_value on Real64 scalar");
  return rat_;
}

double Scalar::real_value() const {
  if (kind_ != Kind::Real64) throw KindMismatch("real_value on Rational scalar");
  return real_;
}

double Scalar::to_real() const {
  return kind_ == Kind::Real64 ? real_ : rat_to_double(rat_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_kind(kind_, o.kind_, "add");
  if (kind_ == Kind::Rational) return rational(rat_ + o.rat_);
  double r = real_ + o.real_;
  if (!std::isfinite(r)) throw OverflowError("Real64 addition overflow");
  return real(r);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_kind(kind_, o.kind_, "mul");
  if (kind_ == Kind::Rational) return rational(rat_ * o.rat_);
  double r = real_ * o.real_;
  if (!std::isfinite(r)) throw OverflowError("Real64 multiplication overflow");
  return real(r);
}

Scalar Scalar::operator-() const {
  if (kind_ == Kind::Rational) return rational(-rat_);
  return real(-real_);
}

Ordering Scalar::cmp(const Scalar& o) const {
  check_same_kind(kind_, o.kind_, "cmp");
  int c;
  if (kind_ == Kind::Rational)
    c = ::cmp(rat_, o.rat_);
  else
    c = real_ < o.real_ ? -1 : (real_ > o.real_ ? 1 : 0);
  return c < 0 ? Ordering::LT : (c > 0 ? Ordering::GT : Ordering::EQ);
}

bool Scalar::operator==(const Scalar& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ == Kind::Rational ? rat_ == o.rat_ : real_ == o.real_;
}

std::string Scalar::str() const {
  return kind_ == Kind::Rational ? rat_to_string(rat_) : real_to_string(real_);
}

Vector Vector::rationals(std::vector<Rat> v) {
  Vector out;
  out.kind_ = Kind::Rational;
  out.rat_ = std::move(v);
  return out;
}

Vector Vector::reals(std::vector<double> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw OverflowError("non-finite entry in Real64 vector");
  Vector out;
  out.kind_ = Kind::Real64;
  out.real_ = std::move(v);
  return out;
}

Vector Vector::zeros(Kind k, Dim n) {
  if (n < 0) throw DimMismatch("negative vector dimension");
  if (k == Kind::Rational) return rationals(std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  return reals(std::vector<double>(static_cast<size_t>(n), 0.0));
}

Dim Vector::dim() const {
  return static_cast<Dim>(kind_ == Kind::Rational ? rat_.size() : real_.size());
}

const std::vector<Rat>& Vector::rats() const {
  if (kind_ != Kind::Rational) throw KindMismatch("rats() on Real64 vector");
  return rat_;
}

const std::vector<double>& Vector::reals() const {
  if (kind_ != Kind::Real64) throw KindMismatch("reals() on Rational vector");
  return real_;
}

Scalar Vector::at(Dim i) const {
  if (i < 0 || i >= dim()) throw DimMismatch("vector index out of range");
  if (kind_ == Kind::Rational) return Scalar::rational(rat_[static_cast<size_t>(i)]);
  return Scalar::real(real_[static_cast<size_t>(i)]);
}

Scalar Vector::linf_norm() const {
  if (kind_ == Kind::Rational) {
    Rat m(0);
    for (const Rat& q : rat_) {
      Rat a = abs(q);
      if (a > m) m = a;
    }
    return Scalar::rational(m);
  }
  double m = 0;
  for (double x : real_) m = std::max(m, std::fabs(x));
  return Scalar::real(m);
}

Vector Vector::to_real() const {
  if (kind_ == Kind::Real64) return *this;
  std::vector<double> out;
  out.reserve(rat_.size());
  for (const Rat& q : rat_) out.push_back(rat_to_double(q));
  return reals(std::move(out));
}

bool Vector::operator==(const Vector& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ == Kind::Rational ? rat_ == o.rat_ : real_ == o.real_;
}

std::string Vector::str() const {
  std::string s = "(";
  for (Dim i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += at(i).str();
  }
  return s + ")";
}

}  // namespace crdc
