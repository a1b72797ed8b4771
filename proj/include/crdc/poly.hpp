#pragma once

#include <map>
#include <vector>

#include "crdc/term.hpp"

namespace crdc {

// Canonical polynomial over the rationals in a fixed number of variables:
// exponent tuple -> nonzero coefficient. Structure-independent, so two terms
// denote the same polynomial map iff their canonical forms are equal.
class Poly {
 public:
  using Monomial = std::vector<unsigned>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, Rat c);
  static Poly var(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rat& c) const;

  // formal partial derivative in variable j
  Poly partial(int j) const;
  // reinterpret over nvars variables, shifting existing variables by `shift`
  Poly embedded(int nvars, int shift) const;

  Rat eval_at(std::span<const Rat> x) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  int nvars_;
  std::map<Monomial, Rat> terms_;
};

template <>
struct EvalOps<Poly> {
  // nvars travels inside each Poly value; zero/one are patched by the caller
  // (poly_canonical) which only ever combines same-arity polynomials.
  static thread_local int ambient_nvars;
  static Poly zero() { return Poly(ambient_nvars); }
  static Poly one() { return Poly::constant(ambient_nvars, Rat(1)); }
  static Poly from_rat(const Rat& q) { return Poly::constant(ambient_nvars, q); }
  static Poly mul(const Poly& a, const Poly& b) { return a * b; }
  static Poly mul_rat(const Rat& c, const Poly& x) { return x.scaled(c); }
  static void add_to(Poly& acc, const Poly& x) { acc = acc + x; }
  static Poly neg(const Poly& x) { return -x; }
};

using PolyMap = std::vector<Poly>;  // one canonical polynomial per output coordinate

// Fully expanded representation of a polynomial-domain term.
PolyMap poly_canonical(const TermPtr& t);

bool poly_map_equal(const PolyMap& a, const PolyMap& b);

}  // namespace crdc
