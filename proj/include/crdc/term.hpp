#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "crdc/linmap.hpp"
#include "crdc/scalar.hpp"

namespace crdc {

// Evaluation domain. Smooth evaluates over Real64 and admits sin/cos/exp;
// the polynomial tags evaluate over exact rationals and exclude them.
enum class DomainTag { Smooth, PolyOverRationals, PolyOverIntegers };

inline bool is_poly_domain(DomainTag t) { return t != DomainTag::Smooth; }
std::string domain_name(DomainTag t);

enum class TermOp {
  Id,
  Proj,
  Pair,
  Comp,
  Zero,
  Add,
  Neg,
  Linear,
  ConstVec,
  One,
  Mul,
  Sin,
  Cos,
  Exp
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Typed syntax tree for a morphism dom -> cod. Immutable after construction;
// the factory functions below are the only way to build one and they reject
// ill-typed nodes, so dom/cod are always trustworthy.
class Term {
 public:
  TermOp op;
  Dim dom = 0, cod = 0;
  Dim proj_lo = 0;             // Proj: slice [proj_lo, proj_lo+cod) of dom
  std::vector<TermPtr> kids;   // Pair parts | Comp {outer, inner} | Add {f, g} | Neg {f}
  LinMap mat;                  // Linear
  Vector cvec;                 // ConstVec
  std::vector<double> realc;   // cached double mirror of mat / cvec entries

  const TermPtr& outer() const { return kids[0]; }
  const TermPtr& inner() const { return kids[1]; }

 private:
  Term() = default;
  friend struct TermFactory;
};

TermPtr t_id(Dim n);
TermPtr t_proj(Dim src, Dim lo, Dim len);
TermPtr t_pair(std::vector<TermPtr> parts);
TermPtr t_comp(TermPtr outer, TermPtr inner);
TermPtr t_zero(Dim dom, Dim cod);
TermPtr t_add(TermPtr f, TermPtr g);
TermPtr t_neg(TermPtr f);
TermPtr t_linear(LinMap a);
TermPtr t_const(Vector v);
TermPtr t_one(Dim cod);
TermPtr t_mul();
TermPtr t_sin();
TermPtr t_cos();
TermPtr t_exp();

// the constant-one morphism 1_{dom,cod} = one(cod) . !_dom
TermPtr t_one_map(Dim dom, Dim cod);
// embed a constant vector as a morphism dom -> v.dim
TermPtr t_const_map(Dim dom, Vector v);

// Re-verifies the tree invariants and returns (dom, cod). TypeError carries
// the path of the offending subterm.
std::pair<Dim, Dim> typecheck(const TermPtr& t);

// Rejects constructors that are invalid under the tag: smooth primitives or
// Real64 constants under a poly tag, non-integer constants over the integers.
void check_domain(const TermPtr& t, DomainTag tag);

bool term_equal(const TermPtr& a, const TermPtr& b);
size_t term_size(const TermPtr& t);

Vector eval(const TermPtr& t, const Vector& x, DomainTag tag);

std::string serialize(const TermPtr& t);
TermPtr parse_term(const std::string& text);

// ---- generic evaluation over any commutative ring representation ----

template <class T>
struct EvalOps;  // zero / one / from_rat / mul / in-place add / neg

template <>
struct EvalOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_rat(const Rat& q) { return q; }
  static Rat mul(const Rat& a, const Rat& b) { return a * b; }
  static Rat mul_rat(const Rat& c, const Rat& x) { return c * x; }
  static void add_to(Rat& acc, const Rat& x) { acc += x; }
  static Rat neg(const Rat& x) { return -x; }
};

template <>
struct EvalOps<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rat(const Rat& q) { return rat_to_double(q); }
  static double mul(double a, double b) { return a * b; }
  static double mul_rat(const Rat& c, double x) { return rat_to_double(c) * x; }
  static void add_to(double& acc, double x) { acc += x; }
  static double neg(double x) { return -x; }
};

template <class T>
std::vector<T> eval_generic(const Term& t, std::span<const T> x) {
  using Ops = EvalOps<T>;
  if (static_cast<Dim>(x.size()) != t.dom) throw DimMismatch("eval: input dimension mismatch");
  constexpr bool is_real = std::is_same_v<T, double>;
  std::vector<T> out;
  switch (t.op) {
    case TermOp::Id:
      out.assign(x.begin(), x.end());
      break;
    case TermOp::Proj:
      out.assign(x.begin() + t.proj_lo, x.begin() + t.proj_lo + t.cod);
      break;
    case TermOp::Pair: {
      out.reserve(static_cast<size_t>(t.cod));
      for (const auto& k : t.kids) {
        auto part = eval_generic<T>(*k, x);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      }
      break;
    }
    case TermOp::Comp: {
      auto mid = eval_generic<T>(*t.inner(), x);
      out = eval_generic<T>(*t.outer(), std::span<const T>(mid));
      break;
    }
    case TermOp::Zero:
      out.assign(static_cast<size_t>(t.cod), Ops::zero());
      break;
    case TermOp::Add: {
      out = eval_generic<T>(*t.kids[0], x);
      auto rhs = eval_generic<T>(*t.kids[1], x);
      for (size_t i = 0; i < out.size(); ++i) Ops::add_to(out[i], rhs[i]);
      break;
    }
    case TermOp::Neg: {
      out = eval_generic<T>(*t.kids[0], x);
      for (auto& v : out) v = Ops::neg(v);
      break;
    }
    case TermOp::Linear: {
      out.assign(static_cast<size_t>(t.cod), Ops::zero());
      for (Dim i = 0; i < t.cod; ++i)
        for (Dim j = 0; j < t.dom; ++j) {
          if constexpr (is_real) {
            double a = t.realc[static_cast<size_t>(i) * t.dom + j];
            if (a != 0.0) Ops::add_to(out[static_cast<size_t>(i)], a * x[static_cast<size_t>(j)]);
          } else {
            const Rat& a = t.mat.at(i, j);
            if (sgn(a) != 0)
              Ops::add_to(out[static_cast<size_t>(i)], Ops::mul_rat(a, x[static_cast<size_t>(j)]));
          }
        }
      break;
    }
    case TermOp::ConstVec: {
      out.reserve(static_cast<size_t>(t.cod));
      if (t.cvec.kind() == Kind::Rational) {
        for (const Rat& q : t.cvec.rats()) out.push_back(Ops::from_rat(q));
      } else {
        if constexpr (is_real)
          for (double v : t.cvec.reals()) out.push_back(v);
        else
          throw DomainError("Real64 constant evaluated in an exact domain");
      }
      break;
    }
    case TermOp::One:
      out.assign(static_cast<size_t>(t.cod), Ops::one());
      break;
    case TermOp::Mul:
      out.push_back(Ops::mul(x[0], x[1]));
      break;
    case TermOp::Sin:
    case TermOp::Cos:
    case TermOp::Exp: {
      if constexpr (is_real) {
        double v = x[0];
        out.push_back(t.op == TermOp::Sin ? std::sin(v)
                                          : (t.op == TermOp::Cos ? std::cos(v) : std::exp(v)));
      } else {
        throw DomainError("smooth primitive evaluated in an exact domain");
      }
      break;
    }
  }
  if constexpr (is_real) {
    for (double v : out)
      if (!std::isfinite(v)) throw EvalError("non-finite float intermediate");
  }
  return out;
}

}  // namespace crdc
