#include "crdc/poly.hpp"

#include <algorithm>

namespace crdc {

thread_local int EvalOps<Poly>::ambient_nvars = 0;

Poly Poly::constant(int nvars, Rat c) {
  Poly p(nvars);
  if (sgn(c) != 0) p.terms_.emplace(Monomial(static_cast<size_t>(nvars), 0u), std::move(c));
  return p;
}

Poly Poly::var(int nvars, int i) {
  Poly p(nvars);
  Monomial m(static_cast<size_t>(nvars), 0u);
  m[static_cast<size_t>(i)] = 1;
  p.terms_.emplace(std::move(m), Rat(1));
  return p;
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (sgn(c) != 0) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(ma);
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly Poly::scaled(const Rat& c) const {
  Poly out(nvars_);
  if (sgn(c) == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

Poly Poly::partial(int j) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m[static_cast<size_t>(j)];
    if (e == 0) continue;
    Monomial d(m);
    d[static_cast<size_t>(j)] -= 1;
    out.add_term(d, c * Rat(static_cast<long>(e)));
  }
  return out;
}

Poly Poly::embedded(int nvars, int shift) const {
  Poly out(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e(static_cast<size_t>(nvars), 0u);
    for (size_t i = 0; i < m.size(); ++i) e[static_cast<size_t>(shift) + i] = m[i];
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

Rat Poly::eval_at(std::span<const Rat> x) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
    acc += t;
  }
  return acc;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += rat_to_string(c);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      s += "*x" + std::to_string(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
  }
  return s;
}

PolyMap poly_canonical(const TermPtr& t) {
  check_domain(t, DomainTag::PolyOverRationals);
  int n = t->dom;
  EvalOps<Poly>::ambient_nvars = n;
  std::vector<Poly> vars;
  vars.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(Poly::var(n, i));
  return eval_generic<Poly>(*t, std::span<const Poly>(vars));
}

bool poly_map_equal(const PolyMap& a, const PolyMap& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace crdc
