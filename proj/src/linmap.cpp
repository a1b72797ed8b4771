#include "crdc/linmap.hpp"

#include <numeric>

namespace crdc {

LinMap::LinMap(Dim rows, Dim cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimMismatch("negative matrix dimension");
  a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Rat(0));
}

LinMap LinMap::identity(Dim n) {
  LinMap m(n, n);
  for (Dim i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

LinMap LinMap::from_rows(const std::vector<std::vector<Rat>>& rows) {
  Dim r = static_cast<Dim>(rows.size());
  Dim c = r == 0 ? 0 : static_cast<Dim>(rows[0].size());
  LinMap m(r, c);
  for (Dim i = 0; i < r; ++i) {
    if (static_cast<Dim>(rows[static_cast<size_t>(i)].size()) != c)
      throw DimMismatch("ragged matrix literal");
    for (Dim j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

LinMap LinMap::projection(Dim src, Dim lo, Dim len) {
  if (lo < 0 || len < 0 || lo + len > src) throw DimMismatch("projection slice out of range");
  LinMap m(len, src);
  for (Dim i = 0; i < len; ++i) m.at(i, lo + i) = 1;
  return m;
}

LinMap LinMap::injection(Dim dst, Dim lo, Dim len) {
  if (lo < 0 || len < 0 || lo + len > dst) throw DimMismatch("injection slice out of range");
  LinMap m(dst, len);
  for (Dim i = 0; i < len; ++i) m.at(lo + i, i) = 1;
  return m;
}

LinMap LinMap::copy_map(Dim n, int k) {
  if (k < 0) throw DimMismatch("negative copy count");
  LinMap m(n * k, n);
  for (int b = 0; b < k; ++b)
    for (Dim i = 0; i < n; ++i) m.at(b * n + i, i) = 1;
  return m;
}

LinMap LinMap::dagger() const {
  LinMap t(cols_, rows_);
  for (Dim i = 0; i < rows_; ++i)
    for (Dim j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

LinMap LinMap::operator-() const {
  LinMap m = *this;
  for (Rat& q : m.a_) q = -q;
  return m;
}

LinMap operator*(const LinMap& g, const LinMap& f) {
  if (g.cols() != f.rows()) throw DimMismatch("composition dimension mismatch");
  LinMap m(g.rows(), f.cols());
  for (Dim i = 0; i < g.rows(); ++i)
    for (Dim k = 0; k < g.cols(); ++k) {
      const Rat& gik = g.at(i, k);
      if (sgn(gik) == 0) continue;
      for (Dim j = 0; j < f.cols(); ++j) {
        const Rat& fkj = f.at(k, j);
        if (sgn(fkj) != 0) m.at(i, j) += gik * fkj;
      }
    }
  return m;
}

LinMap operator+(const LinMap& a, const LinMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("sum dimension mismatch");
  LinMap m = a;
  for (Dim i = 0; i < a.rows(); ++i)
    for (Dim j = 0; j < a.cols(); ++j) m.at(i, j) += b.at(i, j);
  return m;
}

LinMap LinMap::block_diag(const LinMap& a, const LinMap& b) {
  LinMap m(a.rows() + b.rows(), a.cols() + b.cols());
  for (Dim i = 0; i < a.rows(); ++i)
    for (Dim j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (Dim i = 0; i < b.rows(); ++i)
    for (Dim j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

LinMap LinMap::vstack(const LinMap& top, const LinMap& bottom) {
  if (top.cols() != bottom.cols()) throw DimMismatch("vstack column mismatch");
  LinMap m(top.rows() + bottom.rows(), top.cols());
  for (Dim i = 0; i < top.rows(); ++i)
    for (Dim j = 0; j < top.cols(); ++j) m.at(i, j) = top.at(i, j);
  for (Dim i = 0; i < bottom.rows(); ++i)
    for (Dim j = 0; j < bottom.cols(); ++j) m.at(top.rows() + i, j) = bottom.at(i, j);
  return m;
}

std::vector<Rat> LinMap::apply(const std::vector<Rat>& x) const {
  if (static_cast<Dim>(x.size()) != cols_) throw DimMismatch("matrix-vector dimension mismatch");
  std::vector<Rat> y(static_cast<size_t>(rows_), Rat(0));
  for (Dim i = 0; i < rows_; ++i)
    for (Dim j = 0; j < cols_; ++j) {
      const Rat& aij = at(i, j);
      if (sgn(aij) != 0) y[static_cast<size_t>(i)] += aij * x[static_cast<size_t>(j)];
    }
  return y;
}

Vector LinMap::apply(const Vector& x) const { return Vector::rationals(apply(x.rats())); }

std::vector<double> LinMap::real_entries() const {
  std::vector<double> out;
  out.reserve(a_.size());
  for (const Rat& q : a_) out.push_back(rat_to_double(q));
  return out;
}

bool LinMap::is_zero() const {
  for (const Rat& q : a_)
    if (sgn(q) != 0) return false;
  return true;
}

bool LinMap::is_identity() const {
  if (rows_ != cols_) return false;
  for (Dim i = 0; i < rows_; ++i)
    for (Dim j = 0; j < cols_; ++j)
      if (at(i, j) != Rat(i == j ? 1 : 0)) return false;
  return true;
}

std::optional<std::vector<Dim>> LinMap::row_functional() const {
  std::vector<Dim> map(static_cast<size_t>(rows_), -1);
  for (Dim i = 0; i < rows_; ++i) {
    for (Dim j = 0; j < cols_; ++j) {
      const Rat& q = at(i, j);
      if (sgn(q) == 0) continue;
      if (q != Rat(1) || map[static_cast<size_t>(i)] != -1) return std::nullopt;
      map[static_cast<size_t>(i)] = j;
    }
    if (map[static_cast<size_t>(i)] == -1) return std::nullopt;
  }
  return map;
}

std::string LinMap::str() const {
  std::string s = "[";
  for (Dim i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (Dim j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += rat_to_string(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

namespace {

// Exact Gauss-Jordan to reduced row echelon form. Returns pivot column list.
std::vector<Dim> rref(std::vector<std::vector<Rat>>& m, Dim cols) {
  std::vector<Dim> pivots;
  Dim row = 0;
  Dim rows = static_cast<Dim>(m.size());
  for (Dim col = 0; col < cols && row < rows; ++col) {
    Dim p = -1;
    for (Dim i = row; i < rows; ++i)
      if (sgn(m[static_cast<size_t>(i)][static_cast<size_t>(col)]) != 0) {
        p = i;
        break;
      }
    if (p == -1) continue;
    std::swap(m[static_cast<size_t>(p)], m[static_cast<size_t>(row)]);
    Rat inv = 1 / m[static_cast<size_t>(row)][static_cast<size_t>(col)];
    for (auto& q : m[static_cast<size_t>(row)]) q *= inv;
    for (Dim i = 0; i < rows; ++i) {
      if (i == row) continue;
      Rat f = m[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (sgn(f) == 0) continue;
      auto& ri = m[static_cast<size_t>(i)];
      auto& rr = m[static_cast<size_t>(row)];
      for (size_t j = static_cast<size_t>(col); j < ri.size(); ++j) ri[j] -= f * rr[j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rat>> to_grid(const LinMap& a) {
  std::vector<std::vector<Rat>> g(static_cast<size_t>(a.rows()));
  for (Dim i = 0; i < a.rows(); ++i) {
    g[static_cast<size_t>(i)].resize(static_cast<size_t>(a.cols()));
    for (Dim j = 0; j < a.cols(); ++j) g[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.at(i, j);
  }
  return g;
}

}  // namespace

Dim rank(const LinMap& a) {
  auto g = to_grid(a);
  return static_cast<Dim>(rref(g, a.cols()).size());
}

bool is_invertible(const LinMap& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

LinMap inverse(const LinMap& a) {
  if (a.rows() != a.cols()) throw DimMismatch("inverse of non-square matrix");
  Dim n = a.rows();
  auto g = to_grid(a);
  for (Dim i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)].resize(static_cast<size_t>(2 * n), Rat(0));
    g[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
  }
  auto pivots = rref(g, n);
  if (static_cast<Dim>(pivots.size()) != n) throw Error("matrix is singular");
  LinMap inv(n, n);
  for (Dim i = 0; i < n; ++i)
    for (Dim j = 0; j < n; ++j) inv.at(i, j) = g[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
  return inv;
}

LinMap kernel_basis(const LinMap& a) {
  auto g = to_grid(a);
  // scale each row to integer entries first; keeps elimination arithmetic on
  // integral values for longer without changing the kernel
  for (auto& row : g) {
    mpz_class l(1);
    for (const Rat& q : row)
      if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    if (l != 1)
      for (Rat& q : row) q *= Rat(l);
  }
  auto pivots = rref(g, a.cols());
  std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
  for (Dim p : pivots) is_pivot[static_cast<size_t>(p)] = true;

  Dim nullity = a.cols() - static_cast<Dim>(pivots.size());
  LinMap basis(a.cols(), nullity);
  Dim col = 0;
  for (Dim free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    basis.at(free, col) = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      const Rat& v = g[r][static_cast<size_t>(free)];
      if (sgn(v) != 0) basis.at(pivots[r], col) = -v;
    }
    ++col;
  }
  return basis;
}

namespace {

MatrixSolveResult solve_grid(const LinMap& a, const LinMap& b) {
  if (a.rows() != b.rows()) throw DimMismatch("solve dimension mismatch");
  auto g = to_grid(a);
  for (Dim i = 0; i < a.rows(); ++i)
    for (Dim j = 0; j < b.cols(); ++j)
      g[static_cast<size_t>(i)].push_back(b.at(i, j));
  auto pivots = rref(g, a.cols());
  // consistency: no row 0 = nonzero in the augmented part
  for (Dim i = static_cast<Dim>(pivots.size()); i < a.rows(); ++i)
    for (size_t j = static_cast<size_t>(a.cols()); j < g[static_cast<size_t>(i)].size(); ++j)
      if (sgn(g[static_cast<size_t>(i)][j]) != 0)
        return {SolveStatus::NoSolution, LinMap(a.cols(), b.cols())};
  LinMap x(a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    for (Dim j = 0; j < b.cols(); ++j)
      x.at(pivots[r], j) = g[r][static_cast<size_t>(a.cols() + j)];
  SolveStatus st = static_cast<Dim>(pivots.size()) == a.cols() ? SolveStatus::Unique
                                                               : SolveStatus::NonUnique;
  return {st, x};
}

}  // namespace

SolveResult solve_exact(const LinMap& a, const Vector& b) {
  if (b.dim() != a.rows()) throw DimMismatch("rhs dimension mismatch");
  LinMap bm(a.rows(), 1);
  for (Dim i = 0; i < a.rows(); ++i) bm.at(i, 0) = b.rats()[static_cast<size_t>(i)];
  auto res = solve_grid(a, bm);
  std::vector<Rat> x(static_cast<size_t>(a.cols()));
  for (Dim i = 0; i < a.cols(); ++i) x[static_cast<size_t>(i)] = res.x.at(i, 0);
  return {res.status, Vector::rationals(std::move(x))};
}

MatrixSolveResult solve_matrix(const LinMap& a, const LinMap& b) { return solve_grid(a, b); }

PullbackData pullback_generic(const LinMap& r1, const LinMap& l2) {
  if (r1.rows() != l2.rows()) throw DimMismatch("pullback boundary mismatch");
  // kernel of [r1 | -l2] : Y x (N+M)
  LinMap joint(r1.rows(), r1.cols() + l2.cols());
  for (Dim i = 0; i < r1.rows(); ++i) {
    for (Dim j = 0; j < r1.cols(); ++j) joint.at(i, j) = r1.at(i, j);
    for (Dim j = 0; j < l2.cols(); ++j) joint.at(i, r1.cols() + j) = -l2.at(i, j);
  }
  LinMap pairing = kernel_basis(joint);
  Dim apex = pairing.cols();
  LinMap b0(r1.cols(), apex), b1(l2.cols(), apex);
  for (Dim j = 0; j < apex; ++j) {
    for (Dim i = 0; i < r1.cols(); ++i) b0.at(i, j) = pairing.at(i, j);
    for (Dim i = 0; i < l2.cols(); ++i) b1.at(i, j) = pairing.at(r1.cols() + i, j);
  }
  return {apex, std::move(b0), std::move(b1), std::move(pairing)};
}

std::optional<PullbackData> pullback_fast(const LinMap& r1, const LinMap& l2) {
  if (r1.rows() != l2.rows()) throw DimMismatch("pullback boundary mismatch");
  auto rho = r1.row_functional();
  auto sig = l2.row_functional();
  if (!rho || !sig) return std::nullopt;
  // union-find over the N+M apex coordinates; each boundary row y_i imposes
  // n_{rho(i)} = m_{sig(i)}
  Dim total = r1.cols() + l2.cols();
  std::vector<Dim> parent(static_cast<size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Dim x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](Dim x, Dim y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);  // keep the smallest index as representative
    parent[static_cast<size_t>(y)] = x;
  };
  for (Dim i = 0; i < r1.rows(); ++i) unite((*rho)[static_cast<size_t>(i)], r1.cols() + (*sig)[static_cast<size_t>(i)]);

  // classes ordered by smallest member, one apex coordinate per class
  std::vector<Dim> cls(static_cast<size_t>(total), -1);
  Dim apex = 0;
  for (Dim i = 0; i < total; ++i)
    if (find(i) == i) cls[static_cast<size_t>(i)] = apex++;
  LinMap pairing(total, apex);
  for (Dim i = 0; i < total; ++i) pairing.at(i, cls[static_cast<size_t>(find(i))]) = 1;
  LinMap b0(r1.cols(), apex), b1(l2.cols(), apex);
  for (Dim j = 0; j < apex; ++j) {
    for (Dim i = 0; i < r1.cols(); ++i) b0.at(i, j) = pairing.at(i, j);
    for (Dim i = 0; i < l2.cols(); ++i) b1.at(i, j) = pairing.at(r1.cols() + i, j);
  }
  return PullbackData{apex, std::move(b0), std::move(b1), std::move(pairing)};
}

PullbackData pullback(const LinMap& r1, const LinMap& l2) {
  if (auto fast = pullback_fast(r1, l2)) return *fast;
  return pullback_generic(r1, l2);
}

}  // namespace crdc
