#pragma once

#include <optional>
#include <vector>

#include "crdc/scalar.hpp"

namespace crdc {

// Exact-rational matrix representing a morphism of the linear subcategory,
// stored row-major. A LinMap with r rows and c cols is a map from dimension
// c to dimension r; the dagger is the transpose.
class LinMap {
 public:
  LinMap() : rows_(0), cols_(0) {}
  LinMap(Dim rows, Dim cols);  // zero matrix

  static LinMap identity(Dim n);
  static LinMap zero(Dim rows, Dim cols) { return LinMap(rows, cols); }
  static LinMap from_rows(const std::vector<std::vector<Rat>>& rows);
  // pi_{lo..lo+len} : src -> len
  static LinMap projection(Dim src, Dim lo, Dim len);
  // transpose of projection : len -> dst, inserting at lo
  static LinMap injection(Dim dst, Dim lo, Dim len);
  // stacked identities (the k-fold copy map): k*n x n
  static LinMap copy_map(Dim n, int k);

  Dim rows() const { return rows_; }
  Dim cols() const { return cols_; }

  const Rat& at(Dim i, Dim j) const { return a_[idx(i, j)]; }
  Rat& at(Dim i, Dim j) { return a_[idx(i, j)]; }

  LinMap dagger() const;
  LinMap operator-() const;
  friend LinMap operator*(const LinMap& g, const LinMap& f);  // composition g.f
  friend LinMap operator+(const LinMap& a, const LinMap& b);
  bool operator==(const LinMap& o) const = default;

  static LinMap block_diag(const LinMap& a, const LinMap& b);
  static LinMap vstack(const LinMap& top, const LinMap& bottom);

  std::vector<Rat> apply(const std::vector<Rat>& x) const;
  Vector apply(const Vector& x) const;  // rational vectors only
  std::vector<double> real_entries() const;  // row-major nearest-double mirror

  bool is_zero() const;
  bool is_identity() const;
  // 0/1 matrix with exactly one 1 per row: output i copies input row_map[i].
  // Projections, permutations and copy maps are all of this shape.
  std::optional<std::vector<Dim>> row_functional() const;

  std::string str() const;

 private:
  size_t idx(Dim i, Dim j) const { return static_cast<size_t>(i) * cols_ + j; }
  Dim rows_, cols_;
  std::vector<Rat> a_;
};

Dim rank(const LinMap& a);
bool is_invertible(const LinMap& a);
LinMap inverse(const LinMap& a);  // throws on singular

// Basis of {x : Ax = 0} as columns; cols() == a.cols() - rank(a).
LinMap kernel_basis(const LinMap& a);

enum class SolveStatus { Unique, NonUnique, NoSolution };

struct SolveResult {
  SolveStatus status;
  Vector x;  // particular solution when consistent (free variables zero)
};

SolveResult solve_exact(const LinMap& a, const Vector& b);

struct MatrixSolveResult {
  SolveStatus status;
  LinMap x;
};

// Solve A X = B columnwise; Unique iff A has full column rank.
MatrixSolveResult solve_matrix(const LinMap& a, const LinMap& b);

// Pullback of a cospan r1 : N -> Y <- M : l2, i.e. the limit
// {(n, m) : r1 n = l2 m} embedded in N x M.
struct PullbackData {
  Dim apex_dim;
  LinMap b0;       // apex -> N
  LinMap b1;       // apex -> M
  LinMap pairing;  // apex -> N x M, stacked [b0; b1], full column rank
};

PullbackData pullback_generic(const LinMap& r1, const LinMap& l2);
// Combinatorial path for row-functional 0/1 legs (variable sharing).
std::optional<PullbackData> pullback_fast(const LinMap& r1, const LinMap& l2);
PullbackData pullback(const LinMap& r1, const LinMap& l2);

}  // namespace crdc
