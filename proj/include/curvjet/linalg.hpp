#pragma once

#include <vector>

#include "curvjet/rational.hpp"

namespace curvjet {

// Small dense matrix over exact rationals. Everything is by value; sizes stay
// at desk scale (dim <= 12) so no effort is spent on sparsity.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static RatMatrix identity(int n);
  static RatMatrix diagonal(const std::vector<Rational>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  RatMatrix transposed() const;
  bool is_symmetric() const;
  bool is_zero() const;
  bool is_identity() const;

  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator-=(const RatMatrix& o);
  RatMatrix& operator*=(const Rational& s);

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(RatMatrix a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

  // Gauss-Jordan inverse; throws std::domain_error on a singular matrix.
  RatMatrix inverse() const;
  Rational determinant() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Solves a*x = b for square nonsingular a; throws std::domain_error otherwise.
std::vector<Rational> solve_linear(RatMatrix a, std::vector<Rational> b);

// Congruence diagonalization of a symmetric matrix: basis' * sym * basis is
// diagonal with the returned entries (columns of basis = new basis vectors).
struct CongruenceDiag {
  RatMatrix basis;
  std::vector<Rational> diag;
};
CongruenceDiag congruence_diagonalize(const RatMatrix& sym);

struct Signature {
  int neg = 0;
  int pos = 0;
  int null = 0;
};
Signature signature_of(const RatMatrix& sym);

}  // namespace curvjet
