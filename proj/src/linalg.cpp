#include "curvjet/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace curvjet {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(const std::vector<Rational>& d) {
  RatMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : a_)
    if (sgn(v) != 0) return false;
  return true;
}

bool RatMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  for (auto& v : a_) v *= s;
  return *this;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RatMatrix p(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& ark = a(r, k);
      if (sgn(ark) == 0) continue;
      for (int c = 0; c < b.cols_; ++c) p(r, c) += ark * b(k, c);
    }
  return p;
}

RatMatrix operator-(RatMatrix a) {
  for (auto& v : a.a_) v = -v;
  return a;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  const int n = rows_;
  RatMatrix work(*this);
  RatMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(work(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    Rational p = work(col, col);
    for (int c = 0; c < n; ++c) {
      work(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rational f = work(r, col);
      if (sgn(f) == 0) continue;
      for (int c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Rational RatMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  const int n = rows_;
  RatMatrix work(*this);
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(work(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(work(pivot, c), work(col, c));
      det = -det;
    }
    det *= work(col, col);
    for (int r = col + 1; r < n; ++r) {
      Rational f = work(r, col) / work(col, col);
      if (sgn(f) == 0) continue;
      for (int c = col; c < n; ++c) work(r, c) -= f * work(col, c);
    }
  }
  return det;
}

std::vector<Rational> solve_linear(RatMatrix a, std::vector<Rational> b) {
  if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("solve_linear shape mismatch");
  const int n = a.rows();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("singular linear system");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    Rational p = a(col, col);
    for (int c = 0; c < n; ++c) a(col, c) /= p;
    b[col] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rational f = a(r, col);
      if (sgn(f) == 0) continue;
      for (int c = 0; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  return b;
}

CongruenceDiag congruence_diagonalize(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw std::invalid_argument("congruence_diagonalize: matrix not symmetric");
  const int n = sym.rows();
  RatMatrix s(sym);
  RatMatrix basis = RatMatrix::identity(n);

  // Elementary congruence moves applied to columns of `basis`, mirrored on `s`.
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < n; ++r) {
      std::swap(basis(r, i), basis(r, j));
      std::swap(s(r, i), s(r, j));
    }
    for (int c = 0; c < n; ++c) std::swap(s(i, c), s(j, c));
  };
  auto add_col = [&](int dst, int src, const Rational& f) {
    for (int r = 0; r < n; ++r) {
      basis(r, dst) += f * basis(r, src);
      s(r, dst) += f * s(r, src);
    }
    for (int c = 0; c < n; ++c) s(dst, c) += f * s(src, c);
  };

  for (int k = 0; k < n; ++k) {
    if (sgn(s(k, k)) == 0) {
      int j = -1;
      for (int r = k + 1; r < n; ++r)
        if (sgn(s(r, r)) != 0) {
          j = r;
          break;
        }
      if (j >= 0) {
        swap_cols(k, j);
      } else {
        for (int r = k + 1; r < n && j < 0; ++r)
          if (sgn(s(k, r)) != 0) j = r;
        if (j >= 0) add_col(k, j, Rational(1));
      }
    }
    if (sgn(s(k, k)) == 0) continue;  // row/column entirely zero: degenerate direction
    for (int j = k + 1; j < n; ++j) {
      if (sgn(s(k, j)) == 0) continue;
      Rational f = -s(k, j) / s(k, k);
      add_col(j, k, f);
    }
  }

  CongruenceDiag out;
  out.basis = std::move(basis);
  out.diag.resize(n);
  for (int i = 0; i < n; ++i) out.diag[i] = s(i, i);
  return out;
}

Signature signature_of(const RatMatrix& sym) {
  CongruenceDiag d = congruence_diagonalize(sym);
  Signature sig;
  for (const Rational& v : d.diag) {
    int s = sgn(v);
    if (s < 0)
      ++sig.neg;
    else if (s > 0)
      ++sig.pos;
    else
      ++sig.null;
  }
  return sig;
}

}  // namespace curvjet
