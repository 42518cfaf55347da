#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "curvjet/linalg.hpp"
#include "curvjet/rational.hpp"

namespace curvjet {

// Packed exponent vector: one nibble per variable in bits 0..47, the exponent
// of the last variable copied into bits 48..53 and the total degree into bits
// 56..63. Codes of monomials over the same variable set add under
// multiplication, and the high bits make degree/last-variable grading cheap.
namespace mono {

constexpr int kMaxVars = 12;
constexpr int kMaxDegree = 15;
constexpr std::uint64_t kOne = 0;

std::uint64_t variable(int var, int vars, int power = 1);
std::uint64_t make(const std::vector<int>& exps, int vars);
std::vector<int> exponents(std::uint64_t code, int vars);

inline int exponent(std::uint64_t code, int var) { return static_cast<int>((code >> (4 * var)) & 0xF); }
inline int degree(std::uint64_t code) { return static_cast<int>(code >> 56); }
inline int last_exponent(std::uint64_t code) { return static_cast<int>((code >> 48) & 0x3F); }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a + b; }

// Divides by the given variable (exponent must be positive).
std::uint64_t div_var(std::uint64_t code, int var, int vars);

// Canonical term order: total degree, then last-variable exponent, then
// lexicographic in the exponent vector.
bool graded_less(std::uint64_t a, std::uint64_t b);

struct GradedLess {
  bool operator()(std::uint64_t a, std::uint64_t b) const { return graded_less(a, b); }
};

}  // namespace mono

// Multivariate formal power series over Q, truncated at a total degree. The
// order is the reliable truncation order: coefficients beyond it are unknown,
// not zero, and operations propagate the tightest order of their inputs.
class TruncatedSeries {
 public:
  using TermMap = std::map<std::uint64_t, Rational, mono::GradedLess>;

  TruncatedSeries() = default;
  TruncatedSeries(int vars, int order);
  static TruncatedSeries constant(int vars, int order, const Rational& value);
  static TruncatedSeries variable(int vars, int order, int var);  // 0-based variable

  int vars() const { return vars_; }
  int order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(std::uint64_t code) const;
  Rational coeff(const std::vector<int>& exps) const;
  Rational coeff(std::initializer_list<int> exps) const { return coeff(std::vector<int>(exps)); }
  void set_coeff(std::uint64_t code, const Rational& value);

  Rational at_origin() const { return coeff(mono::kOne); }
  TruncatedSeries jet_part(int deg) const;
  TruncatedSeries truncated(int order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator+=(const Rational& c);
  TruncatedSeries& operator-=(const Rational& c);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator+(TruncatedSeries a, const Rational& c) { return a += c; }
  friend TruncatedSeries operator-(TruncatedSeries a, const Rational& c) { return a -= c; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(TruncatedSeries a);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  // Formal partial derivative; the result is reliable only to order-1.
  TruncatedSeries derivative(int var) const;

  // Multiplicative inverse; requires a nonzero constant term.
  TruncatedSeries inverted() const;

  // Substitution x -> map * x for a linear map on the variables.
  TruncatedSeries composed_linear(const RatMatrix& map) const;

 private:
  void check_same_shape(const TruncatedSeries& o) const;

  int vars_ = 0;
  int order_ = 0;
  TermMap terms_;
};

// Matrix of series sharing one (vars, order) shape.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int rows, int cols, int vars, int order);
  static SeriesMatrix from_constant(const RatMatrix& m, int vars, int order);
  static SeriesMatrix identity(int n, int vars, int order);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vars() const { return vars_; }
  int order() const { return order_; }

  TruncatedSeries& operator()(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const TruncatedSeries& operator()(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

  SeriesMatrix transposed() const;
  bool is_symmetric() const;
  bool is_zero() const;
  RatMatrix constant_term() const;
  SeriesMatrix truncated(int order) const;
  SeriesMatrix composed_linear(const RatMatrix& map) const;

  SeriesMatrix& operator+=(const SeriesMatrix& o);
  SeriesMatrix& operator-=(const SeriesMatrix& o);
  friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix& b) { return a += b; }
  friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix& b) { return a -= b; }
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const TruncatedSeries& s, SeriesMatrix a);
  friend SeriesMatrix operator*(SeriesMatrix a, const Rational& c);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

  // Inverse through the truncation order; the constant term must be invertible.
  SeriesMatrix inverted() const;

 private:
  int rows_ = 0, cols_ = 0, vars_ = 0, order_ = 0;
  std::vector<TruncatedSeries> e_;
};

// Square root with constant term identity: the result S satisfies S*S == m
// through the truncation order and is the unique such series matrix. Newton
// iteration Y <- (Y + Y^-1 m)/2 doubles the valid degree each step. When m is
// self-adjoint for some bilinear form, so is the result.
SeriesMatrix series_sqrt(const SeriesMatrix& m);

}  // namespace curvjet
