#include "curvjet/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace curvjet {
namespace mono {

std::uint64_t variable(int var, int vars, int power) {
  if (var < 0 || var >= vars || vars > kMaxVars) throw std::invalid_argument("mono::variable: bad index");
  if (power < 0 || power > kMaxDegree) throw std::invalid_argument("mono::variable: bad power");
  std::uint64_t code = static_cast<std::uint64_t>(power) << (4 * var);
  if (var == vars - 1) code |= static_cast<std::uint64_t>(power) << 48;
  code |= static_cast<std::uint64_t>(power) << 56;
  return code;
}

std::uint64_t make(const std::vector<int>& exps, int vars) {
  if (static_cast<int>(exps.size()) != vars) throw std::invalid_argument("mono::make: arity mismatch");
  std::uint64_t code = kOne;
  for (int v = 0; v < vars; ++v) code = mul(code, variable(v, vars, exps[v]));
  return code;
}

std::vector<int> exponents(std::uint64_t code, int vars) {
  std::vector<int> e(vars);
  for (int v = 0; v < vars; ++v) e[v] = exponent(code, v);
  return e;
}

std::uint64_t div_var(std::uint64_t code, int var, int vars) {
  if (exponent(code, var) == 0) throw std::invalid_argument("mono::div_var: exponent is zero");
  return code - variable(var, vars, 1);
}

bool graded_less(std::uint64_t a, std::uint64_t b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  int la = last_exponent(a), lb = last_exponent(b);
  if (la != lb) return la < lb;
  for (int v = 0; v < kMaxVars; ++v) {
    int ea = exponent(a, v), eb = exponent(b, v);
    if (ea != eb) return ea < eb;
  }
  return false;
}

}  // namespace mono

TruncatedSeries::TruncatedSeries(int vars, int order) : vars_(vars), order_(order) {
  if (vars < 1 || vars > mono::kMaxVars) throw std::invalid_argument("series: variable count out of range");
  if (order < 0 || order > mono::kMaxDegree) throw std::invalid_argument("series: order out of range");
}

TruncatedSeries TruncatedSeries::constant(int vars, int order, const Rational& value) {
  TruncatedSeries s(vars, order);
  s.set_coeff(mono::kOne, value);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int vars, int order, int var) {
  TruncatedSeries s(vars, order);
  s.set_coeff(mono::variable(var, vars, 1), Rational(1));
  return s;
}

Rational TruncatedSeries::coeff(std::uint64_t code) const {
  auto it = terms_.find(code);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::coeff(const std::vector<int>& exps) const {
  return coeff(mono::make(exps, vars_));
}

void TruncatedSeries::set_coeff(std::uint64_t code, const Rational& value) {
  if (mono::degree(code) > order_) return;
  if (sgn(value) == 0)
    terms_.erase(code);
  else
    terms_[code] = value;
}

TruncatedSeries TruncatedSeries::jet_part(int deg) const {
  TruncatedSeries out(vars_, order_);
  for (const auto& [code, c] : terms_)
    if (mono::degree(code) == deg) out.terms_.emplace(code, c);
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order > order_) throw std::invalid_argument("truncated: cannot raise reliable order");
  if (order == order_) return *this;
  TruncatedSeries out(vars_, order);
  for (const auto& [code, c] : terms_) {
    if (mono::degree(code) > order) break;  // terms are degree-sorted
    out.terms_.emplace(code, c);
  }
  return out;
}

void TruncatedSeries::check_same_shape(const TruncatedSeries& o) const {
  if (vars_ != o.vars_ || order_ != o.order_)
    throw std::invalid_argument("series shape mismatch (vars/order)");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_same_shape(o);
  for (const auto& [code, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(code, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_same_shape(o);
  for (const auto& [code, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(code, -c);
    if (!inserted) {
      it->second -= c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator+=(const Rational& c) {
  set_coeff(mono::kOne, coeff(mono::kOne) + c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const Rational& c) {
  set_coeff(mono::kOne, coeff(mono::kOne) - c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [code, v] : terms_) v *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_same_shape(b);
  TruncatedSeries out(a.vars_, a.order_);
  const int order = a.order_;
  for (const auto& [ca, va] : a.terms_) {
    const int da = mono::degree(ca);
    if (da > order) break;
    for (const auto& [cb, vb] : b.terms_) {
      if (da + mono::degree(cb) > order) break;  // both maps are degree-sorted
      const std::uint64_t code = mono::mul(ca, cb);
      auto [it, inserted] = out.terms_.try_emplace(code, va * vb);
      if (!inserted) it->second += va * vb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();)
    it = sgn(it->second) == 0 ? out.terms_.erase(it) : std::next(it);
  return out;
}

TruncatedSeries operator-(TruncatedSeries a) {
  for (auto& [code, v] : a.terms_) v = -v;
  return a;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.vars_ == b.vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::derivative(int var) const {
  if (var < 0 || var >= vars_) throw std::invalid_argument("derivative: bad variable index");
  if (order_ == 0) throw std::invalid_argument("derivative: order 0 series has no derivative jet");
  TruncatedSeries out(vars_, order_ - 1);
  for (const auto& [code, c] : terms_) {
    const int e = mono::exponent(code, var);
    if (e == 0) continue;
    out.set_coeff(mono::div_var(code, var, vars_), c * e);
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverted() const {
  Rational c0 = at_origin();
  if (sgn(c0) == 0) throw std::domain_error("inverted: zero constant term");
  // 1/a = (1/c0) * sum_k t^k with t = 1 - a/c0 nilpotent to the order.
  TruncatedSeries t = *this;
  t *= Rational(-1) / c0;
  t += Rational(1);
  TruncatedSeries acc = TruncatedSeries::constant(vars_, order_, Rational(1) / c0);
  TruncatedSeries power = TruncatedSeries::constant(vars_, order_, Rational(1));
  for (int k = 1; k <= order_; ++k) {
    power = power * t;
    if (power.is_zero()) break;
    TruncatedSeries term = power;
    term *= Rational(1) / c0;
    acc += term;
  }
  return acc;
}

TruncatedSeries TruncatedSeries::composed_linear(const RatMatrix& map) const {
  if (map.rows() != vars_ || map.cols() != vars_)
    throw std::invalid_argument("composed_linear: map shape mismatch");
  // Images of the variables under x -> map * x.
  std::vector<TruncatedSeries> image;
  image.reserve(vars_);
  for (int v = 0; v < vars_; ++v) {
    TruncatedSeries lin(vars_, order_);
    for (int j = 0; j < vars_; ++j) {
      if (sgn(map(v, j)) == 0) continue;
      lin.set_coeff(mono::variable(j, vars_, 1), map(v, j));
    }
    image.push_back(std::move(lin));
  }
  // Cached powers, filled on demand.
  std::vector<std::vector<TruncatedSeries>> powers(vars_);
  auto power_of = [&](int v, int k) -> const TruncatedSeries& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(TruncatedSeries::constant(vars_, order_, Rational(1)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * image[v]);
    return cache[k];
  };
  TruncatedSeries out(vars_, order_);
  for (const auto& [code, c] : terms_) {
    TruncatedSeries term = TruncatedSeries::constant(vars_, order_, c);
    for (int v = 0; v < vars_; ++v) {
      const int e = mono::exponent(code, v);
      if (e > 0) term = term * power_of(v, e);
    }
    out += term;
  }
  return out;
}

SeriesMatrix::SeriesMatrix(int rows, int cols, int vars, int order)
    : rows_(rows), cols_(cols), vars_(vars), order_(order) {
  e_.assign(static_cast<std::size_t>(rows) * cols, TruncatedSeries(vars, order));
}

SeriesMatrix SeriesMatrix::from_constant(const RatMatrix& m, int vars, int order) {
  SeriesMatrix out(m.rows(), m.cols(), vars, order);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c).set_coeff(mono::kOne, m(r, c));
  return out;
}

SeriesMatrix SeriesMatrix::identity(int n, int vars, int order) {
  return from_constant(RatMatrix::identity(n), vars, order);
}

SeriesMatrix SeriesMatrix::transposed() const {
  SeriesMatrix t(cols_, rows_, vars_, order_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool SeriesMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if (!((*this)(r, c) == (*this)(c, r))) return false;
  return true;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const TruncatedSeries& s) { return s.is_zero(); });
}

RatMatrix SeriesMatrix::constant_term() const {
  RatMatrix m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).at_origin();
  return m;
}

SeriesMatrix SeriesMatrix::truncated(int order) const {
  SeriesMatrix out(rows_, cols_, vars_, order);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].truncated(order);
  return out;
}

SeriesMatrix SeriesMatrix::composed_linear(const RatMatrix& map) const {
  SeriesMatrix out(rows_, cols_, vars_, order_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].composed_linear(map);
  return out;
}

SeriesMatrix& SeriesMatrix::operator+=(const SeriesMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("series matrix shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

SeriesMatrix& SeriesMatrix::operator-=(const SeriesMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("series matrix shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("series matrix shape mismatch");
  SeriesMatrix p(a.rows_, b.cols_, a.vars_, a.order_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      const TruncatedSeries& ark = a(r, k);
      if (ark.is_zero()) continue;
      for (int c = 0; c < b.cols_; ++c) {
        if (b(k, c).is_zero()) continue;
        p(r, c) += ark * b(k, c);
      }
    }
  return p;
}

SeriesMatrix operator*(const TruncatedSeries& s, SeriesMatrix a) {
  for (auto& entry : a.e_) entry = s * entry;
  return a;
}

SeriesMatrix operator*(SeriesMatrix a, const Rational& c) {
  for (auto& entry : a.e_) entry *= c;
  return a;
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.vars_ == b.vars_ && a.order_ == b.order_ &&
         a.e_ == b.e_;
}

SeriesMatrix SeriesMatrix::inverted() const {
  if (rows_ != cols_) throw std::invalid_argument("inverted: non-square series matrix");
  RatMatrix c0_inv = constant_term().inverse();  // throws std::domain_error when singular
  // m^-1 = (I + v)^-1 c0^-1 with v = c0^-1 m - I of positive valuation.
  SeriesMatrix v = SeriesMatrix::from_constant(c0_inv, vars_, order_) * (*this);
  v -= SeriesMatrix::identity(rows_, vars_, order_);
  SeriesMatrix acc = SeriesMatrix::identity(rows_, vars_, order_);
  SeriesMatrix power = SeriesMatrix::identity(rows_, vars_, order_);
  for (int k = 1; k <= order_; ++k) {
    power = power * v;
    if (power.is_zero()) break;
    if (k % 2 == 1)
      acc -= power;
    else
      acc += power;
  }
  return acc * SeriesMatrix::from_constant(c0_inv, vars_, order_);
}

SeriesMatrix series_sqrt(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("series_sqrt: non-square matrix");
  if (!m.constant_term().is_identity())
    throw std::domain_error("series_sqrt: constant term must be the identity");
  SeriesMatrix y = SeriesMatrix::identity(m.rows(), m.vars(), m.order());
  int valid = 1;  // y agrees with the root through degree valid-1
  while (valid <= m.order()) {
    y = (y + y.inverted() * m) * rat(1, 2);
    valid *= 2;
  }
  return y;
}

}  // namespace curvjet
