#include "curvjet/rational.hpp"

#include <cctype>

namespace curvjet {

Rational parse_rational(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  if (text.empty()) fail();
  std::size_t i = 0;
  auto scan_int = [&] {
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail();
  };
  scan_int();
  if (i < text.size()) {
    if (text[i] != '/') fail();
    ++i;
    scan_int();
    if (i != text.size()) fail();
  }
  Rational r;
  if (r.set_str(text, 10) != 0) fail();
  if (sgn(r.get_den()) == 0) fail();
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational root(rn, rd);
  root.canonicalize();
  return root;
}

}  // namespace curvjet
