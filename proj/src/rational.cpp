#include "moserlp/rational.hpp"

#include <cctype>

namespace moser {

namespace {

bool valid_integer(const std::string& s, size_t begin, size_t end) {
  if (begin >= end) return false;
  size_t i = begin;
  if (s[i] == '-' || s[i] == '+') ++i;
  if (i >= end) return false;
  for (; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& token) {
  size_t slash = token.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer(token, 0, token.size())) return std::nullopt;
  } else {
    if (!valid_integer(token, 0, slash)) return std::nullopt;
    if (!valid_integer(token, slash + 1, token.size())) return std::nullopt;
    // Denominator must be a positive integer.
    size_t d = slash + 1;
    if (token[d] == '-' || token[d] == '+') return std::nullopt;
  }
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), token.c_str(), 10) != 0) return std::nullopt;
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  int sign = sgn(r);
  if (sign < 0) return std::nullopt;
  if (sign == 0) return Rational(0);
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t())) return std::nullopt;
  if (!mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  // num and den are coprime, so their square roots are too.
  return Rational(sn, sd);
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace moser
