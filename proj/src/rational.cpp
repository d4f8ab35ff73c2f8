#include "gsds/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gsds {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' &&
        c != '+') {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in: " + text);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational acc(1);
  Rational b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

std::size_t bit_size(const Rational& q) {
  std::size_t n = mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
  std::size_t d = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
  return n > d ? n : d;
}

}  // namespace gsds
