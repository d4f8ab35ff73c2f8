// Exact rational coefficients for the whole symbolic pipeline.
//
// Backed by GMP's mpq_class: always canonical (reduced, denominator > 0,
// zero stored as 0/1). Floats appear only in the numeric solvers.

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace gsds {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonicalized construction; mpq_class(n, d) alone does not reduce.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "3", "-7/2", "3/2". Throws std::invalid_argument on junk or
// zero denominator.
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::complex<double> to_complex(const Rational& q) {
  return {q.get_d(), 0.0};
}

Rational pow(const Rational& base, unsigned exponent);

// Number of bits of the larger of |numerator|, denominator. Used by the
// coefficient blow-up guard in the elimination stage.
std::size_t bit_size(const Rational& q);

}  // namespace gsds
