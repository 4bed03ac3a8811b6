#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chenres {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
Rational parse_rational(const std::string& s);

// Serializes canonically: integer as "p", otherwise "p/q".
std::string rational_str(const Rational& q);

// Binomial coefficient with the convention C(n, m) = 0 for n < m or m < 0.
Integer binomial(long n, long m);

long long binomial_ll(long n, long m);

// Dense polynomial in one variable, coefficient vector c[0] + c[1] k + ...
using Poly = std::vector<Rational>;

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Rational poly_eval(const Poly& p, long k);
std::string poly_str(const Poly& p);

}  // namespace chenres
