#pragma once

#include <gmpxx.h>

#include <string>

namespace freeprod {

using BigInt = mpz_class;
using Rational = mpq_class;

// (n)_k = n (n-1) ... (n-k+1); zero when k > n.
BigInt falling(long n, long k);

BigInt binomial(long n, long k);
BigInt factorial(long n);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Decimal approximation with the given number of significant digits.
std::string to_decimal(const Rational& r, int digits = 12);

double to_double(const Rational& r);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
int mobius(long n);

}  // namespace freeprod
