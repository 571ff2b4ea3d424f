#include "freeprod/arith.hpp"

#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace freeprod {

BigInt falling(long n, long k) {
  if (k < 0) throw std::invalid_argument("falling: negative k");
  if (k > n) return 0;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) r *= n - i;
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal(const Rational& r, int digits) {
  // Enough binary precision for the requested digits plus slack.
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  f = r;
  int n = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  return std::string(buf.data());
}

double to_double(const Rational& r) { return r.get_d(); }

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) { return std::lcm(a, b); }

int mobius(long n) {
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace freeprod
