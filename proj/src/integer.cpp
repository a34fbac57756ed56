#include "arl/integer.hpp"

#include <stdexcept>

namespace arl {

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

unsigned long valuation(const Integer& n, Prime l) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = abs(n);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), l)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), l);
    ++v;
  }
  return v;
}

bool is_power_of(const Integer& n, Prime l) {
  if (n <= 0) return false;
  Integer m = n;
  while (m != 1) {
    if (!mpz_divisible_ui_p(m.get_mpz_t(), l)) return false;
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), l);
  }
  return true;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string to_string(const Integer& n) { return n.get_str(); }

Integer mod_floor(const Integer& n, const Integer& m) {
  if (m == 0) return n;
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace arl
