#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace arl {

using Integer = mpz_class;
using Vector = std::vector<Integer>;
using Prime = unsigned long;

Integer ipow(const Integer& base, unsigned long exponent);

/// l-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& n, Prime l);

/// True iff n is a positive power of l (l^0 = 1 counts).
bool is_power_of(const Integer& n, Prime l);

bool is_prime(unsigned long n);

std::string to_string(const Integer& n);

/// Representative of n modulo m in [0, |m|); m == 0 leaves n unchanged.
Integer mod_floor(const Integer& n, const Integer& m);

}  // namespace arl
