#pragma once

#include <cstdint>
#include <utility>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace paracount {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int int_pow(long b, unsigned long e) { return int_pow(Int(b), e); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Moebius function; n >= 1.
int moebius(long n);

// Euler phi; n >= 1.
long euler_phi(long n);

bool is_prime(long n);

// q = p^k with p prime; throws unless q is a prime power
std::pair<long, int> prime_power_decompose(long q);

std::vector<long> prime_factors(long n);  // distinct primes, ascending

std::vector<long> divisors(long n);  // ascending

// #monic irreducibles of degree d over F_q: (1/d) sum_{e|d} mu(e) q^{d/e}
Int necklace_count(const Int& q, long d);

std::string rat_to_string(const Rat& r);

}  // namespace paracount
