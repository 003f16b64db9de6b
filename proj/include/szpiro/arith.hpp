#ifndef SZPIRO_ARITH_HPP
#define SZPIRO_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "szpiro/errors.hpp"

namespace szpiro {

using Int = mpz_class;

// Natural log of a positive mpz, accurate to ~1 ulp even far beyond
// double range.
double log_mpz(const Int& n);

struct PrimePower {
    Int prime;
    unsigned exponent;
};

// Canonical prime factorization: primes strictly increasing, every listed
// prime certified, product of prime^exponent equals value.
struct Factorization {
    Int value;
    std::vector<PrimePower> factors;
};

// Shared ascending prime table (thread-safe lazy build).
const std::vector<uint32_t>& primes_to(uint32_t limit);

// Deterministic Miller-Rabin below 2^64, BPSW-style test above.
bool is_prime(const Int& n);

// n >= 1.  Trial division below 10^6, then Brent's rho with a fixed seed.
Factorization factor(const Int& n);

// Multiplicative functions, computed from the factorization.
Int radical(const Factorization& f);
unsigned omega(const Factorization& f);
Int divisor_count(const Factorization& f);
Int euler_phi(const Factorization& f);
Int sigma1(const Factorization& f);
int moebius(const Factorization& f);

Int radical(const Int& n);
unsigned omega(const Int& n);
Int divisor_count(const Int& n);
Int euler_phi(const Int& n);
Int sigma1(const Int& n);
int moebius(const Int& n);

// v_p(n) for n >= 1 and prime p (p non-prime is a domain error).
unsigned valuation(const Int& n, const Int& p);

// All divisors of the factored value, sorted ascending.
std::vector<Int> divisors(const Factorization& f);

// d(n) versus exp(1.5379 * log 2 * log n / log log n); valid for n >= 3,
// caller asserts lhs < rhs.
struct DivisorBoundMargin {
    double lhs;
    double rhs;
};
DivisorBoundMargin divisor_bound_margin(const Int& n);

// Least prime not dividing N; asserted <= 2 + 2 log N.
Int smallest_coprime_prime(const Int& n);

// 2-adic valuation helper for hot paths (n != 0).
unsigned val2(const Int& n);

}  // namespace szpiro

#endif
