#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <vector>

#include "szpiro/arith.hpp"

using namespace szpiro;

namespace {

// Independent sieve oracle: d, phi, sigma1, mu, rad for all n <= limit,
// computed by direct enumeration rather than through Factorization.
struct SieveOracle {
    std::vector<uint32_t> d, rad;
    std::vector<uint64_t> phi, sigma;
    std::vector<int8_t> mu;

    explicit SieveOracle(uint32_t limit) {
        d.assign(limit + 1, 0);
        sigma.assign(limit + 1, 0);
        for (uint32_t k = 1; k <= limit; ++k)
            for (uint32_t m = k; m <= limit; m += k) {
                d[m] += 1;
                sigma[m] += k;
            }
        phi.assign(limit + 1, 0);
        for (uint32_t k = 0; k <= limit; ++k) phi[k] = k;
        for (uint32_t p = 2; p <= limit; ++p)
            if (phi[p] == p)  // p prime
                for (uint32_t m = p; m <= limit; m += p) phi[m] -= phi[m] / p;
        mu.assign(limit + 1, 1);
        rad.assign(limit + 1, 1);
        for (uint32_t p = 2; p <= limit; ++p) {
            if (rad[p] != 1) continue;  // not prime
            for (uint32_t m = p; m <= limit; m += p) {
                rad[m] *= p;
                mu[m] = -mu[m];
            }
            uint64_t p2 = static_cast<uint64_t>(p) * p;
            for (uint64_t m = p2; m <= limit; m += p2) mu[m] = 0;
        }
    }
};

uint32_t brute_divisor_count(uint64_t n) {
    uint32_t c = 0;
    for (uint64_t k = 1; k * k <= n; ++k)
        if (n % k == 0) c += (k * k == n) ? 1 : 2;
    return c;
}

}  // namespace

TEST_CASE("factor basics") {
    CHECK(factor(1).factors.empty());
    Factorization f = factor(Int(6436343));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].prime == 23);
    CHECK(f.factors[0].exponent == 5);
    CHECK_THROWS_AS(factor(Int(0)), domain_error);
    CHECK_THROWS_AS(factor(Int(-5)), domain_error);
}

TEST_CASE("factor round-trips on random 64-bit semiprimes") {
    std::mt19937_64 rng(20240811);
    const std::vector<uint32_t>& ps = primes_to(1u << 20);
    std::uniform_int_distribution<size_t> pick(1000, ps.size() - 1);
    for (int i = 0; i < 40; ++i) {
        Int p(ps[pick(rng)]), q(ps[pick(rng)]);
        Int n = p * q;
        Factorization f = factor(n);
        Int prod = 1;
        for (const auto& pp : f.factors) {
            CHECK(is_prime(pp.prime));
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
            prod *= pe;
        }
        CHECK(prod == n);
        for (size_t k = 1; k < f.factors.size(); ++k)
            CHECK(f.factors[k - 1].prime < f.factors[k].prime);
    }
}

TEST_CASE("factor handles two-prime composites just past 64 bits") {
    Int p("4294967311");  // first prime above 2^32
    Int q("4294967357");
    REQUIRE(is_prime(p));
    REQUIRE(is_prime(q));
    Factorization f = factor(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == p);
    CHECK(f.factors[1].prime == q);
}

TEST_CASE("multiplicative functions match the sieve oracle up to 10^6") {
    const uint32_t limit = 1000000;
    SieveOracle o(limit);
    uint64_t mismatches = 0;
    for (uint32_t n = 1; n <= limit; ++n) {
        Factorization f = factor(Int(n));
        if (divisor_count(f) != o.d[n]) ++mismatches;
        if (euler_phi(f) != Int(static_cast<unsigned long>(o.phi[n]))) ++mismatches;
        if (sigma1(f) != Int(static_cast<unsigned long>(o.sigma[n]))) ++mismatches;
        if (moebius(f) != o.mu[n]) ++mismatches;
        if (radical(f) != o.rad[n]) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("empty-product conventions at n = 1") {
    CHECK(radical(Int(1)) == 1);
    CHECK(omega(Int(1)) == 0);
    CHECK(moebius(Int(1)) == 1);
    CHECK(divisor_count(Int(1)) == 1);
    CHECK(euler_phi(Int(1)) == 1);
    CHECK(sigma1(Int(1)) == 1);
}

TEST_CASE("divisor_count at the table value 2*3^10*109*23^5") {
    Int n = Int(2) * 59049 * 109 * 6436343;
    CHECK(divisor_count(n) == 264);
}

TEST_CASE("divisor_count equals brute-force enumeration up to 10^4") {
    for (uint64_t n = 1; n <= 10000; ++n)
        CHECK(divisor_count(Int(static_cast<unsigned long>(n))) == brute_divisor_count(n));
}

TEST_CASE("multiplicativity on coprime pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<uint64_t> pick(1, 10000);
    int done = 0;
    while (done < 300) {
        uint64_t m = pick(rng), n = pick(rng);
        if (std::gcd(m, n) != 1) continue;
        ++done;
        Int M(static_cast<unsigned long>(m)), N(static_cast<unsigned long>(n)), MN = M * N;
        CHECK(divisor_count(MN) == divisor_count(M) * divisor_count(N));
        CHECK(euler_phi(MN) == euler_phi(M) * euler_phi(N));
        CHECK(sigma1(MN) == sigma1(M) * sigma1(N));
        CHECK(moebius(MN) == moebius(M) * moebius(N));
        CHECK(radical(MN) == radical(M) * radical(N));
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(Int(720720), Int(2)) == 4);
    CHECK(valuation(Int(720720), Int(13)) == 1);
    CHECK(valuation(Int(7), Int(3)) == 0);
    CHECK_THROWS_AS(valuation(Int(12), Int(4)), domain_error);
}

TEST_CASE("divisor bound margin") {
    CHECK_THROWS_AS(divisor_bound_margin(Int(2)), domain_error);
    auto m3 = divisor_bound_margin(Int(3));
    CHECK(m3.lhs == 2.0);
    CHECK(m3.lhs < m3.rhs);
    auto mb = divisor_bound_margin(Int(720720));
    CHECK(mb.lhs == 240.0);
    CHECK(mb.lhs < mb.rhs);
}

TEST_CASE("divisor bound holds on [3, 10^6] via sieve d-values") {
    const uint32_t limit = 1000000;
    std::vector<uint16_t> d(limit + 1, 0);
    for (uint32_t k = 1; k <= limit; ++k)
        for (uint32_t m = k; m <= limit; m += k) d[m] += 1;
    double ln2 = std::log(2.0);
    uint32_t violations = 0;
    for (uint32_t n = 3; n <= limit; ++n) {
        double ln = std::log(static_cast<double>(n));
        double rhs = std::exp(1.5379 * ln2 * ln / std::log(ln));
        if (!(static_cast<double>(d[n]) < rhs)) ++violations;
    }
    CHECK(violations == 0);
    // API-level spot equivalence on a coarse grid.
    for (uint32_t n = 3; n <= limit; n += 9973) {
        auto m = divisor_bound_margin(Int(n));
        CHECK(m.lhs == static_cast<double>(d[n]));
        CHECK(m.lhs < m.rhs);
    }
}

TEST_CASE("smallest coprime prime and its log bound") {
    CHECK(smallest_coprime_prime(Int(1)) == 2);
    CHECK(smallest_coprime_prime(Int(30)) == 7);
    CHECK(2.0 + 2.0 * std::log(30.0) > 7.0);
    CHECK(smallest_coprime_prime(Int(30030)) == 17);
    CHECK(2.0 + 2.0 * std::log(30030.0) > 17.0);
    uint32_t violations = 0;
    for (uint32_t n = 1; n <= 1000000; n += 1) {
        Int p = smallest_coprime_prime(Int(n));  // throws if the bound fails
        if (!(p.get_d() <= 2.0 + 2.0 * std::log(static_cast<double>(n)) + 1e-12)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("divisors list") {
    auto ds = divisors(factor(Int(12)));
    std::vector<Int> want{1, 2, 3, 4, 6, 12};
    CHECK(ds == want);
}
