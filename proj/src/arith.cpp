#include "szpiro/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace szpiro {

double log_mpz(const Int& n) {
    if (n <= 0) throw domain_error("log_mpz: argument must be positive");
    long exp2;
    double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(m) + static_cast<double>(exp2) * std::log(2.0);
}

// ---------------------------------------------------------------------------
// Prime table
// ---------------------------------------------------------------------------

namespace {

std::vector<uint32_t> g_primes;
uint32_t g_prime_limit = 0;
std::mutex g_prime_mutex;

void extend_primes_locked(uint32_t limit) {
    if (limit <= g_prime_limit) return;
    std::vector<bool> composite(limit + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
                composite[j] = true;
        }
    }
    g_primes = std::move(primes);
    g_prime_limit = limit;
}

}  // namespace

const std::vector<uint32_t>& primes_to(uint32_t limit) {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (limit > g_prime_limit) {
        uint32_t target = std::max<uint32_t>(limit, 1u << 16);
        extend_primes_locked(target);
    }
    return g_primes;
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven deterministic witness set for n < 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p() || mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
        return is_prime_u64(v);
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

constexpr uint32_t kTrialLimit = 1000000;

// Brent's variant of Pollard rho.  The constants c are tried in a fixed
// order, so equal inputs factor identically.
uint64_t rho_u64(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1, saved = 2;
        uint64_t count = 0, limit = 2;
        while (d == 1) {
            x = mulmod_u64(x, x, n) + c;
            if (x >= n) x -= n;
            uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) {
                d = n;  // cycle without factor; retry with next c
                break;
            }
            saved = mulmod_u64(saved, diff, n);
            if (++count % 64 == 0) {
                d = std::gcd(saved, n);
                if (d != 1) break;
            }
            if (count == limit) {
                y = x;
                limit *= 2;
            }
        }
        if (d == n) {
            // Back off to gcd-per-step with the same c before moving on.
            x = 2;
            y = 2;
            d = 1;
            uint64_t steps = 0;
            while (d == 1 && steps < (1u << 22)) {
                x = mulmod_u64(x, x, n) + c;
                if (x >= n) x -= n;
                y = mulmod_u64(y, y, n) + c;
                if (y >= n) y -= n;
                y = mulmod_u64(y, y, n) + c;
                if (y >= n) y -= n;
                d = std::gcd(x > y ? x - y : y - x, n);
                ++steps;
            }
            if (d != 1 && d != n) return d;
            continue;
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_u64_into(uint64_t n, std::vector<std::pair<uint64_t, unsigned>>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(n, 1u);
        return;
    }
    uint64_t d = rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

// mpz rho for cofactors beyond 64 bits; deterministic constant schedule.
Int rho_mpz(const Int& n) {
    Int x, y, d, diff, c;
    for (unsigned long cc = 1;; ++cc) {
        c = cc;
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_mpz_into(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = rho_mpz(n);
    factor_mpz_into(d, out);
    factor_mpz_into(n / d, out);
}

}  // namespace

Factorization factor(const Int& n) {
    if (n < 1) throw domain_error("factor: argument must be >= 1");
    Factorization f;
    f.value = n;
    if (n == 1) return f;

    Int rest = n;
    const std::vector<uint32_t>& ps = primes_to(65536);
    std::vector<std::pair<Int, unsigned>> found;

    for (uint32_t p : ps) {
        if (static_cast<uint64_t>(p) * p > rest) break;
        if (p > kTrialLimit) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            found.emplace_back(Int(p), e);
        }
    }
    // The 2^16 table covers trial division up to 10^6 territory for the
    // sizes we meet; extend only when the cofactor is still small.
    if (rest > 1 && !is_prime(rest)) {
        Int sq;
        mpz_sqrt(sq.get_mpz_t(), rest.get_mpz_t());
        if (sq < kTrialLimit) {
            const std::vector<uint32_t>& more = primes_to(static_cast<uint32_t>(sq.get_ui()) + 1);
            for (uint32_t p : more) {
                if (p <= 65536) continue;
                if (static_cast<uint64_t>(p) * p > rest) break;
                if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                    unsigned e = 0;
                    do {
                        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                        ++e;
                    } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
                    found.emplace_back(Int(p), e);
                }
            }
        }
    }

    if (rest > 1) {
        if (is_prime(rest)) {
            found.emplace_back(rest, 1u);
        } else if (mpz_sizeinbase(rest.get_mpz_t(), 2) <= 64) {
            uint64_t v = 0;
            mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, rest.get_mpz_t());
            std::vector<std::pair<uint64_t, unsigned>> small;
            factor_u64_into(v, small);
            std::sort(small.begin(), small.end());
            for (size_t i = 0; i < small.size();) {
                size_t j = i;
                unsigned e = 0;
                while (j < small.size() && small[j].first == small[i].first) {
                    e += small[j].second;
                    ++j;
                }
                found.emplace_back(Int(static_cast<unsigned long>(small[i].first)), e);
                i = j;
            }
        } else {
            std::vector<Int> parts;
            factor_mpz_into(rest, parts);
            std::sort(parts.begin(), parts.end());
            for (size_t i = 0; i < parts.size();) {
                size_t j = i;
                while (j < parts.size() && parts[j] == parts[i]) ++j;
                found.emplace_back(parts[i], static_cast<unsigned>(j - i));
                i = j;
            }
        }
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, e] : found) f.factors.push_back(PrimePower{p, e});

#ifndef NDEBUG
    Int check = 1;
    for (const auto& pp : f.factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        check *= pe;
    }
    if (check != n) throw accuracy_error("factor: product check failed", 0.0);
#endif
    return f;
}

// ---------------------------------------------------------------------------
// Multiplicative functions
// ---------------------------------------------------------------------------

Int radical(const Factorization& f) {
    Int r = 1;
    for (const auto& pp : f.factors) r *= pp.prime;
    return r;
}

unsigned omega(const Factorization& f) { return static_cast<unsigned>(f.factors.size()); }

Int divisor_count(const Factorization& f) {
    Int d = 1;
    for (const auto& pp : f.factors) d *= pp.exponent + 1;
    return d;
}

Int euler_phi(const Factorization& f) {
    Int r = 1;
    for (const auto& pp : f.factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
        r *= pe * (pp.prime - 1);
    }
    return r;
}

Int sigma1(const Factorization& f) {
    Int r = 1;
    for (const auto& pp : f.factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent + 1);
        r *= (pe - 1) / (pp.prime - 1);
    }
    return r;
}

int moebius(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

Int radical(const Int& n) { return radical(factor(n)); }
unsigned omega(const Int& n) { return omega(factor(n)); }
Int divisor_count(const Int& n) { return divisor_count(factor(n)); }
Int euler_phi(const Int& n) { return euler_phi(factor(n)); }
Int sigma1(const Int& n) { return sigma1(factor(n)); }
int moebius(const Int& n) { return moebius(factor(n)); }

unsigned valuation(const Int& n, const Int& p) {
    if (n < 1) throw domain_error("valuation: n must be >= 1");
    if (!is_prime(p)) throw domain_error("valuation: p must be prime");
    Int rest = n;
    unsigned v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

std::vector<Int> divisors(const Factorization& f) {
    std::vector<Int> ds{1};
    for (const auto& pp : f.factors) {
        size_t old = ds.size();
        Int pe = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            pe *= pp.prime;
            for (size_t i = 0; i < old; ++i) ds.push_back(ds[i] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

DivisorBoundMargin divisor_bound_margin(const Int& n) {
    if (n < 3) throw domain_error("divisor_bound_margin: requires n >= 3");
    double ln = log_mpz(n);
    double lhs = divisor_count(n).get_d();
    double rhs = std::exp(1.5379 * std::log(2.0) * ln / std::log(ln));
    return {lhs, rhs};
}

Int smallest_coprime_prime(const Int& n) {
    if (n < 1) throw domain_error("smallest_coprime_prime: requires N >= 1");
    for (uint32_t limit = 1u << 10;; limit *= 2) {
        for (uint32_t p : primes_to(limit)) {
            if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                double bound = 2.0 + 2.0 * (n == 1 ? 0.0 : log_mpz(n));
                if (static_cast<double>(p) > bound)
                    throw accuracy_error("smallest_coprime_prime: bound 2+2 log N violated",
                                         static_cast<double>(p));
                return Int(p);
            }
        }
    }
}

unsigned val2(const Int& n) {
    return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

}  // namespace szpiro
