#include <algorithm>
#include <cmath>
#include <numbers>

#include "szpiro/parallel.hpp"
#include "szpiro/quadratic.hpp"

namespace szpiro {

namespace {

struct MuSquaredBlock {
    // squarefree flags for a half-open range [lo, hi)
    int64_t lo;
    std::vector<uint8_t> flags;

    MuSquaredBlock(int64_t lo_, int64_t hi) : lo(lo_), flags(static_cast<size_t>(hi - lo_), 1) {
        for (int64_t p = 2; p * p < hi; ++p) {
            int64_t p2 = p * p;
            int64_t start = ((lo_ + p2 - 1) / p2) * p2;
            for (int64_t m = start; m < hi; m += p2) flags[static_cast<size_t>(m - lo_)] = 0;
        }
    }
    bool squarefree(int64_t n) const { return flags[static_cast<size_t>(n - lo)] != 0; }
};

}  // namespace

std::complex<double> sqf_char_sum(const DirichletCharacter& chi, int64_t x) {
    if (chi.principal()) throw domain_error("sqf_char_sum: principal character");
    if (chi.modulus <= 1) throw domain_error("sqf_char_sum: modulus must exceed 1");
    if (x < 1) throw domain_error("sqf_char_sum: x must be >= 1");
    MuSquaredBlock sq(1, x + 1);
    std::complex<double> acc(0.0, 0.0);
    for (int64_t d = 1; d <= x; ++d)
        if (sq.squarefree(d)) acc += chi.value(static_cast<long>(d));
    double m = chi.modulus.get_d();
    double bound = 5.0 * std::sqrt(static_cast<double>(x)) * std::pow(m, 0.25) *
                   std::sqrt(std::log(m));
    if (std::abs(acc) > bound)
        throw accuracy_error("sqf_char_sum: character-sum bound violated", std::abs(acc));
    return acc;
}

SqfCoprimeCount sqf_coprime_count(int a, const Int& m, int64_t x) {
    if (a != 1 && a != 3) throw domain_error("sqf_coprime_count: a must be 1 or 3 (mod 4)");
    if (m < 1) throw domain_error("sqf_coprime_count: m must be >= 1");
    if (x < 1) throw domain_error("sqf_coprime_count: x must be >= 1");
    MuSquaredBlock sq(1, x + 1);
    int64_t count = 0;
    for (int64_t d = a; d <= x; d += 4) {
        if (!sq.squarefree(d)) continue;
        Int g;
        Int dd(static_cast<long>(d));
        mpz_gcd(g.get_mpz_t(), dd.get_mpz_t(), m.get_mpz_t());
        if (g == 1) ++count;
    }
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    double prod = 1.0;
    for (const auto& pp : factor(2 * m).factors)
        prod *= 1.0 + 1.0 / pp.prime.get_d();
    double main_term = static_cast<double>(x) / (2.0 * zeta2 * prod);
    return SqfCoprimeCount{count, main_term};
}

namespace {

struct CensusEntry {
    int64_t d;
    bool pass_class;     // condition (v)
    bool pass_logderiv;  // condition (vi)
    bool small_d;        // d < 16: clamped right side in (vi)
};

}  // namespace

CensusResult heegner_census(const HeegnerSearchParams& params) {
    const Int& D = params.D;
    const Int& M = params.M;
    Int g;
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), M.get_mpz_t());
    if (g != 1) throw domain_error("heegner_census: gcd(D,M) != 1");
    Factorization fD = factor(D);
    for (const auto& pp : fD.factors)
        if (pp.exponent > 1) throw domain_error("heegner_census: D not squarefree");
    if (fD.factors.size() % 2 != 0) throw domain_error("heegner_census: omega(D) must be even");
    if (params.x < 1 || 2 * params.x > 100000000)
        throw domain_error("heegner_census: x out of the supported window (2x <= 10^8)");

    Factorization fM = factor(M);
    Int N = D * M;

    auto produce = [&](int64_t lo, int64_t hi) {
        std::vector<CensusEntry> out;
        MuSquaredBlock sq(lo, hi);
        for (int64_t d = lo; d < hi; ++d) {
            if ((d & 3) != 3) continue;       // d = 3 (mod 4)
            if (!sq.squarefree(d)) continue;  // (ii)
            Int dd(static_cast<long>(d));
            bool ok = true;
            for (const auto& pp : fM.factors)  // (iii) split
                if (kronecker(-dd, pp.prime) != 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (const auto& pp : fD.factors)  // (iv) inert
                if (kronecker(-dd, pp.prime) != -1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;

            CensusEntry e;
            e.d = d;
            e.small_d = d < 16;
            // (v): #Cl(K_{-d}) > d^(1/2 - theta)
            double h = class_number(dd).get_d();
            e.pass_class = h > std::pow(static_cast<double>(d), 0.5 - params.theta);
            // (vi): |L'/L(1, chi_{-d})| < kappa * max(1, loglog d)
            KroneckerCharacter chi = kronecker_character(dd);
            double lder = Lderiv1(chi, 1e-4);
            double w = d == 3 ? 6.0 : 2.0;  // class number formula
            double l1 = 2.0 * std::numbers::pi * h / (w * std::sqrt(static_cast<double>(d)));
            double rhs = params.kappa * std::max(1.0, std::log(std::log(static_cast<double>(d))));
            e.pass_logderiv = std::abs(lder / l1) < rhs;
            out.push_back(e);
        }
        return out;
    };

    CensusResult res;
    res.params = params;
    auto consume = [&](std::vector<CensusEntry>&& block) {
        for (const CensusEntry& e : block) {
            ++res.s_prime_count;
            if (!e.pass_class) {
                res.class_number_exceptions.push_back(e.d);
                continue;
            }
            if (!e.pass_logderiv) {
                res.logderiv_exceptions.push_back(e.d);
                continue;
            }
            if (e.small_d) res.small_d_flagged = true;
            res.S.push_back(e.d);
        }
    };
    run_ordered_blocks<CensusEntry>(params.x + 1, 2 * params.x + 1, 4096,
                                    std::max(1u, params.workers), produce, consume);

    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    double prod = 1.0;
    for (const auto& pp : factor(2 * N).factors) prod *= 1.0 + 1.0 / pp.prime.get_d();
    double pow2 = std::pow(2.0, static_cast<double>(omega(factor(N))) + 1.0);
    res.main_term = static_cast<double>(params.x) / (pow2 * zeta2 * prod);
    res.error_window = 5.0 * std::sqrt(static_cast<double>(params.x)) *
                       std::pow(N.get_d(), 0.25) * std::sqrt(std::log(N.get_d()));

    // Re-verify every member of S by direct splitting tests.
    for (int64_t d : res.S) {
        Int dd(static_cast<long>(d));
        for (const auto& pp : fM.factors)
            if (!splits_by_direct_check(dd, pp.prime))
                throw accuracy_error("heegner_census: direct split re-check failed",
                                     static_cast<double>(d));
        for (const auto& pp : fD.factors) {
            bool ramified = mpz_divisible_p(dd.get_mpz_t(), pp.prime.get_mpz_t());
            if (ramified || splits_by_direct_check(dd, pp.prime))
                throw accuracy_error("heegner_census: direct inert re-check failed",
                                     static_cast<double>(d));
        }
    }
    return res;
}

}  // namespace szpiro
