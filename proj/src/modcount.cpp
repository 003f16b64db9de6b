#include "szpiro/modcount.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace szpiro {

namespace {

int kron_m1(const Int& p) {
    // (-1/p): 1 if p = 1 (4), -1 if p = 3 (4)
    Int r = p % 4;
    return r == 1 ? 1 : -1;
}

int kron_m3(const Int& p) {
    // (-3/p): 1 if p = 1 (3), -1 if p = 2 (3)
    Int r = p % 3;
    return r == 1 ? 1 : -1;
}

struct GenusParts {
    Int mu, nu2, nu3, nuinf;
};

GenusParts genus_parts(const Factorization& f) {
    const Int& N = f.value;
    GenusParts g;
    g.mu = N;
    for (const auto& pp : f.factors) g.mu = g.mu / pp.prime * (pp.prime + 1);

    if (mpz_divisible_ui_p(N.get_mpz_t(), 4)) {
        g.nu2 = 0;
    } else {
        g.nu2 = 1;
        for (const auto& pp : f.factors) {
            if (pp.prime == 2) continue;
            g.nu2 *= 1 + kron_m1(pp.prime);
            if (g.nu2 == 0) break;
        }
    }
    if (mpz_divisible_ui_p(N.get_mpz_t(), 9)) {
        g.nu3 = 0;
    } else {
        g.nu3 = 1;
        for (const auto& pp : f.factors) {
            if (pp.prime == 3) continue;
            g.nu3 *= 1 + kron_m3(pp.prime);
            if (g.nu3 == 0) break;
        }
    }
    // nu_inf = sum_{d|N} phi(gcd(d, N/d))
    g.nuinf = 0;
    std::vector<Int> ds = divisors(f);
    for (const Int& d : ds) {
        Int gcd;
        Int other = N / d;
        mpz_gcd(gcd.get_mpz_t(), d.get_mpz_t(), other.get_mpz_t());
        g.nuinf += euler_phi(gcd);
    }
    return g;
}

// s(n) memo; grown on demand, guarded for concurrent sweeps.
std::unordered_map<unsigned long, Int> g_sdim;
std::mutex g_sdim_mutex;

Int genus_from_parts(const GenusParts& g) {
    // g = 1 + mu/12 - nu2/4 - nu3/3 - nuinf/2
    Int twelve_g = 12 + g.mu - 3 * g.nu2 - 4 * g.nu3 - 6 * g.nuinf;
    if (!mpz_divisible_ui_p(twelve_g.get_mpz_t(), 12))
        throw accuracy_error("genus_X0: formula did not give an integer", 0.0);
    return twelve_g / 12;
}

// Dirichlet-inverse of the divisor function at prime powers:
// (mu*mu)(p^e) = 1, -2, 1, 0, ... for e = 0, 1, 2, >= 3.
int dtilde(unsigned e) {
    if (e == 0) return 1;
    if (e == 1) return -2;
    if (e == 2) return 1;
    return 0;
}

}  // namespace

Int genus_X0(const Int& N) {
    if (N < 1) throw domain_error("genus_X0: N must be >= 1");
    return genus_from_parts(genus_parts(factor(N)));
}

Int new_dim(const Int& n) {
    if (n < 1) throw domain_error("new_dim: n must be >= 1");
    if (!n.fits_ulong_p()) throw domain_error("new_dim: n too large");
    unsigned long key = n.get_ui();
    {
        std::lock_guard<std::mutex> lock(g_sdim_mutex);
        auto it = g_sdim.find(key);
        if (it != g_sdim.end()) return it->second;
    }
    // s(n) = sum_{m|n} (mu*mu)(n/m) g(m), multiplicative convolution inverse
    // of dim S_2(Gamma_0(m)) = genus(X_0(m)).
    Factorization f = factor(n);
    Int s = 0;
    std::vector<Int> ds = divisors(f);
    for (const Int& m : ds) {
        Int cof = n / m;
        // (mu*mu)(cof): multiplicative over prime powers of cof
        int coefficient = 1;
        for (const auto& pp : f.factors) {
            unsigned e = 0;
            Int c = cof;
            while (mpz_divisible_p(c.get_mpz_t(), pp.prime.get_mpz_t())) {
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pp.prime.get_mpz_t());
                ++e;
            }
            coefficient *= dtilde(e);
            if (coefficient == 0) break;
        }
        if (coefficient != 0) s += coefficient * genus_X0(m);
    }
    if (s < 0) throw accuracy_error("new_dim: negative dimension", s.get_d());
    std::lock_guard<std::mutex> lock(g_sdim_mutex);
    g_sdim.emplace(key, s);
    return s;
}

AdmissibleFactorization make_admissible(const Int& D, const Int& M) {
    if (D < 1 || M < 1) throw domain_error("admissible factorization: D, M must be positive");
    Int g;
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), M.get_mpz_t());
    if (g != 1) throw domain_error("admissible factorization: gcd(D,M) != 1");
    Factorization fd = factor(D);
    for (const auto& pp : fd.factors)
        if (pp.exponent > 1) throw domain_error("admissible factorization: D not squarefree");
    if (fd.factors.size() % 2 != 0)
        throw domain_error("admissible factorization: omega(D) must be even");
    return AdmissibleFactorization{D * M, D, M};
}

std::vector<AdmissibleFactorization> admissible_factorizations(const Int& N) {
    if (N < 1) throw domain_error("admissible_factorizations: N must be >= 1");
    Factorization f = factor(N);
    // D must be a product of primes exactly dividing N (else gcd(D,M) > 1).
    std::vector<Int> exact;
    for (const auto& pp : f.factors)
        if (pp.exponent == 1) exact.push_back(pp.prime);
    std::vector<AdmissibleFactorization> out;
    size_t k = exact.size();
    for (uint64_t mask = 0; mask < (1ull << k); ++mask) {
        if (__builtin_popcountll(mask) % 2 != 0) continue;
        Int D = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) D *= exact[i];
        out.push_back(AdmissibleFactorization{N, D, N / D});
    }
    std::sort(out.begin(), out.end(),
              [](const AdmissibleFactorization& a, const AdmissibleFactorization& b) {
                  return a.D < b.D;
              });
    return out;
}

Int r_DM(const AdmissibleFactorization& af) {
    Factorization fm = factor(af.M);
    Int r = 0;
    for (const Int& m : divisors(fm)) r += new_dim(af.D * m);
    // Dimension bound: r <= phi(D) M / 12 + (7/12) d(D M^2) + 1.
    double bound = euler_phi(af.D).get_d() * af.M.get_d() / 12.0 +
                   7.0 / 12.0 * divisor_count(af.D * af.M * af.M).get_d() + 1.0;
    if (r.get_d() > bound)
        throw accuracy_error("r_DM: dimension bound violated", r.get_d() - bound);
    return r;
}

Int sturm_index_bound(const Int& N) {
    if (N < 1) throw domain_error("sturm_index_bound: N must be >= 1");
    Factorization f = factor(N);
    // ceil(N^2/6 prod (1+1/p)) = ceil(N * mu(N-index) / 6) with
    // N prod(1+1/p) = psi(N) computed exactly.
    Int psi = N;
    for (const auto& pp : f.factors) psi = psi / pp.prime * (pp.prime + 1);
    Int num = N * psi;  // N^2 prod(1+1/p)
    Int bound = (num + 5) / 6;
    if (N >= 2 && bound >= N * N * N)
        throw accuracy_error("sturm_index_bound: N^3 comparison failed", bound.get_d());
    return bound;
}

namespace {

double log_factor(const Int& N) {
    double ln = log_mpz(N);
    double lnln = std::log(ln);
    return ln + 4.0 * ln / lnln;
}

}  // namespace

BoundReport modular_degree_bound(const AdmissibleFactorization& af) {
    if (af.N < 3) throw domain_error("modular_degree_bound: requires N >= 3 (log log N > 0)");
    double phiD = euler_phi(af.D).get_d();
    double M = af.M.get_d();
    double dDM2 = divisor_count(af.D * af.M * af.M).get_d();
    double value = (phiD * M / 12.0 + 7.0 / 12.0 * dDM2) * log_factor(af.N);
    return BoundReport{"modular_degree_bound",
                       {{"N", af.N.get_d()}, {"D", af.D.get_d()}, {"M", M},
                        {"phi_D", phiD}, {"d_DM2", dDM2}},
                       value,
                       std::nullopt};
}

BoundReport grh_degree_bound(const AdmissibleFactorization& af, double epsilon) {
    if (af.N < 16) throw domain_error("grh_degree_bound: requires N >= 16");
    if (!(epsilon > 0)) throw domain_error("grh_degree_bound: epsilon must be > 0");
    double phiD = euler_phi(af.D).get_d();
    double lnln = std::log(log_mpz(af.N));
    double value = (1.0 / 12.0 + epsilon) * phiD * af.M.get_d() * lnln;
    return BoundReport{"grh_degree_bound",
                       {{"N", af.N.get_d()}, {"D", af.D.get_d()}, {"M", af.M.get_d()},
                        {"epsilon", epsilon}},
                       value,
                       std::nullopt};
}

std::pair<BoundReport, BoundReport> height_bounds_allQ(const Int& N) {
    if (N < 3) throw domain_error("height_bounds_allQ: requires N >= 3");
    double dN2 = divisor_count(N * N).get_d();
    double L = log_factor(N);
    double base = (N.get_d() + 7.0 * dN2);
    BoundReport h{"height_bound_allQ",
                  {{"N", N.get_d()}, {"d_N2", dN2}},
                  base / 24.0 * L + 9.0,
                  std::nullopt};
    BoundReport d{"log_disc_bound_allQ",
                  {{"N", N.get_d()}, {"d_N2", dN2}},
                  base / 2.0 * L + 124.0,
                  std::nullopt};
    return {h, d};
}

std::pair<BoundReport, BoundReport> semistable_bounds(const std::vector<Int>& S, const Int& N,
                                                      double epsilon) {
    if (N < 16) throw domain_error("semistable_bounds: requires N >= 16");
    if (!(epsilon > 0)) throw domain_error("semistable_bounds: epsilon must be > 0");
    Int P = 1;
    for (const Int& p : S) {
        if (!is_prime(p)) throw domain_error("semistable_bounds: S must contain primes");
        P *= p;
    }
    double ratio = P == 1 ? 1.0 : P.get_d() / euler_phi(P).get_d();
    double phiN = euler_phi(N).get_d();
    double ln = log_mpz(N);
    BoundReport uncond{"semistable_height_bound",
                       {{"N", N.get_d()}, {"P", P.get_d()}, {"epsilon", epsilon}},
                       ratio * (epsilon + 1.0 / 48.0) * phiN * ln,
                       std::nullopt};
    BoundReport grh{"semistable_height_bound_grh",
                    {{"N", N.get_d()}, {"P", P.get_d()}, {"epsilon", epsilon}},
                    ratio * (epsilon + 1.0 / 24.0) * phiN * std::log(ln),
                    std::nullopt};
    return {uncond, grh};
}

std::pair<double, double> shimura_height_transfer(double log_delta, double epsilon) {
    if (!(log_delta >= 0)) throw domain_error("shimura_height_transfer: log_delta must be >= 0");
    if (!(epsilon > 0)) throw domain_error("shimura_height_transfer: epsilon must be > 0");
    return {(6.0 + epsilon) * log_delta, (0.5 + epsilon) * log_delta};
}

double classical_height_from_degree(double log_delta) {
    if (!(log_delta >= 0))
        throw domain_error("classical_height_from_degree: log_delta must be >= 0");
    return 0.5 * log_delta + 9.0;
}

}  // namespace szpiro
