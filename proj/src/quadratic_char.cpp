#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "szpiro/quadratic.hpp"

namespace szpiro {

int kronecker(const Int& D, const Int& n) {
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

bool is_fundamental_discriminant(const Int& D) {
    if (D == 1) return true;  // trivial discriminant
    if (D == 0) return false;
    Int r = D % 4;
    if (r < 0) r += 4;
    auto squarefree = [](const Int& n) {
        for (const auto& pp : factor(abs(n)).factors)
            if (pp.exponent > 1) return false;
        return true;
    };
    if (r == 1) return squarefree(D);
    if (r != 0) return false;
    Int k = D / 4;
    Int rk = k % 4;
    if (rk < 0) rk += 4;
    if (rk != 2 && rk != 3) return false;
    return squarefree(k);
}

FundamentalDiscriminant make_fundamental(const Int& value) {
    if (value >= 0) throw domain_error("fundamental discriminant here must be negative");
    if (!is_fundamental_discriminant(value))
        throw domain_error(value.get_str() + " is not a fundamental discriminant");
    return FundamentalDiscriminant{value};
}

KroneckerCharacter kronecker_character(const Int& d) {
    if (d <= 0) throw domain_error("kronecker_character: d must be positive (character of -d)");
    FundamentalDiscriminant fd = make_fundamental(-d);
    return KroneckerCharacter{fd, d};
}

// ---------------------------------------------------------------------------
// Unit group (Z/m)^x and its dual
// ---------------------------------------------------------------------------

namespace {

struct Component {
    long pe;                  // prime power (or 4 / 2^e chunk)
    long order;               // cyclic order
    std::vector<long> dlog;   // dlog[r] for r in [0, pe), -1 if not a unit
};

long pow_mod_l(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * b % m);
        b = static_cast<long>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

Component cyclic_component(long pe, long gen, long order) {
    Component c;
    c.pe = pe;
    c.order = order;
    c.dlog.assign(pe, -1);
    long x = 1 % pe;
    for (long k = 0; k < order; ++k) {
        c.dlog[x] = k;
        x = static_cast<long>(static_cast<__int128>(x) * gen % pe);
    }
    return c;
}

long primitive_root_mod_p(long p) {
    if (p == 2) return 1;
    long phi = p - 1;
    std::vector<long> prime_divs;
    long t = phi;
    for (long q = 2; q * q <= t; ++q)
        if (t % q == 0) {
            prime_divs.push_back(q);
            while (t % q == 0) t /= q;
        }
    if (t > 1) prime_divs.push_back(t);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : prime_divs)
            if (pow_mod_l(g, phi / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw accuracy_error("primitive_root_mod_p: none found", 0.0);
}

// Components of (Z/m)^x in a fixed deterministic order: the 2-part first,
// then odd prime powers ascending.
std::vector<Component> unit_group(long m) {
    std::vector<Component> comps;
    long rest = m;
    long e2 = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++e2;
    }
    long two_part = m / rest;
    if (e2 == 2) {
        comps.push_back(cyclic_component(4, 3, 2));
    } else if (e2 >= 3) {
        comps.push_back(cyclic_component(two_part, two_part - 1, 2));  // -1
        comps.push_back(cyclic_component(two_part, 5, two_part / 4));  // 5, order 2^(e-2)
    }
    for (long q = 3; q <= rest; q += 2) {
        if (rest % q != 0) continue;
        long pe = 1;
        while (rest % q == 0) {
            rest /= q;
            pe *= q;
        }
        long g = primitive_root_mod_p(q);
        // lift to a generator mod q^e
        if (pe > q) {
            // g works mod q^2 unless g^(q-1) = 1 (mod q^2)
            long g2 = pow_mod_l(g, q - 1, q * q);
            if (g2 == 1) g += q;
        }
        long order = pe / q * (q - 1);  // phi(q^e)
        comps.push_back(cyclic_component(pe, g % pe, order));
    }
    std::sort(comps.begin() + (e2 >= 3 ? 2 : (e2 == 2 ? 1 : 0)), comps.end(),
              [](const Component& a, const Component& b) { return a.pe < b.pe; });
    return comps;
}

}  // namespace

bool DirichletCharacter::principal() const {
    return std::all_of(exponents.begin(), exponents.end(), [](long k) { return k == 0; });
}

std::complex<double> DirichletCharacter::value(long n) const {
    long m = static_cast<long>(modulus.get_si());
    long r = n % m;
    if (r < 0) r += m;
    long t = val_num[static_cast<size_t>(r)];
    if (t < 0) return {0.0, 0.0};
    double ang = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(val_den);
    return {std::cos(ang), std::sin(ang)};
}

std::complex<double> DirichletCharacter::value(const Int& n) const {
    Int r = n % modulus;
    if (r < 0) r += modulus;
    return value(static_cast<long>(r.get_si()));
}

std::vector<DirichletCharacter> all_characters(const Int& m_in) {
    if (m_in < 1 || !m_in.fits_slong_p())
        throw domain_error("all_characters: modulus out of supported range");
    long m = static_cast<long>(m_in.get_si());
    std::vector<Component> comps = unit_group(m);

    long den = 1;
    for (const Component& c : comps) den = std::lcm(den, c.order);

    size_t ncomp = comps.size();
    std::vector<long> idx(ncomp, 0);
    std::vector<DirichletCharacter> out;
    for (;;) {
        DirichletCharacter chi;
        chi.modulus = m_in;
        chi.exponents.assign(idx.begin(), idx.end());
        chi.comp_order.clear();
        for (const Component& c : comps) chi.comp_order.push_back(c.order);
        chi.val_den = den;
        chi.val_num.assign(static_cast<size_t>(m), -1);
        long ord = 1;
        for (size_t i = 0; i < ncomp; ++i) {
            long k = idx[i];
            long g = std::gcd(k, comps[i].order);
            ord = std::lcm(ord, comps[i].order / g);
        }
        chi.order = ord;
        for (long r = 0; r < m; ++r) {
            if (std::gcd(r, m) != 1) continue;
            long t = 0;
            bool unit = true;
            for (size_t i = 0; i < ncomp; ++i) {
                long rr = r % comps[i].pe;
                long dl = comps[i].dlog[static_cast<size_t>(rr)];
                if (dl < 0) {
                    unit = false;
                    break;
                }
                // contribution k_i * dlog_i(r) / order_i of a full turn
                t = (t + idx[i] * dl % den * (den / comps[i].order)) % den;
            }
            if (unit) chi.val_num[static_cast<size_t>(r)] = t;
        }
        out.push_back(std::move(chi));

        size_t pos = 0;
        while (pos < ncomp) {
            if (++idx[pos] < comps[pos].order) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == ncomp) break;
    }
    if (ncomp == 0) {
        // m = 1 or 2: only the principal character
    }
    return out;
}

}  // namespace szpiro
