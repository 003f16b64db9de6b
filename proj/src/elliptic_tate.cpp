#include <array>
#include <cassert>

#include "szpiro/elliptic.hpp"

namespace szpiro {

namespace {

Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

unsigned val_at(const Int& n, const Int& p) {
    if (n == 0) return 100000;  // "infinite" for our purposes
    Int rest = n;
    unsigned v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int pow_p(const Int& p, unsigned k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

Int inv_mod(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw accuracy_error("inv_mod: not invertible", 0.0);
    return r;
}

// Legendre symbol of a mod odd prime p.
int legendre(const Int& a, const Int& p) {
    Int am = mod_pos(a, p);
    if (am == 0) return 0;
    return mpz_legendre(am.get_mpz_t(), p.get_mpz_t());
}

// Square root of a QR a mod odd prime p (Tonelli-Shanks).
Int sqrt_mod(const Int& a, const Int& p) {
    Int d = mod_pos(a, p);
    if (d == 0) return Int(0);
    if (legendre(d, p) != 1) throw accuracy_error("sqrt_mod: not a residue", 0.0);
    Int q = p - 1;
    unsigned s2 = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s2;
    }
    Int z = 2;
    while (legendre(z, p) != -1) z += 1;
    Int c, r, t;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int qp1h = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), d.get_mpz_t(), qp1h.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned m = s2;
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = mod_pos(tt * tt, p);
            ++i;
            if (i >= m) throw accuracy_error("sqrt_mod: loop failure", 0.0);
        }
        Int b = c;
        for (unsigned k = 0; k + i + 1 < m; ++k) b = mod_pos(b * b, p);
        m = i;
        c = mod_pos(b * b, p);
        t = mod_pos(t * c, p);
        r = mod_pos(r * b, p);
    }
    return r;
}

// Does the monic quadratic T^2 + B T + C have a root mod p?  Assumes it is
// separable mod p.
bool monic_quadratic_has_root(const Int& B, const Int& C, const Int& p) {
    if (p == 2) {
        // T in {0,1}
        return mod_pos(C, p) == 0 || mod_pos(1 + B + C, p) == 0;
    }
    Int disc = B * B - 4 * C;
    return legendre(disc, p) >= 0;  // separable => disc != 0 mod p, so >= 0 means QR
}

// Number of distinct roots in F_p of a separable cubic T^3+AT^2+BT+C,
// via deg gcd(T^p - T, P).
int cubic_root_count(const Int& A, const Int& B, const Int& C, const Int& p) {
    if (p <= 257) {
        int cnt = 0;
        long pl = static_cast<long>(p.get_si());
        for (long t = 0; t < pl; ++t) {
            Int T(t);
            if (mod_pos(((T + A) * T + B) * T + C, p) == 0) ++cnt;
        }
        return cnt;
    }
    // polynomial arithmetic mod (P, p), degree < 3
    using Poly = std::array<Int, 3>;
    Int A_ = mod_pos(A, p), B_ = mod_pos(B, p), C_ = mod_pos(C, p);
    auto mulmod = [&](const Poly& f, const Poly& g) {
        std::array<Int, 5> prod{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) prod[i + j] += f[i] * g[j];
        // reduce T^3 = -(A T^2 + B T + C), T^4 = T*T^3
        for (int d = 4; d >= 3; --d) {
            Int coef = prod[d];
            if (coef == 0) continue;
            prod[d] = 0;
            prod[d - 1] -= coef * A_;
            prod[d - 2] -= coef * B_;
            prod[d - 3] -= coef * C_;
        }
        Poly out;
        for (int i = 0; i < 3; ++i) out[i] = mod_pos(prod[i], p);
        return out;
    };
    // T^p mod (P, p)
    Poly result{Int(1), Int(0), Int(0)};
    Poly base{Int(0), Int(1), Int(0)};
    Int e = p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mulmod(result, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    // g = T^p - T  (degree < 3 representative)
    Poly g = result;
    g[1] = mod_pos(g[1] - 1, p);
    // gcd(P, g) over F_p; P has degree 3, g degree <= 2.
    // Work with vectors of coefficients, low to high.
    auto normalize = [&](std::vector<Int>& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    std::vector<Int> F{C_, B_, A_, Int(1)}, G{g[0], g[1], g[2]};
    normalize(G);
    while (!G.empty()) {
        // F mod G
        Int lead_inv = inv_mod(G.back(), p);
        while (F.size() >= G.size() && !F.empty()) {
            Int coef = mod_pos(F.back() * lead_inv, p);
            size_t shift = F.size() - G.size();
            for (size_t i = 0; i < G.size(); ++i)
                F[shift + i] = mod_pos(F[shift + i] - coef * G[i], p);
            normalize(F);
            if (F.size() <= shift) break;
        }
        std::swap(F, G);
        normalize(G);
    }
    return F.empty() ? 0 : static_cast<int>(F.size()) - 1;  // deg gcd
}

struct TateState {
    WeierstrassModel e;
    Int p;

    void translate(const Int& r, const Int& s, const Int& t) { e = e.transformed(1, r, s, t); }

    unsigned v(const Int& x) const { return val_at(x, p); }
};

// Singular point of the reduced curve, as lifted representatives in [0,p).
// Assumes p | disc.
std::pair<Int, Int> singular_point(const WeierstrassModel& e, const Int& p) {
    if (p <= 3) {
        long pl = static_cast<long>(p.get_si());
        for (long x = 0; x < pl; ++x)
            for (long y = 0; y < pl; ++y) {
                Int X(x), Y(y);
                Int F = Y * Y + e.a1 * X * Y + e.a3 * Y - (X * X * X + e.a2 * X * X + e.a4 * X + e.a6);
                Int Fx = e.a1 * Y - (3 * X * X + 2 * e.a2 * X + e.a4);
                Int Fy = 2 * Y + e.a1 * X + e.a3;
                if (mod_pos(F, p) == 0 && mod_pos(Fx, p) == 0 && mod_pos(Fy, p) == 0)
                    return {X, Y};
            }
        throw accuracy_error("singular_point: none found (p <= 3)", 0.0);
    }
    // p >= 5: the singular x is a multiple root of 4x^3+b2x^2+2b4x+b6.
    // Multiplicative case: double root; additive: triple root.  Both are
    // roots of gcd(f, f'), located from f' when the root is multiple of f'.
    Int b2 = e.b2(), b4 = e.b4(), b6 = e.b6();
    Int inv2 = inv_mod(Int(2), p);
    auto finish = [&](const Int& x0) {
        Int y0 = mod_pos(-(e.a1 * x0 + e.a3) * inv2, p);
        return std::pair<Int, Int>(mod_pos(x0, p), y0);
    };
    // f'(x) = 12x^2 + 2 b2 x + 2 b4; roots x = (-b2 +- sqrt(b2^2-24 b4))/12
    // A multiple root of f is a common root of f and f'.
    Int disc = b2 * b2 - 24 * b4;  // = c4
    auto f_of = [&](const Int& x) { return mod_pos(((4 * x + b2) * x + 2 * b4) * x + b6, p); };
    if (mod_pos(disc, p) == 0) {
        // f' has the double root x = -b2/12
        Int x0 = mod_pos(-b2 * inv_mod(Int(12), p), p);
        if (f_of(x0) == 0) return finish(x0);
        throw accuracy_error("singular_point: cusp candidate not on curve", 0.0);
    }
    // two roots of f'; need a square root of disc mod p
    Int d = mod_pos(disc, p);
    if (legendre(d, p) == -1)
        throw accuracy_error("singular_point: f' has no roots mod p", 0.0);
    Int r = sqrt_mod(d, p);
    Int inv12 = inv_mod(Int(12), p);
    for (const Int& sq : {r, p - r}) {
        Int x0 = mod_pos((-b2 + sq) * inv12, p);
        if (f_of(x0) == 0) return finish(x0);
    }
    throw accuracy_error("singular_point: no multiple root found", 0.0);
}

}  // namespace

LocalReduction tate_local(const WeierstrassModel& input, const Int& p) {
    if (!is_prime(p)) throw domain_error("tate_local: p must be prime");
    require_nonsingular(input);

    TateState st{input, p};

    for (;;) {  // restart loop (step 11)
        Int disc = st.e.discriminant();
        unsigned n = st.v(disc);

        if (n == 0)
            return LocalReduction{p, 0, 0, Kodaira{Kodaira::I, 0}, ReductionKind::good, Int(1)};

        Int c4 = st.e.c4();
        if (val_at(c4, p) == 0) {
            // Type I_n, multiplicative.
            bool split;
            if (p == 2) {
                auto [x0, y0] = singular_point(st.e, p);
                st.translate(x0, 0, y0);
                // tangent directions: roots of T^2 + a1 T - a2 mod 2
                split = mod_pos(st.e.a2, p) == 0;
            } else {
                split = legendre(-st.e.c6(), p) == 1;
            }
            Int cp = split ? Int(n) : Int(n % 2 == 0 ? 2 : 1);
            return LocalReduction{p, 1, static_cast<int>(n), Kodaira{Kodaira::I, static_cast<int>(n)},
                                  split ? ReductionKind::split_multiplicative
                                        : ReductionKind::nonsplit_multiplicative,
                                  cp};
        }

        // Additive: move the singular point to the origin.
        {
            auto [x0, y0] = singular_point(st.e, p);
            st.translate(x0, 0, y0);
        }
        if (st.v(st.e.a3) < 1 || st.v(st.e.a4) < 1 || st.v(st.e.a6) < 1)
            throw accuracy_error("tate_local: translation to singular point failed", 0.0);

        auto make = [&](Kodaira k, int f, const Int& cp) {
            return LocalReduction{p, f, static_cast<int>(n), k, ReductionKind::additive, cp};
        };

        // Step 3: type II
        if (st.v(st.e.a6) < 2) return make(Kodaira{Kodaira::II, 0}, static_cast<int>(n), Int(1));
        // Step 4: type III
        if (st.v(st.e.b8()) < 3) return make(Kodaira{Kodaira::III, 0}, static_cast<int>(n) - 1, Int(2));
        // Step 5: type IV
        if (st.v(st.e.b6()) < 3) {
            Int B = st.e.a3 / p, C = -(st.e.a6 / (p * p));
            Int cp = monic_quadratic_has_root(B, C, p) ? Int(3) : Int(1);
            return make(Kodaira{Kodaira::IV, 0}, static_cast<int>(n) - 2, cp);
        }

        // Step 6 normalization: p | a1,a2 ; p^2 | a3,a4 ; p^3 | a6.
        if (p == 2) {
            Int s = mod_pos(st.e.a2, p);
            st.translate(0, s, 0);
            bool done = false;
            for (long tt = 0; tt < 8 && !done; ++tt) {
                WeierstrassModel cand = st.e.transformed(1, 0, 0, Int(tt));
                if (val_at(cand.a3, p) >= 2 && val_at(cand.a4, p) >= 2 && val_at(cand.a6, p) >= 3) {
                    st.e = cand;
                    done = true;
                }
            }
            if (!done) throw accuracy_error("tate_local: step-6 normalization failed at 2", 0.0);
        } else {
            Int inv2 = inv_mod(Int(2), p);
            Int s = mod_pos(-st.e.a1 * inv2, p);
            st.translate(0, s, 0);
            Int p2 = p * p;
            Int t = mod_pos(-st.e.a3 * ((p2 + 1) / 2), p2);  // -a3/2 mod p^2
            st.translate(0, 0, t);
        }
        if (st.v(st.e.a1) < 1 || st.v(st.e.a2) < 1 || st.v(st.e.a3) < 2 || st.v(st.e.a4) < 2 ||
            st.v(st.e.a6) < 3)
            throw accuracy_error("tate_local: step-6 valuations not reached", 0.0);

        // P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3
        Int A = st.e.a2 / p, B = st.e.a4 / (p * p), C = st.e.a6 / (p * p * p);
        Int discP = 18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B - 27 * C * C;

        if (mod_pos(discP, p) != 0) {
            // Step 6: I0*
            int roots = cubic_root_count(A, B, C, p);
            return make(Kodaira{Kodaira::Istar, 0}, static_cast<int>(n) - 4, Int(1 + roots));
        }

        // P has a repeated root mod p.  Distinguish double vs triple.
        // gcd(P, P') has degree 1 (double) or 2 (triple — P = (T-r)^3).
        // Triple root iff P = (T - r)^3 mod p, i.e. A^2 = 3B and A B = 9 C (p != 3),
        // handled uniformly by computing the repeated root r and testing P''(r).
        Int r_rep;  // the repeated root mod p
        if (p == 2 || p == 3) {
            bool found = false;
            long pl = static_cast<long>(p.get_si());
            for (long t = 0; t < pl && !found; ++t) {
                Int T(t);
                if (mod_pos(((T + A) * T + B) * T + C, p) != 0) continue;
                // multiple iff P'(t) = 0
                Int Pd = 3 * T * T + 2 * A * T + B;
                if (mod_pos(Pd, p) == 0) {
                    r_rep = T;
                    found = true;
                }
            }
            if (!found) throw accuracy_error("tate_local: repeated root not found", 0.0);
        } else {
            // P' = 3T^2 + 2A T + B; the repeated root of P is a root of P'.
            // Roots of P': T = (-A +- sqrt(A^2-3B))/3.
            Int dd = mod_pos(A * A - 3 * B, p);
            Int inv3 = inv_mod(Int(3), p);
            if (dd == 0) {
                r_rep = mod_pos(-A * inv3, p);
            } else {
                // The repeated root of P is the root of P' that also kills P.
                // Roots of P' = 3T^2 + 2AT + B by the quadratic formula;
                // dd = A^2 - 3B is a QR since P' has the shared root.
                Int rr = sqrt_mod(dd, p);
                bool found = false;
                for (const Int& sq : {rr, p - rr}) {
                    Int cand = mod_pos((-A + sq) * inv3, p);
                    if (mod_pos(((cand + A) * cand + B) * cand + C, p) == 0) {
                        r_rep = cand;
                        found = true;
                        break;
                    }
                }
                if (!found) throw accuracy_error("tate_local: repeated root selection failed", 0.0);
            }
        }
        // Shift the repeated root of P to T = 0, i.e. x by p*r_rep.
        st.translate(p * r_rep, 0, 0);
        A = st.e.a2 / p;
        B = st.e.a4 / (p * p);
        C = st.e.a6 / (p * p * p);
        if (mod_pos(B, p) != 0 || mod_pos(C, p) != 0)
            throw accuracy_error("tate_local: repeated-root shift failed", 0.0);

        bool triple = (mod_pos(A, p) == 0);

        if (!triple) {
            // Step 7: type I_m*.  Alternate monic Y- and a2,1-led X-quadratics.
            unsigned l = 1;
            for (;;) {
                // G(Y) = Y^2 + (a3/p^{l+1}) Y - a6/p^{2l+2}
                Int B3 = st.e.a3 / pow_p(p, l + 1);
                Int C6 = st.e.a6 / pow_p(p, 2 * l + 2);
                bool g_sep = (p == 2) ? (mod_pos(B3, p) == 1)
                                      : (mod_pos(B3 * B3 + 4 * C6, p) != 0);
                if (g_sep) {
                    int m_idx = static_cast<int>(2 * l - 1);
                    bool rational = monic_quadratic_has_root(B3, -C6, p);
                    return make(Kodaira{Kodaira::Istar, m_idx},
                                static_cast<int>(n) - 4 - m_idx, Int(rational ? 4 : 2));
                }
                // double root: translate y by p^{l+1} * y0
                Int y0;
                if (p == 2)
                    y0 = mod_pos(C6, p);  // root of (Y - y0)^2 = Y^2 - C6 over F_2
                else
                    y0 = mod_pos(-B3 * inv_mod(Int(2), p), p);
                st.translate(0, 0, pow_p(p, l + 1) * y0);

                // H(X) = a2,1 X^2 + (a4/p^{l+2}) X + a6/p^{2l+3}
                Int alpha = st.e.a2 / p;
                Int beta = st.e.a4 / pow_p(p, l + 2);
                Int gamma = st.e.a6 / pow_p(p, 2 * l + 3);
                bool h_sep = (p == 2) ? (mod_pos(beta, p) == 1)
                                      : (mod_pos(beta * beta - 4 * alpha * gamma, p) != 0);
                if (h_sep) {
                    int m_idx = static_cast<int>(2 * l);
                    bool rational;
                    if (p == 2) {
                        rational = mod_pos(gamma, p) == 0 || mod_pos(alpha + beta + gamma, p) == 0;
                    } else {
                        rational = legendre(beta * beta - 4 * alpha * gamma, p) == 1;
                    }
                    return make(Kodaira{Kodaira::Istar, m_idx},
                                static_cast<int>(n) - 4 - m_idx, Int(rational ? 4 : 2));
                }
                // double root: translate x by p^{l+1} * x0
                Int x0;
                if (p == 2)
                    x0 = mod_pos(gamma * inv_mod(mod_pos(alpha, p), p), p);  // sqrt(gamma/alpha)
                else
                    x0 = mod_pos(-beta * inv_mod(2 * alpha, p), p);
                st.translate(pow_p(p, l + 1) * x0, 0, 0);
                ++l;
            }
        }

        // Triple root: now p^2 | a2, p^3 | a4, p^4 | a6.
        if (st.v(st.e.a2) < 2 || st.v(st.e.a4) < 3 || st.v(st.e.a6) < 4)
            throw accuracy_error("tate_local: triple-root valuations not reached", 0.0);

        // Step 8: quadratic Y^2 + a3,2 Y - a6,4
        Int B3 = st.e.a3 / (p * p);
        Int C6 = st.e.a6 / pow_p(p, 4);
        bool sep = (p == 2) ? (mod_pos(B3, p) == 1) : (mod_pos(B3 * B3 + 4 * C6, p) != 0);
        if (sep) {
            Int cp = monic_quadratic_has_root(B3, -C6, p) ? Int(3) : Int(1);
            return make(Kodaira{Kodaira::IVstar, 0}, static_cast<int>(n) - 6, cp);
        }
        // double root: translate y by p^2 y0 so that p^3 | a3
        Int y0;
        if (p == 2)
            y0 = mod_pos(C6, p);
        else
            y0 = mod_pos(-B3 * inv_mod(Int(2), p), p);
        st.translate(0, 0, p * p * y0);
        if (st.v(st.e.a3) < 3) throw accuracy_error("tate_local: step-9 translation failed", 0.0);

        // Step 9: type III*
        if (st.v(st.e.a4) < 4) return make(Kodaira{Kodaira::IIIstar, 0}, static_cast<int>(n) - 7, Int(2));
        // Step 10: type II*
        if (st.v(st.e.a6) < 6) return make(Kodaira{Kodaira::IIstar, 0}, static_cast<int>(n) - 8, Int(1));

        // Step 11: not minimal at p; strip u = p and restart.
        st.e = st.e.transformed(p, 0, 0, 0);
    }
}

CurveData curve_data(const WeierstrassModel& m) {
    require_nonsingular(m);
    CurveData cd;
    cd.minimal_model = global_minimal_model(m);
    Int disc = cd.minimal_model.discriminant();
    cd.delta_E = abs(disc);
    cd.N_E = 1;
    for (const auto& pp : factor(cd.delta_E).factors) {
        LocalReduction lr = tate_local(cd.minimal_model, pp.prime);
        if (lr.f_p == 0) continue;  // good in spite of dividing a non-minimal disc (cannot happen)
        cd.N_E *= pow_p(pp.prime, static_cast<unsigned>(lr.f_p));
        cd.locals.push_back(std::move(lr));
    }
    return cd;
}

FreyInvariantCheck check_frey_invariants(const AbcTriple& t) {
    AbcTriple v = make_abc_triple(t.a, t.b, t.c);
    CurveData cd = curve_data(frey_curve(v));

    Int abc = v.a * v.b * v.c;
    Int abc_sq = abc * abc;
    Int rad = radical(abc);

    unsigned v2_delta = val2(cd.delta_E);
    unsigned v2_abc2 = val2(abc_sq);
    unsigned v2_N = val2(cd.N_E);
    unsigned v2_rad = 1;  // 2 | abc always, so v2(rad(abc)) = 1

    Int odd_delta = cd.delta_E >> v2_delta;
    Int odd_abc2 = abc_sq >> v2_abc2;
    Int odd_N = cd.N_E >> v2_N;
    Int odd_rad = rad >> 1;

    if (odd_delta != odd_abc2 || odd_N != odd_rad)
        throw accuracy_error("check_frey_invariants: odd parts mismatch", 0.0);

    FreyInvariantCheck out;
    out.s = static_cast<long>(v2_delta) - static_cast<long>(v2_abc2);
    out.t_exp = static_cast<long>(v2_N) - static_cast<long>(v2_rad);
    out.ok = (out.s >= -8 && out.s <= 4 && out.t_exp >= -1 && out.t_exp <= 7);
    out.delta_E = cd.delta_E;
    out.N_E = cd.N_E;
    return out;
}

Int tamagawa_product(const CurveData& cd) {
    Int t = 1;
    for (const auto& lr : cd.locals) t *= lr.c_p;
    return t;
}

Int valuation_product(const CurveData& cd, const std::optional<std::vector<Int>>& primes) {
    Int prod = 1;
    if (primes) {
        for (const Int& p : *primes) {
            bool found = false;
            for (const auto& lr : cd.locals)
                if (lr.p == p) {
                    prod *= lr.vp_delta_min;
                    found = true;
                    break;
                }
            if (!found)
                throw domain_error("valuation_product: " + p.get_str() + " is not a bad prime");
        }
        return prod;
    }
    for (const auto& lr : cd.locals)
        if (lr.kind == ReductionKind::split_multiplicative ||
            lr.kind == ReductionKind::nonsplit_multiplicative)
            prod *= lr.vp_delta_min;
    return prod;
}

std::set<Int> level_lowering_primes(const CurveData& cd) {
    std::set<Int> out;
    for (const auto& lr : cd.locals) {
        if (lr.vp_delta_min <= 1) continue;
        for (const auto& pp : factor(Int(lr.vp_delta_min)).factors) out.insert(pp.prime);
    }
    return out;
}

long a_p(const WeierstrassModel& m, const Int& p) {
    require_nonsingular(m);
    if (!is_prime(p)) throw domain_error("a_p: p must be prime");
    if (p > 1000000) throw domain_error("a_p: p exceeds the naive counting window");
    if (mpz_divisible_p(m.discriminant().get_mpz_t(), p.get_mpz_t()))
        throw domain_error("a_p: bad reduction at p");

    long pl = static_cast<long>(p.get_si());
    long count;
    if (pl == 2) {
        count = 0;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                Int lhs = Int(y) * y + m.a1 * x * y + m.a3 * y;
                Int rhs = Int(x) * x * x + m.a2 * x * x + m.a4 * x + m.a6;
                if (mod_pos(lhs - rhs, p) == 0) ++count;
            }
    } else {
        // quadratic-residue table chi(v), then #points = p + sum_x (1 + chi(f(x)))
        std::vector<int8_t> chi(pl, -1);
        chi[0] = 0;
        for (long v = 1; v < pl; ++v) chi[static_cast<size_t>(v * v % pl)] = 1;
        // f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 (complete-the-square form)
        long b2 = static_cast<long>(mod_pos(m.b2(), p).get_si());
        long b4t = static_cast<long>(mod_pos(2 * m.b4(), p).get_si());
        long b6 = static_cast<long>(mod_pos(m.b6(), p).get_si());
        count = 0;
        for (long x = 0; x < pl; ++x) {
            unsigned __int128 fx = ((unsigned __int128)x * x % pl) * ((4 * x + b2) % pl);
            long f = static_cast<long>((fx + (unsigned __int128)b4t * x + b6) % pl);
            count += 1 + chi[static_cast<size_t>(f)];
        }
    }
    long ap = pl + 1 - (count + 1);  // +1 for the point at infinity
    double hasse = 2.0 * std::sqrt(static_cast<double>(pl));
    if (std::abs(static_cast<double>(ap)) > hasse)
        throw accuracy_error("a_p: Hasse bound violated", static_cast<double>(ap));
    return ap;
}

}  // namespace szpiro
