#include "szpiro/elliptic.hpp"

namespace szpiro {

Int WeierstrassModel::c6() const {
    Int B2 = b2();
    return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
}

Int WeierstrassModel::discriminant() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

WeierstrassModel WeierstrassModel::transformed(const Int& u, const Int& r, const Int& s,
                                               const Int& t) const {
    if (u == 0) throw domain_error("transformed: u must be nonzero");
    WeierstrassModel n;
    Int A1 = a1 + 2 * s;
    Int A2 = a2 - s * a1 + 3 * r - s * s;
    Int A3 = a3 + r * a1 + 2 * t;
    Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    // divide by u^i; requires exact divisibility for an integral result
    auto divexact_pow = [](const Int& x, const Int& u_, unsigned k) {
        Int uk;
        mpz_pow_ui(uk.get_mpz_t(), u_.get_mpz_t(), k);
        if (!mpz_divisible_p(x.get_mpz_t(), uk.get_mpz_t()))
            throw domain_error("transformed: change of variables is not integral");
        Int q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), uk.get_mpz_t());
        return q;
    };
    n.a1 = divexact_pow(A1, u, 1);
    n.a2 = divexact_pow(A2, u, 2);
    n.a3 = divexact_pow(A3, u, 3);
    n.a4 = divexact_pow(A4, u, 4);
    n.a6 = divexact_pow(A6, u, 6);
    return n;
}

void require_nonsingular(const WeierstrassModel& m) {
    if (m.discriminant() == 0) throw domain_error("Weierstrass model is singular (disc = 0)");
}

WeierstrassModel frey_curve(const AbcTriple& t) {
    AbcTriple v = make_abc_triple(t.a, t.b, t.c);
    // y^2 = x(x-a)(x+b) = x^3 + (b-a) x^2 - ab x
    WeierstrassModel m;
    m.a1 = 0;
    m.a2 = v.b - v.a;
    m.a3 = 0;
    m.a4 = -v.a * v.b;
    m.a6 = 0;
    return m;
}

std::string Kodaira::str() const {
    switch (family) {
        case I: return "I" + std::to_string(n);
        case Istar: return "I" + std::to_string(n) + "*";
        case II: return "II";
        case III: return "III";
        case IV: return "IV";
        case IVstar: return "IV*";
        case IIIstar: return "III*";
        case IIstar: return "II*";
    }
    return "?";
}

}  // namespace szpiro
