#ifndef SZPIRO_ELLIPTIC_HPP
#define SZPIRO_ELLIPTIC_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "szpiro/abc.hpp"
#include "szpiro/arith.hpp"

namespace szpiro {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassModel {
    Int a1, a2, a3, a4, a6;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Int c4() const { return b2() * b2() - 24 * b4(); }
    Int c6() const;
    Int discriminant() const;
    Int j_numerator() const { return c4() * c4() * c4(); }  // j = c4^3 / disc

    // Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
    WeierstrassModel transformed(const Int& u, const Int& r, const Int& s, const Int& t) const;
};

// Throws domain_error when the discriminant vanishes.
void require_nonsingular(const WeierstrassModel& m);

// Frey-Hellegouarch model y^2 = x(x-a)(x+b).
WeierstrassModel frey_curve(const AbcTriple& t);

// Global minimal model via the Laska-Kraus-Connell procedure, normalized to
// a1, a3 in {0,1} and a2 in {-1,0,1}.
WeierstrassModel global_minimal_model(const WeierstrassModel& m);

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };

struct Kodaira {
    enum Family { I, Istar, II, III, IV, IVstar, IIIstar, IIstar } family;
    int n;  // only for I / Istar (I_0 = good)

    std::string str() const;
    bool operator==(const Kodaira&) const = default;
};

struct LocalReduction {
    Int p;
    int f_p;            // conductor exponent
    int vp_delta_min;   // v_p of the minimal discriminant
    Kodaira kodaira;
    ReductionKind kind;
    Int c_p;            // Tamagawa number
};

// Full local data at p, correct at p = 2 and 3; the input need not be
// locally minimal (a restart step strips 12th powers of p).
LocalReduction tate_local(const WeierstrassModel& m, const Int& p);

struct CurveData {
    WeierstrassModel minimal_model;
    Int delta_E;  // |minimal discriminant|
    Int N_E;      // conductor
    std::vector<LocalReduction> locals;  // at bad primes, ascending
};

CurveData curve_data(const WeierstrassModel& m);

struct FreyInvariantCheck {
    long s;      // Delta_E = 2^s (abc)^2
    long t_exp;  // N_E = 2^t rad(abc)
    bool ok;
    Int delta_E;
    Int N_E;
};

// Odd-part mismatch is a hard failure (accuracy_error); s,t out of the
// admissible windows only clears `ok`.
FreyInvariantCheck check_frey_invariants(const AbcTriple& t);

Int tamagawa_product(const CurveData& cd);

// prod over the subset of v_p(Delta_E); default subset = multiplicative primes.
Int valuation_product(const CurveData& cd,
                      const std::optional<std::vector<Int>>& primes = std::nullopt);

// { ell prime : exists p | N_E with ell | v_p(Delta_E) }
std::set<Int> level_lowering_primes(const CurveData& cd);

// Trace of Frobenius by naive point counting; requires good reduction and
// p <= 10^6.
long a_p(const WeierstrassModel& m, const Int& p);

// Faltings height over Q from the period lattice and the eta-product.
double faltings_height(const CurveData& cd);

// |Delta(tau) Im(tau)^6| for tau in the upper half plane (SL2(Z)-invariant);
// exposed for the modular-invariance checks.
double delta_im6(double re_tau, double im_tau);

}  // namespace szpiro

#endif
