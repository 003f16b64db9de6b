#ifndef SZPIRO_QUADRATIC_HPP
#define SZPIRO_QUADRATIC_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "szpiro/arith.hpp"

namespace szpiro {

// Kronecker symbol (D/n), fully general.
int kronecker(const Int& D, const Int& n);

// General fundamental-discriminant test (positive or negative D).
bool is_fundamental_discriminant(const Int& D);

// Negative fundamental discriminant -d (d > 0).
struct FundamentalDiscriminant {
    Int value;  // negative
};
FundamentalDiscriminant make_fundamental(const Int& value);

// chi_{-d} = (-d / .) for -d fundamental; real primitive odd character of
// conductor d.
struct KroneckerCharacter {
    FundamentalDiscriminant discriminant;
    Int conductor;

    int operator()(const Int& n) const { return kronecker(discriminant.value, n); }
};
KroneckerCharacter kronecker_character(const Int& d);  // d > 0, -d fundamental

// h(-d) = number of reduced positive-definite forms of discriminant -d.
Int class_number(const Int& d);

// L(1, chi_{-d}).
double L1(const KroneckerCharacter& chi);         // class number formula inverted
double L1_direct(const KroneckerCharacter& chi);  // digamma finite sum
double L1_smoothed(const KroneckerCharacter& chi, double budget);  // Abel-accelerated sum

// L'(1, chi): primary smoothed-truncation value (abs error < budget, else
// accuracy_error) and the Hurwitz-zeta finite-difference cross-check.
double Lderiv1(const KroneckerCharacter& chi, double budget = 1e-7);
double Lderiv1_hurwitz(const KroneckerCharacter& chi);
double logderiv_L1(const KroneckerCharacter& chi);

// Arakelov height of the Heegner point for (K_{-d_K}, D): the s = 1 and
// s = 0 evaluations; they must agree to 1e-6.
struct HeegnerHeight {
    double s1_form;
    double s0_form;
};
HeegnerHeight heegner_height(const Int& d_K, const Int& D);

// ---------------------------------------------------------------------------
// General Dirichlet characters
// ---------------------------------------------------------------------------

// Character of (Z/m)^x given by exponents on a fixed generator basis.
struct DirichletCharacter {
    Int modulus;
    std::vector<long> exponents;   // one per cyclic component
    std::vector<long> comp_order;  // component orders
    long order;                    // order of the character
    // value table: val_num[r] = t means chi(r) = e^(2 pi i t / val_den);
    // t = -1 encodes chi(r) = 0.
    std::vector<long> val_num;
    long val_den;

    bool principal() const;
    std::complex<double> value(const Int& n) const;
    std::complex<double> value(long n) const;
};

// The full dual group of (Z/m)^x, principal character first,
// deterministic order.
std::vector<DirichletCharacter> all_characters(const Int& m);

// sum_{d<=x} mu^2(d) chi(d); asserts |.| <= 5 x^(1/2) m^(1/4) (log m)^(1/2).
std::complex<double> sqf_char_sum(const DirichletCharacter& chi, int64_t x);

// count of {d <= x : mu^2(d)=1, gcd(d,m)=1, d = a (mod 4)} with the
// x/(2 zeta(2) prod_{p|2m}(1+1/p)) main term.
struct SqfCoprimeCount {
    int64_t count;
    double main_term;
};
SqfCoprimeCount sqf_coprime_count(int a, const Int& m, int64_t x);

// ---------------------------------------------------------------------------
// Census of imaginary quadratic fields
// ---------------------------------------------------------------------------

struct HeegnerSearchParams {
    Int D, M;
    int64_t x;
    double theta = 0.25;
    double kappa = 10.0;
    unsigned workers = 1;
};

struct CensusResult {
    HeegnerSearchParams params;
    std::vector<int64_t> S;        // all six conditions
    int64_t s_prime_count = 0;     // conditions (i)-(iv) only
    double main_term = 0.0;
    double error_window = 0.0;     // 5 x^(1/2) N^(1/4) (log N)^(1/2)
    std::vector<int64_t> class_number_exceptions;  // passed (i)-(iv), failed (v)
    std::vector<int64_t> logderiv_exceptions;      // passed (i)-(v), failed (vi)
    bool small_d_flagged = false;  // some d < 16 hit the clamped (vi) bound
};

CensusResult heegner_census(const HeegnerSearchParams& params);

// Direct splitting check used to re-verify census members: for odd p not
// dividing d, p splits in Q(sqrt(-d)) iff x^2 = -d (mod p) is solvable.
bool splits_by_direct_check(const Int& d, const Int& p);

}  // namespace szpiro

#endif
