#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "szpiro/quadratic.hpp"

namespace szpiro {

namespace {

// ---------------------------------------------------------------------------
// Special functions: digamma and Hurwitz zeta by shifted asymptotic series /
// Euler-Maclaurin.  Absolute accuracy ~1e-15 on the domains used here.
// ---------------------------------------------------------------------------

double digamma(double x) {
    if (!(x > 0)) throw domain_error("digamma: x must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    // log x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    double series = inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                    inv2 * (1.0 / 252.0 +
                    inv2 * (-1.0 / 240.0 +
                    inv2 * (1.0 / 132.0 +
                    inv2 * (-691.0 / 32760.0 +
                    inv2 * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

// Hurwitz zeta(s, x), s in (0, 2), s != 1, x in (0, 1].
double hurwitz_zeta(double s, double x) {
    constexpr int K = 14, J = 7;
    // B_{2j}/(2j)! for j = 1..7
    static const double bern_fact[J] = {1.0 / 12.0,
                                        -1.0 / 720.0,
                                        1.0 / 30240.0,
                                        -1.0 / 1209600.0,
                                        1.0 / 47900160.0,
                                        -691.0 / 1307674368000.0,
                                        1.0 / 74724249600.0};
    double sum = 0.0;
    for (int k = 0; k < K; ++k) sum += std::pow(x + k, -s);
    double xk = x + K;
    sum += std::pow(xk, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(xk, -s);
    double poch = s;  // (s)(s+1)...(s+2j-2), built iteratively
    double xpow = std::pow(xk, -s - 1.0);
    for (int j = 1; j <= J; ++j) {
        sum += bern_fact[j - 1] * poch * xpow;
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        xpow /= xk * xk;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Periodic Abel-accelerated summation of sum chi(n) g(n)
// ---------------------------------------------------------------------------

enum class GKind { inv_t, log_t_over_t };

long double g_eval(GKind k, long double t) {
    return k == GKind::inv_t ? 1.0L / t : std::log(t) / t;
}

struct PeriodicSummer {
    long q = 0;
    std::vector<int8_t> chi;          // chi[r] for r in [0, q)
    std::array<std::vector<double>, 3> lvl;
    std::array<double, 3> mean{};
    double maxdev2 = 0.0;  // max |lvl2 - mean2|

    explicit PeriodicSummer(const KroneckerCharacter& kc) {
        if (!kc.conductor.fits_slong_p())
            throw domain_error("character conductor out of supported range");
        q = static_cast<long>(kc.conductor.get_si());
        chi.resize(static_cast<size_t>(q));
        for (long r = 0; r < q; ++r) chi[static_cast<size_t>(r)] =
            static_cast<int8_t>(kronecker(kc.discriminant.value, Int(r)));
        build();
    }

    void build() {
        for (int i = 0; i < 3; ++i) lvl[i].assign(static_cast<size_t>(q), 0.0);
        double run = 0.0;
        for (long j = 0; j < q; ++j) {
            run += chi[static_cast<size_t>(j)];
            lvl[0][static_cast<size_t>(j)] = run;
        }
        // a full period of a non-principal character sums to zero
        if (std::abs(run) > 0.5)
            throw accuracy_error("PeriodicSummer: period sum nonzero", run);
        for (int i = 0; i < 3; ++i) {
            double m = 0.0;
            for (long j = 0; j < q; ++j) m += lvl[i][static_cast<size_t>(j)];
            m /= static_cast<double>(q);
            mean[i] = m;
            if (i == 2) {
                double mx = 0.0;
                for (long j = 0; j < q; ++j)
                    mx = std::max(mx, std::abs(lvl[i][static_cast<size_t>(j)] - m));
                maxdev2 = mx;
                break;
            }
            double run2 = 0.0;
            for (long j = 0; j < q; ++j) {
                run2 += lvl[i][static_cast<size_t>(j)] - m;
                lvl[i + 1][static_cast<size_t>(j)] = run2;
            }
        }
    }

    // Sum_{n>X} |Delta^3 g(n)|, analytic envelope.
    static double tail_bound(GKind k, double X) {
        if (k == GKind::inv_t) return 3.0 / (X * X * X);
        return (3.0 * std::log(X) + 8.0) / (X * X * X);
    }

    double sum(GKind g, double budget, double* achieved_out) const {
        long X = std::max<long>(4 * q, 64);
        double achieved;
        for (;;) {
            achieved = maxdev2 * tail_bound(g, static_cast<double>(X));
            if (achieved <= 0.5 * budget || X >= (1L << 31)) break;
            X *= 2;
        }
        // floating slop of the direct sum
        achieved += 1e-17 * static_cast<double>(X) / static_cast<double>(q) +
                    5e-16 * std::log(static_cast<double>(X));
        if (achieved > budget)
            throw accuracy_error("periodic sum: error budget unattainable", achieved);

        long double direct = 0.0L;
        for (long n = 1; n <= X; ++n) {
            int8_t c = chi[static_cast<size_t>(n % q)];
            if (c != 0) direct += c * g_eval(g, static_cast<long double>(n));
        }
        // boundary corrections: sum_i (mean_i - L_i(X)) Delta^i g(X+1)
        long double gv[4];
        for (int i = 0; i < 4; ++i) gv[i] = g_eval(g, static_cast<long double>(X + 1 + i));
        long double d0 = gv[0];
        long double d1 = gv[0] - gv[1];
        long double d2 = gv[0] - 2 * gv[1] + gv[2];
        size_t jX = static_cast<size_t>(X % q);
        long double corr = (mean[0] - lvl[0][jX]) * d0 + (mean[1] - lvl[1][jX]) * d1 +
                           (mean[2] - lvl[2][jX]) * d2;
        if (achieved_out) *achieved_out = achieved;
        return static_cast<double>(direct + corr);
    }
};

double closed_form_L1(const Int& d, const Int& h) {
    double w = d == 3 ? 6.0 : (d == 4 ? 4.0 : 2.0);
    return 2.0 * std::numbers::pi * h.get_d() / (w * std::sqrt(d.get_d()));
}

}  // namespace

double L1(const KroneckerCharacter& chi) {
    Int d = chi.conductor;
    Int h = class_number(d);
    return closed_form_L1(d, h);
}

double L1_direct(const KroneckerCharacter& chi) {
    if (!chi.conductor.fits_slong_p()) throw domain_error("L1_direct: conductor too large");
    long q = static_cast<long>(chi.conductor.get_si());
    double acc = 0.0;
    for (long a = 1; a < q; ++a) {
        int c = kronecker(chi.discriminant.value, Int(a));
        if (c != 0) acc += c * digamma(static_cast<double>(a) / static_cast<double>(q));
    }
    return -acc / static_cast<double>(q);
}

double L1_smoothed(const KroneckerCharacter& chi, double budget) {
    PeriodicSummer ps(chi);
    return ps.sum(GKind::inv_t, budget, nullptr);
}

double Lderiv1(const KroneckerCharacter& chi, double budget) {
    PeriodicSummer ps(chi);
    // L'(1,chi) = - sum chi(n) log n / n
    return -ps.sum(GKind::log_t_over_t, budget, nullptr);
}

double Lderiv1_hurwitz(const KroneckerCharacter& chi) {
    if (!chi.conductor.fits_slong_p()) throw domain_error("Lderiv1_hurwitz: conductor too large");
    long q = static_cast<long>(chi.conductor.get_si());
    const double h = 1e-4;
    auto L_at = [&](double s) {
        double acc = 0.0;
        for (long a = 1; a < q; ++a) {
            int c = kronecker(chi.discriminant.value, Int(a));
            if (c != 0)
                acc += c * hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
        }
        return std::pow(static_cast<double>(q), -s) * acc;
    };
    return (L_at(1.0 + h) - L_at(1.0 - h)) / (2.0 * h);
}

double logderiv_L1(const KroneckerCharacter& chi) {
    return Lderiv1(chi, 1e-7) / L1(chi);
}

HeegnerHeight heegner_height(const Int& d_K, const Int& D) {
    KroneckerCharacter chi = kronecker_character(d_K);  // validates -d_K fundamental
    Factorization fD = factor(D);
    for (const auto& pp : fD.factors) {
        if (pp.exponent > 1)
            throw domain_error("heegner_height: D must be squarefree");
        if (chi(pp.prime) != -1)
            throw domain_error("heegner_height: prime " + pp.prime.get_str() +
                               " dividing D is not inert in Q(sqrt(-" + d_K.get_str() + "))");
    }
    if (fD.factors.size() % 2 != 0)
        throw domain_error("heegner_height: omega(D) must be even");

    const double gamma = std::numbers::egamma;
    const double log2pi = std::log(2.0 * std::numbers::pi);
    double dK = d_K.get_d(), Dd = D.get_d();

    // s = 1 form with the primary (smoothed) log-derivative
    double lder_primary = Lderiv1(chi, 1e-8) / L1(chi);
    double s1 = lder_primary + 0.5 * std::log(dK * Dd) - (gamma + log2pi);

    // s = 0 form through the functional equation, using the secondary
    // (Hurwitz-zeta finite-difference) log-derivative:
    // -L'/L(0,chi) = log(d/pi) - gamma - log 2 + L'/L(1,chi)
    double lder_secondary = Lderiv1_hurwitz(chi) / L1_direct(chi);
    double minus_lder_at0 =
        std::log(dK / std::numbers::pi) - gamma - std::log(2.0) + lder_secondary;
    double s0 = minus_lder_at0 + 0.5 * std::log(Dd / dK);

    if (std::abs(s1 - s0) > 1e-6)
        throw accuracy_error("heegner_height: s=1 and s=0 evaluations disagree",
                             std::abs(s1 - s0));
    return HeegnerHeight{s1, s0};
}

}  // namespace szpiro
