#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "szpiro/elliptic.hpp"

namespace szpiro {

namespace {

using Cx = std::complex<double>;

// Right-choice complex AGM: at each step pick the square-root branch with
// |a-b| <= |a+b|.  For admissible starts this converges to a nonzero limit.
Cx agm(Cx a, Cx b) {
    for (int i = 0; i < 200; ++i) {
        if (std::abs(a - b) <= 1e-17 * std::abs(a)) break;
        Cx am = 0.5 * (a + b);
        Cx gm = std::sqrt(a * b);
        if (std::abs(am - gm) > std::abs(am + gm)) gm = -gm;
        a = am;
        b = gm;
    }
    return a;
}

// Cubic roots of x^3 + px^2 + qx + r (monic, complex coefficients) via
// Cardano with a Newton polish.
std::array<Cx, 3> cubic_roots(double p, double q, double r) {
    // depressed: t = x + p/3
    Cx P = Cx(q - p * p / 3.0);
    Cx Q = Cx(2.0 * p * p * p / 27.0 - p * q / 3.0 + r);
    Cx disc = Q * Q / 4.0 + P * P * P / 27.0;
    Cx u3 = -Q / 2.0 + std::sqrt(disc);
    if (std::abs(u3) < 1e-300) u3 = -Q / 2.0 - std::sqrt(disc);
    Cx u = std::pow(u3, 1.0 / 3.0);
    std::array<Cx, 3> roots;
    const Cx omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        Cx uk = u * (k == 0 ? Cx(1.0) : (k == 1 ? omega : omega * omega));
        Cx t = (std::abs(uk) < 1e-150) ? Cx(0) : uk - P / (3.0 * uk);
        Cx x = t - p / 3.0;
        for (int it = 0; it < 40; ++it) {  // Newton polish
            Cx f = ((x + p) * x + q) * x + r;
            Cx df = (3.0 * x + 2.0 * p) * x + q;
            if (std::abs(df) < 1e-280) break;
            Cx step = f / df;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        roots[k] = x;
    }
    return roots;
}

struct QSeries {
    Cx delta;  // q prod (1-q^n)^24
    Cx j;      // E4^3 / delta
};

QSeries q_series(Cx tau) {
    const double two_pi = 2.0 * std::numbers::pi;
    Cx q = std::exp(Cx(0, two_pi) * tau);
    // eta-product part
    Cx prod(1.0, 0.0);
    Cx qn(1.0, 0.0);
    for (int n = 1; n <= 400; ++n) {
        qn *= q;
        if (std::abs(qn) < 1e-30) break;
        prod *= (Cx(1.0) - qn);
    }
    Cx prod24 = std::pow(prod, 24.0);
    Cx delta = q * prod24;
    // E4 = 1 + 240 sum n^3 q^n/(1-q^n)
    Cx e4(1.0, 0.0);
    qn = Cx(1.0, 0.0);
    for (int n = 1; n <= 400; ++n) {
        qn *= q;
        if (std::abs(qn) * n * n * n < 1e-30) break;
        e4 += 240.0 * std::pow(static_cast<double>(n), 3.0) * qn / (Cx(1.0) - qn);
    }
    return {delta, e4 * e4 * e4 / delta};
}

// Reduce tau into the standard fundamental domain.
Cx reduce_tau(Cx tau) {
    if (tau.imag() < 0) tau = std::conj(tau);
    for (int it = 0; it < 10000; ++it) {
        double n = std::round(tau.real());
        tau -= n;
        if (std::norm(tau) >= 1.0 - 1e-15) break;
        tau = -1.0 / tau;
    }
    return tau;
}

struct Periods {
    Cx w1, w2;  // basis with Im(w2/w1) > 0
};

// Period lattice of dx/(2y + a1 x + a3) on the minimal model, via AGM from
// the roots of 4x^3 + b2 x^2 + 2 b4 x + b6 and verified against the exact
// j-invariant.
Periods period_lattice(const WeierstrassModel& m) {
    double b2 = m.b2().get_d(), b4 = m.b4().get_d(), b6 = m.b6().get_d();
    // monic cubic x^3 + (b2/4) x^2 + (b4/2) x + b6/4; y^2 = 4 prod (x - e_i)
    std::array<Cx, 3> e = cubic_roots(b2 / 4.0, b4 / 2.0, b6 / 4.0);

    // exact j = c4^3/disc for verification of the computed lattice
    Int c4 = m.c4();
    Int dsc = m.discriminant();
    double j_exact = 0.0;
    if (c4 != 0) {
        double L = 3.0 * log_mpz(abs(c4)) - log_mpz(abs(dsc));
        if (L > 690.0)
            throw accuracy_error("period_lattice: |j| out of double range", L);
        int sign = ((c4 < 0) ? -1 : 1) * ((dsc < 0) ? -1 : 1);
        j_exact = sign * std::exp(L);
    }

    auto try_pair = [&](int i, int jj, int k) -> std::optional<Periods> {
        const double pi = std::numbers::pi;
        Cx mij = agm(std::sqrt(e[i] - e[k]), std::sqrt(e[i] - e[jj]));
        Cx mkj = agm(std::sqrt(e[i] - e[k]), std::sqrt(e[jj] - e[k]));
        if (std::abs(mij) < 1e-280 || std::abs(mkj) < 1e-280) return std::nullopt;
        Cx w1 = pi / mij;
        Cx w2 = Cx(0, 1) * pi / mkj;
        Cx tau = w2 / w1;
        if (std::abs(tau.imag()) < 1e-12) return std::nullopt;
        if (tau.imag() < 0) {
            w2 = -w2;
            tau = w2 / w1;
        }
        // candidate bases: the AGM pair plus index-2 companions
        std::array<std::pair<Cx, Cx>, 4> cands = {{{w1, w2},
                                                   {w1, (w1 + w2) / 2.0},
                                                   {(w1 + w2) / 2.0, w2},
                                                   {w1 / 2.0, w2}}};
        for (auto& [a, b] : cands) {
            Cx t = b / a;
            if (t.imag() < 0) {
                b = -b;
                t = b / a;
            }
            Cx tr = reduce_tau(t);
            QSeries qs = q_series(tr);
            double denom = 1.0 + std::abs(j_exact);
            if (std::abs(qs.j - Cx(j_exact)) / denom < 1e-6) return Periods{a, b};
        }
        return std::nullopt;
    };

    static const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& o : orders) {
        auto r = try_pair(o[0], o[1], o[2]);
        if (r) return *r;
    }
    throw accuracy_error("period_lattice: no basis reproduced the j-invariant", 0.0);
}

}  // namespace

double delta_im6(double re_tau, double im_tau) {
    if (!(im_tau > 0)) throw domain_error("delta_im6: Im(tau) must be positive");
    Cx tau = reduce_tau(Cx(re_tau, im_tau));
    QSeries qs = q_series(tau);
    return std::abs(qs.delta) * std::pow(tau.imag(), 6.0);
}

double faltings_height(const CurveData& cd) {
    const WeierstrassModel& m = cd.minimal_model;
    Periods per = period_lattice(m);
    Cx tau = reduce_tau(per.w2 / per.w1);
    QSeries qs = q_series(tau);
    double log_delta_tau_im6 = std::log(std::abs(qs.delta)) + 6.0 * std::log(tau.imag());
    double h = (log_mpz(cd.delta_E) - log_delta_tau_im6) / 12.0 - std::log(2.0 * std::numbers::pi);
    return h;
}

}  // namespace szpiro
