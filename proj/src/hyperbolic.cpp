#include <cmath>
#include <numbers>

#include "szpiro/hyperbolic.hpp"

namespace szpiro {

HPoint make_hpoint(Complex z) {
    if (!(z.imag() > 0)) throw domain_error("HPoint: Im(z) must be positive");
    return HPoint{z};
}

double hyp_distance(const HPoint& zp, const HPoint& wp) {
    const Complex& z = zp.z;
    const Complex& w = wp.z;
    double t = 1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag());
    return std::acosh(t);
}

HPoint cayley(const HPoint& tau, Complex w) {
    if (!(std::abs(w) < 1.0)) throw domain_error("cayley: |w| must be < 1");
    const Complex i(0.0, 1.0);
    Complex z = tau.z.real() - tau.z.imag() * i * (w + i) / (w - i);
    return make_hpoint(z);
}

Complex cayley_inverse(const HPoint& tau, const HPoint& z) {
    // solve (w+i)/(w-i) = i (z - Re tau)/Im tau =: A  =>  w = -i (1+A)/(1-A)
    const Complex i(0.0, 1.0);
    Complex A = i * (z.z - tau.z.real()) / tau.z.imag();
    return -i * (1.0 + A) / (1.0 - A);
}

Complex DiscFunction::eval_disc(Complex w) const {
    Complex acc(0.0, 0.0);
    for (size_t k = coefficients.size(); k-- > 0;) acc = acc * w + coefficients[k];
    return acc;
}

Complex DiscFunction::eval_halfplane(Complex z) const {
    HPoint anchor{Complex(0.0, 1.0)};
    return eval_disc(cayley_inverse(anchor, HPoint{z}));
}

namespace {

// Gauss-Legendre nodes/weights on [0,1], computed by Newton on Legendre
// polynomials.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[k] = 0.5 * (x + 1.0);
        weights[k] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

// int_{B_H(tau,r)} |f|^2 y^2 dmu, pulled back to the disc of radius
// t = tanh(r/2) and integrated in polar coordinates.
double ball_integral(const DiscFunction& f, const HPoint& tau, double r, int n_rad, int n_ang) {
    double t = std::tanh(r / 2.0);
    std::vector<double> xr, wr;
    gauss_legendre(n_rad, xr, wr);
    double acc = 0.0;
    for (int ir = 0; ir < n_rad; ++ir) {
        double rho = t * xr[ir];
        double wrad = t * wr[ir];
        double inner = 0.0;
        for (int ia = 0; ia < n_ang; ++ia) {
            double th = 2.0 * std::numbers::pi * ia / n_ang;
            Complex w = std::polar(rho, th);
            HPoint z = cayley(tau, w);
            Complex fv = f.eval_halfplane(z.z);
            inner += std::norm(fv) * z.z.imag() * z.z.imag();
        }
        inner *= 2.0 * std::numbers::pi / n_ang;
        double denom = 1.0 - rho * rho;
        acc += wrad * inner * 4.0 * rho / (denom * denom);
    }
    return acc;
}

}  // namespace

MeanValueCheck mean_value_check(const DiscFunction& f, const HPoint& tau, double r,
                                double rel_tol) {
    if (!(r > 0.0) || r > 5.0) throw domain_error("mean_value_check: r must lie in (0, 5]");
    Complex ftau = f.eval_halfplane(tau.z);
    double lhs = std::norm(ftau) * tau.z.imag() * tau.z.imag();

    int n_rad = 16, n_ang = 32;
    double prev = ball_integral(f, tau, r, n_rad, n_ang);
    double integral = prev;
    bool converged = false;
    for (int step = 0; step < 8; ++step) {
        n_rad *= 2;
        n_ang *= 2;
        integral = ball_integral(f, tau, r, n_rad, n_ang);
        if (std::abs(integral - prev) <= rel_tol * std::abs(integral)) {
            converged = true;
            break;
        }
        prev = integral;
    }
    if (!converged)
        throw accuracy_error("mean_value_check: quadrature did not converge",
                             std::abs(integral - prev) / std::max(1e-300, std::abs(integral)));

    double th = std::tanh(r / 2.0);
    double factor = std::exp(2.0 * r) / (4.0 * std::numbers::pi * th * th);
    return MeanValueCheck{lhs, factor * integral};
}

double injectivity_radius_bound(unsigned n) {
    if (n < 1) throw domain_error("injectivity_radius_bound: n must be >= 1");
    double l = std::log(6.0 * n);
    return 1.0 / (2.0 * l * l * l);
}

double norm_comparison_constant(unsigned n) {
    double r = injectivity_radius_bound(n);
    return std::exp(r) / (2.0 * std::sqrt(std::numbers::pi) * std::tanh(r / 2.0));
}

}  // namespace szpiro
