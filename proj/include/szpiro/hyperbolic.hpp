#ifndef SZPIRO_HYPERBOLIC_HPP
#define SZPIRO_HYPERBOLIC_HPP

#include <complex>
#include <vector>

#include "szpiro/errors.hpp"

namespace szpiro {

using Complex = std::complex<double>;

// Point of the upper half plane (Im > 0, enforced).
struct HPoint {
    Complex z;
};
HPoint make_hpoint(Complex z);

double hyp_distance(const HPoint& z, const HPoint& w);

// c_tau(w) = Re(tau) - Im(tau) i (w+i)/(w-i), a disc -> half-plane isometry
// with c_tau(0) = tau.
HPoint cayley(const HPoint& tau, Complex w);
Complex cayley_inverse(const HPoint& tau, const HPoint& z);

// Polynomial in the disc variable, pushed to the half plane through the
// Cayley map anchored at i:  f(z) = h(c_i^{-1}(z)).
struct DiscFunction {
    std::vector<Complex> coefficients;  // h(w) = sum c_k w^k

    Complex eval_disc(Complex w) const;
    Complex eval_halfplane(Complex z) const;
};

// lhs = |f(tau)|^2 Im(tau)^2 against
// rhs = e^{2r}/(4 pi tanh(r/2)^2) * int_{B(tau,r)} |f|^2 y^2 dmu.
struct MeanValueCheck {
    double lhs;
    double rhs;
};
MeanValueCheck mean_value_check(const DiscFunction& f, const HPoint& tau, double r,
                                double rel_tol = 1e-6);

// 1 / (2 (log 6n)^3)
double injectivity_radius_bound(unsigned n);

// nu_n = e^r / (2 sqrt(pi) tanh(r/2)) at r = 1/(2 (log 6n)^3)
double norm_comparison_constant(unsigned n);

}  // namespace szpiro

#endif
