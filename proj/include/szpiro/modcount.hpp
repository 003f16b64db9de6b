#ifndef SZPIRO_MODCOUNT_HPP
#define SZPIRO_MODCOUNT_HPP

#include <map>
#include <string>
#include <vector>

#include "szpiro/arith.hpp"

namespace szpiro {

// N = D*M with D squarefree, omega(D) even, gcd(D,M) = 1.
struct AdmissibleFactorization {
    Int N, D, M;
};

AdmissibleFactorization make_admissible(const Int& D, const Int& M);

// All admissible (D,M) with DM = N, sorted by D.
std::vector<AdmissibleFactorization> admissible_factorizations(const Int& N);

// Genus of X_0(N) by the index/elliptic-point/cusp formula.
Int genus_X0(const Int& N);

// dim S_2(Gamma_0(n))^new via exact inversion of dim S_2(Gamma_0(n)) =
// sum_{m|n} d(n/m) s(m).
Int new_dim(const Int& n);

// r_{D,M} = sum_{m|M} s(Dm); asserts the dimension bound
// r <= phi(D) M / 12 + (7/12) d(D M^2) + 1.
Int r_DM(const AdmissibleFactorization& af);

// ceil(N^2/6 * prod_{p|N} (1+1/p)); asserted < N^3 for N >= 2.
Int sturm_index_bound(const Int& N);

// Named evaluation of one explicit bound.
struct BoundReport {
    std::string name;
    std::map<std::string, double> inputs;
    double value;
    std::optional<bool> inequality_checked;
};

// (phi(D) M / 12 + (7/12) d(D M^2)) (log N + 4 log N / log log N);
// requires N >= 3.
BoundReport modular_degree_bound(const AdmissibleFactorization& af);

// (1/12 + eps) phi(D) M loglog N; requires N >= 16.
BoundReport grh_degree_bound(const AdmissibleFactorization& af, double epsilon);

// h-bound (1/24)(N + 7 d(N^2)) L(N) + 9 and log-Delta bound
// (1/2)(N + 7 d(N^2)) L(N) + 124, with L(N) = log N + 4 log N/loglog N.
std::pair<BoundReport, BoundReport> height_bounds_allQ(const Int& N);

// (P/phi(P)) (eps + 1/48) phi(N) log N and the GRH variant with
// (eps + 1/24) phi(N) loglog N.
std::pair<BoundReport, BoundReport> semistable_bounds(const std::vector<Int>& S, const Int& N,
                                                      double epsilon);

// ((6+eps) log_delta, (1/2+eps) log_delta).
std::pair<double, double> shimura_height_transfer(double log_delta, double epsilon);

// (1/2) log_delta + 9.
double classical_height_from_degree(double log_delta);

}  // namespace szpiro

#endif
