#include "szpiro/quadratic.hpp"

namespace szpiro {

// Count of reduced positive-definite binary quadratic forms (a,b,c) of
// discriminant b^2 - 4ac = -d:  -a < b <= a <= c, with b >= 0 when a = c.
Int class_number(const Int& d) {
    if (d <= 0) throw domain_error("class_number: d must be positive");
    (void)make_fundamental(-d);  // domain check
    if (!d.fits_slong_p()) throw domain_error("class_number: d out of supported range");
    long dl = static_cast<long>(d.get_si());
    long count = 0;
    // b = d (mod 2) since b^2 = -d (mod 4)
    for (long a = 1; 3 * a * a <= dl; ++a) {
        for (long b = -(a - 1); b <= a; ++b) {
            if (((b - dl) & 1) != 0) continue;  // parity
            long num = b * b + dl;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++count;
        }
    }
    return Int(count);
}

bool splits_by_direct_check(const Int& d, const Int& p) {
    if (!is_prime(p)) throw domain_error("splits_by_direct_check: p must be prime");
    if (p == 2) {
        // 2 splits in Q(sqrt(-d)) (d = 3 mod 4 squarefree) iff d = 7 (mod 8).
        Int r = d % 8;
        return r == 7;
    }
    if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) return false;  // ramified
    long pl = static_cast<long>(p.get_si());
    Int md = (-d) % p;
    if (md < 0) md += p;
    long target = static_cast<long>(md.get_si());
    for (long x = 0; x < pl; ++x)
        if (x * x % pl == target) return true;
    return false;
}

}  // namespace szpiro
