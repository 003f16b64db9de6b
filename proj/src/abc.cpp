#include "szpiro/abc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "szpiro/parallel.hpp"

namespace szpiro {

unsigned default_workers() {
    if (const char* env = std::getenv("SZPIRO_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

AbcTriple make_abc_triple(const Int& a_in, const Int& b_in, const Int& c) {
    Int a = a_in, b = b_in;
    if (a > b) std::swap(a, b);
    if (a < 1 || b < 1 || c < 1)
        throw validation_error("abc triple: entries must be positive");
    if (a + b != c) throw validation_error("abc triple: a + b != c");
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw validation_error("abc triple: gcd(a,b) != 1");
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw validation_error("abc triple: gcd(a,c) != 1");
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw validation_error("abc triple: gcd(b,c) != 1");
    return AbcTriple{a, b, c};
}

namespace {

AbcReport report_from_factorizations(const AbcTriple& t, const Factorization& fa,
                                     const Factorization& fb, const Factorization& fc) {
    AbcReport r;
    r.triple = t;
    r.rad_abc = 1;
    r.d_abc = 1;
    r.val_product = 1;
    r.v2_abc = 0;
    // a, b, c are pairwise coprime, so v_p(abc) is read off one of them.
    const Factorization* parts[3] = {&fa, &fb, &fc};
    std::vector<std::pair<Int, unsigned>> merged;
    for (const Factorization* f : parts)
        for (const auto& pp : f->factors) merged.emplace_back(pp.prime, pp.exponent);
    std::sort(merged.begin(), merged.end());
    for (const auto& [p, e] : merged) {
        r.rad_abc *= p;
        r.d_abc *= e + 1;
        r.val_product *= e;
        if (p == 2) r.v2_abc = e;
    }
    double log_c = log_mpz(t.c);
    double log_rad = log_mpz(r.rad_abc);
    r.quality = log_c / log_rad;
    r.d_ratio = std::exp(log_mpz(r.d_abc) - (8.0 / 3.0) * log_rad);
    return r;
}

}  // namespace

AbcReport analyze(const AbcTriple& t) {
    AbcTriple v = make_abc_triple(t.a, t.b, t.c);  // re-validate
    return report_from_factorizations(v, factor(v.a), factor(v.b), factor(v.c));
}

DabcCheck check_dabc_exponent(const AbcReport& r, double exponent) {
    if (!(exponent > 0)) throw domain_error("check_dabc_exponent: exponent must be > 0");
    double log_rad = log_mpz(r.rad_abc);
    double bound = std::exp(exponent * log_rad);
    bool satisfied = log_mpz(r.d_abc) < exponent * log_rad;
    return DabcCheck{bound, satisfied};
}

// ---------------------------------------------------------------------------
// Scan
// ---------------------------------------------------------------------------

namespace {

// Smallest-prime-factor sieve shared by a scan invocation.
struct SpfSieve {
    std::vector<uint32_t> spf;
    explicit SpfSieve(uint32_t limit) {
        spf.assign(limit + 1, 0);
        for (uint32_t i = 2; i <= limit; ++i) {
            if (spf[i] == 0)
                for (uint64_t j = i; j <= limit; j += i)
                    if (spf[j] == 0) spf[j] = i;
        }
    }
    Factorization factor_of(uint32_t n) const {
        Factorization f;
        f.value = n;
        while (n > 1) {
            uint32_t p = spf[n];
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.push_back(PrimePower{Int(p), e});
        }
        return f;
    }
};

}  // namespace

void scan(int64_t c_max, unsigned workers, const std::function<void(const AbcReport&)>& sink,
          const AbcPredicate& predicate) {
    if (c_max < 2) throw domain_error("scan: c_max must be >= 2");
    SpfSieve sieve(static_cast<uint32_t>(c_max));

    auto produce = [&](int64_t c_lo, int64_t c_hi) {
        std::vector<AbcReport> out;
        for (int64_t c = c_lo; c < c_hi; ++c) {
            Factorization fc = sieve.factor_of(static_cast<uint32_t>(c));
            for (int64_t a = 1; 2 * a <= c; ++a) {
                int64_t b = c - a;
                if (std::gcd(a, b) != 1) continue;
                AbcTriple t{Int(static_cast<long>(a)), Int(static_cast<long>(b)),
                            Int(static_cast<long>(c))};
                AbcReport r =
                    report_from_factorizations(t, sieve.factor_of(static_cast<uint32_t>(a)),
                                               sieve.factor_of(static_cast<uint32_t>(b)), fc);
                if (!predicate || predicate(r)) out.push_back(std::move(r));
            }
        }
        return out;
    };
    auto consume = [&](std::vector<AbcReport>&& blockvals) {
        for (const AbcReport& r : blockvals) sink(r);
    };
    run_ordered_blocks<AbcReport>(2, c_max + 1, 256, workers, produce, consume);
}

std::vector<AbcReport> scan_collect(int64_t c_max, unsigned workers, const AbcPredicate& predicate) {
    std::vector<AbcReport> all;
    scan(c_max, workers, [&](const AbcReport& r) { all.push_back(r); }, predicate);
    return all;
}

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

Int parse_integer_field(const std::string& field_in) {
    std::string field;
    for (char ch : field_in)
        if (!std::isspace(static_cast<unsigned char>(ch))) field.push_back(ch);
    if (field.empty()) throw validation_error("empty field");

    auto parse_plain = [](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw validation_error("not a decimal integer: '" + s + "'");
        return Int(s);
    };

    if (field.find('*') == std::string::npos && field.find('^') == std::string::npos)
        return parse_plain(field);

    Int value = 1;
    std::stringstream ss(field);
    std::string term;
    while (std::getline(ss, term, '*')) {
        if (term.empty()) throw validation_error("empty factor in '" + field + "'");
        size_t caret = term.find('^');
        Int base;
        unsigned long exp = 1;
        if (caret == std::string::npos) {
            base = parse_plain(term);
        } else {
            base = parse_plain(term.substr(0, caret));
            Int e = parse_plain(term.substr(caret + 1));
            if (e < 1 || !e.fits_ulong_p())
                throw validation_error("bad exponent in '" + term + "'");
            exp = e.get_ui();
        }
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), base.get_mpz_t(), exp);
        value *= pe;
    }
    return value;
}

IngestResult ingest_triples(std::istream& in) {
    IngestResult res;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Strip comments and blank lines.
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = std::all_of(line.begin(), line.end(), [](char c) {
            return std::isspace(static_cast<unsigned char>(c));
        });
        if (blank) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 3) {
            res.issues.push_back({lineno, "expected 3 comma-separated fields"});
            continue;
        }
        try {
            Int a = parse_integer_field(fields[0]);
            Int b = parse_integer_field(fields[1]);
            Int c = parse_integer_field(fields[2]);
            res.triples.push_back(make_abc_triple(a, b, c));
        } catch (const std::exception& e) {
            res.issues.push_back({lineno, e.what()});
        }
    }
    return res;
}

}  // namespace szpiro
