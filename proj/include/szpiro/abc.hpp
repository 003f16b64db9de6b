#ifndef SZPIRO_ABC_HPP
#define SZPIRO_ABC_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "szpiro/arith.hpp"

namespace szpiro {

// Coprime positive integers with a + b = c, oriented a <= b.
struct AbcTriple {
    Int a, b, c;
};

// Validates all triple invariants; throws validation_error naming the
// first failed condition.  Inputs with a > b are reoriented.
AbcTriple make_abc_triple(const Int& a, const Int& b, const Int& c);

struct AbcReport {
    AbcTriple triple;
    Int rad_abc;
    Int d_abc;         // prod (v_p(abc)+1)
    Int val_product;   // prod v_p(abc)
    unsigned v2_abc;
    double quality;    // log c / log rad(abc)
    double d_ratio;    // d(abc) / rad(abc)^(8/3)
};

AbcReport analyze(const AbcTriple& t);

struct DabcCheck {
    double bound;  // rad(abc)^exponent
    bool satisfied;
};
DabcCheck check_dabc_exponent(const AbcReport& r, double exponent);

// Emits one report per coprime triple a <= b, a+b = c <= c_max, sorted by
// (c, a) regardless of worker count.  The optional predicate filters which
// reports reach the sink (enumeration is unaffected).
using AbcPredicate = std::function<bool(const AbcReport&)>;
void scan(int64_t c_max, unsigned workers, const std::function<void(const AbcReport&)>& sink,
          const AbcPredicate& predicate = nullptr);

// Convenience collector for small scans.
std::vector<AbcReport> scan_collect(int64_t c_max, unsigned workers,
                                    const AbcPredicate& predicate = nullptr);

struct IngestIssue {
    size_t line;  // 1-based
    std::string message;
};

struct IngestResult {
    std::vector<AbcTriple> triples;
    std::vector<IngestIssue> issues;
};

// CSV rows `a,b,c`, each field decimal or factored (`p1^e1*p2^e2*...`).
IngestResult ingest_triples(std::istream& in);

// Parses one integer field in decimal or factored form.
Int parse_integer_field(const std::string& field);

}  // namespace szpiro

#endif
