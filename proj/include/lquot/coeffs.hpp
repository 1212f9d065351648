#pragma once

#include <string>
#include <vector>

#include "lquot/families.hpp"

namespace lquot {

// Dirichlet coefficients a(n) for one L-function, together with the
// functional-equation datum, a growth bound |a(n)| <= C * n^theta valid for
// all n, and the root number.  Coefficients are exact rationals in the
// arithmetic normalization and are stored 1-based (a_[0] is unused).
struct CoefficientSeries {
    FamilyDatum meta;
    std::vector<mpq_class> a;   // a[1..nmax]
    mpq_class growth_theta = 0; // theta
    mpq_class growth_c = 1;     // C > 0
    BigComplex eps;             // root number, |eps| = 1
    bool self_dual = true;      // conjugate-dual coefficients equal a(n)
    // Declares the list complete: a(n) = 0 for n > nmax().  Evaluation then
    // uses the exact finite sum and skips tail certification.
    bool entire_polynomial = false;

    long nmax() const { return static_cast<long>(a.size()) - 1; }
    const mpq_class& at(long n) const; // bounds-checked coefficient access
    void validate() const;             // DomainError on violated invariants
};

// Ramanujan cusp-form coefficients tau(1..nmax) from the 24th power of the
// Euler product, via the sparse pentagonal-number power recurrence.
std::vector<mpq_class> delta_tau_coefficients(long nmax);

// Kronecker symbol (d|n) for n >= 1.
int kronecker_symbol(long d, long n);

// Bundled series.
CoefficientSeries delta_series(long nmax);           // weight 12, level 1
CoefficientSeries delta_twist5_series(long nmax);    // twist by (5|.), D = 5
CoefficientSeries character_mod5_series(long nmax);  // GL(1), even character mod 5
CoefficientSeries hilbert_alias_delta(long nmax);    // degree-1 Hilbert datum

// Plain-text coefficient files: '# key: value' header lines (family-specific
// keys, a growth bound, the root number, and a mandatory
// 'normalization: arithmetic'), then one 'n a(n)' pair per line with n
// consecutive from 1 and a(n) rational.  Errors carry 1-based line numbers.
CoefficientSeries load_coefficient_file(const std::string& path);
void write_coefficient_file(const std::string& path, const CoefficientSeries& cs);
CoefficientSeries parse_coefficient_text(const std::string& text);
std::string serialize_coefficient_text(const CoefficientSeries& cs);

} // namespace lquot
