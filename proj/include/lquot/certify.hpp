#pragma once

#include <string>
#include <vector>

#include "lquot/families.hpp"
#include "lquot/rank.hpp"
#include "lquot/reduce.hpp"

namespace lquot {

enum class Claim {
    GLdNonvanish,
    ModularNonvanish,
    ModularNonvanishRemark,
    HalfIntCentral,
    HilbertNonvanish,
    SiegelNonvanish,
    RankBound,
};

std::string claim_name(Claim c);

enum class Verdict { Certified, NotCertified };

// Machine-checkable record.  Negativity certificates prove a closed-form
// quantity strictly negative with a margin above 2^(-bits/4); rank
// certificates prove a dimension lower bound by exact elimination.  A
// Certified verdict is re-verified at doubled precision before being issued.
struct Certificate {
    Claim claim = Claim::GLdNonvanish;
    std::string inputs;
    ConstExpr bound_expr;
    BigComplex bound_value;  // proven-negative quantity, or the rank bound
    BigFloat margin;
    Verdict verdict = Verdict::NotCertified;
    long precision_bits = 0;  // 0 marks an exact (rational-arithmetic) record
    long guarantee = 0;       // rank certificates
    long computed_rank = 0;   // rank certificates
    std::vector<std::string> symbols;  // rank certificates: basis constants
    std::vector<std::string> assumptions;

    bool certified() const { return verdict == Verdict::Certified; }
    std::string serialize() const;
};

// Minimal discriminants of totally real fields of small degree; the values
// for degree 3 and 4 are configuration data with cited defaults.
struct HilbertDiscriminantTable {
    long degree2 = 5;
    long degree3 = 49;
    long degree4 = 725;

    long minimum(long n) const;
};

Certificate certify_gld(const FamilyDatum& fd, const CriticalPoint& s0,
                        Precision prec = Precision());

Certificate certify_modular(const FamilyDatum& fd, const mpq_class& s0,
                            bool remark = false, Precision prec = Precision());

Certificate certify_halfint_central(const mpq_class& k, long N,
                                    Precision prec = Precision());

Certificate certify_hilbert(const FamilyDatum& fd, const mpq_class& s0,
                            const HilbertDiscriminantTable& table = HilbertDiscriminantTable(),
                            Precision prec = Precision());

Certificate certify_siegel(const FamilyDatum& fd, const mpq_class& s0,
                           Precision prec = Precision());
// Hypothesis checks run before any datum invariant, so off-range weights
// report HypothesisError instead of DomainError.
Certificate certify_siegel(long k, long g, const mpq_class& s0,
                           Precision prec = Precision());

// Dimension certificate for a conductor family: one member per N in J, all
// sharing the template's remaining data.  Exact throughout.
Certificate rank_certificate(const FamilyDatum& tmpl, const IntegerSet& J,
                             const CriticalPoint& s0);

// Dimension certificate over the points a/q, 1 <= a < q/2, gcd(a, q) = 1.
Certificate rank_certificate_coprime(const FamilyDatum& fd, long q);

} // namespace lquot
