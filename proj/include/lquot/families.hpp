#pragma once

#include <string>
#include <vector>

#include "lquot/reduce.hpp"
#include "lquot/symbols.hpp"

namespace lquot {

enum class Family { AutomorphicGLd, ModularTwisted, Hilbert, Siegel };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Evaluation point inside the critical strip.  Exact rational points admit
// symbolic output; floating points may be complex.
class CriticalPoint {
  public:
    static CriticalPoint exact(const mpq_class& s0);
    static CriticalPoint floating(const BigComplex& s0);

    bool is_exact() const { return exact_; }
    const mpq_class& rational() const;
    BigComplex numeric(Precision p) const;

  private:
    CriticalPoint() = default;
    bool exact_ = false;
    mpq_class rat_;
    BigComplex val_;
};

// Functional-equation data for one L-function.  Weights are stored as exact
// rationals (denominator 2 admitted only for the twisted modular family).
struct FamilyDatum {
    Family family = Family::ModularTwisted;
    long d = 0;                        // degree (AutomorphicGLd)
    long N = 1;                        // conductor / level
    std::vector<BigComplex> kappa;     // local parameters (AutomorphicGLd)
    std::vector<mpq_class> kappa_rat;  // exact copies when kappa_exact
    bool kappa_exact = false;
    mpq_class k = 0;                   // weight
    long D = 1;                        // twist discriminant (ModularTwisted)
    long n = 0;                        // base-field degree (Hilbert)
    long dF = 1;                       // field discriminant (Hilbert)
    long normN = 1;                    // ideal norm of the level (Hilbert)
    long g = 0;                        // genus (Siegel)

    static FamilyDatum gld(long d, long N, const std::vector<mpq_class>& kappa);
    static FamilyDatum gld(long d, long N, const std::vector<BigComplex>& kappa);
    static FamilyDatum modular(const mpq_class& k, long N, long D);
    static FamilyDatum hilbert(long k, long n, long dF, long normN);
    static FamilyDatum siegel(long k, long g);

    // True iff the weight is a positive even integer (the delta_k predicate).
    bool weight_even_integer() const;

    void validate() const;  // throws DomainError on any invariant violation

    std::string serialize() const;
    static FamilyDatum parse(const std::string& text);
};

// Right-hand side of the first-derivative quotient identity, numerically.
BigComplex closed_form_sum(const FamilyDatum& fd, const CriticalPoint& s0,
                           Precision prec = Precision());

// Same value as an exact constant expression; requires a rational point
// (and rational local parameters for AutomorphicGLd).
ConstExpr closed_form_sum_exact(const FamilyDatum& fd, const CriticalPoint& s0);

// Right-hand side of the m-th-derivative identity (m >= 1) for the three
// weight families; AutomorphicGLd has no higher-derivative identity here.
BigComplex closed_form_higher(const FamilyDatum& fd, const CriticalPoint& s0,
                              long m, Precision prec = Precision());

// Exact counterpart of closed_form_higher.
ConstExpr closed_form_higher_exact(const FamilyDatum& fd,
                                   const CriticalPoint& s0, long m);

enum class ConvertDirection {
    LogDerivToQuotients,  // [(L'/L), (L'/L)', ...] -> [L'/L, L''/L, ...]
    QuotientsToLogDeriv,
};

// Exchange the first M log-derivative jets with the first M quotient values
// using the integer-coefficient Leibniz recursion; the two directions are
// mutually inverse.
std::vector<BigComplex> quotient_derivative_convert(
    const std::vector<BigComplex>& seq, ConvertDirection dir);

} // namespace lquot
