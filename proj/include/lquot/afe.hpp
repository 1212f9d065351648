#pragma once

#include <limits>

#include "lquot/coeffs.hpp"

namespace lquot {

// Evaluation controls.  The coefficient range actually summed is always
// certified against the growth bound at run time; TruncationError signals
// that the requested accuracy is unreachable with the available terms.
struct AFEConfig {
    Precision prec;        // output precision
    mpq_class cutoff = 1;  // smoothing split point X > 0
    long terms = 0;        // cap on summed coefficients (0: all available)
    long step_exp = 0;     // log2 of the difference step (0: automatic, else < 0)
};

// Reduced archimedean factor gamma(s) = c0 * Q^s * Gamma(u*s + mu) with
// functional equation s <-> ktilde - s and root number eps.
struct GammaShape {
    mpq_class u = 1;
    BigComplex mu;
    BigFloat Q;
    BigFloat c0;
    mpq_class ktilde = 1;
    BigComplex eps;
};

// Collapse the archimedean factor of the datum to a single Gamma factor.
// UnsupportedFamilyError where no such reduction exists (Siegel, Hilbert
// degree >= 2, half-integer weight, GL(2) without kappa2 = kappa1 + 1,
// GL(d) with d >= 3).
GammaShape gamma_shape(const CoefficientSeries& cs, Precision prec);

BigComplex gamma_factor(const GammaShape& gs, const BigComplex& s);

// Upper incomplete gamma Gamma(a, x) for real x > 0 and complex a.
BigComplex incomplete_gamma_upper(const BigComplex& a, const BigFloat& x);

// Completed function Lambda(s): certified direct summation for
// Re(s) >= theta + 2, the smoothed approximate functional equation elsewhere.
BigComplex complete_l(const CoefficientSeries& cs, const BigComplex& s,
                      const AFEConfig& cfg = AFEConfig());

// L(s) with the smoothed approximate functional equation unconditionally
// (exact finite sum for declared Dirichlet polynomials).
BigComplex afe_l(const CoefficientSeries& cs, const BigComplex& s,
                 const AFEConfig& cfg = AFEConfig());

// (d/ds)^order log L at s (order >= 1), by central differences of the
// principal logarithm with one Richardson step.  ZeroValueError when a
// stencil point lands too close to a zero of L.
BigComplex log_derivative(const CoefficientSeries& cs, const BigComplex& s,
                          long order, const AFEConfig& cfg = AFEConfig());

struct IdentityReport {
    long m = 0;
    BigComplex lhs;
    BigFloat residual;
    BigFloat tolerance;
    bool pass = false;
    // rhs is carried both numerically and, when the point is rational,
    // exactly.
    BigComplex rhs;
};

// Compare the numeric derivative sum at (s0, ktilde - s0) against the
// closed form.  tol_exp defaults to -bits/8.
IdentityReport verify_identity(const CoefficientSeries& cs, const CriticalPoint& s0,
                               long m, const AFEConfig& cfg = AFEConfig(),
                               long tol_exp = std::numeric_limits<long>::min());

} // namespace lquot
