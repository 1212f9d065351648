#pragma once

#include <gmpxx.h>

#include "lquot/bigcomplex.hpp"

namespace lquot {

// Derivative order for the psi family; m = 0 is the digamma function.
struct PolygammaOrder {
    long m;
    explicit PolygammaOrder(long order) : m(order) {
        if (m < 0)
            throw DomainError("polygamma order must be non-negative");
    }
};

// Exact Bernoulli number B_n (B_1 = -1/2 convention); cached, thread-safe.
const mpq_class& bernoulli(unsigned long n);

// Throws PoleError when z lies within 2^(-bits/2) of a non-positive integer.
void require_off_poles(const BigComplex& z);

BigComplex gamma(const BigComplex& z);
// log Gamma along the recurrence path; exp of it equals gamma(z).  Real
// arguments > 0 give the real log Gamma.
BigComplex log_gamma(const BigComplex& z);
BigComplex digamma(const BigComplex& z);
BigComplex polygamma(PolygammaOrder m, const BigComplex& z);
inline BigComplex polygamma(long m, const BigComplex& z) {
    return polygamma(PolygammaOrder(m), z);
}

BigComplex euler_gamma(Precision p);
BigComplex pi_const(Precision p);
// log n for integer n >= 1.
BigComplex log_const(long n, Precision p);

} // namespace lquot
