#pragma once

// Independent reference implementations used only by the test suite.  Each
// oracle deliberately uses a different summation strategy (fixed shifts,
// literal Bernoulli table, Euler-Maclaurin forms) from the library code it
// checks.

#include <random>
#include <vector>

#include "lquot/bigcomplex.hpp"
#include "lquot/errors.hpp"

namespace oracles {

using lquot::BigComplex;
using lquot::BigFloat;
using lquot::Precision;

// B_2 .. B_40 as exact literals (checked against the library recurrence in
// the symbolic test).
inline const std::vector<mpq_class>& bernoulli_table() {
    static const std::vector<mpq_class> t = {
        mpq_class("1/6"),
        mpq_class("-1/30"),
        mpq_class("1/42"),
        mpq_class("-1/30"),
        mpq_class("5/66"),
        mpq_class("-691/2730"),
        mpq_class("7/6"),
        mpq_class("-3617/510"),
        mpq_class("43867/798"),
        mpq_class("-174611/330"),
        mpq_class("854513/138"),
        mpq_class("-236364091/2730"),
        mpq_class("8553103/6"),
        mpq_class("-23749461029/870"),
        mpq_class("8615841276005/14322"),
        mpq_class("-7709321041217/510"),
        mpq_class("2577687858367/6"),
        mpq_class("-26315271553053477373/1919190"),
        mpq_class("2929993913841559/6"),
        mpq_class("-261082718496449122051/13530"),
    };
    return t;
}

// Euler-Maclaurin digamma for real x > 0, independent of any digamma code in
// the library.  Accurate far beyond 1e-40 relative for the working sizes used
// in tests.
inline BigFloat digamma_em(const BigFloat& x0, Precision outer) {
    Precision work(outer.working() + 64, 0);
    BigFloat x = x0.round_to(work);
    if (x.sign() <= 0)
        throw lquot::DomainError("oracle digamma wants x > 0");
    long shift = 0;
    if (x.cmp_si(64) < 0)
        shift = 64 - x.floor().to_long();
    BigFloat debt(work);
    for (long j = 0; j < shift; ++j)
        debt += 1 / (x + j);
    BigFloat w = x + shift;
    BigFloat acc = w.log() - 1 / (w * 2);
    BigFloat w2 = w * w;
    BigFloat p = w2; // w^(2k)
    const auto& B = bernoulli_table();
    for (size_t k = 1; k <= B.size(); ++k) {
        acc -= BigFloat(B[k - 1], work) / (p * static_cast<long>(2 * k));
        p *= w2;
    }
    return (acc - debt).round_to(outer);
}

inline BigFloat euler_gamma_em(Precision outer) {
    return -digamma_em(BigFloat(1, outer), outer);
}

// Apery-style series: zeta(3) = (5/2) sum (-1)^(k-1) / (k^3 C(2k,k)),
// summed exactly over the rationals; alternating, so the error is below the
// first omitted term (~4^-130 at 130 terms).
inline BigFloat zeta3_apery(Precision outer) {
    mpq_class s = 0;
    for (unsigned long k = 1; k <= 130; ++k) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), 2 * k, k);
        mpq_class term(1, 1);
        term /= mpq_class(mpz_class(k) * k * k * binom);
        if (k % 2 == 0)
            term = -term;
        s += term;
    }
    s *= mpq_class(5, 2);
    return BigFloat(s, outer);
}

// Fixed-shift Stirling log Gamma with the literal Bernoulli table; good to
// roughly 2^-160 relative, enough for the 128-bit comparisons in tests.
inline BigComplex log_gamma_stirling(const BigComplex& z0, Precision outer) {
    Precision work(outer.working() + 64, 0);
    BigComplex z = z0.round_to(work);
    long shift = 0;
    if (z.real().cmp_si(64) < 0)
        shift = 64 - z.real().floor().to_long();
    BigComplex debt(work);
    for (long j = 0; j < shift; ++j)
        debt += (z + BigComplex(j, work)).log();
    BigComplex w = z + BigComplex(shift, work);
    BigComplex acc =
        (w - BigComplex(mpq_class(1, 2), work)) * w.log() - w;
    acc += BigComplex((BigFloat::pi(work) * 2).log() / 2);
    BigComplex winv = w.recip();
    BigComplex winv2 = winv * winv;
    BigComplex p = winv;
    const auto& B = bernoulli_table();
    for (size_t k = 1; k <= B.size(); ++k) {
        mpq_class c = B[k - 1] / mpq_class(2 * k * (2 * k - 1));
        acc += p * BigComplex(c, work);
        p *= winv2;
    }
    return (acc - debt).round_to(outer);
}

// Euler-Maclaurin Hurwitz zeta for real s (s != 1), 0 < a <= 1.
inline BigFloat hurwitz_zeta_em(const BigFloat& s0, const mpq_class& a,
                                Precision outer) {
    Precision work(outer.working() + 64, 0);
    BigFloat s = s0.round_to(work);
    const long M = 64;
    BigFloat acc(work);
    for (long n = 0; n < M; ++n)
        acc += (BigFloat(a, work) + n).pow(-s);
    BigFloat w = BigFloat(a, work) + M;
    acc += w.pow(BigFloat(1, work) - s) / (s - 1);
    acc += w.pow(-s) / 2;
    const auto& B = bernoulli_table();
    BigFloat poch = s;            // (s)_(2k-1) at k=1 is s
    mpz_class fact = 2;           // (2k)!
    BigFloat wp = w.pow(-s - 1);  // w^-(s+2k-1)
    for (size_t k = 1; k <= B.size(); ++k) {
        acc += BigFloat(B[k - 1], work) / BigFloat(mpq_class(fact), work) *
               poch * wp;
        poch *= (s + static_cast<long>(2 * k - 1)) *
                (s + static_cast<long>(2 * k));
        fact *= (2 * k + 1) * (2 * k + 2);
        wp = wp / (w * w);
    }
    return acc.round_to(outer);
}

// Dirichlet L(s, chi) for the quadratic character mod 5 via Hurwitz zeta.
inline BigFloat l_chi5_em(const BigFloat& s, Precision outer) {
    static const int chi[5] = {0, 1, -1, -1, 1};
    Precision work(outer.working() + 32, 0);
    BigFloat acc(work);
    for (long r = 1; r <= 4; ++r) {
        BigFloat h = hurwitz_zeta_em(s.round_to(work), mpq_class(r, 5), work);
        acc += h * chi[r];
    }
    return (BigFloat(5, work).pow(-s.round_to(work)) * acc).round_to(outer);
}

// Exact rank of a rational matrix by plain Gaussian elimination with
// pivoting (deliberately not the fraction-free scheme used by the library).
inline int naive_rank(std::vector<std::vector<mpq_class>> m) {
    if (m.empty())
        return 0;
    size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[row]);
        for (size_t r = row + 1; r < rows; ++r) {
            if (m[r][col] == 0)
                continue;
            mpq_class f = m[r][col] / m[row][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] -= f * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// RHS of the polygamma reflection identity:
// psi^(m)(1-z) + (-1)^(m+1) psi^(m)(z) = (-1)^m pi^(m+1) Q_m(cot(pi z)),
// with Q_0(c) = c and Q_(j+1)(c) = -(1 + c^2) Q_j'(c) exactly over Z[c].
inline BigComplex reflection_rhs(long m, const BigComplex& z) {
    std::vector<mpz_class> q = {0, 1}; // Q_0(c) = c
    for (long j = 0; j < m; ++j) {
        std::vector<mpz_class> d(q.size() >= 1 ? q.size() - 1 : 0);
        for (size_t i = 1; i < q.size(); ++i)
            d[i - 1] = q[i] * static_cast<long>(i);
        std::vector<mpz_class> next(d.size() + 2, mpz_class(0));
        for (size_t i = 0; i < d.size(); ++i) {
            next[i] -= d[i];
            next[i + 2] -= d[i];
        }
        q = std::move(next);
    }
    Precision p = z.prec();
    Precision work(p.working(), 0);
    BigComplex zp = z.round_to(work);
    BigComplex pi(BigFloat::pi(work));
    BigComplex piz = zp * pi;
    BigComplex c = piz.cos() / piz.sin();
    BigComplex val(work);
    for (size_t i = q.size(); i-- > 0;)
        val = val * c + BigComplex(mpq_class(q[i]), work);
    BigComplex result = val * pi.pow_si(m + 1);
    if (m % 2 != 0)
        result = -result;
    return result.round_to(p);
}

// Deterministic test point generator.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed = 0x5eedf00dULL) : gen(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen);
    }
    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(gen);
    }
    mpq_class rational(long num_range, long den_max) {
        long den = integer(1, den_max);
        long num = integer(-num_range, num_range);
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    BigFloat real(double lo, double hi, Precision p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", uniform(lo, hi));
        return BigFloat(std::string(buf), p);
    }
    BigComplex complex(double rlo, double rhi, double ilo, double ihi,
                       Precision p) {
        return BigComplex(real(rlo, rhi, p), real(ilo, ihi, p));
    }
};

} // namespace oracles
