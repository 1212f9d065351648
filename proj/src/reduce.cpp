#include "lquot/reduce.hpp"

#include <numeric>

namespace lquot {

namespace {

// mpq power with negative exponent support (base != 0).
mpq_class mpq_pow(const mpq_class& base, long e) {
    if (base == 0)
        throw DomainError("zero base in exact power");
    mpz_class num = base.get_num(), den = base.get_den();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
    mpq_class r = e < 0 ? mpq_class(pd) / mpq_class(pn)
                        : mpq_class(pn) / mpq_class(pd);
    r.canonicalize();
    return r;
}

mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// psi^(m) on the window argument a/q with 0 < a <= q, gcd(a,q) = 1
// (a = q = 1 encodes the argument 1).
ConstExpr canon_window(long m, long a, long q) {
    if (q == 1) {
        if (m == 0)
            return ConstExpr::term(ConstSymbol::euler_gamma(), -1);
        if (m % 2 == 0)
            return ConstExpr::term(ConstSymbol::zeta_odd(m + 1),
                                   mpq_class(-factorial(m)));
        return ConstExpr::term(ConstSymbol::psi_rat(m, 1, 1), 1);
    }
    if (q == 2) {
        if (m == 0) {
            ConstExpr e = ConstExpr::term(ConstSymbol::euler_gamma(), -1);
            e.add(ConstSymbol::log_prime(2), -2);
            return e;
        }
        mpz_class mult = (mpz_class(1) << (m + 1)) - 1;
        return canon_window(m, 1, 1) * mpq_class(mult);
    }
    if (q % 4 == 2) {
        // Duplication: psi^(m)(x) = 2^(m+1) psi^(m)(2x) - psi^(m)(x + 1/2),
        // with an extra -2 log 2 at the digamma level.  Both children have
        // odd denominator, so this never reenters.
        mpq_class x(a, q);
        ConstExpr e = canonical_psi(m, mpq_class(2) * x) *
                      mpq_class(mpz_class(1) << (m + 1));
        e -= canonical_psi(m, x + mpq_class(1, 2));
        if (m == 0)
            e.add(ConstSymbol::log_prime(2), -2);
        return e;
    }
    if (q == 4 && a == 3 && m == 0) {
        ConstExpr e = ConstExpr::term(ConstSymbol::psi_rat(0, 1, 4), 1);
        e.add(ConstSymbol::pi(), 1);
        return e;
    }
    if (m == 0 && 2 * a > q) {
        // Pair rewrite keeps the canonical digamma representative below 1/2:
        // psi(a/q) = [psi((q-a)/q) + psi(a/q)] - psi((q-a)/q).
        ConstExpr e = ConstExpr::term(ConstSymbol::psi_pair(q - a, q), 1);
        return e - canon_window(0, q - a, q);
    }
    return ConstExpr::term(ConstSymbol::psi_rat(m, a, q), 1);
}

} // namespace

ConstExpr canonical_psi(long m, const mpq_class& x_in) {
    if (m < 0)
        throw DomainError("negative polygamma order");
    mpq_class x = x_in;
    x.canonicalize();
    if (x.get_den() == 1 && x.get_num() <= 0)
        throw DomainError("psi^(m) evaluated at a non-positive integer");

    // Integer part of the recurrence: land on x0 in (0,1].
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    if (!mpz_fits_slong_p(fl.get_mpz_t()) || mpz_cmpabs_ui(fl.get_mpz_t(), 10'000'000) > 0)
        throw DomainError("argument too large to reduce exactly");
    long t;
    mpq_class x0;
    if (x.get_den() == 1) {
        x0 = 1;
        t = mpz_get_si(fl.get_mpz_t()) - 1;
    } else {
        x0 = x - mpq_class(fl);
        t = mpz_get_si(fl.get_mpz_t());
    }

    // psi^(m)(x0 + t) = psi^(m)(x0) + (-1)^m m! * S with
    // S = sum_{j=0}^{t-1} (x0+j)^-(m+1) for t >= 0, and the negated mirrored
    // sum when t < 0.
    mpq_class s = 0;
    if (t >= 0) {
        for (long j = 0; j < t; ++j)
            s += mpq_pow(x0 + j, -(m + 1));
    } else {
        for (long j = t; j < 0; ++j)
            s -= mpq_pow(x0 + j, -(m + 1));
    }
    mpq_class debt = mpq_class(factorial(m)) * s;
    if (m % 2 != 0)
        debt = -debt;

    long a = static_cast<long>(x0.get_num().get_si());
    long q = static_cast<long>(x0.get_den().get_si());
    ConstExpr e = canon_window(m, a, q);
    e.add(ConstSymbol::one(), debt);
    return e;
}

ConstExpr reduce_polygamma(long m, long a, long q, long shift) {
    if (a <= 0 || a >= q || std::gcd(a, q) != 1)
        throw DomainError("reduce_polygamma wants 0 < a < q in lowest terms");
    if (shift < 0)
        throw DomainError("reduce_polygamma wants a non-negative shift");
    return canonical_psi(m, mpq_class(a, q) + shift);
}

mpq_class r_rational(long k, long a, long q) {
    if (k < 1 || a <= 0 || a >= q || std::gcd(a, q) != 1)
        throw DomainError("r_rational wants k >= 1 and 0 < a < q reduced");
    mpq_class s = 0;
    for (long j = 1; j < k; ++j)
        s += mpq_class(q, j * q - a);
    s.canonicalize();
    return s;
}

ConstExpr psik2_expand(long m, const mpq_class& k, long beta) {
    if (m < 1)
        throw DomainError("psik2 expansion wants m >= 1");
    if (beta < 1 || beta > 4)
        throw DomainError("beta must lie in 1..4");
    mpq_class two_k = 2 * k;
    if (two_k.get_den() != 1)
        throw DomainError("weight must be integral or half-integral");
    if (k < mpq_class(1, 2))
        throw DomainError("weight must be at least 1/2");
    mpz_class delta = two_k.get_num() - beta;
    if (delta % 4 != 0)
        throw DomainError("2k and beta disagree modulo 4");
    long t = static_cast<long>(mpz_class(delta / 4).get_si());

    mpq_class base(beta, 4);
    base.canonicalize();
    mpq_class s = 0;
    for (long j = 0; j < t; ++j)
        s += mpq_pow(base + j, -(2 * m + 1));
    mpq_class rational = mpq_class(factorial(2 * m)) * s;

    ConstExpr e = canonical_psi(2 * m, base);
    e.add(ConstSymbol::one(), rational);
    return e;
}

std::vector<std::pair<long, int>> factorize(long n) {
    if (n < 1)
        throw DomainError("factorization wants n >= 1");
    std::vector<std::pair<long, int>> fs;
    long rem = n;
    for (long p = 2; p <= rem / p; p += (p == 2 ? 1 : 2)) {
        if (rem % p)
            continue;
        int e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        fs.emplace_back(p, e);
    }
    if (rem > 1)
        fs.emplace_back(rem, 1);
    return fs;
}

ConstExpr log_n_expand(long n) {
    ConstExpr e;
    for (auto [p, k] : factorize(n))
        e.add(ConstSymbol::log_prime(p), k);
    return e;
}

bool property_a_check(const IntegerSet& s) {
    for (long n : s.elems)
        if (n == 0)
            throw DomainError("property A is degenerate on 0");
    for (long n : s.elems) {
        bool owns_private_prime = false;
        for (auto [p, e] : factorize(n)) {
            bool shared = false;
            for (long m : s.elems)
                if (m != n && m % p == 0) {
                    shared = true;
                    break;
                }
            if (!shared) {
                owns_private_prime = true;
                break;
            }
        }
        if (!owns_private_prime)
            return false;
    }
    return true;
}

} // namespace lquot
