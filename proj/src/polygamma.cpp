#include "lquot/polygamma.hpp"

#include <mutex>
#include <vector>

namespace lquot {

namespace {

std::mutex bernoulli_mutex;
std::vector<mpq_class> bernoulli_cache; // B_0, B_1, ...

// Extend the cache through index n using the defining recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0  (m >= 1), exact over the rationals.
void extend_bernoulli(unsigned long n) {
    if (bernoulli_cache.empty()) {
        bernoulli_cache.emplace_back(1);                 // B_0
        bernoulli_cache.emplace_back(mpq_class(-1, 2));  // B_1
    }
    while (bernoulli_cache.size() <= n) {
        unsigned long m = bernoulli_cache.size(); // computing B_m
        if (m % 2 == 1) {
            bernoulli_cache.emplace_back(0);
            continue;
        }
        mpq_class acc = 0;
        mpz_class binom = 1; // C(m+1, 0)
        for (unsigned long j = 0; j < m; ++j) {
            acc += mpq_class(binom) * bernoulli_cache[j];
            // C(m+1, j+1) from C(m+1, j)
            binom *= static_cast<unsigned long>(m + 1 - j);
            binom /= static_cast<unsigned long>(j + 1);
        }
        mpq_class b = -acc / mpq_class(binom);
        b.canonicalize();
        bernoulli_cache.push_back(b);
    }
}

// Shift bound: beyond it the Stirling-type series reaches the working
// precision before its divergent tail takes over.
long shift_threshold(long working_bits, long order) {
    long r = working_bits * 2 / 5; // 0.4 * bits
    if (r < 16)
        r = 16;
    return r + 2 * order + 4;
}

struct Shifted {
    BigComplex z;   // z + t, in the asymptotic region
    long t;
};

Shifted shift_up(const BigComplex& z, long working_bits, long order) {
    long r0 = shift_threshold(working_bits, order);
    long t = 0;
    if (z.real().cmp_si(r0) < 0) {
        BigFloat gap = BigFloat(r0, z.prec()) - z.real();
        if (gap.cmp_si(10'000'000) > 0)
            throw DomainError("argument too far left of the evaluation region");
        t = gap.floor().to_long() + 1;
    }
    return {z + BigComplex(t, z.prec()), t};
}

// True once |term| is below 2^(target_exp); target_exp is absolute.
bool small_enough(const BigComplex& term, long target_exp) {
    return term.abs().abs_le_2exp(target_exp);
}

} // namespace

const mpq_class& bernoulli(unsigned long n) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    extend_bernoulli(n);
    return bernoulli_cache[n];
}

void require_off_poles(const BigComplex& z) {
    Precision p = z.prec();
    // Nearest candidate pole is round(Re z) clamped to Z_{<=0}.
    BigFloat half(mpq_class(1, 2), p);
    if (z.real() > half)
        return;
    BigFloat nearest = (z.real() + half).floor();
    mpz_class n = nearest.sign() > 0 ? mpz_class(0) : nearest.to_mpz_floor();
    BigComplex pole(BigFloat(n, p));
    if ((z - pole).abs().abs_le_2exp(-(p.bits / 2)))
        throw PoleError("argument within pole tolerance of " + n.get_str());
}

BigComplex log_gamma(const BigComplex& z) {
    require_off_poles(z);
    Precision outer = z.prec();
    Precision work(outer.working(), 0);
    BigComplex zw = z.round_to(work);

    auto [w, t] = shift_up(zw, work.bits, 0);
    BigComplex debt(work);
    for (long j = 0; j < t; ++j)
        debt += (zw + BigComplex(j, work)).log();

    // log Gamma(w) = (w - 1/2) log w - w + log(2 pi)/2 + sum B_2n / ((2n)(2n-1) w^(2n-1))
    BigComplex logw = w.log();
    BigComplex acc = (w - BigComplex(mpq_class(1, 2), work)) * logw - w;
    BigFloat two_pi = BigFloat::pi(work) * 2;
    acc += BigComplex(two_pi.log() / 2);

    long target = acc.abs().exponent() - work.bits - 8;
    BigComplex winv = w.recip();
    BigComplex winv2 = winv * winv;
    BigComplex p = winv; // w^{-(2n-1)}
    for (unsigned long n = 1;; ++n) {
        mpq_class c = bernoulli(2 * n) / mpq_class(2 * n * (2 * n - 1));
        BigComplex term = p * BigComplex(c, work);
        acc += term;
        if (small_enough(term, target))
            break;
        if (n > static_cast<unsigned long>(work.bits)) // defensive: never hit
            throw InternalError("log gamma series failed to converge");
        p *= winv2;
    }
    return (acc - debt).round_to(outer);
}

BigComplex gamma(const BigComplex& z) {
    return log_gamma(z).exp().round_to(z.prec());
}

BigComplex digamma(const BigComplex& z) {
    require_off_poles(z);
    Precision outer = z.prec();
    Precision work(outer.working(), 0);
    BigComplex zw = z.round_to(work);

    auto [w, t] = shift_up(zw, work.bits, 0);
    BigComplex debt(work);
    for (long j = 0; j < t; ++j)
        debt += (zw + BigComplex(j, work)).recip();

    // psi(w) = log w - 1/(2w) - sum B_2n / (2n w^(2n))
    BigComplex logw = w.log();
    BigComplex winv = w.recip();
    BigComplex acc = logw - winv / 2;
    long target = acc.abs().exponent() - work.bits - 8;
    BigComplex winv2 = winv * winv;
    BigComplex p = winv2; // w^{-2n}
    for (unsigned long n = 1;; ++n) {
        BigComplex term = p * BigComplex(bernoulli(2 * n) / mpq_class(2 * n), work);
        acc -= term;
        if (small_enough(term, target))
            break;
        if (n > static_cast<unsigned long>(work.bits))
            throw InternalError("digamma series failed to converge");
        p *= winv2;
    }
    return (acc - debt).round_to(outer);
}

BigComplex polygamma(PolygammaOrder order, const BigComplex& z) {
    long m = order.m;
    if (m == 0)
        return digamma(z);
    require_off_poles(z);
    Precision outer = z.prec();
    Precision work(outer.working(), 0);
    BigComplex zw = z.round_to(work);

    auto [w, t] = shift_up(zw, work.bits, m);

    // Recurrence debt: psi^(m)(z) = psi^(m)(z+t) - (-1)^m m! sum (z+j)^(-m-1)
    mpz_class mfact;
    mpz_fac_ui(mfact.get_mpz_t(), static_cast<unsigned long>(m));
    mpz_class signed_mfact = (m % 2 == 0) ? mfact : mpz_class(-mfact);
    BigComplex debt(work);
    for (long j = 0; j < t; ++j)
        debt += (zw + BigComplex(j, work)).pow_si(-(m + 1));
    debt *= BigComplex(mpq_class(signed_mfact), work);

    // psi^(m)(w) = (-1)^(m-1) [ (m-1)! w^-m + (m!/2) w^-(m+1)
    //                           + sum B_2n (2n+m-1)!/(2n)! w^-(2n+m) ]
    mpz_class mm1fact;
    mpz_fac_ui(mm1fact.get_mpz_t(), static_cast<unsigned long>(m - 1));
    BigComplex winv = w.recip();
    BigComplex wm = winv.pow_si(m);
    BigComplex acc = wm * BigComplex(mpq_class(mm1fact), work) +
                     wm * winv * BigComplex(mpq_class(mfact) / 2, work);
    long target = acc.abs().exponent() - work.bits - 8;
    BigComplex winv2 = winv * winv;
    BigComplex p = wm * winv2; // w^-(2n+m)
    mpz_class rising = mfact;  // (2n+m-1)!/(2n)! at n=1 is (m+1)!/2
    rising *= m + 1;
    mpz_class denom = 2;
    for (unsigned long n = 1;; ++n) {
        mpq_class c = bernoulli(2 * n) * mpq_class(rising) / mpq_class(denom);
        c.canonicalize();
        BigComplex term = p * BigComplex(c, work);
        acc += term;
        if (small_enough(term, target))
            break;
        if (n > static_cast<unsigned long>(work.bits))
            throw InternalError("polygamma series failed to converge");
        p *= winv2;
        // (2n+m-1)!/(2n)! -> (2n+m+1)!/(2n+2)!
        rising *= (2 * n + m) * (2 * n + m + 1);
        denom *= (2 * n + 1) * (2 * n + 2);
    }
    if (m % 2 == 0)
        acc = -acc;
    return (acc - debt).round_to(outer);
}

BigComplex euler_gamma(Precision p) {
    return BigComplex(BigFloat::euler_gamma(p));
}

BigComplex pi_const(Precision p) {
    return BigComplex(BigFloat::pi(p));
}

BigComplex log_const(long n, Precision p) {
    if (n < 1)
        throw DomainError("log_const requires a positive integer");
    Precision work(p.working(), 0);
    return BigComplex(BigFloat(n, work).log().round_to(p));
}

} // namespace lquot
