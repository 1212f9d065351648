#include "lquot/afe.hpp"

#include "lquot/errors.hpp"
#include "lquot/polygamma.hpp"

namespace lquot {

namespace {

const BigFloat& bf_max(const BigFloat& a, const BigFloat& b) { return (a >= b) ? a : b; }

void check_config(const AFEConfig& cfg) {
    if (cfg.cutoff <= 0) throw DomainError("cutoff must be positive");
    if (cfg.terms < 0) throw DomainError("terms cap must be nonnegative");
    if (cfg.step_exp > 0) throw DomainError("difference step must be a negative power of two");
}

BigComplex mul_u(const BigComplex& s, const mpq_class& u) {
    BigComplex r = s;
    long num = mpz_get_si(u.get_num().get_mpz_t());
    long den = mpz_get_si(u.get_den().get_mpz_t());
    if (num != 1) r = r * num;
    if (den != 1) r = r / den;
    return r;
}

// Continued fraction (modified Lentz), valid for x >= max(Re a + 4, 1).
BigComplex igamma_cf(const BigComplex& a, const BigFloat& x, Precision wp) {
    long W = wp.bits;
    BigFloat fpmin = BigFloat::two_pow(-2 * W, wp);
    BigComplex one(1, wp);
    BigComplex b = BigComplex(x) + one - a;
    BigComplex c(BigFloat::two_pow(2 * W, wp));
    BigComplex d = (b.abs() < fpmin) ? BigComplex(fpmin).recip() : b.recip();
    BigComplex h = d;
    long maxit = 10000 + 50 * W;
    for (long i = 1; i <= maxit; ++i) {
        BigComplex an = (a - BigComplex(i, wp)) * i;
        b = b + BigComplex(2, wp);
        d = an * d + b;
        if (d.abs() < fpmin) d = BigComplex(fpmin);
        c = b + an / c;
        if (c.abs() < fpmin) c = BigComplex(fpmin);
        d = d.recip();
        BigComplex del = d * c;
        h = h * del;
        if ((del - one).abs() <= BigFloat::two_pow(-(W - 8), wp)) {
            BigComplex pref = (a * BigComplex(x.log())).exp() * BigComplex((-x).exp());
            return pref * h;
        }
    }
    throw InternalError("incomplete gamma continued fraction did not converge");
}

// Lower-series complement after shifting Re a above 1/2; unwinds with
// Gamma(z, x) = (Gamma(z+1, x) - x^z e^{-x}) / z.
BigComplex igamma_series_shift(const BigComplex& a, const BigFloat& x, Precision wp) {
    long W = wp.bits;
    long t = 0;
    BigFloat half(mpq_class(1, 2), wp);
    if (a.real() < half) t = (half - a.real()).floor().to_long() + 1;
    BigComplex ash = a + BigComplex(t, wp);
    BigComplex xc((x));
    BigComplex term = ash.recip();
    BigComplex sum = term;
    long maxit = 10000 + 50 * W;
    bool done = false;
    for (long k = 1; k <= maxit; ++k) {
        term = term * xc / (ash + BigComplex(k, wp));
        sum += term;
        if (term.abs() <= sum.abs() * BigFloat::two_pow(-(W + 8), wp)) {
            done = true;
            break;
        }
    }
    if (!done) throw InternalError("incomplete gamma series did not converge");
    BigFloat lx = x.log();
    BigComplex emx((-x).exp());
    BigComplex G = gamma(ash) - (ash * BigComplex(lx)).exp() * emx * sum;
    for (long j = t - 1; j >= 0; --j) {
        BigComplex z = a + BigComplex(j, wp);
        G = (G - (z * BigComplex(lx)).exp() * emx) / z;
    }
    return G;
}

// Gamma(-k, x) for integer k >= 0 and small x, through E1 and the downward
// recurrence.
BigComplex igamma_nonpos_integer(long k, const BigFloat& x, Precision wp) {
    long W = wp.bits;
    BigFloat e1 = -BigFloat::euler_gamma(wp) - x.log();
    BigFloat p(1, wp);
    long maxit = 10000 + 50 * W;
    bool done = false;
    for (long j = 1; j <= maxit; ++j) {
        p = p * (-x) / j;
        BigFloat term = p / j;
        e1 -= term;
        if (term.abs_le_2exp(-(W + 24))) {
            done = true;
            break;
        }
    }
    if (!done) throw InternalError("exponential integral series did not converge");
    BigComplex G((e1));
    BigFloat pxe = (-x).exp();
    for (long j = 1; j <= k; ++j) {
        pxe = pxe / x;
        G = (G - BigComplex(pxe)) / (-j);
    }
    return G;
}

} // namespace

BigComplex incomplete_gamma_upper(const BigComplex& a, const BigFloat& x) {
    long W = std::max(a.prec().bits, x.prec().bits) + 32;
    Precision wp(W, 0);
    BigFloat xw = x.round_to(wp);
    if (!(xw > BigFloat(wp))) throw DomainError("incomplete gamma requires x > 0");
    BigComplex aw = a.round_to(wp);
    BigFloat cf_gate = bf_max(aw.real() + 4, BigFloat(1, wp));
    if (xw >= cf_gate) return igamma_cf(aw, xw, wp);
    if (aw.is_real() && aw.real().is_integer() && aw.real().cmp_si(0) <= 0)
        return igamma_nonpos_integer(-aw.real().to_long(), xw, wp);
    return igamma_series_shift(aw, xw, wp);
}

GammaShape gamma_shape(const CoefficientSeries& cs, Precision prec) {
    const FamilyDatum& m = cs.meta;
    long W = prec.working();
    Precision wp(W, 0);
    BigFloat pi = BigFloat::pi(wp);
    BigFloat two_pi = pi * 2;
    GammaShape gs;
    gs.eps = cs.eps.round_to(wp);
    switch (m.family) {
        case Family::AutomorphicGLd:
            if (m.d == 1) {
                gs.u = mpq_class(1, 2);
                gs.mu = m.kappa.at(0).round_to(wp) / 2;
                gs.Q = (BigFloat(m.N, wp) / pi).sqrt();
                gs.c0 = BigFloat(1, wp);
                gs.ktilde = 1;
            } else if (m.d == 2) {
                if (!m.kappa_exact || m.kappa_rat.at(1) - m.kappa_rat.at(0) != 1)
                    throw UnsupportedFamilyError(
                        "GL(2) evaluation requires exact parameters with kappa2 = kappa1 + 1");
                gs.u = 1;
                gs.mu = BigComplex(m.kappa_rat.at(0), wp);
                gs.Q = BigFloat(m.N, wp).sqrt() / two_pi;
                gs.c0 = (BigFloat(1 - m.kappa_rat.at(0), wp) * BigFloat::log2_const(wp)).exp() * pi.sqrt();
                gs.ktilde = 1;
            } else {
                throw UnsupportedFamilyError("GL(d) evaluation supports d <= 2 only");
            }
            break;
        case Family::ModularTwisted:
            if (m.k.get_den() != 1)
                throw UnsupportedFamilyError("half-integer weight evaluation is not supported");
            gs.u = 1;
            gs.mu = BigComplex(wp);
            gs.Q = (BigFloat(m.N, wp) * m.D * m.D).sqrt() / two_pi;
            gs.c0 = BigFloat(1, wp);
            gs.ktilde = m.k;
            break;
        case Family::Hilbert:
            if (m.n != 1)
                throw UnsupportedFamilyError("Hilbert evaluation supports degree 1 only");
            gs.u = 1;
            gs.mu = BigComplex(wp);
            gs.Q = (BigFloat(m.normN, wp) * m.dF * m.dF).sqrt() / two_pi;
            gs.c0 = BigFloat(1, wp);
            gs.ktilde = m.k;
            break;
        case Family::Siegel:
            throw UnsupportedFamilyError("Siegel evaluation is not supported");
    }
    return gs;
}

BigComplex gamma_factor(const GammaShape& gs, const BigComplex& s) {
    BigComplex qs = (s * BigComplex(gs.Q.log())).exp();
    return BigComplex(gs.c0) * qs * gamma(mul_u(s, gs.u) + gs.mu);
}

namespace {

struct Side {
    BigComplex s_eff;  // Dirichlet exponent
    BigComplex a;      // incomplete gamma order
    BigFloat R;        // x_n = (n / R)^{1/u}
    BigFloat pref_abs; // modulus of the side prefactor
};

BigComplex side_sum(const CoefficientSeries& cs, long iu, const Side& sd, long cap,
                    const BigFloat& eps_abs, Precision wp) {
    BigComplex sum(wp);
    BigFloat zero(wp);
    BigFloat one(1, wp);
    BigFloat sigma = sd.s_eff.real();
    BigFloat rea = sd.a.real();
    BigFloat theta(cs.growth_theta, wp);
    BigFloat cbound(cs.growth_c, wp);
    BigFloat valid_gate = bf_max((rea - 1) * 2, zero) + 8;
    BigFloat poly_exp = bf_max(theta - sigma, zero) + bf_max(rea - one, zero) * iu;
    BigFloat target = eps_abs / sd.pref_abs;
    for (long n = 1; n <= cap; ++n) {
        BigFloat xn = (BigFloat(n, wp) / sd.R).pow_si(iu);
        BigFloat ln_n = (n == 1) ? zero : BigFloat(n, wp).log();
        const mpq_class& an = cs.at(n);
        if (an != 0) {
            BigComplex nexp =
                (n == 1) ? BigComplex(1, wp) : (-(sd.s_eff * BigComplex(ln_n))).exp();
            BigComplex g = incomplete_gamma_upper(sd.a, xn).round_to(wp);
            sum += BigComplex(an, wp) * nexp * g;
        }
        if (xn >= valid_gate) {
            BigFloat b = cbound * ((theta - sigma) * ln_n).exp() * 2 *
                         ((rea - one) * xn.log()).exp() * (-xn).exp();
            BigFloat xn1 = (BigFloat(n + 1, wp) / sd.R).pow_si(iu);
            BigFloat rho = (poly_exp * (BigFloat(n + 1, wp).log() - ln_n) - (xn1 - xn)).exp();
            if (rho < one && b * rho / (one - rho) <= target) return sum;
        }
    }
    throw TruncationError("coefficient range insufficient for the requested precision");
}

BigComplex dirichlet_sum(const CoefficientSeries& cs, const BigComplex& s, long cap, Precision wp) {
    BigComplex sum(wp);
    for (long n = 1; n <= cap; ++n) {
        const mpq_class& an = cs.at(n);
        if (an == 0) continue;
        BigComplex t = (n == 1) ? BigComplex(1, wp)
                                : (-(s * BigComplex(BigFloat(n, wp).log()))).exp();
        sum += BigComplex(an, wp) * t;
    }
    return sum;
}

long term_cap(const CoefficientSeries& cs, const AFEConfig& cfg) {
    long cap = cs.nmax();
    if (cfg.terms > 0 && cfg.terms < cap) cap = cfg.terms;
    return cap;
}

BigComplex afe_lambda(const CoefficientSeries& cs, const GammaShape& gs, const BigComplex& s,
                      const AFEConfig& cfg, Precision wp) {
    if (!cs.self_dual) throw UnsupportedFamilyError("self-dual coefficient data required");
    long W = wp.bits;
    long iu = (gs.u == 1) ? 1 : 2;
    BigFloat X(cfg.cutoff, wp);
    BigComplex s2 = BigComplex(gs.ktilde, wp) - s;
    BigFloat lq = gs.Q.log();
    Side d1{s, mul_u(s, gs.u) + gs.mu, gs.Q * X, BigFloat(wp)};
    Side d2{s2, mul_u(s2, gs.u) + gs.mu, gs.Q / X, BigFloat(wp)};
    BigComplex pref1 = BigComplex(gs.c0) * (s * BigComplex(lq)).exp();
    BigComplex pref2 = gs.eps * BigComplex(gs.c0) * (s2 * BigComplex(lq)).exp();
    d1.pref_abs = bf_max(pref1.abs(), BigFloat::two_pow(-W, wp));
    d2.pref_abs = bf_max(pref2.abs(), BigFloat::two_pow(-W, wp));
    BigFloat eps_abs = BigFloat::two_pow(-(cfg.prec.bits + 16), wp);
    long cap = term_cap(cs, cfg);
    BigComplex s1v = side_sum(cs, iu, d1, cap, eps_abs, wp);
    BigComplex s2v = side_sum(cs, iu, d2, cap, eps_abs, wp);
    return pref1 * s1v + pref2 * s2v;
}

} // namespace

BigComplex complete_l(const CoefficientSeries& cs, const BigComplex& s, const AFEConfig& cfg) {
    cs.validate();
    check_config(cfg);
    Precision wp(cfg.prec.working() + 32, 0);
    GammaShape gs = gamma_shape(cs, wp);
    BigComplex sw = s.round_to(wp);
    if (cs.entire_polynomial)
        return (gamma_factor(gs, sw) * dirichlet_sum(cs, sw, term_cap(cs, cfg), wp))
            .round_to(cfg.prec);
    BigFloat sigma = sw.real();
    BigFloat theta(cs.growth_theta, wp);
    if (sigma >= theta + 2) {
        // direct summation when its tail certifies; otherwise the smoothed
        // sum below takes over (and reports its own truncation failures)
        long cap = term_cap(cs, cfg);
        BigFloat tail = BigFloat(cs.growth_c, wp) *
                        ((theta + 1 - sigma) * BigFloat(cap, wp).log()).exp() /
                        (sigma - theta - 1);
        if (tail <= BigFloat::two_pow(-(cfg.prec.bits / 2), wp))
            return (gamma_factor(gs, sw) * dirichlet_sum(cs, sw, cap, wp)).round_to(cfg.prec);
    }
    return afe_lambda(cs, gs, sw, cfg, wp).round_to(cfg.prec);
}

BigComplex afe_l(const CoefficientSeries& cs, const BigComplex& s, const AFEConfig& cfg) {
    cs.validate();
    check_config(cfg);
    Precision wp(cfg.prec.working() + 32, 0);
    BigComplex sw = s.round_to(wp);
    if (cs.entire_polynomial)
        return dirichlet_sum(cs, sw, term_cap(cs, cfg), wp).round_to(cfg.prec);
    GammaShape gs = gamma_shape(cs, wp);
    return (afe_lambda(cs, gs, sw, cfg, wp) / gamma_factor(gs, sw)).round_to(cfg.prec);
}

BigComplex log_derivative(const CoefficientSeries& cs, const BigComplex& s, long order,
                          const AFEConfig& cfg) {
    if (order < 1) throw DomainError("derivative order must be at least 1");
    cs.validate();
    check_config(cfg);
    long b = cfg.prec.bits;
    AFEConfig inner = cfg;
    inner.prec = Precision(b + b / 2 + 64, 32);
    Precision wf(inner.prec.working() + 32, 0);
    BigComplex sw = s.round_to(wf);
    bool poly = cs.entire_polynomial;
    GammaShape gs;
    if (!poly) gs = gamma_shape(cs, wf);
    auto eval_l = [&](const BigComplex& z) -> BigComplex {
        if (poly) return dirichlet_sum(cs, z, term_cap(cs, inner), wf);
        return afe_lambda(cs, gs, z, inner, wf) / gamma_factor(gs, z);
    };
    BigComplex l0 = eval_l(sw);
    BigFloat floor_l = BigFloat::two_pow(-(b / 4), wf);
    if (l0.abs() < floor_l) throw ZeroValueError("L too close to zero for a stable quotient");
    long hexp = (cfg.step_exp < 0) ? cfg.step_exp : -(b / (2 * order + 2)) - 1;
    auto stencil = [&](long he) -> BigComplex {
        BigFloat h_half = BigFloat::two_pow(he - 1, wf);
        BigComplex acc(wf);
        for (long i = 0; i <= order; ++i) {
            long off = order - 2 * i;
            if (off == 0) continue;
            mpz_class bin;
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(order),
                         static_cast<unsigned long>(i));
            if (i % 2) bin = -bin;
            BigComplex li = eval_l(sw + BigComplex(h_half * off));
            if (li.abs() < floor_l)
                throw ZeroValueError("stencil point too close to a zero of L");
            acc += BigComplex(mpq_class(bin), wf) * (li / l0).log();
        }
        return acc * BigComplex(BigFloat::two_pow(-he * order, wf));
    };
    BigComplex dh = stencil(hexp);
    BigComplex dh2 = stencil(hexp - 1);
    return ((dh2 * 4 - dh) / 3).round_to(cfg.prec);
}

IdentityReport verify_identity(const CoefficientSeries& cs, const CriticalPoint& s0, long m,
                               const AFEConfig& cfg, long tol_exp) {
    if (m < 0) throw DomainError("derivative index must be nonnegative");
    cs.validate();
    check_config(cfg);
    Precision wp(cfg.prec.working(), 0);
    GammaShape gs = gamma_shape(cs, wp);
    if (!cs.self_dual) throw UnsupportedFamilyError("self-dual coefficient data required");
    BigComplex s0n = s0.numeric(wp);
    BigComplex s1n = BigComplex(gs.ktilde, wp) - s0n;
    BigComplex a = log_derivative(cs, s0n, m + 1, cfg);
    BigComplex b = log_derivative(cs, s1n, m + 1, cfg);
    IdentityReport rep;
    rep.m = m;
    rep.lhs = (m % 2 == 0) ? a + b : a - b;
    rep.rhs = (m == 0) ? closed_form_sum(cs.meta, s0, cfg.prec)
                       : closed_form_higher(cs.meta, s0, m, cfg.prec);
    rep.residual = (rep.lhs - rep.rhs).abs();
    long te = (tol_exp == std::numeric_limits<long>::min()) ? -(cfg.prec.bits / 8) : tol_exp;
    rep.tolerance = BigFloat::two_pow(te, Precision(64, 0));
    rep.pass = rep.residual <= rep.tolerance;
    return rep;
}

} // namespace lquot
