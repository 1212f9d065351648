#include "lquot/bigfloat.hpp"

#include <cstdio>
#include <vector>

#include "lquot/errors.hpp"

namespace lquot {

namespace {

// Result of a binary op carries the smaller operand precision.
Precision result_prec(const BigFloat& a, const BigFloat& b) {
    return min_precision(a.prec(), b.prec());
}

// Completed L-values grow like Gamma of the argument; run mpfr at its full
// exponent range instead of the conservative default.
const bool exponent_range_widened = [] {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    return true;
}();

} // namespace

BigFloat::BigFloat(const std::string& s, Precision p) : prec_(p) {
    mpfr_init2(v_, p.bits);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw DomainError("unparseable numeric literal: " + s);
    }
    check();
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_swap(v_, o.v_);
    }
    return *this;
}

void BigFloat::check() const {
    if (mpfr_nan_p(v_))
        throw InternalError("NaN produced in arbitrary-precision arithmetic");
    if (mpfr_inf_p(v_))
        throw InternalError("infinity produced in arbitrary-precision arithmetic");
}

BigFloat BigFloat::round_to(Precision p) const {
    BigFloat r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    r.check();
    return r;
}

long BigFloat::exponent() const {
    if (is_zero())
        throw DomainError("exponent of zero requested");
    return static_cast<long>(mpfr_get_exp(v_));
}

BigFloat BigFloat::operator-() const {
    BigFloat r(prec_);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define LQUOT_BINOP(OP, FN)                                        \
    BigFloat operator OP(const BigFloat& a, const BigFloat& b) {   \
        BigFloat r(result_prec(a, b));                             \
        FN(r.v_, a.v_, b.v_, MPFR_RNDN);                           \
        r.check();                                                 \
        return r;                                                  \
    }

LQUOT_BINOP(+, mpfr_add)
LQUOT_BINOP(-, mpfr_sub)
LQUOT_BINOP(*, mpfr_mul)
#undef LQUOT_BINOP

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero())
        throw DomainError("division by zero");
    BigFloat r(result_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat operator+(const BigFloat& a, long b) {
    BigFloat r(a.prec_);
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat operator-(const BigFloat& a, long b) {
    BigFloat r(a.prec_);
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat operator*(const BigFloat& a, long b) {
    BigFloat r(a.prec_);
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat operator/(const BigFloat& a, long b) {
    if (b == 0)
        throw DomainError("division by zero");
    BigFloat r(a.prec_);
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat operator/(long a, const BigFloat& b) {
    if (b.is_zero())
        throw DomainError("division by zero");
    BigFloat r(b.prec_);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    r.check();
    return r;
}

#define LQUOT_UNFN(NAME, FN)                \
    BigFloat BigFloat::NAME() const {       \
        BigFloat r(prec_);                  \
        FN(r.v_, v_, MPFR_RNDN);            \
        r.check();                          \
        return r;                           \
    }

LQUOT_UNFN(abs, mpfr_abs)
LQUOT_UNFN(exp, mpfr_exp)
LQUOT_UNFN(sin, mpfr_sin)
LQUOT_UNFN(cos, mpfr_cos)
LQUOT_UNFN(sinh, mpfr_sinh)
LQUOT_UNFN(cosh, mpfr_cosh)
LQUOT_UNFN(atan, mpfr_atan)
#undef LQUOT_UNFN

BigFloat BigFloat::sqrt() const {
    if (sign() < 0)
        throw DomainError("sqrt of negative real");
    BigFloat r(prec_);
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat BigFloat::log() const {
    if (sign() <= 0)
        throw DomainError("log of non-positive real");
    BigFloat r(prec_);
    mpfr_log(r.v_, v_, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat BigFloat::pow_si(long e) const {
    BigFloat r(prec_);
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat BigFloat::pow(const BigFloat& e) const {
    if (sign() < 0 || (is_zero() && e.sign() <= 0))
        throw DomainError("real power needs a positive base");
    BigFloat r(result_prec(*this, e));
    mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
    r.check();
    return r;
}

BigFloat BigFloat::floor() const {
    BigFloat r(prec_);
    mpfr_floor(r.v_, v_);
    return r;
}

bool BigFloat::abs_le_2exp(long e) const {
    if (is_zero())
        return true;
    mpfr_t bound;
    mpfr_init2(bound, 8);
    mpfr_set_ui_2exp(bound, 1, e, MPFR_RNDN);
    int c = mpfr_cmpabs(v_, bound);
    mpfr_clear(bound);
    return c <= 0;
}

BigFloat BigFloat::two_pow(long e, Precision p) {
    BigFloat r(p);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(Precision p) {
    BigFloat r(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::euler_gamma(Precision p) {
    BigFloat r(p);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::log2_const(Precision p) {
    BigFloat r(p);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::zeta_ui(unsigned long n, Precision p) {
    BigFloat r(p);
    mpfr_zeta_ui(r.v_, n, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(result_prec(y, x));
    mpfr_atan2(r.raw(), y.v_, x.v_, MPFR_RNDN);
    r.check();
    return r;
}

long BigFloat::to_long() const {
    if (!is_integer() || !mpfr_fits_slong_p(v_, MPFR_RNDN))
        throw DomainError("value is not a representable machine integer");
    return mpfr_get_si(v_, MPFR_RNDN);
}

mpz_class BigFloat::to_mpz_floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), BigFloat(*this).floor().v_, MPFR_RNDN);
    return z;
}

std::string BigFloat::str(int sig_digits) const {
    if (sig_digits < 2)
        sig_digits = 2;
    std::vector<char> buf(static_cast<size_t>(sig_digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", sig_digits, v_);
    return std::string(buf.data());
}

} // namespace lquot
