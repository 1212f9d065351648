#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "lquot/precision.hpp"

namespace lquot {

// Arbitrary-precision real, correctly rounded to its tagged precision.
// Mixed-precision arithmetic rounds to the smaller operand's precision.
// Operations never let NaN or infinities escape: they throw instead.
class BigFloat {
  public:
    explicit BigFloat(Precision p = Precision()) : prec_(p) {
        mpfr_init2(v_, p.bits);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long n, Precision p) : prec_(p) {
        mpfr_init2(v_, p.bits);
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    BigFloat(const mpq_class& q, Precision p) : prec_(p) {
        mpfr_init2(v_, p.bits);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const mpz_class& z, Precision p) : prec_(p) {
        mpfr_init2(v_, p.bits);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    // Decimal string, e.g. "5.7" or "1e-12"; exact binary values stay exact.
    BigFloat(const std::string& s, Precision p);

    BigFloat(const BigFloat& o) : prec_(o.prec_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat() { mpfr_clear(v_); }

    const Precision& prec() const { return prec_; }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    // Re-round into a new precision tag.
    BigFloat round_to(Precision p) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_signbit(v_) && !is_zero(); }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Exponent e with 2^(e-1) <= |x| < 2^e (throws on zero).
    long exponent() const;

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
    BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
    BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
    BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

    friend BigFloat operator+(const BigFloat& a, long b);
    friend BigFloat operator-(const BigFloat& a, long b);
    friend BigFloat operator*(const BigFloat& a, long b);
    friend BigFloat operator/(const BigFloat& a, long b);
    friend BigFloat operator/(long a, const BigFloat& b);
    friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }

    friend int cmp(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_);
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) != 0; }
    int cmp_si(long n) const { return mpfr_cmp_si(v_, n); }

    BigFloat abs() const;
    BigFloat sqrt() const;
    BigFloat exp() const;
    BigFloat log() const;     // DomainError unless argument > 0
    BigFloat sin() const;
    BigFloat cos() const;
    BigFloat sinh() const;
    BigFloat cosh() const;
    BigFloat atan() const;
    BigFloat pow_si(long e) const;
    // Real power, base must be positive (or zero with e > 0).
    BigFloat pow(const BigFloat& e) const;
    BigFloat floor() const;

    // |this| <= 2^e, exact comparison.
    bool abs_le_2exp(long e) const;

    static BigFloat two_pow(long e, Precision p);
    static BigFloat pi(Precision p);
    static BigFloat euler_gamma(Precision p);
    static BigFloat log2_const(Precision p);
    // zeta(n) for integer n >= 2.
    static BigFloat zeta_ui(unsigned long n, Precision p);
    // atan2(y, x), principal value in (-pi, pi].
    static BigFloat atan2(const BigFloat& y, const BigFloat& x);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const;         // throws unless integral and in range
    mpz_class to_mpz_floor() const;

    // Shortest-faithful decimal with the requested significant digits.
    std::string str(int sig_digits = 25) const;

  private:
    void check() const;           // throws on NaN / infinity

    Precision prec_;
    mpfr_t v_;
};

} // namespace lquot
