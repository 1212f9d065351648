#pragma once

#include "lquot/bigfloat.hpp"

namespace lquot {

// Rectangular complex number over BigFloat.  Both parts always carry the
// same precision tag; binary operations round to the smaller operand
// precision, matching BigFloat semantics.  log/pow use the principal branch.
class BigComplex {
  public:
    explicit BigComplex(Precision p = Precision()) : re_(p), im_(p) {}
    BigComplex(const BigFloat& re) : re_(re), im_(BigFloat(re.prec())) {}
    BigComplex(const BigFloat& re, const BigFloat& im);
    BigComplex(long n, Precision p) : re_(n, p), im_(p) {}
    BigComplex(const mpq_class& q, Precision p) : re_(q, p), im_(p) {}

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    const Precision& prec() const { return re_.prec(); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    BigComplex round_to(Precision p) const {
        return BigComplex(re_.round_to(p), im_.round_to(p));
    }

    BigComplex operator-() const { return BigComplex(-re_, -im_); }
    BigComplex conj() const { return BigComplex(re_, -im_); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
    BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
    BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }
    BigComplex& operator/=(const BigComplex& b) { return *this = *this / b; }

    friend BigComplex operator*(const BigComplex& a, long n) {
        return BigComplex(a.re_ * n, a.im_ * n);
    }
    friend BigComplex operator/(const BigComplex& a, long n) {
        return BigComplex(a.re_ / n, a.im_ / n);
    }
    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    BigFloat abs() const;
    BigFloat arg() const;                    // principal value
    BigComplex recip() const;

    BigComplex exp() const;
    BigComplex log() const;                  // principal branch
    BigComplex sin() const;
    BigComplex cos() const;
    BigComplex sqrt() const;                 // principal branch
    BigComplex pow(const BigComplex& w) const;
    BigComplex pow_si(long e) const;

    // |this - other| <= 2^e, via exact part-wise bounding.
    bool close_to(const BigComplex& other, long e) const;

    std::string str(int sig_digits = 25) const;

  private:
    BigFloat re_, im_;
};

} // namespace lquot
