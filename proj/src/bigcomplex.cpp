#include "lquot/bigcomplex.hpp"

#include "lquot/errors.hpp"

namespace lquot {

BigComplex::BigComplex(const BigFloat& re, const BigFloat& im)
    : re_(re), im_(im) {
    Precision p = min_precision(re.prec(), im.prec());
    re_ = re_.round_to(p);
    im_ = im_.round_to(p);
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_,
                      a.re_ * b.im_ + a.im_ * b.re_);
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.is_zero())
        throw DomainError("complex division by zero");
    BigFloat den = b.re_ * b.re_ + b.im_ * b.im_;
    return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / den,
                      (a.im_ * b.re_ - a.re_ * b.im_) / den);
}

BigFloat BigComplex::abs() const {
    BigFloat r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
}

BigFloat BigComplex::arg() const {
    if (is_zero())
        throw DomainError("argument of zero requested");
    return BigFloat::atan2(im_, re_);
}

BigComplex BigComplex::recip() const {
    return BigComplex(1, prec()) / *this;
}

BigComplex BigComplex::exp() const {
    BigFloat m = re_.exp();
    if (im_.is_zero())
        return BigComplex(m);
    return BigComplex(m * im_.cos(), m * im_.sin());
}

BigComplex BigComplex::log() const {
    if (is_zero())
        throw DomainError("log of zero");
    if (im_.is_zero() && re_.sign() > 0)
        return BigComplex(re_.log());
    return BigComplex(abs().log(), arg());
}

BigComplex BigComplex::sin() const {
    if (im_.is_zero())
        return BigComplex(re_.sin());
    return BigComplex(re_.sin() * im_.cosh(), re_.cos() * im_.sinh());
}

BigComplex BigComplex::cos() const {
    if (im_.is_zero())
        return BigComplex(re_.cos());
    return BigComplex(re_.cos() * im_.cosh(), -(re_.sin() * im_.sinh()));
}

BigComplex BigComplex::sqrt() const {
    if (im_.is_zero() && re_.sign() >= 0)
        return BigComplex(re_.sqrt());
    return (log() / 2).exp();
}

BigComplex BigComplex::pow(const BigComplex& w) const {
    if (is_zero()) {
        if (w.is_zero())
            return BigComplex(1, prec());
        if (w.re_.sign() > 0)
            return BigComplex(prec());
        throw DomainError("zero raised to non-positive power");
    }
    return (log() * w).exp();
}

BigComplex BigComplex::pow_si(long e) const {
    Precision p = prec();
    if (e == 0)
        return BigComplex(1, p);
    if (is_zero()) {
        if (e > 0)
            return BigComplex(p);
        throw DomainError("zero raised to negative power");
    }
    bool invert = e < 0;
    unsigned long k = invert ? 0UL - static_cast<unsigned long>(e)
                             : static_cast<unsigned long>(e);
    BigComplex base = *this, acc(1, p);
    while (k) {
        if (k & 1)
            acc *= base;
        base *= base;
        k >>= 1;
    }
    return invert ? acc.recip() : acc;
}

bool BigComplex::close_to(const BigComplex& other, long e) const {
    return (*this - other).abs().abs_le_2exp(e);
}

std::string BigComplex::str(int sig_digits) const {
    if (im_.is_zero())
        return re_.str(sig_digits);
    std::string s = re_.str(sig_digits);
    s += im_.is_negative() ? " - " : " + ";
    s += im_.abs().str(sig_digits);
    s += "i";
    return s;
}

} // namespace lquot
