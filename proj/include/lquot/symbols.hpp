#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "lquot/bigcomplex.hpp"
#include "lquot/errors.hpp"

namespace lquot {

// Canonical basis of the transcendental constants appearing in the closed
// forms: 1, gamma, pi, log pi, log p, psi(a/q)+psi(1-a/q), psi^(m)(a/q),
// zeta(odd).  Total order gives expressions a unique sorted form.
class ConstSymbol {
  public:
    enum class Kind {
        One,
        EulerGamma,
        Pi,
        LogPi,
        LogPrime,
        PsiPair,
        PsiRat,
        ZetaOdd,
    };

    static ConstSymbol one() { return ConstSymbol(Kind::One); }
    static ConstSymbol euler_gamma() { return ConstSymbol(Kind::EulerGamma); }
    static ConstSymbol pi() { return ConstSymbol(Kind::Pi); }
    static ConstSymbol log_pi() { return ConstSymbol(Kind::LogPi); }
    static ConstSymbol log_prime(long p);
    static ConstSymbol psi_pair(long a, long q);
    static ConstSymbol psi_rat(long m, long a, long q);
    static ConstSymbol zeta_odd(long n);

    Kind kind() const { return kind_; }
    long order() const { return m_; }      // PsiRat
    long num() const { return a_; }        // PsiPair/PsiRat
    long den() const { return q_; }        // PsiPair/PsiRat
    long prime() const { return p_; }      // LogPrime
    long zeta_index() const { return n_; } // ZetaOdd

    std::string str() const;

    friend bool operator==(const ConstSymbol& x, const ConstSymbol& y) {
        return x.key() == y.key();
    }
    friend bool operator<(const ConstSymbol& x, const ConstSymbol& y) {
        return x.key() < y.key();
    }

    // Numeric value of the basis element.
    BigComplex value(Precision prec) const;

  private:
    explicit ConstSymbol(Kind k) : kind_(k) {}
    std::tuple<int, long, long, long, long, long> key() const {
        return {static_cast<int>(kind_), m_, q_, a_, p_, n_};
    }

    Kind kind_;
    long m_ = 0, a_ = 0, q_ = 0, p_ = 0, n_ = 0;
};

// Exact rational linear combination of ConstSymbols.  Zero coefficients are
// never stored; equality is coefficient-wise.
class ConstExpr {
  public:
    ConstExpr() = default;
    explicit ConstExpr(const mpq_class& rational_part);

    static ConstExpr term(const ConstSymbol& s, const mpq_class& c);

    void add(const ConstSymbol& s, const mpq_class& c);
    mpq_class coeff(const ConstSymbol& s) const;

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<ConstSymbol, mpq_class>& terms() const { return terms_; }

    friend ConstExpr operator+(const ConstExpr& x, const ConstExpr& y);
    friend ConstExpr operator-(const ConstExpr& x, const ConstExpr& y);
    friend ConstExpr operator*(const ConstExpr& x, const mpq_class& c);
    ConstExpr operator-() const { return *this * mpq_class(-1); }
    ConstExpr& operator+=(const ConstExpr& y) { return *this = *this + y; }
    ConstExpr& operator-=(const ConstExpr& y) { return *this = *this - y; }

    friend bool operator==(const ConstExpr& x, const ConstExpr& y) {
        return x.terms_ == y.terms_;
    }

    // Stable text form, e.g. "2*log(2) + 2*log(pi) - 1*psipair(1/3) - 3/2";
    // parse() round-trips it with bit-exact coefficients.
    std::string str() const;
    static ConstExpr parse(const std::string& text);

    BigComplex numeric(Precision prec) const;

  private:
    std::map<ConstSymbol, mpq_class> terms_;
};

} // namespace lquot
