#include "lquot/symbols.hpp"

#include <cctype>
#include <numeric>

#include "lquot/polygamma.hpp"

namespace lquot {

namespace {

bool is_prime_long(long p) {
    if (p < 2)
        return false;
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty())
        throw DomainError("empty rational in const expression");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
            throw DomainError("bad rational literal: " + s);
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw DomainError("bad rational literal: " + s);
    if (q.get_den() == 0)
        throw DomainError("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

// "a/q" (or plain "a" meaning a/1) into a pair of longs.
std::pair<long, long> parse_frac(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return {std::stol(s), 1};
        return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
    } catch (const std::exception&) {
        throw DomainError("bad fraction in symbol: " + s);
    }
}

} // namespace

ConstSymbol ConstSymbol::log_prime(long p) {
    if (!is_prime_long(p))
        throw DomainError("log symbol requires a prime, got " + std::to_string(p));
    ConstSymbol s(Kind::LogPrime);
    s.p_ = p;
    return s;
}

ConstSymbol ConstSymbol::psi_pair(long a, long q) {
    if (a <= 0 || 2 * a >= q || std::gcd(a, q) != 1)
        throw DomainError("psipair argument must be a reduced fraction below 1/2");
    ConstSymbol s(Kind::PsiPair);
    s.a_ = a;
    s.q_ = q;
    return s;
}

ConstSymbol ConstSymbol::psi_rat(long m, long a, long q) {
    bool window = a > 0 && a < q && std::gcd(a, q) == 1;
    bool at_one = a == 1 && q == 1 && m >= 1 && m % 2 == 1;
    if (m < 0 || !(window || at_one))
        throw DomainError("psi symbol argument out of canonical range");
    ConstSymbol s(Kind::PsiRat);
    s.m_ = m;
    s.a_ = a;
    s.q_ = q;
    return s;
}

ConstSymbol ConstSymbol::zeta_odd(long n) {
    if (n < 3 || n % 2 == 0)
        throw DomainError("zeta symbol requires an odd integer >= 3");
    ConstSymbol s(Kind::ZetaOdd);
    s.n_ = n;
    return s;
}

std::string ConstSymbol::str() const {
    switch (kind_) {
    case Kind::One:
        return "1";
    case Kind::EulerGamma:
        return "gamma";
    case Kind::Pi:
        return "pi";
    case Kind::LogPi:
        return "log(pi)";
    case Kind::LogPrime:
        return "log(" + std::to_string(p_) + ")";
    case Kind::PsiPair:
        return "psipair(" + std::to_string(a_) + "/" + std::to_string(q_) + ")";
    case Kind::PsiRat:
        return "psi[" + std::to_string(m_) + "](" + std::to_string(a_) + "/" +
               std::to_string(q_) + ")";
    case Kind::ZetaOdd:
        return "zeta(" + std::to_string(n_) + ")";
    }
    throw InternalError("unreachable symbol kind");
}

BigComplex ConstSymbol::value(Precision prec) const {
    switch (kind_) {
    case Kind::One:
        return BigComplex(1, prec);
    case Kind::EulerGamma:
        return lquot::euler_gamma(prec);
    case Kind::Pi:
        return pi_const(prec);
    case Kind::LogPi:
        return BigComplex(BigFloat::pi(prec).log());
    case Kind::LogPrime:
        return log_const(p_, prec);
    case Kind::PsiPair:
        return digamma(BigComplex(mpq_class(a_, q_), prec)) +
               digamma(BigComplex(mpq_class(q_ - a_, q_), prec));
    case Kind::PsiRat:
        return polygamma(m_, BigComplex(mpq_class(a_, q_), prec));
    case Kind::ZetaOdd:
        return BigComplex(BigFloat::zeta_ui(static_cast<unsigned long>(n_), prec));
    }
    throw InternalError("unreachable symbol kind");
}

ConstExpr::ConstExpr(const mpq_class& rational_part) {
    add(ConstSymbol::one(), rational_part);
}

ConstExpr ConstExpr::term(const ConstSymbol& s, const mpq_class& c) {
    ConstExpr e;
    e.add(s, c);
    return e;
}

void ConstExpr::add(const ConstSymbol& s, const mpq_class& c) {
    mpq_class cc = c;
    cc.canonicalize();  // guard against non-canonical caller input
    if (cc == 0)
        return;
    auto [it, inserted] = terms_.emplace(s, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second == 0)
            terms_.erase(it);
    }
}

mpq_class ConstExpr::coeff(const ConstSymbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

ConstExpr operator+(const ConstExpr& x, const ConstExpr& y) {
    ConstExpr r = x;
    for (const auto& [s, c] : y.terms_)
        r.add(s, c);
    return r;
}

ConstExpr operator-(const ConstExpr& x, const ConstExpr& y) {
    ConstExpr r = x;
    for (const auto& [s, c] : y.terms_)
        r.add(s, mpq_class(-c));
    return r;
}

ConstExpr operator*(const ConstExpr& x, const mpq_class& c) {
    ConstExpr r;
    if (c == 0)
        return r;
    for (const auto& [s, k] : x.terms_)
        r.add(s, mpq_class(k * c));
    return r;
}

std::string ConstExpr::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        mpq_class mag = c < 0 ? mpq_class(-c) : c;
        std::string body = s.kind() == ConstSymbol::Kind::One
                               ? mag.get_str()
                               : mag.get_str() + "*" + s.str();
        if (first) {
            out = (c < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

namespace {

ConstSymbol parse_symbol(const std::string& s) {
    if (s == "gamma")
        return ConstSymbol::euler_gamma();
    if (s == "pi")
        return ConstSymbol::pi();
    if (s == "log(pi)")
        return ConstSymbol::log_pi();
    auto arg_of = [&](const std::string& head) -> std::string {
        if (s.size() > head.size() + 1 && s.compare(0, head.size(), head) == 0 &&
            s.back() == ')')
            return s.substr(head.size(), s.size() - head.size() - 1);
        return std::string();
    };
    if (std::string a = arg_of("log("); !a.empty())
        return ConstSymbol::log_prime(std::stol(a));
    if (std::string a = arg_of("zeta("); !a.empty())
        return ConstSymbol::zeta_odd(std::stol(a));
    if (std::string a = arg_of("psipair("); !a.empty()) {
        auto [num, den] = parse_frac(a);
        return ConstSymbol::psi_pair(num, den);
    }
    if (s.compare(0, 4, "psi[") == 0) {
        auto close = s.find("](");
        if (close != std::string::npos && s.back() == ')') {
            long m = std::stol(s.substr(4, close - 4));
            auto [num, den] =
                parse_frac(s.substr(close + 2, s.size() - close - 3));
            return ConstSymbol::psi_rat(m, num, den);
        }
    }
    throw DomainError("unknown constant symbol: " + s);
}

} // namespace

ConstExpr ConstExpr::parse(const std::string& text) {
    ConstExpr e;
    if (text.empty())
        throw DomainError("empty const expression");
    if (text == "0")
        return e;
    size_t pos = 0;
    bool negative = false;
    if (text[0] == '-') {
        negative = true;
        pos = 1;
    }
    while (pos < text.size()) {
        size_t next_plus = text.find(" + ", pos);
        size_t next_minus = text.find(" - ", pos);
        size_t end = std::min(next_plus, next_minus);
        std::string tok = text.substr(pos, end == std::string::npos ? end : end - pos);
        auto star = tok.find('*');
        mpq_class c = parse_rational(star == std::string::npos
                                         ? tok
                                         : tok.substr(0, star));
        if (negative)
            c = -c;
        ConstSymbol s = star == std::string::npos
                            ? ConstSymbol::one()
                            : parse_symbol(tok.substr(star + 1));
        e.add(s, c);
        if (end == std::string::npos)
            break;
        negative = end == next_minus;
        pos = end + 3;
    }
    return e;
}

BigComplex ConstExpr::numeric(Precision prec) const {
    Precision work(prec.working(), 0);
    BigComplex acc(work);
    for (const auto& [s, c] : terms_)
        acc += s.value(work) * BigComplex(c, work);
    return acc.round_to(prec);
}

} // namespace lquot
