#include "lquot/families.hpp"

#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "lquot/polygamma.hpp"

namespace lquot {

namespace {

constexpr long kKappaParseBits = 192;

mpq_class parse_q(const std::string& s) {
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
            throw DomainError("bad rational value: " + s);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw DomainError("bad rational value: " + s);
    if (q.get_den() == 0)
        throw DomainError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

long parse_long(const std::string& s) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size())
            throw DomainError("bad integer value: " + s);
        return v;
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("bad integer value: " + s);
    }
}

void check_strip(const FamilyDatum& fd, const CriticalPoint& s0,
                 Precision work) {
    mpq_class hi = fd.family == Family::AutomorphicGLd ? mpq_class(1) : fd.k;
    if (s0.is_exact()) {
        const mpq_class& r = s0.rational();
        if (r <= 0 || r >= hi)
            throw DomainError("point lies outside the open critical strip");
        return;
    }
    BigFloat re = s0.numeric(work).real();
    if (!(re.cmp_si(0) > 0 && re < BigFloat(hi, work)))
        throw DomainError("point lies outside the open critical strip");
}

BigFloat log_2pi(Precision work) { return (BigFloat::pi(work) * 2).log(); }

// nu/2 as a canonical rational.
mpq_class half(long nu) {
    mpq_class h(nu, 2);
    h.canonicalize();
    return h;
}

ConstExpr log_2pi_expr(long coef) {
    ConstExpr e;
    e.add(ConstSymbol::log_prime(2), coef);
    e.add(ConstSymbol::log_pi(), coef);
    return e;
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::AutomorphicGLd:
        return "automorphic-gld";
    case Family::ModularTwisted:
        return "modular-twisted";
    case Family::Hilbert:
        return "hilbert";
    case Family::Siegel:
        return "siegel";
    }
    throw InternalError("unreachable family");
}

Family family_from_name(const std::string& name) {
    if (name == "automorphic-gld")
        return Family::AutomorphicGLd;
    if (name == "modular-twisted")
        return Family::ModularTwisted;
    if (name == "hilbert")
        return Family::Hilbert;
    if (name == "siegel")
        return Family::Siegel;
    throw DomainError("unknown family: " + name);
}

CriticalPoint CriticalPoint::exact(const mpq_class& s0) {
    CriticalPoint p;
    p.exact_ = true;
    p.rat_ = s0;
    p.rat_.canonicalize();
    return p;
}

CriticalPoint CriticalPoint::floating(const BigComplex& s0) {
    CriticalPoint p;
    p.exact_ = false;
    p.val_ = s0;
    return p;
}

const mpq_class& CriticalPoint::rational() const {
    if (!exact_)
        throw DomainError("point has no exact rational representation");
    return rat_;
}

BigComplex CriticalPoint::numeric(Precision p) const {
    return exact_ ? BigComplex(rat_, p) : val_.round_to(p);
}

FamilyDatum FamilyDatum::gld(long d, long N,
                             const std::vector<mpq_class>& kappa) {
    FamilyDatum fd;
    fd.family = Family::AutomorphicGLd;
    fd.d = d;
    fd.N = N;
    fd.kappa_rat = kappa;
    fd.kappa_exact = true;
    for (mpq_class& q : fd.kappa_rat)
        q.canonicalize();
    fd.kappa.reserve(kappa.size());
    for (const mpq_class& q : fd.kappa_rat)
        fd.kappa.emplace_back(q, Precision(256));
    fd.validate();
    return fd;
}

FamilyDatum FamilyDatum::gld(long d, long N,
                             const std::vector<BigComplex>& kappa) {
    FamilyDatum fd;
    fd.family = Family::AutomorphicGLd;
    fd.d = d;
    fd.N = N;
    fd.kappa = kappa;
    fd.kappa_exact = false;
    fd.validate();
    return fd;
}

FamilyDatum FamilyDatum::modular(const mpq_class& k, long N, long D) {
    FamilyDatum fd;
    fd.family = Family::ModularTwisted;
    fd.k = k;
    fd.k.canonicalize();
    fd.N = N;
    fd.D = D;
    fd.validate();
    return fd;
}

FamilyDatum FamilyDatum::hilbert(long k, long n, long dF, long normN) {
    FamilyDatum fd;
    fd.family = Family::Hilbert;
    fd.k = k;
    fd.n = n;
    fd.dF = dF;
    fd.normN = normN;
    fd.N = normN;
    fd.validate();
    return fd;
}

FamilyDatum FamilyDatum::siegel(long k, long g) {
    FamilyDatum fd;
    fd.family = Family::Siegel;
    fd.k = k;
    fd.g = g;
    fd.validate();
    return fd;
}

bool FamilyDatum::weight_even_integer() const {
    return k.get_den() == 1 && k > 0 && mpz_even_p(k.get_num().get_mpz_t());
}

void FamilyDatum::validate() const {
    if (N < 1)
        throw DomainError("level must be >= 1");
    switch (family) {
    case Family::AutomorphicGLd: {
        if (d < 1)
            throw DomainError("degree must be >= 1");
        if (kappa.size() != static_cast<size_t>(d))
            throw DomainError("expected one local parameter per degree");
        if (kappa_exact) {
            if (kappa_rat.size() != static_cast<size_t>(d))
                throw DomainError("expected one local parameter per degree");
            for (const mpq_class& q : kappa_rat)
                if (q <= -1)
                    throw DomainError("local parameters need real part > -1");
        } else {
            for (const BigComplex& z : kappa)
                if (!(z.real().cmp_si(-1) > 0))
                    throw DomainError("local parameters need real part > -1");
        }
        return;
    }
    case Family::ModularTwisted: {
        if (k <= 0)
            throw DomainError("weight must be positive");
        if (k.get_den() != 1 && k.get_den() != 2)
            throw DomainError("weight must be integral or half-integral");
        if (D < 1)
            throw DomainError("twist discriminant must be >= 1");
        if (std::gcd(D, N) != 1)
            throw DomainError("twist discriminant must be prime to the level");
        if (k.get_den() == 2 && N % 4 != 0)
            throw DomainError("half-integral weight needs level divisible by 4");
        return;
    }
    case Family::Hilbert: {
        if (n < 1)
            throw DomainError("base-field degree must be >= 1");
        if (k.get_den() != 1 || k < 1)
            throw DomainError("weight must be a positive integer");
        if (dF < 1 || normN < 1)
            throw DomainError("discriminant and level norm must be >= 1");
        // Minkowski: dF * (n!)^2 >= n^(2n).
        mpz_class fact, power;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(2 * n));
        if (mpz_class(dF) * fact * fact < power)
            throw DomainError("field discriminant below the Minkowski bound");
        return;
    }
    case Family::Siegel: {
        if (g < 2)
            throw DomainError("genus must be >= 2");
        if (k.get_den() != 1 || !weight_even_integer())
            throw DomainError("weight must be a positive even integer");
        if (k <= 2 * (g + 1))
            throw DomainError("weight must exceed 2(g+1)");
        return;
    }
    }
    throw InternalError("unreachable family");
}

BigComplex closed_form_sum(const FamilyDatum& fd, const CriticalPoint& s0,
                           Precision prec) {
    fd.validate();
    Precision work(prec.working(), 0);
    check_strip(fd, s0, work);
    BigComplex s = s0.numeric(work);

    switch (fd.family) {
    case Family::AutomorphicGLd: {
        BigComplex acc(work);
        BigComplex one(1, work);
        for (long j = 0; j < fd.d; ++j) {
            BigComplex kj = fd.kappa_exact
                                ? BigComplex(fd.kappa_rat[j], work)
                                : fd.kappa[j];
            acc += digamma((s + kj) / 2) + digamma((one - s + kj) / 2);
        }
        BigComplex r = -(acc / 2);
        r += BigComplex(BigFloat::pi(work).log() * fd.d);
        r -= BigComplex(BigFloat(fd.N, work).log());
        return r.round_to(prec);
    }
    case Family::ModularTwisted: {
        BigComplex ks = BigComplex(fd.k, work) - s;
        BigComplex r = BigComplex(log_2pi(work) * 2) - digamma(s) - digamma(ks);
        if (fd.N > 1)
            r -= BigComplex(BigFloat(fd.N, work).log());
        if (fd.D > 1)
            r -= BigComplex(BigFloat(fd.D, work).log() * 2);
        return r.round_to(prec);
    }
    case Family::Hilbert: {
        BigComplex ks = BigComplex(fd.k, work) - s;
        BigComplex r = BigComplex(log_2pi(work) * (2 * fd.n));
        r -= (digamma(s) + digamma(ks)) * fd.n;
        if (fd.normN > 1)
            r -= BigComplex(BigFloat(fd.normN, work).log());
        if (fd.dF > 1)
            r -= BigComplex(BigFloat(fd.dF, work).log() * 2);
        return r.round_to(prec);
    }
    case Family::Siegel: {
        BigComplex r = BigComplex(log_2pi(work) * (2 * fd.g));
        for (long nu = 0; nu < fd.g; ++nu) {
            BigComplex shift(half(nu), work);
            BigComplex ks = BigComplex(fd.k, work) - s - shift;
            r -= digamma(s - shift) + digamma(ks);
        }
        return r.round_to(prec);
    }
    }
    throw InternalError("unreachable family");
}

ConstExpr closed_form_sum_exact(const FamilyDatum& fd,
                                const CriticalPoint& s0) {
    fd.validate();
    check_strip(fd, s0, Precision());
    const mpq_class& s = s0.rational();

    switch (fd.family) {
    case Family::AutomorphicGLd: {
        if (!fd.kappa_exact)
            throw DomainError(
                "exact closed form needs rational local parameters");
        ConstExpr e = ConstExpr::term(ConstSymbol::log_pi(), fd.d);
        e -= log_n_expand(fd.N);
        for (long j = 0; j < fd.d; ++j) {
            const mpq_class& kj = fd.kappa_rat[j];
            ConstExpr pair = canonical_psi(0, (s + kj) / 2) +
                             canonical_psi(0, (1 - s + kj) / 2);
            e -= pair * mpq_class(1, 2);
        }
        return e;
    }
    case Family::ModularTwisted: {
        ConstExpr e = log_2pi_expr(2);
        e -= canonical_psi(0, s);
        e -= canonical_psi(0, fd.k - s);
        e -= log_n_expand(fd.N);
        e -= log_n_expand(fd.D) * mpq_class(2);
        return e;
    }
    case Family::Hilbert: {
        ConstExpr e = log_2pi_expr(2 * fd.n);
        ConstExpr pair = canonical_psi(0, s) + canonical_psi(0, fd.k - s);
        e -= pair * mpq_class(fd.n);
        e -= log_n_expand(fd.normN);
        e -= log_n_expand(fd.dF) * mpq_class(2);
        return e;
    }
    case Family::Siegel: {
        ConstExpr e = log_2pi_expr(2 * fd.g);
        for (long nu = 0; nu < fd.g; ++nu) {
            e -= canonical_psi(0, s - half(nu));
            e -= canonical_psi(0, fd.k - s - half(nu));
        }
        return e;
    }
    }
    throw InternalError("unreachable family");
}

BigComplex closed_form_higher(const FamilyDatum& fd, const CriticalPoint& s0,
                              long m, Precision prec) {
    fd.validate();
    if (m < 1)
        throw DomainError("derivative order must be >= 1");
    if (fd.family == Family::AutomorphicGLd)
        throw DomainError(
            "no higher-derivative identity for the automorphic family");
    Precision work(prec.working(), 0);
    check_strip(fd, s0, work);
    BigComplex s = s0.numeric(work);
    const bool odd = m % 2 != 0;  // sign (-1)^(m+1) on the reflected term

    switch (fd.family) {
    case Family::ModularTwisted:
    case Family::Hilbert: {
        BigComplex ks = BigComplex(fd.k, work) - s;
        BigComplex refl = polygamma(m, ks);
        BigComplex r = -polygamma(m, s) + (odd ? refl : -refl);
        if (fd.family == Family::Hilbert)
            r = r * fd.n;
        return r.round_to(prec);
    }
    case Family::Siegel: {
        BigComplex r(work);
        for (long nu = 0; nu < fd.g; ++nu) {
            BigComplex shift(half(nu), work);
            BigComplex refl = polygamma(m, BigComplex(fd.k, work) - s - shift);
            r += -polygamma(m, s - shift) + (odd ? refl : -refl);
        }
        return r.round_to(prec);
    }
    default:
        throw InternalError("unreachable family");
    }
}

ConstExpr closed_form_higher_exact(const FamilyDatum& fd,
                                   const CriticalPoint& s0, long m) {
    fd.validate();
    if (m < 1)
        throw DomainError("derivative order must be >= 1");
    if (fd.family == Family::AutomorphicGLd)
        throw DomainError(
            "no higher-derivative identity for the automorphic family");
    check_strip(fd, s0, Precision());
    const mpq_class& s = s0.rational();
    const mpq_class sign = m % 2 != 0 ? 1 : -1;

    switch (fd.family) {
    case Family::ModularTwisted:
    case Family::Hilbert: {
        ConstExpr e = canonical_psi(m, fd.k - s) * sign;
        e -= canonical_psi(m, s);
        if (fd.family == Family::Hilbert)
            e = e * mpq_class(fd.n);
        return e;
    }
    case Family::Siegel: {
        ConstExpr e;
        for (long nu = 0; nu < fd.g; ++nu) {
            e += canonical_psi(m, fd.k - s - half(nu)) * sign;
            e -= canonical_psi(m, s - half(nu));
        }
        return e;
    }
    default:
        throw InternalError("unreachable family");
    }
}

std::vector<BigComplex> quotient_derivative_convert(
    const std::vector<BigComplex>& seq, ConvertDirection dir) {
    if (seq.empty())
        return {};
    const size_t m = seq.size();
    const Precision p = seq[0].prec();
    auto binom = [&](unsigned long i, unsigned long j) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), i, j);
        return BigComplex(BigFloat(b, p));
    };

    if (dir == ConvertDirection::LogDerivToQuotients) {
        // w[i+1] = sum_j C(i,j) u[j] w[i-j], w[0] = 1.
        std::vector<BigComplex> w(m + 1, BigComplex(p));
        w[0] = BigComplex(1, p);
        for (size_t i = 0; i < m; ++i) {
            BigComplex acc(p);
            for (size_t j = 0; j <= i; ++j)
                acc += binom(i, j) * seq[j] * w[i - j];
            w[i + 1] = acc;
        }
        return std::vector<BigComplex>(w.begin() + 1, w.end());
    }

    // u[i] = w[i+1] - sum_{j<i} C(i,j) u[j] w[i-j], w[0] = 1.
    std::vector<BigComplex> w(m + 1, BigComplex(p));
    w[0] = BigComplex(1, p);
    for (size_t i = 0; i < m; ++i)
        w[i + 1] = seq[i];
    std::vector<BigComplex> u(m, BigComplex(p));
    for (size_t i = 0; i < m; ++i) {
        BigComplex acc = w[i + 1];
        for (size_t j = 0; j < i; ++j)
            acc -= binom(i, j) * u[j] * w[i - j];
        u[i] = acc;
    }
    return u;
}

std::string FamilyDatum::serialize() const {
    validate();
    std::ostringstream out;
    out << "family: " << family_name(family) << "\n";
    switch (family) {
    case Family::AutomorphicGLd: {
        out << "d: " << d << "\n";
        out << "N: " << N << "\n";
        out << "kappa:";
        if (kappa_exact) {
            for (const mpq_class& q : kappa_rat)
                out << " " << q.get_str();
        } else {
            for (const BigComplex& z : kappa)
                out << " " << z.real().str(40) << "," << z.imag().str(40);
        }
        out << "\n";
        break;
    }
    case Family::ModularTwisted:
        out << "k: " << k.get_str() << "\n";
        out << "N: " << N << "\n";
        out << "D: " << D << "\n";
        break;
    case Family::Hilbert:
        out << "k: " << k.get_str() << "\n";
        out << "n: " << n << "\n";
        out << "dF: " << dF << "\n";
        out << "normN: " << normN << "\n";
        break;
    case Family::Siegel:
        out << "k: " << k.get_str() << "\n";
        out << "g: " << g << "\n";
        break;
    }
    return out.str();
}

FamilyDatum FamilyDatum::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto colon = line.find(": ");
        if (colon == std::string::npos)
            throw DomainError("expected 'key: value', got: " + line);
        auto [it, fresh] =
            kv.emplace(line.substr(0, colon), line.substr(colon + 2));
        if (!fresh)
            throw DomainError("duplicate key: " + it->first);
    }

    auto take = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw DomainError("missing key: " + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto done = [&] {
        if (!kv.empty())
            throw DomainError("unexpected key: " + kv.begin()->first);
    };

    Family f = family_from_name(take("family"));
    switch (f) {
    case Family::AutomorphicGLd: {
        long d = parse_long(take("d"));
        long N = parse_long(take("N"));
        std::string list = take("kappa");
        done();
        std::istringstream toks(list);
        std::vector<std::string> parts;
        for (std::string t; toks >> t;)
            parts.push_back(t);
        bool floating = false;
        for (const std::string& t : parts)
            if (t.find(',') != std::string::npos)
                floating = true;
        if (!floating) {
            std::vector<mpq_class> ks;
            ks.reserve(parts.size());
            for (const std::string& t : parts)
                ks.push_back(parse_q(t));
            return gld(d, N, ks);
        }
        std::vector<BigComplex> ks;
        Precision p(kKappaParseBits);
        for (const std::string& t : parts) {
            auto comma = t.find(',');
            std::string re = t.substr(0, comma);
            std::string im =
                comma == std::string::npos ? "0" : t.substr(comma + 1);
            ks.emplace_back(BigFloat(re, p), BigFloat(im, p));
        }
        return gld(d, N, ks);
    }
    case Family::ModularTwisted: {
        mpq_class k = parse_q(take("k"));
        long N = parse_long(take("N"));
        long D = parse_long(take("D"));
        done();
        return modular(k, N, D);
    }
    case Family::Hilbert: {
        long k = parse_long(take("k"));
        long n = parse_long(take("n"));
        long dF = parse_long(take("dF"));
        long normN = parse_long(take("normN"));
        done();
        return hilbert(k, n, dF, normN);
    }
    case Family::Siegel: {
        long k = parse_long(take("k"));
        long g = parse_long(take("g"));
        done();
        return siegel(k, g);
    }
    }
    throw InternalError("unreachable family");
}

} // namespace lquot
