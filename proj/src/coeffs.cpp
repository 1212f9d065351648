#include "lquot/coeffs.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "lquot/errors.hpp"

namespace lquot {

namespace {

bool rational_charset(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            return false;
    return true;
}

mpq_class parse_rational_token(const std::string& t, long line) {
    mpq_class q;
    if (!rational_charset(t) || q.set_str(t, 10) != 0)
        throw FileFormatError("malformed rational '" + t + "'", line);
    if (q.get_den() == 0) throw FileFormatError("zero denominator in '" + t + "'", line);
    q.canonicalize();
    return q;
}

long parse_index_token(const std::string& t, long line) {
    if (t.empty() || t.size() > 18) throw FileFormatError("malformed index '" + t + "'", line);
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FileFormatError("malformed index '" + t + "'", line);
    return std::stol(t);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

BigComplex parse_root_number(const std::string& v, long line) {
    Precision p(192, 0);
    auto comma = v.find(',');
    try {
        if (comma == std::string::npos) {
            mpq_class q = parse_rational_token(v, line);
            return BigComplex(q, p);
        }
        BigFloat re(v.substr(0, comma), p);
        BigFloat im(v.substr(comma + 1), p);
        return BigComplex(re, im);
    } catch (const FileFormatError&) {
        throw;
    } catch (const Error&) {
        throw FileFormatError("malformed root number '" + v + "'", line);
    }
}

std::string root_number_str(const BigComplex& eps) {
    Precision p(eps.prec());
    if (eps == BigComplex(1, p)) return "1";
    if (eps == BigComplex(-1, p)) return "-1";
    return eps.real().str(40) + "," + eps.imag().str(40);
}

std::vector<mpq_class> parse_kappa_rats(const std::string& v, long line) {
    std::vector<mpq_class> out;
    for (const auto& tok : split_ws(v)) out.push_back(parse_rational_token(tok, line));
    if (out.empty()) throw FileFormatError("empty kappa list", line);
    return out;
}

} // namespace

const mpq_class& CoefficientSeries::at(long n) const {
    if (n < 1 || n > nmax()) throw DomainError("coefficient index out of range");
    return a[static_cast<size_t>(n)];
}

void CoefficientSeries::validate() const {
    meta.validate();
    if (a.size() < 2) throw DomainError("coefficient list must contain a(1)");
    if (a[1] != 1) throw DomainError("a(1) must equal 1");
    if (growth_c <= 0) throw DomainError("growth constant must be positive");
    if (growth_theta < 0) throw DomainError("growth exponent must be nonnegative");
    BigFloat dev = eps.abs() - BigFloat(1, eps.prec());
    if (!dev.abs_le_2exp(-16)) throw DomainError("root number must have modulus 1");
}

std::vector<mpq_class> delta_tau_coefficients(long nmax) {
    if (nmax < 1) throw DomainError("coefficient count must be positive");
    // P = prod_m (1-q^m)^24.  With e the sparse pentagonal series of the
    // Euler product, n*P_n = sum_m e_m * (25*m - n) * P_{n-m}.
    std::vector<mpz_class> P(static_cast<size_t>(nmax));
    P[0] = 1;
    for (long n = 1; n < nmax; ++n) {
        mpz_class s = 0;
        for (long j = 1;; ++j) {
            long m1 = j * (3 * j - 1) / 2;
            if (m1 > n) break;
            long sign = (j % 2 == 1) ? -1 : 1;
            s += sign * mpz_class(25 * m1 - n) * P[static_cast<size_t>(n - m1)];
            long m2 = j * (3 * j + 1) / 2;
            if (m2 <= n) s += sign * mpz_class(25 * m2 - n) * P[static_cast<size_t>(n - m2)];
        }
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(), mpz_class(n).get_mpz_t());
        if (r != 0) throw InternalError("power recurrence produced a non-integer");
        P[static_cast<size_t>(n)] = q;
    }
    std::vector<mpq_class> a(static_cast<size_t>(nmax) + 1);
    for (long n = 1; n <= nmax; ++n) a[static_cast<size_t>(n)] = mpq_class(P[static_cast<size_t>(n - 1)]);
    return a;
}

int kronecker_symbol(long d, long n) {
    if (n < 1) throw DomainError("kronecker symbol argument must be positive");
    mpz_class nz(n);
    return mpz_si_kronecker(d, nz.get_mpz_t());
}

namespace {

CoefficientSeries make_series(FamilyDatum meta, std::vector<mpq_class> a,
                              const mpq_class& theta, const mpq_class& c) {
    CoefficientSeries cs;
    cs.meta = std::move(meta);
    cs.a = std::move(a);
    cs.growth_theta = theta;
    cs.growth_c = c;
    cs.eps = BigComplex(1, Precision(192, 0));
    cs.validate();
    return cs;
}

} // namespace

CoefficientSeries delta_series(long nmax) {
    return make_series(FamilyDatum::modular(12, 1, 1), delta_tau_coefficients(nmax), 6, 2);
}

CoefficientSeries delta_twist5_series(long nmax) {
    auto a = delta_tau_coefficients(nmax);
    for (long n = 1; n <= nmax; ++n) a[static_cast<size_t>(n)] *= kronecker_symbol(5, n);
    return make_series(FamilyDatum::modular(12, 1, 5), std::move(a), 6, 2);
}

CoefficientSeries character_mod5_series(long nmax) {
    if (nmax < 1) throw DomainError("coefficient count must be positive");
    std::vector<mpq_class> a(static_cast<size_t>(nmax) + 1);
    for (long n = 1; n <= nmax; ++n) a[static_cast<size_t>(n)] = kronecker_symbol(5, n);
    return make_series(FamilyDatum::gld(1, 5, std::vector<mpq_class>{0}), std::move(a), 0, 1);
}

CoefficientSeries hilbert_alias_delta(long nmax) {
    return make_series(FamilyDatum::hilbert(12, 1, 1, 1), delta_tau_coefficients(nmax), 6, 2);
}

CoefficientSeries parse_coefficient_text(const std::string& text) {
    struct Header {
        std::string value;
        long line;
    };
    std::map<std::string, Header> headers;
    std::vector<mpq_class> a;
    a.emplace_back(0);
    bool data_seen = false;
    long expect = 1;

    std::istringstream is(text);
    std::string raw;
    long line = 0;
    while (std::getline(is, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string trimmed = raw;
        size_t b = trimmed.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        if (trimmed[b] == '#') {
            if (data_seen) throw FileFormatError("header after coefficient data", line);
            std::string body = trimmed.substr(b + 1);
            auto colon = body.find(':');
            if (colon == std::string::npos) throw FileFormatError("header lacks ':'", line);
            std::string key = body.substr(0, colon);
            std::string value = body.substr(colon + 1);
            auto strip = [](std::string& s) {
                size_t x = s.find_first_not_of(" \t");
                size_t y = s.find_last_not_of(" \t");
                s = (x == std::string::npos) ? std::string() : s.substr(x, y - x + 1);
            };
            strip(key);
            strip(value);
            if (key.empty() || value.empty()) throw FileFormatError("empty header key or value", line);
            if (headers.count(key)) throw FileFormatError("duplicate header '" + key + "'", line);
            headers[key] = Header{value, line};
            continue;
        }
        auto toks = split_ws(trimmed);
        if (toks.size() != 2) throw FileFormatError("expected 'n a(n)'", line);
        long n = parse_index_token(toks[0], line);
        if (n != expect)
            throw FileFormatError("coefficient index " + std::to_string(n) + " out of order (expected " +
                                      std::to_string(expect) + ")",
                                  line);
        mpq_class v = parse_rational_token(toks[1], line);
        if (n == 1 && v != 1) throw FileFormatError("a(1) must equal 1", line);
        a.push_back(v);
        ++expect;
        data_seen = true;
    }
    if (!data_seen) throw FileFormatError("no coefficient data", line);

    auto take = [&](const std::string& key) -> Header {
        auto it = headers.find(key);
        if (it == headers.end()) throw FileFormatError("missing header '" + key + "'");
        Header h = it->second;
        headers.erase(it);
        return h;
    };
    auto take_opt = [&](const std::string& key, const std::string& dflt) -> Header {
        auto it = headers.find(key);
        if (it == headers.end()) return Header{dflt, 0};
        Header h = it->second;
        headers.erase(it);
        return h;
    };

    Header fam = take("family");
    Family family;
    try {
        family = family_from_name(fam.value);
    } catch (const Error&) {
        throw FileFormatError("unknown family '" + fam.value + "'", fam.line);
    }

    Header norm = take("normalization");
    if (norm.value != "arithmetic")
        throw FileFormatError("normalization must be 'arithmetic'", norm.line);

    Header theta = take("growth-exponent");
    Header cbound = take_opt("growth-constant", "1");
    Header eps = take("root-number");

    auto parse_positive_long = [](const Header& h, const char* what) -> long {
        long v = parse_index_token(h.value, h.line);
        if (v < 1) throw FileFormatError(std::string("nonpositive ") + what, h.line);
        return v;
    };

    FamilyDatum meta;
    try {
        switch (family) {
            case Family::AutomorphicGLd: {
                Header deg = take("degree");
                Header lvl = take("level");
                Header kap = take("kappa");
                meta = FamilyDatum::gld(parse_positive_long(deg, "degree"), parse_positive_long(lvl, "level"),
                                        parse_kappa_rats(kap.value, kap.line));
                break;
            }
            case Family::ModularTwisted: {
                Header wt = take("weight");
                Header lvl = take("level");
                Header disc = take_opt("discriminant", "1");
                meta = FamilyDatum::modular(parse_rational_token(wt.value, wt.line),
                                            parse_positive_long(lvl, "level"),
                                            parse_index_token(disc.value, disc.line == 0 ? 1 : disc.line));
                break;
            }
            case Family::Hilbert: {
                Header wt = take("weight");
                Header deg = take("degree");
                Header lvl = take("level");
                Header disc = take_opt("discriminant", "1");
                meta = FamilyDatum::hilbert(parse_positive_long(wt, "weight"), parse_positive_long(deg, "degree"),
                                            parse_index_token(disc.value, disc.line == 0 ? 1 : disc.line),
                                            parse_positive_long(lvl, "level"));
                break;
            }
            case Family::Siegel:
                throw FileFormatError("siegel data files are not supported", fam.line);
        }
    } catch (const FileFormatError&) {
        throw;
    } catch (const Error& e) {
        throw FileFormatError(std::string("invalid family data: ") + e.what(), fam.line);
    }

    if (!headers.empty()) {
        auto it = headers.begin();
        throw FileFormatError("unexpected header '" + it->first + "'", it->second.line);
    }

    CoefficientSeries cs;
    cs.meta = meta;
    cs.a = std::move(a);
    cs.growth_theta = parse_rational_token(theta.value, theta.line);
    cs.growth_c = parse_rational_token(cbound.value, cbound.line == 0 ? 1 : cbound.line);
    cs.eps = parse_root_number(eps.value, eps.line);
    try {
        cs.validate();
    } catch (const Error& e) {
        throw FileFormatError(std::string("invalid coefficient data: ") + e.what());
    }
    return cs;
}

std::string serialize_coefficient_text(const CoefficientSeries& cs) {
    std::ostringstream os;
    const FamilyDatum& m = cs.meta;
    os << "# family: " << family_name(m.family) << "\n";
    switch (m.family) {
        case Family::AutomorphicGLd: {
            os << "# degree: " << m.d << "\n";
            os << "# level: " << m.N << "\n";
            os << "# kappa:";
            if (m.kappa_exact)
                for (const auto& q : m.kappa_rat) os << " " << q.get_str();
            else
                for (const auto& z : m.kappa) os << " " << z.real().str(40) << "," << z.imag().str(40);
            os << "\n";
            break;
        }
        case Family::ModularTwisted:
            os << "# weight: " << m.k.get_str() << "\n";
            os << "# level: " << m.N << "\n";
            os << "# discriminant: " << m.D << "\n";
            break;
        case Family::Hilbert:
            os << "# weight: " << m.k.get_str() << "\n";
            os << "# degree: " << m.n << "\n";
            os << "# level: " << m.normN << "\n";
            os << "# discriminant: " << m.dF << "\n";
            break;
        case Family::Siegel:
            throw DomainError("siegel data files are not supported");
    }
    os << "# growth-exponent: " << cs.growth_theta.get_str() << "\n";
    os << "# growth-constant: " << cs.growth_c.get_str() << "\n";
    os << "# root-number: " << root_number_str(cs.eps) << "\n";
    os << "# normalization: arithmetic\n";
    for (long n = 1; n <= cs.nmax(); ++n) os << n << " " << cs.at(n).get_str() << "\n";
    return os.str();
}

CoefficientSeries load_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coefficient_text(buf.str());
}

void write_coefficient_file(const std::string& path, const CoefficientSeries& cs) {
    std::string text = serialize_coefficient_text(cs);
    std::ofstream out(path);
    if (!out) throw FileFormatError("cannot open '" + path + "' for writing", 0);
    out << text;
    if (!out) throw FileFormatError("write failure on '" + path + "'", 0);
}

} // namespace lquot
