#include "lquot/certify.hpp"

#include <numeric>
#include <sstream>

#include "lquot/errors.hpp"

namespace lquot {

namespace {

std::string rat_str(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str();
}

std::string point_str(const CriticalPoint& s0) {
    if (s0.is_exact())
        return rat_str(s0.rational());
    BigComplex z = s0.numeric(Precision(64, 0));
    if (z.is_real())
        return z.real().str(17);
    return z.real().str(17) + "," + z.imag().str(17);
}

// c * log(2 pi)
ConstExpr log_2pi_times(const mpq_class& c) {
    ConstExpr e = ConstExpr::term(ConstSymbol::log_prime(2), c);
    e.add(ConstSymbol::log_pi(), c);
    return e;
}

// log(n!) as a prime-log combination via Legendre's formula.
ConstExpr factorial_log(long n) {
    ConstExpr e;
    for (long p = 2; p <= n; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime)
            continue;
        long exp = 0, pk = p;
        while (true) {
            exp += n / pk;
            if (pk > n / p)
                break;
            pk *= p;
        }
        e.add(ConstSymbol::log_prime(p), exp);
    }
    return e;
}

long euler_phi(long q) {
    long phi = q;
    for (const auto& [p, e] : factorize(q))
        phi = phi / p * (p - 1);
    return phi;
}

// Evaluate the bound, record value and margin, and certify only if the value
// is strictly negative with margin above 2^(-bits/4) both at the requested
// precision and again at doubled precision.
void settle_negativity(Certificate& cert, Precision prec) {
    cert.precision_bits = prec.bits;
    auto eval = [&](Precision p) {
        BigComplex v = cert.bound_expr.numeric(p);
        if (!v.is_real())
            throw InternalError("negativity bound must be real");
        return v.real();
    };
    auto passes = [&](const BigFloat& v, Precision p) {
        return v.sign() < 0 && v.abs() > BigFloat::two_pow(-p.bits / 4, p);
    };
    BigFloat v = eval(prec);
    cert.bound_value = BigComplex(v);
    cert.margin = v.abs();
    bool ok = passes(v, prec);
    if (ok) {
        Precision dbl = prec.doubled();
        ok = passes(eval(dbl), dbl);
    }
    cert.verdict = ok ? Verdict::Certified : Verdict::NotCertified;
}

} // namespace

std::string claim_name(Claim c) {
    switch (c) {
    case Claim::GLdNonvanish:
        return "gld-nonvanish";
    case Claim::ModularNonvanish:
        return "modular-nonvanish";
    case Claim::ModularNonvanishRemark:
        return "modular-nonvanish-remark";
    case Claim::HalfIntCentral:
        return "halfint-central";
    case Claim::HilbertNonvanish:
        return "hilbert-nonvanish";
    case Claim::SiegelNonvanish:
        return "siegel-nonvanish";
    case Claim::RankBound:
        return "rank-bound";
    }
    throw InternalError("unreachable claim");
}

std::string Certificate::serialize() const {
    std::ostringstream out;
    out << "claim: " << claim_name(claim) << "\n";
    out << "inputs: " << inputs << "\n";
    out << "bound: " << bound_expr.str() << "\n";
    if (claim == Claim::RankBound) {
        out << "guarantee: " << guarantee << "\n";
        out << "computed-rank: " << computed_rank << "\n";
        if (!symbols.empty()) {
            out << "symbols:";
            for (const std::string& s : symbols)
                out << " " << s;
            out << "\n";
        }
    } else {
        out << "value: " << bound_value.real().str(25) << "\n";
        out << "margin: " << margin.str(25) << "\n";
    }
    out << "verdict: " << (verdict == Verdict::Certified ? "Certified" : "NotCertified")
        << "\n";
    out << "precision-bits: " << precision_bits << "\n";
    if (assumptions.empty()) {
        out << "assumptions: none\n";
    } else {
        out << "assumptions:\n";
        for (const std::string& a : assumptions)
            out << "- " << a << "\n";
    }
    return out.str();
}

long HilbertDiscriminantTable::minimum(long n) const {
    switch (n) {
    case 2:
        return degree2;
    case 3:
        return degree3;
    case 4:
        return degree4;
    default:
        throw InternalError("discriminant table covers degrees 2..4");
    }
}

Certificate certify_gld(const FamilyDatum& fd, const CriticalPoint& s0,
                        Precision prec) {
    if (fd.family != Family::AutomorphicGLd)
        throw DomainError("automorphic-gld datum required");
    fd.validate();

    Precision hp(prec.bits > 192 ? prec.bits : 192, 0);
    if (!s0.is_exact() && !s0.numeric(hp).is_real())
        throw HypothesisError("evaluation point must be real");
    for (const BigComplex& kj : fd.kappa)
        if (!kj.is_real())
            throw HypothesisError("local parameters must be real");
    if (s0.is_exact() && fd.kappa_exact) {
        const mpq_class& s = s0.rational();
        for (const mpq_class& kj : fd.kappa_rat)
            if (s + kj < 1 || 1 - s + kj < 1)
                throw HypothesisError(
                    "need s0 + kappa_j >= 1 and 1 - s0 + kappa_j >= 1");
    } else {
        BigFloat s = s0.numeric(hp).real();
        for (const BigComplex& kj : fd.kappa) {
            BigFloat kr = kj.real().round_to(hp);
            // 1 - s0 + kappa_j >= 1 is kappa_j >= s0.
            if ((s + kr).cmp_si(1) < 0 || (kr - s).sign() < 0)
                throw HypothesisError(
                    "need s0 + kappa_j >= 1 and 1 - s0 + kappa_j >= 1");
        }
    }

    Certificate cert;
    cert.claim = Claim::GLdNonvanish;
    std::ostringstream in;
    in << "d=" << fd.d << " N=" << fd.N << " kappa=[";
    for (size_t j = 0; j < fd.kappa.size(); ++j) {
        if (j)
            in << ",";
        if (fd.kappa_exact)
            in << rat_str(fd.kappa_rat[j]);
        else
            in << fd.kappa[j].real().str(17);
    }
    in << "] s0=" << point_str(s0);
    cert.inputs = in.str();

    ConstExpr e = ConstExpr::term(ConstSymbol::log_prime(2), 2 * fd.d);
    e.add(ConstSymbol::euler_gamma(), fd.d);
    e.add(ConstSymbol::log_pi(), fd.d);
    e -= log_n_expand(fd.N);
    cert.bound_expr = e;
    cert.assumptions = {
        "the value class E(d, kappa, N, s0) is non-empty",
        "psi is strictly increasing on (0, infinity), so each pole-factor "
        "term is at least psi(1/2) = -gamma - 2 log 2",
    };
    settle_negativity(cert, prec);
    return cert;
}

Certificate certify_modular(const FamilyDatum& fd, const mpq_class& s0_,
                            bool remark, Precision prec) {
    if (fd.family != Family::ModularTwisted)
        throw DomainError("modular-twisted datum required");
    fd.validate();
    mpq_class s0(s0_);
    s0.canonicalize();

    if (fd.k.get_den() != 1)
        throw HypothesisError(
            "integral weight required; half-integral central points have "
            "their own certificate");
    long kmin = remark ? 5 : 3;
    if (fd.k < kmin)
        throw HypothesisError("weight below the proven range");
    long toff = remark ? 2 : 1;
    mpq_class t = s0 - fd.k / 2;
    if (t < 0 || t > fd.k / 2 - toff)
        throw HypothesisError("need s0 = k/2 + t with 0 <= t <= k/2 - " +
                              std::to_string(toff));

    Certificate cert;
    cert.claim = remark ? Claim::ModularNonvanishRemark : Claim::ModularNonvanish;
    std::ostringstream in;
    in << "k=" << rat_str(fd.k) << " N=" << fd.N << " D=" << fd.D
       << " s0=" << rat_str(s0) << " branch=" << (remark ? "remark" : "primary");
    cert.inputs = in.str();

    ConstExpr e = log_2pi_times(2);
    e.add(ConstSymbol::euler_gamma(), 2);
    if (remark)
        e += ConstExpr(mpq_class(-2));
    e -= log_n_expand(fd.N);
    e -= log_n_expand(fd.D) * mpq_class(2);
    cert.bound_expr = e;
    cert.assumptions = {
        "the value class E(N, D, k, s0) is non-empty",
    };
    if (remark)
        cert.assumptions.push_back(
            "psi(s0) + psi(k - s0) >= psi(3) + psi(2) = 5/2 - 2 gamma on the "
            "restricted range, which exceeds the 2 - 2 gamma used by the bound");
    else
        cert.assumptions.push_back(
            "psi(s0) + psi(k - s0) >= 2 psi(1) = -2 gamma on the stated range");
    settle_negativity(cert, prec);
    return cert;
}

Certificate certify_halfint_central(const mpq_class& k_, long N, Precision prec) {
    mpq_class k(k_);
    k.canonicalize();
    if (k <= 0 || k.get_den() != 2)
        throw HypothesisError("weight must be a positive half-integer");
    if (N < 4 || N % 4 != 0)
        throw HypothesisError("level must be a positive multiple of 4");

    // k = j + 1/2; branch constant c distinguishes j even (psi(1/4) chain)
    // from j odd (psi(3/4) chain).
    long j = mpz_class((k.get_num() - 1) / 2).get_si();
    long c = (j % 2 == 0) ? 1 : 3;
    if (c == 1 && !(k > 6))
        throw HypothesisError("weight outside the proven range (need k > 6 "
                              "when k - 1/2 is even)");
    if (c == 3 && !(k > 5))
        throw HypothesisError("weight outside the proven range (need k > 5 "
                              "when k - 1/2 is odd)");

    long half = mpz_class(k.get_num() / 4).get_si();  // floor(k/2)
    mpq_class sum(0);
    for (long i = 0; i < half; ++i)
        sum += mpq_class(4, 4 * i + c);

    // Confirm the quoted decimal caps on log(pi) - psi(c/4) at run precision,
    // and that the harmonic-type sum clears the cap already at N = 8.
    ConstExpr lead = ConstExpr::term(ConstSymbol::log_pi(), 1) -
                     canonical_psi(0, mpq_class(c, 4));
    BigFloat a = lead.numeric(prec).real();
    BigFloat cap(c == 1 ? "5.37223" : "2.231", prec);
    BigFloat mid = BigFloat(sum, prec) + BigFloat::log2_const(prec) / 2;
    if (!(a < cap) || !(cap < mid))
        throw InternalError("digamma constant chain failed");

    Certificate cert;
    cert.claim = Claim::HalfIntCentral;
    std::ostringstream in;
    in << "k=" << rat_str(k) << " N=" << N << " branch=" << c << "/4";
    cert.inputs = in.str();

    ConstExpr e = lead;
    e -= ConstExpr(sum);
    // (1/2) log(N/4) = (1/2) log N - log 2
    e -= log_n_expand(N) * mpq_class(1, 2);
    e += ConstExpr::term(ConstSymbol::log_prime(2), 1);
    cert.bound_expr = e;
    cert.assumptions = {
        "L(f, k/2) != 0 for the certified eigenform",
        "recomputed log(pi) - psi(" + std::to_string(c) + "/4) = " + a.str(20) +
            " stays below the quoted cap " + cap.str(6),
    };
    settle_negativity(cert, prec);
    return cert;
}

Certificate certify_hilbert(const FamilyDatum& fd, const mpq_class& s0_,
                            const HilbertDiscriminantTable& table, Precision prec) {
    if (fd.family != Family::Hilbert)
        throw DomainError("hilbert datum required");
    fd.validate();
    mpq_class s0(s0_);
    s0.canonicalize();

    long n = fd.n;
    if (n < 2)
        throw HypothesisError("base-field degree >= 2 required");
    long kmin = (n == 2) ? 8 : 5;
    if (fd.k < kmin)
        throw HypothesisError("weight below the proven range for this degree");
    mpq_class t = s0 - fd.k / 2;
    if (t < 0 || t > fd.k / 2 - 2)
        throw HypothesisError("need s0 = k/2 + t with 0 <= t <= k/2 - 2");

    Certificate cert;
    cert.claim = Claim::HilbertNonvanish;
    ConstExpr e = log_2pi_times(2 * n);
    std::string branch;
    if (n >= 5) {
        branch = "minkowski";
        e -= canonical_psi(0, mpq_class(5, 2)) * mpq_class(n);
        e -= canonical_psi(0, mpq_class(2)) * mpq_class(n);
        // -2 log dF <= -4n log n + 4 log n! by Minkowski's bound.
        e -= log_n_expand(n) * mpq_class(4 * n);
        e += factorial_log(n) * mpq_class(4);
        cert.assumptions = {
            "the value class E(N, k, s0) is non-empty",
            "Minkowski: log dF >= 2n log n - 2 log n!, and log(norm N) >= 0",
        };
    } else {
        long dmin = table.minimum(n);
        if (fd.dF < dmin)
            throw HypothesisError(
                "field discriminant below the minimal discriminant " +
                std::to_string(dmin) + " for degree " + std::to_string(n));
        e -= log_n_expand(fd.dF) * mpq_class(2);
        if (n == 2) {
            branch = "quadratic";
            e -= canonical_psi(0, mpq_class(6)) * mpq_class(2);
            e -= canonical_psi(0, mpq_class(2)) * mpq_class(2);
            cert.assumptions = {
                "the value class E(N, k, s0) is non-empty",
                "psi(s0) + psi(k - s0) >= psi(k - 2) + psi(2) >= psi(6) + "
                "psi(2) for k >= 8, and log(norm N) >= 0",
            };
        } else {
            branch = "table";
            e -= canonical_psi(0, mpq_class(5, 2)) * mpq_class(n);
            e -= canonical_psi(0, mpq_class(2)) * mpq_class(n);
            cert.assumptions = {
                "the value class E(N, k, s0) is non-empty",
                "no totally real field of this degree has discriminant below "
                "the tabulated minimum, and log(norm N) >= 0",
            };
        }
    }
    std::ostringstream in;
    in << "k=" << rat_str(fd.k) << " n=" << n << " dF=" << fd.dF
       << " normN=" << fd.normN << " s0=" << rat_str(s0) << " branch=" << branch;
    cert.inputs = in.str();
    cert.bound_expr = e;
    settle_negativity(cert, prec);
    return cert;
}

Certificate certify_siegel(long k, long g, const mpq_class& s0_, Precision prec) {
    if (g < 2)
        throw HypothesisError("genus >= 2 required");
    if (k < 2 * (g + 7))
        throw HypothesisError("need weight k >= 2(g + 7)");
    if (k % 2 != 0)
        throw HypothesisError("weight must be even");
    mpq_class s0(s0_);
    s0.canonicalize();
    mpq_class t = s0 - mpq_class(k) / 2;
    if (t < 0 || t >= mpq_class(g + 1, 2))
        throw HypothesisError("need s0 = k/2 + t with 0 <= t < (g + 1)/2");

    FamilyDatum fd = FamilyDatum::siegel(k, g);
    fd.validate();

    Certificate cert;
    cert.claim = Claim::SiegelNonvanish;
    std::ostringstream in;
    in << "k=" << k << " g=" << g << " s0=" << rat_str(s0);
    cert.inputs = in.str();

    ConstExpr e = log_2pi_times(2 * g);
    e -= canonical_psi(0, mpq_class(7)) * mpq_class(2 * g);
    cert.bound_expr = e;
    cert.assumptions = {
        "the value class E(g, k, s0) is non-empty",
        "every digamma argument is at least 7, so each term is at least psi(7)",
    };
    settle_negativity(cert, prec);
    return cert;
}

Certificate certify_siegel(const FamilyDatum& fd, const mpq_class& s0,
                           Precision prec) {
    if (fd.family != Family::Siegel)
        throw DomainError("siegel datum required");
    fd.validate();
    return certify_siegel(mpz_class(fd.k.get_num()).get_si(), fd.g, s0, prec);
}

Certificate rank_certificate(const FamilyDatum& tmpl, const IntegerSet& J,
                             const CriticalPoint& s0) {
    if (!s0.is_exact())
        throw DomainError("rank certificates need an exact rational point");
    tmpl.validate();
    if (!property_a_check(J))
        throw PropertyAError("index set lacks property A");

    auto with_level = [&](long N) {
        switch (tmpl.family) {
        case Family::AutomorphicGLd:
            if (!tmpl.kappa_exact)
                throw DomainError(
                    "rank certificates need rational local parameters");
            return FamilyDatum::gld(tmpl.d, N, tmpl.kappa_rat);
        case Family::ModularTwisted:
            return FamilyDatum::modular(tmpl.k, N, tmpl.D);
        case Family::Hilbert: {
            if (std::gcd(N, tmpl.dF) != 1)
                throw HypothesisError(
                    "levels must be coprime to the field discriminant");
            long k = mpz_class(tmpl.k.get_num()).get_si();
            return FamilyDatum::hilbert(k, tmpl.n, tmpl.dF, N);
        }
        case Family::Siegel:
            throw DomainError("siegel data carry no level to vary");
        }
        throw InternalError("unreachable family");
    };

    // w is the common member value at level 1; each member value is then
    // exactly w - log N, which is re-derived per member and cross-checked.
    ConstExpr w = closed_form_sum_exact(with_level(1), s0);
    std::vector<ConstExpr> vs;
    std::vector<mpq_class> ones;
    std::set<std::string> syms;
    for (long N : J.elems) {
        ConstExpr e = closed_form_sum_exact(with_level(N), s0);
        ConstExpr v = log_n_expand(N);
        if (!(w - e == v))
            throw InternalError("closed form does not split as w - log N");
        for (const auto& [sym, coeff] : v.terms())
            syms.insert(sym.str());
        vs.push_back(v);
        ones.emplace_back(1);
    }

    Certificate cert;
    cert.claim = Claim::RankBound;
    std::ostringstream in;
    in << "family=" << family_name(tmpl.family);
    switch (tmpl.family) {
    case Family::AutomorphicGLd: {
        in << " d=" << tmpl.d << " kappa=[";
        for (size_t j = 0; j < tmpl.kappa_rat.size(); ++j)
            in << (j ? "," : "") << rat_str(tmpl.kappa_rat[j]);
        in << "]";
        break;
    }
    case Family::ModularTwisted:
        in << " k=" << rat_str(tmpl.k) << " D=" << tmpl.D;
        break;
    case Family::Hilbert:
        in << " k=" << rat_str(tmpl.k) << " n=" << tmpl.n << " dF=" << tmpl.dF;
        break;
    case Family::Siegel:
        break;
    }
    in << " s0=" << rat_str(s0.rational()) << " J={";
    bool first = true;
    for (long N : J.elems) {
        in << (first ? "" : ",") << N;
        first = false;
    }
    in << "}";
    cert.inputs = in.str();

    cert.bound_expr = w;
    cert.computed_rank = rank_lower_bound(vs, w, ones);
    cert.guarantee = static_cast<long>(J.elems.size()) - 1;
    cert.bound_value = BigComplex(cert.guarantee, Precision(64, 0));
    cert.margin = BigFloat(cert.computed_rank - cert.guarantee, Precision(64, 0));
    cert.symbols = {syms.begin(), syms.end()};
    cert.precision_bits = 0;
    cert.verdict = cert.computed_rank >= cert.guarantee ? Verdict::Certified
                                                        : Verdict::NotCertified;
    cert.assumptions = {
        "the value class is non-empty at every level in J",
        "property A holds for J, so the log N are rationally independent",
        "Baker: rationally independent logarithms of integers stay "
        "independent over the algebraic numbers",
    };
    return cert;
}

Certificate rank_certificate_coprime(const FamilyDatum& fd, long q) {
    fd.validate();
    if (q < 7)
        throw HypothesisError("need q >= 7");
    switch (fd.family) {
    case Family::AutomorphicGLd:
        throw DomainError(
            "coprime-point certificates cover the three weight families");
    case Family::ModularTwisted:
        if (fd.k.get_den() != 1 || fd.k < 2)
            throw HypothesisError("need integral weight k >= 2");
        break;
    case Family::Hilbert:
        if (fd.k < 2)
            throw HypothesisError("need weight k >= 2");
        break;
    case Family::Siegel:
        if (fd.g % 2 != 0)
            throw HypothesisError("genus must be even");
        if (q % 2 == 0)
            throw HypothesisError("q must be odd for this family");
        break;
    }

    std::vector<long> as;
    for (long a = 1; 2 * a < q; ++a)
        if (std::gcd(a, q) == 1)
            as.push_back(a);

    std::vector<ConstExpr> us;
    for (long a : as)
        us.push_back(
            closed_form_sum_exact(fd, CriticalPoint::exact(mpq_class(a, q))));

    // The non-digamma, non-rational part must be the same for every a; it
    // plays the role of w.  What is left is one psi pair plus a rational.
    ConstExpr w;
    for (const auto& [sym, c] : us.front().terms())
        if (sym.kind() != ConstSymbol::Kind::PsiPair &&
            sym.kind() != ConstSymbol::Kind::PsiRat &&
            sym.kind() != ConstSymbol::Kind::One)
            w.add(sym, c);

    std::vector<ConstExpr> vs;
    std::vector<mpq_class> ones;
    std::set<std::string> pair_syms;
    for (const ConstExpr& u : us) {
        ConstExpr v = w - u;
        for (const auto& [sym, c] : v.terms()) {
            if (sym.kind() == ConstSymbol::Kind::PsiPair)
                pair_syms.insert(sym.str());
            else if (sym.kind() != ConstSymbol::Kind::One)
                throw InternalError(
                    "nonuniform transcendental part in the coprime family");
        }
        vs.push_back(v);
        ones.emplace_back(1);
    }
    if (vs.size() != static_cast<size_t>(euler_phi(q) / 2))
        throw InternalError("coprime point count mismatch");

    Certificate cert;
    cert.claim = Claim::RankBound;
    std::ostringstream in;
    in << "family=" << family_name(fd.family);
    switch (fd.family) {
    case Family::ModularTwisted:
        in << " k=" << rat_str(fd.k) << " N=" << fd.N << " D=" << fd.D;
        break;
    case Family::Hilbert:
        in << " k=" << rat_str(fd.k) << " n=" << fd.n << " dF=" << fd.dF
           << " normN=" << fd.normN;
        break;
    case Family::Siegel:
        in << " k=" << rat_str(fd.k) << " g=" << fd.g;
        break;
    case Family::AutomorphicGLd:
        break;
    }
    in << " q=" << q << " points=" << vs.size();
    cert.inputs = in.str();

    cert.bound_expr = w;
    cert.computed_rank = rank_lower_bound(vs, w, ones);
    cert.guarantee = euler_phi(q) / 2 - 2;
    cert.bound_value = BigComplex(cert.guarantee, Precision(64, 0));
    cert.margin = BigFloat(cert.computed_rank - cert.guarantee, Precision(64, 0));
    cert.symbols = {pair_syms.begin(), pair_syms.end()};
    cert.precision_bits = 0;
    cert.verdict = cert.computed_rank >= cert.guarantee ? Verdict::Certified
                                                        : Verdict::NotCertified;
    cert.assumptions = {
        "the value class is non-empty at a/q for every admissible a",
        "q is coprime to the ineffective modulus of the digamma dimension "
        "theorem, so the psi pairs at denominator q span dimension phi(q)/2",
    };
    return cert;
}

} // namespace lquot
