#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "lquot/families.hpp"
#include "lquot/polygamma.hpp"
#include "oracles.hpp"

using namespace lquot;

namespace {

// Random reduced a/q strictly inside (0, hi).
mpq_class pick_point(oracles::Rng& rng, long q, const mpq_class& hi) {
    mpq_class top = hi * q;
    long lim = static_cast<long>(top.get_num().get_si() / top.get_den().get_si());
    for (;;) {
        long a = rng.integer(1, lim - 1);
        if (std::gcd(a, q) != 1)
            continue;
        mpq_class s(a, q);
        s.canonicalize();
        if (s > 0 && s < hi)
            return s;
    }
}

} // namespace

TEST_CASE("datum invariants are enforced") {
    CHECK_NOTHROW(FamilyDatum::gld(2, 37, std::vector<mpq_class>{0, 1}));
    CHECK_THROWS_AS(FamilyDatum::gld(2, 37, std::vector<mpq_class>{0}),
                    DomainError);
    CHECK_THROWS_AS(FamilyDatum::gld(1, 37, std::vector<mpq_class>{-1}),
                    DomainError);
    CHECK_THROWS_AS(FamilyDatum::gld(1, 0, std::vector<mpq_class>{0}),
                    DomainError);
    CHECK_THROWS_AS(FamilyDatum::gld(0, 1, std::vector<mpq_class>{}),
                    DomainError);
    Precision p(128);
    std::vector<BigComplex> bad = {
        BigComplex(BigFloat("-1.5", p), BigFloat(2, p))};
    CHECK_THROWS_AS(FamilyDatum::gld(1, 1, bad), DomainError);
    std::vector<BigComplex> good = {
        BigComplex(BigFloat("-0.5", p), BigFloat(2, p))};
    CHECK_NOTHROW(FamilyDatum::gld(1, 1, good));

    CHECK_NOTHROW(FamilyDatum::modular(12, 1, 5));
    CHECK_THROWS_AS(FamilyDatum::modular(2, 10, 5), DomainError);
    CHECK_THROWS_AS(FamilyDatum::modular(0, 1, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::modular(mpq_class(1, 3), 1, 1), DomainError);
    CHECK_NOTHROW(FamilyDatum::modular(mpq_class(13, 2), 4, 1));
    CHECK_THROWS_AS(FamilyDatum::modular(mpq_class(13, 2), 6, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::modular(mpq_class(13, 2), 5, 1), DomainError);

    CHECK_NOTHROW(FamilyDatum::hilbert(2, 1, 1, 1));
    CHECK_NOTHROW(FamilyDatum::hilbert(2, 2, 4, 3));
    CHECK_THROWS_AS(FamilyDatum::hilbert(2, 2, 3, 1), DomainError);
    CHECK_NOTHROW(FamilyDatum::hilbert(4, 3, 21, 1));
    CHECK_THROWS_AS(FamilyDatum::hilbert(4, 3, 20, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::hilbert(0, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::hilbert(2, 0, 1, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::hilbert(2, 1, 1, 0), DomainError);

    CHECK_NOTHROW(FamilyDatum::siegel(14, 2));
    CHECK_NOTHROW(FamilyDatum::siegel(10, 3));
    CHECK_THROWS_AS(FamilyDatum::siegel(14, 1), DomainError);
    CHECK_THROWS_AS(FamilyDatum::siegel(13, 2), DomainError);
    CHECK_THROWS_AS(FamilyDatum::siegel(6, 2), DomainError);
    CHECK_THROWS_AS(FamilyDatum::siegel(8, 3), DomainError);

    CHECK(FamilyDatum::siegel(14, 2).weight_even_integer());
    CHECK_FALSE(FamilyDatum::modular(mpq_class(13, 2), 4, 1)
                    .weight_even_integer());
    CHECK_FALSE(FamilyDatum::modular(11, 1, 1).weight_even_integer());
}

TEST_CASE("points outside the strip are rejected") {
    FamilyDatum fd = FamilyDatum::modular(12, 1, 1);
    Precision p(128);
    CHECK_THROWS_AS(closed_form_sum(fd, CriticalPoint::exact(0), p),
                    DomainError);
    CHECK_THROWS_AS(closed_form_sum(fd, CriticalPoint::exact(12), p),
                    DomainError);
    CHECK_THROWS_AS(closed_form_sum(fd, CriticalPoint::exact(-1), p),
                    DomainError);
    CHECK_THROWS_AS(
        closed_form_sum(
            fd, CriticalPoint::floating(BigComplex(BigFloat("-0.5", p))), p),
        DomainError);
    CHECK_NOTHROW(closed_form_sum(fd, CriticalPoint::exact(mpq_class(1, 2)), p));

    FamilyDatum gld = FamilyDatum::gld(1, 1, std::vector<mpq_class>{0});
    CHECK_THROWS_AS(
        closed_form_sum(gld, CriticalPoint::exact(mpq_class(3, 2)), p),
        DomainError);

    // Exact output needs an exact point.
    CHECK_THROWS_AS(
        closed_form_sum_exact(
            fd, CriticalPoint::floating(BigComplex(BigFloat(6, p)))),
        DomainError);
    CHECK_THROWS_AS(
        CriticalPoint::floating(BigComplex(BigFloat(6, p))).rational(),
        DomainError);
}

TEST_CASE("modular closed form at the classical point") {
    FamilyDatum fd = FamilyDatum::modular(12, 1, 1);
    CriticalPoint center = CriticalPoint::exact(6);

    ConstExpr e = closed_form_sum_exact(fd, center);
    ConstExpr want(mpq_class(-137, 30));
    want.add(ConstSymbol::euler_gamma(), 2);
    want.add(ConstSymbol::log_pi(), 2);
    want.add(ConstSymbol::log_prime(2), 2);
    CHECK(e == want);
    CHECK(ConstExpr::parse(e.str()) == e);

    Precision p(192);
    BigFloat frozen("0.2635187959550900216676764591206087548633", p);
    CHECK(closed_form_sum(fd, center, p).close_to(BigComplex(frozen), -120));
    CHECK(e.numeric(p).close_to(BigComplex(frozen), -120));

    // Twisting by D = 5 subtracts exactly 2 log 5.
    FamilyDatum tw = FamilyDatum::modular(12, 1, 5);
    ConstExpr diff = closed_form_sum_exact(tw, center) - e;
    CHECK(diff == ConstExpr::term(ConstSymbol::log_prime(5), -2));
    BigComplex nd = closed_form_sum(tw, center, p) - closed_form_sum(fd, center, p);
    CHECK(nd.close_to(BigComplex(-BigFloat(5, p).log() * 2), -120));
}

TEST_CASE("exact and numeric routes agree on random rational points") {
    oracles::Rng rng(0x11f);
    Precision p(192);
    const long qs[] = {4, 7, 9};

    for (int trial = 0; trial < 8; ++trial) {
        long q = qs[rng.integer(0, 2)];

        // Degree-d automorphic datum with rational parameters.
        long d = rng.integer(1, 3);
        std::vector<mpq_class> kappa;
        for (long j = 0; j < d; ++j) {
            mpq_class kj(rng.integer(0, 10), rng.integer(0, 1) ? 3 : 5);
            kj.canonicalize();
            kappa.push_back(kj);
        }
        FamilyDatum gld = FamilyDatum::gld(d, rng.integer(1, 50), kappa);
        CriticalPoint s_gld =
            CriticalPoint::exact(pick_point(rng, q, mpq_class(1)));
        CHECK(closed_form_sum_exact(gld, s_gld)
                  .numeric(p)
                  .close_to(closed_form_sum(gld, s_gld, p), -96));

        long k = rng.integer(2, 15);
        FamilyDatum mod = FamilyDatum::modular(k, rng.integer(1, 30), 7);
        CriticalPoint s_mod = CriticalPoint::exact(pick_point(rng, q, k));
        CHECK(closed_form_sum_exact(mod, s_mod)
                  .numeric(p)
                  .close_to(closed_form_sum(mod, s_mod, p), -96));

        long n = rng.integer(1, 3);
        long dmins[] = {1, 4, 21};
        FamilyDatum hil = FamilyDatum::hilbert(k, n, dmins[n - 1] + rng.integer(0, 9),
                                               rng.integer(1, 40));
        CHECK(closed_form_sum_exact(hil, s_mod)
                  .numeric(p)
                  .close_to(closed_form_sum(hil, s_mod, p), -96));

        long g = rng.integer(2, 3);
        long kS = 2 * (g + 2) + 2 * rng.integer(0, 5);
        FamilyDatum sie = FamilyDatum::siegel(kS, g);
        CriticalPoint s_sie = CriticalPoint::exact(pick_point(rng, q, kS));
        CHECK(closed_form_sum_exact(sie, s_sie)
                  .numeric(p)
                  .close_to(closed_form_sum(sie, s_sie, p), -96));

        // Higher orders, exact vs numeric.
        long m = rng.integer(1, 4);
        CHECK(closed_form_higher_exact(mod, s_mod, m)
                  .numeric(p)
                  .close_to(closed_form_higher(mod, s_mod, m, p), -96));
        CHECK(closed_form_higher_exact(sie, s_sie, m)
                  .numeric(p)
                  .close_to(closed_form_higher(sie, s_sie, m, p), -96));
    }
}

TEST_CASE("closed forms are symmetric under reflection") {
    oracles::Rng rng(0x5e7);
    Precision p(192);
    for (int trial = 0; trial < 6; ++trial) {
        FamilyDatum mod = FamilyDatum::modular(10, 3, 2);
        FamilyDatum hil = FamilyDatum::hilbert(10, 2, 5, 7);
        FamilyDatum sie = FamilyDatum::siegel(12, 2);
        for (const FamilyDatum& fd : {mod, hil, sie}) {
            BigComplex s = rng.complex(0.3, 9.7, -3.0, 3.0, p);
            BigComplex refl = BigComplex(fd.k, p) - s;
            BigComplex a = closed_form_sum(fd, CriticalPoint::floating(s), p);
            BigComplex b =
                closed_form_sum(fd, CriticalPoint::floating(refl), p);
            CHECK(a.close_to(b, -96));
        }

        FamilyDatum gld =
            FamilyDatum::gld(2, 11, std::vector<mpq_class>{0, mpq_class(1, 2)});
        BigComplex s = rng.complex(0.05, 0.95, -2.0, 2.0, p);
        BigComplex a = closed_form_sum(gld, CriticalPoint::floating(s), p);
        BigComplex b = closed_form_sum(
            gld, CriticalPoint::floating(BigComplex(1, p) - s), p);
        CHECK(a.close_to(b, -96));
    }
}

TEST_CASE("hilbert degenerates to the modular family") {
    oracles::Rng rng(0xdead);
    Precision p(192);
    for (int trial = 0; trial < 20; ++trial) {
        long k = rng.integer(2, 15);
        long N = rng.integer(1, 60);
        long q = 4 + 3 * rng.integer(0, 2);  // 4, 7, 10
        CriticalPoint s0 = CriticalPoint::exact(pick_point(rng, q, k));

        FamilyDatum mod = FamilyDatum::modular(k, N, 1);
        FamilyDatum hil = FamilyDatum::hilbert(k, 1, 1, N);
        CHECK(closed_form_sum_exact(mod, s0) == closed_form_sum_exact(hil, s0));
        CHECK(closed_form_sum(mod, s0, p)
                  .close_to(closed_form_sum(hil, s0, p), -170));

        long m = rng.integer(1, 3);
        CHECK(closed_form_higher_exact(mod, s0, m) ==
              closed_form_higher_exact(hil, s0, m));
    }
}

TEST_CASE("odd-order identities vanish at the central point") {
    Precision p(256);
    FamilyDatum mod = FamilyDatum::modular(12, 1, 1);
    FamilyDatum half = FamilyDatum::modular(mpq_class(13, 2), 4, 1);
    FamilyDatum hil = FamilyDatum::hilbert(8, 2, 5, 3);
    FamilyDatum sie = FamilyDatum::siegel(14, 2);
    for (long m : {1L, 3L, 5L}) {
        for (const FamilyDatum& fd : {mod, half, hil, sie}) {
            CriticalPoint c = CriticalPoint::exact(fd.k / 2);
            CHECK(closed_form_higher(fd, c, m, p).is_zero());
            CHECK(closed_form_higher_exact(fd, c, m).is_zero());
        }
    }

    // Even orders do not vanish; k = 2 gives -2 psi''(1) = 4 zeta(3).
    FamilyDatum k2 = FamilyDatum::modular(2, 1, 1);
    CriticalPoint one = CriticalPoint::exact(1);
    CHECK(closed_form_higher_exact(k2, one, 2) ==
          ConstExpr::term(ConstSymbol::zeta_odd(3), 4));
    BigComplex v = closed_form_higher(k2, one, 2, p);
    CHECK((v.real() - oracles::zeta3_apery(p) * 4).abs_le_2exp(-200));

    FamilyDatum gld = FamilyDatum::gld(1, 1, std::vector<mpq_class>{0});
    CHECK_THROWS_AS(
        closed_form_higher(gld, CriticalPoint::exact(mpq_class(1, 2)), 1, p),
        DomainError);
    CHECK_THROWS_AS(closed_form_higher(mod, one, 0, p), DomainError);
}

TEST_CASE("weight differences of higher forms are rational") {
    CriticalPoint s0 = CriticalPoint::exact(mpq_class(1, 3));
    FamilyDatum h8 = FamilyDatum::hilbert(8, 2, 5, 1);
    FamilyDatum h4 = FamilyDatum::hilbert(4, 2, 5, 1);
    for (long m : {1L, 2L, 3L}) {
        ConstExpr diff = closed_form_higher_exact(h8, s0, m) -
                         closed_form_higher_exact(h4, s0, m);
        if (!diff.is_zero()) {
            REQUIRE(diff.size() == 1);
            CHECK(diff.terms().begin()->first.kind() ==
                  ConstSymbol::Kind::One);
        }
        Precision p(192);
        BigComplex nd = closed_form_higher(h8, s0, m, p) -
                        closed_form_higher(h4, s0, m, p);
        CHECK(nd.close_to(diff.numeric(p), -96));
    }
}

TEST_CASE("log-derivative and quotient jets convert both ways") {
    Precision p(192);
    CHECK(quotient_derivative_convert({}, ConvertDirection::LogDerivToQuotients)
              .empty());

    // Order 1 is the identity.
    BigComplex a = BigComplex(mpq_class(3, 7), p);
    auto w1 = quotient_derivative_convert(
        {a}, ConvertDirection::LogDerivToQuotients);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0] == a);

    // (L'/L) = a, (L'/L)' = b gives L''/L = a^2 + b.
    BigComplex b = BigComplex(mpq_class(-2, 5), p);
    auto w2 = quotient_derivative_convert(
        {a, b}, ConvertDirection::LogDerivToQuotients);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0] == a);
    CHECK(w2[1].close_to(a * a + b, -180));

    // Round trips in both directions at length 6.
    oracles::Rng rng(0xabc);
    std::vector<BigComplex> u;
    for (int i = 0; i < 6; ++i)
        u.push_back(rng.complex(-2.0, 2.0, -2.0, 2.0, p));
    auto w = quotient_derivative_convert(u, ConvertDirection::LogDerivToQuotients);
    auto u2 = quotient_derivative_convert(w, ConvertDirection::QuotientsToLogDeriv);
    REQUIRE(u2.size() == u.size());
    for (size_t i = 0; i < u.size(); ++i)
        CHECK(u2[i].close_to(u[i], -128));

    std::vector<BigComplex> ws;
    for (int i = 0; i < 6; ++i)
        ws.push_back(rng.complex(-2.0, 2.0, -2.0, 2.0, p));
    auto us = quotient_derivative_convert(ws, ConvertDirection::QuotientsToLogDeriv);
    auto ws2 = quotient_derivative_convert(us, ConvertDirection::LogDerivToQuotients);
    for (size_t i = 0; i < ws.size(); ++i)
        CHECK(ws2[i].close_to(ws[i], -128));
}

TEST_CASE("datum text blocks round-trip") {
    FamilyDatum mod = FamilyDatum::modular(mpq_class(13, 2), 4, 3);
    CHECK(FamilyDatum::parse(mod.serialize()).serialize() == mod.serialize());

    FamilyDatum hil = FamilyDatum::hilbert(8, 2, 5, 7);
    CHECK(FamilyDatum::parse(hil.serialize()).serialize() == hil.serialize());

    FamilyDatum sie = FamilyDatum::siegel(14, 2);
    CHECK(FamilyDatum::parse(sie.serialize()).serialize() == sie.serialize());

    FamilyDatum gld = FamilyDatum::gld(
        2, 37, std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(3, 4)});
    FamilyDatum back = FamilyDatum::parse(gld.serialize());
    CHECK(back.kappa_exact);
    CHECK(back.kappa_rat == gld.kappa_rat);
    CHECK(back.serialize() == gld.serialize());

    Precision p(128);
    FamilyDatum gldf = FamilyDatum::gld(
        1, 3,
        std::vector<BigComplex>{BigComplex(BigFloat("0.25", p),
                                           BigFloat("-1.5", p))});
    FamilyDatum backf = FamilyDatum::parse(gldf.serialize());
    CHECK_FALSE(backf.kappa_exact);
    REQUIRE(backf.kappa.size() == 1);
    CHECK(backf.kappa[0].close_to(gldf.kappa[0].round_to(backf.kappa[0].prec()),
                                  -100));

    CHECK_THROWS_AS(FamilyDatum::parse("family: nope\nk: 2\n"), DomainError);
    CHECK_THROWS_AS(FamilyDatum::parse("k: 2\nN: 1\nD: 1\n"), DomainError);
    CHECK_THROWS_AS(
        FamilyDatum::parse("family: modular-twisted\nk: 2\nN: 1\n"),
        DomainError);
    CHECK_THROWS_AS(
        FamilyDatum::parse(
            "family: modular-twisted\nk: 2\nN: 1\nD: 1\nz: 9\n"),
        DomainError);
    CHECK_THROWS_AS(
        FamilyDatum::parse(
            "family: modular-twisted\nk: 2\nk: 4\nN: 1\nD: 1\n"),
        DomainError);
    CHECK_THROWS_AS(
        FamilyDatum::parse("family: siegel\nk: 14\ng: two\n"), DomainError);
    CHECK_THROWS_AS(FamilyDatum::parse("family: siegel\nk 14\ng: 2\n"),
                    DomainError);
}
