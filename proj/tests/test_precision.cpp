#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lquot/bigcomplex.hpp"
#include "lquot/bigfloat.hpp"
#include "lquot/errors.hpp"

using namespace lquot;

TEST_CASE("precision invariants") {
    CHECK_THROWS_AS(Precision(32), DomainError);
    CHECK_THROWS_AS(Precision(128, 256), DomainError);
    Precision p(128);
    CHECK(p.guard_bits == 32);
    CHECK(Precision(1024).guard_bits == 128);
    CHECK(p.working() == 160);
    CHECK(Precision(128, 7).guard_bits == 7);
}

TEST_CASE("mixed precision arithmetic rounds to the smaller operand") {
    BigFloat a(1, Precision(256));
    BigFloat b(3, Precision(128));
    CHECK((a / b).prec().bits == 128);
    CHECK((a + b).prec().bits == 128);
    BigComplex ca(a), cb(b);
    CHECK((ca * cb).prec().bits == 128);
}

TEST_CASE("exact rational construction and comparison") {
    Precision p(128);
    BigFloat x(mpq_class(1, 4), p);
    CHECK(x * 4 == BigFloat(1, p));
    CHECK(BigFloat(mpq_class(16, 21), p) ==
          BigFloat(mpq_class(3, 7), p) + BigFloat(mpq_class(1, 3), p));
    CHECK(x < BigFloat(1, p));
    CHECK(BigFloat("0.25", p) == x);
}

TEST_CASE("NaN and infinity raise instead of propagating") {
    Precision p(64);
    BigFloat z(p);
    CHECK_THROWS_AS(z / z, DomainError);
    CHECK_THROWS_AS(1 / z, DomainError);
    BigFloat huge = BigFloat::two_pow(1'000'000'000, p);
    CHECK_THROWS_AS(huge.exp(), InternalError);
    CHECK_THROWS_AS((-BigFloat(1, p)).log(), DomainError);
    CHECK_THROWS_AS((-BigFloat(1, p)).sqrt(), DomainError);
}

TEST_CASE("two_pow and abs_le_2exp are exact") {
    Precision p(64);
    BigFloat x = BigFloat::two_pow(-70, p);
    CHECK(x.abs_le_2exp(-70));
    CHECK_FALSE(x.abs_le_2exp(-71));
    CHECK((-x).abs_le_2exp(-70));
    CHECK(BigFloat(p).abs_le_2exp(-10'000));
}

TEST_CASE("elementary functions agree with double precision") {
    Precision p(128);
    BigFloat x("1.375", p);
    CHECK(std::abs(x.exp().to_double() - std::exp(1.375)) < 1e-14);
    CHECK(std::abs(x.log().to_double() - std::log(1.375)) < 1e-14);
    CHECK(std::abs(x.sin().to_double() - std::sin(1.375)) < 1e-14);
    CHECK(std::abs(BigFloat::atan2(x, BigFloat(2, p)).to_double() -
                   std::atan2(1.375, 2.0)) < 1e-14);
}

TEST_CASE("complex arithmetic and principal-branch functions") {
    Precision p(128);
    BigComplex z(BigFloat(3, p), BigFloat(4, p));
    CHECK(z.abs() == BigFloat(5, p));
    CHECK((z * z.conj()).real() == BigFloat(25, p));
    CHECK((z * z.conj()).imag().is_zero());

    BigComplex w = z.recip() * z;
    CHECK(w.close_to(BigComplex(1, p), -120));

    // log on the negative real axis: principal branch gives +i pi.
    BigComplex neg(BigFloat(-2, p), BigFloat(p));
    BigComplex ln = neg.log();
    CHECK((ln.imag() - BigFloat::pi(p)).abs_le_2exp(-120));

    // exp(log z) == z
    CHECK(z.log().exp().close_to(z, -118));

    // sin^2 + cos^2 == 1 off the real axis
    BigComplex s = z.sin(), c = z.cos();
    CHECK((s * s + c * c).close_to(BigComplex(1, p), -100));

    // integer powers vs repeated multiplication
    CHECK(z.pow_si(3).close_to(z * z * z, -115));
    CHECK(z.pow_si(-2).close_to((z * z).recip(), -120));
    CHECK(z.pow(BigComplex(2, p)).close_to(z * z, -115));
}

TEST_CASE("division by zero raises") {
    Precision p(64);
    BigComplex z(1, p);
    CHECK_THROWS_AS(z / BigComplex(p), DomainError);
    CHECK_THROWS_AS(BigComplex(p).recip(), DomainError);
    CHECK_THROWS_AS(BigComplex(p).log(), DomainError);
}

TEST_CASE("string output carries requested significant digits") {
    Precision p(128);
    BigFloat third = BigFloat(1, p) / 3;
    std::string s = third.str(25);
    CHECK(s.substr(0, 10) == "0.33333333");
    BigComplex z(BigFloat(1, p), BigFloat(-2, p));
    CHECK(z.str(5) == "1 - 2i");
}

TEST_CASE("round_to changes the tag and re-rounds") {
    Precision hi(256), lo(128);
    BigFloat x = BigFloat(1, hi) / 3;
    BigFloat y = x.round_to(lo);
    CHECK(y.prec().bits == 128);
    CHECK((x - y.round_to(hi)).abs().abs_le_2exp(-128));
}
