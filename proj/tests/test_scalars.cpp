#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qorbit/scalars.hpp"

using namespace qorbit;

namespace {

// Independent oracle: evaluate a RatFunc at a rational point t = v by direct
// substitution into the stored terms.  Agreement at several points (degrees
// here are far below the point count we could use) pins down canonicalization
// bugs without re-using the class's own arithmetic.
Rat eval_laurent(const LaurentPoly& p, const Rat& v) {
    Rat acc(0);
    for (const auto& [e, c] : p.terms()) {
        Rat pw(1);
        for (int i = 0; i < std::abs(e); ++i) pw *= v;
        if (e < 0) pw = Rat(1) / pw;
        acc += c * pw;
    }
    return acc;
}

Rat eval(const RatFunc& f, const Rat& v) {
    return eval_laurent(f.num(), v) / eval_laurent(f.den(), v);
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> exp(-4, 4), coef(-5, 5);
    LaurentPoly num, den;
    for (int i = 0; i < 3; ++i) num += LaurentPoly::term(exp(rng), Rat(coef(rng)));
    while (den.is_zero()) den += LaurentPoly::term(std::abs(exp(rng)), Rat(coef(rng)));
    return RatFunc(num, den);
}

} // namespace

TEST_CASE("q is t^4 and q powers are monomials") {
    CHECK(RatFunc::q_pow2(2).str() == "t^4");           // q
    CHECK(RatFunc::q_pow2(-2).str() == "(1)/(t^4)");    // q^{-1}
    CHECK(RatFunc::q_pow2(1).str() == "t^2");           // q^{1/2}
    CHECK(RatFunc::t_pow(1).str() == "t");
    CHECK(RatFunc::t_pow(0).str() == "1");
    CHECK(RatFunc(0).str() == "0");
}

TEST_CASE("canonical form: denominator monic with nonzero constant term") {
    RatFunc x = RatFunc::q_pow2(2) + RatFunc::q_pow2(-2); // q + 1/q
    CHECK(x.str() == "(t^8+1)/(t^4)");
    CHECK(x.den().min_exp() == 0);
    CHECK(x.den().leading_coeff() == 1);

    // gcd reduction: (t^8-1)/(t^4-1) = t^4+1
    RatFunc y(LaurentPoly::term(8) - LaurentPoly::term(0),
              LaurentPoly::term(4) - LaurentPoly::term(0));
    CHECK(y.str() == "t^4+1");

    // scaling: denominator leading coefficient is normalized away
    RatFunc z(LaurentPoly::term(0, Rat(1)), LaurentPoly::term(1, Rat(3)) + LaurentPoly(Rat(3)));
    CHECK(z == RatFunc(LaurentPoly::term(0, Rat(1, 3)), LaurentPoly::term(1) + LaurentPoly(Rat(1))));
}

TEST_CASE("quantum numbers") {
    // [2] = q + q^{-1}
    CHECK(RatFunc::qnum2(4) == RatFunc::q_pow2(2) + RatFunc::q_pow2(-2));
    // [1] = 1, [0] = 0, [-x] = -[x]
    CHECK(RatFunc::qnum2(2).is_one());
    CHECK(RatFunc::qnum2(0).is_zero());
    CHECK(RatFunc::qnum2(-4) == -RatFunc::qnum2(4));
    // [1/2] = (q^{1/2}-q^{-1/2})/(q-q^{-1}) = t^2/(t^4+1)
    CHECK(RatFunc::qnum2(1).str() == "(t^2)/(t^4+1)");
    // [3] = q^2 + 1 + q^{-2}
    CHECK(RatFunc::qnum2(6) ==
          RatFunc::q_pow2(4) + RatFunc(1) + RatFunc::q_pow2(-4));
}

TEST_CASE("field axioms on seeded random elements") {
    std::mt19937_64 rng(0x5eed00c0ffee1234ULL);
    for (int iter = 0; iter < 40; ++iter) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK((a / b) * b == a);
        if (!a.is_zero()) CHECK((a * a.inv()).is_one());
        // evaluation oracle at t = 3/2 (never a pole of our canonical dens? guard)
        Rat pt(3, 2);
        Rat db = eval_laurent(b.den(), pt);
        if (sgn(db) != 0 && sgn(eval_laurent((a * b).den(), pt)) != 0 &&
            sgn(eval_laurent(a.den(), pt)) != 0) {
            CHECK(eval(a * b, pt) == eval(a, pt) * eval(b, pt));
        }
    }
}

TEST_CASE("t -> 1/t substitution is an involution and a homomorphism") {
    std::mt19937_64 rng(0xfeedface12345678ULL);
    for (int iter = 0; iter < 20; ++iter) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
        CHECK(a.subst_inv().subst_inv() == a);
        CHECK((a * b).subst_inv() == a.subst_inv() * b.subst_inv());
        CHECK((a + b).subst_inv() == a.subst_inv() + b.subst_inv());
    }
    CHECK(RatFunc::q_pow2(2).subst_inv() == RatFunc::q_pow2(-2));
}

TEST_CASE("print/parse round trip") {
    std::mt19937_64 rng(0x0123456789abcdefULL);
    for (int iter = 0; iter < 30; ++iter) {
        RatFunc a = random_ratfunc(rng);
        CHECK(RatFunc::parse(a.str()) == a);
    }
    CHECK(RatFunc::parse("(t^8+1)/(t^4)") == RatFunc::q_pow2(2) + RatFunc::q_pow2(-2));
    CHECK(RatFunc::parse("0").is_zero());
    CHECK(RatFunc::parse("-t^2+1") == RatFunc(1) - RatFunc::t_pow(2));
    CHECK(RatFunc::parse(" ( 2*t + 1 ) / ( t^2 + 1 ) ") ==
          RatFunc(LaurentPoly::term(1, Rat(2)) + LaurentPoly(Rat(1)),
                  LaurentPoly::term(2) + LaurentPoly(Rat(1))));
    // rational coefficient survives the integer-clearing printer
    RatFunc third(Rat(1, 3));
    CHECK(third.str() == "(1)/(3)");
    CHECK(RatFunc::parse(third.str()) == third);
}

TEST_CASE("exact monomial square roots") {
    RatFunc m(LaurentPoly::term(8, Rat(9, 4)), LaurentPoly(Rat(1)));
    CHECK(m.sqrt_monomial() == RatFunc(LaurentPoly::term(4, Rat(3, 2)), LaurentPoly(Rat(1))));
    CHECK(RatFunc(0).sqrt_monomial().is_zero());
    CHECK(RatFunc::q_pow2(-2).sqrt_monomial() == RatFunc::q_pow2(-1));

    CHECK_THROWS_AS(RatFunc::t_pow(3).sqrt_monomial(), IrrationalRoot);
    CHECK_THROWS_AS(RatFunc(2).sqrt_monomial(), IrrationalRoot);
    CHECK_THROWS_AS((RatFunc(1) + RatFunc::t_pow(2)).sqrt_monomial(), IrrationalRoot);
    try {
        RatFunc(2).sqrt_monomial();
        CHECK(false);
    } catch (const IrrationalRoot& e) {
        CHECK(std::string(e.what()).rfind(IrrationalRoot::kPhrase, 0) == 0);
    }
}

TEST_CASE("division by zero reports not invertible") {
    try {
        RatFunc(1) / RatFunc(0);
        CHECK(false);
    } catch (const NotInvertible& e) {
        CHECK(std::string(e.what()).rfind(NotInvertible::kPhrase, 0) == 0);
    }
}
