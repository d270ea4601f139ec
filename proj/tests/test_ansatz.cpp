#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "qorbit/ansatz.hpp"
#include "qorbit/errors.hpp"

using namespace qorbit;

namespace {

template <class E, class F>
void check_throws_phrase(F&& f) {
    try {
        f();
        FAIL_CHECK("expected an exception");
    } catch (const E& e) {
        CHECK(std::string(e.what()).rfind(E::kPhrase, 0) == 0);
    }
}

const std::vector<std::string> kSmallSpecs = {"B1", "B2", "C1", "C2", "C3", "D2", "D3"};

// Coefficients of the linear pair, retyped from the defining equations so the
// solver's Cramer step is checked against an independent transcription.
struct LinearPair {
    XiRat a11, a12, a21, a22, b1, b2;
};

LinearPair linear_pair(const SeriesSpec& sp, const RatFunc& xi0) {
    const XiRat xi = XiRat::variable();
    const XiRat xiv = xi.inv();
    const XiRat c0(xi0), c0v(xi0.inv());
    const RatFunc eps(sp.eps);
    const RatFunc qn = RatFunc::q_pow2(2 * (sp.N - sp.eps));
    LinearPair lp;
    lp.a11 = xiv - c0v;
    lp.a12 = (xi - c0) * XiRat(RatFunc(-1) * eps * qn) + (xiv - xi) * XiRat(q_minus_qinv());
    lp.a21 = xi - c0;
    lp.a22 = (xiv - c0v) * XiRat(RatFunc(-1) * eps * qn);
    lp.b1 = (xi - c0v) * XiRat(RatFunc(-1));
    lp.b2 = (xiv - c0) * XiRat(RatFunc(-1));
    return lp;
}

}  // namespace

TEST_CASE("polynomial and fraction arithmetic over the coefficient field") {
    const XiPoly x = XiPoly::variable();
    const XiPoly one(RatFunc(1));

    CHECK(x.degree() == 1);
    CHECK((x * x - one).degree() == 2);
    CHECK((x * x - one).coeff(0) == RatFunc(-1));
    CHECK((x * x - one).coeff(1).is_zero());
    CHECK((x * x - one).rem(x - one).is_zero());
    CHECK((x * x).rem(x - one) == one);
    CHECK((x - x).is_zero());
    CHECK((x * x - one).eval(RatFunc::q_pow2(4)) ==
          RatFunc::q_pow2(8) - RatFunc(1));

    const XiRat f(x * x - one, x - one);
    CHECK(f.num() == x + one);
    CHECK(f.den() == one);
    CHECK(f == XiRat(x + one, one));
    CHECK(f.eval(RatFunc::q_pow2(4)) == RatFunc::q_pow2(4) + RatFunc(1));

    const XiRat g(one, x - one);
    CHECK((g * g.inv()) == XiRat(RatFunc(1)));
    CHECK((g - g).is_zero());
    check_throws_phrase<NotInvertible>([&] { (g - g).inv(); });
    check_throws_phrase<NonGenericParameters>([&] { g.eval(RatFunc(1)); });
    check_throws_phrase<InvalidArgument>([&] { XiRat(one, x - x); });
}

TEST_CASE("constant coefficient has the banded closed form") {
    for (const std::string& name : kSmallSpecs) {
        const SeriesSpec sp = build_series(name);
        for (const int r2 : sp.admissible_r2()) {
            CAPTURE(name);
            CAPTURE(r2);
            const CellSplit cell = cell_split(sp, r2);
            const AnsatzSolution sol = solve_ansatz(sp, cell);

            const RatFunc xi0 = RatFunc::q_pow2(2 * (sp.N - r2 + 1));
            CHECK((sol.xi0 - xi0).is_zero());

            const XiPoly x = XiPoly::variable();
            CHECK(sol.mu == XiRat(XiPoly(RatFunc(1) - xi0), x - XiPoly(xi0)));
        }
    }
    // Smallest series: the band exponent is 2.
    const SeriesSpec c1 = build_series("C1");
    const AnsatzSolution sol = solve_ansatz(c1, cell_split(c1, 1));
    CHECK((sol.xi0 - RatFunc::q_pow2(4)).is_zero());
}

TEST_CASE("solutions satisfy the linear pair and the leftover identity") {
    for (const std::string& name : kSmallSpecs) {
        const SeriesSpec sp = build_series(name);
        for (const int r2 : sp.admissible_r2()) {
            CAPTURE(name);
            CAPTURE(r2);
            const AnsatzSolution sol = solve_ansatz(sp, cell_split(sp, r2));
            const LinearPair lp = linear_pair(sp, sol.xi0);

            CHECK((lp.a11 * sol.eta + lp.a12 * sol.zeta - lp.b1).is_zero());
            CHECK((lp.a21 * sol.eta + lp.a22 * sol.zeta - lp.b2).is_zero());
            CHECK_FALSE(sol.zeta.is_zero());
            CHECK(sol.consistent);

            // The trace scalar times zeta must reduce to the band bracket.
            const int e = sp.N - r2 + 1;
            const RatFunc bracket =
                (RatFunc::q_pow2(e) - RatFunc::q_pow2(-e)) * q_minus_qinv().inv();
            const XiRat lhs = sol.t_minus * sol.zeta;
            const XiRat rhs = (XiRat(RatFunc(1)) - sol.mu) *
                              XiRat(RatFunc(sp.eps) * RatFunc::q_pow2(e) * bracket);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("specialization at generic and degenerate band values") {
    const SeriesSpec sp = build_series("B1");
    const AnsatzSolution sol = solve_ansatz(sp, cell_split(sp, 2));

    const RatFunc xi = RatFunc::q_pow2(14);
    const AnsatzValues vals = evaluate_at(sol, xi);
    const LinearPair lp = linear_pair(sp, sol.xi0);
    CHECK((lp.a11.eval(xi) * vals.eta + lp.a12.eval(xi) * vals.zeta -
           lp.b1.eval(xi))
              .is_zero());
    CHECK((lp.a21.eval(xi) * vals.eta + lp.a22.eval(xi) * vals.zeta -
           lp.b2.eval(xi))
              .is_zero());
    CHECK((vals.mu - sol.mu.eval(xi)).is_zero());
    CHECK_FALSE(vals.t_minus.is_zero());

    check_throws_phrase<NonGenericParameters>([&] { evaluate_at(sol, sol.xi0); });
}
