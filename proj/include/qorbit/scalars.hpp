#pragma once

// Exact scalar field Q(t) with q = t^4.  Keeping t = q^{1/4} as the base
// variable makes every power q^{k/4} (k integer) a plain monomial, so the
// half-integer exponents that show up downstream never leave the field.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "qorbit/errors.hpp"

namespace qorbit {

using Rat = mpq_class;

// true and sets out = sqrt(x) when x is a perfect rational square (x >= 0).
bool rat_sqrt(const Rat& x, Rat& out);

// Sparse Laurent polynomial in t over Q.  Invariant: no zero coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& c);
    static LaurentPoly term(int exp, const Rat& c = Rat(1));

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;
    int term_count() const { return static_cast<int>(terms_.size()); }

    // min/max exponent; require !is_zero().
    int min_exp() const;
    int max_exp() const;
    const Rat& coeff(int exp) const; // 0 if absent (returns ref to static zero)
    const Rat& leading_coeff() const; // coeff at max_exp

    void set_coeff(int exp, const Rat& c); // erases on c == 0

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator-() const;
    LaurentPoly scaled(const Rat& c) const;
    LaurentPoly shifted(int k) const;    // * t^k
    LaurentPoly subst_inv() const;       // t -> 1/t

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    const std::map<int, Rat>& terms() const { return terms_; }

private:
    std::map<int, Rat> terms_;
};

// Polynomial division helpers; both arguments must have min_exp >= 0.
void poly_divmod(const LaurentPoly& a, const LaurentPoly& b,
                 LaurentPoly& quot, LaurentPoly& rem);
LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b); // monic; gcd(0,0) = 0

// Rational function num/den in Q(t), always in canonical form:
//   * den is a polynomial with nonzero constant term (min exponent 0),
//   * den is monic in its highest power,
//   * gcd(num stripped of its monomial factor, den) = 1,
//   * zero is 0/1.
// num may carry negative exponents of t.
class RatFunc {
public:
    RatFunc() : den_(Rat(1)) {}
    RatFunc(int v) : num_(Rat(v)), den_(Rat(1)) { fix_zero(); }
    explicit RatFunc(const Rat& v) : num_(v), den_(Rat(1)) { fix_zero(); }
    RatFunc(LaurentPoly num, LaurentPoly den); // canonicalizes; den != 0

    static RatFunc t_pow(int e) { return RatFunc(LaurentPoly::term(e), LaurentPoly(Rat(1))); }
    // q^x where x is given doubled (x = half2/2); q = t^4 so the t-exponent is 2*half2.
    static RatFunc q_pow2(int half2) { return t_pow(2 * half2); }
    // quantum number [x] = (q^x - q^{-x})/(q - q^{-1}), x doubled.
    static RatFunc qnum2(int half2);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b); // throws NotInvertible
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inv() const;                 // throws NotInvertible on zero
    RatFunc pow(int e) const;            // negative e inverts
    RatFunc subst_inv() const;           // t -> 1/t
    RatFunc sqrt_monomial() const;       // exact sqrt of c*t^{2k}; throws IrrationalRoot

    bool is_monomial() const;            // c*t^k, c != 0
    // For a monomial: return c and k.  Pre: is_monomial().
    void monomial_parts(Rat& c, int& k) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // Text form "(poly)/(poly)" with integer coefficients, or a bare
    // polynomial when the denominator is 1.  Example: q + q^{-1} prints as
    // "(t^8+1)/(t^4)".
    std::string str() const;
    static RatFunc parse(const std::string& s); // inverse of str(); lenient about spaces

private:
    void canonicalize();
    void fix_zero() { if (num_.is_zero()) den_ = LaurentPoly(Rat(1)); }

    LaurentPoly num_;
    LaurentPoly den_;
};

inline RatFunc operator*(const Rat& c, const RatFunc& x) { return RatFunc(c) * x; }

// gamma = q - q^{-1}
RatFunc q_minus_qinv();

} // namespace qorbit
