#include "qorbit/scalars.hpp"

#include <cctype>
#include <sstream>

namespace qorbit {

bool rat_sqrt(const Rat& x, Rat& out) {
    if (sgn(x) < 0) return false;
    mpz_class n = x.get_num(), d = x.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rat(rn, rd);
    out.canonicalize();
    return true;
}

// ---- LaurentPoly ----

LaurentPoly::LaurentPoly(const Rat& c) {
    if (sgn(c) != 0) terms_[0] = c;
}

LaurentPoly LaurentPoly::term(int exp, const Rat& c) {
    LaurentPoly p;
    if (sgn(c) != 0) p.terms_[exp] = c;
    return p;
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

int LaurentPoly::min_exp() const { return terms_.begin()->first; }
int LaurentPoly::max_exp() const { return terms_.rbegin()->first; }

const Rat& LaurentPoly::coeff(int exp) const {
    static const Rat zero(0);
    auto it = terms_.find(exp);
    return it == terms_.end() ? zero : it->second;
}

const Rat& LaurentPoly::leading_coeff() const { return terms_.rbegin()->second; }

void LaurentPoly::set_coeff(int exp, const Rat& c) {
    if (sgn(c) == 0) terms_.erase(exp);
    else terms_[exp] = c;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            auto it = r.terms_.find(ea + eb);
            if (it == r.terms_.end()) {
                r.terms_.emplace(ea + eb, ca * cb);
            } else {
                it->second += ca * cb;
                if (sgn(it->second) == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
    LaurentPoly r;
    if (sgn(c) == 0) return r;
    for (const auto& [e, co] : terms_) r.terms_.emplace(e, co * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

LaurentPoly LaurentPoly::subst_inv() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

void poly_divmod(const LaurentPoly& a, const LaurentPoly& b,
                 LaurentPoly& quot, LaurentPoly& rem) {
    if (b.is_zero()) throw NotInvertible("polynomial division by zero");
    quot = LaurentPoly();
    rem = a;
    const int db = b.max_exp();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        int e = rem.max_exp() - db;
        Rat c = rem.leading_coeff() / b.leading_coeff();
        quot.set_coeff(e, quot.coeff(e) + c);
        rem -= b.shifted(e).scaled(c);
    }
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        LaurentPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rat(1) / a.leading_coeff()); // monic
}

// ---- RatFunc ----

RatFunc::RatFunc(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw NotInvertible("zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(Rat(1));
        return;
    }
    // Strip monomial factors; t is a unit, so only genuine polynomial content
    // participates in the gcd.
    int vn = num_.min_exp(), vd = den_.min_exp();
    num_ = num_.shifted(-vn);
    den_ = den_.shifted(-vd);
    const int net = vn - vd;
    if (den_.max_exp() > 0 && num_.max_exp() > 0) {
        LaurentPoly g = poly_gcd(num_, den_);
        if (!g.is_zero() && g.max_exp() > 0) {
            LaurentPoly q, r;
            poly_divmod(num_, g, q, r);
            num_ = std::move(q);
            poly_divmod(den_, g, q, r);
            den_ = std::move(q);
        }
    }
    Rat lead = den_.leading_coeff();
    if (lead != 1) {
        Rat inv_lead = Rat(1) / lead;
        num_ = num_.scaled(inv_lead);
        den_ = den_.scaled(inv_lead);
    }
    num_ = num_.shifted(net);
}

RatFunc RatFunc::qnum2(int half2) {
    if (half2 == 0) return RatFunc(0);
    return (q_pow2(half2) - q_pow2(-half2)) / (q_pow2(2) - q_pow2(-2));
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw NotInvertible("division by zero");
    if (a.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw NotInvertible("inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RatFunc r(1);
    RatFunc base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        if (e > 1) base *= base;
    }
    return r;
}

RatFunc RatFunc::subst_inv() const {
    if (is_zero()) return RatFunc();
    return RatFunc(num_.subst_inv(), den_.subst_inv());
}

bool RatFunc::is_monomial() const {
    return num_.term_count() == 1 && den_.is_one();
}

void RatFunc::monomial_parts(Rat& c, int& k) const {
    c = num_.leading_coeff();
    k = num_.max_exp();
}

RatFunc RatFunc::sqrt_monomial() const {
    if (is_zero()) return RatFunc();
    if (!is_monomial())
        throw IrrationalRoot("not a monomial: " + str());
    Rat c;
    int k;
    monomial_parts(c, k);
    Rat root;
    if (k % 2 != 0 || !rat_sqrt(c, root))
        throw IrrationalRoot("no exact square root of " + str());
    return RatFunc(LaurentPoly::term(k / 2, root), LaurentPoly(Rat(1)));
}

RatFunc q_minus_qinv() {
    return RatFunc::q_pow2(2) - RatFunc::q_pow2(-2);
}

// ---- text form ----

namespace {

void print_int_poly(std::ostream& os, const std::map<int, mpz_class>& terms) {
    bool first = true;
    // descending exponent
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const int e = it->first;
        mpz_class c = it->second;
        if (sgn(c) == 0) continue;
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? "-" : "+");
        }
        first = false;
        mpz_class a = abs(c);
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
}

} // namespace

std::string RatFunc::str() const {
    if (is_zero()) return "0";
    LaurentPoly num = num_;
    LaurentPoly den = den_;
    // Keep display exponents non-negative by moving a monomial into den.
    int v = num.min_exp();
    if (v < 0) {
        num = num.shifted(-v);
        den = den.shifted(-v);
    }
    // Clear rational coefficients to integers.
    mpz_class scale(1);
    for (const auto& [e, c] : num.terms()) scale = lcm(scale, c.get_den());
    for (const auto& [e, c] : den.terms()) scale = lcm(scale, c.get_den());
    std::map<int, mpz_class> ni, di;
    mpz_class content(0);
    for (const auto& [e, c] : num.terms()) {
        mpz_class z = c.get_num() * (scale / c.get_den());
        ni[e] = z;
        content = gcd(content, z);
    }
    for (const auto& [e, c] : den.terms()) {
        mpz_class z = c.get_num() * (scale / c.get_den());
        di[e] = z;
        content = gcd(content, z);
    }
    if (content > 1) {
        for (auto& [e, z] : ni) z /= content;
        for (auto& [e, z] : di) z /= content;
    }
    std::ostringstream os;
    const bool den_is_one = (di.size() == 1 && di.begin()->first == 0 && di.begin()->second == 1);
    if (den_is_one) {
        print_int_poly(os, ni);
    } else {
        os << "(";
        print_int_poly(os, ni);
        os << ")/(";
        print_int_poly(os, di);
        os << ")";
    }
    return os.str();
}

namespace {

struct Scanner {
    const std::string& s;
    size_t i = 0;
    explicit Scanner(const std::string& str) : s(str) {}
    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    bool done() { skip_ws(); return i >= s.size(); }
    [[noreturn]] void fail(const std::string& why) {
        throw InvalidArgument("parse error at position " + std::to_string(i) + ": " + why);
    }
    long integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) fail("expected integer");
        return std::stol(s.substr(start, i - start));
    }
};

LaurentPoly parse_poly(Scanner& sc) {
    LaurentPoly p;
    bool first = true;
    while (true) {
        sc.skip_ws();
        int sign = 1;
        if (sc.peek('+')) { sc.eat('+'); }
        else if (sc.peek('-')) { sc.eat('-'); sign = -1; }
        else if (!first) break;
        sc.skip_ws();
        Rat coef(1);
        bool have_coef = false;
        if (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) {
            long n = sc.integer();
            if (sc.peek('/')) {
                // Only treat '/' as a coefficient divider when followed by a digit
                // (the fraction bar between polys is followed by '(').
                size_t save = sc.i;
                sc.eat('/');
                sc.skip_ws();
                if (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) {
                    long d = sc.integer();
                    coef = Rat(mpz_class(n), mpz_class(d));
                } else {
                    sc.i = save;
                    coef = Rat(n);
                }
            } else {
                coef = Rat(n);
            }
            coef.canonicalize();
            have_coef = true;
        }
        sc.skip_ws();
        int exp = 0;
        bool have_t = false;
        if (sc.peek('*')) { sc.eat('*'); sc.skip_ws(); }
        if (sc.i < sc.s.size() && sc.s[sc.i] == 't') {
            ++sc.i;
            have_t = true;
            exp = 1;
            if (sc.peek('^')) {
                sc.eat('^');
                exp = static_cast<int>(sc.integer());
            }
        }
        if (!have_coef && !have_t) {
            if (first) sc.fail("expected term");
            break;
        }
        if (sign < 0) coef = -coef;
        p += LaurentPoly::term(exp, coef);
        first = false;
        sc.skip_ws();
        if (sc.i >= sc.s.size() || (sc.s[sc.i] != '+' && sc.s[sc.i] != '-')) break;
    }
    return p;
}

} // namespace

RatFunc RatFunc::parse(const std::string& s) {
    Scanner sc(s);
    LaurentPoly num, den(Rat(1));
    if (sc.eat('(')) {
        num = parse_poly(sc);
        if (!sc.eat(')')) sc.fail("expected ')'");
        if (sc.eat('/')) {
            if (!sc.eat('(')) sc.fail("expected '('");
            den = parse_poly(sc);
            if (!sc.eat(')')) sc.fail("expected ')'");
        }
    } else {
        num = parse_poly(sc);
        if (sc.eat('/')) {
            if (!sc.eat('(')) sc.fail("expected '('");
            den = parse_poly(sc);
            if (!sc.eat(')')) sc.fail("expected ')'");
        }
    }
    if (!sc.done()) sc.fail("trailing input");
    return RatFunc(std::move(num), std::move(den));
}

} // namespace qorbit
