#include "qorbit/ansatz.hpp"

#include <utility>

#include "qorbit/errors.hpp"

namespace qorbit {

void XiPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XiPoly::XiPoly(RatFunc c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

XiPoly XiPoly::variable() {
    XiPoly p;
    p.c_ = {RatFunc(), RatFunc(1)};
    return p;
}

const RatFunc& XiPoly::lead() const {
    if (c_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
    return c_.back();
}

RatFunc XiPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return RatFunc();
    return c_[static_cast<std::size_t>(k)];
}

RatFunc XiPoly::eval(const RatFunc& x) const {
    RatFunc acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

XiPoly XiPoly::operator+(const XiPoly& o) const {
    XiPoly out;
    out.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < out.c_.size(); ++i) {
        if (i < c_.size()) out.c_[i] = out.c_[i] + c_[i];
        if (i < o.c_.size()) out.c_[i] = out.c_[i] + o.c_[i];
    }
    out.trim();
    return out;
}

XiPoly XiPoly::operator-(const XiPoly& o) const { return *this + o.scaled(RatFunc(-1)); }

XiPoly XiPoly::operator*(const XiPoly& o) const {
    XiPoly out;
    if (c_.empty() || o.c_.empty()) return out;
    out.c_.assign(c_.size() + o.c_.size() - 1, RatFunc());
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out.c_[i + j] = out.c_[i + j] + c_[i] * o.c_[j];
    out.trim();
    return out;
}

XiPoly XiPoly::scaled(const RatFunc& c) const {
    XiPoly out;
    if (c.is_zero()) return out;
    out.c_ = c_;
    for (RatFunc& v : out.c_) v = v * c;
    return out;
}

XiPoly XiPoly::rem(const XiPoly& o) const {
    if (o.is_zero()) throw InvalidArgument("remainder by the zero polynomial");
    XiPoly r = *this;
    const RatFunc li = o.lead().inv();
    while (!r.is_zero() && r.degree() >= o.degree()) {
        const int shift = r.degree() - o.degree();
        const RatFunc f = r.lead() * li;
        XiPoly sub;
        sub.c_.assign(static_cast<std::size_t>(shift), RatFunc());
        for (const RatFunc& v : o.c_) sub.c_.push_back(v * f);
        sub.trim();
        r = r - sub;
    }
    return r;
}

bool XiPoly::operator==(const XiPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] - o.c_[i]).is_zero()) return false;
    return true;
}

namespace {

XiPoly poly_gcd(XiPoly a, XiPoly b) {
    while (!b.is_zero()) {
        XiPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b.scaled(b.lead().inv());
    }
    if (!a.is_zero()) a = a.scaled(a.lead().inv());
    return a;
}

XiPoly poly_quot(const XiPoly& a, const XiPoly& b) {
    // Exact quotient; remainder is known to vanish.
    XiPoly r = a, q;
    const RatFunc li = b.lead().inv();
    std::vector<std::pair<int, RatFunc>> terms;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int shift = r.degree() - b.degree();
        const RatFunc f = r.lead() * li;
        terms.emplace_back(shift, f);
        XiPoly mono;
        mono = XiPoly(f);
        for (int i = 0; i < shift; ++i) mono = mono * XiPoly::variable();
        r = r - mono * b;
    }
    for (const auto& [shift, f] : terms) {
        XiPoly mono(f);
        for (int i = 0; i < shift; ++i) mono = mono * XiPoly::variable();
        q = q + mono;
    }
    return q;
}

}  // namespace

XiRat::XiRat(XiPoly num, XiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidArgument("zero denominator");
    if (num_.is_zero()) {
        den_ = XiPoly(RatFunc(1));
        return;
    }
    const XiPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_quot(num_, g);
        den_ = poly_quot(den_, g);
    }
    const RatFunc c = den_.lead().inv();
    num_ = num_.scaled(c);
    den_ = den_.scaled(c);
}

XiRat XiRat::operator+(const XiRat& o) const {
    return XiRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

XiRat XiRat::operator-(const XiRat& o) const {
    return XiRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

XiRat XiRat::operator*(const XiRat& o) const { return XiRat(num_ * o.num_, den_ * o.den_); }

XiRat XiRat::inv() const {
    if (num_.is_zero()) throw NotInvertible("zero element of the auxiliary field");
    return XiRat(den_, num_);
}

bool XiRat::operator==(const XiRat& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

RatFunc XiRat::eval(const RatFunc& x) const {
    const RatFunc d = den_.eval(x);
    if (d.is_zero())
        throw NonGenericParameters("denominator vanishes at the chosen band value");
    return num_.eval(x) * d.inv();
}

AnsatzSolution solve_ansatz(const SeriesSpec& sp, const CellSplit& cell) {
    const int e = sp.N - cell.r2 + 1;  // the band exponent N - 2r + 1
    const RatFunc xi0 = RatFunc::q_pow2(2 * e);
    const RatFunc q_neps = RatFunc::q_pow2(2 * (sp.N - sp.eps));
    const RatFunc eps(sp.eps);
    const RatFunc gamma = q_minus_qinv();

    const XiRat xi = XiRat::variable();
    const XiRat xi_inv = xi.inv();
    const XiRat c_xi0(xi0), c_xi0_inv(xi0.inv());

    // Linear pair in (eta, zeta); the right-hand sides carry the inverse
    // band value.
    const XiRat a11 = xi_inv - c_xi0_inv;
    const XiRat a12 = (xi - c_xi0) * XiRat(RatFunc(-1) * eps * q_neps) +
                      (xi_inv - xi) * XiRat(gamma);
    const XiRat a21 = xi - c_xi0;
    const XiRat a22 = (xi_inv - c_xi0_inv) * XiRat(RatFunc(-1) * eps * q_neps);
    const XiRat b1 = (xi - c_xi0_inv) * XiRat(RatFunc(-1));
    const XiRat b2 = (xi_inv - c_xi0) * XiRat(RatFunc(-1));

    const XiRat det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw NonGenericParameters("coefficient system is singular");
    const XiRat det_inv = det.inv();

    AnsatzSolution sol;
    sol.xi0 = xi0;
    sol.eta = (b1 * a22 - a12 * b2) * det_inv;
    sol.zeta = (a11 * b2 - b1 * a21) * det_inv;
    if (sol.zeta.is_zero())
        throw NonGenericParameters("permuted coefficient vanishes identically");
    sol.mu = XiRat(XiPoly(RatFunc(1) - xi0), XiPoly::variable() - XiPoly(xi0));

    // Partial-trace scalar: eps (1 - mu)/zeta q^{e/2} [e/2].
    const RatFunc bracket = (RatFunc::q_pow2(e) - RatFunc::q_pow2(-e)) * gamma.inv();
    const RatFunc tscale = eps * RatFunc::q_pow2(e) * bracket;
    const XiRat one_minus_mu = XiRat(RatFunc(1)) - sol.mu;
    sol.t_minus = one_minus_mu * sol.zeta.inv() * XiRat(tscale);

    // Remaining identity, with t_minus entering only through the product
    // t_minus * zeta; must vanish for every xi.
    const XiRat residual = XiRat(xi0.inv() - xi0) +
                           ((xi_inv - c_xi0_inv) - (xi - c_xi0)) * sol.mu -
                           (xi_inv - c_xi0_inv) * (one_minus_mu * XiRat(tscale)) * XiRat(eps * gamma);
    sol.consistent = residual.is_zero();
    return sol;
}

AnsatzValues evaluate_at(const AnsatzSolution& sol, const RatFunc& xi) {
    AnsatzValues out;
    out.mu = sol.mu.eval(xi);
    out.eta = sol.eta.eval(xi);
    out.zeta = sol.zeta.eval(xi);
    out.t_minus = sol.t_minus.eval(xi);
    return out;
}

}  // namespace qorbit
